//! Exact arithmetic in the ring ℤ[ψ], ψ = (1 + √5)/2 = −2cos(4π/5).
//!
//! Crystallographic systems only ever use the rational part, so every
//! coordinate of every root there has `psi == 0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::Error;

/// `int + psi·ψ` with ψ² = ψ + 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub int: i64,
    pub psi: i64,
}

impl Coefficient {
    pub const ZERO: Coefficient = Coefficient { int: 0, psi: 0 };
    pub const ONE: Coefficient = Coefficient { int: 1, psi: 0 };
    pub const PSI: Coefficient = Coefficient { int: 0, psi: 1 };

    pub const fn new(int: i64, psi: i64) -> Self {
        Coefficient { int, psi }
    }

    pub const fn int(v: i64) -> Self {
        Coefficient { int: v, psi: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.int == 0 && self.psi == 0
    }

    pub fn is_integer(self) -> bool {
        self.psi == 0
    }

    /// Sign of the real value, decided without floating point.
    ///
    /// 2(a + bψ) = (2a + b) + b√5, so the sign is that of p + q√5.
    pub fn signum(self) -> i32 {
        let p = 2 * self.int as i128 + self.psi as i128;
        let q = self.psi as i128;
        let sign = |v: i128| v.signum() as i32;
        match (sign(p), sign(q)) {
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            (1, -1) => sign(p * p - 5 * q * q),
            _ => sign(5 * q * q - p * p),
        }
    }

    pub fn is_positive(self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(self) -> bool {
        self.signum() < 0
    }

    pub fn abs(self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self
        }
    }

    /// Exact division by a nonzero integer, if the quotient stays in ℤ[ψ].
    pub fn checked_div_int(self, d: i64) -> Option<Self> {
        if d == 0 || self.int % d != 0 || self.psi % d != 0 {
            return None;
        }
        Some(Coefficient::new(self.int / d, self.psi / d))
    }

    /// Approximate real value, for display and diagnostics only.
    pub fn approx(self) -> f64 {
        self.int as f64 + self.psi as f64 * (1.0 + 5f64.sqrt()) / 2.0
    }
}

impl From<i64> for Coefficient {
    fn from(v: i64) -> Self {
        Coefficient::int(v)
    }
}

impl Add for Coefficient {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Coefficient::new(self.int + o.int, self.psi + o.psi)
    }
}

impl AddAssign for Coefficient {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Coefficient {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Coefficient::new(self.int - o.int, self.psi - o.psi)
    }
}

impl SubAssign for Coefficient {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Coefficient {
    type Output = Self;
    fn neg(self) -> Self {
        Coefficient::new(-self.int, -self.psi)
    }
}

impl Mul for Coefficient {
    type Output = Self;
    // (a + bψ)(c + dψ) = (ac + bd) + (ad + bc + bd)ψ
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.int, self.psi, o.int, o.psi);
        Coefficient::new(a * c + b * d, a * d + b * c + b * d)
    }
}

impl PartialOrd for Coefficient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coefficient {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let psi_term = |f: &mut fmt::Formatter<'_>, b: i64| match b {
            1 => write!(f, "psi"),
            -1 => write!(f, "-psi"),
            _ => write!(f, "{b}psi"),
        };
        match (self.int, self.psi) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => psi_term(f, b),
            (a, b) => {
                write!(f, "{a}")?;
                if b > 0 {
                    write!(f, "+")?;
                }
                psi_term(f, b)
            }
        }
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    /// Accepts `3`, `-2`, `psi`, `-psi`, `2psi`, `1+psi`, `1-2psi`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid coefficient `{s}`"));
        if s.is_empty() {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix("psi") else {
            return s.parse::<i64>().map(Coefficient::int).map_err(|_| bad());
        };
        // split off the ψ multiplier: the last '+' or '-' not at position 0
        let split = body.char_indices().rev().find(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i);
        let (int_part, psi_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let int = if int_part.is_empty() { 0 } else { int_part.parse::<i64>().map_err(|_| bad())? };
        let psi = match psi_part {
            "" | "+" => 1,
            "-" => -1,
            p => p.trim_start_matches('+').parse::<i64>().map_err(|_| bad())?,
        };
        Ok(Coefficient::new(int, psi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn psi_squared_is_psi_plus_one() {
        assert_eq!(Coefficient::PSI * Coefficient::PSI, Coefficient::new(1, 1));
    }

    #[test]
    fn signs_against_float_embedding() {
        for a in -12..=12 {
            for b in -12..=12 {
                let c = Coefficient::new(a, b);
                let f = c.approx();
                let expected = if f.abs() < 1e-9 {
                    0
                } else if f > 0.0 {
                    1
                } else {
                    -1
                };
                assert_eq!(c.signum(), expected, "{c}");
            }
        }
    }

    #[test]
    fn display_parse() {
        for (c, s) in [
            (Coefficient::new(3, 0), "3"),
            (Coefficient::new(0, 1), "psi"),
            (Coefficient::new(0, -1), "-psi"),
            (Coefficient::new(0, 2), "2psi"),
            (Coefficient::new(1, 1), "1+psi"),
            (Coefficient::new(-1, -2), "-1-2psi"),
        ] {
            assert_eq!(c.to_string(), s);
            assert_eq!(s.parse::<Coefficient>().unwrap(), c);
        }
        assert!("x".parse::<Coefficient>().is_err());
        assert!("1+2".parse::<Coefficient>().is_err());
    }

    proptest! {
        #[test]
        fn ring_laws(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let x = Coefficient::new(a, b);
            let y = Coefficient::new(c, d);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!(x * (y + x), x * y + x * x);
            prop_assert_eq!((x * y).signum(), x.signum() * y.signum());
            prop_assert_eq!(x.to_string().parse::<Coefficient>().unwrap(), x);
        }
    }
}
