//! Finite root systems with exact coordinates over the simple roots.
//!
//! Cartan conventions are Bourbaki's: `cartan[i][j] = ⟨α_i∨, α_j⟩`, Bₙ has
//! αₙ short, Cₙ has αₙ long, G₂ has α₁ short. H₃ is labeled 1–(5)–2–(3)–3.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;
const NONE: u16 = u16::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    /// Dihedral type I₂(m); the payload is m.
    I(u32),
}

/// A family together with a rank, e.g. `B3` or `I2(5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=MAX_RANK).contains(&rank),
            Family::B | Family::C => (2..=MAX_RANK).contains(&rank),
            Family::D => (4..=MAX_RANK).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::H => rank == 2 || rank == 3,
            Family::I(m) => rank == 2 && matches!(m, 3..=6),
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::Config(format!("no supported root system {family:?}{rank}")))
        }
    }

    pub fn is_crystallographic(self) -> bool {
        match self.family {
            Family::H => false,
            Family::I(m) => m != 5,
            _ => true,
        }
    }

    /// Degrees of the basic invariants.
    pub fn degrees(self) -> Vec<u64> {
        let n = self.rank as u64;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
            Family::H if n == 2 => vec![2, 5],
            Family::H => vec![2, 6, 10],
            Family::I(m) => vec![2, m as u64],
        }
    }

    fn cartan(self) -> Vec<Vec<Coefficient>> {
        let n = self.rank;
        let mut a = vec![vec![Coefficient::ZERO; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = Coefficient::int(2);
        }
        let mut link = |i: usize, j: usize, aij: Coefficient, aji: Coefficient| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        let m1 = Coefficient::int(-1);
        let m2 = Coefficient::int(-2);
        let mpsi = -Coefficient::PSI;
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1, m1, m1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, m1, m1));
                link(n - 2, n - 1, m1, m2);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, m1, m1));
                link(n - 2, n - 1, m2, m1);
            }
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, m1, m1));
                link(n - 3, n - 1, m1, m1);
            }
            Family::E => {
                link(0, 2, m1, m1);
                link(1, 3, m1, m1);
                (2..n - 1).for_each(|i| link(i, i + 1, m1, m1));
            }
            Family::F => {
                link(0, 1, m1, m1);
                link(1, 2, m1, m2);
                link(2, 3, m1, m1);
            }
            Family::G | Family::I(6) => link(0, 1, Coefficient::int(-3), m1),
            Family::I(3) => link(0, 1, m1, m1),
            Family::I(4) => link(0, 1, m1, m2),
            Family::H | Family::I(_) => {
                link(0, 1, mpsi, mpsi);
                if n == 3 {
                    link(1, 2, m1, m1);
                }
            }
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I(m) => write!(f, "I2({m})"),
            fam => write!(f, "{fam:?}{}", self.rank),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("invalid root system type `{s}`"));
        let upper = s.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2(") {
            let m = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            return CartanType::new(Family::I(m), 2);
        }
        let mut chars = upper.chars();
        let family = match chars.next().ok_or_else(bad)? {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            'H' => Family::H,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

/// Identity of a root system, carried by every [`crate::RootSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SysTag {
    pub id: u32,
    pub npos: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub index: usize,
    pub coords: Vec<Coefficient>,
    pub height: Coefficient,
    pub positive: bool,
}

/// An immutable, fully tabulated finite root system.
///
/// Positive roots have indices `0..N`, sorted by height and then by
/// decreasing coordinate vector (so index `i < rank` is the simple root
/// α_{i+1}); index `i + N` is the negative of root `i`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: CartanType,
    cartan: Vec<Vec<Coefficient>>,
    roots: Vec<Root>,
    npos: usize,
    lookup: HashMap<Vec<Coefficient>, usize>,
    sums: Vec<u16>,
    pairings: Vec<Coefficient>,
    reflections: Vec<u16>,
    sum_masks: Vec<u128>,
    tag: SysTag,
}

impl RootSystem {
    pub fn new(kind: CartanType) -> Result<Self> {
        let n = kind.rank;
        let cartan = kind.cartan();

        // orbit of the simple roots under the simple reflections
        let unit = |i: usize| {
            let mut v = vec![Coefficient::ZERO; n];
            v[i] = Coefficient::ONE;
            v
        };
        let simple_reflect = |i: usize, v: &[Coefficient]| {
            let p = (0..n).fold(Coefficient::ZERO, |acc, j| acc + cartan[i][j] * v[j]);
            let mut w = v.to_vec();
            w[i] -= p;
            w
        };
        let mut seen: HashMap<Vec<Coefficient>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<Coefficient>> = (0..n).map(unit).collect();
        for v in &queue {
            seen.insert(v.clone(), ());
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let w = simple_reflect(i, &v);
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), ());
                    queue.push_back(w);
                }
                if seen.len() > 1000 {
                    return Err(Error::Invariant(format!("{kind}: root orbit does not close")));
                }
            }
        }

        let mut positives: Vec<Vec<Coefficient>> = Vec::new();
        for v in seen.into_keys() {
            let nonneg = v.iter().all(|c| !c.is_negative());
            let nonpos = v.iter().all(|c| !c.is_positive());
            if nonneg == nonpos {
                return Err(Error::Invariant(format!("{kind}: root with mixed signs")));
            }
            if nonneg {
                positives.push(v);
            }
        }
        let height = |v: &[Coefficient]| v.iter().fold(Coefficient::ZERO, |a, &c| a + c);
        positives.sort_by(|x, y| height(x).cmp(&height(y)).then_with(|| y.cmp(x)));
        let npos = positives.len();

        let mut roots = Vec::with_capacity(2 * npos);
        for (index, coords) in positives.iter().enumerate() {
            roots.push(Root { index, height: height(coords), coords: coords.clone(), positive: true });
        }
        for (i, coords) in positives.iter().enumerate() {
            let coords: Vec<Coefficient> = coords.iter().map(|&c| -c).collect();
            roots.push(Root { index: i + npos, height: height(&coords), coords, positive: false });
        }
        let lookup: HashMap<Vec<Coefficient>, usize> = roots.iter().map(|r| (r.coords.clone(), r.index)).collect();

        let total = 2 * npos;
        if total >= NONE as usize {
            return Err(Error::Resource(format!("{kind}: too many roots")));
        }

        // symmetrizing weights: (α_i, α_j) = d_i · cartan[i][j]
        let weights = symmetrizer(&cartan)?;
        let inner = |u: &[Coefficient], v: &[Coefficient]| {
            let mut acc = Coefficient::ZERO;
            for i in 0..n {
                if u[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    acc += u[i] * v[j] * cartan[i][j] * Coefficient::int(weights[i]);
                }
            }
            acc
        };

        let mut sums = vec![NONE; total * total];
        let mut pairings = vec![Coefficient::ZERO; total * total];
        let mut reflections = vec![NONE; total * total];
        for a in 0..total {
            let ca = &roots[a].coords;
            let norm = inner(ca, ca);
            for b in 0..total {
                let cb = &roots[b].coords;
                let s: Vec<Coefficient> = ca.iter().zip(cb).map(|(&x, &y)| x + y).collect();
                if let Some(&k) = lookup.get(&s) {
                    sums[a * total + b] = k as u16;
                }
                let two_ab = inner(ca, cb) * Coefficient::int(2);
                let p = if norm.is_integer() {
                    two_ab.checked_div_int(norm.int)
                } else if norm == two_ab {
                    Some(Coefficient::ONE)
                } else {
                    None
                };
                let p = p.ok_or_else(|| Error::Invariant(format!("{kind}: pairing of roots {a},{b} is not exact")))?;
                pairings[a * total + b] = p;
                let image: Vec<Coefficient> = cb.iter().zip(ca).map(|(&y, &x)| y - p * x).collect();
                let k = lookup.get(&image).ok_or_else(|| {
                    Error::Invariant(format!("{kind}: reflection of root {b} in root {a} is not a root"))
                })?;
                reflections[a * total + b] = *k as u16;
            }
        }

        let sum_masks = if total <= 128 {
            (0..total)
                .map(|a| (0..total).filter(|&b| sums[a * total + b] != NONE).fold(0u128, |m, b| m | (1u128 << b)))
                .collect()
        } else {
            Vec::new()
        };

        let tag = SysTag { id: fingerprint(kind), npos: npos as u8 };
        Ok(RootSystem { kind, cartan, roots, npos, lookup, sums, pairings, reflections, sum_masks, tag })
    }

    pub fn parse(label: &str) -> Result<Self> {
        RootSystem::new(label.parse()?)
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    pub fn is_crystallographic(&self) -> bool {
        self.kind.is_crystallographic()
    }

    pub fn tag(&self) -> SysTag {
        self.tag
    }

    pub fn cartan(&self) -> &[Vec<Coefficient>] {
        &self.cartan
    }

    /// N = |Φ⁺|.
    pub fn num_positive(&self) -> usize {
        self.npos
    }

    /// 2N = |Φ|.
    pub fn num_roots(&self) -> usize {
        2 * self.npos
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    /// Index of the simple root α_{i+1}.
    pub fn simple(&self, i: usize) -> usize {
        debug_assert!(i < self.rank());
        i
    }

    pub fn neg(&self, i: usize) -> usize {
        (i + self.npos) % (2 * self.npos)
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    /// The positive root among ±α_i.
    pub fn abs(&self, i: usize) -> usize {
        i % self.npos
    }

    pub fn index_of(&self, coords: &[Coefficient]) -> Option<usize> {
        self.lookup.get(coords).copied()
    }

    pub fn index_of_ints(&self, coords: &[i64]) -> Option<usize> {
        let v: Vec<Coefficient> = coords.iter().map(|&c| Coefficient::int(c)).collect();
        self.index_of(&v)
    }

    /// αᵢ + αⱼ if it is a root.
    pub fn root_sum(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.sums[i * self.num_roots() + j];
        (k != NONE).then_some(k as usize)
    }

    /// ⟨αᵢ∨, αⱼ⟩.
    pub fn cartan_pairing(&self, i: usize, j: usize) -> Coefficient {
        self.pairings[i * self.num_roots() + j]
    }

    /// s_mirror(target).
    pub fn reflect(&self, mirror: usize, target: usize) -> usize {
        self.reflections[mirror * self.num_roots() + target] as usize
    }

    /// Roots j with αᵢ + αⱼ ∈ Φ, as a bitmask. Only available when 2N ≤ 128.
    pub fn sum_mask(&self, i: usize) -> u128 {
        self.sum_masks[i]
    }

    pub fn supports_root_sets(&self) -> bool {
        self.num_roots() <= 128
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.kind.degrees()
    }

    /// |W| = ∏ dᵢ.
    pub fn weyl_order(&self) -> u64 {
        self.degrees().iter().product()
    }

    /// Cat(W) = ∏ (h + dᵢ)/dᵢ with h the Coxeter number (largest degree).
    pub fn coxeter_catalan(&self) -> u64 {
        let d = self.degrees();
        let h = *d.iter().max().unwrap();
        let num: u64 = d.iter().map(|x| h + x).product();
        num / d.iter().product::<u64>()
    }

    /// Largest absolute coordinate of any root (integer part bound for ℤ[ψ]).
    pub fn max_coordinate(&self) -> i64 {
        self.roots.iter().flat_map(|r| r.coords.iter()).map(|c| c.int.abs() + c.psi.abs()).max().unwrap_or(0)
    }

    /// Signed coordinate literal, e.g. `+[1,1]` or `-[0,1]`.
    pub fn root_literal(&self, i: usize) -> String {
        let r = &self.roots[self.abs(i)];
        let body: Vec<String> = r.coords.iter().map(|c| c.to_string()).collect();
        format!("{}[{}]", if self.is_positive(i) { '+' } else { '-' }, body.join(","))
    }

    /// Human-readable name such as `α1+2α2`.
    pub fn root_name(&self, i: usize) -> String {
        let r = &self.roots[i];
        let mut out = String::new();
        for (k, c) in r.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let factor = if mag == Coefficient::ONE {
                String::new()
            } else if mag.is_integer() || mag.int == 0 {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            out.push_str(&format!("{sign}{factor}α{}", k + 1));
        }
        out
    }
}

/// Positive integer weights dᵢ with dᵢ·aᵢⱼ = dⱼ·aⱼᵢ.
fn symmetrizer(cartan: &[Vec<Coefficient>]) -> Result<Vec<i64>> {
    let n = cartan.len();
    // rational weights as (num, den), propagated along the Dynkin diagram
    let mut w: Vec<Option<(i64, i64)>> = vec![None; n];
    w[0] = Some((1, 1));
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let (num, den) = w[i].unwrap();
        for j in 0..n {
            if i == j || cartan[i][j].is_zero() || w[j].is_some() {
                continue;
            }
            let (aij, aji) = (cartan[i][j], cartan[j][i]);
            if aij == aji {
                w[j] = Some((num, den));
            } else if aij.is_integer() && aji.is_integer() {
                let (n2, d2) = (num * aij.int, den * aji.int);
                let g = gcd(n2, d2);
                w[j] = Some((n2 / g, d2 / g));
            } else {
                return Err(Error::Invariant("cannot symmetrize Cartan matrix".into()));
            }
            stack.push(j);
        }
    }
    let w: Vec<(i64, i64)> = w.into_iter().map(|x| x.expect("connected Dynkin diagram")).collect();
    let l = w.iter().fold(1, |acc, &(_, d)| lcm(acc, d.abs()));
    Ok(w.iter().map(|&(num, den)| (num * l / den).abs()).collect())
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn fingerprint(kind: CartanType) -> u32 {
    let f = match kind.family {
        Family::A => 1,
        Family::B => 2,
        Family::C => 3,
        Family::D => 4,
        Family::E => 5,
        Family::F => 6,
        Family::G => 7,
        Family::H => 8,
        Family::I(m) => 16 + m,
    };
    (f << 8) | kind.rank as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_systems() -> Vec<RootSystem> {
        ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2", "F4", "H2", "H3", "I2(5)", "E6"]
            .iter()
            .map(|s| RootSystem::parse(s).unwrap())
            .collect()
    }

    #[test]
    fn root_counts() {
        for (label, npos) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("B4", 16),
            ("D4", 12),
            ("D5", 20),
            ("G2", 6),
            ("F4", 24),
            ("H2", 5),
            ("H3", 15),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            let rs = RootSystem::parse(label).unwrap();
            assert_eq!(rs.num_positive(), npos, "{label}");
        }
    }

    #[test]
    fn a2_structure() {
        let rs = RootSystem::parse("A2").unwrap();
        assert_eq!(rs.num_roots(), 6);
        assert_eq!(rs.root_name(0), "α1");
        assert_eq!(rs.root_name(1), "α2");
        assert_eq!(rs.root_name(2), "α1+α2");
        assert_eq!(rs.root_sum(0, 1), Some(2));
        assert_eq!(rs.root_sum(0, rs.neg(0)), None);
        assert_eq!(rs.cartan_pairing(0, 1), Coefficient::int(-1));
        assert_eq!(rs.reflect(0, 1), 2);
        assert_eq!(rs.weyl_order(), 6);
    }

    #[test]
    fn bourbaki_short_and_long() {
        let b2 = RootSystem::parse("B2").unwrap();
        assert!(b2.index_of_ints(&[1, 2]).is_some());
        assert!(b2.index_of_ints(&[2, 1]).is_none());
        let c2 = RootSystem::parse("C2").unwrap();
        assert!(c2.index_of_ints(&[2, 1]).is_some());
        let g2 = RootSystem::parse("G2").unwrap();
        assert!(g2.index_of_ints(&[3, 2]).is_some());
        let b3 = RootSystem::parse("B3").unwrap();
        assert!(b3.index_of_ints(&[1, 2, 2]).is_some());
    }

    #[test]
    fn h3_has_golden_root() {
        let rs = RootSystem::parse("H3").unwrap();
        assert_eq!(rs.num_roots(), 30);
        let psi = Coefficient::PSI;
        let z = Coefficient::ZERO;
        assert!(rs.index_of(&[psi, psi, z]).is_some());
        assert!(rs.roots().iter().any(|r| r.coords.iter().any(|c| c.psi != 0)));
    }

    #[test]
    fn invalid_types() {
        for bad in ["A0", "B1", "D3", "G3", "F5", "H4", "I2(7)", "X2", "A9", ""] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
        assert_eq!("I2(5)".parse::<CartanType>().unwrap().to_string(), "I2(5)");
    }

    #[test]
    fn structural_invariants() {
        for rs in all_systems() {
            let total = rs.num_roots();
            let n = rs.rank();
            for i in 0..rs.num_positive() {
                let r = rs.root(i);
                assert!(r.height.is_positive());
                // simple roots are the unit vectors
                if i < n {
                    for (k, c) in r.coords.iter().enumerate() {
                        assert_eq!(*c, Coefficient::int((k == i) as i64));
                    }
                }
                // no two positive roots proportional
                for j in 0..i {
                    let s = &rs.root(j).coords;
                    let prop = (0..n).all(|a| (0..n).all(|b| r.coords[a] * s[b] == r.coords[b] * s[a]));
                    assert!(!prop, "{} roots {i},{j} proportional", rs.kind());
                }
            }
            for a in 0..total {
                assert_eq!(rs.cartan_pairing(a, a), Coefficient::int(2));
                assert_eq!(rs.reflect(a, a), rs.neg(a));
                for b in 0..total {
                    assert_eq!(rs.root_sum(a, b), rs.root_sum(b, a));
                    if let Some(k) = rs.root_sum(a, b) {
                        let expect: Vec<Coefficient> =
                            rs.root(a).coords.iter().zip(&rs.root(b).coords).map(|(&x, &y)| x + y).collect();
                        assert_eq!(rs.root(k).coords, expect);
                    }
                    assert_eq!(rs.reflect(a, rs.reflect(a, b)), b);
                    let p = rs.cartan_pairing(a, b);
                    if rs.is_crystallographic() {
                        assert!(p.is_integer() && (-3..=3).contains(&p.int), "{} {p}", rs.kind());
                    }
                }
            }
        }
    }

    #[test]
    fn crystallographic_pairing_range() {
        // brute-force scan of every pairing value that occurs
        let mut values = std::collections::BTreeSet::new();
        for rs in all_systems().into_iter().filter(|r| r.is_crystallographic()) {
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    values.insert(rs.cartan_pairing(a, b).int);
                }
            }
        }
        assert_eq!(values.into_iter().collect::<Vec<_>>(), vec![-3, -2, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn negative_pairing_forces_sum() {
        for rs in all_systems().into_iter().filter(|r| r.is_crystallographic()) {
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    if b == rs.neg(a) || a == b {
                        continue;
                    }
                    let p = rs.cartan_pairing(a, b);
                    if p.is_negative() {
                        assert!(rs.root_sum(a, b).is_some(), "{}", rs.kind());
                    }
                    if p.is_positive() {
                        assert!(rs.root_sum(a, rs.neg(b)).is_some(), "{}", rs.kind());
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_orders_and_catalan() {
        let cases = [("A3", 24, 14), ("B2", 8, 6), ("B3", 48, 20), ("G2", 12, 8), ("H3", 120, 32), ("D4", 192, 50)];
        for (label, order, cat) in cases {
            let rs = RootSystem::parse(label).unwrap();
            assert_eq!(rs.weyl_order(), order);
            assert_eq!(rs.coxeter_catalan(), cat);
        }
    }
}
