//! Exact feasibility of small linear systems by Fourier–Motzkin elimination.
//!
//! Rows are `a·y ≥ b` over the ordered ring ℤ[ψ]. Elimination only ever
//! multiplies rows by positive scalars, so no division is needed.

use std::collections::HashSet;

use crate::coeff::Coefficient;
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Row {
    pub a: Vec<Coefficient>,
    pub b: Coefficient,
}

impl Row {
    pub fn ge(a: Vec<Coefficient>, b: Coefficient) -> Self {
        Row { a, b }
    }

    pub fn le(a: Vec<Coefficient>, b: Coefficient) -> Self {
        Row { a: a.into_iter().map(|x| -x).collect(), b: -b }
    }

    fn scaled(&self, k: Coefficient) -> Row {
        Row { a: self.a.iter().map(|&x| x * k).collect(), b: self.b * k }
    }

    fn add(&self, other: &Row) -> Row {
        Row { a: self.a.iter().zip(&other.a).map(|(&x, &y)| x + y).collect(), b: self.b + other.b }
    }

    // divide out the content of integer rows to keep entries small and
    // make duplicates detectable
    fn normalized(mut self) -> Row {
        if self.a.iter().chain([&self.b]).all(|c| c.is_integer()) {
            let g = self.a.iter().chain([&self.b]).fold(0i64, |g, c| gcd(g, c.int));
            if g > 1 {
                for c in self.a.iter_mut().chain([&mut self.b]) {
                    c.int /= g;
                }
            }
        }
        self
    }

    fn is_trivial(&self) -> bool {
        self.a.iter().all(|c| c.is_zero()) && !self.b.is_positive()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Whether some real y satisfies every row.
pub fn feasible(rows: Vec<Row>) -> bool {
    let Some(dim) = rows.first().map(|r| r.a.len()) else {
        return true;
    };
    let mut rows = dedup(rows);
    for k in 0..dim {
        if rows.iter().any(|r| r.a.iter().all(|c| c.is_zero()) && r.b.is_positive()) {
            return false;
        }
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.a[k].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => zero.push(r),
            }
        }
        for p in &pos {
            for q in &neg {
                // p.a[k] > 0 > q.a[k]; combine with positive multipliers
                let r = p.scaled(-q.a[k]).add(&q.scaled(p.a[k])).normalized();
                zero.push(r);
            }
        }
        rows = dedup(zero);
    }
    rows.iter().all(|r| !r.b.is_positive())
}

fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = HashSet::new();
    rows.into_iter().map(Row::normalized).filter(|r| !r.is_trivial()).filter(|r| seen.insert(r.clone())).collect()
}

/// Whether `target` lies in the cone spanned by `gens` (Farkas: it does not
/// iff some y has y·g ≥ 0 on every generator and y·target ≤ −1).
pub fn in_cone(gens: &[&[Coefficient]], target: &[Coefficient]) -> bool {
    let mut rows: Vec<Row> = gens.iter().map(|g| Row::ge(g.to_vec(), Coefficient::ZERO)).collect();
    rows.push(Row::le(target.to_vec(), Coefficient::int(-1)));
    !feasible(rows)
}

/// R is convex when Φ ∩ cone(R) = R.
pub fn is_convex(rs: &RootSystem, r: RootSet) -> bool {
    let gens: Vec<&[Coefficient]> = r.iter().map(|i| rs.root(i).coords.as_slice()).collect();
    (0..rs.num_roots()).filter(|&i| !r.contains(i)).all(|i| !in_cone(&gens, &rs.root(i).coords))
}

/// Whether a linear functional f exists with R = {α ∈ Φ | f(α) < 0}.
pub fn is_strict_halfspace_trace(rs: &RootSystem, r: RootSet) -> bool {
    let mut rows = Vec::new();
    for i in 0..rs.num_positive() {
        let a = rs.root(i).coords.clone();
        let one = Coefficient::ONE;
        match (r.contains(i), r.contains(rs.neg(i))) {
            (true, true) => return false,
            (true, false) => rows.push(Row::le(a, -one)),
            (false, true) => rows.push(Row::ge(a, one)),
            (false, false) => {
                rows.push(Row::ge(a.clone(), Coefficient::ZERO));
                rows.push(Row::le(a, Coefficient::ZERO));
            }
        }
    }
    feasible(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Coefficient> {
        v.iter().map(|&x| Coefficient::int(x)).collect()
    }

    #[test]
    fn simple_systems() {
        // y ≥ 1 and y ≤ 0
        assert!(!feasible(vec![Row::ge(ints(&[1]), 1.into()), Row::le(ints(&[1]), 0.into())]));
        // x + y ≥ 2, x ≤ 1, y ≤ 1
        assert!(feasible(vec![
            Row::ge(ints(&[1, 1]), 2.into()),
            Row::le(ints(&[1, 0]), 1.into()),
            Row::le(ints(&[0, 1]), 1.into()),
        ]));
        assert!(!feasible(vec![
            Row::ge(ints(&[1, 1]), 3.into()),
            Row::le(ints(&[1, 0]), 1.into()),
            Row::le(ints(&[0, 1]), 1.into()),
        ]));
    }

    #[test]
    fn cone_membership() {
        let a = ints(&[1, 0]);
        let b = ints(&[0, 1]);
        assert!(in_cone(&[&a, &b], &ints(&[2, 3])));
        assert!(!in_cone(&[&a, &b], &ints(&[-1, 3])));
        assert!(!in_cone(&[], &ints(&[1, 0])));
        assert!(in_cone(&[&a, &ints(&[-1, 0])], &ints(&[-5, 0])));
    }

    #[test]
    fn convexity_examples() {
        let rs = RootSystem::parse("B3").unwrap();
        assert!(is_convex(&rs, RootSet::positives(&rs)));
        assert!(is_convex(&rs, RootSet::empty(&rs)));
        let bad = RootSet::parse(&rs, "-[1,0,0],-[1,2,2],+[0,0,1]").unwrap();
        assert!(!is_convex(&rs, bad));
    }

    #[test]
    fn halfspace_traces_in_a2() {
        let rs = RootSystem::parse("A2").unwrap();
        assert!(is_strict_halfspace_trace(&rs, RootSet::positives(&rs)));
        assert!(is_strict_halfspace_trace(&rs, RootSet::empty(&rs)));
        assert!(is_strict_halfspace_trace(&rs, RootSet::parse(&rs, "+[0,1],+[1,1]").unwrap()));
        assert!(!is_strict_halfspace_trace(&rs, RootSet::parse(&rs, "+[1,1]").unwrap()));
    }
}
