//! The weak order `R ⩽ S ⟺ R⁺ ⊇ S⁺ and R⁻ ⊆ S⁻` and its lattice
//! operations on each level of subsets.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootset::{RootSet, Side};
use crate::rootsys::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    All,
    Antisym,
    Semiclosed,
    Closed,
    Posets,
}

impl Level {
    pub const ALL: [Level; 5] = [Level::All, Level::Antisym, Level::Semiclosed, Level::Closed, Level::Posets];

    pub fn name(self) -> &'static str {
        match self {
            Level::All => "all",
            Level::Antisym => "antisym",
            Level::Semiclosed => "semiclosed",
            Level::Closed => "closed",
            Level::Posets => "posets",
        }
    }

    pub fn contains(self, rs: &RootSystem, r: RootSet) -> bool {
        match self {
            Level::All => true,
            Level::Antisym => r.is_antisymmetric(),
            Level::Semiclosed => r.is_semiclosed(rs),
            Level::Closed => r.is_closed(rs),
            Level::Posets => r.is_poset(rs),
        }
    }
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Level::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown level `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dir {
    Meet,
    Join,
}

pub fn weak_le(r: RootSet, s: RootSet) -> Result<bool> {
    r.same_system(s)?;
    Ok(s.pos().is_subset(r.pos()) && r.neg().is_subset(s.neg()))
}

/// Meet or join of `r` and `s` within `level`.
///
/// At the closed and poset levels the semiclosed result is repaired with
/// [`RootSet::closure_deletion_nat`]; deleting only along sums of distinct
/// roots is not enough once two root lengths are present.
pub fn lattice_op(rs: &RootSystem, level: Level, dir: Dir, r: RootSet, s: RootSet) -> Result<RootSet> {
    r.same_system(s)?;
    if r.tag() != rs.tag() {
        return Err(Error::MixedSystems);
    }
    if level != Level::All && level != Level::Antisym && !rs.is_crystallographic() {
        return Err(Error::Unsupported(format!("{} lattice on non-crystallographic {}", level.name(), rs.kind())));
    }
    for x in [r, s] {
        if !level.contains(rs, x) {
            return Err(Error::Contract(format!("{x:?} is not in level {}", level.name())));
        }
    }
    let (rp, rn) = r.split_signs();
    let (sp, sn) = s.split_signs();
    Ok(match (level, dir) {
        (Level::All | Level::Antisym, Dir::Meet) => rp.union(sp).union(rn.intersection(sn)),
        (Level::All | Level::Antisym, Dir::Join) => rp.intersection(sp).union(rn.union(sn)),
        (_, Dir::Meet) => {
            let semi = rp.union(sp).closure(rs)?.union(rn.intersection(sn));
            if level == Level::Semiclosed {
                semi
            } else {
                semi.closure_deletion_nat(rs, Side::Negative)
            }
        }
        (_, Dir::Join) => {
            let semi = rp.intersection(sp).union(rn.union(sn).closure(rs)?);
            if level == Level::Semiclosed {
                semi
            } else {
                semi.closure_deletion_nat(rs, Side::Positive)
            }
        }
    })
}

/// The elements covering `r` in `level`; each differs from `r` by one root.
pub fn covers(rs: &RootSystem, level: Level, r: RootSet) -> Result<Vec<RootSet>> {
    if level == Level::Closed {
        return Err(Error::Unsupported(
            "no cover formula for closed sets; use the transitive reduction of verify_lattice".into(),
        ));
    }
    if !level.contains(rs, r) {
        return Err(Error::Contract(format!("{r:?} is not in level {}", level.name())));
    }
    // α is a sum of two roots of `pool`
    let decomposable = |alpha: usize, pool: RootSet| {
        pool.iter().any(|g| {
            let partners = RootSet::from_bits(rs, rs.sum_mask(g) & pool.bits()).unwrap();
            partners.iter().any(|h| rs.root_sum(g, h) == Some(alpha))
        })
    };
    // every root sum β + γ with γ ∈ pool lands in `target`
    let absorbed = |beta: usize, pool: RootSet, target: RootSet| {
        let partners = RootSet::from_bits(rs, rs.sum_mask(beta) & pool.bits()).unwrap();
        partners.iter().all(|g| target.contains(rs.root_sum(beta, g).unwrap()))
    };
    let mut out = Vec::new();
    for a in r.pos().iter() {
        let ok = match level {
            Level::All | Level::Antisym => true,
            Level::Semiclosed => !decomposable(a, r.pos()),
            _ => !decomposable(a, r),
        };
        if ok {
            out.push(r.without(a));
        }
    }
    for b in RootSet::negatives(rs).difference(r).iter() {
        let ok = match level {
            Level::All => true,
            Level::Antisym => !r.contains(rs.neg(b)),
            Level::Semiclosed => absorbed(b, r.neg(), r),
            _ => !r.contains(rs.neg(b)) && absorbed(b, r, r),
        };
        if ok {
            out.push(r.with(b));
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FailureKind {
    NoMeet,
    NoJoin,
    MeetFormula,
    JoinFormula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: FailureKind,
    pub left: RootSet,
    pub right: RootSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub size: usize,
    pub is_lattice: bool,
    /// `None` when no formula was checked.
    pub formula_matches_bruteforce: Option<bool>,
    pub witness: Option<Witness>,
    pub graded: bool,
    pub cover_count: usize,
}

pub const DEFAULT_LATTICE_CAP: usize = 5000;

/// Row-major square bit matrix.
struct BitMatrix {
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix { words, data: vec![0; n * words] }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }
}

/// Sorted, deduplicated copy of a family in canonical order.
pub fn canonical(family: &[RootSet]) -> Vec<RootSet> {
    let mut f = family.to_vec();
    f.sort();
    f.dedup();
    f
}

struct Order {
    family: Vec<RootSet>,
    down: BitMatrix,
    up: BitMatrix,
}

impl Order {
    fn new(family: &[RootSet]) -> Result<Self> {
        let family = canonical(family);
        if let Some(first) = family.first() {
            for x in &family {
                first.same_system(*x)?;
            }
        }
        let n = family.len();
        let rows: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|i| (0..n).filter(|&j| weak_le(family[j], family[i]).unwrap()).collect())
            .collect();
        let mut down = BitMatrix::new(n);
        let mut up = BitMatrix::new(n);
        for (i, below) in rows.iter().enumerate() {
            for &j in below {
                down.set(i, j);
                up.set(j, i);
            }
        }
        Ok(Order { family, down, up })
    }

    fn len(&self) -> usize {
        self.family.len()
    }

    /// Greatest common lower bound of i and j, if there is one. Rank is
    /// strictly monotone and the family is sorted by rank, so the only
    /// candidate is the highest common index.
    fn glb(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (self.down.row(i), self.down.row(j));
        let common: Vec<u64> = a.iter().zip(b).map(|(x, y)| x & y).collect();
        let w = common.iter().rposition(|&x| x != 0)?;
        let cand = w * 64 + 63 - common[w].leading_zeros() as usize;
        let dominated = common.iter().zip(self.down.row(cand)).all(|(c, d)| c & !d == 0);
        dominated.then_some(cand)
    }

    fn lub(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (self.up.row(i), self.up.row(j));
        let common: Vec<u64> = a.iter().zip(b).map(|(x, y)| x & y).collect();
        let w = common.iter().position(|&x| x != 0)?;
        let cand = w * 64 + common[w].trailing_zeros() as usize;
        let dominated = common.iter().zip(self.up.row(cand)).all(|(c, d)| c & !d == 0);
        dominated.then_some(cand)
    }

    /// Cover pairs (i, j) with family[i] ⋖ family[j].
    fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let per_row: Vec<Vec<(usize, usize)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                for j in i + 1..n {
                    if !self.up.get(i, j) {
                        continue;
                    }
                    let between =
                        self.up.row(i).iter().zip(self.down.row(j)).map(|(u, d)| (u & d).count_ones()).sum::<u32>();
                    if between == 2 {
                        out.push((i, j));
                    }
                }
                out
            })
            .collect();
        per_row.into_iter().flatten().collect()
    }
}

/// Brute-force lattice check of `family` under the weak order, optionally
/// comparing each meet and join against the formulas of `formula`.
pub fn verify_lattice(
    rs: &RootSystem,
    family: &[RootSet],
    formula: Option<Level>,
    cap: usize,
) -> Result<LatticeReport> {
    if family.len() > cap {
        return Err(Error::Resource(format!("family of {} sets exceeds cap {cap}", family.len())));
    }
    let order = Order::new(family)?;
    let n = order.len();
    let index: HashMap<RootSet, usize> = order.family.iter().enumerate().map(|(i, &r)| (r, i)).collect();

    let check_pair = |i: usize, j: usize| -> Result<Option<FailureKind>> {
        let meet = order.glb(i, j);
        let join = order.lub(i, j);
        let Some(meet) = meet else { return Ok(Some(FailureKind::NoMeet)) };
        let Some(join) = join else { return Ok(Some(FailureKind::NoJoin)) };
        if let Some(level) = formula {
            let (r, s) = (order.family[i], order.family[j]);
            let m = lattice_op(rs, level, Dir::Meet, r, s)?;
            if index.get(&m) != Some(&meet) {
                return Ok(Some(FailureKind::MeetFormula));
            }
            let jn = lattice_op(rs, level, Dir::Join, r, s)?;
            if index.get(&jn) != Some(&join) {
                return Ok(Some(FailureKind::JoinFormula));
            }
        }
        Ok(None)
    };
    let first_failures: Vec<Option<(usize, usize, FailureKind)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            for j in i..n {
                if let Some(kind) = check_pair(i, j)? {
                    return Ok(Some((i, j, kind)));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let failure = first_failures.into_iter().flatten().next();

    let covers = order.covers();
    let graded = covers.iter().all(|&(i, j)| order.family[j].rank() - order.family[i].rank() == 1);
    let (is_lattice, formula_ok) = match &failure {
        None => (true, formula.map(|_| true)),
        Some((_, _, FailureKind::NoMeet | FailureKind::NoJoin)) => (false, formula.map(|_| false)),
        Some(_) => (true, Some(false)),
    };
    Ok(LatticeReport {
        size: n,
        is_lattice,
        formula_matches_bruteforce: formula_ok,
        witness: failure.map(|(i, j, kind)| Witness { kind, left: order.family[i], right: order.family[j] }),
        graded,
        cover_count: covers.len(),
    })
}

pub type Hasse = (Vec<RootSet>, Vec<(usize, usize)>);

/// Nodes in canonical order and cover edges between their indices.
pub fn hasse_diagram(family: &[RootSet]) -> Result<Hasse> {
    let order = Order::new(family)?;
    let edges = order.covers();
    Ok((order.family, edges))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HasseFormat {
    Dot,
    Json,
}

pub fn export_hasse(rs: &RootSystem, family: &[RootSet], format: HasseFormat) -> Result<String> {
    if family.len() > 10_000 {
        return Err(Error::Resource("Hasse export is limited to 10000 nodes".into()));
    }
    let (nodes, edges) = hasse_diagram(family)?;
    let labels: Vec<String> = nodes.iter().map(|r| r.to_literal(rs)).collect();
    Ok(match format {
        HasseFormat::Json => serde_json::json!({ "nodes": labels, "edges": edges }).to_string(),
        HasseFormat::Dot => {
            let mut out = String::from("digraph weak_order {\n  rankdir=BT;\n  node [shape=box];\n");
            for (i, l) in labels.iter().enumerate() {
                writeln!(out, "  n{i} [label=\"{l}\"];").unwrap();
            }
            for (i, j) in edges {
                writeln!(out, "  n{i} -> n{j};").unwrap();
            }
            out.push_str("}\n");
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_sets(rs: &RootSystem) -> Vec<RootSet> {
        (0..1u128 << rs.num_roots()).map(|b| RootSet::from_bits(rs, b).unwrap()).collect()
    }

    fn level_family(rs: &RootSystem, level: Level) -> Vec<RootSet> {
        all_sets(rs).into_iter().filter(|&r| level.contains(rs, r)).collect()
    }

    #[test]
    fn weak_le_examples() {
        let rs = RootSystem::parse("A2").unwrap();
        let p = RootSet::positives(&rs);
        assert!(weak_le(p, RootSet::negatives(&rs)).unwrap());
        assert!(weak_le(p, RootSet::from_indices(&rs, [1, 2])).unwrap());
        let other = RootSystem::parse("B2").unwrap();
        assert_eq!(weak_le(p, RootSet::empty(&other)), Err(Error::MixedSystems));
    }

    #[test]
    fn a2_join_examples() {
        let rs = RootSystem::parse("A2").unwrap();
        let r = RootSet::parse(&rs, "+[1,0],+[1,1]").unwrap();
        let s = RootSet::parse(&rs, "+[0,1],+[1,1]").unwrap();
        let j = lattice_op(&rs, Level::Posets, Dir::Join, r, s).unwrap();
        assert_eq!(j, RootSet::parse(&rs, "+[1,1]").unwrap());
        // {−α1, α2} and ∅: the lower bound {α2} is their meet; the join keeps −α1
        let r = RootSet::parse(&rs, "-[1,0],+[0,1]").unwrap();
        let e = RootSet::empty(&rs);
        assert_eq!(lattice_op(&rs, Level::Posets, Dir::Meet, r, e).unwrap(), RootSet::parse(&rs, "+[0,1]").unwrap());
        assert_eq!(lattice_op(&rs, Level::Posets, Dir::Join, r, e).unwrap(), RootSet::parse(&rs, "-[1,0]").unwrap());
    }

    #[test]
    fn contract_and_support_errors() {
        let rs = RootSystem::parse("A2").unwrap();
        let bad = RootSet::from_indices(&rs, [0, 1]);
        let e = RootSet::empty(&rs);
        assert!(matches!(lattice_op(&rs, Level::Posets, Dir::Meet, bad, e), Err(Error::Contract(_))));
        let h3 = RootSystem::parse("H3").unwrap();
        let e3 = RootSet::empty(&h3);
        assert!(matches!(lattice_op(&h3, Level::Closed, Dir::Meet, e3, e3), Err(Error::Unsupported(_))));
        assert!(matches!(covers(&rs, Level::Closed, e), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cover_examples() {
        let rs = RootSystem::parse("A2").unwrap();
        let p = RootSet::positives(&rs);
        let c = covers(&rs, Level::Posets, p).unwrap();
        assert_eq!(c, {
            let mut v = vec![p.without(0), p.without(1)];
            v.sort();
            v
        });
        assert!(covers(&rs, Level::Posets, RootSet::negatives(&rs)).unwrap().is_empty());
        assert_eq!(covers(&rs, Level::Antisym, RootSet::empty(&rs)).unwrap().len(), 3);
    }

    #[test]
    fn cover_formulas_match_transitive_reduction() {
        for label in ["A2", "B2", "G2"] {
            let rs = RootSystem::parse(label).unwrap();
            for level in [Level::All, Level::Antisym, Level::Semiclosed, Level::Posets] {
                let fam = level_family(&rs, level);
                let (nodes, edges) = hasse_diagram(&fam).unwrap();
                let mut up: HashMap<RootSet, Vec<RootSet>> = HashMap::new();
                for (i, j) in edges {
                    up.entry(nodes[i]).or_default().push(nodes[j]);
                }
                for r in &nodes {
                    let mut expect = up.remove(r).unwrap_or_default();
                    expect.sort();
                    assert_eq!(covers(&rs, level, *r).unwrap(), expect, "{label} {level:?} {r:?}");
                }
            }
        }
    }

    #[test]
    fn rank2_levels_are_lattices_with_formulas() {
        for label in ["A2", "B2", "G2"] {
            let rs = RootSystem::parse(label).unwrap();
            for level in Level::ALL {
                let fam = level_family(&rs, level);
                let rep = verify_lattice(&rs, &fam, Some(level), 5000).unwrap();
                assert!(rep.is_lattice, "{label} {level:?}");
                assert_eq!(rep.formula_matches_bruteforce, Some(true), "{label} {level:?} {:?}", rep.witness);
                if level != Level::Closed {
                    assert!(rep.graded, "{label} {level:?}");
                }
            }
        }
    }

    #[test]
    fn hasse_shapes() {
        let rs = RootSystem::parse("A2").unwrap();
        let one = [RootSet::empty(&rs)];
        let (nodes, edges) = hasse_diagram(&one).unwrap();
        assert_eq!((nodes.len(), edges.len()), (1, 0));
        let dot = export_hasse(&rs, &level_family(&rs, Level::Posets), HasseFormat::Dot).unwrap();
        assert_eq!(dot.matches("[label=").count(), 19);
    }

    #[test]
    fn non_lattice_witness() {
        let rs = RootSystem::parse("A2").unwrap();
        // two incomparable minimal elements have no meet
        let fam = [RootSet::from_indices(&rs, [0]), RootSet::from_indices(&rs, [1])];
        let rep = verify_lattice(&rs, &fam, None, 10).unwrap();
        assert!(!rep.is_lattice);
        assert_eq!(rep.witness.unwrap().kind, FailureKind::NoMeet);
        assert!(verify_lattice(&rs, &fam, None, 1).is_err());
    }
}
