//! Exhaustive enumeration of subsets of roots, reference counts,
//! sublattice and conjecture checkers, and the known counterexamples.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cambrian::{is_snake_complete, SnakeRules};
use crate::coeff::Coefficient;
use crate::cone::is_convex;
use crate::error::{Error, Result};
use crate::families::{FamilyContext, FamilyTag};
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;
use crate::weakorder::{canonical, lattice_op, weak_le, Dir, Level};

/// Which closed subsets a search enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchKind {
    /// Antisymmetric closed subsets of Φ.
    Posets,
    /// Closed subsets of Φ.
    Closed,
    /// Closed subsets of Φ⁺.
    PositiveClosed,
}

/// Backtracking over the positive roots in height order, deciding α and −α
/// together. A triple a + b = c is checked as soon as all three of |a|,
/// |b|, |c| are decided.
struct Search {
    slots: Vec<Vec<u128>>,
    /// Per slot: (mask of {a, b}, bit of c).
    checks: Vec<Vec<(u128, u128)>>,
}

impl Search {
    fn new(rs: &RootSystem, kind: SearchKind) -> Result<Self> {
        RootSet::try_empty(rs)?;
        let np = rs.num_positive();
        let slots = (0..np)
            .map(|i| {
                let (p, m) = (1u128 << i, 1u128 << rs.neg(i));
                match kind {
                    SearchKind::Posets => vec![0, p, m],
                    SearchKind::Closed => vec![0, p, m, p | m],
                    SearchKind::PositiveClosed => vec![0, p],
                }
            })
            .collect();
        let mut checks = vec![Vec::new(); np];
        for a in 0..rs.num_roots() {
            for b in a..rs.num_roots() {
                if let Some(c) = rs.root_sum(a, b) {
                    let slot = rs.abs(a).max(rs.abs(b)).max(rs.abs(c));
                    checks[slot].push((1u128 << a | 1u128 << b, 1u128 << c));
                }
            }
        }
        Ok(Search { slots, checks })
    }

    fn consistent(&self, slot: usize, bits: u128) -> bool {
        self.checks[slot].iter().all(|&(ab, c)| bits & ab != ab || bits & c != 0)
    }

    fn visit(&self, slot: usize, bits: u128, f: &mut impl FnMut(u128)) {
        if slot == self.slots.len() {
            f(bits);
            return;
        }
        for &choice in &self.slots[slot] {
            let next = bits | choice;
            if self.consistent(slot, next) {
                self.visit(slot + 1, next, f);
            }
        }
    }

    /// Consistent assignments of the first `depth` slots.
    fn prefixes(&self, depth: usize) -> Vec<u128> {
        let mut level = vec![0u128];
        for slot in 0..depth.min(self.slots.len()) {
            level = level
                .into_iter()
                .flat_map(|bits| self.slots[slot].iter().map(move |&c| bits | c))
                .filter(|&b| self.consistent(slot, b))
                .collect();
        }
        level
    }

    fn split_depth(&self) -> usize {
        self.slots.len().min(8)
    }

    fn count(&self) -> (u128, u64) {
        let depth = self.split_depth();
        self.prefixes(depth)
            .par_iter()
            .map(|&p| {
                let (mut n, mut sum) = (0u128, 0u64);
                self.visit(depth, p, &mut |bits| {
                    n += 1;
                    sum = sum.wrapping_add(mix(bits));
                });
                (n, sum)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.wrapping_add(b.1)))
    }

    fn collect(&self) -> Vec<u128> {
        let depth = self.split_depth();
        let mut out: Vec<u128> = self
            .prefixes(depth)
            .par_iter()
            .flat_map_iter(|&p| {
                let mut v = Vec::new();
                self.visit(depth, p, &mut |bits| v.push(bits));
                v
            })
            .collect();
        out.sort_unstable();
        out
    }
}

fn mix(bits: u128) -> u64 {
    let mut z = (bits as u64) ^ ((bits >> 64) as u64).rotate_left(29) ^ 0x9e37_79b9_7f4a_7c15;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Order-independent checksum of a family.
pub fn checksum(family: &[RootSet]) -> u64 {
    family.iter().fold(0u64, |s, r| s.wrapping_add(mix(r.bits())))
}

/// Largest |Φ⁺| for which poset or closed-set enumeration is attempted.
pub const ENUMERATION_CAP: usize = 24;

fn check_scope(rs: &RootSystem) -> Result<()> {
    if rs.num_positive() > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "{} has {} positive roots; enumeration is capped at {ENUMERATION_CAP}, try a smaller rank",
            rs.kind(),
            rs.num_positive()
        )));
    }
    Ok(())
}

/// Every subset of the given kind, in increasing bit order.
pub fn enumerate(rs: &RootSystem, kind: SearchKind) -> Result<Vec<RootSet>> {
    check_scope(rs)?;
    let search = Search::new(rs, kind)?;
    search.collect().into_iter().map(|b| RootSet::from_bits(rs, b)).collect()
}

/// All Φ-posets, in canonical order.
pub fn all_posets(rs: &RootSystem) -> Result<Vec<RootSet>> {
    Ok(canonical(&enumerate(rs, SearchKind::Posets)?))
}

/// Largest family materialized by [`level_family`].
pub const LEVEL_FAMILY_CAP: usize = 1 << 20;

/// Every subset of Φ at a level of the weak order, in canonical order.
pub fn level_family(rs: &RootSystem, level: Level) -> Result<Vec<RootSet>> {
    check_scope(rs)?;
    let np = rs.num_positive();
    let too_big = |n: f64| {
        (n > LEVEL_FAMILY_CAP as f64)
            .then(|| Error::Resource(format!("the {} level of {} has about {n:.0} sets", level.name(), rs.kind())))
    };
    let family = match level {
        Level::All => {
            if let Some(e) = too_big(2f64.powi(2 * np as i32)) {
                return Err(e);
            }
            (0..1u128 << (2 * np)).map(|b| RootSet::from_bits(rs, b)).collect::<Result<_>>()?
        }
        Level::Antisym => {
            if let Some(e) = too_big(3f64.powi(np as i32)) {
                return Err(e);
            }
            let mut out = vec![RootSet::empty(rs)];
            for i in 0..np {
                out = out.into_iter().flat_map(|r| [r, r.with(i), r.with(rs.neg(i))]).collect();
            }
            out
        }
        Level::Semiclosed => {
            let half = enumerate(rs, SearchKind::PositiveClosed)?;
            if let Some(e) = too_big((half.len() * half.len()) as f64) {
                return Err(e);
            }
            half.iter().flat_map(|&p| half.iter().map(move |&q| p.union(q.negate()))).collect()
        }
        Level::Closed => enumerate(rs, SearchKind::Closed)?,
        Level::Posets => enumerate(rs, SearchKind::Posets)?,
    };
    Ok(canonical(&family))
}

fn count_kind(rs: &RootSystem, kind: SearchKind) -> Result<(u128, u64)> {
    check_scope(rs)?;
    Ok(Search::new(rs, kind)?.count())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CensusFamily {
    Antisym,
    Semiclosed,
    Closed,
    Posets,
    Family(FamilyTag),
}

impl CensusFamily {
    pub fn label(&self) -> String {
        match self {
            CensusFamily::Antisym => "antisym".into(),
            CensusFamily::Semiclosed => "semiclosed".into(),
            CensusFamily::Closed => "closed".into(),
            CensusFamily::Posets => "posets".into(),
            CensusFamily::Family(t) => t.name().to_lowercase(),
        }
    }
}

impl FromStr for CensusFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "antisym" => CensusFamily::Antisym,
            "semiclosed" => CensusFamily::Semiclosed,
            "closed" => CensusFamily::Closed,
            "posets" => CensusFamily::Posets,
            other => CensusFamily::Family(other.parse()?),
        })
    }
}

impl fmt::Display for CensusFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Closed form or full construction.
    Exhaustive,
    Backtracking,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusResult {
    pub system: String,
    pub family: String,
    pub count: u128,
    pub elapsed_ms: u128,
    pub method: Method,
    /// `None` when the count comes from a closed formula.
    pub checksum: Option<u64>,
}

/// Size of a family; Cambrian families use the Coxeter element `coxeter`.
pub fn count_family(rs: &RootSystem, family: &CensusFamily, coxeter: &str) -> Result<CensusResult> {
    let start = Instant::now();
    let (count, method, checksum) = match family {
        CensusFamily::Antisym => {
            let n = 3u128
                .checked_pow(rs.num_positive() as u32)
                .ok_or_else(|| Error::Resource("3^N overflows 128 bits".into()))?;
            (n, Method::Exhaustive, None)
        }
        CensusFamily::Semiclosed => {
            let (n, sum) = count_kind(rs, SearchKind::PositiveClosed)?;
            (n * n, Method::Backtracking, Some(sum))
        }
        CensusFamily::Closed => {
            let (n, sum) = count_kind(rs, SearchKind::Closed)?;
            (n, Method::Backtracking, Some(sum))
        }
        CensusFamily::Posets => {
            let (n, sum) = count_kind(rs, SearchKind::Posets)?;
            (n, Method::Backtracking, Some(sum))
        }
        CensusFamily::Family(tag) => {
            let cx = FamilyContext::new(rs, coxeter)?;
            let f = cx.construct(*tag)?;
            (f.len() as u128, Method::Exhaustive, Some(checksum(&f)))
        }
    };
    let label = match family {
        CensusFamily::Family(t) if t.is_cambrian() => format!("{}({coxeter})", family.label()),
        _ => family.label(),
    };
    Ok(CensusResult {
        system: rs.kind().to_string(),
        family: label,
        count,
        elapsed_ms: start.elapsed().as_millis(),
        method,
        checksum,
    })
}

/// A reference count from the numerology table, with the Coxeter element
/// for the two COIP rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reference {
    pub system: &'static str,
    pub family: &'static str,
    pub coxeter: Option<&'static str>,
    pub count: u128,
}

const fn r(system: &'static str, family: &'static str, count: u128) -> Reference {
    Reference { system, family, coxeter: None, count }
}

const fn rc(system: &'static str, family: &'static str, coxeter: &'static str, count: u128) -> Reference {
    Reference { system, family, coxeter: Some(coxeter), count }
}

/// Reference counts. The B/C column splits where the two types differ;
/// the split is placed at the rank our enumeration shows it first occurs.
pub fn table1() -> Vec<Reference> {
    let mut t = Vec::new();
    let a = ["A1", "A2", "A3", "A4"];
    let b = ["B1", "B2", "B3", "B4"];
    let c = ["C1", "C2", "C3", "C4"];
    let d = "D4";
    let row = |t: &mut Vec<Reference>, names: &[&'static str], family: &'static str, vals: &[u128]| {
        for (s, &v) in names.iter().zip(vals) {
            t.push(r(s, family, v));
        }
    };
    let both = |t: &mut Vec<Reference>, family: &'static str, vals: &[u128]| {
        row(t, &b, family, vals);
        row(t, &c, family, vals);
    };
    row(&mut t, &a, "antisym", &[3, 27, 729, 59049]);
    both(&mut t, "antisym", &[3, 81, 19683]);
    t.push(r(d, "antisym", 531441));
    row(&mut t, &a, "semiclosed", &[4, 49, 1600, 127449]);
    both(&mut t, "semiclosed", &[4, 144, 29584]);
    t.push(r("B4", "semiclosed", 5310 * 5310));
    t.push(r("C4", "semiclosed", 5318 * 5318));
    t.push(r(d, "semiclosed", 888 * 888));
    row(&mut t, &a, "closed", &[4, 29, 355, 6942]);
    both(&mut t, "closed", &[4, 55]);
    t.push(r("B3", "closed", 1785));
    t.push(r("C3", "closed", 1803));
    t.push(r(d, "closed", 18291));
    row(&mut t, &a, "posets", &[3, 19, 219, 4231]);
    both(&mut t, "posets", &[3, 37]);
    t.push(r("B3", "posets", 1235));
    t.push(r("C3", "posets", 1225));
    t.push(r(d, "posets", 219));
    row(&mut t, &a, "woep", &[2, 6, 24, 120]);
    both(&mut t, "woep", &[2, 8, 48, 384]);
    t.push(r(d, "woep", 192));
    row(&mut t, &a, "woip", &[3, 17, 151, 1899]);
    both(&mut t, "woip", &[3, 27, 457]);
    t.push(r(d, "woip", 3959));
    row(&mut t, &a, "wofp", &[3, 13, 75, 541]);
    both(&mut t, "wofp", &[3, 17, 147, 1697]);
    t.push(r(d, "wofp", 865));
    row(&mut t, &a, "coep", &[2, 5, 14, 42]);
    both(&mut t, "coep", &[2, 6, 20, 70]);
    t.push(r(d, "coep", 50));
    for (cox, av, bv, dv) in [
        ("bip", [3u128, 13, 70, 433], [3u128, 18, 138, 1185], 622u128),
        ("lin", [3, 13, 68, 399], [3, 18, 132, 1069], 578),
    ] {
        for (s, v) in a.iter().zip(av) {
            t.push(rc(s, "coip", cox, v));
        }
        for (s, v) in b.iter().chain(c.iter()).zip(bv.iter().chain(bv.iter())) {
            t.push(rc(s, "coip", cox, *v));
        }
        t.push(rc(d, "coip", cox, dv));
    }
    row(&mut t, &a, "cofp", &[3, 11, 45, 197]);
    both(&mut t, "cofp", &[3, 13, 63, 321]);
    t.push(r(d, "cofp", 233));
    for fam in ["boep", "boip"] {
        let vals: &[u128] = if fam == "boep" { &[2, 4, 8, 16] } else { &[3, 9, 27, 81] };
        row(&mut t, &a, fam, vals);
        both(&mut t, fam, vals);
        t.push(r(d, fam, vals[3]));
    }
    t
}

/// Reference count for (system, family[, coxeter]).
pub fn reference(system: &str, family: &str, coxeter: Option<&str>) -> Option<u128> {
    table1()
        .into_iter()
        .find(|x| {
            x.system.eq_ignore_ascii_case(system)
                && x.family.eq_ignore_ascii_case(family)
                && (x.coxeter.is_none() || x.coxeter == coxeter)
        })
        .map(|x| x.count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SublatticeReport {
    pub size: usize,
    pub closed: bool,
    /// (left, right, op, result) of the first pair whose result leaves the family.
    pub witness: Option<(String, String, String, String)>,
}

/// Whether `sub` is closed under the meet and join of `level`.
pub fn check_sublattice(rs: &RootSystem, sub: &[RootSet], level: Level) -> Result<SublatticeReport> {
    sublattice_by(rs, sub, |dir, r, s| lattice_op(rs, level, dir, r, s))
}

/// Greatest lower bound (`Dir::Meet`) or least upper bound of `r` and `s`
/// inside `family`, by exhaustive search.
pub fn family_op(family: &[RootSet], dir: Dir, r: RootSet, s: RootSet) -> Result<Option<RootSet>> {
    let below = |x: RootSet, y: RootSet| -> Result<bool> {
        match dir {
            Dir::Meet => weak_le(x, y),
            Dir::Join => weak_le(y, x),
        }
    };
    let mut bounds = Vec::new();
    for &z in family {
        if below(z, r)? && below(z, s)? {
            bounds.push(z);
        }
    }
    for &m in &bounds {
        let mut best = true;
        for &z in &bounds {
            if !below(z, m)? {
                best = false;
                break;
            }
        }
        if best {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Whether `sub` is closed under the meet and join of the lattice `ambient`,
/// both computed by exhaustive search.
pub fn check_subfamily(rs: &RootSystem, sub: &[RootSet], ambient: &[RootSet]) -> Result<SublatticeReport> {
    let ambient = canonical(ambient);
    sublattice_by(rs, sub, |dir, r, s| {
        family_op(&ambient, dir, r, s)?.ok_or_else(|| {
            Error::Contract(format!("ambient family has no {dir:?} of {} and {}", r.to_literal(rs), s.to_literal(rs)))
        })
    })
}

fn sublattice_by(
    rs: &RootSystem,
    sub: &[RootSet],
    op: impl Fn(Dir, RootSet, RootSet) -> Result<RootSet> + Sync,
) -> Result<SublatticeReport> {
    let sub = canonical(sub);
    let pairs: Vec<(usize, usize)> = (0..sub.len()).flat_map(|i| (i..sub.len()).map(move |j| (i, j))).collect();
    let bad = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<(usize, usize, Dir, RootSet)>> {
            for dir in [Dir::Meet, Dir::Join] {
                let m = op(dir, sub[i], sub[j])?;
                if sub.binary_search(&m).is_err() {
                    return Ok(Some((i, j, dir, m)));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(SublatticeReport {
        size: sub.len(),
        closed: bad.is_none(),
        witness: bad.map(|(i, j, dir, m)| {
            (sub[i].to_literal(rs), sub[j].to_literal(rs), format!("{dir:?}").to_lowercase(), m.to_literal(rs))
        }),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjectureId {
    CoepCharacterization,
    CoepSublattice,
    CoipSublattice,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 3] =
        [ConjectureId::CoepCharacterization, ConjectureId::CoepSublattice, ConjectureId::CoipSublattice];

    pub fn name(self) -> &'static str {
        match self {
            ConjectureId::CoepCharacterization => "coep-characterization",
            ConjectureId::CoepSublattice => "coep-sublattice",
            ConjectureId::CoipSublattice => "coip-sublattice",
        }
    }
}

impl FromStr for ConjectureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConjectureId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown conjecture `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub conjecture: &'static str,
    pub system: String,
    pub coxeter: String,
    pub verified: bool,
    pub instances: usize,
    pub counterexample: Option<String>,
}

/// Largest rank checked by [`check_conjecture`] unless the caller raises it.
pub const CONJECTURE_RANK_CAP: usize = 3;

/// Exhaustive check of a conjecture on one system and Coxeter element.
pub fn check_conjecture(id: ConjectureId, rs: &RootSystem, coxeter: &str, rank_cap: usize) -> Result<ConjectureReport> {
    if rs.rank() > rank_cap {
        return Err(Error::Resource(format!("rank {} exceeds the conjecture cap {rank_cap}", rs.rank())));
    }
    let cx = FamilyContext::new(rs, coxeter)?;
    let coep = cx.construct(FamilyTag::Coep)?;
    let (verified, instances, counterexample) = match id {
        ConjectureId::CoepCharacterization => {
            let c = &cx.cambrian()?.c;
            let coip = cx.construct(FamilyTag::Coip)?;
            let posets = all_posets(rs)?;
            // COIP is itself checked against its characterization, so the
            // conjecture is scanned over every Φ-poset
            let bad = posets.par_iter().find_first(|&&r| {
                let in_coip = coip.binary_search(&r).is_ok();
                let predicted = in_coip && is_snake_complete(rs, c, r, SnakeRules::DEFAULT);
                predicted != coep.binary_search(&r).is_ok()
            });
            (bad.is_none(), posets.len(), bad.map(|r| r.to_literal(rs)))
        }
        ConjectureId::CoepSublattice | ConjectureId::CoipSublattice => {
            let sub = if id == ConjectureId::CoepSublattice { coep } else { cx.construct(FamilyTag::Coip)? };
            let rep = check_sublattice(rs, &sub, Level::Posets)?;
            let n = rep.size * (rep.size + 1) / 2;
            (rep.closed, n, rep.witness.map(|(a, b, op, m)| format!("{a} {op} {b} = {m}")))
        }
    };
    Ok(ConjectureReport {
        conjecture: id.name(),
        system: rs.kind().to_string(),
        coxeter: coxeter.to_string(),
        verified,
        instances,
        counterexample,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CounterexampleId {
    H3Sums,
    H2Flag,
    H3ClosedLattice,
    B3ConvexLattice,
    H3Ncd,
}

impl CounterexampleId {
    pub const ALL: [CounterexampleId; 5] = [
        CounterexampleId::H3Sums,
        CounterexampleId::H2Flag,
        CounterexampleId::H3ClosedLattice,
        CounterexampleId::B3ConvexLattice,
        CounterexampleId::H3Ncd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CounterexampleId::H3Sums => "h3-sums",
            CounterexampleId::H2Flag => "h2-flag",
            CounterexampleId::H3ClosedLattice => "h3-closed-lattice",
            CounterexampleId::B3ConvexLattice => "b3-convex-lattice",
            CounterexampleId::H3Ncd => "h3-ncd",
        }
    }
}

impl FromStr for CounterexampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CounterexampleId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown counterexample `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub id: &'static str,
    pub system: String,
    pub reproduced: bool,
    /// Each claim with whether it held.
    pub checks: Vec<(String, bool)>,
}

struct Claims<'a> {
    rs: &'a RootSystem,
    checks: Vec<(String, bool)>,
}

impl<'a> Claims<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        Claims { rs, checks: Vec::new() }
    }

    fn claim(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push((what.into(), ok));
    }

    /// Root index from coordinates written as (int, ψ) pairs.
    fn root(&self, coords: &[(i64, i64)]) -> Result<usize> {
        let v: Vec<Coefficient> = coords.iter().map(|&(a, b)| Coefficient { int: a, psi: b }).collect();
        self.rs.index_of(&v).ok_or_else(|| Error::Invariant(format!("{coords:?} is not a root")))
    }

    fn sum(&self, parts: &[usize]) -> Vec<Coefficient> {
        let n = self.rs.rank();
        parts.iter().fold(vec![Coefficient::ZERO; n], |acc, &i| {
            acc.iter().zip(&self.rs.root(i).coords).map(|(&x, &y)| x + y).collect()
        })
    }

    fn is_root(&self, parts: &[usize]) -> bool {
        self.rs.index_of(&self.sum(parts)).is_some()
    }

    fn set(&self, ids: &[usize]) -> RootSet {
        RootSet::from_indices(self.rs, ids.iter().copied())
    }

    fn finish(self, id: CounterexampleId) -> CounterexampleReport {
        CounterexampleReport {
            id: id.name(),
            system: self.rs.kind().to_string(),
            reproduced: self.checks.iter().all(|c| c.1),
            checks: self.checks,
        }
    }
}

/// Every T with U, V ⩽ T ⩽ R, S, given U, V ⩽ R, S.
fn between(rs: &RootSystem, u: RootSet, v: RootSet, r: RootSet, s: RootSet) -> Vec<RootSet> {
    let pos_lo = r.pos().union(s.pos());
    let pos_hi = u.pos().intersection(v.pos());
    let neg_lo = u.neg().union(v.neg());
    let neg_hi = r.neg().intersection(s.neg());
    let free: Vec<usize> = pos_hi.difference(pos_lo).iter().chain(neg_hi.difference(neg_lo).iter()).collect();
    (0..1u64 << free.len())
        .map(|m| {
            let extra =
                RootSet::from_indices(rs, free.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|p| *p.1));
            pos_lo.union(neg_lo).union(extra)
        })
        .collect()
}

/// Re-derives one of the known counterexamples from its defining roots.
pub fn reproduce_counterexample(id: CounterexampleId) -> Result<CounterexampleReport> {
    match id {
        CounterexampleId::H3Sums => {
            let rs = RootSystem::parse("H3")?;
            let mut cl = Claims::new(&rs);
            let (a, b) = (rs.simple(0), rs.simple(1));
            // γ = ψ(α1+α2+α3); with the 5 between nodes 1 and 2 this is not
            // s1s2s3(α2), and the one root among the subsums is β + γ
            let g = cl.root(&[(0, 1), (0, 1), (0, 1)])?;
            cl.claim("⟨α, β⟩ < 0", rs.cartan_pairing(a, b).is_negative());
            cl.claim("α ≠ −β", a != rs.neg(b));
            cl.claim("α + β ∉ Φ", !cl.is_root(&[a, b]));
            cl.claim("α + β + γ ∈ Φ", cl.is_root(&[a, b, g]));
            let subsums = [[a, b], [b, g], [a, g]].iter().filter(|p| cl.is_root(&p[..])).count();
            cl.claim("only one of α+β, β+γ, α+γ is a root", subsums == 1);
            Ok(cl.finish(id))
        }
        CounterexampleId::H2Flag => {
            let rs = RootSystem::parse("H2")?;
            let mut cl = Claims::new(&rs);
            let gens = [rs.simple(0), rs.simple(1), cl.root(&[(0, 1), (0, 1)])?, cl.root(&[(-1, 0), (0, -1)])?];
            // a·α + b·β + c·γ + d·δ has coordinates (a − d + cψ, b + (c − d)ψ),
            // so each root has at most one preimage
            let mut reached = Vec::new();
            for i in 0..rs.num_roots() {
                let x = &rs.root(i).coords;
                let (c, d) = (x[0].psi, x[0].psi - x[1].psi);
                let (a, b) = (x[0].int + d, x[1].int);
                if [a, b, c, d].iter().all(|&k| k >= 0) {
                    let coeffs = [a, b, c, d];
                    let back: Vec<Coefficient> = (0..2)
                        .map(|k| {
                            gens.iter()
                                .zip(coeffs)
                                .fold(Coefficient::ZERO, |s, (&gi, m)| s + Coefficient::int(m) * rs.root(gi).coords[k])
                        })
                        .collect();
                    if &back == x {
                        reached.push(coeffs);
                    }
                }
            }
            reached.sort();
            let mut want = vec![[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]];
            want.sort();
            cl.claim("Φ ∩ ℕ{α, β, γ, δ} = {α, β, γ, δ, α+β+γ+δ}", reached == want);
            let summable =
                |m: u32| cl.is_root(&(0..4).filter(|k| m >> k & 1 == 1).map(|k| gens[k]).collect::<Vec<_>>());
            let middle = (1..15u32).filter(|m| m.count_ones() >= 2).any(summable);
            let whole = summable(0b1111);
            cl.claim("{α, β, γ, δ} is summable", whole);
            cl.claim("no summable subset of size 2 or 3, hence no flag", !middle);
            Ok(cl.finish(id))
        }
        CounterexampleId::H3ClosedLattice | CounterexampleId::H3Ncd => {
            let rs = RootSystem::parse("H3")?;
            let mut cl = Claims::new(&rs);
            let a = rs.simple(0);
            let b = cl.root(&[(-1, 0), (0, -1), (0, 0)])?;
            let g = cl.root(&[(0, -1), (-1, 0), (-1, 0)])?;
            let bg = cl.root(&cl.sum(&[b, g]).iter().map(|c| (c.int, c.psi)).collect::<Vec<_>>())?;
            let abg = cl.root(&cl.sum(&[a, b, g]).iter().map(|c| (c.int, c.psi)).collect::<Vec<_>>())?;
            cl.claim("β + γ ∈ Φ⁻", !rs.is_positive(bg));
            cl.claim("α + β + γ ∈ Φ⁻", !rs.is_positive(abg));
            cl.claim("α + β ∉ Φ and α + γ ∉ Φ", !cl.is_root(&[a, b]) && !cl.is_root(&[a, g]));
            if id == CounterexampleId::H3Ncd {
                let m = cl.set(&[a, b, g, bg]);
                let deleted = m.closure_deletion_exhaustive(&rs, crate::rootset::Side::Negative)?;
                cl.claim("ncd{α, β, γ, β+γ} = {α, β, γ}", deleted == cl.set(&[a, b, g]));
                cl.claim("{α, β, γ} is not closed", !deleted.is_closed(&rs));
                return Ok(cl.finish(id));
            }
            let r = cl.set(&[a, b, g, bg, abg]);
            let s = cl.set(&[b, g, bg]);
            let u = cl.set(&[a, b]);
            let v = cl.set(&[a, g]);
            cl.claim("R, S, U, V are closed", [r, s, u, v].iter().all(|x| x.is_closed(&rs)));
            let below = [(u, r), (u, s), (v, r), (v, s)].iter().all(|&(x, y)| weak_le(x, y).unwrap_or(false));
            cl.claim("U, V ⩽ R, S", below);
            let t = between(&rs, u, v, r, s);
            cl.claim("no closed T with U, V ⩽ T ⩽ R, S", !t.iter().any(|x| x.is_closed(&rs)));
            Ok(cl.finish(id))
        }
        CounterexampleId::B3ConvexLattice => {
            let rs = RootSystem::parse("B3")?;
            let mut cl = Claims::new(&rs);
            let p = |s: &str| RootSet::parse(&rs, s);
            let r = p("-[1,0,0],-[1,1,0],-[1,1,1],-[1,2,2],+[0,0,1]")?;
            let s = p("-[1,0,0],-[1,1,1],-[1,2,2]")?;
            let u = p("-[1,0,0],+[0,0,1]")?;
            let v = p("-[1,2,2],+[0,0,1]")?;
            let m = p("-[1,0,0],-[1,2,2],+[0,0,1]")?;
            cl.claim("R, S, U, V are convex", [r, s, u, v].iter().all(|&x| is_convex(&rs, x)));
            let below = [(u, r), (u, s), (v, r), (v, s)].iter().all(|&(x, y)| weak_le(x, y).unwrap_or(false));
            cl.claim("U, V ⩽ R, S", below);
            let join = lattice_op(&rs, Level::Closed, Dir::Join, u, v)?;
            let meet = lattice_op(&rs, Level::Closed, Dir::Meet, r, s)?;
            cl.claim("U ∨ V = R ∧ S = {−α1, −α1−2α2−2α3, α3}", join == m && meet == m);
            cl.claim("that set is not convex", !is_convex(&rs, m));
            let t = between(&rs, u, v, r, s);
            cl.claim("no convex T with U, V ⩽ T ⩽ R, S", !t.iter().any(|&x| is_convex(&rs, x)));
            Ok(cl.finish(id))
        }
    }
}
