//! Subsets of Φ as 128-bit masks over root indices.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, SysTag};

/// A subset `R ⊆ Φ`. Bit `i` is root index `i` of the owning system.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSet {
    bits: u128,
    tag: SysTag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SubsetClassification {
    pub symmetric: bool,
    pub antisymmetric: bool,
    pub closed: bool,
    pub semiclosed: bool,
    pub poset: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Negative,
    Positive,
}

/// Largest `|R⁺|` (or `|R⁻|`) accepted by the exhaustive closure deletion.
pub const EXHAUSTIVE_DELETION_CAP: usize = 24;

fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl RootSet {
    fn check(rs: &RootSystem) -> Result<SysTag> {
        if rs.supports_root_sets() {
            Ok(rs.tag())
        } else {
            Err(Error::Resource(format!("{} has {} roots; root sets are limited to 128", rs.kind(), rs.num_roots())))
        }
    }

    pub fn try_empty(rs: &RootSystem) -> Result<Self> {
        Ok(RootSet { bits: 0, tag: Self::check(rs)? })
    }

    /// The empty set. Panics if the system has more than 128 roots.
    pub fn empty(rs: &RootSystem) -> Self {
        Self::try_empty(rs).expect("root set width")
    }

    pub fn from_bits(rs: &RootSystem, bits: u128) -> Result<Self> {
        let tag = Self::check(rs)?;
        if bits & !low_mask(rs.num_roots()) != 0 {
            return Err(Error::Contract("bits beyond the last root index".into()));
        }
        Ok(RootSet { bits, tag })
    }

    pub fn from_indices(rs: &RootSystem, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(rs);
        for i in indices {
            assert!(i < rs.num_roots(), "root index {i} out of range");
            s.bits |= 1 << i;
        }
        s
    }

    /// Φ.
    pub fn all(rs: &RootSystem) -> Self {
        RootSet { bits: low_mask(rs.num_roots()), ..Self::empty(rs) }
    }

    /// Φ⁺.
    pub fn positives(rs: &RootSystem) -> Self {
        RootSet { bits: low_mask(rs.num_positive()), ..Self::empty(rs) }
    }

    /// Φ⁻.
    pub fn negatives(rs: &RootSystem) -> Self {
        RootSet { bits: low_mask(rs.num_positive()) << rs.num_positive(), ..Self::empty(rs) }
    }

    pub fn bits(self) -> u128 {
        self.bits
    }

    pub fn tag(self) -> SysTag {
        self.tag
    }

    fn npos(self) -> usize {
        self.tag.npos as usize
    }

    fn pos_mask(self) -> u128 {
        low_mask(self.npos())
    }

    fn with_bits(self, bits: u128) -> Self {
        RootSet { bits, tag: self.tag }
    }

    pub fn same_system(self, other: RootSet) -> Result<()> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(Error::MixedSystems)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < 128 && self.bits >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < 2 * self.npos());
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.bits &= !(1u128 << i);
    }

    pub fn with(self, i: usize) -> Self {
        let mut s = self;
        s.insert(i);
        s
    }

    pub fn without(self, i: usize) -> Self {
        let mut s = self;
        s.remove(i);
        s
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut b = self.bits;
        std::iter::from_fn(move || {
            if b == 0 {
                return None;
            }
            let i = b.trailing_zeros() as usize;
            b &= b - 1;
            Some(i)
        })
    }

    /// R⁺.
    pub fn pos(self) -> Self {
        self.with_bits(self.bits & self.pos_mask())
    }

    /// R⁻.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        self.with_bits(self.bits & !self.pos_mask())
    }

    pub fn split_signs(self) -> (Self, Self) {
        (self.pos(), self.neg())
    }

    /// −R.
    pub fn negate(self) -> Self {
        let n = self.npos();
        let m = self.pos_mask();
        self.with_bits((self.bits & m) << n | (self.bits >> n) & m)
    }

    /// The rank function `|R⁻| − |R⁺|`.
    pub fn rank(self) -> i64 {
        self.neg().len() as i64 - self.pos().len() as i64
    }

    fn same(self, other: RootSet) {
        assert_eq!(self.tag, other.tag, "root sets belong to different systems");
    }

    pub fn union(self, other: RootSet) -> Self {
        self.same(other);
        self.with_bits(self.bits | other.bits)
    }

    pub fn intersection(self, other: RootSet) -> Self {
        self.same(other);
        self.with_bits(self.bits & other.bits)
    }

    pub fn difference(self, other: RootSet) -> Self {
        self.same(other);
        self.with_bits(self.bits & !other.bits)
    }

    pub fn is_subset(self, other: RootSet) -> bool {
        self.same(other);
        self.bits & !other.bits == 0
    }

    pub fn is_symmetric(self) -> bool {
        self.negate() == self
    }

    pub fn is_antisymmetric(self) -> bool {
        self.bits & self.negate().bits == 0
    }

    /// Pairwise-sum closedness: α, β ∈ R and α + β ∈ Φ imply α + β ∈ R.
    pub fn is_closed(self, rs: &RootSystem) -> bool {
        self.iter().all(|i| {
            let partners = RootSet { bits: rs.sum_mask(i) & self.bits, tag: self.tag };
            partners.iter().all(|j| self.contains(rs.root_sum(i, j).unwrap()))
        })
    }

    /// Both R⁺ and R⁻ are closed.
    pub fn is_semiclosed(self, rs: &RootSystem) -> bool {
        self.pos().is_closed(rs) && self.neg().is_closed(rs)
    }

    pub fn is_poset(self, rs: &RootSystem) -> bool {
        self.is_antisymmetric() && self.is_closed(rs)
    }

    pub fn classify(self, rs: &RootSystem) -> SubsetClassification {
        let antisymmetric = self.is_antisymmetric();
        let closed = self.is_closed(rs);
        SubsetClassification {
            symmetric: self.is_symmetric(),
            antisymmetric,
            closed,
            semiclosed: self.is_semiclosed(rs),
            poset: antisymmetric && closed,
        }
    }

    /// cl(R) = ℕR ∩ Φ, as the pairwise-sum fixpoint.
    pub fn closure(self, rs: &RootSystem) -> Result<Self> {
        if !rs.is_crystallographic() {
            return Err(Error::Unsupported(format!(
                "closure on non-crystallographic {}: pairwise sums do not capture ℕ-spans",
                rs.kind()
            )));
        }
        Ok(self.pairwise_fixpoint(rs))
    }

    fn pairwise_fixpoint(self, rs: &RootSystem) -> Self {
        let mut bits = self.bits;
        let mut frontier = bits;
        while frontier != 0 {
            let mut added = 0u128;
            let cur = RootSet { bits, tag: self.tag };
            for i in (RootSet { bits: frontier, tag: self.tag }).iter() {
                for j in (RootSet { bits: rs.sum_mask(i) & cur.bits, tag: self.tag }).iter() {
                    added |= 1 << rs.root_sum(i, j).unwrap();
                }
            }
            frontier = added & !bits;
            bits |= added;
        }
        self.with_bits(bits)
    }

    /// ncd(R) (`Side::Negative`) or pcd(R) (`Side::Positive`).
    ///
    /// Uses the chain search when the system is crystallographic and R is
    /// semiclosed, the exhaustive subset search otherwise.
    pub fn closure_deletion(self, rs: &RootSystem, side: Side) -> Result<Self> {
        if rs.is_crystallographic() && self.is_semiclosed(rs) {
            Ok(self.closure_deletion_fast(rs, side))
        } else {
            self.closure_deletion_exhaustive(rs, side)
        }
    }

    pub fn ncd(self, rs: &RootSystem) -> Result<Self> {
        self.closure_deletion(rs, Side::Negative)
    }

    pub fn pcd(self, rs: &RootSystem) -> Result<Self> {
        self.closure_deletion(rs, Side::Positive)
    }

    fn deletion_parts(self, side: Side) -> (RootSet, RootSet) {
        match side {
            Side::Negative => (self.neg(), self.pos()),
            Side::Positive => (self.pos(), self.neg()),
        }
    }

    /// Removes each α on `side` for which some X on the other side has
    /// α + ΣX ∈ Φ ∖ R, trying every X.
    pub fn closure_deletion_exhaustive(self, rs: &RootSystem, side: Side) -> Result<Self> {
        let (targets, others) = self.deletion_parts(side);
        let others: Vec<&[Coefficient]> = others.iter().map(|j| rs.root(j).coords.as_slice()).collect();
        if others.len() > EXHAUSTIVE_DELETION_CAP {
            return Err(Error::Resource(format!("exhaustive closure deletion over {} roots", others.len())));
        }
        let n = rs.rank();
        let mut out = self;
        for a in targets.iter() {
            // Gray-code walk over subsets of `others`, keeping the running sum
            let mut sum = rs.root(a).coords.clone();
            for step in 1u64..1 << others.len() {
                let bit = step.trailing_zeros() as usize;
                let adding = (step ^ (step >> 1)) >> bit & 1 == 1;
                for k in 0..n {
                    if adding {
                        sum[k] += others[bit][k];
                    } else {
                        sum[k] -= others[bit][k];
                    }
                }
                if let Some(g) = rs.index_of(&sum) {
                    if !self.contains(g) {
                        out.remove(a);
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Chain search: from α, repeatedly add an unused root of the other
    /// side while the partial sum stays a root.
    pub fn closure_deletion_fast(self, rs: &RootSystem, side: Side) -> Self {
        let (targets, others) = self.deletion_parts(side);
        let mut out = self;
        for a in targets.iter() {
            let mut seen: HashSet<(usize, u128)> = HashSet::new();
            let mut queue = VecDeque::from([(a, 0u128)]);
            seen.insert((a, 0));
            'search: while let Some((g, used)) = queue.pop_front() {
                let free = RootSet { bits: others.bits & !used & rs.sum_mask(g), tag: self.tag };
                for b in free.iter() {
                    let h = rs.root_sum(g, b).unwrap();
                    if !self.contains(h) {
                        out.remove(a);
                        break 'search;
                    }
                    let state = (h, used | 1 << b);
                    if seen.insert(state) {
                        queue.push_back(state);
                    }
                }
            }
        }
        out
    }

    /// Like [`RootSet::closure_deletion_fast`], but roots of the other side
    /// may be reused: α is removed when α + Σ λᵢβᵢ ∈ Φ ∖ R for some λ ∈ ℕ.
    pub fn closure_deletion_nat(self, rs: &RootSystem, side: Side) -> Self {
        let (targets, others) = self.deletion_parts(side);
        let mut out = self;
        for a in targets.iter() {
            let mut seen = 1u128 << a;
            let mut stack = vec![a];
            'search: while let Some(g) = stack.pop() {
                for b in (RootSet { bits: others.bits & rs.sum_mask(g), tag: self.tag }).iter() {
                    let h = rs.root_sum(g, b).unwrap();
                    if !self.contains(h) {
                        out.remove(a);
                        break 'search;
                    }
                    if seen >> h & 1 == 0 {
                        seen |= 1 << h;
                        stack.push(h);
                    }
                }
            }
        }
        out
    }

    /// Textual form such as `+[1,1],-[0,1]`; the empty set is `{}`.
    pub fn to_literal(self, rs: &RootSystem) -> String {
        if self.is_empty() {
            return "{}".into();
        }
        self.iter().map(|i| rs.root_literal(i)).collect::<Vec<_>>().join(",")
    }

    pub fn names(self, rs: &RootSystem) -> Vec<String> {
        self.iter().map(|i| rs.root_name(i)).collect()
    }

    /// Parses the literal format of [`RootSet::to_literal`]. A sign is
    /// optional on each vector, and `-` negates the coordinates.
    pub fn parse(rs: &RootSystem, text: &str) -> Result<Self> {
        let mut out = Self::try_empty(rs)?;
        let text = text.trim();
        if text.is_empty() || text == "{}" || text == "[]" {
            return Ok(out);
        }
        let bad = |m: &str| Error::Parse(format!("root set literal `{text}`: {m}"));
        let mut rest = text;
        loop {
            rest = rest.trim_start();
            let (negate, body) = match rest.as_bytes().first() {
                Some(b'+') => (false, &rest[1..]),
                Some(b'-') => (true, &rest[1..]),
                _ => (false, rest),
            };
            let body = body.trim_start().strip_prefix('[').ok_or_else(|| bad("expected `[`"))?;
            let close = body.find(']').ok_or_else(|| bad("missing `]`"))?;
            let coords: Vec<Coefficient> = body[..close].split(',').map(|c| c.parse()).collect::<Result<_>>()?;
            if coords.len() != rs.rank() {
                return Err(bad(&format!("expected {} coordinates", rs.rank())));
            }
            let coords: Vec<Coefficient> = coords.into_iter().map(|c| if negate { -c } else { c }).collect();
            let i = rs.index_of(&coords).ok_or_else(|| bad("not a root"))?;
            out.insert(i);
            rest = body[close + 1..].trim_start();
            match rest.strip_prefix(',') {
                Some(r) => rest = r,
                None if rest.is_empty() => return Ok(out),
                None => return Err(bad("expected `,`")),
            }
        }
    }
}

impl PartialOrd for RootSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by rank `|R⁻| − |R⁺|`, then by bit pattern.
impl Ord for RootSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rank(), self.bits).cmp(&(other.rank(), other.bits))
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// ℕR ∩ Φ by bounded search over coordinate vectors, for testing [`RootSet::closure`].
pub fn nspan_oracle(rs: &RootSystem, r: RootSet) -> RootSet {
    let bound = rs.max_coordinate();
    let gens: Vec<Vec<i64>> = r.iter().map(|i| rs.root(i).coords.iter().map(|c| c.int).collect()).collect();
    let n = rs.rank();
    // By the Steinitz lemma a sum reaching a root can be reordered so every
    // partial sum stays in this box.
    let fits = |v: &[i64]| v.iter().all(|x| x.abs() <= (n as i64 + 1) * bound);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = gens.iter().cloned().collect();
    for g in &gens {
        seen.insert(g.clone());
    }
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let w: Vec<i64> = (0..n).map(|k| v[k] + g[k]).collect();
            if fits(&w) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    RootSet::from_indices(rs, seen.iter().filter_map(|v| rs.index_of_ints(v)))
}

/// ℕ-combination closure deletion by bounded search over coordinate
/// vectors, for testing [`RootSet::closure_deletion_nat`].
pub fn closure_deletion_nat_oracle(rs: &RootSystem, r: RootSet, side: Side) -> RootSet {
    let (targets, others) = r.deletion_parts(side);
    let n = rs.rank();
    let bound = (n as i64 + 2) * rs.max_coordinate();
    let gens: Vec<Vec<i64>> = others.iter().map(|i| rs.root(i).coords.iter().map(|c| c.int).collect()).collect();
    let mut out = r;
    for a in targets.iter() {
        let start: Vec<i64> = rs.root(a).coords.iter().map(|c| c.int).collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if let Some(g) = rs.index_of_ints(&v) {
                if !r.contains(g) {
                    out.remove(a);
                    break;
                }
            }
            for g in &gens {
                let w: Vec<i64> = (0..n).map(|k| v[k] + g[k]).collect();
                if w.iter().all(|x| x.abs() <= bound) && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootSystem {
        RootSystem::parse("A2").unwrap()
    }

    #[test]
    fn split_and_negate() {
        let rs = a2();
        let phi = RootSet::all(&rs);
        assert_eq!(phi.split_signs(), (RootSet::positives(&rs), RootSet::negatives(&rs)));
        let e = RootSet::empty(&rs);
        assert_eq!(e.split_signs(), (e, e));
        let r = RootSet::parse(&rs, "+[1,0],-[0,1]").unwrap();
        assert_eq!(r.pos(), RootSet::from_indices(&rs, [0]));
        assert_eq!(r.neg(), RootSet::from_indices(&rs, [rs.neg(1)]));
        assert_eq!(RootSet::positives(&rs).negate(), RootSet::negatives(&rs));
        assert!(phi.is_symmetric());
    }

    #[test]
    fn literal_round_trip() {
        let rs = RootSystem::parse("B3").unwrap();
        for bits in [0u128, 1, 0b1011_0000_0110, (1 << 18) - 1] {
            let r = RootSet::from_bits(&rs, bits).unwrap();
            assert_eq!(RootSet::parse(&rs, &r.to_literal(&rs)).unwrap(), r);
        }
        assert!(RootSet::parse(&rs, "+[1,1]").is_err());
        assert!(RootSet::parse(&rs, "+[2,0,0]").is_err());
        let h3 = RootSystem::parse("H3").unwrap();
        let r = RootSet::parse(&h3, "+[psi,psi,0],-[1,psi,0]").unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(RootSet::parse(&h3, &r.to_literal(&h3)).unwrap(), r);
    }

    #[test]
    fn classification_examples() {
        let rs = a2();
        let c = RootSet::positives(&rs).classify(&rs);
        assert!(c.antisymmetric && c.closed && c.poset && c.semiclosed && !c.symmetric);
        assert!(RootSet::from_indices(&rs, [2]).is_poset(&rs));
        assert!(!RootSet::from_indices(&rs, [0, 1]).is_closed(&rs));
    }

    #[test]
    fn closure_examples() {
        let rs = a2();
        let r = RootSet::from_indices(&rs, [0, 1]);
        assert_eq!(r.closure(&rs).unwrap(), RootSet::positives(&rs));
        let e = RootSet::empty(&rs);
        assert_eq!(e.closure(&rs).unwrap(), e);
        let c2 = RootSystem::parse("C2").unwrap();
        let r = RootSet::parse(&c2, "+[1,0],+[1,1]").unwrap();
        assert_eq!(r.closure(&c2).unwrap(), nspan_oracle(&c2, r));
        assert_eq!(r.closure(&c2).unwrap(), RootSet::parse(&c2, "+[1,0],+[1,1],+[2,1]").unwrap());
        let h3 = RootSystem::parse("H3").unwrap();
        assert!(matches!(RootSet::empty(&h3).closure(&h3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn closure_laws_rank2_exhaustive() {
        for label in ["A2", "B2", "G2"] {
            let rs = RootSystem::parse(label).unwrap();
            let all = 1u128 << rs.num_roots();
            for bits in 0..all {
                let r = RootSet::from_bits(&rs, bits).unwrap();
                let cl = r.closure(&rs).unwrap();
                assert!(r.is_subset(cl));
                assert_eq!(cl.closure(&rs).unwrap(), cl);
                assert_eq!(r.is_closed(&rs), cl == r);
                assert_eq!(cl, nspan_oracle(&rs, r), "{label} {r:?}");
                // monotone against every single-root extension
                for i in 0..rs.num_roots() {
                    assert!(cl.is_subset(r.with(i).closure(&rs).unwrap()));
                }
            }
        }
    }

    #[test]
    fn ncd_examples() {
        let rs = a2();
        let r = RootSet::parse(&rs, "+[1,0],-[1,1]").unwrap();
        let expect = RootSet::parse(&rs, "+[1,0]").unwrap();
        assert_eq!(r.closure_deletion_exhaustive(&rs, Side::Negative).unwrap(), expect);
        assert_eq!(r.closure_deletion_fast(&rs, Side::Negative), expect);
        let p = RootSet::positives(&rs);
        assert_eq!(p.ncd(&rs).unwrap(), p);
    }

    #[test]
    fn deletion_paths_agree_rank2() {
        for label in ["A2", "B2", "C2", "G2"] {
            let rs = RootSystem::parse(label).unwrap();
            for bits in 0..1u128 << rs.num_roots() {
                let r = RootSet::from_bits(&rs, bits).unwrap();
                if !r.is_semiclosed(&rs) {
                    continue;
                }
                for side in [Side::Negative, Side::Positive] {
                    let ex = r.closure_deletion_exhaustive(&rs, side).unwrap();
                    assert_eq!(r.closure_deletion_fast(&rs, side), ex, "{label} {r:?}");
                    let nat = r.closure_deletion_nat(&rs, side);
                    assert_eq!(nat, closure_deletion_nat_oracle(&rs, r, side), "{label} {r:?}");
                    assert!(nat.is_closed(&rs), "{label} {r:?}");
                    assert!(nat.is_subset(ex));
                }
            }
        }
    }

    #[test]
    fn distinct_sums_can_leave_non_closed_sets() {
        // in B2, α1+2α2 − α2 stays inside R, but α1+2α2 − 2α2 = α1 does not
        let rs = RootSystem::parse("B2").unwrap();
        let r = RootSet::parse(&rs, "+[0,1],+[1,1],+[1,2],-[0,1]").unwrap();
        assert!(r.is_semiclosed(&rs));
        let literal = r.pcd(&rs).unwrap();
        assert_eq!(literal, RootSet::parse(&rs, "+[0,1],+[1,2],-[0,1]").unwrap());
        assert!(!literal.is_closed(&rs));
        let nat = r.closure_deletion_nat(&rs, Side::Positive);
        assert_eq!(nat, RootSet::parse(&rs, "+[0,1],-[0,1]").unwrap());
    }

    #[test]
    fn e8_sets_are_refused() {
        let e8 = RootSystem::parse("E8").unwrap();
        assert!(matches!(RootSet::try_empty(&e8), Err(Error::Resource(_))));
    }

    #[test]
    fn rank_function() {
        let rs = a2();
        assert_eq!(RootSet::positives(&rs).rank(), -3);
        assert_eq!(RootSet::negatives(&rs).rank(), 3);
    }
}
