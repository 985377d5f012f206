//! The element, interval and face families of the permutahedron, the
//! generalized associahedra and the cube, with their intrinsic
//! characterizations.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::cambrian::{is_snake_complete, Cambrian, CoxeterElement, SnakeRules};
use crate::cone::is_strict_halfspace_trace;
use crate::error::{Error, Result};
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;
use crate::weakorder::canonical;
use crate::weyl::{Elem, WeylGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyTag {
    Woep,
    Woip,
    Wofp,
    Coep,
    Coip,
    Cofp,
    Boep,
    /// Boolean intervals and faces coincide.
    Boip,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 8] = [
        FamilyTag::Woep,
        FamilyTag::Woip,
        FamilyTag::Wofp,
        FamilyTag::Coep,
        FamilyTag::Coip,
        FamilyTag::Cofp,
        FamilyTag::Boep,
        FamilyTag::Boip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Woep => "WOEP",
            FamilyTag::Woip => "WOIP",
            FamilyTag::Wofp => "WOFP",
            FamilyTag::Coep => "COEP",
            FamilyTag::Coip => "COIP",
            FamilyTag::Cofp => "COFP",
            FamilyTag::Boep => "BOEP",
            FamilyTag::Boip => "BOIP",
        }
    }

    pub fn is_cambrian(self) -> bool {
        matches!(self, FamilyTag::Coep | FamilyTag::Coip | FamilyTag::Cofp)
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("bofp") {
            return Ok(FamilyTag::Boip);
        }
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown family `{s}`")))
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with the Coxeter element the Cambrian ones depend on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyId {
    pub tag: FamilyTag,
    /// `lin`, `bip` or a word; ignored by non-Cambrian families.
    pub coxeter: Option<String>,
}

impl FamilyId {
    pub fn new(tag: FamilyTag) -> Self {
        FamilyId { tag, coxeter: None }
    }

    pub fn with_coxeter(tag: FamilyTag, coxeter: &str) -> Self {
        FamilyId { tag, coxeter: Some(coxeter.to_string()) }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.coxeter, self.tag.is_cambrian()) {
            (Some(c), true) => write!(f, "{}({c})", self.tag),
            _ => write!(f, "{}", self.tag),
        }
    }
}

/// Group data shared by the family constructions of one root system.
pub struct FamilyContext {
    group: WeylGroup,
    coxeter: String,
    cambrian: OnceLock<Result<Cambrian>>,
    descent_classes: OnceLock<Result<Vec<(Elem, Elem)>>>,
}

impl FamilyContext {
    /// `coxeter` selects the Coxeter element for the Cambrian families.
    pub fn new(rs: &RootSystem, coxeter: &str) -> Result<Self> {
        let group = WeylGroup::new(rs)?;
        CoxeterElement::parse(&group, coxeter)?;
        Ok(FamilyContext {
            group,
            coxeter: coxeter.to_string(),
            cambrian: OnceLock::new(),
            descent_classes: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn system(&self) -> &RootSystem {
        self.group.system()
    }

    pub fn coxeter_spec(&self) -> &str {
        &self.coxeter
    }

    pub fn id(&self, tag: FamilyTag) -> FamilyId {
        if tag.is_cambrian() {
            FamilyId::with_coxeter(tag, &self.coxeter)
        } else {
            FamilyId::new(tag)
        }
    }

    pub fn cambrian(&self) -> Result<&Cambrian> {
        self.cambrian
            .get_or_init(|| {
                let c = CoxeterElement::parse(&self.group, &self.coxeter)?;
                Cambrian::new(&self.group, c)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// (min, max) of the descent class Z_A, indexed by the mask of A.
    pub fn descent_classes(&self) -> Result<&[(Elem, Elem)]> {
        self.descent_classes
            .get_or_init(|| {
                let g = &self.group;
                (0..1u32 << g.rank())
                    .map(|a| {
                        let members: Vec<Elem> = g.elements().filter(|&w| g.descents(w) == a).collect();
                        let min = members.iter().copied().find(|&u| members.iter().all(|&v| g.le(u, v)));
                        let max = members.iter().copied().find(|&u| members.iter().all(|&v| g.le(v, u)));
                        min.zip(max).ok_or_else(|| Error::Invariant(format!("descent class {a:#b} is not an interval")))
                    })
                    .collect()
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// R(A) = cl(−A ⊔ (Δ ∖ A)): positive roots supported off A and
    /// negative roots supported on A.
    pub fn boolean_poset(&self, a: u32) -> RootSet {
        let rs = self.system();
        let support = |i: usize| {
            rs.root(i).coords.iter().enumerate().fold(0u32, |m, (k, c)| if c.is_zero() { m } else { m | 1 << k })
        };
        RootSet::from_indices(
            rs,
            (0..rs.num_roots()).filter(|&i| {
                let s = support(i);
                if rs.is_positive(i) {
                    s & a == 0
                } else {
                    s & !a == 0
                }
            }),
        )
    }

    /// The family in canonical order, without duplicates.
    pub fn construct(&self, tag: FamilyTag) -> Result<Vec<RootSet>> {
        let g = &self.group;
        let n = g.rank();
        let out: Vec<RootSet> = match tag {
            FamilyTag::Woep => g.elements().map(|w| g.element_poset(w)).collect(),
            FamilyTag::Woip => g
                .elements()
                .flat_map(|v| g.elements().filter(move |&w| g.le(v, w)).map(move |w| (v, w)))
                .map(|(v, w)| g.interval_poset(v, w))
                .collect::<Result<_>>()?,
            FamilyTag::Wofp => g.cosets().into_iter().map(|f| g.coset_poset(f)).collect(),
            FamilyTag::Coep => {
                let camb = self.cambrian()?;
                (0..camb.classes().len()).map(|x| camb.class_poset(g, x)).collect()
            }
            FamilyTag::Coip => {
                let camb = self.cambrian()?;
                let k = camb.classes().len();
                let mut v = Vec::new();
                for x in 0..k {
                    for y in 0..k {
                        if camb.class_le(g, x, y) {
                            v.push(camb.interval_poset(g, x, y)?);
                        }
                    }
                }
                v
            }
            FamilyTag::Cofp => {
                let camb = self.cambrian()?;
                camb.facial_classes(g)?.iter().map(|f| camb.facial_class_poset(g, f)).collect()
            }
            FamilyTag::Boep => (0..1u32 << n).map(|a| self.boolean_poset(a)).collect(),
            FamilyTag::Boip => (0..1u32 << n)
                .flat_map(|a| (0..1u32 << n).filter(move |b| a & !b == 0).map(move |b| (a, b)))
                .map(|(a, b)| self.boolean_poset(a).neg().union(self.boolean_poset(b).pos()))
                .collect(),
        };
        Ok(canonical(&out))
    }

    /// The intrinsic characterization of `tag`, evaluated literally.
    ///
    /// COEP uses the conjectural snake criterion; COFP has none.
    pub fn is_member(&self, tag: FamilyTag, r: RootSet) -> Result<bool> {
        let rs = self.system();
        let np = rs.num_positive();
        let same_sign_pairs = || {
            (0..rs.num_roots()).flat_map(move |a| {
                (0..rs.num_roots())
                    .filter(move |&b| rs.is_positive(a) == rs.is_positive(b))
                    .filter_map(move |b| rs.root_sum(a, b).map(|s| (a, b, s)))
            })
        };
        Ok(match tag {
            FamilyTag::Woep => (0..np).all(|a| r.contains(a) || r.contains(rs.neg(a))),
            FamilyTag::Woip => same_sign_pairs().all(|(a, b, s)| !r.contains(s) || r.contains(a) || r.contains(b)),
            FamilyTag::Wofp => is_strict_halfspace_trace(rs, r),
            FamilyTag::Coip => self.is_coip(r)?,
            FamilyTag::Coep => {
                let c = &self.cambrian()?.c;
                self.is_coip(r)? && is_snake_complete(rs, c, r, SnakeRules::DEFAULT)
            }
            FamilyTag::Cofp => return Err(Error::NoCharacterization("COFP".into())),
            FamilyTag::Boip => same_sign_pairs().all(|(a, b, s)| !r.contains(s) || (r.contains(a) && r.contains(b))),
            FamilyTag::Boep => {
                self.is_member(FamilyTag::Boip, r)?
                    && (0..rs.rank()).all(|k| r.contains(rs.simple(k)) || r.contains(rs.neg(rs.simple(k))))
            }
        })
    }

    /// For α <_c β positive with α + β a root: α + β ∈ R ⇒ β ∈ R, and
    /// −(α + β) ∈ R ⇒ −α ∈ R.
    fn is_coip(&self, r: RootSet) -> Result<bool> {
        let rs = self.system();
        let c = &self.cambrian()?.c;
        for a in 0..rs.num_positive() {
            for b in 0..rs.num_positive() {
                if !c.less(a, b) {
                    continue;
                }
                if let Some(s) = rs.root_sum(a, b) {
                    if r.contains(s) && !r.contains(b) {
                        return Ok(false);
                    }
                    if r.contains(rs.neg(s)) && !r.contains(rs.neg(a)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Compares the construction with the characterization over `posets`
    /// (all Φ-posets of the system).
    pub fn verify_family_equality(&self, tag: FamilyTag, posets: &[RootSet]) -> Result<FamilyReport> {
        let constructed = self.construct(tag)?;
        let family = self.id(tag).to_string();
        let rs = self.system();
        if let Some(bad) = constructed.iter().find(|r| !r.is_poset(rs)) {
            return Err(Error::Invariant(format!("{family} member {} is not a Φ-poset", bad.to_literal(rs))));
        }
        if tag == FamilyTag::Cofp {
            return Ok(FamilyReport {
                family,
                constructed: constructed.len(),
                characterized: None,
                equal: None,
                conjectural: false,
                only_constructed: None,
                only_characterized: None,
            });
        }
        let mut characterized = Vec::new();
        for &r in posets {
            if self.is_member(tag, r)? {
                characterized.push(r);
            }
        }
        let characterized = canonical(&characterized);
        let only_constructed = constructed.iter().find(|r| characterized.binary_search(r).is_err()).copied();
        let only_characterized = characterized.iter().find(|r| constructed.binary_search(r).is_err()).copied();
        Ok(FamilyReport {
            family,
            constructed: constructed.len(),
            characterized: Some(characterized.len()),
            equal: Some(only_constructed.is_none() && only_characterized.is_none()),
            conjectural: tag == FamilyTag::Coep,
            only_constructed: only_constructed.map(|r| r.to_literal(rs)),
            only_characterized: only_characterized.map(|r| r.to_literal(rs)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub constructed: usize,
    /// `None` for families without a characterization.
    pub characterized: Option<usize>,
    pub equal: Option<bool>,
    /// The characterization is only conjectured.
    pub conjectural: bool,
    pub only_constructed: Option<String>,
    pub only_characterized: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(label: &str, c: &str) -> FamilyContext {
        FamilyContext::new(&RootSystem::parse(label).unwrap(), c).unwrap()
    }

    #[test]
    fn a2_counts() {
        let cx = ctx("A2", "s1s2");
        let expect = [6, 17, 13, 5, 13, 11, 4, 9];
        for (tag, n) in FamilyTag::ALL.into_iter().zip(expect) {
            assert_eq!(cx.construct(tag).unwrap().len(), n, "{tag}");
        }
    }

    #[test]
    fn a2_boolean_elements() {
        let cx = ctx("A2", "lin");
        let rs = cx.system();
        let got: Vec<String> = cx.construct(FamilyTag::Boep).unwrap().iter().map(|r| r.to_literal(rs)).collect();
        let mut want: Vec<String> = ["+[1,0],+[0,1],+[1,1]", "-[1,0],+[0,1]", "+[1,0],-[0,1]", "-[1,0],-[0,1],-[1,1]"]
            .iter()
            .map(|s| RootSet::parse(rs, s).unwrap())
            .map(|r| r.to_literal(rs))
            .collect();
        let mut got = got;
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn boolean_poset_is_descent_class_intersection() {
        for label in ["A3", "B3", "G2", "H3"] {
            let cx = ctx(label, "lin");
            let g = cx.group();
            let classes = cx.descent_classes().unwrap();
            for a in 0..1u32 << g.rank() {
                let meet = g
                    .elements()
                    .filter(|&w| g.descents(w) == a)
                    .map(|w| g.element_poset(w))
                    .fold(RootSet::all(cx.system()), |acc, r| acc.intersection(r));
                assert_eq!(cx.boolean_poset(a), meet, "{label} {a:b}");
                let (lo, hi) = classes[a as usize];
                assert_eq!(g.interval_poset(lo, hi).unwrap(), meet);
            }
        }
    }

    #[test]
    fn tag_parsing() {
        assert_eq!("woip".parse::<FamilyTag>().unwrap(), FamilyTag::Woip);
        assert_eq!("BOFP".parse::<FamilyTag>().unwrap(), FamilyTag::Boip);
        assert!("xyz".parse::<FamilyTag>().is_err());
        assert_eq!(FamilyId::with_coxeter(FamilyTag::Coip, "lin").to_string(), "COIP(lin)");
        assert_eq!(FamilyId::with_coxeter(FamilyTag::Woip, "lin").to_string(), "WOIP");
    }

    #[test]
    fn predicate_examples() {
        let cx = ctx("A2", "lin");
        let rs = cx.system();
        assert!(cx.is_member(FamilyTag::Woep, RootSet::positives(rs)).unwrap());
        let r = RootSet::parse(rs, "+[1,1]").unwrap();
        assert!(!cx.is_member(FamilyTag::Woip, r).unwrap());
        let r = RootSet::parse(rs, "-[1,0],+[0,1]").unwrap();
        assert!(cx.is_member(FamilyTag::Boip, r).unwrap());
        assert!(matches!(cx.is_member(FamilyTag::Cofp, r), Err(Error::NoCharacterization(_))));
    }

    #[test]
    fn cofp_posets_are_class_extremum_intervals() {
        for label in ["A2", "B2", "A3", "B3"] {
            let cx = ctx(label, "bip");
            let g = cx.group();
            let camb = cx.cambrian().unwrap();
            for f in camb.facial_classes(g).unwrap() {
                let r = camb.facial_class_poset(g, &f);
                let top = g.coset_top(f.up);
                assert_eq!(g.interval_poset(f.down.x, top).unwrap(), r, "{label}");
                let split = g.coset_poset(f.down).neg().union(g.coset_poset(f.up).pos());
                assert_eq!(split, r, "{label}");
            }
        }
    }
}
