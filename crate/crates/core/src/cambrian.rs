//! Coxeter elements, c-sorting words, sortable elements, Cambrian
//! congruence classes on elements and on parabolic cosets, and c-snakes.

use std::collections::{BTreeMap, HashMap};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::rootset::RootSet;
use crate::rootsys::{Family, RootSystem};
use crate::weyl::{format_letters, parse_letters, Elem, ParabolicCoset, WeylGroup};

/// A Coxeter element as an ordering of the simple reflections, together
/// with the c-order on Φ⁺ it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterElement {
    pub word: Vec<usize>,
    /// q₁…q_N, the c-sorting word of w∘.
    pub sorting_word_w0: Vec<usize>,
    /// Positive root indices in increasing c-order.
    pub c_order: Vec<usize>,
    /// Position of each positive root in `c_order`.
    rank_of: Vec<usize>,
}

/// The linear Coxeter element: the special end of the diagram first.
pub fn linear_word(rs: &RootSystem) -> Vec<usize> {
    let n = rs.rank();
    match rs.kind().family {
        Family::B | Family::C => (0..n).rev().collect(),
        Family::D => {
            let mut w = vec![n - 2, n - 1];
            w.extend((0..n - 2).rev());
            w
        }
        _ => (0..n).collect(),
    }
}

/// The bipartite Coxeter element: the color class of node 1, then the rest.
pub fn bipartite_word(rs: &RootSystem) -> Vec<usize> {
    let n = rs.rank();
    let mut color = vec![usize::MAX; n];
    color[0] = 0;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && !rs.cartan()[i][j].is_zero() && color[j] == usize::MAX {
                color[j] = 1 - color[i];
                stack.push(j);
            }
        }
    }
    let mut w: Vec<usize> = (0..n).filter(|&k| color[k] == 0).collect();
    w.extend((0..n).filter(|&k| color[k] == 1));
    w
}

impl CoxeterElement {
    pub fn new(g: &WeylGroup, word: Vec<usize>) -> Result<Self> {
        let n = g.rank();
        let mut seen = vec![false; n];
        for &k in &word {
            if k >= n || std::mem::replace(&mut seen[k], true) {
                return Err(Error::Config(format!("`{}` is not a Coxeter element of rank {n}", format_letters(&word))));
            }
        }
        if word.len() != n {
            return Err(Error::Config(format!("Coxeter element needs all {n} simple reflections")));
        }
        let mut c = CoxeterElement { word, sorting_word_w0: Vec::new(), c_order: Vec::new(), rank_of: Vec::new() };
        let (letters, _) = c.sorting_word(g, g.longest());
        let rs = g.system();
        let mut prefix = g.identity();
        let mut order = Vec::with_capacity(letters.len());
        for &q in &letters {
            order.push(g.act(prefix, rs.simple(q)));
            prefix = g.mul_s(prefix, q);
        }
        let mut rank_of = vec![usize::MAX; rs.num_positive()];
        for (pos, &r) in order.iter().enumerate() {
            if !rs.is_positive(r) || rank_of[r] != usize::MAX {
                return Err(Error::Invariant("c-order does not list each positive root once".into()));
            }
            rank_of[r] = pos;
        }
        c.sorting_word_w0 = letters;
        c.c_order = order;
        c.rank_of = rank_of;
        Ok(c)
    }

    /// Accepts `lin`, `bip`, or a word such as `s2s1s3`.
    pub fn parse(g: &WeylGroup, spec: &str) -> Result<Self> {
        let rs = g.system();
        let word = match spec.trim() {
            "lin" => linear_word(rs),
            "bip" => bipartite_word(rs),
            w => parse_letters(w, rs.rank())?,
        };
        Self::new(g, word)
    }

    pub fn inverse(&self, g: &WeylGroup) -> Result<Self> {
        Self::new(g, self.word.iter().rev().copied().collect())
    }

    pub fn label(&self) -> String {
        self.word.iter().map(|k| format!("s{}", k + 1)).collect()
    }

    /// c-sorting word of w, with its blocks: the letters taken from each
    /// successive copy of c, as bit masks.
    pub fn sorting_word(&self, g: &WeylGroup, w: Elem) -> (Vec<usize>, Vec<u32>) {
        let mut u = w;
        let mut letters = Vec::new();
        let mut blocks = Vec::new();
        while u != g.identity() {
            let mut block = 0u32;
            for &s in &self.word {
                if g.descents(u) >> s & 1 == 1 {
                    letters.push(s);
                    block |= 1 << s;
                    u = g.s_mul(s, u);
                }
            }
            blocks.push(block);
        }
        (letters, blocks)
    }

    pub fn is_sortable(&self, g: &WeylGroup, w: Elem) -> bool {
        let (_, blocks) = self.sorting_word(g, w);
        blocks.windows(2).all(|p| p[1] & !p[0] == 0)
    }

    /// w is c-antisortable when w·w∘ is c⁻¹-sortable.
    pub fn is_antisortable(&self, g: &WeylGroup, w: Elem) -> bool {
        let inv = self.inverse(g).expect("reversed Coxeter word");
        inv.is_sortable(g, g.mul(w, g.longest()))
    }

    /// α <_c β for positive root indices.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.rank_of[a] < self.rank_of[b]
    }

    pub fn position(&self, positive_root: usize) -> usize {
        self.rank_of[positive_root]
    }

    /// S ⊆ Φ⁺ with: α <_c β and α + β ∈ S imply α ∈ S.
    pub fn is_aligned(&self, rs: &RootSystem, s: RootSet) -> Result<bool> {
        if !s.neg().is_empty() {
            return Err(Error::Contract("alignment is defined for sets of positive roots".into()));
        }
        for a in 0..rs.num_positive() {
            for b in 0..rs.num_positive() {
                if self.less(a, b) {
                    if let Some(sum) = rs.root_sum(a, b) {
                        if s.contains(sum) && !s.contains(a) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CambrianClass {
    pub bottom: Elem,
    pub top: Elem,
    pub members: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialCambrianClass {
    pub down: ParabolicCoset,
    pub up: ParabolicCoset,
    pub members: Vec<ParabolicCoset>,
}

/// The c-Cambrian congruence on a Weyl group, tabulated.
#[derive(Clone, Debug)]
pub struct Cambrian {
    pub c: CoxeterElement,
    sortable: Vec<bool>,
    antisortable: Vec<bool>,
    down: Vec<Elem>,
    up: Vec<Elem>,
    classes: Vec<CambrianClass>,
    class_of: Vec<usize>,
}

impl Cambrian {
    pub fn new(g: &WeylGroup, c: CoxeterElement) -> Result<Self> {
        let sortable: Vec<bool> = g.elements().map(|w| c.is_sortable(g, w)).collect();
        let antisortable: Vec<bool> = g.elements().map(|w| c.is_antisortable(g, w)).collect();
        let sorts: Vec<Elem> = g.elements().filter(|&w| sortable[w]).collect();
        let antis: Vec<Elem> = g.elements().filter(|&w| antisortable[w]).collect();
        let extremum = |w: Elem, pool: &[Elem], below: bool| -> Result<Elem> {
            let cands: Vec<Elem> =
                pool.iter().copied().filter(|&u| if below { g.le(u, w) } else { g.le(w, u) }).collect();
            let best = if below {
                cands.iter().copied().max_by_key(|&u| g.length(u))
            } else {
                cands.iter().copied().min_by_key(|&u| g.length(u))
            }
            .ok_or_else(|| Error::Invariant("no sortable element comparable to w".into()))?;
            let unique = cands.iter().all(|&u| if below { g.le(u, best) } else { g.le(best, u) });
            unique
                .then_some(best)
                .ok_or_else(|| Error::Invariant(format!("Cambrian projection of {} is not unique", g.format_word(w))))
        };
        let mut down = Vec::with_capacity(g.order());
        let mut up = Vec::with_capacity(g.order());
        for w in g.elements() {
            down.push(extremum(w, &sorts, true)?);
            up.push(extremum(w, &antis, false)?);
        }
        let mut by_bottom: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
        for w in g.elements() {
            by_bottom.entry(down[w]).or_default().push(w);
        }
        let mut classes = Vec::new();
        let mut class_of = vec![0; g.order()];
        for (bottom, members) in by_bottom {
            let top = up[bottom];
            if members.iter().any(|&w| up[w] != top) {
                return Err(Error::Invariant("Cambrian fibres of π↓ and π↑ disagree".into()));
            }
            let interval: Vec<Elem> = g.elements().filter(|&u| g.le(bottom, u) && g.le(u, top)).collect();
            if interval != members {
                return Err(Error::Invariant("Cambrian class is not a weak order interval".into()));
            }
            for &w in &members {
                class_of[w] = classes.len();
            }
            classes.push(CambrianClass { bottom, top, members });
        }
        Ok(Cambrian { c, sortable, antisortable, down, up, classes, class_of })
    }

    pub fn is_sortable(&self, w: Elem) -> bool {
        self.sortable[w]
    }

    pub fn is_antisortable(&self, w: Elem) -> bool {
        self.antisortable[w]
    }

    /// π↓c(w).
    pub fn project_down(&self, w: Elem) -> Elem {
        self.down[w]
    }

    /// π↑c(w).
    pub fn project_up(&self, w: Elem) -> Elem {
        self.up[w]
    }

    pub fn classes(&self) -> &[CambrianClass] {
        &self.classes
    }

    pub fn class_of(&self, w: Elem) -> usize {
        self.class_of[w]
    }

    /// X ⩽ Y in the Cambrian lattice.
    pub fn class_le(&self, g: &WeylGroup, x: usize, y: usize) -> bool {
        g.le(self.classes[x].bottom, self.classes[y].bottom)
    }

    /// R(X) = R(π↓X)⁻ ⊔ R(π↑X)⁺.
    pub fn class_poset(&self, g: &WeylGroup, x: usize) -> RootSet {
        let c = &self.classes[x];
        g.interval_poset(c.bottom, c.top).expect("class bottom below top")
    }

    /// R(X, X′) = R(π↓X)⁻ ⊔ R(π↑X′)⁺ for X ⩽ X′.
    pub fn interval_poset(&self, g: &WeylGroup, x: usize, y: usize) -> Result<RootSet> {
        if !self.class_le(g, x, y) {
            return Err(Error::Contract("Cambrian classes are not ordered".into()));
        }
        g.interval_poset(self.classes[x].bottom, self.classes[y].top)
    }

    /// Facial classes: xW_I ≡ yW_J iff x ≡ y and x·w∘,I ≡ y·w∘,J.
    pub fn facial_classes(&self, g: &WeylGroup) -> Result<Vec<FacialCambrianClass>> {
        let mut groups: BTreeMap<(usize, usize), Vec<ParabolicCoset>> = BTreeMap::new();
        for f in g.cosets() {
            groups.entry((self.class_of(f.x), self.class_of(g.coset_top(f)))).or_default().push(f);
        }
        let mut out = Vec::with_capacity(groups.len());
        for members in groups.into_values() {
            let pick = |below: bool| -> Result<ParabolicCoset> {
                members
                    .iter()
                    .copied()
                    .find(|&a| members.iter().all(|&b| if below { g.facial_le(a, b) } else { g.facial_le(b, a) }))
                    .ok_or_else(|| Error::Invariant("facial Cambrian class without extremum".into()))
            };
            out.push(FacialCambrianClass { down: pick(true)?, up: pick(false)?, members });
        }
        Ok(out)
    }

    /// R(F) = ⋂ R(xW_I) over the cosets of the facial class.
    pub fn facial_class_poset(&self, g: &WeylGroup, f: &FacialCambrianClass) -> RootSet {
        f.members.iter().map(|&m| g.coset_poset(m)).fold(RootSet::all(g.system()), |acc, r| acc.intersection(r))
    }
}

/// Which sequences count as c-snakes and what a decomposition may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnakeRules {
    /// Decompose |α| as Σ λᵢ|αᵢ| instead of α as the signed Σ λᵢαᵢ.
    pub absolute: bool,
    /// Allow λᵢ = 0 for snake members.
    pub allow_zero: bool,
    /// Allow a root to occur more than once in the snake.
    pub repeats: bool,
}

impl SnakeRules {
    /// The reading under which the COEP characterization is checked.
    pub const DEFAULT: SnakeRules = SnakeRules { absolute: true, allow_zero: false, repeats: true };

    /// Signed decomposition of α itself, as the definition reads literally.
    pub const SIGNED: SnakeRules = SnakeRules { absolute: false, allow_zero: false, repeats: false };
}

impl Default for SnakeRules {
    fn default() -> Self {
        SnakeRules::DEFAULT
    }
}

/// Whether `alpha` lies in R or has a c-snake decomposition in R.
///
/// A c-snake alternates signs, with absolute values zig-zagging in the
/// c-order: α₁ <_c −α₂ >_c α₃ <_c … (positive first), or
/// −α₁ >_c α₂ <_c −α₃ >_c … (negative first). Multipliers are bounded by
/// the largest root coordinate and range over ℕ[ψ] in types H and I.
pub fn snake_exists(rs: &RootSystem, c: &CoxeterElement, r: RootSet, alpha: usize, rules: SnakeRules) -> bool {
    if r.contains(alpha) {
        return true;
    }
    let n = rs.rank();
    let bound = rs.max_coordinate();
    let target = if rules.absolute { rs.abs(alpha) } else { alpha };
    let target: Vec<Coefficient> = rs.root(target).coords.clone();
    let vec_of = |i: usize| -> Vec<Coefficient> {
        let v = rs.root(i).coords.clone();
        if rules.absolute && !rs.is_positive(i) {
            v.into_iter().map(|x| -x).collect()
        } else {
            v
        }
    };
    let vecs: HashMap<usize, Vec<Coefficient>> = r.iter().map(|i| (i, vec_of(i))).collect();
    let min_lambda = if rules.allow_zero { 0 } else { 1 };
    let psi_range = if rs.is_crystallographic() { 0..=0 } else { 0..=bound };
    let lambdas: Vec<Coefficient> = (0..=bound)
        .flat_map(|a| psi_range.clone().map(move |b| Coefficient { int: a, psi: b }))
        .filter(|l| l.int + l.psi >= min_lambda)
        .collect();

    struct Search<'a> {
        rs: &'a RootSystem,
        c: &'a CoxeterElement,
        r: RootSet,
        vecs: HashMap<usize, Vec<Coefficient>>,
        lambdas: Vec<Coefficient>,
        limit: f64,
        rules: SnakeRules,
        max_len: usize,
    }
    impl Search<'_> {
        // rem = target − Σ λᵢvᵢ so far; `up` says whether the next absolute
        // value must be c-greater than `last`
        fn go(&self, rem: &[Coefficient], last: usize, want_positive: bool, up: bool, len: usize, used: u128) -> bool {
            if len > 0 && rem.iter().all(|x| x.is_zero()) {
                return true;
            }
            // with absolute values every term is a nonnegative vector
            if len >= self.max_len || (self.rules.absolute && rem.iter().any(|x| x.is_negative())) {
                return false;
            }
            for i in self.r.iter() {
                if self.rs.is_positive(i) != want_positive || (!self.rules.repeats && used >> i & 1 == 1) {
                    continue;
                }
                let a = self.rs.abs(i);
                if len > 0 && !(if up { self.c.less(last, a) } else { self.c.less(a, last) }) {
                    continue;
                }
                let v = &self.vecs[&i];
                for &l in &self.lambdas {
                    let next: Vec<Coefficient> = rem.iter().zip(v).map(|(&x, &y)| x - l * y).collect();
                    if next.iter().any(|x| x.approx().abs() > self.limit) {
                        continue;
                    }
                    if self.go(&next, a, !want_positive, !up, len + 1, used | 1 << i) {
                        return true;
                    }
                }
            }
            false
        }
    }
    let s = Search {
        rs,
        c,
        r,
        vecs,
        lambdas,
        limit: 4.0 * bound as f64,
        rules,
        max_len: if rules.repeats { 2 * n + 2 } else { r.len() },
    };
    // `up` flips as each member is placed: after a positive first member the
    // next one must be c-greater, after a negative one c-smaller
    s.go(&target, 0, true, false, 0, 0) || s.go(&target, 0, false, true, 0, 0)
}

/// Every root of Φ lies in R or has a c-snake decomposition in R.
pub fn is_snake_complete(rs: &RootSystem, c: &CoxeterElement, r: RootSet, rules: SnakeRules) -> bool {
    (0..rs.num_roots()).all(|a| snake_exists(rs, c, r, a, rules))
}
