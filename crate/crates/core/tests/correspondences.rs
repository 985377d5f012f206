//! The map from each combinatorial object to its Φ-poset turns the natural
//! order on objects into the weak order on subsets.

use rootlat::families::FamilyContext;
use rootlat::weakorder::weak_le;
use rootlat::weyl::WeylGroup;
use rootlat::RootSystem;

const SYSTEMS: [&str; 7] = ["A1", "A2", "B2", "G2", "A3", "B3", "C3"];

fn le(r: rootlat::RootSet, s: rootlat::RootSet) -> bool {
    weak_le(r, s).unwrap()
}

#[test]
fn elements() {
    for label in SYSTEMS.iter().copied().chain(["H3"]) {
        let rs = RootSystem::parse(label).unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let posets: Vec<_> = g.elements().map(|w| g.element_poset(w)).collect();
        for v in g.elements() {
            for w in g.elements() {
                assert_eq!(g.le(v, w), le(posets[v], posets[w]), "{label}");
            }
        }
    }
}

#[test]
fn intervals() {
    for label in SYSTEMS {
        let rs = RootSystem::parse(label).unwrap();
        let g = &WeylGroup::new(&rs).unwrap();
        let intervals: Vec<_> = g
            .elements()
            .flat_map(|v| g.elements().filter(move |&w| g.le(v, w)).map(move |w| (v, w)))
            .map(|(v, w)| ((v, w), g.interval_poset(v, w).unwrap()))
            .collect();
        for &((v, w), r) in &intervals {
            for &((v2, w2), s) in &intervals {
                assert_eq!(g.le(v, v2) && g.le(w, w2), le(r, s), "{label}");
            }
        }
    }
}

#[test]
fn faces() {
    for label in SYSTEMS {
        let rs = RootSystem::parse(label).unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let cosets = g.cosets();
        for &a in &cosets {
            for &b in &cosets {
                assert_eq!(g.facial_le(a, b), le(g.coset_poset(a), g.coset_poset(b)), "{label}");
            }
        }
    }
}

#[test]
fn cambrian_classes() {
    for label in SYSTEMS {
        let rs = RootSystem::parse(label).unwrap();
        for c in ["lin", "bip"] {
            let cx = FamilyContext::new(&rs, c).unwrap();
            let g = cx.group();
            let camb = cx.cambrian().unwrap();
            let k = camb.classes().len();
            for x in 0..k {
                for y in 0..k {
                    let want = camb.class_le(g, x, y);
                    assert_eq!(want, le(camb.class_poset(g, x), camb.class_poset(g, y)), "{label} {c}");
                }
            }
        }
    }
}

#[test]
fn cube_vertices_and_intervals() {
    for label in SYSTEMS {
        let rs = RootSystem::parse(label).unwrap();
        let cx = FamilyContext::new(&rs, "lin").unwrap();
        let subsets = 1u32 << rs.rank();
        for a in 0..subsets {
            for b in 0..subsets {
                let (ra, rb) = (cx.boolean_poset(a), cx.boolean_poset(b));
                assert_eq!(a & !b == 0, le(ra, rb), "{label}");
            }
        }
        let intervals: Vec<_> = (0..subsets)
            .flat_map(|a| (0..subsets).filter(move |b| a & !b == 0).map(move |b| (a, b)))
            .map(|(a, b)| ((a, b), cx.boolean_poset(a).neg().union(cx.boolean_poset(b).pos())))
            .collect();
        for &((a, a2), r) in &intervals {
            for &((b, b2), s) in &intervals {
                assert_eq!(a & !b == 0 && a2 & !b2 == 0, le(r, s), "{label}");
            }
        }
    }
}
