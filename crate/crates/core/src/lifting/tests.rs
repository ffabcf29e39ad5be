use std::sync::Arc;

use super::*;
use crate::bisimplicial::rules::copairing;
use crate::bisimplicial::BisimplicialSet;
use crate::cat::{nerve, nerve_map, nerve_sset, FiniteCategory, Functor};
use crate::invariants::is_kan;
use crate::segal::{build_spine, SpineKind};
use crate::simplicial::standard::{boundary, simplex};

fn b() -> Budget {
    Budget::default()
}

fn pt() -> Arc<SimplicialSet> {
    Arc::new(SimplicialSet::point())
}

fn map(src: &Arc<SimplicialSet>, tgt: &Arc<SimplicialSet>, images: Vec<Simplex>) -> SimplicialMap {
    SimplicialMap::new(src.clone(), tgt.clone(), images).unwrap()
}

#[test]
fn small_squares() {
    let empty = Arc::new(SimplicialSet::empty());
    let d1 = simplex(1);
    let i = map(&empty, &pt(), vec![]);
    let f = to_point(&d1);
    let sq = LiftingSquare::new(i, f.clone(), map(&empty, &d1, vec![]), SimplicialMap::identity(&pt())).unwrap();
    assert_eq!(solve_lifting(&sq, b()).unwrap().len(), 2);

    let bd = boundary(1);
    let top = map(&bd.set, &d1, vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(1, 0)]);
    let sq = LiftingSquare::new(bd.inclusion.clone(), f, top, to_point(&d1)).unwrap();
    let lifts = solve_lifting(&sq, b()).unwrap();
    assert_eq!(lifts.len(), 1);
    assert!(lifts.iter().all(|h| sq.is_lift(h)));

    let two = Arc::new(SimplicialSet::discrete(2));
    let top = map(&bd.set, &two, vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(1, 0)]);
    let sq = LiftingSquare::new(bd.inclusion.clone(), to_point(&two), top, to_point(&d1)).unwrap();
    assert!(solve_lifting(&sq, b()).unwrap().is_empty());
}

#[test]
fn horn_rlp() {
    let horns = |m| FamilyRange::new(GeneratorFamily::Horns, m, 0);
    assert!(has_rlp(&to_point(&pt()), horns(3), b()).unwrap().verdict.is_yes());
    assert!(has_rlp(&to_point(&simplex(1)), horns(2), b()).unwrap().verdict.is_no());
    let e = Arc::new(nerve_sset(&FiniteCategory::codiscrete(2), 3, b()).unwrap());
    assert!(has_rlp(&to_point(&e), horns(3), b()).unwrap().verdict.is_yes());
}

#[test]
fn kan_agrees_with_rlp() {
    let samples = [simplex(1), boundary(2).set, Arc::new(nerve_sset(&FiniteCategory::codiscrete(2), 3, b()).unwrap()), pt()];
    for x in &samples {
        for d in 1..=2 {
            let k = is_kan(x, d, b());
            let r = has_rlp(&to_point(x), FamilyRange::new(GeneratorFamily::Horns, d, 0), b()).unwrap();
            assert_eq!(k.state, r.verdict.state);
        }
    }
}

#[test]
fn consequences() {
    let t = Arc::new(FiniteCategory::terminal());
    let i1 = Arc::new(FiniteCategory::codiscrete(2));
    let (ni1, nt) = (nerve(&i1), nerve(&t));
    let f = nerve_map(&Functor::to_terminal(&i1, &t), &ni1, &nt);
    let r = injective_consequences(&f, FamilyRange::new(GeneratorFamily::If, 1, 1), b()).unwrap();
    assert!(r.surjective_on_objects.is_yes());
    assert!(r.fibers.is_yes());
    assert!(r.consistent);

    let id = BisimplicialMap::identity(&ni1);
    let r = injective_consequences(&id, FamilyRange::new(GeneratorFamily::Ic, 1, 1), b()).unwrap();
    assert!(r.overall(b()).is_yes() && r.family.verdict.is_yes());

    let p = build_spine(SpineKind::Delta, 0, None).unwrap();
    let two = BisimplicialSet::coproduct(&[p.clone(), p.clone()]);
    let g = copairing(&two, &p, &[BisimplicialMap::identity(&p), BisimplicialMap::identity(&p)]);
    let r = injective_consequences(&g, FamilyRange::new(GeneratorFamily::If, 1, 1), b()).unwrap();
    assert!(r.surjective_on_objects.is_yes());
    assert!(r.fibers.is_no());
    assert!(r.family.verdict.is_no());
    assert!(r.consistent);
}
