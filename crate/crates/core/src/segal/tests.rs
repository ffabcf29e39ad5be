use std::sync::Arc;

use super::*;
use crate::bisimplicial::rules::{inclusion, injection, copairing};
use crate::bisimplicial::{emit_bss, find_isomorphism, parse_bss, BisimplicialHom};
use crate::cat::{enumerate_functors, nerve_map, FiniteCategory, Functor};
use crate::invariants::Certificate;
use crate::simplicial::standard::simplex;
use crate::simplicial::SimplicialSet;

fn b() -> Budget {
    Budget::default()
}

fn nerve_of(c: FiniteCategory) -> (Arc<FiniteCategory>, BisimplicialSet) {
    let c = Arc::new(c);
    let n = nerve(&c);
    (c, n)
}

fn isomorphic_categories(a: &Arc<FiniteCategory>, c: &Arc<FiniteCategory>) -> bool {
    a.num_objects() == c.num_objects()
        && a.num_arrows() == c.num_arrows()
        && enumerate_functors(a, c, b()).unwrap().iter().any(|f| {
            let mut o = f.objects.clone();
            o.sort_unstable();
            o.dedup();
            let mut ar = f.arrows.clone();
            ar.sort_unstable();
            ar.dedup();
            o.len() == c.num_objects() && ar.len() == c.num_arrows()
        })
}

#[test]
fn nerve_fibers() {
    let (_, x) = nerve_of(FiniteCategory::poset(1));
    assert_eq!(fiber(&x, &[0, 1], b()).unwrap().set.len(), 1);
    assert_eq!(fiber(&x, &[1, 0], b()).unwrap().set.len(), 0);
    assert_eq!(fiber(&x, &[1, 1], b()).unwrap().set.len(), 1);
    assert!(matches!(fiber(&x, &[0, 5], b()), Err(Error::InvalidParameter(_))));
    for c in [FiniteCategory::poset(2), FiniteCategory::codiscrete(2), FiniteCategory::discrete(2)] {
        let (_, x) = nerve_of(c);
        for n in 0..=3 {
            let total: usize = fiber_decomposition(&x, n, b()).unwrap().iter().map(|f| f.set.len()).sum();
            assert_eq!(total, x.row(n, b()).unwrap().len());
        }
    }
}

#[test]
fn segal_maps() {
    let (_, x) = nerve_of(FiniteCategory::poset(2));
    let r = segal_check(&x, 4, b()).unwrap();
    assert!(r.overall.is_yes());
    assert_eq!((r.steps[0].source, r.steps[0].target), (10, 10));
    assert!(matches!(r.steps[0].verdict.certificate, Certificate::Isomorphism { .. }));

    let g2 = build_spine(SpineKind::G, 2, None).unwrap();
    let r = segal_check(&g2, 2, b()).unwrap();
    assert!(r.overall.is_no());
    assert_eq!((r.steps[0].source, r.steps[0].target), (7, 8));

    let pt = build_spine(SpineKind::Delta, 0, None).unwrap();
    assert!(segal_check(&pt, 3, b()).unwrap().overall.is_yes());
}

#[test]
fn homotopy_categories() {
    for c in [FiniteCategory::poset(2), FiniteCategory::codiscrete(2), FiniteCategory::terminal(), FiniteCategory::discrete(2)] {
        let (c, x) = nerve_of(c);
        let ho = ho_category(&x, b()).unwrap();
        assert!(isomorphic_categories(&ho.category, &c), "{}", c.name);
    }
    let g2 = build_spine(SpineKind::G, 2, None).unwrap();
    assert!(matches!(ho_category(&g2, b()), Err(Error::MissingComposite(_))));
}

#[test]
fn completeness() {
    for n in 0..=2 {
        let (_, x) = nerve_of(FiniteCategory::poset(n));
        assert!(complete_check(&x, b()).unwrap().is_yes());
    }
    let (_, iso) = nerve_of(FiniteCategory::codiscrete(2));
    let v = complete_check(&iso, b()).unwrap();
    assert!(v.is_no());
    match v.certificate {
        Certificate::InvariantMismatch { left, right, .. } => assert_eq!((left, right), (serde_json::json!(2), serde_json::json!(4))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn dk_equivalences() {
    let t = Arc::new(FiniteCategory::terminal());
    let (i1, ni1) = nerve_of(FiniteCategory::codiscrete(2));
    let nt = nerve(&t);
    let f = nerve_map(&Functor::to_terminal(&i1, &t), &ni1, &nt);
    assert!(dk_check_segal(&f, b()).unwrap().is_yes());
    let (d2, nd2) = nerve_of(FiniteCategory::discrete(2));
    let g = nerve_map(&Functor::to_terminal(&d2, &t), &nd2, &nt);
    assert!(dk_check_segal(&g, b()).unwrap().is_no());
    assert!(dk_check_segal(&BisimplicialMap::identity(&ni1), b()).unwrap().is_yes());
}

#[test]
fn discretization() {
    let (_, x) = nerve_of(FiniteCategory::poset(1));
    let r = discretize(&x, b()).unwrap();
    assert!(r.set.ptr_eq(&x));

    let w = BisimplicialSet::constant(&simplex(1));
    let r = discretize(&w, b()).unwrap();
    let t = r.set.rows(3, b()).unwrap();
    for row in &t.rows {
        assert!(row.is_discrete());
        assert_eq!(row.len(), 2);
    }
    r.map.verify(3, b()).unwrap();
    let y = BisimplicialSet::transpose(&simplex(1));
    let direct = BisimplicialHom::new(&y, &w, 1).count().unwrap();
    let through = BisimplicialHom::new(&y, &r.set, 1).count().unwrap();
    assert_eq!((direct, through), (2, 2));
}

#[test]
fn phi_factorizations() {
    let pt = build_spine(SpineKind::Delta, 0, None).unwrap();
    let two = BisimplicialSet::coproduct(&[pt.clone(), pt.clone()]);
    let f = copairing(&two, &pt, &[BisimplicialMap::identity(&pt), BisimplicialMap::identity(&pt)]);
    let p = phi_factorization(&f, 3, b()).unwrap();
    assert!(p.check.is_yes());
    let t = p.set.rows(3, b()).unwrap();
    for n in 0..=3 {
        assert_eq!(t.rows[n].len(), 1 << (n + 1));
    }
    let comp = p.first.then(&p.second);
    assert_eq!(comp.rows(3, b()).unwrap().iter().map(|m| m.images().to_vec()).collect::<Vec<_>>(), f.rows(3, b()).unwrap().iter().map(|m| m.images().to_vec()).collect::<Vec<_>>());

    let t1 = Arc::new(FiniteCategory::terminal());
    let (i1, ni1) = nerve_of(FiniteCategory::codiscrete(2));
    let g = nerve_map(&Functor::to_terminal(&i1, &t1), &ni1, &nerve(&t1));
    let p = phi_factorization(&g, 2, b()).unwrap();
    assert!(p.check.is_yes());
    for v in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        assert_eq!(fiber(&p.set, &v, b()).unwrap().set.len(), 1);
    }
    let _ = injection(&pt, &two, 0);
}

#[test]
fn strict_locality() {
    let (_, x) = nerve_of(FiniteCategory::poset(1));
    assert!(strict_local_check(&x, 2, 1, b()).unwrap().is_yes());
    let g2 = build_spine(SpineKind::G, 2, None).unwrap();
    let v = strict_local_check(&g2, 2, 0, b()).unwrap();
    assert!(v.is_no());
    let pt = build_spine(SpineKind::Delta, 0, None).unwrap();
    assert!(strict_local_check(&pt, 3, 1, b()).unwrap().is_yes());
}

#[test]
fn hom_decompositions() {
    let targets = [nerve_of(FiniteCategory::poset(1)).1, nerve_of(FiniteCategory::codiscrete(2)).1, build_spine(SpineKind::G, 2, None).unwrap()];
    for x in &targets {
        for (m, n) in [(0, 1), (1, 1), (2, 1), (1, 0), (1, 2)] {
            let d = hom_decomposition(&p_object(m, n), x, b()).unwrap();
            assert!(d.bijective, "P({m},{n}) into {}: {d:?}", x.name());
            let d = hom_decomposition(&q_object(m, n), x, b()).unwrap();
            assert!(d.bijective, "Q({m},{n}) into {}: {d:?}", x.name());
        }
    }
}

#[test]
fn reduction_adjunction() {
    let x = BisimplicialSet::product(&[BisimplicialSet::constant(&simplex(1)), BisimplicialSet::transpose(&simplex(1))]);
    let rx = x.reduce();
    assert_eq!(rx.row(0, b()).unwrap().len(), 2);
    let (_, y) = nerve_of(FiniteCategory::poset(1));
    let maps = BisimplicialHom::new(&x, &y, 2).collect().unwrap();
    let reduced = BisimplicialHom::new(&rx, &y, 2).count().unwrap();
    assert_eq!(maps.len(), reduced);
    let unit = crate::bisimplicial::rules::reduce_unit(&x, &rx);
    for h in &maps {
        let g = reduce_adjunct(h, &rx);
        g.verify(2, b()).unwrap();
        assert_eq!(unit.then(&g).key(2, b()).unwrap(), h.key(2, b()).unwrap());
    }
    let c = BisimplicialSet::constant(&simplex(1)).reduce();
    assert!(find_isomorphism(&c, &build_spine(SpineKind::Delta, 0, None).unwrap(), 2, b()).unwrap().is_some());
}

#[test]
fn virtual_documents() {
    for x in [build_spine(SpineKind::G, 2, Some(&[0, 1, 1])).unwrap(), psi_filtration(&[0, 1, 2], 2).unwrap(), nerve_of(FiniteCategory::poset(2)).1] {
        let text = emit_bss(x.name(), &x, 2, b()).unwrap();
        let (_, y, _) = parse_bss(&text).unwrap();
        assert!(find_isomorphism(&x, &y, 2, b()).unwrap().is_some(), "{text}");
    }
    let sub = reedy_generator(1, 1);
    let _ = inclusion(&sub.source, &sub.target);
    let _ = SimplicialSet::point();
}
