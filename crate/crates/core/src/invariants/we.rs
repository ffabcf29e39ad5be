use std::collections::HashSet;
use std::sync::Arc;

use serde_json::json;

use super::homology::{homology, pi0};
use super::verdict::{Certificate, HornStep, Verdict};
use crate::error::Budget;
use crate::simplicial::{NdId, SimplicialMap, SimplicialSet};

/// Homology degrees compared by [`we_verdict`].
pub const HOMOLOGY_BOUND: usize = 4;

/// Is the pair `(y, face k of y)` an elementary horn expansion of the
/// subcomplex `inside`?
fn expandable(y: &SimplicialSet, inside: &[bool], id: NdId, k: usize) -> bool {
    if inside[id as usize] || y.dim_of(id) == 0 {
        return false;
    }
    let faces = y.faces_of(id);
    let tau = faces[k];
    if tau.is_degenerate() || inside[tau.nd as usize] {
        return false;
    }
    faces.iter().enumerate().all(|(i, f)| i == k || inside[f.nd as usize])
}

/// Searches for horn expansions taking the subcomplex `start` to all of `y`.
/// Greedy first, then a bounded depth-first search over expansion orders.
pub fn find_expansion(y: &SimplicialSet, start: &[bool], budget: Budget) -> Option<Vec<HornStep>> {
    let total = y.len();
    let mut inside = start.to_vec();
    let mut steps = Vec::new();
    let mut count = inside.iter().filter(|&&b| b).count();
    'greedy: loop {
        if count == total {
            return Some(steps);
        }
        for id in y.ids() {
            for k in 0..=y.dim_of(id) {
                if y.dim_of(id) > 0 && expandable(y, &inside, id, k) {
                    inside[id as usize] = true;
                    inside[y.faces_of(id)[k].nd as usize] = true;
                    count += 2;
                    steps.push(HornStep { simplex: id, face: k });
                    continue 'greedy;
                }
            }
        }
        break;
    }
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut nodes = 0u64;
    let mut path = Vec::new();
    let mut state = start.to_vec();
    if dfs(y, &mut state, &mut path, &mut seen, &mut nodes, budget.nodes) {
        Some(path)
    } else {
        None
    }
}

fn dfs(y: &SimplicialSet, inside: &mut Vec<bool>, path: &mut Vec<HornStep>, seen: &mut HashSet<Vec<bool>>, nodes: &mut u64, limit: u64) -> bool {
    if inside.iter().all(|&b| b) {
        return true;
    }
    *nodes += 1;
    if *nodes > limit || !seen.insert(inside.clone()) {
        return false;
    }
    for id in y.ids() {
        if y.dim_of(id) == 0 {
            continue;
        }
        for k in 0..=y.dim_of(id) {
            if expandable(y, inside, id, k) {
                let tau = y.faces_of(id)[k].nd as usize;
                inside[id as usize] = true;
                inside[tau] = true;
                path.push(HornStep { simplex: id, face: k });
                if dfs(y, inside, path, seen, nodes, limit) {
                    return true;
                }
                path.pop();
                inside[id as usize] = false;
                inside[tau] = false;
            }
        }
    }
    false
}

/// Replays an expansion; true when it is valid and exhausts `y`.
pub fn check_expansion(y: &SimplicialSet, start: &[bool], steps: &[HornStep]) -> bool {
    let mut inside = start.to_vec();
    for s in steps {
        if s.simplex as usize >= y.len() || s.face > y.dim_of(s.simplex) || !expandable(y, &inside, s.simplex, s.face) {
            return false;
        }
        inside[s.simplex as usize] = true;
        inside[y.faces_of(s.simplex)[s.face].nd as usize] = true;
    }
    inside.iter().all(|&b| b)
}

fn image_mask(f: &SimplicialMap) -> Vec<bool> {
    let mut inside = vec![false; f.target.len()];
    for s in f.images() {
        inside[s.nd as usize] = true;
    }
    inside
}

/// One vertex per component: the start of a contraction certificate.
fn component_roots(x: &SimplicialSet) -> (Vec<NdId>, Vec<bool>) {
    let comps = pi0(x);
    let roots: Vec<NdId> = comps.classes().iter().map(|c| c[0]).collect();
    let mut mask = vec![false; x.len()];
    for &r in &roots {
        mask[r as usize] = true;
    }
    (roots, mask)
}

/// π_0 of `f` as a map of component indices.
fn pi0_map(f: &SimplicialMap) -> Vec<usize> {
    let cx = pi0(&f.source);
    let cy = pi0(&f.target);
    cx.classes().iter().map(|c| cy.of_vertex[f.image(c[0]).nd as usize]).collect()
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    map.len() == n && map.iter().collect::<HashSet<_>>().len() == n
}

/// Three-valued weak-equivalence decision with a re-verifiable certificate.
pub fn we_verdict(f: &SimplicialMap, budget: Budget) -> Verdict {
    let (x, y) = (&f.source, &f.target);
    if f.is_isomorphism() {
        return Verdict::yes(Certificate::Isomorphism { images: f.images().to_vec() }, budget);
    }
    let (cx, cy) = (pi0(x), pi0(y));
    if cx.count != cy.count {
        return Verdict::mismatch("pi0 count", json!(cx.count), json!(cy.count), budget);
    }
    let map = pi0_map(f);
    if !is_bijection(&map, cy.count) {
        return Verdict::mismatch("pi0 map", json!(map), json!(cy.count), budget);
    }
    let bound = HOMOLOGY_BOUND;
    if let (Ok(hx), Ok(hy)) = (homology(x, bound, budget), homology(y, bound, budget)) {
        for d in 0..=bound {
            if hx[d] != hy[d] {
                return Verdict::mismatch(format!("H{d}"), json!(hx[d]), json!(hy[d]), budget);
            }
        }
    }
    if f.is_injective() {
        if let Some(steps) = find_expansion(y, &image_mask(f), budget) {
            return Verdict::yes(Certificate::AnodyneExpansion { steps }, budget);
        }
    }
    let (rx, mx) = component_roots(x);
    let (ry, my) = component_roots(y);
    if let Some(sx) = find_expansion(x, &mx, budget) {
        if let Some(sy) = find_expansion(y, &my, budget) {
            return Verdict::yes(
                Certificate::Contractible { source: (rx, sx), target: (ry, sy) },
                budget,
            );
        }
    }
    Verdict::unknown("no isomorphism, expansion or contraction found; invariants agree", budget)
}

/// Independently re-checks a verdict returned by [`we_verdict`].
pub fn verify_we(f: &SimplicialMap, v: &Verdict) -> bool {
    let (x, y) = (&f.source, &f.target);
    match &v.certificate {
        Certificate::Isomorphism { images } => images == f.images() && f.verify().is_ok() && f.is_isomorphism(),
        Certificate::AnodyneExpansion { steps } => f.is_injective() && check_expansion(y, &image_mask(f), steps),
        Certificate::Contractible { source, target } => {
            let roots_ok = |z: &SimplicialSet, roots: &[NdId]| {
                let comps = pi0(z);
                roots.len() == comps.count
                    && roots.iter().enumerate().all(|(k, &r)| z.dim_of(r) == 0 && comps.of_vertex[r as usize] == k)
            };
            let mask = |z: &SimplicialSet, roots: &[NdId]| {
                let mut m = vec![false; z.len()];
                for &r in roots {
                    m[r as usize] = true;
                }
                m
            };
            is_bijection(&pi0_map(f), pi0(y).count)
                && roots_ok(x, &source.0)
                && roots_ok(y, &target.0)
                && check_expansion(x, &mask(x, &source.0), &source.1)
                && check_expansion(y, &mask(y, &target.0), &target.1)
        }
        Certificate::InvariantMismatch { invariant, left, right } => {
            let recomputed = match invariant.as_str() {
                "pi0 count" => Some((json!(pi0(x).count), json!(pi0(y).count))),
                "pi0 map" => Some((json!(pi0_map(f)), json!(pi0(y).count))),
                h if h.starts_with('H') => h[1..].parse::<usize>().ok().and_then(|d| {
                    let hx = homology(x, d, Budget::default()).ok()?;
                    let hy = homology(y, d, Budget::default()).ok()?;
                    Some((json!(hx[d]), json!(hy[d])))
                }),
                _ => None,
            };
            match recomputed {
                Some((l, r)) if invariant == "pi0 map" => l == *left && !is_bijection(&pi0_map(f), pi0(y).count) && r == *right,
                Some((l, r)) => l == *left && r == *right && l != r,
                None => false,
            }
        }
        Certificate::Exhausted { .. } => true,
        _ => false,
    }
}

/// Convenience: is `x` weakly contractible by a certified contraction?
pub fn contraction(x: &Arc<SimplicialSet>, budget: Budget) -> Option<Vec<HornStep>> {
    let (roots, mask) = component_roots(x);
    if roots.len() != 1 {
        return None;
    }
    find_expansion(x, &mask, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::State;
    use crate::simplicial::standard::{boundary, horn, simplex};

    #[test]
    fn identity_and_horn_inclusion_are_equivalences() {
        let d2 = simplex(2);
        let v = we_verdict(&SimplicialMap::identity(&d2), Budget::default());
        assert_eq!(v.state, State::Yes);
        assert!(verify_we(&SimplicialMap::identity(&d2), &v));
        let h = horn(2, 1).unwrap();
        let v = we_verdict(&h.inclusion, Budget::default());
        assert_eq!(v.state, State::Yes);
        assert!(matches!(v.certificate, Certificate::AnodyneExpansion { .. }));
        assert!(verify_we(&h.inclusion, &v));
    }

    #[test]
    fn boundary_inclusion_is_not() {
        let b = boundary(2);
        let v = we_verdict(&b.inclusion, Budget::default());
        assert_eq!(v.state, State::No);
        assert!(verify_we(&b.inclusion, &v));
    }

    #[test]
    fn contractible_targets() {
        let x = simplex(3);
        let p = Arc::new(SimplicialSet::point());
        let f = SimplicialMap::to_point(&x, &p);
        let v = we_verdict(&f, Budget::default());
        assert_eq!(v.state, State::Yes);
        assert!(verify_we(&f, &v));
    }
}
