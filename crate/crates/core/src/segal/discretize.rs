//! The discretization `RW`, the factorization through `ΦY`, and strict
//! locality against the spine inclusions.

use std::sync::Arc;

use serde_json::json;

use super::check::require_discrete0;
use super::fiber::{fiber_in, vertex_tuples};
use super::spine::spine_inclusion;
use crate::bisimplicial::rules::{corestrict, cosk_map, cosk_unit, pullback_induced, pullback_projections};
use crate::bisimplicial::{BisimplicialMap, BisimplicialSet, MappingSpace};
use crate::error::{Budget, Error, Result};
use crate::invariants::{State, Verdict};
use crate::simplicial::{Simplex, SimplicialMap, SimplicialSet};

pub struct Discretization {
    pub set: BisimplicialSet,
    /// `RW -> W`.
    pub map: BisimplicialMap,
}

/// The constant object on the points of `W_{0,0}` with its row-0 map into `W`.
fn points_of_row0(w: &BisimplicialSet, budget: Budget) -> Result<(BisimplicialSet, BisimplicialMap)> {
    let row0 = w.row(0, budget)?;
    let pts: Vec<_> = row0.vertices().to_vec();
    let c = BisimplicialSet::constant(&Arc::new(SimplicialSet::discrete(pts.len())));
    let map = BisimplicialMap::from_rows(&c, w, move |k, ts, tw| {
        if k > 0 {
            return Err(Error::malformed("only row 0 of the vertex inclusion is defined"));
        }
        Ok(SimplicialMap::from_images_unchecked(ts.rows[0].clone(), tw.rows[0].clone(), pts.iter().map(|&p| Simplex::nondegenerate(p, 0)).collect()))
    });
    Ok((c, map))
}

/// `RW = W ×_{cosk_0 W_0} cosk_0 W_{0,0}`; `W` itself when its row 0 is
/// already discrete.
pub fn discretize(w: &BisimplicialSet, budget: Budget) -> Result<Discretization> {
    if w.row(0, budget)?.is_discrete() {
        return Ok(Discretization { set: w.clone(), map: BisimplicialMap::identity(w) });
    }
    let (c, incl) = points_of_row0(w, budget)?;
    let u = w.cosk(0);
    let v = c.cosk(0);
    let unit = cosk_unit(w, &u, 0);
    let lower = cosk_map(&incl, &v, &u, 0);
    let rw = BisimplicialSet::pullback(&unit, &lower).renamed(format!("R({})", w.name()));
    let (proj, _) = pullback_projections(&unit, &lower, &rw);
    Ok(Discretization { set: rw, map: proj })
}

pub struct PhiFactorization {
    pub set: BisimplicialSet,
    /// `X -> ΦY`.
    pub first: BisimplicialMap,
    /// `ΦY -> Y`.
    pub second: BisimplicialMap,
    /// Row 0 of `ΦY` is `X_0` and every vertex-fiber comparison is an
    /// isomorphism, through the checked window.
    pub check: Verdict,
}

/// `ΦY = Y ×_{cosk_0 Y_0} cosk_0 X_0`, factoring `f : X -> Y`.
pub fn phi_factorization(f: &BisimplicialMap, window: usize, budget: Budget) -> Result<PhiFactorization> {
    let (x, y) = (&f.source, &f.target);
    let tx = x.rows(window, budget)?;
    let ty = y.rows(window, budget)?;
    require_discrete0(&tx)?;
    require_discrete0(&ty)?;
    let (cx, cy) = (x.cosk(0), y.cosk(0));
    let unit_y = cosk_unit(y, &cy, 0);
    let lower = cosk_map(f, &cx, &cy, 0);
    let phi = BisimplicialSet::pullback(&unit_y, &lower).renamed(format!("Phi({})", y.name()));
    let (second, third) = pullback_projections(&unit_y, &lower, &phi);
    let first = pullback_induced(&phi, &unit_y, f, &cosk_unit(x, &cx, 0));

    let tp = phi.rows(window, budget)?;
    let firsts = first.rows(window, budget)?;
    let seconds = second.rows(window, budget)?;
    if !third.row(0, budget)?.is_isomorphism() {
        let check = Verdict::witness(State::No, "row 0 differs from the source objects", json!({ "source": tx.rows[0].len(), "phi": tp.rows[0].len() }), budget);
        return Ok(PhiFactorization { set: phi, first, second, check });
    }
    let mut checked = 0;
    for n in 0..=window {
        for v in vertex_tuples(&tx, n) {
            let pv: Vec<usize> = v.iter().map(|&o| firsts[0].image(o as u32).nd as usize).collect();
            let fv: Vec<usize> = pv.iter().map(|&o| seconds[0].image(o as u32).nd as usize).collect();
            let fp = fiber_in(&tp, &pv)?;
            let fy = fiber_in(&ty, &fv)?;
            let m = corestrict(&fp.inclusion.then(&seconds[n]), &fy.inclusion)?;
            checked += 1;
            if !m.is_isomorphism() {
                let check = Verdict::witness(
                    State::No,
                    "fiber comparison is not an isomorphism",
                    json!({ "over": v, "phi_fiber": fp.set.len(), "target_fiber": fy.set.len() }),
                    budget,
                );
                return Ok(PhiFactorization { set: phi, first, second, check });
            }
        }
    }
    let check = Verdict::exhaustive("row 0 is the source objects and every fiber comparison is an isomorphism", checked, budget);
    Ok(PhiFactorization { set: phi, first, second, check })
}

/// Strict locality: `Map(Δ[k]^t, X) -> Map(G(k)^t, X)` is an isomorphism
/// through degree `deg_bound` for `2 ≤ k ≤ k_max`.
pub fn strict_local_check(x: &BisimplicialSet, k_max: usize, deg_bound: usize, budget: Budget) -> Result<Verdict> {
    require_discrete0(&*x.rows(0, budget)?)?;
    let mut parts = Vec::new();
    for k in 2..=k_max {
        let v = match strict_local_at(x, k, deg_bound, budget) {
            Ok(v) => v,
            Err(e) => Verdict::from_budget_error(e, budget)?,
        };
        parts.push((format!("k={k}"), v));
    }
    Ok(Verdict::all(parts, budget))
}

fn strict_local_at(x: &BisimplicialSet, k: usize, deg_bound: usize, budget: Budget) -> Result<Verdict> {
    let (g, d, inc) = spine_inclusion(k, None)?;
    let md = MappingSpace::compute(&d, x, deg_bound, k, budget)?;
    let mg = MappingSpace::compute(&g, x, deg_bound, k, budget)?;
    let m = md.precompose(&mg, &inc)?;
    if m.is_isomorphism() {
        Ok(Verdict::exhaustive(format!("restriction along G({k}) -> Delta[{k}] is a bijection"), md.set.len(), budget))
    } else {
        Ok(Verdict::witness(
            State::No,
            "restriction is not an isomorphism",
            json!({ "k": k, "simplex_sizes": md.sizes(), "spine_sizes": mg.sizes() }),
            budget,
        ))
    }
}
