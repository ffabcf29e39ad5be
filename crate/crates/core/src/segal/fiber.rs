//! Vertex fibers `X_n(v_0, ..., v_n)` and the decomposition of maps out of
//! `P_{m,n}` and `Q_{m,n}`.

use std::collections::HashSet;
use std::sync::Arc;

use super::generators::{transpose_index, PushoutObject};
use crate::bisimplicial::{BisimplicialHom, BisimplicialSet, Truncation};
use crate::error::{Budget, Error, Result};
use crate::simplicial::standard::top;
use crate::simplicial::{hom_enumerate, NdId, Simplex, SimplicialMap, SimplicialSet};

#[derive(Debug, Clone)]
pub struct Fiber {
    pub over: Vec<usize>,
    pub set: Arc<SimplicialSet>,
    /// Inclusion into row `n`.
    pub inclusion: SimplicialMap,
}

/// The vertex operators `X_n -> X_0`, one per `i ∈ [n]`.
pub(crate) fn vertex_maps(t: &Truncation, n: usize) -> Vec<SimplicialMap> {
    (0..=n).map(|i| t.vertex(n, i)).collect()
}

/// The vertex tuple of a nondegenerate simplex of row `n`, or `None` when
/// some vertex image is not a degenerate point of row 0.
pub(crate) fn tuple_of(maps: &[SimplicialMap], id: NdId) -> Option<Vec<usize>> {
    maps.iter()
        .map(|m| {
            let s = m.image(id);
            (s.nd_dim() == 0).then_some(s.nd as usize)
        })
        .collect()
}

fn check_tuple(t: &Truncation, v: &[usize]) -> Result<usize> {
    if v.is_empty() {
        return Err(Error::invalid("empty vertex tuple"));
    }
    let row0 = &t.rows[0];
    for &x in v {
        if x >= row0.len() || row0.dim_of(x as NdId) != 0 {
            return Err(Error::invalid(format!("unknown vertex {x}")));
        }
    }
    Ok(v.len() - 1)
}

/// The part of row `n = v.len() - 1` lying over `v`.
pub fn fiber(x: &BisimplicialSet, v: &[usize], budget: Budget) -> Result<Fiber> {
    let n = v.len().saturating_sub(1);
    let t = x.rows(n, budget)?;
    fiber_in(&t, v)
}

pub(crate) fn fiber_in(t: &Truncation, v: &[usize]) -> Result<Fiber> {
    let n = check_tuple(t, v)?;
    let maps = vertex_maps(t, n);
    let row = &t.rows[n];
    let keep: Vec<NdId> = row.ids().filter(|&id| tuple_of(&maps, id).as_deref() == Some(v)).collect();
    let (set, inclusion) = row.subcomplex(keep);
    Ok(Fiber { over: v.to_vec(), set, inclusion })
}

/// All tuples in `O^{n+1}` for `O` the points of row 0.
pub fn vertex_tuples(t: &Truncation, n: usize) -> Vec<Vec<usize>> {
    let objs: Vec<usize> = t.rows[0].vertices().iter().map(|&v| v as usize).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..=n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                objs.iter().map(move |&o| {
                    let mut q = p.clone();
                    q.push(o);
                    q
                })
            })
            .collect();
    }
    out
}

/// The nonempty fibers of row `n`, over every tuple that has one.
pub fn fiber_decomposition(x: &BisimplicialSet, n: usize, budget: Budget) -> Result<Vec<Fiber>> {
    let t = x.rows(n, budget)?;
    let maps = vertex_maps(&t, n);
    let row = &t.rows[n];
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut seen = HashSet::new();
    for id in row.ids() {
        let v = tuple_of(&maps, id).ok_or_else(|| Error::invalid("row 0 is not discrete"))?;
        if seen.insert(v.clone()) {
            tuples.push(v);
        }
    }
    tuples.sort();
    tuples.iter().map(|v| fiber_in(&t, v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `|Hom(P, X)|`.
    pub maps: usize,
    /// `Σ_v |Hom(K, X_n(v))|`.
    pub fiber_maps: usize,
    pub bijective: bool,
}

type Key = (Vec<usize>, Vec<Simplex>);

/// Compares `Hom(P, X)` with `∐_v Hom(K, X_n(v))` for a pushout object with
/// legs, by sending `g` to its vertex tuple and its restriction to
/// `K × {ι_n}`.
pub fn hom_decomposition(p: &PushoutObject, x: &BisimplicialSet, budget: Budget) -> Result<Decomposition> {
    let (left, right) = p.legs.as_ref().ok_or_else(|| Error::invalid("the empty object has no legs"))?;
    let n = p.n;
    let tx = x.rows(n, budget)?;
    if !tx.discrete0() {
        return Err(Error::invalid("row 0 is not discrete"));
    }
    let tprod = p.product.rows(n, budget)?;
    let lim = tprod.limit(n).ok_or_else(|| Error::malformed("product row is not a limit"))?;
    let iota = transpose_index(n, top(n));
    let k = &p.factor;
    let points = lim.diagram.nodes[1].clone();
    let copy = lim.induced(k, |node, s| if node == 0 { s } else { points.degenerate_vertex(iota, s.dim()) })?;

    // vertex tuple from the Δ[n]^t_0 leg, and the restriction to K × {ι_n}
    let l0 = left.row(0, budget)?;
    let through = copy.then(&right.row(n, budget)?);
    let mut lhs: Vec<Key> = Vec::new();
    BisimplicialHom::new(&p.set, x, n).budget(budget).for_each(|g| {
        let vm = l0.then(&g[0]);
        let v = (0..=n).map(|i| vm.image(i as NdId).nd as usize).collect();
        lhs.push((v, through.then(&g[n]).images().to_vec()));
        std::ops::ControlFlow::Continue(())
    })?;

    let mut rhs: Vec<Key> = Vec::new();
    for v in vertex_tuples(&tx, n) {
        let f = fiber_in(&tx, &v)?;
        for h in hom_enumerate(k, &f.set, budget)? {
            rhs.push((v.clone(), h.then(&f.inclusion).images().to_vec()));
        }
    }
    let lset: HashSet<&Key> = lhs.iter().collect();
    let rset: HashSet<&Key> = rhs.iter().collect();
    Ok(Decomposition { maps: lhs.len(), fiber_maps: rhs.len(), bijective: lset.len() == lhs.len() && lset == rset })
}
