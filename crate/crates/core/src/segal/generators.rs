//! The generating maps `I_c` and `I_f` and the objects `P_{m,n}`, `Q_{m,n}`.

use std::sync::Arc;

use crate::bisimplicial::rules::{inclusion, product_map, projection, pushout_induced, pushout_legs, reduce_map};
use crate::bisimplicial::spaces::constant_map;
use crate::bisimplicial::{BisimplicialMap, BisimplicialSet};
use crate::error::{Error, Result};
use crate::simplicial::standard::{boundary, simplex, top};
use crate::simplicial::{NdId, Simplex, SimplicialMap, SimplicialSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Ic,
    If,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Ic" | "ic" => Ok(Family::Ic),
            "If" | "if" => Ok(Family::If),
            _ => Err(Error::invalid(format!("unknown generator family `{s}`"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Ic => "Ic",
            Family::If => "If",
        })
    }
}

/// `Δ[n]^t_0`: the doubly constant object on the vertices of `Δ[n]`.
pub fn vertices_t0(n: usize) -> BisimplicialSet {
    BisimplicialSet::constant(&Arc::new(SimplicialSet::discrete(n + 1)))
}

/// Index of a simplex of `Δ[n]` among `Δ[n]_k`, the points of row `k` of
/// `Δ[n]^t`.
pub(crate) fn transpose_index(n: usize, s: Simplex) -> NdId {
    simplex(n).simplices_of_dim(s.dim()).iter().position(|&t| t == s).expect("a simplex of Δ[n]") as NdId
}

/// The inclusion `Δ[n]^t_0 -> Δ[n]^t` of the constant families.
pub fn vertex_inclusion(n: usize, d0: &BisimplicialSet, dt: &BisimplicialSet) -> BisimplicialMap {
    BisimplicialMap::from_rows(d0, dt, move |k, ts, tt| {
        let d = simplex(n);
        let images = (0..=n).map(|i| Simplex::nondegenerate(transpose_index(n, d.degenerate_vertex(i as NdId, k)), 0)).collect();
        Ok(SimplicialMap::from_images_unchecked(ts.rows[k].clone(), tt.rows[k].clone(), images))
    })
}

/// A pushout `Δ[n]^t_0 ⊔_{K × Δ[n]^t_0} (K × Δ[n]^t)` with `K` constant.
#[derive(Clone)]
pub struct PushoutObject {
    pub m: usize,
    pub n: usize,
    pub set: BisimplicialSet,
    /// `K`, either `∂Δ[m]` or `Δ[m]`.
    pub factor: Arc<SimplicialSet>,
    pub vertices: BisimplicialSet,
    /// `K × Δ[n]^t`.
    pub product: BisimplicialSet,
    /// `Δ[n]^t_0 -> set` and `K × Δ[n]^t -> set`; absent for the empty
    /// `P_{0,0}`.
    pub legs: Option<(BisimplicialMap, BisimplicialMap)>,
}

struct Shared {
    vertices: BisimplicialSet,
    transpose: BisimplicialSet,
}

fn shared(n: usize) -> Shared {
    Shared { vertices: vertices_t0(n), transpose: BisimplicialSet::transpose(&simplex(n)) }
}

fn pushout_object(m: usize, n: usize, factor: Arc<SimplicialSet>, sh: &Shared, name: String) -> PushoutObject {
    let ck = BisimplicialSet::constant(&factor);
    let a = BisimplicialSet::product(&[ck.clone(), sh.vertices.clone()]);
    let b = BisimplicialSet::product(&[ck.clone(), sh.transpose.clone()]);
    let f = projection(&a, &sh.vertices, 1);
    let g = product_map(&a, &b, &[BisimplicialMap::identity(&ck), vertex_inclusion(n, &sh.vertices, &sh.transpose)]);
    let p = BisimplicialSet::pushout(&f, &g).renamed(name);
    let legs = pushout_legs(&f, &g, &p);
    PushoutObject { m, n, set: p, factor, vertices: sh.vertices.clone(), product: b, legs: Some(legs) }
}

fn empty_p00(sh: &Shared) -> PushoutObject {
    let empty = Arc::new(SimplicialSet::empty());
    PushoutObject {
        m: 0,
        n: 0,
        set: BisimplicialSet::constant(&empty).renamed("P(0,0)"),
        factor: empty.clone(),
        vertices: sh.vertices.clone(),
        product: BisimplicialSet::product(&[BisimplicialSet::constant(&empty), sh.transpose.clone()]),
        legs: None,
    }
}

/// `P_{m,n}`, with `K = ∂Δ[m]`; `P_{0,0}` is empty.
pub fn p_object(m: usize, n: usize) -> PushoutObject {
    let sh = shared(n);
    p_with(m, n, &sh)
}

fn p_with(m: usize, n: usize, sh: &Shared) -> PushoutObject {
    if m == 0 && n == 0 {
        return empty_p00(sh);
    }
    pushout_object(m, n, boundary(m).set, sh, format!("P({m},{n})"))
}

/// `Q_{m,n}`, with `K = Δ[m]`; `Q_{0,0} = Δ[0]^t`.
pub fn q_object(m: usize, n: usize) -> PushoutObject {
    let sh = shared(n);
    pushout_object(m, n, simplex(m), &sh, format!("Q({m},{n})"))
}

pub struct Generator {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub map: BisimplicialMap,
}

impl Generator {
    pub fn source(&self) -> &BisimplicialSet {
        &self.map.source
    }

    pub fn target(&self) -> &BisimplicialSet {
        &self.map.target
    }
}

/// `i_{m,n} : P_{m,n} -> Q_{m,n}`.
pub fn if_generator(m: usize, n: usize) -> Generator {
    let sh = shared(n);
    let p = p_with(m, n, &sh);
    let q = pushout_object(m, n, simplex(m), &sh, format!("Q({m},{n})"));
    let (ql, qr) = q.legs.clone().expect("Q has legs");
    let map = match &p.legs {
        None => BisimplicialMap::from_rows(&p.set, &q.set, |k, ts, tt| Ok(SimplicialMap::from_images_unchecked(ts.rows[k].clone(), tt.rows[k].clone(), Vec::new()))),
        Some(_) => {
            let inc = constant_map(&BisimplicialSet::constant(&p.factor), &BisimplicialSet::constant(&q.factor), &boundary(m).inclusion);
            let across = product_map(&p.product, &q.product, &[inc, BisimplicialMap::identity(&sh.transpose)]);
            pushout_induced(&p.set, &ql, &across.then(&qr))
        }
    };
    Generator { family: Family::If, m, n, map }
}

/// The Reedy generator `∂Δ[m] × Δ[n]^t ∪ Δ[m] × ∂Δ[n]^t -> Δ[m] × Δ[n]^t`.
pub fn reedy_generator(m: usize, n: usize) -> BisimplicialMap {
    let prod = BisimplicialSet::product(&[BisimplicialSet::constant(&simplex(m)), BisimplicialSet::transpose(&simplex(n))]);
    let (top_m, top_n) = (top(m).nd, top(n).nd);
    let d = simplex(n);
    let sub = prod.subobject(
        move |k, t, id| {
            let fam = t.limit(k).expect("product rows are limits").family_of_nd(id);
            let b = d.simplices_of_dim(k)[fam[1].nd as usize];
            fam[0].nd != top_m || b.nd != top_n
        },
        Some(n),
    );
    inclusion(&sub, &prod)
}

/// The reduction of the Reedy generator for any `m, n`.
pub fn reedy_reduction(m: usize, n: usize) -> BisimplicialMap {
    let g = reedy_generator(m, n);
    let rs = g.source.reduce();
    let rt = g.target.reduce();
    reduce_map(&g, &rs, &rt)
}

/// A member of `I_c`: defined for `n ≥ 1`, and for `n = m = 0`.
pub fn ic_generator(m: usize, n: usize) -> Result<Generator> {
    if n == 0 && m >= 1 {
        let why = if m == 1 { "the reduced map is not a monomorphism" } else { "the reduced map is an isomorphism" };
        return Err(Error::invalid(format!("Ic is not defined for n = 0, m = {m}: {why}")));
    }
    Ok(Generator { family: Family::Ic, m, n, map: reedy_reduction(m, n) })
}

pub fn build_generator(family: Family, m: usize, n: usize) -> Result<Generator> {
    match family {
        Family::Ic => ic_generator(m, n),
        Family::If => Ok(if_generator(m, n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisimplicial::find_isomorphism;
    use crate::error::Budget;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn q11_objects() {
        let q = q_object(1, 1);
        let t = q.set.rows(1, b()).unwrap();
        assert_eq!(t.rows[0].len(), 2);
        assert!(t.discrete0());
    }

    #[test]
    fn p_matches_reduction() {
        for n in 0..=1 {
            let p = p_object(2, n);
            let r = reedy_generator(2, n);
            let prod = BisimplicialSet::product(&[BisimplicialSet::constant(&boundary(2).set), BisimplicialSet::transpose(&simplex(n))]).reduce();
            assert!(find_isomorphism(&p.set, &prod, n.max(1), b()).unwrap().is_some(), "n = {n}");
            r.verify(n.max(1), b()).unwrap();
        }
    }

    #[test]
    fn ic_cases() {
        let g = ic_generator(0, 0).unwrap();
        let ts = g.source().rows(1, b()).unwrap();
        let tt = g.target().rows(1, b()).unwrap();
        assert!(ts.rows.iter().all(|r| r.is_empty()));
        assert_eq!(tt.rows[0].len(), 1);
        assert!(ic_generator(1, 0).is_err());
        let m1 = reedy_reduction(1, 0);
        assert_eq!(m1.source.rows(0, b()).unwrap().rows[0].len(), 2);
        assert!(!m1.is_injective(1, b()).unwrap());
        assert!(reedy_reduction(2, 0).is_isomorphism(1, b()).unwrap());
        let g = ic_generator(1, 1).unwrap();
        g.map.verify(2, b()).unwrap();
        assert!(g.map.is_injective(2, b()).unwrap());
    }

    #[test]
    fn if_maps() {
        for (m, n) in [(0, 0), (1, 1), (2, 1), (0, 1)] {
            let g = if_generator(m, n);
            g.map.verify(n.max(1), b()).unwrap();
            assert!(g.target().rows(1, b()).unwrap().discrete0());
        }
    }
}
