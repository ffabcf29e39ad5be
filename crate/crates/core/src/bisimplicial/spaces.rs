//! Embeddings, matching objects, the sk ⊣ cosk adjunction and function
//! complexes.

use std::collections::HashMap;
use std::sync::Arc;

use super::map::{BisimplicialHom, BisimplicialMap};
use super::object::BisimplicialSet;
use super::rules::{cosk_map, cosk_unit, product_map};
use crate::error::{Budget, Error, Result};
use crate::simplicial::standard::{codegeneracy_map, coface_map, simplex};
use crate::simplicial::{NdId, Simplex, SimplicialMap, SimplicialSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embed {
    Constant,
    Transpose,
}

impl std::str::FromStr for Embed {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(Embed::Constant),
            "transpose" => Ok(Embed::Transpose),
            other => Err(Error::invalid(format!("unknown embedding `{other}`"))),
        }
    }
}

pub fn embed(kind: Embed, k: &Arc<SimplicialSet>) -> BisimplicialSet {
    match kind {
        Embed::Constant => BisimplicialSet::constant(k),
        Embed::Transpose => BisimplicialSet::transpose(k),
    }
}

/// The constant map `constant(f.source) -> constant(f.target)`.
pub fn constant_map(source: &BisimplicialSet, target: &BisimplicialSet, f: &SimplicialMap) -> BisimplicialMap {
    let f = f.clone();
    BisimplicialMap::from_rows(source, target, move |_, _, _| Ok(f.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Skeleton,
    Coskeleton,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "skeleton" | "sk" => Ok(Direction::Skeleton),
            "coskeleton" | "cosk" => Ok(Direction::Coskeleton),
            other => Err(Error::invalid(format!("unknown direction `{other}`"))),
        }
    }
}

/// `sk_n X` or `cosk_n X`, with rows checked to be available on the window.
pub fn sk_cosk(x: &BisimplicialSet, n: usize, dir: Direction, window: usize, budget: Budget) -> Result<BisimplicialSet> {
    x.rows(window.max(n), budget)?;
    let out = match dir {
        Direction::Skeleton => x.skeleton(n),
        Direction::Coskeleton => x.cosk(n),
    };
    out.rows(window, budget)?;
    Ok(out)
}

/// `P_n = (cosk_{n-1} X)_n` with the matching map `X_n -> P_n`.
pub fn matching_object(x: &BisimplicialSet, n: usize, budget: Budget) -> Result<(Arc<SimplicialSet>, SimplicialMap)> {
    if n == 0 {
        return Err(Error::invalid("the matching object is defined for n ≥ 1"));
    }
    let c = x.cosk(n - 1);
    let map = cosk_unit(x, &c, n - 1).row(n, budget)?;
    Ok((c.row(n, budget)?, map))
}

/// The adjunct `X -> cosk_n Y` of `f : sk_n X -> Y`.
pub fn cosk_adjunct(f: &BisimplicialMap, x: &BisimplicialSet, cy: &BisimplicialSet, n: usize, window: usize, budget: Budget) -> Result<BisimplicialMap> {
    let cx = x.cosk(n);
    let low = f.rows(n.min(window), budget)?;
    let low = BisimplicialMap::stored(&f.source, &f.target, low);
    let g = cosk_unit(x, &cx, n).then(&cosk_map(&low, &cx, cy, n));
    Ok(BisimplicialMap::stored(x, cy, g.rows(window, budget)?))
}

/// The adjunct `sk_n X -> Y` of `g : X -> cosk_n Y`, extended from rows
/// `≤ n` along the degeneracies generating the skeleton.
pub fn sk_adjunct(g: &BisimplicialMap, skx: &BisimplicialSet, y: &BisimplicialSet, n: usize, window: usize, budget: Budget) -> Result<BisimplicialMap> {
    let ts = skx.rows(window, budget)?;
    let ty = y.rows(window, budget)?;
    let gl = g.rows(n.min(window), budget)?;
    let mut rows: Vec<SimplicialMap> = Vec::with_capacity(window + 1);
    for m in 0..=window {
        if m <= n {
            rows.push(SimplicialMap::from_images_unchecked(ts.rows[m].clone(), ty.rows[m].clone(), gl[m].images().to_vec()));
            continue;
        }
        let xs = &ts.rows[m];
        let mut images: Vec<Option<Simplex>> = vec![None; xs.len()];
        let prev = &rows[m - 1];
        for j in 0..m {
            for w in ts.rows[m - 1].ids() {
                let t = ts.degens[m - 1][j].image(w);
                if images[t.nd as usize].is_some() {
                    continue;
                }
                let gt = ty.degens[m - 1][j].apply(prev.image(w));
                let section = section_of(t);
                images[t.nd as usize] = Some(ty.rows[m].apply(gt, &section));
            }
        }
        let images = images
            .into_iter()
            .map(|s| s.ok_or_else(|| Error::malformed("row of the skeleton is not generated by degeneracies")))
            .collect::<Result<Vec<_>>>()?;
        rows.push(SimplicialMap::from_images_unchecked(xs.clone(), ty.rows[m].clone(), images));
    }
    Ok(BisimplicialMap::stored(skx, y, rows))
}

/// An injection `ι` with `ι^* t` the nondegenerate simplex under `t`.
fn section_of(t: Simplex) -> Vec<usize> {
    let sigma = t.word.surjection(t.dim());
    let mut out: Vec<usize> = Vec::new();
    for (k, &v) in sigma.iter().enumerate() {
        if out.len() == v {
            out.push(k);
        }
    }
    out
}

/// `Map(X, Y)` through a simplicial degree bound: degree `p` consists of the
/// maps `X × Δ[p]^c -> Y`, where `Δ[p]^c` is constant.
pub struct MappingSpace {
    pub set: Arc<SimplicialSet>,
    pub source: BisimplicialSet,
    pub target: BisimplicialSet,
    pub window: usize,
    /// Whether every degree is the full hom-set rather than its restriction
    /// to the window.
    pub exact: bool,
    deltas: Vec<BisimplicialSet>,
    products: Vec<BisimplicialSet>,
    /// The map for every nondegenerate simplex of `set`.
    maps: Vec<BisimplicialMap>,
    table: Vec<HashMap<Vec<Vec<Simplex>>, Simplex>>,
    budget: Budget,
}

impl MappingSpace {
    pub fn compute(x: &BisimplicialSet, y: &BisimplicialSet, deg_bound: usize, window: usize, budget: Budget) -> Result<MappingSpace> {
        budget.check_dim("mapping space", deg_bound)?;
        let deltas: Vec<BisimplicialSet> = (0..=deg_bound).map(|p| BisimplicialSet::constant(&simplex(p))).collect();
        let products: Vec<BisimplicialSet> = deltas.iter().map(|d| BisimplicialSet::product(&[x.clone(), d.clone()])).collect();
        let mut set = SimplicialSet::empty();
        let mut maps: Vec<BisimplicialMap> = Vec::new();
        let mut table: Vec<HashMap<Vec<Vec<Simplex>>, Simplex>> = Vec::new();
        let mut exact = true;
        for p in 0..=deg_bound {
            let mut level: HashMap<Vec<Vec<Simplex>>, Simplex> = HashMap::new();
            if p > 0 {
                for j in 0..p {
                    let deg = side(x, (&products[p], &deltas[p]), (&products[p - 1], &deltas[p - 1]), &codegeneracy_map(p - 1, j));
                    for (key, s) in &table[p - 1] {
                        let g = BisimplicialMap::stored(&products[p - 1], y, Self::unkey(&products[p - 1], y, key, window, budget)?);
                        let k = deg.then(&g).key(window, budget)?;
                        level.entry(k).or_insert_with(|| set.degeneracy(*s, j));
                    }
                }
            }
            let hom = BisimplicialHom::new(&products[p], y, window).budget(budget);
            exact &= hom.exact();
            let all = hom.collect()?;
            budget.check_size("mapping space", level.len() + all.len(), p)?;
            let faces: Vec<BisimplicialMap> = if p > 0 {
                (0..=p).map(|i| side(x, (&products[p - 1], &deltas[p - 1]), (&products[p], &deltas[p]), &coface_map(p, i))).collect()
            } else {
                Vec::new()
            };
            for f in all {
                let key = f.key(window, budget)?;
                if level.contains_key(&key) {
                    continue;
                }
                let id = if p == 0 {
                    set.add_vertex()
                } else {
                    let fs = faces
                        .iter()
                        .map(|d| {
                            let k = d.then(&f).key(window, budget)?;
                            table[p - 1].get(&k).copied().ok_or_else(|| Error::malformed("face of a mapping-space simplex not found"))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    set.add_simplex(fs)?
                };
                level.insert(key, Simplex::nondegenerate(id, p));
                maps.push(f);
            }
            table.push(level);
        }
        Ok(MappingSpace {
            set: Arc::new(set),
            source: x.clone(),
            target: y.clone(),
            window,
            exact,
            deltas,
            products,
            maps,
            table,
            budget,
        })
    }

    fn unkey(source: &BisimplicialSet, y: &BisimplicialSet, key: &[Vec<Simplex>], window: usize, budget: Budget) -> Result<Vec<SimplicialMap>> {
        let ts = source.rows(window, budget)?;
        let ty = y.rows(window, budget)?;
        Ok(key.iter().enumerate().map(|(k, imgs)| SimplicialMap::from_images_unchecked(ts.rows[k].clone(), ty.rows[k].clone(), imgs.clone())).collect())
    }

    pub fn degree(&self) -> usize {
        self.deltas.len() - 1
    }

    /// The bisimplicial map of nondegenerate simplex `id`.
    pub fn map_of(&self, id: NdId) -> &BisimplicialMap {
        &self.maps[id as usize]
    }

    /// The simplex of degree `p` represented by a map `X × Δ[p]^c -> Y`.
    pub fn lookup(&self, p: usize, f: &BisimplicialMap) -> Result<Option<Simplex>> {
        Ok(self.table[p].get(&f.key(self.window, self.budget)?).copied())
    }

    /// The product `X × Δ[p]^c` used in degree `p`.
    pub fn product(&self, p: usize) -> &BisimplicialSet {
        &self.products[p]
    }

    /// Number of simplices (degenerate included) in each degree.
    pub fn sizes(&self) -> Vec<usize> {
        self.table.iter().map(|t| t.len()).collect()
    }

    /// `u^* : Map(B, Y) -> Map(A, Y)` for `u : A -> B`, where `self` is
    /// `Map(B, Y)` and `other` is `Map(A, Y)` on the same degrees.
    pub fn precompose(&self, other: &MappingSpace, u: &BisimplicialMap) -> Result<SimplicialMap> {
        self.induced(other, |p, f| {
            let id = constant_map(&other.deltas[p], &self.deltas[p], &SimplicialMap::identity(&simplex(p)));
            product_map(other.product(p), self.product(p), &[u.clone(), id]).then(f)
        })
    }

    /// `v_* : Map(X, Y) -> Map(X, Z)` for `v : Y -> Z`.
    pub fn postcompose(&self, other: &MappingSpace, v: &BisimplicialMap) -> Result<SimplicialMap> {
        self.induced(other, |_, f| f.then(v))
    }

    fn induced(&self, other: &MappingSpace, mut transport: impl FnMut(usize, &BisimplicialMap) -> BisimplicialMap) -> Result<SimplicialMap> {
        if other.degree() != self.degree() {
            return Err(Error::invalid("mapping spaces have different degree bounds"));
        }
        let images = (0..self.maps.len() as NdId)
            .map(|id| {
                let p = self.set.dim_of(id);
                let g = transport(p, &self.maps[id as usize]);
                other.lookup(p, &g)?.ok_or_else(|| Error::malformed("transported map is not in the target mapping space"))
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(self.set.clone(), other.set.clone(), images)
    }
}

/// `id_X × θ` between the products for two degrees.
fn side(x: &BisimplicialSet, from: (&BisimplicialSet, &BisimplicialSet), to: (&BisimplicialSet, &BisimplicialSet), theta: &SimplicialMap) -> BisimplicialMap {
    product_map(from.0, to.0, &[BisimplicialMap::identity(x), constant_map(from.1, to.1, theta)])
}

pub fn mapping_space(x: &BisimplicialSet, y: &BisimplicialSet, deg_bound: usize, window: usize, budget: Budget) -> Result<MappingSpace> {
    MappingSpace::compute(x, y, deg_bound, window, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisimplicial::BisimplicialHom;
    use crate::simplicial::standard::spine;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn matching_object_of_transpose() {
        let x = BisimplicialSet::transpose(&simplex(2));
        let (p1, m) = matching_object(&x, 1, b()).unwrap();
        assert_eq!(p1.len(), 9);
        assert_eq!(m.source.len(), 6);
        assert!(m.is_injective());
        let c = BisimplicialSet::constant(&simplex(1));
        let (p, d) = matching_object(&c, 1, b()).unwrap();
        assert_eq!(p.len(), 11);
        d.verify().unwrap();
    }

    #[test]
    fn mapping_space_counts() {
        let pt = BisimplicialSet::transpose(&simplex(0));
        let y = BisimplicialSet::transpose(&simplex(2));
        let m = mapping_space(&pt, &y, 1, 2, b()).unwrap();
        assert_eq!(m.sizes()[0], 3);
        assert!(m.exact);
        let g2 = BisimplicialSet::transpose(&spine(2).set);
        let m = mapping_space(&g2, &y, 0, 2, b()).unwrap();
        assert_eq!(m.sizes(), vec![10]);
    }

    #[test]
    fn mapping_space_of_constant_target() {
        // Map(point, constant(K)) = K
        let pt = BisimplicialSet::transpose(&simplex(0));
        let y = BisimplicialSet::constant(&simplex(1));
        let m = mapping_space(&pt, &y, 2, 1, b()).unwrap();
        assert_eq!(m.set.counts(), vec![2, 1]);
        m.set.validate().unwrap();
    }

    #[test]
    fn sk_cosk_adjuncts_round_trip() {
        let x = BisimplicialSet::transpose(&simplex(2));
        let y = BisimplicialSet::transpose(&simplex(1));
        let (skx, cy) = (x.skeleton(1), y.cosk(1));
        let w = 3;
        let left = BisimplicialHom::new(&skx, &y, w).collect().unwrap();
        let right = BisimplicialHom::new(&x, &cy, w).collect().unwrap();
        let mut right_keys: Vec<_> = right.iter().map(|g| g.key(w, b()).unwrap()).collect();
        let mut image: Vec<_> = Vec::new();
        for f in &left {
            let g = cosk_adjunct(f, &x, &cy, 1, w, b()).unwrap();
            g.verify(w, b()).unwrap();
            let back = sk_adjunct(&g, &skx, &y, 1, w, b()).unwrap();
            assert_eq!(back.key(w, b()).unwrap(), f.key(w, b()).unwrap());
            image.push(g.key(w, b()).unwrap());
        }
        image.sort();
        right_keys.sort();
        assert_eq!(image, right_keys);
    }
}
