use std::collections::HashMap;
use std::sync::Arc;

use serde_json::json;

use super::category::{Arrow, FiniteCategory};
use super::functor::{cat_equiv_check, Functor};
use crate::bisimplicial::{BisimplicialSet, RowSource, Truncation};
use crate::error::{Budget, Error, Result};
use crate::invariants::{pi0, we_verdict, Components, Verdict};
use crate::simplicial::{Limit, NdId, Simplex, SimplicialMap, SimplicialSet};

/// A category enriched in finite simplicial sets.
///
/// `compose[(x, y, z)]` is the composition `Hom(y, z) × Hom(x, y) -> Hom(x, z)`
/// out of the product stored in `products[(x, y, z)]`.
#[derive(Debug, Clone)]
pub struct FiniteSimplicialCategory {
    pub name: String,
    pub objects: Vec<String>,
    homs: Vec<Vec<Arc<SimplicialSet>>>,
    identities: Vec<NdId>,
    products: HashMap<(usize, usize, usize), Arc<Limit>>,
    compose: HashMap<(usize, usize, usize), SimplicialMap>,
}

impl FiniteSimplicialCategory {
    /// Builds a simplicial category from a composition rule on simplices of
    /// equal dimension, and validates it.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        homs: Vec<Vec<Arc<SimplicialSet>>>,
        identities: Vec<NdId>,
        mut rule: impl FnMut(usize, usize, usize, Simplex, Simplex) -> Result<Simplex>,
        budget: Budget,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n || homs.iter().any(|r| r.len() != n) || identities.len() != n {
            return Err(Error::malformed("hom table does not match the object list"));
        }
        for (x, &i) in identities.iter().enumerate() {
            if (i as usize) >= homs[x][x].len() || homs[x][x].dim_of(i) != 0 {
                return Err(Error::malformed(format!("identity of {} is not a vertex", objects[x])));
            }
        }
        let mut products = HashMap::new();
        let mut compose = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let p = Arc::new(Limit::product(&[homs[y][z].clone(), homs[x][y].clone()], budget)?);
                    let images = p
                        .set
                        .ids()
                        .map(|id| {
                            let fam = p.family_of_nd(id);
                            rule(x, y, z, fam[0], fam[1])
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let map = SimplicialMap::new(p.set.clone(), homs[x][z].clone(), images)?;
                    products.insert((x, y, z), p);
                    compose.insert((x, y, z), map);
                }
            }
        }
        let c = FiniteSimplicialCategory { name: name.into(), objects, homs, identities, products, compose };
        c.validate(budget)?;
        Ok(c)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> &Arc<SimplicialSet> {
        &self.homs[x][y]
    }

    pub fn identity(&self, x: usize) -> NdId {
        self.identities[x]
    }

    /// `g ∘ f` for simplices `g ∈ Hom(y, z)`, `f ∈ Hom(x, y)` of equal
    /// dimension.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: Simplex, f: Simplex) -> Result<Simplex> {
        let p = &self.products[&(x, y, z)];
        let s = p.lookup(&[g, f]).ok_or_else(|| Error::malformed("simplices of different dimension"))?;
        Ok(self.compose[&(x, y, z)].apply(s))
    }

    /// The identity of `x` degenerated to dimension `d`.
    pub fn identity_at(&self, x: usize, d: usize) -> Simplex {
        self.homs[x][x].degenerate_vertex(self.identities[x], d)
    }

    /// Composition triples `(g, f, g ∘ f)` over the nondegenerate simplices of
    /// each product.
    pub fn composition_table(&self, x: usize, y: usize, z: usize) -> Vec<(Simplex, Simplex, Simplex)> {
        let p = &self.products[&(x, y, z)];
        let m = &self.compose[&(x, y, z)];
        p.set.ids().map(|id| (p.family_of_nd(id)[0], p.family_of_nd(id)[1], m.image(id))).collect()
    }

    fn validate(&self, budget: Budget) -> Result<()> {
        let n = self.num_objects();
        for x in 0..n {
            for y in 0..n {
                let h = &self.homs[x][y];
                for f in h.ids() {
                    let s = h.nd(f);
                    let d = s.dim();
                    if self.compose(x, y, y, self.identity_at(y, d), s)? != s || self.compose(x, x, y, s, self.identity_at(x, d))? != s {
                        return Err(Error::malformed(format!("unit law fails in Hom({}, {})", self.objects[x], self.objects[y])));
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let p = Limit::product(&[self.homs[y][z].clone(), self.homs[x][y].clone(), self.homs[w][x].clone()], budget)?;
                        for id in p.set.ids() {
                            let f = p.family_of_nd(id);
                            let a = self.compose(w, y, z, f[0], self.compose(w, x, y, f[1], f[2])?)?;
                            let b = self.compose(w, x, z, self.compose(x, y, z, f[0], f[1])?, f[2])?;
                            if a != b {
                                return Err(Error::malformed("associativity fails".to_string()));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `C` with discrete hom-spaces.
    pub fn from_category(c: &FiniteCategory, budget: Budget) -> Result<Self> {
        let n = c.num_objects();
        let homs: Vec<Vec<Arc<SimplicialSet>>> =
            (0..n).map(|x| (0..n).map(|y| Arc::new(SimplicialSet::discrete(c.hom(x, y).len()))).collect()).collect();
        let pos = |x: usize, y: usize, a: usize| c.hom(x, y).iter().position(|&b| b == a).unwrap() as NdId;
        let identities = (0..n).map(|x| pos(x, x, c.identity(x))).collect();
        FiniteSimplicialCategory::new(
            c.name.clone(),
            c.objects.clone(),
            homs,
            identities,
            |x, y, z, g, f| {
                let h = c.compose(c.hom(y, z)[g.nd as usize], c.hom(x, y)[f.nd as usize]).unwrap();
                Ok(Simplex::nondegenerate(pos(x, z, h), 0))
            },
            budget,
        )
    }

    /// `UK`: objects `x`, `y` with `Hom(x, y) = K` and no other
    /// non-identity morphisms.
    pub fn u_functor(k: &Arc<SimplicialSet>, budget: Budget) -> Result<Self> {
        let pt = Arc::new(SimplicialSet::point());
        let empty = Arc::new(SimplicialSet::empty());
        let homs = vec![vec![pt.clone(), k.clone()], vec![empty, pt.clone()]];
        FiniteSimplicialCategory::new(
            "U",
            vec!["x".into(), "y".into()],
            homs,
            vec![0, 0],
            |x, y, z, g, f| {
                // in every composable pair one side is an identity
                Ok(match (x, y, z) {
                    (0, 0, 1) => g,
                    (0, 1, 1) => f,
                    _ => g,
                })
            },
            budget,
        )
    }

    /// Longest chain of hom-spaces containing more than degenerate
    /// identities, or `None` if unbounded.
    pub fn longest_chain(&self) -> Option<usize> {
        let n = self.num_objects();
        let mut edges = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let h = &self.homs[x][y];
                let nontrivial = if x == y { h.len() > 1 } else { !h.is_empty() };
                if nontrivial {
                    edges.push((x, y));
                }
            }
        }
        super::category::longest_path(n, &edges)
    }
}

/// A simplicial functor: a map on objects and on every hom-space.
#[derive(Debug, Clone)]
pub struct SimplicialFunctor {
    pub source: Arc<FiniteSimplicialCategory>,
    pub target: Arc<FiniteSimplicialCategory>,
    pub objects: Vec<usize>,
    pub homs: Vec<Vec<SimplicialMap>>,
}

impl SimplicialFunctor {
    pub fn new(source: &Arc<FiniteSimplicialCategory>, target: &Arc<FiniteSimplicialCategory>, objects: Vec<usize>, homs: Vec<Vec<SimplicialMap>>) -> Result<Self> {
        let f = SimplicialFunctor { source: source.clone(), target: target.clone(), objects, homs };
        let n = source.num_objects();
        for x in 0..n {
            for y in 0..n {
                let m = &f.homs[x][y];
                m.verify()?;
                if m.source.as_ref() != source.hom(x, y).as_ref() || m.target.as_ref() != target.hom(f.objects[x], f.objects[y]).as_ref() {
                    return Err(Error::malformed("hom map has the wrong source or target"));
                }
            }
            let fx = f.objects[x];
            if f.homs[x][x].image(source.identity(x)) != Simplex::nondegenerate(target.identity(fx), 0) {
                return Err(Error::malformed("identity is not preserved"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for (g, h, gh) in source.composition_table(x, y, z) {
                        let (fx, fy, fz) = (f.objects[x], f.objects[y], f.objects[z]);
                        let lhs = target.compose(fx, fy, fz, f.homs[y][z].apply(g), f.homs[x][y].apply(h))?;
                        if lhs != f.homs[x][z].apply(gh) {
                            return Err(Error::malformed("composition is not preserved"));
                        }
                    }
                }
            }
        }
        Ok(f)
    }

    /// `U(f)` for a map of simplicial sets.
    pub fn u_map(f: &SimplicialMap, source: &Arc<FiniteSimplicialCategory>, target: &Arc<FiniteSimplicialCategory>) -> Result<Self> {
        let id = |x: usize, y: usize| SimplicialMap::identity(source.hom(x, y));
        let homs = vec![vec![id(0, 0), f.clone()], vec![id(1, 0), id(1, 1)]];
        let homs = homs
            .into_iter()
            .enumerate()
            .map(|(x, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(y, m)| SimplicialMap::new(source.hom(x, y).clone(), target.hom(x, y).clone(), m.images().to_vec()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialFunctor::new(source, target, vec![0, 1], homs)
    }

    pub fn identity(c: &Arc<FiniteSimplicialCategory>) -> Self {
        let n = c.num_objects();
        let homs = (0..n).map(|x| (0..n).map(|y| SimplicialMap::identity(c.hom(x, y))).collect()).collect();
        SimplicialFunctor { source: c.clone(), target: c.clone(), objects: (0..n).collect(), homs }
    }
}

/// `π_0 C` with the component lists used to build it.
pub struct Pi0Category {
    pub category: FiniteCategory,
    pub components: Vec<Vec<Components>>,
    /// `arrow_of[x][y][k]` is the arrow of component `k` of `Hom(x, y)`.
    pub arrow_of: Vec<Vec<Vec<usize>>>,
}

pub fn pi0_cat(c: &FiniteSimplicialCategory) -> Result<Pi0Category> {
    let n = c.num_objects();
    let components: Vec<Vec<Components>> = (0..n).map(|x| (0..n).map(|y| pi0(c.hom(x, y))).collect()).collect();
    let mut arrows = Vec::new();
    let mut arrow_of = vec![vec![Vec::new(); n]; n];
    let mut reps = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for (k, class) in components[x][y].classes().into_iter().enumerate() {
                arrow_of[x][y].push(arrows.len());
                arrows.push(Arrow { name: format!("{}{}#{k}", c.objects[x], c.objects[y]), src: x, dst: y });
                reps.push(class[0]);
            }
        }
    }
    let comp_of = |x: usize, y: usize, v: NdId| arrow_of[x][y][components[x][y].of_vertex[v as usize]];
    let identities = (0..n).map(|x| comp_of(x, x, c.identity(x))).collect();
    let mut comps = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for &f in &arrow_of[x][y] {
                    for &g in &arrow_of[y][z] {
                        let h = c.compose(x, y, z, Simplex::nondegenerate(reps[g], 0), Simplex::nondegenerate(reps[f], 0))?;
                        comps.push((g, f, comp_of(x, z, h.nd)));
                    }
                }
            }
        }
    }
    let category = FiniteCategory::new(format!("pi0({})", c.name), c.objects.clone(), arrows, identities, &comps)?;
    Ok(Pi0Category { category, components, arrow_of })
}

/// `π_0 f` between the component categories.
pub fn pi0_functor(f: &SimplicialFunctor, src: &Pi0Category, tgt: &Pi0Category) -> Result<Functor> {
    let n = f.source.num_objects();
    let mut arrows = vec![0; src.category.num_arrows()];
    for x in 0..n {
        for y in 0..n {
            let (fx, fy) = (f.objects[x], f.objects[y]);
            for (k, class) in src.components[x][y].classes().into_iter().enumerate() {
                let v = f.homs[x][y].image(class[0]).nd;
                arrows[src.arrow_of[x][y][k]] = tgt.arrow_of[fx][fy][tgt.components[fx][fy].of_vertex[v as usize]];
            }
        }
    }
    Functor::new(&Arc::new(src.category.clone()), &Arc::new(tgt.category.clone()), f.objects.clone(), arrows)
}

/// Dwyer–Kan equivalence: every hom-map a weak equivalence (W1) and `π_0 f`
/// an equivalence of categories (W2).
pub fn dk_check_sc(f: &SimplicialFunctor, budget: Budget) -> Result<Verdict> {
    let n = f.source.num_objects();
    let mut parts = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let label = format!("W1 Hom({}, {})", f.source.objects[x], f.source.objects[y]);
            parts.push((label, we_verdict(&f.homs[x][y], budget)));
        }
    }
    let (ps, pt) = (pi0_cat(&f.source)?, pi0_cat(&f.target)?);
    let g = pi0_functor(f, &ps, &pt)?;
    parts.push(("W2 pi0".to_string(), cat_equiv_check(&g, budget)));
    Ok(Verdict::all(parts, budget))
}

/// Rows of the nerve of a simplicial category: row `n` is the coproduct over
/// object chains of the products of hom-spaces.
struct ScatNerve(Arc<FiniteSimplicialCategory>);

fn object_chains(n_obj: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..=len {
        out = out.into_iter().flat_map(|c: Vec<usize>| (0..n_obj).map(move |o| [c.clone(), vec![o]].concat())).collect();
    }
    out
}

impl RowSource for ScatNerve {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let c = &self.0;
        struct Row {
            chains: Vec<Vec<usize>>,
            index: HashMap<Vec<usize>, usize>,
            limits: Vec<Limit>,
            incs: Vec<SimplicialMap>,
            set: Arc<SimplicialSet>,
        }
        let mut rows = Vec::with_capacity(window + 1);
        for m in 0..=window {
            let chains = object_chains(c.num_objects(), m);
            let limits: Vec<Limit> = chains
                .iter()
                .map(|ch| {
                    // factors ordered Hom(x_{m-1}, x_m), ..., Hom(x_0, x_1)
                    let factors: Vec<Arc<SimplicialSet>> = (1..=m).rev().map(|i| c.hom(ch[i - 1], ch[i]).clone()).collect();
                    Limit::product(&factors, budget)
                })
                .collect::<Result<_>>()?;
            let (set, incs) = SimplicialSet::coproduct(&limits.iter().map(|l| l.set.clone()).collect::<Vec<_>>());
            budget.check_size("simplicial nerve", set.len(), m)?;
            let index = chains.iter().enumerate().map(|(k, ch)| (ch.clone(), k)).collect();
            rows.push(Row { chains, index, limits, incs, set });
        }
        let sets: Vec<Arc<SimplicialSet>> = rows.iter().map(|r| r.set.clone()).collect();
        Truncation::from_generators(sets.clone(), |theta, tgt, src| {
            let (rs, rt) = (&rows[src], &rows[tgt]);
            let mut images = vec![Simplex::nondegenerate(0, 0); rs.set.len()];
            for (k, ch) in rs.chains.iter().enumerate() {
                let new_chain: Vec<usize> = theta.iter().map(|&i| ch[i]).collect();
                let kt = rt.index[&new_chain];
                for id in rs.limits[k].set.ids() {
                    let fam = rs.limits[k].family_of_nd(id);
                    let d = rs.limits[k].set.dim_of(id);
                    // arrow i of the chain, from x_{i-1} to x_i
                    let arrow = |i: usize| fam[src - i];
                    let span = |a: usize, b: usize| -> Result<Simplex> {
                        let mut s = c.identity_at(ch[a], d);
                        for i in a + 1..=b {
                            s = c.compose(ch[a], ch[i - 1], ch[i], arrow(i), s)?;
                        }
                        Ok(s)
                    };
                    let new_fam: Vec<Simplex> = (1..theta.len()).rev().map(|j| span(theta[j - 1], theta[j])).collect::<Result<_>>()?;
                    let img = if new_fam.is_empty() {
                        rt.limits[kt].set.degenerate_vertex(0, d)
                    } else {
                        rt.limits[kt].lookup(&new_fam).ok_or_else(|| Error::malformed("nerve operator leaves the row"))?
                    };
                    images[rs.incs[k].image(id).nd as usize] = rt.incs[kt].apply(img);
                }
            }
            Ok(SimplicialMap::from_images_unchecked(sets[src].clone(), sets[tgt].clone(), images))
        })
    }

    fn skeletal_bound(&self) -> Option<usize> {
        self.0.longest_chain()
    }
}

/// The nerve of a simplicial category, a Segal precategory.
pub fn scat_nerve(c: &Arc<FiniteSimplicialCategory>) -> BisimplicialSet {
    BisimplicialSet::from_source(format!("nerve({})", c.name), ScatNerve(c.clone()))
}

/// JSON summary of a simplicial category.
pub fn describe(c: &FiniteSimplicialCategory) -> serde_json::Value {
    let n = c.num_objects();
    let homs: Vec<serde_json::Value> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| json!({ "from": c.objects[x], "to": c.objects[y], "counts": c.hom(x, y).counts() }))
        .collect();
    json!({ "name": c.name, "objects": c.objects, "homs": homs })
}
