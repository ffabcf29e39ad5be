//! Constructions of bisimplicial sets and the canonical maps between them.

use std::collections::HashMap;
use std::sync::Arc;

use super::format::emit_embedded;
use super::map::{retarget, BisimplicialMap};
use super::object::{BisimplicialSet, DiscreteSource, RowSource};
use super::truncation::{Presentation, Truncation};
use crate::error::{Budget, Error, Result};
use crate::invariants::pi0;
use crate::simplicial::{ops, pushout, Diagram, Limit, NdId, Quotient, Simplex, SimplicialMap, SimplicialSet};

/// The map out of a coproduct whose restriction to summand `k` is `maps[k]`.
pub(crate) fn copair(incs: &[SimplicialMap], maps: &[SimplicialMap], sum: &Arc<SimplicialSet>) -> SimplicialMap {
    let mut images = vec![Simplex::nondegenerate(0, 0); sum.len()];
    for (inc, m) in incs.iter().zip(maps) {
        for y in inc.source.ids() {
            images[inc.image(y).nd as usize] = m.image(y);
        }
    }
    let target = maps.first().map(|m| m.target.clone()).unwrap_or_else(|| Arc::new(SimplicialSet::empty()));
    SimplicialMap::from_images_unchecked(sum.clone(), target, images)
}

/// `map` viewed as a map into the subobject with inclusion `inc`.
pub(crate) fn corestrict(map: &SimplicialMap, inc: &SimplicialMap) -> Result<SimplicialMap> {
    let back: HashMap<NdId, NdId> = inc.images().iter().enumerate().map(|(k, s)| (s.nd, k as NdId)).collect();
    let images = map
        .images()
        .iter()
        .map(|s| back.get(&s.nd).map(|&nd| Simplex { nd, ..*s }).ok_or_else(|| Error::malformed("map leaves the subobject")))
        .collect::<Result<_>>()?;
    Ok(SimplicialMap::from_images_unchecked(map.source.clone(), inc.source.clone(), images))
}

fn max_bound(bounds: impl IntoIterator<Item = Option<usize>>) -> Option<usize> {
    bounds.into_iter().try_fold(0usize, |acc, b| b.map(|b| acc.max(b)))
}

struct Transpose(Arc<SimplicialSet>);

impl DiscreteSource for Transpose {
    type Elem = Simplex;
    fn elements(&self, n: usize) -> Vec<Simplex> {
        self.0.simplices_of_dim(n)
    }
    fn act(&self, theta: &[usize], x: &Simplex) -> Simplex {
        self.0.apply(*x, theta)
    }
    fn skeletal_bound(&self) -> Option<usize> {
        Some(self.0.top_dim().unwrap_or(0))
    }
    fn virtual_spec(&self) -> Option<String> {
        let mut out = String::from("bss-virtual transpose\n");
        emit_embedded(&mut out, &self.0);
        Some(out)
    }
}

struct Constant(Arc<SimplicialSet>);

impl RowSource for Constant {
    fn build(&self, window: usize, _budget: Budget) -> Result<Truncation> {
        let id = SimplicialMap::identity(&self.0);
        Truncation::from_generators(vec![self.0.clone(); window + 1], |_, _, _| Ok(id.clone()))
    }
    fn skeletal_bound(&self) -> Option<usize> {
        Some(0)
    }
    fn virtual_spec(&self) -> Option<String> {
        let mut out = String::from("bss-virtual constant\n");
        emit_embedded(&mut out, &self.0);
        Some(out)
    }
}

struct Product(Vec<BisimplicialSet>);

impl RowSource for Product {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let parts: Vec<Arc<Truncation>> = self.0.iter().map(|p| p.rows(window, budget)).collect::<Result<_>>()?;
        let limits: Vec<Arc<Limit>> = (0..=window)
            .map(|n| {
                let rows: Vec<Arc<SimplicialSet>> = parts.iter().map(|t| t.rows[n].clone()).collect();
                Limit::product(&rows, budget).map(Arc::new)
            })
            .collect::<Result<_>>()?;
        let rows = limits.iter().map(|l| l.set.clone()).collect();
        let t = Truncation::from_generators(rows, |theta, m, n| {
            let per: Vec<SimplicialMap> = parts.iter().map(|t| t.operator(theta, n)).collect();
            limits[n].map_between(&limits[m], &per)
        })?;
        Ok(t.with_presentations(limits.into_iter().map(|l| Some(Presentation::Limit(l))).collect()))
    }
    fn skeletal_bound(&self) -> Option<usize> {
        self.0.iter().map(|p| p.skeletal_bound()).try_fold(0usize, |acc, b| b.map(|b| acc + b))
    }
}

struct Coproduct(Vec<BisimplicialSet>);

impl RowSource for Coproduct {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let parts: Vec<Arc<Truncation>> = self.0.iter().map(|p| p.rows(window, budget)).collect::<Result<_>>()?;
        let sums: Vec<(Arc<SimplicialSet>, Vec<SimplicialMap>)> = (0..=window)
            .map(|n| SimplicialSet::coproduct(&parts.iter().map(|t| t.rows[n].clone()).collect::<Vec<_>>()))
            .collect();
        let rows = sums.iter().map(|s| s.0.clone()).collect();
        let t = Truncation::from_generators(rows, |theta, m, n| {
            let maps: Vec<SimplicialMap> =
                parts.iter().zip(&sums[m].1).map(|(t, inc)| t.operator(theta, n).then(inc)).collect();
            let mut f = copair(&sums[n].1, &maps, &sums[n].0);
            f = retarget(&f, &sums[n].0, &sums[m].0);
            Ok(f)
        })?;
        Ok(t.with_presentations(sums.into_iter().map(|s| Some(Presentation::Coproduct(Arc::new(s.1)))).collect()))
    }
    fn skeletal_bound(&self) -> Option<usize> {
        max_bound(self.0.iter().map(|p| p.skeletal_bound()))
    }
}

/// The faces `κ : [k] ↪ [m]` with `k ≤ n` and the limit presenting
/// `(cosk_n X)_m`.
struct CoskRow {
    faces: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    limit: Arc<Limit>,
}

fn cosk_row(x: &Truncation, n: usize, m: usize, budget: Budget) -> Result<CoskRow> {
    let mut faces = Vec::new();
    for k in 0..=n.min(m) {
        faces.extend(ops::injections(k, m));
    }
    let index: HashMap<Vec<usize>, usize> = faces.iter().enumerate().map(|(a, f)| (f.clone(), a)).collect();
    let mut d = Diagram::new();
    for f in &faces {
        d.node(x.rows[f.len() - 1].clone());
    }
    for (a, f) in faces.iter().enumerate() {
        let k = f.len() - 1;
        if k == 0 {
            continue;
        }
        for i in 0..=k {
            let g = ops::compose(f, &ops::coface(k, i));
            d.arrow(a, index[&g], x.faces[k][i].clone());
        }
    }
    let limit = Arc::new(Limit::compute(d, budget)?);
    Ok(CoskRow { faces, index, limit })
}

struct Cosk {
    x: BisimplicialSet,
    n: usize,
}

impl RowSource for Cosk {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let n = self.n;
        let tx = self.x.rows(n.min(window), budget)?;
        let mut rows = Vec::with_capacity(window + 1);
        let mut lim: Vec<Option<CoskRow>> = Vec::with_capacity(window + 1);
        for m in 0..=window {
            if m <= n {
                rows.push(tx.rows[m].clone());
                lim.push(None);
            } else {
                budget.check_dim("coskeleton", m)?;
                let c = cosk_row(&tx, n, m, budget)?;
                rows.push(c.limit.set.clone());
                lim.push(Some(c));
            }
        }
        // `(ι, ρ)` with `θ = ιρ` and `ι` a face of the source row
        let split = |theta: &[usize]| {
            let (mask, rho) = ops::factor(theta);
            (ops::injection_of_mask(mask), rho)
        };
        let t = Truncation::from_generators(rows.clone(), |theta, tgt, src| {
            match (&lim[src], &lim[tgt]) {
                (None, None) => Ok(tx.operator(theta, src)),
                (None, Some(lt)) => {
                    let per: Vec<SimplicialMap> =
                        lt.faces.iter().map(|kappa| tx.operator(&ops::compose(theta, kappa), src)).collect();
                    lt.limit.induced(&rows[src], |node, s| per[node].apply(s))
                }
                (Some(ls), None) => {
                    let (iota, rho) = split(theta);
                    let r = iota.len() - 1;
                    Ok(ls.limit.projection(ls.index[&iota]).then(&tx.operator(&rho, r)))
                }
                (Some(ls), Some(lt)) => {
                    let per: Vec<(usize, SimplicialMap)> = lt
                        .faces
                        .iter()
                        .map(|kappa| {
                            let (iota, rho) = split(&ops::compose(theta, kappa));
                            let r = iota.len() - 1;
                            (ls.index[&iota], tx.operator(&rho, r))
                        })
                        .collect();
                    ls.limit.map_with(&lt.limit, |node, fam| per[node].1.apply(fam[per[node].0]))
                }
            }
        })?;
        let pres = lim.into_iter().map(|c| c.map(|c| Presentation::Limit(c.limit))).collect();
        Ok(t.with_presentations(pres))
    }
    fn skeletal_bound(&self) -> Option<usize> {
        None
    }
    fn virtual_spec(&self) -> Option<String> {
        let inner = self.x.virtual_spec()?;
        if self.n == 0 {
            if let Some(rest) = inner.strip_prefix("bss-virtual constant\n") {
                return Some(format!("bss-virtual cosk0\n{rest}"));
            }
        }
        Some(format!("bss-virtual cosk {}\n{inner}", self.n))
    }
}

struct Skeleton {
    x: BisimplicialSet,
    n: usize,
}

impl RowSource for Skeleton {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let tx = self.x.rows(window, budget)?;
        let mut subs: Vec<(Arc<SimplicialSet>, SimplicialMap)> = Vec::with_capacity(window + 1);
        for m in 0..=window {
            if m <= self.n {
                subs.push((tx.rows[m].clone(), SimplicialMap::identity(&tx.rows[m])));
            } else {
                let prev = &subs[m - 1].1;
                let gens: Vec<NdId> = (0..m)
                    .flat_map(|j| prev.images().iter().map(move |s| (j, *s)))
                    .map(|(j, s)| tx.degens[m - 1][j].apply(s).nd)
                    .collect();
                subs.push(tx.rows[m].subcomplex(gens));
            }
        }
        subcomplex_truncation(&tx, subs)
    }
    fn skeletal_bound(&self) -> Option<usize> {
        Some(self.x.skeletal_bound().map(|b| b.min(self.n)).unwrap_or(self.n))
    }
}

fn subcomplex_truncation(tx: &Truncation, subs: Vec<(Arc<SimplicialSet>, SimplicialMap)>) -> Result<Truncation> {
    let rows = subs.iter().map(|s| s.0.clone()).collect();
    let t = Truncation::from_generators(rows, |theta, tgt, src| corestrict(&subs[src].1.then(&tx.operator(theta, src)), &subs[tgt].1))?;
    Ok(t.with_presentations(subs.into_iter().map(|s| Some(Presentation::Sub(Arc::new(s.1)))).collect()))
}

type Keep = dyn Fn(usize, &Truncation, NdId) -> bool + Send + Sync;

struct Subobject {
    x: BisimplicialSet,
    keep: Box<Keep>,
    bound: Option<usize>,
}

impl RowSource for Subobject {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let tx = self.x.rows(window, budget)?;
        let subs = (0..=window)
            .map(|m| {
                let gens: Vec<NdId> = tx.rows[m].ids().filter(|&id| (self.keep)(m, &tx, id)).collect();
                tx.rows[m].subcomplex(gens)
            })
            .collect();
        subcomplex_truncation(&tx, subs)
    }
    fn skeletal_bound(&self) -> Option<usize> {
        self.bound
    }
}

/// Row-`m` quotient collapsing each component of the image of `X_0` to a
/// point.
fn reduce_row(tx: &Truncation, m: usize, budget: Budget) -> Result<Quotient> {
    let x0 = &tx.rows[0];
    let comps = pi0(x0);
    let roots: Vec<NdId> = comps.classes().iter().map(|c| c[0]).collect();
    let iota = tx.total_degeneracy(m);
    let xm = &tx.rows[m];
    let pairs: Vec<(Simplex, Simplex)> = x0
        .ids()
        .map(|a| {
            let root = iota.image(roots[comps.component_of(x0, a)]).nd;
            (iota.image(a), xm.degenerate_vertex(root, x0.dim_of(a)))
        })
        .collect();
    Quotient::compute(xm, &pairs, budget)
}

struct Reduce(BisimplicialSet);

impl RowSource for Reduce {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let tx = self.0.rows(window, budget)?;
        let qs: Vec<Arc<Quotient>> = (0..=window).map(|m| reduce_row(&tx, m, budget).map(Arc::new)).collect::<Result<_>>()?;
        let rows = qs.iter().map(|q| q.set.clone()).collect();
        let t = Truncation::from_generators(rows, |theta, tgt, src| {
            Ok(qs[src].descend(&tx.operator(theta, src).then(&qs[tgt].projection)))
        })?;
        Ok(t.with_presentations(qs.into_iter().map(|q| Some(Presentation::Quotient(q))).collect()))
    }
    fn skeletal_bound(&self) -> Option<usize> {
        self.0.skeletal_bound()
    }
}

struct Pushout {
    f: BisimplicialMap,
    g: BisimplicialMap,
}

impl RowSource for Pushout {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let fr = self.f.rows(window, budget)?;
        let gr = self.g.rows(window, budget)?;
        let tb = self.f.target.rows(window, budget)?;
        let tc = self.g.target.rows(window, budget)?;
        let pos: Vec<Arc<crate::simplicial::Pushout>> =
            fr.iter().zip(&gr).map(|(f, g)| pushout(f, g, budget).map(Arc::new)).collect::<Result<_>>()?;
        let rows = pos.iter().map(|p| p.set.clone()).collect();
        let t = Truncation::from_generators(rows, |theta, tgt, src| {
            let u = tb.operator(theta, src).then(&pos[tgt].left);
            let v = tc.operator(theta, src).then(&pos[tgt].right);
            Ok(pos[src].induced(&u, &v))
        })?;
        Ok(t.with_presentations(pos.into_iter().map(|p| Some(Presentation::Pushout(p))).collect()))
    }
    fn skeletal_bound(&self) -> Option<usize> {
        max_bound([self.f.target.skeletal_bound(), self.g.target.skeletal_bound()])
    }
}

struct Pullback {
    f: BisimplicialMap,
    g: BisimplicialMap,
}

impl RowSource for Pullback {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let fr = self.f.rows(window, budget)?;
        let gr = self.g.rows(window, budget)?;
        let tb = self.f.source.rows(window, budget)?;
        let tc = self.g.source.rows(window, budget)?;
        let td = self.f.target.rows(window, budget)?;
        let limits: Vec<Arc<Limit>> = (0..=window)
            .map(|k| {
                let mut d = Diagram::new();
                let b = d.node(tb.rows[k].clone());
                let c = d.node(tc.rows[k].clone());
                let t = d.node(td.rows[k].clone());
                d.arrow(b, t, fr[k].clone());
                d.arrow(c, t, gr[k].clone());
                Limit::compute(d, budget).map(Arc::new)
            })
            .collect::<Result<_>>()?;
        let rows = limits.iter().map(|l| l.set.clone()).collect();
        let t = Truncation::from_generators(rows, |theta, tgt, src| {
            let per = [tb.operator(theta, src), tc.operator(theta, src), td.operator(theta, src)];
            limits[src].map_between(&limits[tgt], &per)
        })?;
        Ok(t.with_presentations(limits.into_iter().map(|l| Some(Presentation::Limit(l))).collect()))
    }
    fn skeletal_bound(&self) -> Option<usize> {
        None
    }
}

fn presentation_limit(t: &Truncation, k: usize) -> Result<&Arc<Limit>> {
    t.limit(k).ok_or_else(|| Error::malformed(format!("row {k} is not presented as a limit")))
}

fn presentation<'t>(t: &'t Truncation, k: usize, what: &str) -> Result<&'t Presentation> {
    t.presentations[k].as_ref().ok_or_else(|| Error::malformed(format!("row {k} is not presented as a {what}")))
}

impl BisimplicialSet {
    /// `K^t`: row `n` is the discrete simplicial set on `K_n`.
    pub fn transpose(k: &Arc<SimplicialSet>) -> Self {
        BisimplicialSet::discrete("transpose", Transpose(k.clone()))
    }

    /// Every row is `K` and every operator the identity.
    pub fn constant(k: &Arc<SimplicialSet>) -> Self {
        BisimplicialSet::from_source("constant", Constant(k.clone()))
    }

    /// Levelwise product, with the rows presented as limits.
    pub fn product(parts: &[BisimplicialSet]) -> Self {
        BisimplicialSet::from_source("product", Product(parts.to_vec()))
    }

    pub fn coproduct(parts: &[BisimplicialSet]) -> Self {
        BisimplicialSet::from_source("coproduct", Coproduct(parts.to_vec()))
    }

    /// Diagram-direction `n`-coskeleton.
    pub fn cosk(&self, n: usize) -> Self {
        BisimplicialSet::from_source(format!("cosk{n}({})", self.name()), Cosk { x: self.clone(), n })
    }

    /// Diagram-direction `n`-skeleton, as a subobject.
    pub fn skeleton(&self, n: usize) -> Self {
        BisimplicialSet::from_source(format!("sk{n}({})", self.name()), Skeleton { x: self.clone(), n })
    }

    /// The subobject generated, row by row, by the nondegenerate simplices
    /// accepted by `keep`; `keep` must select a sub-bisimplicial set.
    pub fn subobject(
        &self,
        keep: impl Fn(usize, &Truncation, NdId) -> bool + Send + Sync + 'static,
        bound: Option<usize>,
    ) -> Self {
        BisimplicialSet::from_source(format!("sub({})", self.name()), Subobject { x: self.clone(), keep: Box::new(keep), bound })
    }

    /// The reduction: each component of `s_0^n X_0 ⊂ X_n` collapsed to a point.
    pub fn reduce(&self) -> Self {
        BisimplicialSet::from_source(format!("reduce({})", self.name()), Reduce(self.clone()))
    }

    /// Levelwise pushout of `f: A -> B` and `g: A -> C`.
    pub fn pushout(f: &BisimplicialMap, g: &BisimplicialMap) -> Self {
        BisimplicialSet::from_source("pushout", Pushout { f: f.clone(), g: g.clone() })
    }

    /// Levelwise pullback of `f: B -> D` and `g: C -> D`.
    pub fn pullback(f: &BisimplicialMap, g: &BisimplicialMap) -> Self {
        BisimplicialSet::from_source("pullback", Pullback { f: f.clone(), g: g.clone() })
    }
}

/// `cosk_0` of the constant object on `K`: row `n` is `K^{n+1}`.
pub fn cosk0_diag(k: &Arc<SimplicialSet>) -> BisimplicialSet {
    BisimplicialSet::constant(k).cosk(0)
}

/// Projection of a product built by [`BisimplicialSet::product`] onto factor `i`.
pub fn projection(product: &BisimplicialSet, factor: &BisimplicialSet, i: usize) -> BisimplicialMap {
    BisimplicialMap::from_rows(product, factor, move |k, tp, _| Ok(presentation_limit(tp, k)?.projection(i)))
}

/// The map into a product with the given components.
pub fn pairing(source: &BisimplicialSet, product: &BisimplicialSet, components: &[BisimplicialMap]) -> BisimplicialMap {
    let components = components.to_vec();
    BisimplicialMap::from_rows(source, product, move |k, ts, tp| {
        let window = ts.top();
        let per: Vec<SimplicialMap> = components
            .iter()
            .map(|c| c.rows(window, Budget::default()).map(|mut r| r.swap_remove(k)))
            .collect::<Result<_>>()?;
        presentation_limit(tp, k)?.induced(&ts.rows[k], |node, s| per[node].apply(s))
    })
}

/// `f × g` between products built by [`BisimplicialSet::product`].
pub fn product_map(source: &BisimplicialSet, target: &BisimplicialSet, factors: &[BisimplicialMap]) -> BisimplicialMap {
    let factors = factors.to_vec();
    BisimplicialMap::from_rows(source, target, move |k, ts, tt| {
        let window = ts.top();
        let per: Vec<SimplicialMap> = factors
            .iter()
            .map(|c| c.rows(window, Budget::default()).map(|mut r| r.swap_remove(k)))
            .collect::<Result<_>>()?;
        presentation_limit(ts, k)?.map_between(presentation_limit(tt, k)?, &per)
    })
}

/// Inclusion of summand `i` into a coproduct.
pub fn injection(summand: &BisimplicialSet, coproduct: &BisimplicialSet, i: usize) -> BisimplicialMap {
    BisimplicialMap::from_rows(summand, coproduct, move |k, _, tc| match presentation(tc, k, "coproduct")? {
        Presentation::Coproduct(incs) => Ok(incs[i].clone()),
        _ => Err(Error::malformed("not a coproduct")),
    })
}

/// The map out of a coproduct with the given restrictions.
pub fn copairing(coproduct: &BisimplicialSet, target: &BisimplicialSet, maps: &[BisimplicialMap]) -> BisimplicialMap {
    let maps = maps.to_vec();
    BisimplicialMap::from_rows(coproduct, target, move |k, tc, _| match presentation(tc, k, "coproduct")? {
        Presentation::Coproduct(incs) => {
            let window = tc.top();
            let per: Vec<SimplicialMap> = maps
                .iter()
                .map(|c| c.rows(window, Budget::default()).map(|mut r| r.swap_remove(k)))
                .collect::<Result<_>>()?;
            Ok(copair(incs, &per, &tc.rows[k]))
        }
        _ => Err(Error::malformed("not a coproduct")),
    })
}

/// Inclusion of a skeleton or subobject into its ambient object.
pub fn inclusion(sub: &BisimplicialSet, ambient: &BisimplicialSet) -> BisimplicialMap {
    BisimplicialMap::from_rows(sub, ambient, |k, ts, _| match presentation(ts, k, "subobject")? {
        Presentation::Sub(inc) => Ok((**inc).clone()),
        _ => Err(Error::malformed("not a subobject")),
    })
}

/// A map into a subobject, from a map into the ambient object.
pub fn corestriction(f: &BisimplicialMap, sub: &BisimplicialSet) -> BisimplicialMap {
    let f = f.clone();
    BisimplicialMap::from_rows(&f.source.clone(), sub, move |k, ts, tsub| match presentation(tsub, k, "subobject")? {
        Presentation::Sub(inc) => corestrict(&f.rows(ts.top(), Budget::default())?[k], inc),
        _ => Err(Error::malformed("not a subobject")),
    })
}

/// The unit `X -> cosk_n X`.
pub fn cosk_unit(x: &BisimplicialSet, cosk: &BisimplicialSet, n: usize) -> BisimplicialMap {
    BisimplicialMap::from_rows(x, cosk, move |k, tx, tc| {
        if k <= n {
            return Ok(SimplicialMap::identity(&tx.rows[k]));
        }
        let faces: Vec<Vec<usize>> = (0..=n).flat_map(|d| ops::injections(d, k)).collect();
        let per: Vec<SimplicialMap> = faces.iter().map(|kappa| tx.operator(kappa, k)).collect();
        presentation_limit(tc, k)?.induced(&tx.rows[k], |node, s| per[node].apply(s))
    })
}

/// `cosk_n f : cosk_n X -> cosk_n Y`.
pub fn cosk_map(f: &BisimplicialMap, source: &BisimplicialSet, target: &BisimplicialSet, n: usize) -> BisimplicialMap {
    let f = f.clone();
    BisimplicialMap::from_rows(source, target, move |k, ts, tt| {
        let fr = f.rows(k.min(n), Budget::default())?;
        if k <= n {
            return Ok(fr[k].clone());
        }
        let faces: Vec<Vec<usize>> = (0..=n).flat_map(|d| ops::injections(d, k)).collect();
        let per: Vec<SimplicialMap> = faces.iter().map(|kappa| fr[kappa.len() - 1].clone()).collect();
        presentation_limit(ts, k)?.map_between(presentation_limit(tt, k)?, &per)
    })
}

/// The unit `X -> (X)_r`.
pub fn reduce_unit(x: &BisimplicialSet, reduced: &BisimplicialSet) -> BisimplicialMap {
    BisimplicialMap::from_rows(x, reduced, |k, _, tr| match presentation(tr, k, "quotient")? {
        Presentation::Quotient(q) => Ok(q.projection.clone()),
        _ => Err(Error::malformed("not a reduction")),
    })
}

/// `(f)_r : (X)_r -> (Y)_r`.
pub fn reduce_map(f: &BisimplicialMap, rx: &BisimplicialSet, ry: &BisimplicialSet) -> BisimplicialMap {
    let f = f.clone();
    BisimplicialMap::from_rows(rx, ry, move |k, tx, ty| match (presentation(tx, k, "quotient")?, presentation(ty, k, "quotient")?) {
        (Presentation::Quotient(qx), Presentation::Quotient(qy)) => {
            let fk = &f.rows(tx.top(), Budget::default())?[k];
            Ok(qx.descend(&fk.then(&qy.projection)))
        }
        _ => Err(Error::malformed("not a reduction")),
    })
}

/// The two legs `B -> P`, `C -> P` of a pushout built by
/// [`BisimplicialSet::pushout`].
pub fn pushout_legs(f: &BisimplicialMap, g: &BisimplicialMap, p: &BisimplicialSet) -> (BisimplicialMap, BisimplicialMap) {
    let leg = |left: bool| {
        move |k: usize, _: &Truncation, tp: &Truncation| match presentation(tp, k, "pushout")? {
            Presentation::Pushout(po) => Ok(if left { po.left.clone() } else { po.right.clone() }),
            _ => Err(Error::malformed("not a pushout")),
        }
    };
    (BisimplicialMap::from_rows(&f.target, p, leg(true)), BisimplicialMap::from_rows(&g.target, p, leg(false)))
}

/// The map out of a pushout induced by `u: B -> T`, `v: C -> T`.
pub fn pushout_induced(p: &BisimplicialSet, u: &BisimplicialMap, v: &BisimplicialMap) -> BisimplicialMap {
    let (u, v) = (u.clone(), v.clone());
    BisimplicialMap::from_rows(p, &u.target.clone(), move |k, tp, _| match presentation(tp, k, "pushout")? {
        Presentation::Pushout(po) => {
            let w = tp.top();
            Ok(po.induced(&u.rows(w, Budget::default())?[k], &v.rows(w, Budget::default())?[k]))
        }
        _ => Err(Error::malformed("not a pushout")),
    })
}

/// Projections of a pullback `B ×_D C` onto `B` and `C`.
pub fn pullback_projections(f: &BisimplicialMap, g: &BisimplicialMap, p: &BisimplicialSet) -> (BisimplicialMap, BisimplicialMap) {
    (projection(p, &f.source, 0), projection(p, &g.source, 1))
}

/// The map into a pullback with components `u: T -> B` and `v: T -> C`.
pub fn pullback_induced(p: &BisimplicialSet, f: &BisimplicialMap, u: &BisimplicialMap, v: &BisimplicialMap) -> BisimplicialMap {
    let (u, v, f) = (u.clone(), v.clone(), f.clone());
    BisimplicialMap::from_rows(&u.source.clone(), p, move |k, ts, tp| {
        let w = ts.top();
        let uk = u.rows(w, Budget::default())?.swap_remove(k);
        let vk = v.rows(w, Budget::default())?.swap_remove(k);
        let fk = f.rows(w, Budget::default())?.swap_remove(k);
        let per = [uk.clone(), vk, uk.then(&fk)];
        presentation_limit(tp, k)?.induced(&ts.rows[k], |node, s| per[node].apply(s))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisimplicial::{find_isomorphism, BisimplicialHom};
    use crate::simplicial::standard::simplex;

    fn b() -> Budget {
        Budget::default()
    }

    fn sizes(x: &BisimplicialSet, w: usize) -> Vec<Vec<usize>> {
        x.rows(w, b()).unwrap().row_counts()
    }

    #[test]
    fn transpose_rows() {
        let t = BisimplicialSet::transpose(&simplex(2));
        let r = t.rows(3, b()).unwrap();
        r.verify().unwrap();
        assert_eq!(r.rows[1].counts(), vec![6]);
        assert_eq!(r.rows[3].counts(), vec![15]);
        let t1 = BisimplicialSet::transpose(&simplex(1));
        assert_eq!(sizes(&t1, 1), vec![vec![2], vec![3]]);
    }

    #[test]
    fn constant_and_product() {
        let c = BisimplicialSet::constant(&simplex(1));
        let t = BisimplicialSet::transpose(&simplex(1));
        let p = BisimplicialSet::product(&[c.clone(), t.clone()]);
        let r = p.rows(2, b()).unwrap();
        r.verify().unwrap();
        assert_eq!(r.rows[0].counts(), vec![4, 2]);
        let tt = BisimplicialSet::product(&[t.clone(), t.clone()]);
        assert_eq!(tt.row(1, b()).unwrap().counts(), vec![9]);
        let pr = projection(&p, &t, 1);
        pr.verify(2, b()).unwrap();
    }

    #[test]
    fn cosk0_of_two_points() {
        let k = Arc::new(SimplicialSet::discrete(2));
        let c = cosk0_diag(&k);
        let r = c.rows(3, b()).unwrap();
        r.verify().unwrap();
        for n in 0..=3 {
            assert_eq!(r.rows[n].len(), 1 << (n + 1));
        }
        let d1 = cosk0_diag(&simplex(1));
        assert_eq!(d1.row(1, b()).unwrap().len(), 11);
    }

    #[test]
    fn cosk_of_transpose_is_verified() {
        let t = BisimplicialSet::transpose(&simplex(2));
        for n in 0..=2 {
            let c = t.cosk(n);
            c.rows(3, b()).unwrap().verify().unwrap();
            cosk_unit(&t, &c, n).verify(3, b()).unwrap();
        }
        // Δ[2] is 2-coskeletal
        let c2 = t.cosk(2);
        assert!(cosk_unit(&t, &c2, 2).is_isomorphism(3, b()).unwrap());
    }

    #[test]
    fn skeleton_of_transpose() {
        let t = BisimplicialSet::transpose(&simplex(2));
        let s = t.skeleton(2);
        assert!(inclusion(&s, &t).is_isomorphism(4, b()).unwrap());
        let s1 = t.skeleton(1);
        let r = s1.rows(3, b()).unwrap();
        r.verify().unwrap();
        // the 9 degenerate maps [2] -> [2]
        assert_eq!(r.rows[2].len(), 9);
        inclusion(&s1, &t).verify(3, b()).unwrap();
    }

    #[test]
    fn sk_cosk_hom_counts_agree() {
        let x = BisimplicialSet::transpose(&simplex(2));
        let y = BisimplicialSet::transpose(&simplex(1));
        let left = BisimplicialHom::new(&x.skeleton(1), &y, 3).count().unwrap();
        let right = BisimplicialHom::new(&x, &y.cosk(1), 3).count().unwrap();
        assert_eq!(left, right);
        assert!(left > 0);
    }

    #[test]
    fn reduce_collapses_vertices() {
        let c = BisimplicialSet::constant(&simplex(1));
        let t = BisimplicialSet::transpose(&simplex(1));
        let p = BisimplicialSet::product(&[c, t]);
        let r = p.reduce();
        let rows = r.rows(2, b()).unwrap();
        rows.verify().unwrap();
        assert_eq!(rows.rows[0].counts(), vec![2]);
        reduce_unit(&p, &r).verify(2, b()).unwrap();
    }

    #[test]
    fn pushout_and_pullback() {
        let pt = BisimplicialSet::transpose(&simplex(0));
        let t = BisimplicialSet::transpose(&simplex(1));
        let f = BisimplicialMap::from_rows(&pt, &t, |k, _, tt| {
            Ok(SimplicialMap::from_images_unchecked(Arc::new(SimplicialSet::point()), tt.rows[k].clone(), vec![Simplex::nondegenerate(0, 0)]))
        });
        let po = BisimplicialSet::pushout(&f, &f);
        let r = po.rows(2, b()).unwrap();
        r.verify().unwrap();
        assert_eq!(r.rows[0].len(), 3);
        let (l, rr) = pushout_legs(&f, &f, &po);
        l.verify(2, b()).unwrap();
        rr.verify(2, b()).unwrap();
        let bang = BisimplicialMap::from_rows(&t, &pt, |k, ts, tp| Ok(SimplicialMap::to_point(&ts.rows[k], &tp.rows[k])));
        let pb = BisimplicialSet::pullback(&bang, &bang);
        let prod = BisimplicialSet::product(&[t.clone(), t.clone()]);
        assert!(find_isomorphism(&pb, &prod, 2, b()).unwrap().is_some());
    }

    #[test]
    fn coproduct_rows() {
        let t = BisimplicialSet::transpose(&simplex(1));
        let c = BisimplicialSet::coproduct(&[t.clone(), t.clone()]);
        let r = c.rows(2, b()).unwrap();
        r.verify().unwrap();
        assert_eq!(r.rows[1].len(), 6);
        injection(&t, &c, 1).verify(2, b()).unwrap();
    }
}
