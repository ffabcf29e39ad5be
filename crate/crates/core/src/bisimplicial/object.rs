use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use super::truncation::Truncation;
use crate::error::{Budget, Error, Result};
use crate::simplicial::{ops, Quotient, Simplex, SimplicialMap, SimplicialSet};

/// A rule producing the rows of a bisimplicial set on demand.
pub trait RowSource: Send + Sync {
    /// Rows `0..=window` with their operators.
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation>;

    /// `Some(N)` when every row above `N` consists of Δ-degenerate elements.
    fn skeletal_bound(&self) -> Option<usize>;

    /// A `bss-virtual` line (plus any embedded block) reconstructing the
    /// object, when the rule is serializable.
    fn virtual_spec(&self) -> Option<String> {
        None
    }
}

/// A simplicial set of labels, for bisimplicial sets whose rows are all
/// discrete.
pub trait DiscreteSource: Send + Sync {
    type Elem: Clone + Eq + Hash;
    /// The elements of degree `n`, in their canonical order.
    fn elements(&self, n: usize) -> Vec<Self::Elem>;
    /// `θ^* x` for `θ : [m] -> [n]` and `x` of degree `n`.
    fn act(&self, theta: &[usize], x: &Self::Elem) -> Self::Elem;
    fn skeletal_bound(&self) -> Option<usize>;
    fn virtual_spec(&self) -> Option<String> {
        None
    }
}

/// Adapter turning a [`DiscreteSource`] into rows.
pub struct DiscreteRows<S>(pub S);

impl<S: DiscreteSource> RowSource for DiscreteRows<S> {
    fn build(&self, window: usize, budget: Budget) -> Result<Truncation> {
        let mut elems = Vec::with_capacity(window + 1);
        let mut index: Vec<HashMap<S::Elem, u32>> = Vec::with_capacity(window + 1);
        let mut rows = Vec::with_capacity(window + 1);
        for n in 0..=window {
            let e = self.0.elements(n);
            budget.check_size("discrete row", e.len(), n)?;
            index.push(e.iter().enumerate().map(|(k, x)| (x.clone(), k as u32)).collect());
            rows.push(Arc::new(SimplicialSet::discrete(e.len())));
            elems.push(e);
        }
        let rows2 = rows.clone();
        Truncation::from_generators(rows, |theta, m, n| {
            let images = elems[n]
                .iter()
                .map(|x| {
                    let y = self.0.act(theta, x);
                    index[m].get(&y).map(|&k| Simplex::nondegenerate(k, 0)).ok_or_else(|| Error::malformed("operator leaves the row"))
                })
                .collect::<Result<_>>()?;
            Ok(SimplicialMap::from_images_unchecked(rows2[n].clone(), rows2[m].clone(), images))
        })
    }

    fn skeletal_bound(&self) -> Option<usize> {
        self.0.skeletal_bound()
    }

    fn virtual_spec(&self) -> Option<String> {
        self.0.virtual_spec()
    }
}

#[derive(Clone)]
enum Realization {
    /// Stored rows `0..=N`; rows above `N` are generated by degeneracies
    /// unless the object is only known up to `N`.
    Skeletal { trunc: Arc<Truncation>, truncated: bool },
    Virtual(Arc<dyn RowSource>),
}

struct Inner {
    name: String,
    realization: Realization,
    cache: Mutex<Option<Arc<Truncation>>>,
}

/// A bisimplicial set, accessed through level windows.
///
/// Cloning is cheap; rows are computed once per window and memoized behind
/// a lock, so concurrent readers see the same rows.
#[derive(Clone)]
pub struct BisimplicialSet(Arc<Inner>);

impl std::fmt::Debug for BisimplicialSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BisimplicialSet({})", self.0.name)
    }
}

impl BisimplicialSet {
    pub fn from_truncation(name: impl Into<String>, trunc: Truncation, truncated: bool) -> Self {
        let trunc = Arc::new(trunc);
        BisimplicialSet(Arc::new(Inner {
            name: name.into(),
            realization: Realization::Skeletal { trunc: trunc.clone(), truncated },
            cache: Mutex::new(Some(trunc)),
        }))
    }

    pub fn from_source(name: impl Into<String>, source: impl RowSource + 'static) -> Self {
        BisimplicialSet(Arc::new(Inner {
            name: name.into(),
            realization: Realization::Virtual(Arc::new(source)),
            cache: Mutex::new(None),
        }))
    }

    pub fn discrete(name: impl Into<String>, source: impl DiscreteSource + 'static) -> Self {
        Self::from_source(name, DiscreteRows(source))
    }

    /// The same object under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let cache = self.0.cache.lock().expect("row cache poisoned").clone();
        BisimplicialSet(Arc::new(Inner { name: name.into(), realization: self.0.realization.clone(), cache: Mutex::new(cache) }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn ptr_eq(&self, other: &BisimplicialSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self.0.realization, Realization::Virtual(_))
    }

    pub fn skeletal_bound(&self) -> Option<usize> {
        match &self.0.realization {
            Realization::Skeletal { trunc, truncated } => (!truncated).then(|| trunc.top()),
            Realization::Virtual(s) => s.skeletal_bound(),
        }
    }

    /// The highest row that can be produced, if limited.
    pub fn available(&self) -> Option<usize> {
        match &self.0.realization {
            Realization::Skeletal { trunc, truncated: true } => Some(trunc.top()),
            _ => None,
        }
    }

    pub fn virtual_spec(&self) -> Option<String> {
        match &self.0.realization {
            Realization::Virtual(s) => s.virtual_spec(),
            Realization::Skeletal { .. } => None,
        }
    }

    /// Rows `0..=window`.
    pub fn rows(&self, window: usize, budget: Budget) -> Result<Arc<Truncation>> {
        {
            let cache = self.0.cache.lock().expect("row cache poisoned");
            if let Some(t) = cache.as_ref() {
                if t.top() == window {
                    return Ok(t.clone());
                }
                if t.top() > window {
                    return Ok(Arc::new(t.restrict(window)));
                }
            }
        }
        let built = match &self.0.realization {
            Realization::Virtual(s) => s.build(window, budget)?,
            Realization::Skeletal { trunc, truncated } => {
                if *truncated {
                    return Err(Error::WindowExceeded { requested: window, available: trunc.top() });
                }
                extend_skeletal(trunc, window, budget)?
            }
        };
        let built = Arc::new(built);
        let mut cache = self.0.cache.lock().expect("row cache poisoned");
        let keep = cache.as_ref().map(|t| t.top() < window).unwrap_or(true);
        if keep {
            *cache = Some(built.clone());
        }
        Ok(built)
    }

    pub fn row(&self, n: usize, budget: Budget) -> Result<Arc<SimplicialSet>> {
        Ok(self.rows(n, budget)?.rows[n].clone())
    }

    /// Stores `window` rows computed from this object as a new skeletal
    /// or truncated object.
    pub fn materialize(&self, window: usize, budget: Budget) -> Result<BisimplicialSet> {
        let t = self.rows(window, budget)?;
        let truncated = self.skeletal_bound().map(|b| b > window).unwrap_or(true);
        Ok(BisimplicialSet::from_truncation(self.name(), (*t).clone(), truncated))
    }
}

/// Rows beyond the stored ones, as the left Kan extension: row `m` is the
/// quotient of `⊔_{σ:[m]↠[k], k≤N} X_k` by `(σ, s_j y) ~ (σ_j σ, y)`.
fn extend_skeletal(t: &Truncation, window: usize, budget: Budget) -> Result<Truncation> {
    let top = t.top();
    if window <= top {
        return Ok(t.restrict(window));
    }
    struct Ext {
        quotient: Quotient,
        sigmas: Vec<Vec<usize>>,
        index: HashMap<Vec<usize>, usize>,
        incs: Vec<SimplicialMap>,
        // summand and id of every simplex of the coproduct
        origin: Vec<(usize, u32)>,
    }
    let mut exts: Vec<Ext> = Vec::new();
    for m in top + 1..=window {
        budget.check_dim("skeletal extension", m)?;
        let sigmas: Vec<Vec<usize>> = (0..=top).flat_map(|k| ops::surjections(m, k)).collect();
        let parts: Vec<Arc<SimplicialSet>> = sigmas.iter().map(|s| t.rows[s[m]].clone()).collect();
        let (sum, incs) = SimplicialSet::coproduct(&parts);
        budget.check_size("skeletal extension", sum.len(), m)?;
        let index: HashMap<Vec<usize>, usize> = sigmas.iter().enumerate().map(|(a, s)| (s.clone(), a)).collect();
        let mut pairs = Vec::new();
        for (a, sigma) in sigmas.iter().enumerate() {
            let k = sigma[m];
            for j in 0..k {
                let b = index[&ops::compose(&ops::codegeneracy(k - 1, j), sigma)];
                for y in t.rows[k - 1].ids() {
                    pairs.push((incs[a].apply(t.degens[k - 1][j].image(y)), incs[b].image(y)));
                }
            }
        }
        let quotient = Quotient::compute(&sum, &pairs, budget)?;
        let mut origin = vec![(0, 0); sum.len()];
        for (a, inc) in incs.iter().enumerate() {
            for y in inc.source.ids() {
                origin[inc.image(y).nd as usize] = (a, y);
            }
        }
        exts.push(Ext { quotient, sigmas, index, incs, origin });
    }
    let ext = |m: usize| &exts[m - top - 1];
    // the class of (ρ, z) in row `m`, as a map out of X_r
    let summand = |m: usize, rho: &[usize]| -> SimplicialMap {
        let r = rho[rho.len() - 1];
        if m <= top {
            t.operator(rho, r)
        } else {
            let e = ext(m);
            e.incs[e.index[rho]].then(&e.quotient.projection)
        }
    };
    // θ^*(σ, z) = (ρ, ι^* z) where σθ = ιρ
    let act = |sigma: &[usize], theta: &[usize], m: usize| -> SimplicialMap {
        let (mask, rho) = ops::factor(&ops::compose(sigma, theta));
        let iota = ops::injection_of_mask(mask);
        t.operator(&iota, sigma[sigma.len() - 1]).then(&summand(m, &rho))
    };
    let mut rows: Vec<Arc<SimplicialSet>> = t.rows.clone();
    rows.extend(exts.iter().map(|e| e.quotient.set.clone()));
    let rows2 = rows.clone();
    let mut out = Truncation::from_generators(rows, |theta, m, n| {
        if n <= top {
            if m <= top {
                return Ok(t.operator(theta, n));
            }
            return Ok(act(&ops::identity(n), theta, m));
        }
        let e = ext(n);
        let maps: Vec<SimplicialMap> = e.sigmas.iter().map(|s| act(s, theta, m)).collect();
        let images = (0..e.quotient.set.len() as u32)
            .map(|cls| {
                let (a, y) = e.origin[e.quotient.representative(cls) as usize];
                maps[a].image(y)
            })
            .collect();
        Ok(SimplicialMap::from_images_unchecked(rows2[n].clone(), rows2[m].clone(), images))
    })?;
    for (k, p) in t.presentations.iter().enumerate() {
        out.presentations[k] = p.clone();
    }
    Ok(out)
}
