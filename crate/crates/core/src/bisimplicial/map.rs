use std::ops::ControlFlow;
use std::sync::Arc;

use super::object::BisimplicialSet;
use super::truncation::Truncation;
use crate::error::{Budget, Error, Result};
use crate::simplicial::{HomSearch, NdId, Simplex, SimplicialMap, SimplicialSet};

type RowFn = dyn Fn(usize, &Truncation, &Truncation) -> Result<SimplicialMap> + Send + Sync;

#[derive(Clone)]
enum Rule {
    Identity,
    Rows(Arc<RowFn>),
    Stored(Arc<Vec<SimplicialMap>>),
    Compose(Arc<BisimplicialMap>, Arc<BisimplicialMap>),
}

/// A map of bisimplicial sets, given levelwise.
#[derive(Clone)]
pub struct BisimplicialMap {
    pub source: BisimplicialSet,
    pub target: BisimplicialSet,
    rule: Rule,
}

impl std::fmt::Debug for BisimplicialMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BisimplicialMap({} -> {})", self.source.name(), self.target.name())
    }
}

/// `map` with its source and target re-pointed at the given rows.
pub(crate) fn retarget(map: &SimplicialMap, source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>) -> SimplicialMap {
    SimplicialMap::from_images_unchecked(source.clone(), target.clone(), map.images().to_vec())
}

impl BisimplicialMap {
    pub fn identity(x: &BisimplicialSet) -> Self {
        BisimplicialMap { source: x.clone(), target: x.clone(), rule: Rule::Identity }
    }

    /// A map given by a function of the row index and both truncations.
    pub fn from_rows(
        source: &BisimplicialSet,
        target: &BisimplicialSet,
        f: impl Fn(usize, &Truncation, &Truncation) -> Result<SimplicialMap> + Send + Sync + 'static,
    ) -> Self {
        BisimplicialMap { source: source.clone(), target: target.clone(), rule: Rule::Rows(Arc::new(f)) }
    }

    /// A map given by explicit rows `0..=N`; only windows `≤ N` are available.
    pub fn stored(source: &BisimplicialSet, target: &BisimplicialSet, rows: Vec<SimplicialMap>) -> Self {
        BisimplicialMap { source: source.clone(), target: target.clone(), rule: Rule::Stored(Arc::new(rows)) }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &BisimplicialMap) -> BisimplicialMap {
        BisimplicialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            rule: Rule::Compose(Arc::new(self.clone()), Arc::new(other.clone())),
        }
    }

    /// Rows `0..=window` as simplicial maps between the rows of
    /// `source.rows(window)` and `target.rows(window)`.
    pub fn rows(&self, window: usize, budget: Budget) -> Result<Vec<SimplicialMap>> {
        let ts = self.source.rows(window, budget)?;
        let tt = self.target.rows(window, budget)?;
        let raw: Vec<SimplicialMap> = match &self.rule {
            Rule::Identity => ts.rows.iter().map(SimplicialMap::identity).collect(),
            Rule::Rows(f) => (0..=window).map(|k| f(k, &ts, &tt)).collect::<Result<_>>()?,
            Rule::Stored(rows) => {
                if rows.len() <= window {
                    return Err(Error::WindowExceeded { requested: window, available: rows.len() - 1 });
                }
                rows[..=window].to_vec()
            }
            Rule::Compose(a, b) => {
                let ra = a.rows(window, budget)?;
                let rb = b.rows(window, budget)?;
                ra.iter().zip(&rb).map(|(x, y)| x.then(y)).collect()
            }
        };
        Ok(raw.iter().enumerate().map(|(k, m)| retarget(m, &ts.rows[k], &tt.rows[k])).collect())
    }

    pub fn row(&self, n: usize, budget: Budget) -> Result<SimplicialMap> {
        Ok(self.rows(n, budget)?.swap_remove(n))
    }

    /// Checks every row and the commutation with all Δ-direction generators
    /// on the window.
    pub fn verify(&self, window: usize, budget: Budget) -> Result<()> {
        let ts = self.source.rows(window, budget)?;
        let tt = self.target.rows(window, budget)?;
        let f = self.rows(window, budget)?;
        for (k, m) in f.iter().enumerate() {
            m.verify().map_err(|e| Error::malformed(format!("row {k}: {e}")))?;
        }
        commutes(&ts, &tt, &f)
    }

    pub fn is_isomorphism(&self, window: usize, budget: Budget) -> Result<bool> {
        Ok(self.rows(window, budget)?.iter().all(|m| m.is_isomorphism()))
    }

    pub fn is_injective(&self, window: usize, budget: Budget) -> Result<bool> {
        Ok(self.rows(window, budget)?.iter().all(|m| m.is_injective()))
    }

    /// Image vectors of every row, as a comparable key.
    pub fn key(&self, window: usize, budget: Budget) -> Result<Vec<Vec<Simplex>>> {
        Ok(self.rows(window, budget)?.iter().map(|m| m.images().to_vec()).collect())
    }
}

fn commutes(ts: &Truncation, tt: &Truncation, f: &[SimplicialMap]) -> Result<()> {
    let same = |a: &SimplicialMap, b: &SimplicialMap| a.images() == b.images();
    for n in 1..f.len() {
        for i in 0..=n {
            if !same(&ts.faces[n][i].then(&f[n - 1]), &f[n].then(&tt.faces[n][i])) {
                return Err(Error::malformed(format!("map does not commute with d_{i} on row {n}")));
            }
        }
    }
    for n in 0..f.len().saturating_sub(1) {
        for j in 0..=n {
            if !same(&ts.degens[n][j].then(&f[n + 1]), &f[n].then(&tt.degens[n][j])) {
                return Err(Error::malformed(format!("map does not commute with s_{j} on row {n}")));
            }
        }
    }
    Ok(())
}

type RowFilter<'a> = Box<dyn Fn(usize, NdId, Simplex) -> bool + 'a>;

/// Enumeration of bisimplicial maps on a window, row by row.
///
/// Row `n` is searched with the images of Δ-degenerate simplices fixed by
/// the previous row and the Δ-faces of each candidate required to match.
/// When the source is skeletal with bound at most the window, the result is
/// the full hom-set.
pub struct BisimplicialHom<'a> {
    source: &'a BisimplicialSet,
    target: &'a BisimplicialSet,
    window: usize,
    budget: Budget,
    injective: bool,
    filter: Option<RowFilter<'a>>,
}

impl<'a> BisimplicialHom<'a> {
    pub fn new(source: &'a BisimplicialSet, target: &'a BisimplicialSet, window: usize) -> Self {
        BisimplicialHom { source, target, window, budget: Budget::default(), injective: false, filter: None }
    }

    pub fn budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Extra constraint on the image of nondegenerate simplex `x` of row `n`.
    pub fn filter(mut self, f: impl Fn(usize, NdId, Simplex) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(f));
        self
    }

    /// Whether the enumeration is the complete hom-set.
    pub fn exact(&self) -> bool {
        self.source.skeletal_bound().map(|b| b <= self.window).unwrap_or(false)
    }

    pub fn for_each(&self, mut visit: impl FnMut(&[SimplicialMap]) -> ControlFlow<()>) -> Result<()> {
        let ts = self.source.rows(self.window, self.budget)?;
        let tt = self.target.rows(self.window, self.budget)?;
        let mut chosen = Vec::with_capacity(self.window + 1);
        let mut stop = false;
        self.rec(&ts, &tt, &mut chosen, &mut stop, &mut visit)
    }

    fn rec(
        &self,
        ts: &Truncation,
        tt: &Truncation,
        chosen: &mut Vec<SimplicialMap>,
        stop: &mut bool,
        visit: &mut dyn FnMut(&[SimplicialMap]) -> ControlFlow<()>,
    ) -> Result<()> {
        let n = chosen.len();
        if n > self.window {
            if visit(chosen).is_break() {
                *stop = true;
            }
            return Ok(());
        }
        let (xs, ys) = (&ts.rows[n], &tt.rows[n]);
        let mut fixed: Vec<Option<Simplex>> = vec![None; xs.len()];
        if n > 0 {
            let prev = &chosen[n - 1];
            for j in 0..n {
                let sx = &ts.degens[n - 1][j];
                let sy = &tt.degens[n - 1][j];
                for y in sx.source.ids() {
                    let x = sx.image(y);
                    let img = sy.apply(prev.image(y));
                    match fixed[x.nd as usize] {
                        Some(old) if old != img => return Ok(()),
                        _ => fixed[x.nd as usize] = Some(img),
                    }
                }
            }
        }
        let faces_ok = |x: NdId, y: Simplex| -> bool {
            if n > 0 {
                let prev = &chosen[n - 1];
                for i in 0..=n {
                    let want = prev.apply(ts.faces[n][i].image(x));
                    if tt.faces[n][i].apply(y) != want {
                        return false;
                    }
                }
            }
            self.filter.as_ref().map(|f| f(n, x, y)).unwrap_or(true)
        };
        let mut search = HomSearch::new(xs, ys).budget(self.budget).fixed(fixed).filter(faces_ok);
        if self.injective {
            search = search.injective();
        }
        let mut found: Vec<Vec<Simplex>> = Vec::new();
        search.for_each(|imgs| {
            found.push(imgs.to_vec());
            if found.len() > self.budget.simplices {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        drop(search);
        if found.len() > self.budget.simplices {
            return Err(Error::budget("bisimplicial hom search", n));
        }
        for imgs in found {
            chosen.push(SimplicialMap::from_images_unchecked(xs.clone(), ys.clone(), imgs));
            self.rec(ts, tt, chosen, stop, visit)?;
            chosen.pop();
            if *stop {
                break;
            }
        }
        Ok(())
    }

    pub fn collect(&self) -> Result<Vec<BisimplicialMap>> {
        let mut out = Vec::new();
        self.for_each(|rows| {
            out.push(BisimplicialMap::stored(self.source, self.target, rows.to_vec()));
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    pub fn count(&self) -> Result<usize> {
        let mut n = 0usize;
        self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }

    pub fn first(&self) -> Result<Option<BisimplicialMap>> {
        let mut out = None;
        self.for_each(|rows| {
            out = Some(BisimplicialMap::stored(self.source, self.target, rows.to_vec()));
            ControlFlow::Break(())
        })?;
        Ok(out)
    }
}

/// An isomorphism `a -> b` on the window, if one exists.
pub fn find_isomorphism(a: &BisimplicialSet, b: &BisimplicialSet, window: usize, budget: Budget) -> Result<Option<BisimplicialMap>> {
    let ta = a.rows(window, budget)?;
    let tb = b.rows(window, budget)?;
    if ta.row_counts() != tb.row_counts() {
        return Ok(None);
    }
    BisimplicialHom::new(a, b, window).budget(budget).injective().first()
}
