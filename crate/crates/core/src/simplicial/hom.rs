use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::simplex::{NdId, Simplex};
use super::sset::SimplicialSet;
use crate::error::{Budget, Error, Result};

type Filter<'a> = Box<dyn Fn(NdId, Simplex) -> bool + 'a>;

/// Backtracking enumeration of simplicial maps, dimension by dimension.
///
/// Candidates for a nondegenerate source simplex are the target simplices
/// (degenerate ones included) whose faces equal the already-chosen images of
/// its faces. Optional pre-assigned images and per-simplex filters restrict
/// the search; `injective` restricts to nondegenerate, pairwise distinct
/// images (used for isomorphism search).
pub struct HomSearch<'a> {
    source: &'a Arc<SimplicialSet>,
    target: &'a Arc<SimplicialSet>,
    fixed: Vec<Option<Simplex>>,
    filter: Option<Filter<'a>>,
    injective: bool,
    budget: Budget,
}

struct Index {
    // per dimension: faces tuple -> candidate simplices
    by_faces: Vec<Option<HashMap<Vec<Simplex>, Vec<Simplex>>>>,
    vertices: Vec<Simplex>,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a Arc<SimplicialSet>, target: &'a Arc<SimplicialSet>) -> Self {
        HomSearch { source, target, fixed: vec![None; source.len()], filter: None, injective: false, budget: Budget::default() }
    }

    pub fn budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn fix(mut self, id: NdId, image: Simplex) -> Self {
        self.fixed[id as usize] = Some(image);
        self
    }

    pub fn fixed(mut self, fixed: Vec<Option<Simplex>>) -> Self {
        assert_eq!(fixed.len(), self.source.len());
        self.fixed = fixed;
        self
    }

    pub fn filter(mut self, f: impl Fn(NdId, Simplex) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(f));
        self
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Visits every map as its image vector, in a deterministic order.
    pub fn for_each(&self, mut visit: impl FnMut(&[Simplex]) -> ControlFlow<()>) -> Result<()> {
        let mut order: Vec<NdId> = self.source.ids().collect();
        order.sort_by_key(|&id| (self.source.dim_of(id), id));
        let top = self.source.top_dim().unwrap_or(0);
        self.budget.check_dim("hom search", top)?;
        let mut index = Index { by_faces: vec![None; top + 1], vertices: Vec::new() };
        if self.target.vertices().is_empty() && !self.source.is_empty() {
            return Ok(());
        }
        index.vertices = self.target.vertices().iter().map(|&v| self.target.nd(v)).collect();
        for d in 1..=top {
            if !self.source.nd_of_dim(d).is_empty() {
                let mut m: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
                let all = if self.injective {
                    self.target.nd_of_dim(d).iter().map(|&y| self.target.nd(y)).collect()
                } else {
                    let n = self.target.count_of_dim(d);
                    self.budget.check_size("hom search target index", n, d)?;
                    self.target.simplices_of_dim(d)
                };
                for y in all {
                    let faces: Vec<Simplex> = (0..=d).map(|i| self.target.face(y, i)).collect();
                    m.entry(faces).or_default().push(y);
                }
                index.by_faces[d] = Some(m);
            }
        }
        let mut assign = vec![Simplex::nondegenerate(0, 0); self.source.len()];
        let mut used = vec![false; if self.injective { self.target.len() } else { 0 }];
        let mut nodes = 0u64;
        let mut stop = false;
        self.rec(0, &order, &index, &mut assign, &mut used, &mut nodes, &mut stop, &mut visit)?;
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        pos: usize,
        order: &[NdId],
        index: &Index,
        assign: &mut Vec<Simplex>,
        used: &mut Vec<bool>,
        nodes: &mut u64,
        stop: &mut bool,
        visit: &mut impl FnMut(&[Simplex]) -> ControlFlow<()>,
    ) -> Result<()> {
        if pos == order.len() {
            if visit(assign).is_break() {
                *stop = true;
            }
            return Ok(());
        }
        *nodes += 1;
        let x = order[pos];
        let d = self.source.dim_of(x);
        if *nodes > self.budget.nodes {
            return Err(Error::budget("hom search", d));
        }
        let empty = Vec::new();
        let candidates: &Vec<Simplex> = if d == 0 {
            &index.vertices
        } else {
            let faces: Vec<Simplex> = self
                .source
                .faces_of(x)
                .iter()
                .map(|f| {
                    let base = assign[f.nd as usize];
                    if f.word.is_empty() {
                        base
                    } else {
                        self.target.degenerate(base, f.word)
                    }
                })
                .collect();
            index.by_faces[d].as_ref().expect("indexed").get(&faces).unwrap_or(&empty)
        };
        for &y in candidates {
            if let Some(fx) = self.fixed[x as usize] {
                if fx != y {
                    continue;
                }
            }
            if self.injective {
                if y.is_degenerate() || used[y.nd as usize] {
                    continue;
                }
            }
            if let Some(f) = &self.filter {
                if !f(x, y) {
                    continue;
                }
            }
            assign[x as usize] = y;
            if self.injective {
                used[y.nd as usize] = true;
            }
            self.rec(pos + 1, order, index, assign, used, nodes, stop, visit)?;
            if self.injective {
                used[y.nd as usize] = false;
            }
            if *stop {
                return Ok(());
            }
        }
        Ok(())
    }

    pub fn collect(&self) -> Result<Vec<SimplicialMap>> {
        let mut out = Vec::new();
        let cap = self.budget.simplices;
        let mut over = false;
        self.for_each(|imgs| {
            if out.len() >= cap {
                over = true;
                return ControlFlow::Break(());
            }
            out.push(SimplicialMap::from_images_unchecked(self.source.clone(), self.target.clone(), imgs.to_vec()));
            ControlFlow::Continue(())
        })?;
        if over {
            return Err(Error::budget("hom enumeration result count", self.source.top_dim().unwrap_or(0)));
        }
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

    pub fn first(&self) -> Result<Option<SimplicialMap>> {
        let mut out = None;
        self.for_each(|imgs| {
            out = Some(SimplicialMap::from_images_unchecked(self.source.clone(), self.target.clone(), imgs.to_vec()));
            ControlFlow::Break(())
        })?;
        Ok(out)
    }
}

/// Every simplicial map `a -> x`, each exactly once.
pub fn hom_enumerate(a: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, budget: Budget) -> Result<Vec<SimplicialMap>> {
    HomSearch::new(a, x).budget(budget).collect()
}

pub fn hom_count(a: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, budget: Budget) -> Result<usize> {
    HomSearch::new(a, x).budget(budget).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::simplex::ops::monotone_maps;
    use crate::simplicial::standard::simplex;

    #[test]
    fn hom_between_simplices_counts_monotone_maps() {
        for m in 0..4 {
            for n in 0..4 {
                let got = hom_count(&simplex(m), &simplex(n), Budget::default()).unwrap();
                assert_eq!(got, monotone_maps(m, n).len(), "Hom(Δ[{m}], Δ[{n}])");
            }
        }
    }

    #[test]
    fn empty_source_has_one_map() {
        let e = Arc::new(SimplicialSet::empty());
        assert_eq!(hom_count(&e, &simplex(1), Budget::default()).unwrap(), 1);
        assert_eq!(hom_count(&simplex(0), &e, Budget::default()).unwrap(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let r = hom_count(&simplex(3), &simplex(3), Budget { nodes: 3, ..Budget::default() });
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
