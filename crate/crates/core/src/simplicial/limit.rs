use std::collections::HashMap;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::simplex::{DegeneracyWord, NdId, Simplex};
use super::sset::SimplicialSet;
use crate::error::{Budget, Error, Result};

/// A finite diagram of simplicial sets: nodes and maps between them.
#[derive(Debug, Clone, Default)]
pub struct Diagram {
    pub nodes: Vec<Arc<SimplicialSet>>,
    pub arrows: Vec<(usize, usize, SimplicialMap)>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(&mut self, x: Arc<SimplicialSet>) -> usize {
        self.nodes.push(x);
        self.nodes.len() - 1
    }

    pub fn arrow(&mut self, from: usize, to: usize, f: SimplicialMap) {
        self.arrows.push((from, to, f));
    }
}

/// The limit of a finite diagram, computed as the simplicial set of
/// compatible families. A family is nondegenerate unless all its
/// components share a degeneracy.
#[derive(Debug, Clone)]
pub struct Limit {
    pub set: Arc<SimplicialSet>,
    pub diagram: Diagram,
    families: Vec<Vec<Simplex>>,
    index: HashMap<Vec<Simplex>, NdId>,
}

impl Limit {
    pub fn compute(diagram: Diagram, budget: Budget) -> Result<Limit> {
        let n = diagram.nodes.len();
        let has_incoming: Vec<bool> = (0..n).map(|k| diagram.arrows.iter().any(|a| a.1 == k)).collect();
        let roots: Vec<usize> = (0..n).filter(|&k| !has_incoming[k]).collect();
        let bound = if roots.is_empty() { (0..n).collect::<Vec<_>>() } else { roots.clone() }
            .iter()
            .map(|&k| diagram.nodes[k].top_dim())
            .try_fold(0usize, |acc, d| d.map(|d| acc + d))
            .unwrap_or(0);
        let any_empty = diagram.nodes.iter().any(|x| x.is_empty());

        // Assignment order: roots first, then nodes reachable through arrows.
        let mut order: Vec<usize> = roots.clone();
        let mut placed = vec![false; n];
        for &r in &roots {
            placed[r] = true;
        }
        while order.len() < n {
            let next = (0..n)
                .find(|&k| !placed[k] && diagram.arrows.iter().any(|a| a.1 == k && placed[a.0]))
                .or_else(|| (0..n).find(|&k| !placed[k]))
                .expect("unplaced node");
            placed[next] = true;
            order.push(next);
        }
        // For each node in order: the arrow that forces it (if any) and the
        // arrows to check once it is assigned.
        let mut rank = vec![0usize; n];
        for (i, &k) in order.iter().enumerate() {
            rank[k] = i;
        }
        let mut forcing: Vec<Option<usize>> = vec![None; n];
        let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (ai, (from, to, _)) in diagram.arrows.iter().enumerate() {
            let later = if rank[*from] > rank[*to] { *from } else { *to };
            if *to == later && forcing[*to].is_none() && rank[*from] < rank[*to] {
                forcing[*to] = Some(ai);
            } else {
                checks[later].push(ai);
            }
        }

        let mut set = SimplicialSet::empty();
        let mut families: Vec<Vec<Simplex>> = Vec::new();
        let mut index: HashMap<Vec<Simplex>, NdId> = HashMap::new();
        if !any_empty {
            for p in 0..=bound {
                budget.check_dim("limit", p)?;
                let candidates: Vec<Vec<Simplex>> = diagram.nodes.iter().map(|x| x.simplices_of_dim(p)).collect();
                let mut cur = vec![Simplex::nondegenerate(0, 0); n];
                let mut found: Vec<Vec<Simplex>> = Vec::new();
                let mut nodes = 0u64;
                enumerate(&diagram, &order, &forcing, &checks, &candidates, 0, &mut cur, &mut found, &mut nodes, budget, p)?;
                for fam in found {
                    let common = fam.iter().fold(DegeneracyWord::from_bits(u32::MAX), |acc, s| acc.intersect(s.word));
                    if p > 0 && !common.is_empty() {
                        continue;
                    }
                    let id = if p == 0 {
                        set.add_vertex()
                    } else {
                        let faces = (0..=p)
                            .map(|i| {
                                let f: Vec<Simplex> = fam.iter().zip(&diagram.nodes).map(|(s, x)| x.face(*s, i)).collect();
                                normalize(&diagram, &index, &f).expect("faces of a family are families")
                            })
                            .collect();
                        set.add_simplex(faces)?
                    };
                    index.insert(fam.clone(), id);
                    families.push(fam);
                    budget.check_size("limit", families.len(), p)?;
                }
            }
        }
        Ok(Limit { set: Arc::new(set), diagram, families, index })
    }

    /// Cartesian product of the given simplicial sets.
    pub fn product(factors: &[Arc<SimplicialSet>], budget: Budget) -> Result<Limit> {
        let mut d = Diagram::new();
        for f in factors {
            d.node(f.clone());
        }
        Limit::compute(d, budget)
    }

    pub fn family_of_nd(&self, id: NdId) -> &[Simplex] {
        &self.families[id as usize]
    }

    /// Components of an arbitrary simplex of the limit.
    pub fn components(&self, s: Simplex) -> Vec<Simplex> {
        self.families[s.nd as usize]
            .iter()
            .zip(&self.diagram.nodes)
            .map(|(c, x)| if s.word.is_empty() { *c } else { x.degenerate(*c, s.word) })
            .collect()
    }

    pub fn component(&self, s: Simplex, node: usize) -> Simplex {
        let c = self.families[s.nd as usize][node];
        if s.word.is_empty() {
            c
        } else {
            self.diagram.nodes[node].degenerate(c, s.word)
        }
    }

    /// The simplex of the limit with the given components, if compatible.
    pub fn lookup(&self, family: &[Simplex]) -> Option<Simplex> {
        normalize(&self.diagram, &self.index, family)
    }

    pub fn projection(&self, node: usize) -> SimplicialMap {
        let images = self.families.iter().map(|f| f[node]).collect();
        SimplicialMap::from_images_unchecked(self.set.clone(), self.diagram.nodes[node].clone(), images)
    }

    /// The map into the limit whose components are given per node.
    pub fn induced(&self, source: &Arc<SimplicialSet>, component: impl Fn(usize, Simplex) -> Simplex) -> Result<SimplicialMap> {
        let mut images = Vec::with_capacity(source.len());
        for id in source.ids() {
            let s = source.nd(id);
            let fam: Vec<Simplex> = (0..self.diagram.nodes.len()).map(|k| component(k, s)).collect();
            let img = if fam.is_empty() {
                self.set.degenerate_vertex(0, s.dim())
            } else {
                self.lookup(&fam).ok_or_else(|| Error::malformed("components do not form a compatible family"))?
            };
            images.push(img);
        }
        Ok(SimplicialMap::from_images_unchecked(source.clone(), self.set.clone(), images))
    }

    /// Induced map between limits of two diagrams with the same shape, given
    /// a map per node.
    pub fn map_between(&self, other: &Limit, per_node: &[SimplicialMap]) -> Result<SimplicialMap> {
        self.map_with(other, |k, fam| per_node[k].apply(fam[k]))
    }

    /// Induced map into another limit, with each target component computed
    /// from the whole source family.
    pub fn map_with(&self, other: &Limit, component: impl Fn(usize, &[Simplex]) -> Simplex) -> Result<SimplicialMap> {
        let mut images = Vec::with_capacity(self.set.len());
        for (id, fam) in self.families.iter().enumerate() {
            let tgt: Vec<Simplex> = (0..other.diagram.nodes.len()).map(|k| component(k, fam)).collect();
            let img = if tgt.is_empty() {
                other.set.degenerate_vertex(0, self.set.dim_of(id as NdId))
            } else {
                other.lookup(&tgt).ok_or_else(|| Error::malformed("induced family is not compatible"))?
            };
            images.push(img);
        }
        Ok(SimplicialMap::from_images_unchecked(self.set.clone(), other.set.clone(), images))
    }
}

fn normalize(diagram: &Diagram, index: &HashMap<Vec<Simplex>, NdId>, family: &[Simplex]) -> Option<Simplex> {
    let p = family.first().map(|s| s.dim()).unwrap_or(0);
    let common = family.iter().fold(DegeneracyWord::from_bits(if p == 0 { 0 } else { u32::MAX >> (32 - p) }), |acc, s| acc.intersect(s.word));
    if family.is_empty() {
        return index.get(family).map(|&id| Simplex::nondegenerate(id, 0));
    }
    if common.is_empty() {
        return index.get(family).map(|&id| Simplex::nondegenerate(id, p));
    }
    // Strip the common degeneracy with a section of its surjection.
    let rho = common.surjection(p);
    let r = rho[p];
    let mut section = vec![0usize; r + 1];
    for k in (0..=p).rev() {
        section[rho[k]] = k;
    }
    let reduced: Vec<Simplex> = family.iter().zip(&diagram.nodes).map(|(s, x)| x.apply(*s, &section)).collect();
    let id = *index.get(&reduced)?;
    Some(Simplex { dim: p as u32, nd: id, word: common })
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    diagram: &Diagram,
    order: &[usize],
    forcing: &[Option<usize>],
    checks: &[Vec<usize>],
    candidates: &[Vec<Simplex>],
    pos: usize,
    cur: &mut Vec<Simplex>,
    found: &mut Vec<Vec<Simplex>>,
    nodes: &mut u64,
    budget: Budget,
    p: usize,
) -> Result<()> {
    if pos == order.len() {
        found.push(cur.clone());
        if found.len() > budget.simplices {
            return Err(Error::budget("limit families", p));
        }
        return Ok(());
    }
    *nodes += 1;
    if *nodes > budget.nodes {
        return Err(Error::budget("limit", p));
    }
    let k = order[pos];
    let ok = |cur: &Vec<Simplex>| checks[k].iter().all(|&ai| {
        let (from, to, f) = &diagram.arrows[ai];
        f.apply(cur[*from]) == cur[*to]
    });
    if let Some(ai) = forcing[k] {
        let (from, _, f) = &diagram.arrows[ai];
        cur[k] = f.apply(cur[*from]);
        if ok(cur) {
            enumerate(diagram, order, forcing, checks, candidates, pos + 1, cur, found, nodes, budget, p)?;
        }
    } else {
        for &c in &candidates[k] {
            cur[k] = c;
            if ok(cur) {
                enumerate(diagram, order, forcing, checks, candidates, pos + 1, cur, found, nodes, budget, p)?;
            }
        }
    }
    Ok(())
}

/// Cartesian product `A × B` with its projections.
pub fn product(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>, budget: Budget) -> Result<Limit> {
    Limit::product(&[a.clone(), b.clone()], budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::simplex;

    #[test]
    fn square_has_eleven_simplices() {
        let l = product(&simplex(1), &simplex(1), Budget::default()).unwrap();
        assert_eq!(l.set.counts(), vec![4, 5, 2]);
    }

    #[test]
    fn unit_laws() {
        let l = product(&simplex(1), &simplex(0), Budget::default()).unwrap();
        assert_eq!(l.set.counts(), vec![2, 1]);
        let l = product(&simplex(0), &simplex(0), Budget::default()).unwrap();
        assert_eq!(l.set.counts(), vec![1]);
    }

    #[test]
    fn projections_are_maps() {
        let l = product(&simplex(2), &simplex(1), Budget::default()).unwrap();
        l.projection(0).verify().unwrap();
        l.projection(1).verify().unwrap();
        // Δ[2] × Δ[1] is a prism: 3 tetrahedra, Euler characteristic 1
        assert_eq!(l.set.counts(), vec![6, 12, 10, 3]);
    }
}
