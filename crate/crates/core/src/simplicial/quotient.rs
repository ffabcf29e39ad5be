use std::collections::HashMap;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::simplex::{ops, NdId, Simplex};
use super::sset::SimplicialSet;
use crate::error::{Budget, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so representatives are canonical
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The quotient of a simplicial set by the simplicial congruence generated
/// by a list of identified pairs, with its projection.
///
/// The congruence is closed under all simplicial operators; a class is
/// degenerate in the quotient exactly when it contains a degenerate simplex.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub set: Arc<SimplicialSet>,
    pub projection: SimplicialMap,
    // one nondegenerate source simplex per nondegenerate class
    representatives: Vec<NdId>,
}

impl Quotient {
    pub fn compute(x: &Arc<SimplicialSet>, pairs: &[(Simplex, Simplex)], budget: Budget) -> Result<Quotient> {
        let top = x.top_dim().unwrap_or(0);
        budget.check_dim("quotient", top)?;
        let mut all: Vec<Simplex> = Vec::new();
        let mut offsets = Vec::with_capacity(top + 1);
        for d in 0..=top {
            offsets.push(all.len());
            all.extend(x.simplices_of_dim(d));
            budget.check_size("quotient", all.len(), d)?;
        }
        let index: HashMap<Simplex, usize> = all.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let mut uf = UnionFind::new(all.len());
        for &(a, b) in pairs {
            debug_assert_eq!(a.dim(), b.dim());
            let q = a.dim();
            for p in 0..=top {
                for theta in ops::monotone_maps(p, q) {
                    let ta = x.apply(a, &theta);
                    let tb = x.apply(b, &theta);
                    uf.union(index[&ta], index[&tb]);
                }
            }
        }
        let roots: Vec<usize> = (0..all.len()).map(|k| uf.find(k)).collect();
        let mut degenerate_member: Vec<Option<usize>> = vec![None; all.len()];
        for (k, s) in all.iter().enumerate() {
            if s.is_degenerate() && degenerate_member[roots[k]].is_none() {
                degenerate_member[roots[k]] = Some(k);
            }
        }
        let ctx = Classes { all: &all, index: &index, roots: &roots, degenerate_member: &degenerate_member };

        // Nondegenerate classes, by dimension then smallest member.
        let mut class_id: HashMap<usize, NdId> = HashMap::new();
        let mut representatives = Vec::new();
        let mut out = SimplicialSet::empty();
        let mut class_repr: HashMap<usize, Simplex> = HashMap::new();
        for d in 0..=top {
            let end = if d == top { all.len() } else { offsets[d + 1] };
            for k in offsets[d]..end {
                let r = roots[k];
                if degenerate_member[r].is_some() || class_id.contains_key(&r) {
                    continue;
                }
                let s = all[k];
                let id = if d == 0 {
                    out.add_vertex()
                } else {
                    let faces = (0..=d)
                        .map(|i| {
                            let f = x.face(s, i);
                            ctx.simplex(x, &out, &class_id, &mut class_repr, f)
                        })
                        .collect();
                    out.add_simplex(faces).expect("faces of a quotient simplex")
                };
                class_id.insert(r, id);
                representatives.push(s.nd);
            }
        }
        let set = Arc::new(out);
        let images = x
            .ids()
            .map(|id| ctx.simplex(x, &set, &class_id, &mut class_repr, x.nd(id)))
            .collect();
        let projection = SimplicialMap::from_images_unchecked(x.clone(), set.clone(), images);
        Ok(Quotient { set, projection, representatives })
    }

    /// The map out of the quotient induced by a map constant on classes.
    pub fn descend(&self, f: &SimplicialMap) -> SimplicialMap {
        let images = self.representatives.iter().map(|&id| f.image(id)).collect();
        SimplicialMap::from_images_unchecked(self.set.clone(), f.target.clone(), images)
    }

    pub fn representative(&self, id: NdId) -> NdId {
        self.representatives[id as usize]
    }
}

struct Classes<'a> {
    all: &'a [Simplex],
    index: &'a HashMap<Simplex, usize>,
    roots: &'a [usize],
    degenerate_member: &'a [Option<usize>],
}

impl Classes<'_> {
    /// The simplex of the quotient denoted by the class of `s`.
    fn simplex(
        &self,
        x: &SimplicialSet,
        out: &SimplicialSet,
        class_id: &HashMap<usize, NdId>,
        memo: &mut HashMap<usize, Simplex>,
        s: Simplex,
    ) -> Simplex {
        let r = self.roots[self.index[&s]];
        if let Some(&id) = class_id.get(&r) {
            return Simplex::nondegenerate(id, s.dim());
        }
        if let Some(&m) = memo.get(&r) {
            return m;
        }
        // a degenerate member s_w z; the class is s_w of the class of z
        let t = self.all[self.degenerate_member[r].expect("class is degenerate")];
        let base = self.simplex(x, out, class_id, memo, x.nd(t.nd));
        let result = out.degenerate(base, t.word);
        memo.insert(r, result);
        result
    }
}

/// Pushout `B ⊔_A C` of `f: A -> B` and `g: A -> C`, with its two legs.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub set: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    quotient: Quotient,
    // for each simplex of B ⊔ C: which summand and which id there
    origin: Vec<(usize, NdId)>,
}

impl Pushout {
    /// The map out of the pushout induced by `u: B -> T`, `v: C -> T`
    /// agreeing on `A`.
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> SimplicialMap {
        let images = (0..self.quotient.set.len())
            .map(|k| match self.origin[self.quotient.representative(k as NdId) as usize] {
                (0, id) => u.image(id),
                (_, id) => v.image(id),
            })
            .collect();
        SimplicialMap::from_images_unchecked(self.set.clone(), u.target.clone(), images)
    }
}

pub fn pushout(f: &SimplicialMap, g: &SimplicialMap, budget: Budget) -> Result<Pushout> {
    let (sum, incs) = SimplicialSet::coproduct(&[f.target.clone(), g.target.clone()]);
    let pairs: Vec<(Simplex, Simplex)> = f
        .source
        .ids()
        .map(|a| (incs[0].apply(f.image(a)), incs[1].apply(g.image(a))))
        .collect();
    let quotient = Quotient::compute(&sum, &pairs, budget)?;
    let left = incs[0].then(&quotient.projection);
    let right = incs[1].then(&quotient.projection);
    let mut origin = vec![(0, 0); sum.len()];
    for (k, inc) in incs.iter().enumerate() {
        for id in inc.source.ids() {
            origin[inc.image(id).nd as usize] = (k, id);
        }
    }
    Ok(Pushout { set: quotient.set.clone(), left, right, quotient, origin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, simplex};

    #[test]
    fn circle_from_two_intervals() {
        let b = boundary(1);
        let p = pushout(&b.inclusion, &b.inclusion, Budget::default()).unwrap();
        assert_eq!(p.set.counts(), vec![2, 2]);
        p.left.verify().unwrap();
        p.right.verify().unwrap();
    }

    #[test]
    fn collapsing_endpoints_gives_a_loop() {
        let b = boundary(1);
        let x = simplex(1);
        let q = Quotient::compute(&x, &[(x.nd(0), x.nd(1))], Budget::default()).unwrap();
        let _ = b;
        assert_eq!(q.set.counts(), vec![1, 1]);
        q.projection.verify().unwrap();
    }

    #[test]
    fn identifying_an_edge_with_a_degenerate_one() {
        let x = simplex(1);
        let e = x.nd(2);
        let v = x.degenerate_vertex(0, 1);
        let q = Quotient::compute(&x, &[(e, v)], Budget::default()).unwrap();
        assert_eq!(q.set.counts(), vec![1]);
        q.projection.verify().unwrap();
    }

    #[test]
    fn pushout_along_identity() {
        let x = simplex(2);
        let id = SimplicialMap::identity(&x);
        let b = boundary(2);
        let p = pushout(&id, &id, Budget::default()).unwrap();
        assert_eq!(p.set.counts(), x.counts());
        let p2 = pushout(&b.inclusion, &SimplicialMap::identity(&b.set), Budget::default()).unwrap();
        assert_eq!(p2.set.counts(), x.counts());
    }
}
