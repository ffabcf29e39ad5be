use std::collections::HashMap;
use std::sync::Arc;

use super::category::FiniteCategory;
use super::format::emit_cat;
use super::functor::Functor;
use crate::bisimplicial::{BisimplicialMap, BisimplicialSet, DiscreteSource};
use crate::error::{Budget, Error, Result};
use crate::simplicial::{NdId, Simplex, SimplicialMap, SimplicialSet};

/// A chain `x_0 -> x_1 -> ... -> x_n` of composable arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Chain {
    /// The objects `x_0, ..., x_n`.
    pub fn objects(&self, c: &FiniteCategory) -> Vec<usize> {
        let mut out = vec![self.start];
        out.extend(self.arrows.iter().map(|&a| c.dst(a)));
        out
    }

    /// `θ^*` for `θ : [m] -> [n]`.
    pub fn act(&self, c: &FiniteCategory, theta: &[usize]) -> Chain {
        let obj = self.objects(c);
        let span = |i: usize, j: usize| -> usize {
            let mut a = c.identity(obj[i]);
            for k in i..j {
                a = c.compose(self.arrows[k], a).expect("chain is composable");
            }
            a
        };
        Chain { start: obj[theta[0]], arrows: theta.windows(2).map(|w| span(w[0], w[1])).collect() }
    }

    pub fn is_degenerate(&self, c: &FiniteCategory) -> bool {
        self.arrows.iter().any(|&a| c.is_identity(a))
    }
}

/// All chains of length `n`, by start object and then arrow order.
pub fn chains(c: &FiniteCategory, n: usize) -> Vec<Chain> {
    let mut out = Vec::new();
    for x in 0..c.num_objects() {
        let mut cur = Chain { start: x, arrows: Vec::new() };
        chains_rec(c, n, x, &mut cur, &mut out);
    }
    out
}

fn chains_rec(c: &FiniteCategory, n: usize, at: usize, cur: &mut Chain, out: &mut Vec<Chain>) {
    if cur.arrows.len() == n {
        out.push(cur.clone());
        return;
    }
    for a in c.out_of(at) {
        cur.arrows.push(a);
        chains_rec(c, n, c.dst(a), cur, out);
        cur.arrows.pop();
    }
}

pub(crate) struct NerveSource(pub Arc<FiniteCategory>);

impl DiscreteSource for NerveSource {
    type Elem = Chain;
    fn elements(&self, n: usize) -> Vec<Chain> {
        chains(&self.0, n)
    }
    fn act(&self, theta: &[usize], x: &Chain) -> Chain {
        x.act(&self.0, theta)
    }
    fn skeletal_bound(&self) -> Option<usize> {
        self.0.longest_chain()
    }
    fn virtual_spec(&self) -> Option<String> {
        Some(format!("bss-virtual nerve\n{}", emit_cat(&self.0)))
    }
}

/// `nerve(C)^t`: row `n` is the discrete set of chains of length `n`.
pub fn nerve(c: &Arc<FiniteCategory>) -> BisimplicialSet {
    BisimplicialSet::discrete(format!("nerve({})", c.name), NerveSource(c.clone()))
}

/// `nerve(F)^t`.
pub fn nerve_map(f: &Functor, source: &BisimplicialSet, target: &BisimplicialSet) -> BisimplicialMap {
    let f = f.clone();
    BisimplicialMap::from_rows(source, target, move |k, ts, tt| {
        let index: HashMap<Chain, u32> = chains(&f.target, k).into_iter().enumerate().map(|(i, ch)| (ch, i as u32)).collect();
        let images = chains(&f.source, k)
            .iter()
            .map(|ch| {
                let img = Chain { start: f.objects[ch.start], arrows: ch.arrows.iter().map(|&a| f.arrows[a]).collect() };
                index.get(&img).map(|&i| Simplex::nondegenerate(i, 0)).ok_or_else(|| Error::malformed("functor image is not a chain"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap::from_images_unchecked(ts.rows[k].clone(), tt.rows[k].clone(), images))
    })
}

/// The simplicial nerve of `C` through dimension `top`, with nondegenerate
/// simplices the chains of non-identity arrows.
pub fn nerve_sset(c: &FiniteCategory, top: usize, budget: Budget) -> Result<SimplicialSet> {
    budget.check_dim("nerve", top)?;
    let mut x = SimplicialSet::empty();
    let mut ids: HashMap<Chain, NdId> = HashMap::new();
    // every chain as (nondegenerate chain, degeneracy indices)
    let split = |ch: &Chain| -> (Chain, Vec<usize>) {
        let mut base = Chain { start: ch.start, arrows: Vec::new() };
        let mut idx = Vec::new();
        for (k, &a) in ch.arrows.iter().enumerate() {
            if c.is_identity(a) {
                idx.push(k);
            } else {
                base.arrows.push(a);
            }
        }
        (base, idx)
    };
    for n in 0..=top {
        for ch in chains(c, n) {
            if ch.is_degenerate(c) {
                continue;
            }
            let id = if n == 0 {
                x.add_vertex()
            } else {
                let faces = (0..=n)
                    .map(|i| {
                        let theta: Vec<usize> = (0..=n).filter(|&k| k != i).collect();
                        let (base, idx) = split(&ch.act(c, &theta));
                        let word = crate::simplicial::DegeneracyWord::from_indices(&idx)?;
                        Ok(Simplex { dim: (n - 1) as u32, nd: ids[&base], word })
                    })
                    .collect::<Result<Vec<_>>>()?;
                x.add_simplex(faces)?
            };
            ids.insert(ch, id);
        }
        budget.check_size("nerve", x.len(), n)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::is_kan;

    #[test]
    fn nerve_rows() {
        let p = Arc::new(FiniteCategory::poset(2));
        let n = nerve(&p);
        let t = n.rows(3, Budget::default()).unwrap();
        t.verify().unwrap();
        assert_eq!(t.row_counts()[1..3], [vec![6], vec![10]]);
        let e = nerve(&Arc::new(FiniteCategory::codiscrete(2)));
        let t = e.rows(3, Budget::default()).unwrap();
        for k in 0..=3 {
            assert_eq!(t.rows[k].len(), 1 << (k + 1));
        }
    }

    #[test]
    fn simplicial_nerve() {
        let p = FiniteCategory::poset(2);
        assert_eq!(nerve_sset(&p, 3, Budget::default()).unwrap().counts(), vec![3, 3, 1]);
        let g = nerve_sset(&FiniteCategory::codiscrete(2), 3, Budget::default()).unwrap();
        assert_eq!(g.counts(), vec![2, 2, 2, 2]);
        assert!(is_kan(&g, 3, Budget::default()).is_yes());
    }
}
