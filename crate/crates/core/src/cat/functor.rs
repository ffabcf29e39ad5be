use std::sync::Arc;

use serde_json::json;

use super::category::FiniteCategory;
use crate::error::{Budget, Error, Result};
use crate::invariants::{State, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Functor {
    pub fn new(source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>, objects: Vec<usize>, arrows: Vec<usize>) -> Result<Self> {
        let f = Functor { source: source.clone(), target: target.clone(), objects, arrows };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let (c, d) = (&self.source, &self.target);
        if self.objects.len() != c.num_objects() || self.arrows.len() != c.num_arrows() {
            return Err(Error::malformed("functor tables have the wrong size"));
        }
        if self.objects.iter().any(|&y| y >= d.num_objects()) || self.arrows.iter().any(|&b| b >= d.num_arrows()) {
            return Err(Error::malformed("functor refers to unknown objects or arrows"));
        }
        for a in 0..c.num_arrows() {
            let b = self.arrows[a];
            if d.src(b) != self.objects[c.src(a)] || d.dst(b) != self.objects[c.dst(a)] {
                return Err(Error::malformed(format!("image of {} has the wrong endpoints", c.arrows[a].name)));
            }
        }
        for x in 0..c.num_objects() {
            if self.arrows[c.identity(x)] != d.identity(self.objects[x]) {
                return Err(Error::malformed(format!("identity of {} is not preserved", c.objects[x])));
            }
        }
        for (g, f, h) in c.compositions() {
            if d.compose(self.arrows[g], self.arrows[f]) != Some(self.arrows[h]) {
                return Err(Error::malformed(format!("composite {} ∘ {} is not preserved", c.arrows[g].name, c.arrows[f].name)));
            }
        }
        Ok(())
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        Functor { source: c.clone(), target: c.clone(), objects: (0..c.num_objects()).collect(), arrows: (0..c.num_arrows()).collect() }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(c: &Arc<FiniteCategory>, t: &Arc<FiniteCategory>) -> Self {
        Functor { source: c.clone(), target: t.clone(), objects: vec![0; c.num_objects()], arrows: vec![t.identity(0); c.num_arrows()] }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&y| other.objects[y]).collect(),
            arrows: self.arrows.iter().map(|&b| other.arrows[b]).collect(),
        }
    }
}

/// Every functor `C -> D`, in lexicographic order of object and arrow
/// assignments.
pub fn enumerate_functors(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>, budget: Budget) -> Result<Vec<Functor>> {
    let mut out = Vec::new();
    let mut objects = vec![0usize; c.num_objects()];
    let mut nodes = 0u64;
    objects_rec(c, d, 0, &mut objects, &mut out, &mut nodes, budget)?;
    Ok(out)
}

fn objects_rec(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>, k: usize, objects: &mut Vec<usize>, out: &mut Vec<Functor>, nodes: &mut u64, budget: Budget) -> Result<()> {
    if k == objects.len() {
        let mut arrows: Vec<Option<usize>> = vec![None; c.num_arrows()];
        for x in 0..c.num_objects() {
            arrows[c.identity(x)] = Some(d.identity(objects[x]));
        }
        return arrows_rec(c, d, 0, objects, &mut arrows, out, nodes, budget);
    }
    for y in 0..d.num_objects() {
        objects[k] = y;
        objects_rec(c, d, k + 1, objects, out, nodes, budget)?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arrows_rec(
    c: &Arc<FiniteCategory>,
    d: &Arc<FiniteCategory>,
    a: usize,
    objects: &[usize],
    arrows: &mut Vec<Option<usize>>,
    out: &mut Vec<Functor>,
    nodes: &mut u64,
    budget: Budget,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget.nodes {
        return Err(Error::budget("functor enumeration", a));
    }
    if a == c.num_arrows() {
        let arrows: Vec<usize> = arrows.iter().map(|b| b.unwrap()).collect();
        let ok = c.compositions().into_iter().all(|(g, f, h)| d.compose(arrows[g], arrows[f]) == Some(arrows[h]));
        if ok {
            out.push(Functor { source: c.clone(), target: d.clone(), objects: objects.to_vec(), arrows });
        }
        return Ok(());
    }
    if arrows[a].is_some() {
        return arrows_rec(c, d, a + 1, objects, arrows, out, nodes, budget);
    }
    for b in d.hom(objects[c.src(a)], objects[c.dst(a)]) {
        arrows[a] = Some(b);
        // composites among already assigned arrows must be preserved
        let consistent = (0..=a).all(|f| {
            let (Some(bf), Some(ba)) = (arrows[f], arrows[a]) else { return true };
            let pairs = [(a, f), (f, a)];
            pairs.iter().all(|&(g, h)| match c.compose(g, h) {
                Some(k) => match arrows[k] {
                    Some(bk) => {
                        let (bg, bh) = if g == a { (ba, bf) } else { (bf, ba) };
                        d.compose(bg, bh) == Some(bk)
                    }
                    None => true,
                },
                None => true,
            })
        });
        if consistent {
            arrows_rec(c, d, a + 1, objects, arrows, out, nodes, budget)?;
        }
    }
    arrows[a] = None;
    Ok(())
}

/// Decides whether `f` is an equivalence: fully faithful and essentially
/// surjective, both checked exhaustively.
pub fn cat_equiv_check(f: &Functor, budget: Budget) -> Verdict {
    let (c, d) = (&f.source, &f.target);
    let mut checked = 0usize;
    for x in 0..c.num_objects() {
        for y in 0..c.num_objects() {
            checked += 1;
            let src = c.hom(x, y);
            let tgt = d.hom(f.objects[x], f.objects[y]);
            let mut images: Vec<usize> = src.iter().map(|&a| f.arrows[a]).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != src.len() {
                return Verdict::witness(State::No, "not faithful", json!({ "x": c.objects[x], "y": c.objects[y] }), budget);
            }
            if images.len() != tgt.len() {
                return Verdict::witness(
                    State::No,
                    "not full",
                    json!({ "x": c.objects[x], "y": c.objects[y], "source_homs": src.len(), "target_homs": tgt.len() }),
                    budget,
                );
            }
        }
    }
    for z in 0..d.num_objects() {
        checked += 1;
        let hit = (0..c.num_objects()).any(|x| {
            let fx = f.objects[x];
            fx == z || d.hom(fx, z).into_iter().any(|a| d.is_iso(a))
        });
        if !hit {
            return Verdict::witness(State::No, "not essentially surjective", json!({ "object": d.objects[z] }), budget);
        }
    }
    Verdict::exhaustive("fully faithful and essentially surjective", checked, budget)
}
