use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::map::SimplicialMap;
use super::simplex::{NdId, Simplex};
use super::sset::SimplicialSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardKind {
    Simplex,
    Boundary,
    Horn,
}

impl std::str::FromStr for StandardKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplex" => Ok(StandardKind::Simplex),
            "boundary" => Ok(StandardKind::Boundary),
            "horn" => Ok(StandardKind::Horn),
            other => Err(Error::invalid(format!("unknown standard kind `{other}`"))),
        }
    }
}

/// `Δ[n]`, `∂Δ[n]` or `V[n,k]` together with the inclusion into `Δ[n]`.
#[derive(Debug, Clone)]
pub struct Standard {
    pub set: Arc<SimplicialSet>,
    pub inclusion: SimplicialMap,
}

/// Subsets of `[n]` in canonical order: by size, then lexicographically.
fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..(1 << (n + 1)))
        .map(|m| (0..=n).filter(|b| m & (1 << b) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b: &Vec<usize>| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// The sub-simplicial set of `Δ[n]` on the faces accepted by `keep`, with
/// ids assigned in canonical subset order.
fn from_faces(n: usize, keep: impl Fn(&[usize]) -> bool) -> (SimplicialSet, Vec<Vec<usize>>) {
    let mut x = SimplicialSet::empty();
    let mut ids: HashMap<Vec<usize>, NdId> = HashMap::new();
    let mut kept = Vec::new();
    for s in subsets(n) {
        if !keep(&s) {
            continue;
        }
        let id = if s.len() == 1 {
            x.add_vertex()
        } else {
            let faces = (0..s.len())
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    Simplex::nondegenerate(ids[&f], f.len() - 1)
                })
                .collect();
            x.add_simplex(faces).expect("faces of a simplex")
        };
        ids.insert(s.clone(), id);
        kept.push(s);
    }
    (x, kept)
}

pub fn simplex(n: usize) -> Arc<SimplicialSet> {
    Arc::new(from_faces(n, |_| true).0)
}

/// Id of the face of `Δ[n]` spanned by `vertices` (sorted, nonempty).
pub fn simplex_face_id(n: usize, vertices: &[usize]) -> NdId {
    subsets(n).iter().position(|s| s == vertices).expect("a face of Δ[n]") as NdId
}

/// The top simplex of `Δ[n]`.
pub fn top(n: usize) -> Simplex {
    Simplex::nondegenerate(((1u64 << (n + 1)) - 2) as NdId, n)
}

pub fn build_standard(kind: StandardKind, n: usize, k: Option<usize>) -> Result<Standard> {
    let (set, kept) = match kind {
        StandardKind::Simplex => from_faces(n, |_| true),
        StandardKind::Boundary => from_faces(n, |s| s.len() < n + 1),
        StandardKind::Horn => {
            let k = k.ok_or_else(|| Error::invalid("a horn needs k"))?;
            if n == 0 || k > n {
                return Err(Error::invalid(format!("horn V[{n},{k}] requires n ≥ 1 and 0 ≤ k ≤ n")));
            }
            from_faces(n, move |s| s.len() < n || (s.len() == n && s.contains(&k)))
        }
    };
    let set = Arc::new(set);
    let delta = simplex(n);
    let images = kept.iter().map(|s| Simplex::nondegenerate(simplex_face_id(n, s), s.len() - 1)).collect();
    let inclusion = SimplicialMap::from_images_unchecked(set.clone(), delta, images);
    Ok(Standard { set, inclusion })
}

pub fn boundary(n: usize) -> Standard {
    build_standard(StandardKind::Boundary, n, None).expect("boundary")
}

pub fn horn(n: usize, k: usize) -> Result<Standard> {
    build_standard(StandardKind::Horn, n, Some(k))
}

/// The coface map `Δ[n-1] -> Δ[n]` skipping vertex `i`.
pub fn coface_map(n: usize, i: usize) -> SimplicialMap {
    vertex_map(n - 1, n, &super::simplex::ops::coface(n, i))
}

/// The codegeneracy map `Δ[n+1] -> Δ[n]` repeating vertex `j`.
pub fn codegeneracy_map(n: usize, j: usize) -> SimplicialMap {
    vertex_map(n + 1, n, &super::simplex::ops::codegeneracy(n, j))
}

/// The map `Δ[p] -> Δ[q]` induced by a monotone map on vertices.
pub fn vertex_map(p: usize, q: usize, theta: &[usize]) -> SimplicialMap {
    let src = simplex(p);
    let tgt = simplex(q);
    let top_q = top(q);
    let images = subsets(p)
        .iter()
        .map(|s| {
            let img: Vec<usize> = s.iter().map(|&v| theta[v]).collect();
            tgt.apply(top_q, &img)
        })
        .collect();
    SimplicialMap::from_images_unchecked(src, tgt, images)
}

/// The spine `G(k) ⊂ Δ[k]`: the union of the edges `{i, i+1}`.
pub fn spine(k: usize) -> Standard {
    let (set, kept) = from_faces(k, |s| s.len() == 1 || (s.len() == 2 && s[1] == s[0] + 1));
    let set = Arc::new(set);
    let images = kept.iter().map(|s| Simplex::nondegenerate(simplex_face_id(k, s), s.len() - 1)).collect();
    let inclusion = SimplicialMap::from_images_unchecked(set.clone(), simplex(k), images);
    Standard { set, inclusion }
}
