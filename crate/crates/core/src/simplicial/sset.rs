use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::map::SimplicialMap;
use super::simplex::{ops, DegeneracyWord, NdId, Simplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct NdSimplex {
    pub(crate) dim: usize,
    pub(crate) faces: Vec<Simplex>,
}

/// A finite simplicial set presented by its nondegenerate simplices.
///
/// Ids are assigned in insertion order and every face refers to an earlier
/// id, so the presentation is well founded. All iterated faces of every
/// nondegenerate simplex are tabulated at insertion time.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    simplices: Vec<NdSimplex>,
    by_dim: Vec<Vec<NdId>>,
    // face_table[x][mask] = ι^*x for the injection with image `mask`.
    face_table: Vec<Vec<Simplex>>,
}

impl std::fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialSet{:?}", self.counts())
    }
}

const MAX_TABULATED_DIM: usize = 20;

impl Default for SimplicialSet {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimplicialSet {
    pub fn empty() -> Self {
        SimplicialSet { simplices: Vec::new(), by_dim: Vec::new(), face_table: Vec::new() }
    }

    /// The discrete simplicial set on `n` points.
    pub fn discrete(n: usize) -> Self {
        let mut x = Self::empty();
        for _ in 0..n {
            x.add_vertex();
        }
        x
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn add_vertex(&mut self) -> NdId {
        self.push(0, Vec::new())
    }

    /// Adds a nondegenerate simplex with the given faces `d_0..d_d`.
    /// Validates dimensions, references and the simplicial identities.
    pub fn add_simplex(&mut self, faces: Vec<Simplex>) -> Result<NdId> {
        let d = faces.len().checked_sub(1).ok_or_else(|| Error::malformed("a simplex of dimension ≥ 1 needs faces"))?;
        if d == 0 {
            return Err(Error::malformed("a 0-simplex has no faces; use add_vertex"));
        }
        if d > MAX_TABULATED_DIM {
            return Err(Error::budget("simplex dimension", d));
        }
        for (i, f) in faces.iter().enumerate() {
            self.check_ref(f)?;
            if f.dim() != d - 1 {
                return Err(Error::malformed(format!("face {i} has dimension {} but {} was expected", f.dim(), d - 1)));
            }
        }
        for j in 1..=d {
            if d < 2 {
                break;
            }
            for i in 0..j {
                let a = self.face(faces[j], i);
                let b = self.face(faces[i], j - 1);
                if a != b {
                    return Err(Error::malformed(format!(
                        "simplicial identity d_{i} d_{j} = d_{} d_{i} fails ({a:?} vs {b:?})",
                        j - 1
                    )));
                }
            }
        }
        Ok(self.push(d, faces))
    }

    fn check_ref(&self, s: &Simplex) -> Result<()> {
        let nd = self
            .simplices
            .get(s.nd as usize)
            .ok_or_else(|| Error::malformed(format!("unknown simplex id {}", s.nd)))?;
        if nd.dim + s.word.len() != s.dim() {
            return Err(Error::malformed(format!("simplex reference {s:?} has inconsistent dimension")));
        }
        if s.dim() > 0 && s.word.bits() >> s.dim() != 0 {
            return Err(Error::malformed(format!("degeneracy index out of range in {s:?}")));
        }
        if s.dim() == 0 && !s.word.is_empty() {
            return Err(Error::malformed("a 0-simplex cannot carry degeneracies"));
        }
        Ok(())
    }

    fn push(&mut self, dim: usize, faces: Vec<Simplex>) -> NdId {
        let id = self.simplices.len() as NdId;
        let mut table = vec![Simplex::nondegenerate(id, dim); 1usize << (dim + 1)];
        for mask in 1u64..(1u64 << (dim + 1)) {
            let full = (1u64 << (dim + 1)) - 1;
            if mask == full {
                continue;
            }
            // lowest index missing from the image
            let i = (!mask).trailing_zeros() as usize;
            let below = mask & ((1u64 << i) - 1);
            let above = (mask >> (i + 1)) << i;
            let sub = ops::injection_of_mask(below | above);
            table[mask as usize] = self.apply(faces[i], &sub);
        }
        self.simplices.push(NdSimplex { dim, faces });
        if self.by_dim.len() <= dim {
            self.by_dim.resize(dim + 1, Vec::new());
        }
        self.by_dim[dim].push(id);
        self.face_table.push(table);
        id
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension of a nondegenerate simplex, `None` for the empty set.
    pub fn top_dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|v| !v.is_empty())
    }

    pub fn dim_of(&self, id: NdId) -> usize {
        self.simplices[id as usize].dim
    }

    pub fn faces_of(&self, id: NdId) -> &[Simplex] {
        &self.simplices[id as usize].faces
    }

    pub fn nd(&self, id: NdId) -> Simplex {
        Simplex::nondegenerate(id, self.dim_of(id))
    }

    /// Nondegenerate ids of dimension `d`, in id order.
    pub fn nd_of_dim(&self, d: usize) -> &[NdId] {
        self.by_dim.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn vertices(&self) -> &[NdId] {
        self.nd_of_dim(0)
    }

    pub fn ids(&self) -> impl Iterator<Item = NdId> {
        0..self.simplices.len() as NdId
    }

    /// Counts of nondegenerate simplices per dimension.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.top_dim().map(|d| d + 1).unwrap_or(0);
        (0..top).map(|d| self.by_dim[d].len()).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.top_dim().unwrap_or(0) == 0
    }

    /// Applies the simplicial operator `θ^*` for `θ : [p] -> [s.dim]`.
    pub fn apply(&self, s: Simplex, theta: &[usize]) -> Simplex {
        let sigma = s.word.surjection(s.dim());
        let comp: Vec<usize> = theta.iter().map(|&k| sigma[k]).collect();
        let (mask, rho) = ops::factor(&comp);
        let base = self.face_table[s.nd as usize][mask as usize];
        if rho.len() == base.dim() + 1 {
            return base;
        }
        let kappa = base.word.surjection(base.dim());
        let total: Vec<usize> = rho.iter().map(|&k| kappa[k]).collect();
        Simplex { dim: (theta.len() - 1) as u32, nd: base.nd, word: DegeneracyWord::from_surjection(&total) }
    }

    pub fn face(&self, s: Simplex, i: usize) -> Simplex {
        self.apply(s, &ops::coface(s.dim(), i))
    }

    pub fn degeneracy(&self, s: Simplex, j: usize) -> Simplex {
        let n = s.dim();
        let w = s.word.surjection(n);
        // σ ∘ σ_j, renormalized.
        let comp = ops::compose(&w, &ops::codegeneracy(n, j));
        Simplex { dim: (n + 1) as u32, nd: s.nd, word: DegeneracyWord::from_surjection(&comp) }
    }

    /// Applies a degeneracy word to any simplex.
    pub fn degenerate(&self, s: Simplex, word: DegeneracyWord) -> Simplex {
        let mut out = s;
        for j in word.indices() {
            out = self.degeneracy(out, j);
        }
        out
    }

    /// All `d`-simplices (degenerate included), in a fixed order: by
    /// nondegenerate id, then by degeneracy word in increasing bit order.
    pub fn simplices_of_dim(&self, d: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (id, nd) in self.simplices.iter().enumerate() {
            if nd.dim > d {
                continue;
            }
            for word in words(d, d - nd.dim) {
                out.push(Simplex { dim: d as u32, nd: id as NdId, word });
            }
        }
        out
    }

    /// Number of `d`-simplices, degenerate included.
    pub fn count_of_dim(&self, d: usize) -> usize {
        self.simplices.iter().filter(|s| s.dim <= d).map(|s| binomial(d, d - s.dim)).sum()
    }

    /// The vertices of a simplex, in order.
    pub fn vertex_list(&self, s: Simplex) -> Vec<NdId> {
        (0..=s.dim()).map(|k| self.apply(s, &[k]).nd).collect()
    }

    /// Subobject generated by the given nondegenerate simplices, with its
    /// inclusion. Ids in the result follow the order of the parent.
    pub fn subcomplex(self: &Arc<Self>, generators: impl IntoIterator<Item = NdId>) -> (Arc<SimplicialSet>, SimplicialMap) {
        let mut keep = BTreeSet::new();
        let mut stack: Vec<NdId> = generators.into_iter().collect();
        while let Some(id) = stack.pop() {
            if keep.insert(id) {
                for f in self.faces_of(id) {
                    stack.push(f.nd);
                }
            }
        }
        let mut sub = SimplicialSet::empty();
        let mut remap: HashMap<NdId, NdId> = HashMap::new();
        let mut images = Vec::new();
        for id in keep {
            let new = if self.dim_of(id) == 0 {
                sub.add_vertex()
            } else {
                let faces = self.faces_of(id).iter().map(|f| Simplex { nd: remap[&f.nd], ..*f }).collect();
                sub.add_simplex(faces).expect("faces of a subcomplex satisfy the identities")
            };
            remap.insert(id, new);
            images.push(self.nd(id));
        }
        let sub = Arc::new(sub);
        let inc = SimplicialMap::from_images_unchecked(sub.clone(), self.clone(), images);
        (sub, inc)
    }

    /// n-skeleton with its inclusion.
    pub fn skeleton(self: &Arc<Self>, n: usize) -> (Arc<SimplicialSet>, SimplicialMap) {
        let gens: Vec<NdId> = self.ids().filter(|&id| self.dim_of(id) <= n).collect();
        self.subcomplex(gens)
    }

    /// Disjoint union, with the coproduct inclusions. Ids are ordered by
    /// dimension, then by summand, then by id within the summand.
    pub fn coproduct(parts: &[Arc<SimplicialSet>]) -> (Arc<SimplicialSet>, Vec<SimplicialMap>) {
        let mut order: Vec<(usize, usize, NdId)> =
            parts.iter().enumerate().flat_map(|(k, p)| p.ids().map(move |id| (p.dim_of(id), k, id))).collect();
        order.sort();
        let mut remap: Vec<Vec<NdId>> = parts.iter().map(|p| vec![0; p.len()]).collect();
        let mut out = SimplicialSet::empty();
        for &(d, k, id) in &order {
            let new = if d == 0 {
                out.add_vertex()
            } else {
                let faces = parts[k].faces_of(id).iter().map(|f| Simplex { nd: remap[k][f.nd as usize], ..*f }).collect();
                out.push(d, faces)
            };
            remap[k][id as usize] = new;
        }
        let out = Arc::new(out);
        let incs = parts
            .iter()
            .zip(&remap)
            .map(|(p, r)| {
                let images = p.ids().map(|id| Simplex::nondegenerate(r[id as usize], p.dim_of(id))).collect();
                SimplicialMap::from_images_unchecked(p.clone(), out.clone(), images)
            })
            .collect();
        (out, incs)
    }

    /// Total degeneracy `s_0^k` of a vertex.
    pub fn degenerate_vertex(&self, v: NdId, k: usize) -> Simplex {
        Simplex { dim: k as u32, nd: v, word: DegeneracyWord::from_bits(((1u64 << k) - 1) as u32) }
    }

    /// Re-validates every stored simplex (identities and references).
    pub fn validate(&self) -> Result<()> {
        let mut rebuilt = SimplicialSet::empty();
        for nd in &self.simplices {
            if nd.dim == 0 {
                rebuilt.add_vertex();
            } else {
                rebuilt.add_simplex(nd.faces.clone())?;
            }
        }
        Ok(())
    }
}

/// Degeneracy words of length `k` on `n` positions, in increasing bit order.
pub(crate) fn words(n: usize, k: usize) -> Vec<DegeneracyWord> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    fn rec(start: usize, n: usize, k: usize, bits: u32, out: &mut Vec<DegeneracyWord>) {
        if k == 0 {
            out.push(DegeneracyWord::from_bits(bits));
            return;
        }
        for j in start..n {
            if n - j < k {
                break;
            }
            rec(j + 1, n, k - 1, bits | (1 << j), out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> SimplicialSet {
        let mut x = SimplicialSet::empty();
        let a = x.add_vertex();
        let b = x.add_vertex();
        x.add_simplex(vec![Simplex::nondegenerate(b, 0), Simplex::nondegenerate(a, 0)]).unwrap();
        x
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let x = interval();
        let e = x.nd(2);
        let s0 = x.degeneracy(e, 0);
        assert_eq!(s0.word.indices(), vec![0]);
        // d_0 s_0 = id, d_1 s_0 = id, d_2 s_0 = s_0 d_1
        assert_eq!(x.face(s0, 0), e);
        assert_eq!(x.face(s0, 1), e);
        let d1 = x.face(e, 1);
        assert_eq!(x.face(s0, 2), x.degeneracy(d1, 0));
    }

    #[test]
    fn degeneracies_renormalize() {
        let x = interval();
        let e = x.nd(2);
        // s_1 s_0 = s_0 s_0
        let a = x.degeneracy(x.degeneracy(e, 0), 1);
        let b = x.degeneracy(x.degeneracy(e, 0), 0);
        assert_eq!(a, b);
        assert_eq!(a.word.indices(), vec![0, 1]);
        // s_0 s_1 x = s_2 s_0 x for x of dim 1
        let c = x.degeneracy(x.degeneracy(e, 1), 0);
        let d = x.degeneracy(x.degeneracy(e, 0), 2);
        assert_eq!(c, d);
    }

    #[test]
    fn rejects_identity_violation() {
        let mut x = SimplicialSet::empty();
        let a = x.add_vertex();
        let b = x.add_vertex();
        let c = x.add_vertex();
        let v = |i| Simplex::nondegenerate(i, 0);
        let ab = x.add_simplex(vec![v(b), v(a)]).unwrap();
        let bc = x.add_simplex(vec![v(c), v(b)]).unwrap();
        let ac = x.add_simplex(vec![v(c), v(a)]).unwrap();
        let e = |i| Simplex::nondegenerate(i, 1);
        assert!(x.add_simplex(vec![e(bc), e(ac), e(ab)]).is_ok());
        assert!(x.add_simplex(vec![e(ab), e(ac), e(bc)]).is_err());
    }

    #[test]
    fn simplices_of_dim_counts() {
        let x = interval();
        // Δ[1]_n has n + 2 elements
        for n in 0..5 {
            assert_eq!(x.simplices_of_dim(n).len(), n + 2);
            assert_eq!(x.count_of_dim(n), n + 2);
        }
    }
}
