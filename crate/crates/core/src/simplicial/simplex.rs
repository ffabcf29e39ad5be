use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a nondegenerate simplex inside its simplicial set.
pub type NdId = u32;

/// Degeneracy indices `j_1 < ... < j_k`, read as `s_{j_k} ∘ ... ∘ s_{j_1}`.
///
/// Stored as a bitmask: bit `j` is set when `s_j` occurs. For a simplex of
/// total dimension `n` every index is `< n`. The word is exactly the set of
/// positions `j` where the associated monotone surjection `[n] -> [n-k]`
/// satisfies `σ(j) = σ(j+1)`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegeneracyWord(u32);

impl DegeneracyWord {
    pub const EMPTY: DegeneracyWord = DegeneracyWord(0);

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        let mut last: Option<usize> = None;
        for &j in indices {
            if j >= 31 {
                return Err(Error::invalid(format!("degeneracy index {j} too large")));
            }
            if let Some(l) = last {
                if j <= l {
                    return Err(Error::invalid("degeneracy indices must be strictly increasing"));
                }
            }
            bits |= 1 << j;
            last = Some(j);
        }
        Ok(DegeneracyWord(bits))
    }

    pub fn from_bits(bits: u32) -> Self {
        DegeneracyWord(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn single(j: usize) -> Self {
        DegeneracyWord(1 << j)
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|j| self.0 & (1 << j) != 0).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The monotone surjection `[n] -> [n - len]` this word denotes.
    pub fn surjection(self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(n + 1);
        let mut v = 0usize;
        out.push(0);
        for j in 0..n {
            if self.0 & (1 << j) == 0 {
                v += 1;
            }
            out.push(v);
        }
        out
    }

    pub fn from_surjection(images: &[usize]) -> Self {
        let mut bits = 0u32;
        for j in 0..images.len().saturating_sub(1) {
            if images[j] == images[j + 1] {
                bits |= 1 << j;
            }
        }
        DegeneracyWord(bits)
    }

    pub fn intersect(self, other: DegeneracyWord) -> DegeneracyWord {
        DegeneracyWord(self.0 & other.0)
    }
}

impl fmt::Debug for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{:?}", self.indices())
    }
}

impl fmt::Display for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|j| j.to_string()).collect();
        write!(f, "s[{}]", parts.join(","))
    }
}

/// A simplex in Eilenberg–Zilber normal form: a nondegenerate simplex
/// together with the degeneracy word applied to it.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    /// Total dimension (nondegenerate dimension plus word length).
    pub dim: u32,
    pub nd: NdId,
    pub word: DegeneracyWord,
}

impl Simplex {
    pub fn nondegenerate(nd: NdId, dim: usize) -> Self {
        Simplex { dim: dim as u32, nd, word: DegeneracyWord::EMPTY }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn nd_dim(&self) -> usize {
        self.dim as usize - self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "#{}", self.nd)
        } else {
            write!(f, "#{}{}", self.nd, self.word)
        }
    }
}

/// Monotone maps `[p] -> [q]` of the simplex category, stored as image lists.
pub mod ops {
    /// `δ_i : [n-1] -> [n]`, skipping `i`.
    pub fn coface(n: usize, i: usize) -> Vec<usize> {
        (0..n).map(|k| if k < i { k } else { k + 1 }).collect()
    }

    /// `σ_j : [n+1] -> [n]`, hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Vec<usize> {
        (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect()
    }

    pub fn identity(n: usize) -> Vec<usize> {
        (0..=n).collect()
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
        inner.iter().map(|&k| outer[k]).collect()
    }

    pub fn is_monotone(map: &[usize]) -> bool {
        map.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_injective(map: &[usize]) -> bool {
        map.windows(2).all(|w| w[0] < w[1])
    }

    /// Epi-mono factorization: returns the image as a bitmask over the
    /// codomain and the surjection onto the image, indexed by rank.
    pub fn factor(map: &[usize]) -> (u64, Vec<usize>) {
        let mut mask = 0u64;
        let mut rho = Vec::with_capacity(map.len());
        let mut rank = 0usize;
        for (k, &v) in map.iter().enumerate() {
            if k > 0 && map[k - 1] != v {
                rank += 1;
            }
            mask |= 1 << v;
            rho.push(rank);
        }
        (mask, rho)
    }

    /// The injection `[r] -> [n]` whose image is `mask`.
    pub fn injection_of_mask(mask: u64) -> Vec<usize> {
        (0..64).filter(|b| mask & (1 << b) != 0).collect()
    }

    /// All monotone maps `[p] -> [q]` in lexicographic order.
    pub fn monotone_maps(p: usize, q: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; p + 1];
        fn rec(pos: usize, lo: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if pos == cur.len() {
                out.push(cur.clone());
                return;
            }
            for v in lo..=q {
                cur[pos] = v;
                rec(pos + 1, v, q, cur, out);
            }
        }
        rec(0, 0, q, &mut cur, &mut out);
        out
    }

    /// Injective monotone maps `[k] -> [n]` in lexicographic order.
    pub fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
        monotone_maps(k, n).into_iter().filter(|m| is_injective(m)).collect()
    }

    /// Surjective monotone maps `[m] -> [k]`.
    pub fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
        monotone_maps(m, k)
            .into_iter()
            .filter(|s| s[0] == 0 && s[m] == k && s.windows(2).all(|w| w[1] <= w[0] + 1))
            .collect()
    }

    /// Decompose `θ : [p] -> [q]` into generators. Returns the faces to
    /// apply (in order, each as `(codomain dimension, index)`) and then the
    /// degeneracies (in order, each as `(codomain dimension, index)`), such
    /// that applying `θ^*` to a `q`-simplex equals applying the face maps
    /// then the degeneracy maps in the listed order.
    pub fn generators(theta: &[usize], q: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let (mask, rho) = factor(theta);
        // Faces: delete missing indices from the top down.
        let mut faces = Vec::new();
        let mut dim = q;
        for i in (0..=q).rev() {
            if mask & (1 << i) == 0 {
                faces.push((dim, i));
                dim -= 1;
            }
        }
        // Degeneracies: ρ = σ_{j_1} ∘ ... ∘ σ_{j_k}, j ascending; ρ^* applies
        // s_{j_1} first.
        let mut degens = Vec::new();
        let r = dim;
        let mut cur = r;
        let repeats: Vec<usize> = (0..rho.len().saturating_sub(1)).filter(|&j| rho[j] == rho[j + 1]).collect();
        for j in repeats {
            degens.push((cur, j));
            cur += 1;
        }
        (faces, degens)
    }
}

#[cfg(test)]
mod tests {
    use super::ops::*;
    use super::*;

    #[test]
    fn word_surjection_round_trip() {
        let w = DegeneracyWord::from_indices(&[0, 2]).unwrap();
        let s = w.surjection(4);
        assert_eq!(s, vec![0, 0, 1, 1, 2]);
        assert_eq!(DegeneracyWord::from_surjection(&s), w);
    }

    #[test]
    fn rejects_non_increasing() {
        assert!(DegeneracyWord::from_indices(&[1, 1]).is_err());
        assert!(DegeneracyWord::from_indices(&[2, 0]).is_err());
    }

    #[test]
    fn monotone_counts() {
        // C(p + q + 1, p + 1)
        assert_eq!(monotone_maps(1, 1).len(), 3);
        assert_eq!(monotone_maps(1, 2).len(), 6);
        assert_eq!(monotone_maps(2, 2).len(), 10);
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(injections(1, 3).len(), 6);
    }

    #[test]
    fn generators_reproduce_theta() {
        // Check by composing cofaces and codegeneracies back together.
        for p in 0..4 {
            for q in 0..4 {
                for theta in monotone_maps(p, q) {
                    let (faces, degens) = generators(&theta, q);
                    // θ^* = (degens applied in order) ∘ (faces applied in order),
                    // so θ = (cofaces composed) ∘ (codegeneracies composed).
                    let mut map = identity(q);
                    for &(n, i) in &faces {
                        map = compose(&map, &coface(n, i));
                    }
                    for &(n, j) in &degens {
                        map = compose(&map, &codegeneracy(n, j));
                    }
                    assert_eq!(map, theta, "p={p} q={q}");
                }
            }
        }
    }
}
