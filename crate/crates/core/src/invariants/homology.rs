use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Result};
use crate::simplicial::{NdId, SimplicialSet};

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with
/// `t_1 | t_2 | … | t_k` and every `t_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupPresentation {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroupPresentation {
    pub fn free(rank: usize) -> Self {
        AbelianGroupPresentation { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Connected components of the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Components {
    /// Component index of each vertex, indexed by simplex id (entries for
    /// higher simplices are unused); components are numbered by their
    /// smallest vertex.
    pub of_vertex: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn component_of(&self, x: &SimplicialSet, id: NdId) -> usize {
        let v = x.vertex_list(x.nd(id))[0];
        self.of_vertex[v as usize]
    }

    /// Vertices grouped by component.
    pub fn classes(&self) -> Vec<Vec<NdId>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.of_vertex.iter().enumerate() {
            if c != usize::MAX {
                out[c].push(v as NdId);
            }
        }
        out
    }
}

pub fn pi0(x: &SimplicialSet) -> Components {
    let n = x.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for &e in x.nd_of_dim(1) {
        let f = x.faces_of(e);
        let (a, b) = (find(&mut parent, f[0].nd as usize), find(&mut parent, f[1].nd as usize));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut of_vertex = vec![usize::MAX; n];
    let mut count = 0;
    for &v in x.vertices() {
        let r = find(&mut parent, v as usize);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        of_vertex[v as usize] = label[r];
    }
    Components { of_vertex, count }
}

/// Integral homology of the normalized chain complex, degrees `0..=max_deg`.
pub fn homology(x: &Arc<SimplicialSet>, max_deg: usize, budget: Budget) -> Result<Vec<AbelianGroupPresentation>> {
    // factors[d] = invariant factors of ∂_d : C_d -> C_{d-1}
    let mut factors: Vec<Vec<u64>> = vec![Vec::new()];
    for d in 1..=max_deg + 1 {
        let cells = x.nd_of_dim(d - 1).len().saturating_mul(x.nd_of_dim(d).len());
        budget.check_size("homology", cells, d)?;
        factors.push(smith_invariants(boundary_matrix(x, d)));
    }
    Ok((0..=max_deg)
        .map(|d| AbelianGroupPresentation {
            rank: x.nd_of_dim(d).len() - factors[d].len() - factors[d + 1].len(),
            torsion: factors[d + 1].iter().copied().filter(|&t| t > 1).collect(),
        })
        .collect())
}

fn boundary_matrix(x: &SimplicialSet, d: usize) -> Vec<Vec<i128>> {
    if d == 0 {
        return Vec::new();
    }
    let rows = x.nd_of_dim(d - 1);
    let pos: std::collections::HashMap<NdId, usize> = rows.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let cols = x.nd_of_dim(d);
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (c, &id) in cols.iter().enumerate() {
        for (i, f) in x.faces_of(id).iter().enumerate() {
            if f.is_degenerate() {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m[pos[&f.nd]][c] += sign;
        }
    }
    m
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_invariants(mut m: Vec<Vec<i128>>) -> Vec<u64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.map(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()).unwrap_or(true) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for i in t..rows {
                        m[i][j] -= q * m[i][t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must divide the rest of the block
                let mut fix = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if m[i][j] % p != 0 {
                            fix = Some(i);
                            break 'scan;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        for j in t..cols {
                            let v = m[i][j];
                            m[t][j] += v;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag.sort_unstable();
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, horn, simplex};

    #[test]
    fn components() {
        assert_eq!(pi0(&boundary(2).set).count, 1);
        assert_eq!(pi0(&SimplicialSet::discrete(2)).count, 2);
        assert_eq!(pi0(&horn(2, 1).unwrap().set).count, 1);
        assert_eq!(pi0(&SimplicialSet::empty()).count, 0);
    }

    #[test]
    fn spheres_and_simplices() {
        let b = Budget::default();
        let h = homology(&simplex(2), 3, b).unwrap();
        assert_eq!(h[0], AbelianGroupPresentation::free(1));
        assert!(h[1..].iter().all(|g| g.is_trivial()));
        let h = homology(&boundary(3).set, 3, b).unwrap();
        assert_eq!(h, vec![AbelianGroupPresentation::free(1), AbelianGroupPresentation::free(0), AbelianGroupPresentation::free(1), AbelianGroupPresentation::free(0)]);
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(smith_invariants(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_invariants(vec![vec![2, 4], vec![4, 8]]), vec![2]);
        assert_eq!(smith_invariants(vec![vec![0, 0]]), Vec::<u64>::new());
    }
}
