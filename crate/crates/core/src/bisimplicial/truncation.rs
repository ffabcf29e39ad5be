use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::{ops, Limit, Pushout, Quotient, SimplicialMap, SimplicialSet};

/// How a row was constructed, kept so that maps into or out of it can be
/// induced later.
#[derive(Debug, Clone)]
pub enum Presentation {
    Limit(Arc<Limit>),
    Pushout(Arc<Pushout>),
    Quotient(Arc<Quotient>),
    /// A coproduct with its summand inclusions.
    Coproduct(Arc<Vec<SimplicialMap>>),
    /// A subobject of another object's row, with its inclusion.
    Sub(Arc<SimplicialMap>),
}

/// Rows `0..=top` of a bisimplicial set with the Δ-direction generators.
///
/// `faces[n][i] : X_n -> X_{n-1}` for `n ≥ 1`, and `degens[n][j] : X_n ->
/// X_{n+1}` for `n < top`.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub rows: Vec<Arc<SimplicialSet>>,
    pub faces: Vec<Vec<SimplicialMap>>,
    pub degens: Vec<Vec<SimplicialMap>>,
    pub presentations: Vec<Option<Presentation>>,
}

impl Truncation {
    /// Assembles a truncation from rows and a function giving the operator
    /// `θ^* : X_n -> X_m` for a generator `θ : [m] -> [n]`.
    pub fn from_generators(
        rows: Vec<Arc<SimplicialSet>>,
        mut op: impl FnMut(&[usize], usize, usize) -> Result<SimplicialMap>,
    ) -> Result<Truncation> {
        let top = rows.len() - 1;
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let mut fs = Vec::with_capacity(n + 1);
            for i in 0..=n {
                fs.push(op(&ops::coface(n, i), n - 1, n)?);
            }
            faces.push(fs);
        }
        let mut degens = Vec::with_capacity(top);
        for n in 0..top {
            let mut ds = Vec::with_capacity(n + 1);
            for j in 0..=n {
                ds.push(op(&ops::codegeneracy(n, j), n + 1, n)?);
            }
            degens.push(ds);
        }
        let presentations = vec![None; rows.len()];
        Ok(Truncation { rows, faces, degens, presentations })
    }

    pub fn with_presentations(mut self, p: Vec<Option<Presentation>>) -> Self {
        self.presentations = p;
        self
    }

    pub fn limit(&self, n: usize) -> Option<&Arc<Limit>> {
        match &self.presentations[n] {
            Some(Presentation::Limit(l)) => Some(l),
            _ => None,
        }
    }

    pub fn top(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &Arc<SimplicialSet> {
        &self.rows[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &SimplicialMap {
        &self.faces[n][i]
    }

    pub fn degen(&self, n: usize, j: usize) -> &SimplicialMap {
        &self.degens[n][j]
    }

    /// `θ^* : X_n -> X_m` for a monotone `θ : [m] -> [n]` with `m, n ≤ top`.
    pub fn operator(&self, theta: &[usize], n: usize) -> SimplicialMap {
        let (fs, ds) = ops::generators(theta, n);
        let mut map = SimplicialMap::identity(&self.rows[n]);
        for (dim, i) in fs {
            map = map.then(&self.faces[dim][i]);
        }
        for (dim, j) in ds {
            map = map.then(&self.degens[dim][j]);
        }
        map
    }

    /// The iterated degeneracy `X_0 -> X_n`.
    pub fn total_degeneracy(&self, n: usize) -> SimplicialMap {
        self.operator(&vec![0; n + 1], 0)
    }

    /// The vertex operator `X_n -> X_0` for vertex `v`.
    pub fn vertex(&self, n: usize, v: usize) -> SimplicialMap {
        self.operator(&[v], n)
    }

    pub fn restrict(&self, top: usize) -> Truncation {
        Truncation {
            rows: self.rows[..=top].to_vec(),
            faces: self.faces[..=top].to_vec(),
            degens: self.degens[..top].to_vec(),
            presentations: self.presentations[..=top].to_vec(),
        }
    }

    /// Checks the simplicial identities among the Δ-direction generators
    /// and that every generator is a simplicial map between the right rows.
    pub fn verify(&self) -> Result<()> {
        let top = self.top();
        let same = |a: &SimplicialMap, b: &SimplicialMap| a.images() == b.images();
        for n in 1..=top {
            for f in &self.faces[n] {
                f.verify()?;
            }
        }
        for n in 0..top {
            for s in &self.degens[n] {
                s.verify()?;
            }
        }
        // d_i d_j = d_{j-1} d_i on X_n, i < j
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    let a = self.faces[n][j].then(&self.faces[n - 1][i]);
                    let b = self.faces[n][i].then(&self.faces[n - 1][j - 1]);
                    if !same(&a, &b) {
                        return Err(Error::malformed(format!("row {n}: d_{i} d_{j} ≠ d_{} d_{i}", j - 1)));
                    }
                }
            }
        }
        // mixed identities on X_n with s_j : X_n -> X_{n+1}
        for n in 0..top {
            let id = SimplicialMap::identity(&self.rows[n]);
            for j in 0..=n {
                let s = &self.degens[n][j];
                for i in 0..=n + 1 {
                    let lhs = s.then(&self.faces[n + 1][i]);
                    let ok = if i == j || i == j + 1 {
                        same(&lhs, &id)
                    } else if i < j {
                        same(&lhs, &self.faces[n][i].then(&self.degens[n - 1][j - 1]))
                    } else {
                        same(&lhs, &self.faces[n][i - 1].then(&self.degens[n - 1][j]))
                    };
                    if !ok {
                        return Err(Error::malformed(format!("row {n}: d_{i} s_{j} identity fails")));
                    }
                }
                if n + 1 < top {
                    for i in 0..=j {
                        let a = s.then(&self.degens[n + 1][i]);
                        let b = self.degens[n][i].then(&self.degens[n + 1][j + 1]);
                        if !same(&a, &b) {
                            return Err(Error::malformed(format!("row {n}: s_{i} s_{j} identity fails")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Row 0 is a discrete simplicial set.
    pub fn discrete0(&self) -> bool {
        self.rows[0].is_discrete()
    }

    pub fn row_counts(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.counts()).collect()
    }
}
