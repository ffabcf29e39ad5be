use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category with an explicit composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    identities: Vec<usize>,
    // table[g * |arrows| + f] = g ∘ f when src g = dst f
    table: Vec<Option<usize>>,
}

impl FiniteCategory {
    /// Builds and validates a category from its composition triples
    /// `(g, f, g ∘ f)`. Composites with an identity may be omitted.
    pub fn new(name: impl Into<String>, objects: Vec<String>, arrows: Vec<Arrow>, identities: Vec<usize>, compositions: &[(usize, usize, usize)]) -> Result<Self> {
        let na = arrows.len();
        if identities.len() != objects.len() {
            return Err(Error::malformed("one identity per object is required"));
        }
        for a in &arrows {
            if a.src >= objects.len() || a.dst >= objects.len() {
                return Err(Error::malformed(format!("arrow {} has an unknown endpoint", a.name)));
            }
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= na || arrows[i].src != x || arrows[i].dst != x {
                return Err(Error::malformed(format!("identity of object {} is not an endomorphism of it", objects[x])));
            }
        }
        let mut table = vec![None; na * na];
        for &(g, f, h) in compositions {
            if g >= na || f >= na || h >= na {
                return Err(Error::malformed("composition refers to an unknown arrow"));
            }
            if arrows[g].src != arrows[f].dst {
                return Err(Error::malformed(format!("{} ∘ {} is not composable", arrows[g].name, arrows[f].name)));
            }
            if arrows[h].src != arrows[f].src || arrows[h].dst != arrows[g].dst {
                return Err(Error::malformed(format!("{} ∘ {} has the wrong endpoints", arrows[g].name, arrows[f].name)));
            }
            if let Some(old) = table[g * na + f].replace(h) {
                if old != h {
                    return Err(Error::malformed(format!("{} ∘ {} given twice", arrows[g].name, arrows[f].name)));
                }
            }
        }
        for (a, arr) in arrows.iter().enumerate() {
            for (idx, id) in [(identities[arr.dst], a), (a, identities[arr.src])] {
                let slot = &mut table[idx * na + id];
                match *slot {
                    None => *slot = Some(a),
                    Some(h) if h == a => {}
                    Some(_) => return Err(Error::malformed(format!("unit law fails at {}", arr.name))),
                }
            }
        }
        let c = FiniteCategory { name: name.into(), objects, arrows, identities, table };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let na = self.arrows.len();
        for g in 0..na {
            for f in 0..na {
                let composable = self.arrows[g].src == self.arrows[f].dst;
                if composable != self.table[g * na + f].is_some() {
                    return Err(Error::malformed(format!("composite {} ∘ {} missing", self.arrows[g].name, self.arrows[f].name)));
                }
            }
        }
        for h in 0..na {
            for g in self.into_arrows(self.arrows[h].src) {
                for f in self.into_arrows(self.arrows[g].src) {
                    let a = self.compose(h, self.compose(g, f).unwrap()).unwrap();
                    let b = self.compose(self.compose(h, g).unwrap(), f).unwrap();
                    if a != b {
                        return Err(Error::malformed(format!(
                            "associativity fails at ({}, {}, {})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.arrows.len() + f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identities[self.arrows[a].src] == a
    }

    pub fn src(&self, a: usize) -> usize {
        self.arrows[a].src
    }

    pub fn dst(&self, a: usize) -> usize {
        self.arrows[a].dst
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].src == x && self.arrows[a].dst == y).collect()
    }

    pub fn out_of(&self, x: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].src == x).collect()
    }

    pub fn into_arrows(&self, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].dst == y).collect()
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        let (x, y) = (self.src(a), self.dst(a));
        self.hom(y, x)
            .into_iter()
            .find(|&b| self.compose(b, a) == Some(self.identity(x)) && self.compose(a, b) == Some(self.identity(y)))
    }

    pub fn is_iso(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    /// Length of the longest chain of composable non-identity arrows, or
    /// `None` when such chains are unbounded.
    pub fn longest_chain(&self) -> Option<usize> {
        let n = self.objects.len();
        let edges: Vec<(usize, usize)> = (0..self.arrows.len()).filter(|&a| !self.is_identity(a)).map(|a| (self.src(a), self.dst(a))).collect();
        longest_path(n, &edges)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn object_by_name(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// All composition triples `(g, f, g ∘ f)`.
    pub fn compositions(&self) -> Vec<(usize, usize, usize)> {
        let na = self.arrows.len();
        let mut out = Vec::new();
        for g in 0..na {
            for f in 0..na {
                if let Some(h) = self.table[g * na + f] {
                    out.push((g, f, h));
                }
            }
        }
        out
    }

    /// The poset `[n] = {0 < 1 < ... < n}`.
    pub fn poset(n: usize) -> Self {
        let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                index.insert((i, j), arrows.len());
                arrows.push(Arrow { name: format!("{i}{j}"), src: i, dst: j });
            }
        }
        let identities = (0..=n).map(|i| index[&(i, i)]).collect();
        let mut comps = Vec::new();
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    comps.push((index[&(j, k)], index[&(i, j)], index[&(i, k)]));
                }
            }
        }
        FiniteCategory::new(format!("[{n}]"), objects, arrows, identities, &comps).expect("poset")
    }

    pub fn terminal() -> Self {
        FiniteCategory::discrete(1).renamed("terminal")
    }

    /// `k` objects and only identities.
    pub fn discrete(k: usize) -> Self {
        let objects: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let arrows = (0..k).map(|i| Arrow { name: format!("id{i}"), src: i, dst: i }).collect();
        FiniteCategory::new(format!("discrete{k}"), objects, arrows, (0..k).collect(), &[]).expect("discrete")
    }

    /// `C_k`: `k` objects with exactly one arrow between any two.
    pub fn codiscrete(k: usize) -> Self {
        let objects: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let arrows = (0..k).flat_map(|i| (0..k).map(move |j| Arrow { name: format!("{i}{j}"), src: i, dst: j })).collect();
        let identities = (0..k).map(|i| i * k + i).collect();
        let mut comps = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    comps.push((j * k + l, i * k + j, i * k + l));
                }
            }
        }
        FiniteCategory::new(format!("C{k}"), objects, arrows, identities, &comps).expect("codiscrete")
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Disjoint union.
    pub fn coproduct(&self, other: &FiniteCategory) -> Self {
        let (no, na) = (self.objects.len(), self.arrows.len());
        let mut objects: Vec<String> = self.objects.iter().map(|o| format!("a.{o}")).collect();
        objects.extend(other.objects.iter().map(|o| format!("b.{o}")));
        let mut arrows: Vec<Arrow> = self.arrows.iter().map(|a| Arrow { name: format!("a.{}", a.name), ..a.clone() }).collect();
        arrows.extend(other.arrows.iter().map(|a| Arrow { name: format!("b.{}", a.name), src: a.src + no, dst: a.dst + no }));
        let mut identities = self.identities.clone();
        identities.extend(other.identities.iter().map(|i| i + na));
        let mut comps = self.compositions();
        comps.extend(other.compositions().into_iter().map(|(g, f, h)| (g + na, f + na, h + na)));
        FiniteCategory::new(format!("{}+{}", self.name, other.name), objects, arrows, identities, &comps).expect("coproduct")
    }
}

/// Longest path in a directed graph, `None` if it has a cycle.
pub(crate) fn longest_path(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut indeg = vec![0usize; n];
    for &(_, d) in edges {
        indeg[d] += 1;
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut k = 0;
    while k < order.len() {
        let v = order[k];
        k += 1;
        for &(s, d) in edges {
            if s == v {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    order.push(d);
                }
            }
        }
    }
    if order.len() < n {
        return None;
    }
    let mut best = vec![0usize; n];
    for &v in &order {
        for &(s, d) in edges {
            if s == v {
                best[d] = best[d].max(best[v] + 1);
            }
        }
    }
    Some(best.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_categories() {
        let p = FiniteCategory::poset(2);
        assert_eq!(p.num_arrows(), 6);
        assert_eq!(p.longest_chain(), Some(2));
        let c = FiniteCategory::codiscrete(2);
        assert_eq!(c.num_arrows(), 4);
        assert!((0..4).all(|a| c.is_iso(a)));
        assert_eq!(c.longest_chain(), None);
        assert_eq!(FiniteCategory::terminal().num_arrows(), 1);
    }

    #[test]
    fn rejects_non_associative_table() {
        // a loop e with e∘e = id would be fine; declaring e∘e = e and e∘e = id conflicts
        let objects = vec!["x".to_string()];
        let arrows = vec![Arrow { name: "id".into(), src: 0, dst: 0 }, Arrow { name: "e".into(), src: 0, dst: 0 }];
        assert!(FiniteCategory::new("bad", objects.clone(), arrows.clone(), vec![0], &[(1, 1, 1), (1, 1, 0)]).is_err());
        assert!(FiniteCategory::new("ok", objects, arrows, vec![0], &[(1, 1, 1)]).is_ok());
    }
}
