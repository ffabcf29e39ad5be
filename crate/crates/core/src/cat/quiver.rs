use std::collections::HashMap;

use super::category::{Arrow, FiniteCategory};
use crate::bisimplicial::{BisimplicialSet, DiscreteSource};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quiver {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Quiver {
    pub fn new(name: impl Into<String>) -> Self {
        Quiver { name: name.into(), ..Default::default() }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, name: impl Into<String>, src: usize, dst: usize) -> usize {
        self.edges.push(Edge { name: name.into(), src, dst });
        self.edges.len() - 1
    }

    /// The linear quiver `0 -> 1 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        let mut q = Quiver::new(format!("linear{n}"));
        for i in 0..=n {
            q.add_vertex(i.to_string());
        }
        for i in 1..=n {
            q.add_edge(format!("e{i}"), i - 1, i);
        }
        q
    }

    pub fn out_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].src == v)
    }

    /// Some directed cycle as a list of edges, if there is one.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        // 0 unvisited, 1 on stack, 2 done
        let mut state = vec![0u8; self.vertices.len()];
        let mut stack: Vec<usize> = Vec::new();
        for v in 0..self.vertices.len() {
            if state[v] == 0 {
                if let Some(c) = self.cycle_from(v, &mut state, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }

    fn cycle_from(&self, v: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[v] = 1;
        for e in self.out_of(v) {
            let d = self.edges[e].dst;
            stack.push(e);
            if state[d] == 1 {
                let start = stack.iter().position(|&f| self.edges[f].src == d).unwrap();
                return Some(stack[start..].to_vec());
            }
            if state[d] == 0 {
                if let Some(c) = self.cycle_from(d, state, stack) {
                    return Some(c);
                }
            }
            stack.pop();
        }
        state[v] = 2;
        None
    }

    /// Every path of length `1..=max_len`, as edge lists in traversal order.
    pub fn paths(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..self.edges.len()).map(|e| vec![e]).collect();
        for _ in 0..max_len {
            if frontier.is_empty() {
                break;
            }
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for p in &frontier {
                let at = self.edges[*p.last().unwrap()].dst;
                for e in self.out_of(at) {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
            frontier = next;
        }
        out
    }

    pub fn path_name(&self, p: &[usize]) -> String {
        p.iter().rev().map(|&e| self.edges[e].name.as_str()).collect::<Vec<_>>().join(".")
    }

    pub(crate) fn cycle_description(&self, c: &[usize]) -> String {
        let names: Vec<&str> = c.iter().map(|&e| self.edges[e].name.as_str()).collect();
        format!("cycle {} at vertex {}", names.join(" "), self.vertices[self.edges[c[0]].src])
    }
}

/// The free category on an acyclic quiver; arrows are identities followed by
/// paths in order of length. A composite path is named `g.f` for `g ∘ f`.
pub fn free_category(q: &Quiver) -> Result<FiniteCategory> {
    if let Some(c) = q.find_cycle() {
        return Err(Error::NonTermination(format!("free category on {} has infinitely many arrows: {}", q.name, q.cycle_description(&c))));
    }
    let paths = q.paths(q.edges.len());
    let mut arrows: Vec<Arrow> = q.vertices.iter().enumerate().map(|(v, o)| Arrow { name: format!("id_{o}"), src: v, dst: v }).collect();
    let identities: Vec<usize> = (0..q.vertices.len()).collect();
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    for p in &paths {
        index.insert(p.as_slice(), arrows.len());
        arrows.push(Arrow { name: q.path_name(p), src: q.edges[p[0]].src, dst: q.edges[*p.last().unwrap()].dst });
    }
    let mut comps = Vec::new();
    for f in &paths {
        for g in &paths {
            if q.edges[*f.last().unwrap()].dst == q.edges[g[0]].src {
                let h: Vec<usize> = f.iter().chain(g.iter()).copied().collect();
                comps.push((index[g.as_slice()], index[f.as_slice()], index[h.as_slice()]));
            }
        }
    }
    FiniteCategory::new(format!("free({})", q.name), q.vertices.clone(), arrows, identities, &comps)
}

/// An element of `Ψ_k`: a start object and composable words, each a list of
/// edge indices of the spine quiver (empty for an identity).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Words {
    pub start: usize,
    pub words: Vec<Vec<usize>>,
}

impl Words {
    pub fn length(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }
}

pub(crate) struct PsiSource {
    pub quiver: Quiver,
    pub objects: Vec<usize>,
    pub k: usize,
}

impl PsiSource {
    pub(crate) fn new(objects: &[usize], k: usize) -> Self {
        let top = objects.iter().copied().max().unwrap_or(0);
        let mut quiver = Quiver::new("spine");
        for o in 0..=top {
            quiver.add_vertex(o.to_string());
        }
        for i in 1..objects.len() {
            quiver.add_edge(format!("e{i}"), objects[i - 1], objects[i]);
        }
        PsiSource { quiver, objects: objects.to_vec(), k }
    }

    fn end(&self, from: usize, w: &[usize]) -> usize {
        w.last().map(|&e| self.quiver.edges[e].dst).unwrap_or(from)
    }

    fn extend(&self, at: usize, remaining: usize, left: usize, cur: &mut Words, out: &mut Vec<Words>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        // words from `at` of length 0..=left
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        words.extend(self.quiver.paths(left).into_iter().filter(|p| self.quiver.edges[p[0]].src == at));
        for w in words {
            let end = self.end(at, &w);
            let len = w.len();
            cur.words.push(w);
            self.extend(end, remaining - 1, left - len, cur, out);
            cur.words.pop();
        }
    }
}

impl DiscreteSource for PsiSource {
    type Elem = Words;

    fn elements(&self, m: usize) -> Vec<Words> {
        let mut out = Vec::new();
        for o in 0..self.quiver.vertices.len() {
            let mut cur = Words { start: o, words: Vec::new() };
            self.extend(o, m, self.k, &mut cur, &mut out);
        }
        out
    }

    fn act(&self, theta: &[usize], x: &Words) -> Words {
        let mut objs = vec![x.start];
        for w in &x.words {
            objs.push(self.end(*objs.last().unwrap(), w));
        }
        let words = theta.windows(2).map(|p| x.words[p[0]..p[1]].concat()).collect();
        Words { start: objs[theta[0]], words }
    }

    fn skeletal_bound(&self) -> Option<usize> {
        Some(self.k)
    }

    fn virtual_spec(&self) -> Option<String> {
        let objs: Vec<String> = self.objects.iter().map(|o| o.to_string()).collect();
        Some(format!("bss-virtual psi {} {}\n", self.k, objs.join(" ")))
    }
}

/// The stage `Ψ_k G(n)^t_x` for `x = (x_0, ..., x_n)`: row `m` holds the
/// `m`-tuples of composable words in the `e_i : x_{i-1} -> x_i` of total
/// length at most `k`. The object set is `0..=max(x)`.
pub fn psi_filtration(objects: &[usize], k: usize) -> Result<BisimplicialSet> {
    if k == 0 {
        return Err(Error::invalid("the filtration starts at stage 1"));
    }
    if objects.is_empty() {
        return Err(Error::invalid("empty object tuple"));
    }
    let name = format!("psi{k}({})", objects.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(","));
    Ok(BisimplicialSet::discrete(name, PsiSource::new(objects, k)))
}

/// The words of `Ψ_k` as chains, for inclusion maps between stages.
pub fn psi_elements(objects: &[usize], k: usize, m: usize) -> Vec<Words> {
    PsiSource::new(objects, k).elements(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;

    #[test]
    fn free_categories() {
        assert_eq!(free_category(&Quiver::linear(2)).unwrap().num_arrows(), 6);
        let mut q = Quiver::new("pt");
        q.add_vertex("x");
        assert_eq!(free_category(&q).unwrap().num_arrows(), 1);
        q.add_edge("l", 0, 0);
        assert!(matches!(free_category(&q), Err(Error::NonTermination(m)) if m.contains("cycle l")));
    }

    #[test]
    fn psi_stages() {
        let b = Budget::default();
        let s1 = psi_filtration(&[0, 1, 2], 1).unwrap().rows(2, b).unwrap();
        assert_eq!(s1.rows[1].len(), 5);
        let s2 = psi_filtration(&[0, 1, 2], 2).unwrap().rows(2, b).unwrap();
        s2.verify().unwrap();
        assert_eq!(s2.rows[1].len(), 6);
        // (e1 | e2) joins the degenerate pairs
        let e: Vec<Words> = psi_elements(&[0, 1, 2], 2, 2);
        assert!(e.contains(&Words { start: 0, words: vec![vec![0], vec![1]] }));
    }
}
