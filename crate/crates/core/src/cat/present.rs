use std::collections::{BTreeMap, HashMap, HashSet};

use super::category::{Arrow, FiniteCategory};
use super::functor::Functor;
use super::nerve::{chains, Chain};
use super::quiver::Quiver;
use crate::bisimplicial::{BisimplicialMap, BisimplicialSet, Truncation};
use crate::error::{Budget, Error, Result};
use crate::simplicial::{NdId, Simplex, SimplicialMap};

/// Bounds for deciding word equality.
#[derive(Debug, Clone, Copy)]
pub struct RewriteBound {
    pub rules: usize,
    pub length: usize,
}

impl Default for RewriteBound {
    fn default() -> Self {
        RewriteBound { rules: 500, length: 16 }
    }
}

#[derive(Debug, Clone)]
pub enum Decision {
    Decided(FiniteCategory),
    Undecided(String),
}

/// Generators and relations; paths are edge lists in traversal order.
#[derive(Debug, Clone)]
pub struct CategoryPresentation {
    pub quiver: Quiver,
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
    pub status: Decision,
    /// The arrow of each single-edge path when decided.
    normal: HashMap<Vec<usize>, usize>,
    identity_of: Vec<usize>,
}

impl CategoryPresentation {
    pub fn new(quiver: Quiver, relations: Vec<(Vec<usize>, Vec<usize>)>, bound: RewriteBound) -> Result<Self> {
        for (u, v) in &relations {
            let ends = |p: &[usize]| p.first().map(|&e| (quiver.edges[e].src, quiver.edges[*p.last().unwrap()].dst));
            match (ends(u), ends(v)) {
                (Some(a), Some(b)) if a != b => return Err(Error::malformed("relation between non-parallel paths")),
                (Some((s, d)), None) | (None, Some((s, d))) if s != d => return Err(Error::malformed("relation equates a non-loop with an identity")),
                _ => {}
            }
        }
        let mut p = CategoryPresentation { quiver, relations, status: Decision::Undecided(String::new()), normal: HashMap::new(), identity_of: Vec::new() };
        p.decide(bound)?;
        Ok(p)
    }

    pub fn category(&self) -> Option<&FiniteCategory> {
        match &self.status {
            Decision::Decided(c) => Some(c),
            Decision::Undecided(_) => None,
        }
    }

    /// The arrow a path denotes, in the decided case.
    pub fn arrow_of_path(&self, path: &[usize], start: usize) -> Option<usize> {
        if path.is_empty() {
            return self.identity_of.get(start).copied();
        }
        let c = self.category()?;
        let mut a = c.identity(self.quiver.edges[path[0]].src);
        for &e in path {
            a = c.compose(self.normal[&vec![e]], a)?;
        }
        Some(a)
    }

    fn decide(&mut self, bound: RewriteBound) -> Result<()> {
        let q = &self.quiver;
        let rules = if q.find_cycle().is_none() {
            None
        } else {
            match complete(&self.relations, bound) {
                Some(r) => Some(r),
                None => {
                    self.status = Decision::Undecided(format!("rewriting did not complete within {} rules", bound.rules));
                    return Ok(());
                }
            }
        };
        // candidate paths: all paths when acyclic, irreducible ones otherwise
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..q.edges.len()).map(|e| vec![e]).collect();
        let mut len = 1;
        while !frontier.is_empty() {
            if let Some(r) = &rules {
                frontier.retain(|p| reduce(p, r) == *p);
                if len > bound.length && !frontier.is_empty() {
                    self.status = Decision::Undecided(format!("irreducible paths of length {len}; the category may be infinite"));
                    return Ok(());
                }
            }
            paths.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for p in &frontier {
                for e in q.out_of(q.edges[*p.last().unwrap()].dst) {
                    let mut n = p.clone();
                    n.push(e);
                    next.push(n);
                }
            }
            frontier = next;
            len += 1;
        }
        // identify paths: union-find for the acyclic case, normal forms otherwise
        let nv = q.vertices.len();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, p) in paths.iter().enumerate() {
            index.insert(p.clone(), i + nv);
        }
        let mut uf: Vec<usize> = (0..nv + paths.len()).collect();
        let node = |p: &[usize], at: usize| if p.is_empty() { at } else { index[p] };
        if rules.is_none() {
            let empty: Vec<usize> = Vec::new();
            for (u, v) in &self.relations {
                let s = u.first().or(v.first()).map(|&e| q.edges[e].src).unwrap_or(0);
                let t = u.last().or(v.last()).map(|&e| q.edges[e].dst).unwrap_or(s);
                let prefixes: Vec<&Vec<usize>> = std::iter::once(&empty).chain(paths.iter()).filter(|a| a.is_empty() || q.edges[*a.last().unwrap()].dst == s).collect();
                let suffixes: Vec<&Vec<usize>> = std::iter::once(&empty).chain(paths.iter()).filter(|b| b.is_empty() || q.edges[b[0]].src == t).collect();
                for a in &prefixes {
                    for b in &suffixes {
                        let at = a.first().map(|&e| q.edges[e].src).unwrap_or(s);
                        let x = [a.as_slice(), u, b.as_slice()].concat();
                        let y = [a.as_slice(), v, b.as_slice()].concat();
                        union(&mut uf, node(&x, at), node(&y, at));
                    }
                }
            }
        }
        // arrows are classes, ordered by first member
        let mut class_of: BTreeMap<usize, usize> = BTreeMap::new();
        let mut arrows: Vec<Arrow> = Vec::new();
        let mut rep: Vec<Vec<usize>> = Vec::new();
        let mut arrow_of_node = vec![0usize; nv + paths.len()];
        for n in 0..nv + paths.len() {
            let root = find(&mut uf, n);
            let a = *class_of.entry(root).or_insert_with(|| {
                let (name, src, dst, p) = if n < nv {
                    (format!("id_{}", q.vertices[n]), n, n, Vec::new())
                } else {
                    let p = &paths[n - nv];
                    (q.path_name(p), q.edges[p[0]].src, q.edges[*p.last().unwrap()].dst, p.clone())
                };
                arrows.push(Arrow { name, src, dst });
                rep.push(p);
                arrows.len() - 1
            });
            arrow_of_node[n] = a;
        }
        let identities: Vec<usize> = (0..nv).map(|v| arrow_of_node[v]).collect();
        if identities.iter().collect::<HashSet<_>>().len() != nv {
            return Err(Error::malformed("relations identify identities of distinct objects"));
        }
        let arrow_of = |p: &[usize], at: usize| -> usize {
            match &rules {
                None => arrow_of_node[node(p, at)],
                Some(r) => {
                    let nf = reduce(p, r);
                    arrow_of_node[node(&nf, at)]
                }
            }
        };
        let mut comps = Vec::new();
        for (g, pg) in rep.iter().enumerate() {
            for (f, pf) in rep.iter().enumerate() {
                if arrows[f].dst != arrows[g].src {
                    continue;
                }
                let h = arrow_of(&[pf.as_slice(), pg.as_slice()].concat(), arrows[f].src);
                comps.push((g, f, h));
            }
        }
        let c = FiniteCategory::new(format!("tau1({})", q.name), q.vertices.clone(), arrows, identities.clone(), &comps)?;
        for e in 0..q.edges.len() {
            self.normal.insert(vec![e], arrow_of(&[e], q.edges[e].src));
        }
        self.identity_of = identities;
        self.status = Decision::Decided(c);
        Ok(())
    }
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let n = uf[y];
        uf[y] = r;
        y = n;
    }
    r
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        // keep the smaller root so classes are named by their first member
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        uf[hi] = lo;
    }
}

fn shortlex(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

type Rule = (Vec<usize>, Vec<usize>);

fn orient(u: &[usize], v: &[usize]) -> Option<Rule> {
    match shortlex(u, v) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some((u.to_vec(), v.to_vec())),
        std::cmp::Ordering::Less => Some((v.to_vec(), u.to_vec())),
    }
}

fn reduce(w: &[usize], rules: &[Rule]) -> Vec<usize> {
    let mut w = w.to_vec();
    'outer: loop {
        for (l, r) in rules {
            if let Some(i) = w.windows(l.len()).position(|s| s == l.as_slice()) {
                w.splice(i..i + l.len(), r.iter().copied());
                continue 'outer;
            }
        }
        return w;
    }
}

/// Knuth–Bendix completion under shortlex order, `None` if the rule bound is
/// hit first.
fn complete(relations: &[(Vec<usize>, Vec<usize>)], bound: RewriteBound) -> Option<Vec<Rule>> {
    let mut rules: Vec<Rule> = Vec::new();
    let mut pending: Vec<Rule> = relations.iter().filter_map(|(u, v)| orient(u, v)).collect();
    loop {
        while let Some((u, v)) = pending.pop() {
            let (u, v) = (reduce(&u, &rules), reduce(&v, &rules));
            let Some(rule) = orient(&u, &v) else { continue };
            // inter-reduce existing rules against the new one
            let mut kept = Vec::new();
            for (l, r) in rules.drain(..) {
                if l.windows(rule.0.len()).any(|s| s == rule.0.as_slice()) {
                    pending.push((l, r));
                } else {
                    kept.push((l, r));
                }
            }
            rules = kept;
            rules.push(rule);
            let all = rules.clone();
            for r in rules.iter_mut() {
                r.1 = reduce(&r.1, &all);
            }
            if rules.len() > bound.rules {
                return None;
            }
        }
        // critical pairs
        let mut found = false;
        for (l1, r1) in rules.clone() {
            for (l2, r2) in rules.clone() {
                for k in 1..l1.len().min(l2.len() + 1) {
                    // suffix of l1 equals prefix of l2
                    if k <= l2.len() && l1[l1.len() - k..] == l2[..k] {
                        let a = [r1.as_slice(), &l2[k..]].concat();
                        let b = [&l1[..l1.len() - k], r2.as_slice()].concat();
                        let (a, b) = (reduce(&a, &rules), reduce(&b, &rules));
                        if a != b {
                            pending.push((a, b));
                            found = true;
                        }
                    }
                }
                // l2 inside l1
                if l2.len() < l1.len() && l1.windows(l2.len()).any(|s| s == l2.as_slice()) {
                    let i = l1.windows(l2.len()).position(|s| s == l2.as_slice()).unwrap();
                    let b = [&l1[..i], r2.as_slice(), &l1[i + l2.len()..]].concat();
                    let (a, b) = (reduce(&r1, &rules), reduce(&b, &rules));
                    if a != b {
                        pending.push((a, b));
                        found = true;
                    }
                }
            }
        }
        if !found {
            return Some(rules);
        }
    }
}

/// Data of a levelwise discrete object through row 2.
struct Discrete {
    trunc: std::sync::Arc<Truncation>,
    /// Row-1 generator index of each row-1 point, `None` for identities.
    generator: Vec<Option<usize>>,
}

fn discrete_rows(x: &BisimplicialSet, window: usize, budget: Budget) -> Result<Discrete> {
    let t = x.rows(window.max(2), budget)?;
    for (n, r) in t.rows.iter().enumerate() {
        if r.top_dim().map(|d| d > 0).unwrap_or(false) {
            return Err(Error::Unsupported(format!("tau1 needs levelwise discrete input; row {n} of {} is not discrete", x.name())));
        }
    }
    let s0 = &t.degens[0][0];
    let degenerate: HashSet<NdId> = t.rows[0].ids().map(|v| s0.image(v).nd).collect();
    let mut next = 0;
    let generator = t.rows[1]
        .ids()
        .map(|p| {
            if degenerate.contains(&p) {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect();
    Ok(Discrete { trunc: t, generator })
}

fn point(f: &SimplicialMap, p: NdId) -> NdId {
    f.image(p).nd
}

/// `τ_1 X`: objects are row-0 points, generators the Δ-nondegenerate row-1
/// points, and each row-2 point `σ` imposes `d_1σ = d_0σ ∘ d_2σ`.
pub fn tau1(x: &BisimplicialSet, bound: RewriteBound, budget: Budget) -> Result<CategoryPresentation> {
    let d = discrete_rows(x, 2, budget)?;
    let t = &d.trunc;
    let mut q = Quiver::new(x.name().to_string());
    for v in t.rows[0].ids() {
        q.add_vertex(v.to_string());
    }
    for p in t.rows[1].ids() {
        if d.generator[p as usize].is_some() {
            q.add_edge(format!("e{p}"), point(t.face(1, 1), p) as usize, point(t.face(1, 0), p) as usize);
        }
    }
    let path = |p: NdId| -> Vec<usize> { d.generator[p as usize].into_iter().collect() };
    let mut relations = Vec::new();
    let mut seen = HashSet::new();
    for s in t.rows[2].ids() {
        let (d0, d1, d2) = (point(t.face(2, 0), s), point(t.face(2, 1), s), point(t.face(2, 2), s));
        let lhs = path(d1);
        let rhs = [path(d2), path(d0)].concat();
        if lhs != rhs && seen.insert((lhs.clone(), rhs.clone())) {
            relations.push((lhs, rhs));
        }
    }
    CategoryPresentation::new(q, relations, bound)
}

/// The unit `X -> nerve(τ_1 X)^t` through `window`.
pub fn tau1_unit(x: &BisimplicialSet, p: &CategoryPresentation, nerve: &BisimplicialSet, window: usize, budget: Budget) -> Result<BisimplicialMap> {
    let c = p.category().ok_or_else(|| Error::Unsupported("presentation is undecided".into()))?;
    let d = discrete_rows(x, window, budget)?;
    let nt = nerve.rows(window, budget)?;
    let rows = (0..=window)
        .map(|n| {
            let index: HashMap<Chain, u32> = chains(c, n).into_iter().enumerate().map(|(i, ch)| (ch, i as u32)).collect();
            let images = d.trunc.rows[n]
                .ids()
                .map(|s| {
                    let start = point(&d.trunc.operator(&[0], n), s) as usize;
                    let arrows = (0..n)
                        .map(|i| {
                            let e = point(&d.trunc.operator(&[i, i + 1], n), s);
                            let v = point(&d.trunc.operator(&[i], n), s) as usize;
                            let path: Vec<usize> = d.generator[e as usize].into_iter().collect();
                            p.arrow_of_path(&path, v).expect("decided")
                        })
                        .collect();
                    let ch = Chain { start, arrows };
                    index.get(&ch).map(|&i| Simplex::nondegenerate(i, 0)).ok_or_else(|| Error::malformed("unit lands outside the nerve"))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SimplicialMap::from_images_unchecked(d.trunc.rows[n].clone(), nt.rows[n].clone(), images))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BisimplicialMap::stored(x, nerve, rows))
}

/// The functor `τ_1 X -> D` adjunct to `g : X -> nerve(D)^t`.
pub fn tau1_adjunct(g: &BisimplicialMap, p: &CategoryPresentation, tau: &std::sync::Arc<FiniteCategory>, d: &std::sync::Arc<FiniteCategory>, budget: Budget) -> Result<Functor> {
    let x = &g.source;
    let dr = discrete_rows(x, 2, budget)?;
    let g0 = g.row(0, budget)?;
    let g1 = g.row(1, budget)?;
    let c0 = chains(d, 0);
    let c1 = chains(d, 1);
    let objects: Vec<usize> = dr.trunc.rows[0].ids().map(|v| c0[point(&g0, v) as usize].start).collect();
    let mut arrows: Vec<Option<usize>> = vec![None; tau.num_arrows()];
    for (o, &i) in p.identity_of.iter().enumerate() {
        arrows[i] = Some(d.identity(objects[o]));
    }
    let mut gen_image = HashMap::new();
    for e in dr.trunc.rows[1].ids() {
        if let Some(k) = dr.generator[e as usize] {
            gen_image.insert(k, c1[point(&g1, e) as usize].arrows[0]);
        }
    }
    // every arrow is a composite of generators along a representative path
    for a in 0..tau.num_arrows() {
        if arrows[a].is_some() {
            continue;
        }
        let path = representative(p, a).ok_or_else(|| Error::malformed("arrow without a representative path"))?;
        let mut img = d.identity(objects[tau.src(a)]);
        for e in path {
            img = d.compose(gen_image[&e], img).ok_or_else(|| Error::malformed("images are not composable"))?;
        }
        arrows[a] = Some(img);
    }
    Functor::new(tau, d, objects, arrows.into_iter().map(Option::unwrap).collect())
}

fn representative(p: &CategoryPresentation, a: usize) -> Option<Vec<usize>> {
    let c = p.category()?;
    let q = &p.quiver;
    let mut frontier: Vec<Vec<usize>> = q.out_of(c.src(a)).map(|e| vec![e]).collect();
    for _ in 0..=q.edges.len().max(p.relations.iter().map(|r| r.0.len().max(r.1.len())).max().unwrap_or(0)) + c.num_arrows() {
        for path in &frontier {
            if p.arrow_of_path(path, c.src(a)) == Some(a) {
                return Some(path.clone());
            }
        }
        frontier = frontier.iter().flat_map(|path| q.out_of(q.edges[*path.last().unwrap()].dst).map(move |e| [path.as_slice(), &[e]].concat())).collect();
    }
    None
}
