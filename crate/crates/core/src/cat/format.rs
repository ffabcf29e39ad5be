//! The CAT v1 text format.
//!
//! ```text
//! cat <name>
//! object <id>
//! arrow <id> : <src> -> <dst>
//! id <obj> = <arrow-id>
//! compose <g> <f> = <h>
//!
//! scat <name>
//! object <id>
//! hom <x> <y>
//! sset <label>
//! ...
//! id <obj> = <vertex-id>
//! compose <x> <y> <z> : <g> s[..] ; <f> s[..] = <h> s[..]
//!
//! functor <name> : <cat> -> <cat>
//! fobj <x> = <y>
//! farrow <a> = <b>
//!
//! sfunctor <name> : <scat> -> <scat>
//! fobj <x> = <y>
//! fhom <x> <y>
//! map <id> = <id> [s[..]]
//!
//! quiver <name>
//! vertex <id>
//! edge <id> : <src> -> <dst>
//! ```
//!
//! A document holds any number of blocks; functors refer to categories
//! declared earlier in the same document.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::category::{Arrow, FiniteCategory};
use super::functor::Functor;
use super::quiver::Quiver;
use super::scat::{FiniteSimplicialCategory, SimplicialFunctor};
use crate::bisimplicial::format::{canonical_ids, emit_map, parse_map};
use crate::error::{Budget, Error, Result};
use crate::format::{parse_num, Cursor};
use crate::simplicial::format::{emit_body, parse_body, parse_word};
use crate::simplicial::{NdId, Simplex, SimplicialMap, SimplicialSet};

#[derive(Debug, Clone, Default)]
pub struct CatDocument {
    pub categories: Vec<Arc<FiniteCategory>>,
    pub scats: Vec<Arc<FiniteSimplicialCategory>>,
    pub functors: Vec<(String, Functor)>,
    pub sfunctors: Vec<(String, SimplicialFunctor)>,
    pub quivers: Vec<Quiver>,
}

impl CatDocument {
    pub fn category(&self, name: &str) -> Option<&Arc<FiniteCategory>> {
        self.categories.iter().find(|c| c.name == name)
    }

    pub fn scat(&self, name: &str) -> Option<&Arc<FiniteSimplicialCategory>> {
        self.scats.iter().find(|c| c.name == name)
    }
}

pub fn emit_cat(c: &FiniteCategory) -> String {
    let mut out = String::new();
    writeln!(out, "cat {}", c.name).unwrap();
    for o in &c.objects {
        writeln!(out, "object {o}").unwrap();
    }
    for a in &c.arrows {
        writeln!(out, "arrow {} : {} -> {}", a.name, c.objects[a.src], c.objects[a.dst]).unwrap();
    }
    for x in 0..c.num_objects() {
        writeln!(out, "id {} = {}", c.objects[x], c.arrows[c.identity(x)].name).unwrap();
    }
    for (g, f, h) in c.compositions() {
        if c.is_identity(g) || c.is_identity(f) {
            continue;
        }
        writeln!(out, "compose {} {} = {}", c.arrows[g].name, c.arrows[f].name, c.arrows[h].name).unwrap();
    }
    out
}

fn simplex_token(s: Simplex, ids: &[NdId]) -> String {
    format!("{} {}", ids[s.nd as usize], s.word)
}

pub fn emit_scat(c: &FiniteSimplicialCategory) -> String {
    let n = c.num_objects();
    let mut out = String::new();
    writeln!(out, "scat {}", c.name).unwrap();
    for o in &c.objects {
        writeln!(out, "object {o}").unwrap();
    }
    let ids: Vec<Vec<Vec<NdId>>> = (0..n).map(|x| (0..n).map(|y| canonical_ids(c.hom(x, y))).collect()).collect();
    for x in 0..n {
        for y in 0..n {
            writeln!(out, "hom {} {}", c.objects[x], c.objects[y]).unwrap();
            writeln!(out, "sset h").unwrap();
            emit_body(&mut out, c.hom(x, y));
        }
    }
    for x in 0..n {
        writeln!(out, "id {} = {}", c.objects[x], ids[x][x][c.identity(x) as usize]).unwrap();
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for (g, f, h) in c.composition_table(x, y, z) {
                    writeln!(
                        out,
                        "compose {} {} {} : {} ; {} = {}",
                        c.objects[x],
                        c.objects[y],
                        c.objects[z],
                        simplex_token(g, &ids[y][z]),
                        simplex_token(f, &ids[x][y]),
                        simplex_token(h, &ids[x][z])
                    )
                    .unwrap();
                }
            }
        }
    }
    out
}

pub fn emit_functor(name: &str, f: &Functor) -> String {
    let mut out = String::new();
    writeln!(out, "functor {name} : {} -> {}", f.source.name, f.target.name).unwrap();
    for (x, &y) in f.objects.iter().enumerate() {
        writeln!(out, "fobj {} = {}", f.source.objects[x], f.target.objects[y]).unwrap();
    }
    for (a, &b) in f.arrows.iter().enumerate() {
        writeln!(out, "farrow {} = {}", f.source.arrows[a].name, f.target.arrows[b].name).unwrap();
    }
    out
}

pub fn emit_sfunctor(name: &str, f: &SimplicialFunctor) -> String {
    let mut out = String::new();
    writeln!(out, "sfunctor {name} : {} -> {}", f.source.name, f.target.name).unwrap();
    for (x, &y) in f.objects.iter().enumerate() {
        writeln!(out, "fobj {} = {}", f.source.objects[x], f.target.objects[y]).unwrap();
    }
    let n = f.source.num_objects();
    for x in 0..n {
        for y in 0..n {
            writeln!(out, "fhom {} {}", f.source.objects[x], f.source.objects[y]).unwrap();
            let m = &f.homs[x][y];
            emit_map(&mut out, m, &canonical_ids(&m.source), &canonical_ids(&m.target));
        }
    }
    out
}

pub fn emit_quiver(q: &Quiver) -> String {
    let mut out = String::new();
    writeln!(out, "quiver {}", q.name).unwrap();
    for v in &q.vertices {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in &q.edges {
        writeln!(out, "edge {} : {} -> {}", e.name, q.vertices[e.src], q.vertices[e.dst]).unwrap();
    }
    out
}

fn name_of(n: usize, w: &[&str]) -> Result<String> {
    w.get(1).map(|s| s.to_string()).ok_or_else(|| Error::parse(n, "missing name"))
}

fn parse_category(cur: &mut Cursor, header: usize, name: String) -> Result<FiniteCategory> {
    let mut objects: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut ids: Vec<Option<usize>> = Vec::new();
    let mut comps = Vec::new();
    let mut obj_ix: HashMap<String, usize> = HashMap::new();
    let mut arr_ix: HashMap<String, usize> = HashMap::new();
    while let Some(kw) = cur.peek_keyword() {
        match kw {
            "object" => {
                let (n, w) = cur.expect("object")?;
                let o = name_of(n, &w)?;
                if obj_ix.insert(o.clone(), objects.len()).is_some() {
                    return Err(Error::parse(n, format!("duplicate object `{o}`")));
                }
                objects.push(o);
                ids.push(None);
            }
            "arrow" => {
                let (n, w) = cur.expect("arrow")?;
                if w.len() != 6 || w[2] != ":" || w[4] != "->" {
                    return Err(Error::parse(n, "expected `arrow <id> : <src> -> <dst>`"));
                }
                let get = |k: &str| obj_ix.get(k).copied().ok_or_else(|| Error::parse(n, format!("unknown object `{k}`")));
                let (src, dst) = (get(w[3])?, get(w[5])?);
                if arr_ix.insert(w[1].to_string(), arrows.len()).is_some() {
                    return Err(Error::parse(n, format!("duplicate arrow `{}`", w[1])));
                }
                arrows.push(Arrow { name: w[1].to_string(), src, dst });
            }
            "id" => {
                let (n, w) = cur.expect("id")?;
                if w.len() != 4 || w[2] != "=" {
                    return Err(Error::parse(n, "expected `id <obj> = <arrow>`"));
                }
                let x = *obj_ix.get(w[1]).ok_or_else(|| Error::parse(n, format!("unknown object `{}`", w[1])))?;
                let a = *arr_ix.get(w[3]).ok_or_else(|| Error::parse(n, format!("unknown arrow `{}`", w[3])))?;
                ids[x] = Some(a);
            }
            "compose" => {
                let (n, w) = cur.expect("compose")?;
                if w.len() != 5 || w[3] != "=" {
                    return Err(Error::parse(n, "expected `compose <g> <f> = <h>`"));
                }
                let get = |k: &str| arr_ix.get(k).copied().ok_or_else(|| Error::parse(n, format!("unknown arrow `{k}`")));
                comps.push((get(w[1])?, get(w[2])?, get(w[4])?));
            }
            _ => break,
        }
    }
    let identities = ids
        .iter()
        .enumerate()
        .map(|(x, i)| i.ok_or_else(|| Error::parse(header, format!("object `{}` has no identity", objects[x]))))
        .collect::<Result<Vec<_>>>()?;
    FiniteCategory::new(name, objects, arrows, identities, &comps).map_err(|e| Error::parse(header, e.to_string()))
}

fn parse_simplex(n: usize, id: Option<&&str>, word: Option<&&str>, set: &SimplicialSet) -> Result<Simplex> {
    let nd: NdId = parse_num(n, id, "simplex id")?;
    let word = parse_word(n, word.ok_or_else(|| Error::parse(n, "missing degeneracy word"))?)?;
    if nd as usize >= set.len() {
        return Err(Error::parse(n, format!("simplex id {nd} out of range")));
    }
    Ok(Simplex { dim: (set.dim_of(nd) + word.len()) as u32, nd, word })
}

fn parse_scat(cur: &mut Cursor, header: usize, name: String, budget: Budget) -> Result<FiniteSimplicialCategory> {
    let mut objects: Vec<String> = Vec::new();
    let mut obj_ix: HashMap<String, usize> = HashMap::new();
    while cur.peek_keyword() == Some("object") {
        let (n, w) = cur.expect("object")?;
        let o = name_of(n, &w)?;
        if obj_ix.insert(o.clone(), objects.len()).is_some() {
            return Err(Error::parse(n, format!("duplicate object `{o}`")));
        }
        objects.push(o);
    }
    let k = objects.len();
    let obj = |n: usize, s: &str| obj_ix.get(s).copied().ok_or_else(|| Error::parse(n, format!("unknown object `{s}`")));
    let mut homs: Vec<Vec<Option<Arc<SimplicialSet>>>> = vec![vec![None; k]; k];
    while cur.peek_keyword() == Some("hom") {
        let (n, w) = cur.expect("hom")?;
        let (x, y) = (obj(n, w.get(1).copied().unwrap_or(""))?, obj(n, w.get(2).copied().unwrap_or(""))?);
        cur.expect("sset")?;
        homs[x][y] = Some(Arc::new(parse_body(cur)?));
    }
    let homs = homs
        .into_iter()
        .enumerate()
        .map(|(x, r)| {
            r.into_iter()
                .enumerate()
                .map(|(y, h)| h.ok_or_else(|| Error::parse(header, format!("missing hom {} {}", objects[x], objects[y]))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut identities: Vec<Option<NdId>> = vec![None; k];
    let mut table: HashMap<(usize, usize, usize, Simplex, Simplex), Simplex> = HashMap::new();
    while let Some(kw) = cur.peek_keyword() {
        match kw {
            "id" => {
                let (n, w) = cur.expect("id")?;
                let x = obj(n, w.get(1).copied().unwrap_or(""))?;
                if w.get(2) != Some(&"=") {
                    return Err(Error::parse(n, "expected `id <obj> = <vertex>`"));
                }
                identities[x] = Some(parse_num(n, w.get(3), "vertex id")?);
            }
            "compose" => {
                let (n, w) = cur.expect("compose")?;
                if w.len() != 13 || w[4] != ":" || w[7] != ";" || w[10] != "=" {
                    return Err(Error::parse(n, "expected `compose <x> <y> <z> : <g> s[..] ; <f> s[..] = <h> s[..]`"));
                }
                let (x, y, z) = (obj(n, w[1])?, obj(n, w[2])?, obj(n, w[3])?);
                let g = parse_simplex(n, w.get(5), w.get(6), &homs[y][z])?;
                let f = parse_simplex(n, w.get(8), w.get(9), &homs[x][y])?;
                let h = parse_simplex(n, w.get(11), w.get(12), &homs[x][z])?;
                table.insert((x, y, z, g, f), h);
            }
            _ => break,
        }
    }
    let identities = identities
        .into_iter()
        .enumerate()
        .map(|(x, i)| i.ok_or_else(|| Error::parse(header, format!("object `{}` has no identity", objects[x]))))
        .collect::<Result<Vec<_>>>()?;
    FiniteSimplicialCategory::new(
        name,
        objects,
        homs,
        identities,
        |x, y, z, g, f| table.get(&(x, y, z, g, f)).copied().ok_or_else(|| Error::parse(header, format!("missing composite in ({x}, {y}, {z})"))),
        budget,
    )
    .map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(header, other.to_string()),
    })
}

/// Reads one `cat` block, header included.
pub(crate) fn parse_cat_block(cur: &mut Cursor) -> Result<FiniteCategory> {
    let (n, w) = cur.expect("cat")?;
    parse_category(cur, n, name_of(n, &w)?)
}

/// Parses a CAT v1 document.
pub fn parse_cat(text: &str, budget: Budget) -> Result<CatDocument> {
    let mut cur = Cursor::new(text);
    let mut doc = CatDocument::default();
    while let Some((n, line)) = cur.next_line() {
        let w: Vec<&str> = line.split_whitespace().collect();
        match w[0] {
            "cat" => {
                let c = parse_category(&mut cur, n, name_of(n, &w)?)?;
                doc.categories.push(Arc::new(c));
            }
            "scat" => {
                let c = parse_scat(&mut cur, n, name_of(n, &w)?, budget)?;
                doc.scats.push(Arc::new(c));
            }
            "functor" | "sfunctor" => {
                if w.len() != 6 || w[2] != ":" || w[4] != "->" {
                    return Err(Error::parse(n, format!("expected `{} <name> : <source> -> <target>`", w[0])));
                }
                if w[0] == "functor" {
                    let f = parse_functor(&mut cur, n, &doc, w[3], w[5])?;
                    doc.functors.push((w[1].to_string(), f));
                } else {
                    let f = parse_sfunctor(&mut cur, n, &doc, w[3], w[5])?;
                    doc.sfunctors.push((w[1].to_string(), f));
                }
            }
            "quiver" => {
                let q = parse_quiver(&mut cur, name_of(n, &w)?)?;
                doc.quivers.push(q);
            }
            other => return Err(Error::parse(n, format!("unexpected `{other}`"))),
        }
    }
    Ok(doc)
}

fn parse_functor(cur: &mut Cursor, header: usize, doc: &CatDocument, s: &str, t: &str) -> Result<Functor> {
    let c = doc.category(s).ok_or_else(|| Error::parse(header, format!("unknown category `{s}`")))?;
    let d = doc.category(t).ok_or_else(|| Error::parse(header, format!("unknown category `{t}`")))?;
    let mut objects = vec![None; c.num_objects()];
    let mut arrows = vec![None; c.num_arrows()];
    while let Some(kw) = cur.peek_keyword() {
        let (n, w) = match kw {
            "fobj" | "farrow" => cur.next_line().map(|(n, l)| (n, l.split_whitespace().collect::<Vec<_>>())).unwrap(),
            _ => break,
        };
        if w.len() != 4 || w[2] != "=" {
            return Err(Error::parse(n, format!("expected `{kw} <x> = <y>`")));
        }
        if kw == "fobj" {
            let x = c.object_by_name(w[1]).ok_or_else(|| Error::parse(n, format!("unknown object `{}`", w[1])))?;
            objects[x] = Some(d.object_by_name(w[3]).ok_or_else(|| Error::parse(n, format!("unknown object `{}`", w[3])))?);
        } else {
            let a = c.arrow_by_name(w[1]).ok_or_else(|| Error::parse(n, format!("unknown arrow `{}`", w[1])))?;
            arrows[a] = Some(d.arrow_by_name(w[3]).ok_or_else(|| Error::parse(n, format!("unknown arrow `{}`", w[3])))?);
        }
    }
    let objects = objects.into_iter().map(|o| o.ok_or_else(|| Error::parse(header, "object without image"))).collect::<Result<Vec<_>>>()?;
    // identities may be left implicit
    let arrows = arrows
        .into_iter()
        .enumerate()
        .map(|(a, b)| match b {
            Some(b) => Ok(b),
            None if c.is_identity(a) => Ok(d.identity(objects[c.src(a)])),
            None => Err(Error::parse(header, format!("arrow `{}` without image", c.arrows[a].name))),
        })
        .collect::<Result<Vec<_>>>()?;
    Functor::new(c, d, objects, arrows).map_err(|e| Error::parse(header, e.to_string()))
}

fn parse_sfunctor(cur: &mut Cursor, header: usize, doc: &CatDocument, s: &str, t: &str) -> Result<SimplicialFunctor> {
    let c = doc.scat(s).ok_or_else(|| Error::parse(header, format!("unknown simplicial category `{s}`")))?;
    let d = doc.scat(t).ok_or_else(|| Error::parse(header, format!("unknown simplicial category `{t}`")))?;
    let k = c.num_objects();
    let obj = |n: usize, cat: &FiniteSimplicialCategory, s: &str| cat.objects.iter().position(|o| o == s).ok_or_else(|| Error::parse(n, format!("unknown object `{s}`")));
    let mut objects = vec![None; k];
    while cur.peek_keyword() == Some("fobj") {
        let (n, w) = cur.expect("fobj")?;
        if w.len() != 4 || w[2] != "=" {
            return Err(Error::parse(n, "expected `fobj <x> = <y>`"));
        }
        objects[obj(n, c, w[1])?] = Some(obj(n, d, w[3])?);
    }
    let objects = objects.into_iter().map(|o| o.ok_or_else(|| Error::parse(header, "object without image"))).collect::<Result<Vec<_>>>()?;
    let mut homs: Vec<Vec<Option<SimplicialMap>>> = vec![vec![None; k]; k];
    while cur.peek_keyword() == Some("fhom") {
        let (n, w) = cur.expect("fhom")?;
        let (x, y) = (obj(n, c, w.get(1).copied().unwrap_or(""))?, obj(n, c, w.get(2).copied().unwrap_or(""))?);
        homs[x][y] = Some(parse_map(cur, c.hom(x, y), d.hom(objects[x], objects[y]), n)?);
    }
    let homs = homs
        .into_iter()
        .map(|r| r.into_iter().map(|m| m.ok_or_else(|| Error::parse(header, "missing hom map"))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SimplicialFunctor::new(c, d, objects, homs).map_err(|e| Error::parse(header, e.to_string()))
}

fn parse_quiver(cur: &mut Cursor, name: String) -> Result<Quiver> {
    let mut q = Quiver { name, vertices: Vec::new(), edges: Vec::new() };
    while let Some(kw) = cur.peek_keyword() {
        match kw {
            "vertex" => {
                let (n, w) = cur.expect("vertex")?;
                q.vertices.push(name_of(n, &w)?);
            }
            "edge" => {
                let (n, w) = cur.expect("edge")?;
                if w.len() != 6 || w[2] != ":" || w[4] != "->" {
                    return Err(Error::parse(n, "expected `edge <id> : <src> -> <dst>`"));
                }
                let get = |k: &str| q.vertices.iter().position(|v| v == k).ok_or_else(|| Error::parse(n, format!("unknown vertex `{k}`")));
                let (s, d) = (get(w[3])?, get(w[5])?);
                q.add_edge(w[1], s, d);
            }
            _ => break,
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::simplex;

    #[test]
    fn category_round_trip() {
        let c = FiniteCategory::codiscrete(3);
        let doc = parse_cat(&emit_cat(&c), Budget::default()).unwrap();
        assert_eq!(*doc.categories[0], c);
    }

    #[test]
    fn functor_round_trip() {
        let p = Arc::new(FiniteCategory::poset(1));
        let t = Arc::new(FiniteCategory::terminal());
        let f = Functor::to_terminal(&p, &t);
        let text = format!("{}{}{}", emit_cat(&p), emit_cat(&t), emit_functor("F", &f));
        let doc = parse_cat(&text, Budget::default()).unwrap();
        assert_eq!(doc.functors[0].1, f);
    }

    #[test]
    fn scat_round_trip() {
        let u = FiniteSimplicialCategory::u_functor(&simplex(1), Budget::default()).unwrap();
        let text = emit_scat(&u);
        let doc = parse_cat(&text, Budget::default()).unwrap();
        assert_eq!(emit_scat(&doc.scats[0]), text);
    }

    #[test]
    fn rejects_missing_identity() {
        let text = "cat c\nobject x\narrow f : x -> x\n";
        assert!(matches!(parse_cat(text, Budget::default()), Err(Error::Parse { line: 1, .. })));
    }
}
