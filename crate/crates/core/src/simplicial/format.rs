//! The SSET v1 text format.
//!
//! ```text
//! sset <name>
//! simplex <id> dim <d>
//! face <id> <i> = <target-id> s[<j1>,<j2>,...]
//! ```
//!
//! Maps are stored separately and name their endpoints:
//!
//! ```text
//! smap <name> : <source> -> <target>
//! map <src-id> = <tgt-id> [s[..]]
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::simplex::{DegeneracyWord, NdId, Simplex};
use super::map::SimplicialMap;
use super::sset::SimplicialSet;
use crate::bisimplicial::format::{canonical_ids, emit_map, parse_map};
use crate::error::{Error, Result};
use crate::format::{parse_num, Cursor};

pub fn emit_sset(name: &str, x: &SimplicialSet) -> String {
    let mut out = String::new();
    writeln!(out, "sset {name}").unwrap();
    emit_body(&mut out, x);
    out
}

pub(crate) fn emit_body(out: &mut String, x: &SimplicialSet) {
    for id in x.ids() {
        let d = x.dim_of(id);
        writeln!(out, "simplex {id} dim {d}").unwrap();
        if d == 0 {
            continue;
        }
        for (i, f) in x.faces_of(id).iter().enumerate() {
            if f.word.is_empty() {
                writeln!(out, "face {id} {i} = {}", f.nd).unwrap();
            } else {
                writeln!(out, "face {id} {i} = {} {}", f.nd, f.word).unwrap();
            }
        }
    }
}

pub fn parse_sset(text: &str) -> Result<(String, SimplicialSet)> {
    let mut cur = Cursor::new(text);
    let (n, words) = cur.expect("sset")?;
    let name = words.get(1).ok_or_else(|| Error::parse(n, "missing name"))?.to_string();
    let x = parse_body(&mut cur)?;
    if let Some((n, l)) = cur.peek() {
        return Err(Error::parse(n, format!("unexpected line `{l}`")));
    }
    Ok((name, x))
}

/// Parses a degeneracy word written `s[j1,j2,...]`.
pub(crate) fn parse_word(line: usize, w: &str) -> Result<DegeneracyWord> {
    let inner = w
        .strip_prefix("s[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::parse(line, format!("invalid degeneracy word `{w}`")))?;
    let idx: Vec<usize> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| Error::parse(line, format!("invalid degeneracy index `{p}`"))))
            .collect::<Result<_>>()?
    };
    DegeneracyWord::from_indices(&idx).map_err(|e| Error::parse(line, e.to_string()))
}

struct Decl {
    line: usize,
    dim: usize,
    faces: Vec<Option<(usize, u64, DegeneracyWord)>>,
}

/// Parses `simplex`/`face` lines until another keyword. Simplices are
/// renumbered canonically by (dimension, declaration order).
pub(crate) fn parse_body(cur: &mut Cursor) -> Result<SimplicialSet> {
    let mut decls: Vec<Decl> = Vec::new();
    let mut by_label: HashMap<u64, usize> = HashMap::new();
    while let Some(kw) = cur.peek_keyword() {
        match kw {
            "simplex" => {
                let (n, w) = cur.expect("simplex")?;
                let label: u64 = parse_num(n, w.get(1), "simplex id")?;
                if w.get(2) != Some(&"dim") {
                    return Err(Error::parse(n, "expected `simplex <id> dim <d>`"));
                }
                let dim: usize = parse_num(n, w.get(3), "dimension")?;
                if by_label.insert(label, decls.len()).is_some() {
                    return Err(Error::parse(n, format!("duplicate simplex id {label}")));
                }
                let faces = if dim == 0 { Vec::new() } else { vec![None; dim + 1] };
                decls.push(Decl { line: n, dim, faces });
            }
            "face" => {
                let (n, w) = cur.expect("face")?;
                let label: u64 = parse_num(n, w.get(1), "simplex id")?;
                let i: usize = parse_num(n, w.get(2), "face index")?;
                if w.get(3) != Some(&"=") {
                    return Err(Error::parse(n, "expected `face <id> <i> = <target> [s[..]]`"));
                }
                let target: u64 = parse_num(n, w.get(4), "target id")?;
                let word = match w.get(5) {
                    Some(s) => parse_word(n, s)?,
                    None => DegeneracyWord::EMPTY,
                };
                if w.len() > 6 {
                    return Err(Error::parse(n, "trailing tokens"));
                }
                let &k = by_label.get(&label).ok_or_else(|| Error::parse(n, format!("face of undeclared simplex {label}")))?;
                let decl = &mut decls[k];
                if i >= decl.faces.len() {
                    return Err(Error::parse(n, format!("face index {i} out of range for dimension {}", decl.dim)));
                }
                if decl.faces[i].is_some() {
                    return Err(Error::parse(n, format!("face {i} of simplex {label} given twice")));
                }
                decl.faces[i] = Some((n, target, word));
            }
            _ => break,
        }
    }
    let mut order: Vec<usize> = (0..decls.len()).collect();
    order.sort_by_key(|&k| (decls[k].dim, k));
    let mut canonical = vec![0 as NdId; decls.len()];
    for (new, &k) in order.iter().enumerate() {
        canonical[k] = new as NdId;
    }
    let mut x = SimplicialSet::empty();
    for &k in &order {
        let decl = &decls[k];
        if decl.dim == 0 {
            x.add_vertex();
            continue;
        }
        let mut faces = Vec::with_capacity(decl.dim + 1);
        for (i, f) in decl.faces.iter().enumerate() {
            let (n, target, word) = f.ok_or_else(|| Error::parse(decl.line, format!("face {i} missing")))?;
            let &t = by_label.get(&target).ok_or_else(|| Error::parse(n, format!("unknown target simplex {target}")))?;
            if decls[t].dim + word.len() != decl.dim - 1 {
                return Err(Error::parse(n, format!("face {i} has the wrong dimension")));
            }
            if canonical[t] as usize >= x.len() {
                return Err(Error::parse(n, "face refers to a simplex of the same or higher dimension"));
            }
            faces.push(Simplex { dim: (decl.dim - 1) as u32, nd: canonical[t], word });
        }
        x.add_simplex(faces).map_err(|e| Error::parse(decl.line, e.to_string()))?;
    }
    Ok(x)
}

/// The header line of an `smap` or `bmap` document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapHeader {
    pub kind: String,
    pub name: String,
    pub source: String,
    pub target: String,
    /// Row count of a `bmap`.
    pub rows: Option<usize>,
}

pub fn map_header(text: &str) -> Result<MapHeader> {
    let mut cur = Cursor::new(text);
    let (n, l) = cur.next_line().ok_or_else(|| Error::parse(1, "empty document"))?;
    let w: Vec<&str> = l.split_whitespace().collect();
    let rows = match w[0] {
        "smap" if w.len() == 6 => None,
        "bmap" if w.len() == 8 && w[6] == "rows" => Some(parse_num(n, w.get(7), "row count")?),
        _ => return Err(Error::parse(n, "expected `smap <name> : <source> -> <target>` or `bmap <name> : <source> -> <target> rows <N>`")),
    };
    if w[2] != ":" || w[4] != "->" {
        return Err(Error::parse(n, "expected `<name> : <source> -> <target>`"));
    }
    Ok(MapHeader { kind: w[0].to_string(), name: w[1].to_string(), source: w[3].to_string(), target: w[5].to_string(), rows })
}

pub fn emit_smap(name: &str, source: &str, target: &str, f: &SimplicialMap) -> String {
    let mut out = format!("smap {name} : {source} -> {target}\n");
    emit_map(&mut out, f, &canonical_ids(&f.source), &canonical_ids(&f.target));
    out
}

/// Parses an `smap` document against already loaded endpoints.
pub fn parse_smap(text: &str, source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>) -> Result<(String, SimplicialMap)> {
    let h = map_header(text)?;
    if h.kind != "smap" {
        return Err(Error::parse(1, "expected an `smap` document"));
    }
    let mut cur = Cursor::new(text);
    let (n, _) = cur.next_line().expect("header");
    let f = parse_map(&mut cur, source, target, n)?;
    if let Some((n, l)) = cur.peek() {
        return Err(Error::parse(n, format!("unexpected line `{l}`")));
    }
    Ok((h.name, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{horn, simplex};

    #[test]
    fn round_trip_keeps_ids() {
        for x in [simplex(3), horn(3, 1).unwrap().set] {
            let text = emit_sset("x", &x);
            let (name, y) = parse_sset(&text).unwrap();
            assert_eq!(name, "x");
            assert_eq!(*x, y);
        }
    }

    #[test]
    fn reorders_by_dimension() {
        let text = "sset t\nsimplex 5 dim 1\nface 5 0 = 2\nface 5 1 = 1\nsimplex 1 dim 0\nsimplex 2 dim 0\n";
        let (_, x) = parse_sset(text).unwrap();
        assert_eq!(x.counts(), vec![2, 1]);
        assert_eq!(x.faces_of(2)[0].nd, 1);
    }

    #[test]
    fn identity_violation_reports_line() {
        let text = "sset bad
simplex 0 dim 0
simplex 1 dim 0
simplex 2 dim 0
simplex 3 dim 1
face 3 0 = 1
face 3 1 = 0
simplex 4 dim 1
face 4 0 = 2
face 4 1 = 1
simplex 5 dim 1
face 5 0 = 2
face 5 1 = 0
simplex 6 dim 2
face 6 0 = 3
face 6 1 = 5
face 6 2 = 4
";
        match parse_sset(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 14),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_faces_parse() {
        let text = "sset loop\nsimplex 0 dim 0\nsimplex 1 dim 1\nface 1 0 = 0\nface 1 1 = 0\nsimplex 2 dim 2\nface 2 0 = 1\nface 2 1 = 1\nface 2 2 = 0 s[0]\n";
        let (_, x) = parse_sset(text).unwrap();
        assert_eq!(x.counts(), vec![1, 1, 1]);
    }
}
