//! The BSS v1 text format.
//!
//! ```text
//! bss <name> rows <N> [discrete0] [truncated]
//! row <n>
//! sset <label>
//! ...
//! op d<i> : <n> -> <n-1>
//! map <src-id> = <tgt-id> [s[..]]
//! op s<j> : <n> -> <n+1>
//! ...
//! ```
//!
//! A map of bisimplicial sets is a `bmap <name> : <source> -> <target> rows
//! <N>` header followed by `row <n>` and `map` lines for each row.
//!
//! Virtual objects are written as a single `bss-virtual <rule> <params>`
//! line, followed by an embedded `sset` block for rules that need one.

use std::fmt::Write as _;
use std::sync::Arc;

use super::map::BisimplicialMap;
use super::object::BisimplicialSet;
use super::truncation::Truncation;
use crate::error::{Budget, Error, Result};
use crate::format::{parse_num, Cursor};
use crate::simplicial::format::{emit_body, map_header, parse_body, parse_word};
use crate::simplicial::{DegeneracyWord, NdId, Simplex, SimplicialMap, SimplicialSet};

/// Header flags of a stored object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BssFlags {
    pub discrete0: bool,
    pub truncated: bool,
}

/// Ids as the parser will renumber them: by dimension, then by id.
pub(crate) fn canonical_ids(x: &SimplicialSet) -> Vec<NdId> {
    let mut order: Vec<NdId> = x.ids().collect();
    order.sort_by_key(|&id| (x.dim_of(id), id));
    let mut out = vec![0; x.len()];
    for (new, &id) in order.iter().enumerate() {
        out[id as usize] = new as NdId;
    }
    out
}

pub(crate) fn emit_map(out: &mut String, f: &SimplicialMap, src: &[NdId], tgt: &[NdId]) {
    let mut lines: Vec<(NdId, Simplex)> = f.source.ids().map(|id| (src[id as usize], f.image(id))).collect();
    lines.sort_by_key(|l| l.0);
    for (id, s) in lines {
        let t = tgt[s.nd as usize];
        if s.word.is_empty() {
            writeln!(out, "map {id} = {t}").unwrap();
        } else {
            writeln!(out, "map {id} = {t} {}", s.word).unwrap();
        }
    }
}

/// Writes rows `0..=window`, or the virtual rule when it is serializable.
pub fn emit_bss(name: &str, x: &BisimplicialSet, window: usize, budget: Budget) -> Result<String> {
    if let Some(spec) = x.virtual_spec() {
        return Ok(spec);
    }
    let window = x.available().map(|a| a.min(window)).unwrap_or(window);
    let t = x.rows(window, budget)?;
    let truncated = x.skeletal_bound().map(|b| b > window).unwrap_or(true);
    Ok(emit_truncation(name, &t, truncated))
}

pub fn emit_truncation(name: &str, t: &Truncation, truncated: bool) -> String {
    let mut out = String::new();
    write!(out, "bss {name} rows {}", t.top()).unwrap();
    if t.discrete0() {
        out.push_str(" discrete0");
    }
    if truncated {
        out.push_str(" truncated");
    }
    out.push('\n');
    let ids: Vec<Vec<NdId>> = t.rows.iter().map(|r| canonical_ids(r)).collect();
    for (n, r) in t.rows.iter().enumerate() {
        writeln!(out, "row {n}").unwrap();
        writeln!(out, "sset row{n}").unwrap();
        emit_body(&mut out, r);
    }
    for n in 1..=t.top() {
        for i in 0..=n {
            writeln!(out, "op d{i} : {n} -> {}", n - 1).unwrap();
            emit_map(&mut out, &t.faces[n][i], &ids[n], &ids[n - 1]);
        }
    }
    for n in 0..t.top() {
        for j in 0..=n {
            writeln!(out, "op s{j} : {n} -> {}", n + 1).unwrap();
            emit_map(&mut out, &t.degens[n][j], &ids[n], &ids[n + 1]);
        }
    }
    out
}

pub(crate) fn parse_map(cur: &mut Cursor, source: &Arc<SimplicialSet>, target: &Arc<SimplicialSet>, header: usize) -> Result<SimplicialMap> {
    let mut images: Vec<Option<Simplex>> = vec![None; source.len()];
    while cur.peek_keyword() == Some("map") {
        let (n, w) = cur.expect("map")?;
        let id: usize = parse_num(n, w.get(1), "source id")?;
        if w.get(2) != Some(&"=") {
            return Err(Error::parse(n, "expected `map <id> = <target> [s[..]]`"));
        }
        let t: NdId = parse_num(n, w.get(3), "target id")?;
        let word = match w.get(4) {
            Some(s) => parse_word(n, s)?,
            None => DegeneracyWord::EMPTY,
        };
        if w.len() > 5 {
            return Err(Error::parse(n, "trailing tokens"));
        }
        if id >= source.len() || t as usize >= target.len() {
            return Err(Error::parse(n, "simplex id out of range"));
        }
        let dim = source.dim_of(id as NdId);
        if target.dim_of(t) + word.len() != dim {
            return Err(Error::parse(n, "image has the wrong dimension"));
        }
        if images[id].replace(Simplex { dim: dim as u32, nd: t, word }).is_some() {
            return Err(Error::parse(n, format!("simplex {id} mapped twice")));
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(id, s)| s.ok_or_else(|| Error::parse(header, format!("simplex {id} has no image"))))
        .collect::<Result<Vec<_>>>()?;
    let f = SimplicialMap::new(source.clone(), target.clone(), images).map_err(|e| Error::parse(header, e.to_string()))?;
    Ok(f)
}

/// Parses a BSS document; virtual rules are reconstructed.
pub fn parse_bss(text: &str) -> Result<(String, BisimplicialSet, BssFlags)> {
    let mut cur = Cursor::new(text);
    let (n, w) = cur.next_line().map(|(n, l)| (n, l.split_whitespace().collect::<Vec<_>>())).ok_or_else(|| Error::parse(1, "empty document"))?;
    if w[0] == "bss-virtual" {
        let rule = w.get(1).ok_or_else(|| Error::parse(n, "missing rule"))?;
        let x = super::virtual_rules::parse(n, rule, &w[2..], &mut cur)?;
        if let Some((n, l)) = cur.peek() {
            return Err(Error::parse(n, format!("unexpected line `{l}`")));
        }
        let flags = BssFlags { discrete0: x.row(0, Budget::default())?.is_discrete(), truncated: false };
        return Ok((x.name().to_string(), x, flags));
    }
    if w[0] != "bss" {
        return Err(Error::parse(n, format!("expected `bss`, found `{}`", w[0])));
    }
    let name = w.get(1).ok_or_else(|| Error::parse(n, "missing name"))?.to_string();
    if w.get(2) != Some(&"rows") {
        return Err(Error::parse(n, "expected `bss <name> rows <N>`"));
    }
    let top: usize = parse_num(n, w.get(3), "row count")?;
    let mut flags = BssFlags::default();
    for f in &w[4..] {
        match *f {
            "discrete0" => flags.discrete0 = true,
            "truncated" => flags.truncated = true,
            other => return Err(Error::parse(n, format!("unknown flag `{other}`"))),
        }
    }
    let mut rows = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let (ln, rw) = cur.expect("row")?;
        let idx: usize = parse_num(ln, rw.get(1), "row index")?;
        if idx != k {
            return Err(Error::parse(ln, format!("expected row {k}")));
        }
        cur.expect("sset")?;
        let line = cur.line();
        let r = parse_body(&mut cur)?;
        if k == 0 && flags.discrete0 && !r.is_discrete() {
            return Err(Error::parse(line, "row 0 is not discrete"));
        }
        rows.push(Arc::new(r));
    }
    let mut faces: Vec<Vec<Option<SimplicialMap>>> = (0..=top).map(|k| vec![None; if k == 0 { 0 } else { k + 1 }]).collect();
    let mut degens: Vec<Vec<Option<SimplicialMap>>> = (0..top).map(|k| vec![None; k + 1]).collect();
    while cur.peek_keyword() == Some("op") {
        let (ln, ow) = cur.expect("op")?;
        let op = ow.get(1).ok_or_else(|| Error::parse(ln, "missing operator"))?;
        let src: usize = parse_num(ln, ow.get(3), "source row")?;
        let tgt: usize = parse_num(ln, ow.get(5), "target row")?;
        if ow.get(2) != Some(&":") || ow.get(4) != Some(&"->") || ow.len() != 6 {
            return Err(Error::parse(ln, "expected `op <d|s><k> : <n> -> <m>`"));
        }
        let (kind, idx) = op.split_at(1);
        let idx: usize = parse_num(ln, Some(&idx), "operator index")?;
        let slot = match kind {
            "d" if src >= 1 && src <= top && tgt + 1 == src && idx <= src => &mut faces[src][idx],
            "s" if src < top && tgt == src + 1 && idx <= src => &mut degens[src][idx],
            _ => return Err(Error::parse(ln, format!("operator `{op} : {src} -> {tgt}` is not a generator"))),
        };
        if slot.is_some() {
            return Err(Error::parse(ln, format!("operator `{op}` on row {src} given twice")));
        }
        *slot = Some(parse_map(&mut cur, &rows[src], &rows[tgt], ln)?);
    }
    if let Some((n, l)) = cur.peek() {
        return Err(Error::parse(n, format!("unexpected line `{l}`")));
    }
    let end = cur.line();
    let missing = |what: String| Error::parse(end, format!("missing operator {what}"));
    let faces = faces
        .into_iter()
        .enumerate()
        .map(|(k, fs)| fs.into_iter().enumerate().map(|(i, f)| f.ok_or_else(|| missing(format!("d{i} on row {k}")))).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let degens = degens
        .into_iter()
        .enumerate()
        .map(|(k, ds)| ds.into_iter().enumerate().map(|(j, s)| s.ok_or_else(|| missing(format!("s{j} on row {k}")))).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let t = Truncation { rows, faces, degens, presentations: vec![None; top + 1] };
    t.verify().map_err(|e| Error::parse(end, e.to_string()))?;
    Ok((name.clone(), BisimplicialSet::from_truncation(name, t, flags.truncated), flags))
}

/// Parses a BSS document whose row 0 must be discrete.
pub fn parse_segal(text: &str) -> Result<(String, BisimplicialSet)> {
    let (name, x, _) = parse_bss(text)?;
    if !x.row(0, Budget::default())?.is_discrete() {
        return Err(Error::parse(1, "row 0 is not discrete"));
    }
    Ok((name, x))
}

/// Simplex ids of row `n` as they read back from `emit_bss`.
fn emitted_ids(x: &BisimplicialSet, row: &SimplicialSet) -> Vec<NdId> {
    if x.virtual_spec().is_some() {
        (0..row.len() as NdId).collect()
    } else {
        canonical_ids(row)
    }
}

/// Writes a `bmap` document with rows `0..=window`; endpoints are referred to
/// by the given names.
pub fn emit_bmap(name: &str, source: &str, target: &str, f: &BisimplicialMap, window: usize, budget: Budget) -> Result<String> {
    let window = [f.source.available(), f.target.available()].into_iter().flatten().fold(window, usize::min);
    let rows = f.rows(window, budget)?;
    let mut out = format!("bmap {name} : {source} -> {target} rows {window}\n");
    for (n, m) in rows.iter().enumerate() {
        writeln!(out, "row {n}").unwrap();
        emit_map(&mut out, m, &emitted_ids(&f.source, &m.source), &emitted_ids(&f.target, &m.target));
    }
    Ok(out)
}

/// Parses a `bmap` document against already loaded endpoints and checks it
/// commutes with the operators of its rows.
pub fn parse_bmap(text: &str, source: &BisimplicialSet, target: &BisimplicialSet, budget: Budget) -> Result<(String, BisimplicialMap)> {
    let h = map_header(text)?;
    let top = h.rows.ok_or_else(|| Error::parse(1, "expected a `bmap` document"))?;
    let (s, t) = (source.rows(top, budget)?, target.rows(top, budget)?);
    let mut cur = Cursor::new(text);
    cur.next_line();
    let mut rows = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let (ln, rw) = cur.expect("row")?;
        let idx: usize = parse_num(ln, rw.get(1), "row index")?;
        if idx != k {
            return Err(Error::parse(ln, format!("expected row {k}")));
        }
        rows.push(parse_map(&mut cur, &s.rows[k], &t.rows[k], ln)?);
    }
    if let Some((n, l)) = cur.peek() {
        return Err(Error::parse(n, format!("unexpected line `{l}`")));
    }
    let f = BisimplicialMap::stored(source, target, rows);
    f.verify(top, budget).map_err(|e| Error::parse(1, e.to_string()))?;
    Ok((h.name, f))
}

/// An embedded `sset` block for virtual rules.
pub(crate) fn parse_embedded(cur: &mut Cursor) -> Result<Arc<SimplicialSet>> {
    cur.expect("sset")?;
    Ok(Arc::new(parse_body(cur)?))
}

pub(crate) fn emit_embedded(out: &mut String, k: &SimplicialSet) {
    out.push_str("sset k\n");
    emit_body(out, k);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisimplicial::find_isomorphism;
    use crate::simplicial::standard::simplex;

    #[test]
    fn round_trip_stored_rows() {
        let c = BisimplicialSet::constant(&simplex(1));
        let t = BisimplicialSet::transpose(&simplex(1));
        let p = BisimplicialSet::product(&[c, t]).materialize(2, Budget::default()).unwrap();
        let text = emit_bss("p", &p, 2, Budget::default()).unwrap();
        let (name, q, flags) = parse_bss(&text).unwrap();
        assert_eq!(name, "p");
        assert!(!flags.discrete0);
        assert_eq!(emit_bss("p", &q, 2, Budget::default()).unwrap(), text);
        assert!(find_isomorphism(&p, &q, 2, Budget::default()).unwrap().is_some());
    }

    #[test]
    fn rejects_non_discrete_row0() {
        let c = BisimplicialSet::constant(&simplex(1)).materialize(1, Budget::default()).unwrap();
        let text = emit_bss("c", &c, 1, Budget::default()).unwrap().replacen("rows 1", "rows 1 discrete0", 1);
        assert!(matches!(parse_bss(&text), Err(Error::Parse { .. })));
    }

    #[test]
    fn bmap_round_trip() {
        let c = BisimplicialSet::constant(&simplex(1));
        let t = BisimplicialSet::transpose(&simplex(1));
        let p = BisimplicialSet::product(&[c.clone(), t]).materialize(2, Budget::default()).unwrap();
        let (_, q, _) = parse_bss(&emit_bss("p", &p, 2, Budget::default()).unwrap()).unwrap();
        let f = crate::bisimplicial::rules::projection(&p, &c, 0);
        let text = emit_bmap("f", "p.bss", "c.bss", &f, 2, Budget::default()).unwrap();
        let (name, g) = parse_bmap(&text, &q, &c, Budget::default()).unwrap();
        assert_eq!(name, "f");
        assert_eq!(emit_bmap("f", "p.bss", "c.bss", &g, 2, Budget::default()).unwrap(), text);
        assert!(parse_bmap(&text.replace("map 0 = 0", "map 0 = 1"), &q, &c, Budget::default()).is_err());
    }

    #[test]
    fn virtual_transpose_round_trip() {
        let t = BisimplicialSet::transpose(&simplex(2));
        let text = emit_bss("t", &t, 3, Budget::default()).unwrap();
        assert!(text.starts_with("bss-virtual transpose"));
        let (_, u, flags) = parse_bss(&text).unwrap();
        assert!(flags.discrete0);
        assert_eq!(u.rows(3, Budget::default()).unwrap().row_counts(), t.rows(3, Budget::default()).unwrap().row_counts());
    }
}
