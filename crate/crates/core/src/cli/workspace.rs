//! Loading documents from files and writing results back.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bisimplicial::{emit_bmap, emit_bss, parse_bmap, parse_bss, BisimplicialMap, BisimplicialSet};
use crate::cat::{nerve, nerve_map, parse_cat, CatDocument, Functor};
use crate::error::{Budget, Error, Result};
use crate::simplicial::{emit_smap, emit_sset, map_header, parse_smap, parse_sset, SimplicialMap, SimplicialSet};

/// An error together with the file it came from.
#[derive(Debug, Clone)]
pub struct Failure {
    pub file: Option<String>,
    pub error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { file: None, error }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.file {
            Some(p) => write!(f, "{p}: {}", self.error),
            None => write!(f, "{}", self.error),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Input {
    pub path: String,
    pub name: String,
    pub kind: String,
    pub sha256: String,
}

pub enum Object {
    Sset(String, Arc<SimplicialSet>),
    Bss(String, BisimplicialSet),
    Smap(String, SimplicialMap),
    Bmap(String, BisimplicialMap),
    Cat(CatDocument),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Sset(..) => "sset",
            Object::Bss(..) => "bss",
            Object::Smap(..) => "smap",
            Object::Bmap(..) => "bmap",
            Object::Cat(_) => "cat",
        }
    }
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// The objects loaded by one invocation. Names are unique: two different
/// documents may not declare the same name.
pub struct Workspace {
    pub budget: Budget,
    pub window: usize,
    pub inputs: Vec<Input>,
    names: BTreeMap<String, String>,
}

impl Workspace {
    pub fn new(budget: Budget, window: usize) -> Self {
        Workspace { budget, window, inputs: Vec::new(), names: BTreeMap::new() }
    }

    fn fail(path: &Path, error: Error) -> Failure {
        Failure { file: Some(path.display().to_string()), error }
    }

    fn register(&mut self, path: &Path, name: &str, kind: &str, text: &str) -> CliResult<()> {
        let sha = digest(text);
        match self.names.get(name) {
            Some(d) if *d != sha => return Err(Self::fail(path, Error::invalid(format!("object name `{name}` is already used by another document")))),
            Some(_) => {}
            None => {
                self.names.insert(name.to_string(), sha.clone());
            }
        }
        let input = Input { path: path.display().to_string(), name: name.to_string(), kind: kind.to_string(), sha256: sha };
        if !self.inputs.contains(&input) {
            self.inputs.push(input);
        }
        Ok(())
    }

    pub fn load(&mut self, path: &Path) -> CliResult<Object> {
        let text = std::fs::read_to_string(path).map_err(|e| Self::fail(path, Error::Io(e.to_string())))?;
        let keyword = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty()).and_then(|l| l.split_whitespace().next()).unwrap_or("");
        let at = |e: Error| Self::fail(path, e);
        let obj = match keyword {
            "sset" => {
                let (name, x) = parse_sset(&text).map_err(at)?;
                Object::Sset(name, Arc::new(x))
            }
            "bss" | "bss-virtual" => {
                let (name, x, _) = parse_bss(&text).map_err(at)?;
                Object::Bss(name, x)
            }
            "smap" | "bmap" => {
                let h = map_header(&text).map_err(at)?;
                let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
                let (src, tgt) = (self.load(&dir.join(&h.source))?, self.load(&dir.join(&h.target))?);
                match (src, tgt) {
                    (Object::Sset(_, a), Object::Sset(_, b)) => {
                        let (name, f) = parse_smap(&text, &a, &b).map_err(at)?;
                        Object::Smap(name, f)
                    }
                    (Object::Bss(_, a), Object::Bss(_, b)) => {
                        let (name, f) = parse_bmap(&text, &a, &b, self.budget).map_err(at)?;
                        Object::Bmap(name, f)
                    }
                    _ => return Err(at(Error::invalid("map endpoints have the wrong kind"))),
                }
            }
            _ => Object::Cat(parse_cat(&text, self.budget).map_err(at)?),
        };
        let name = match &obj {
            Object::Sset(n, _) | Object::Bss(n, _) | Object::Smap(n, _) | Object::Bmap(n, _) => n.clone(),
            Object::Cat(d) => d.categories.iter().map(|c| c.name.clone()).chain(d.scats.iter().map(|c| c.name.clone())).chain(d.quivers.iter().map(|q| q.name.clone())).collect::<Vec<_>>().join(","),
        };
        self.register(path, &name, obj.kind(), &text)?;
        Ok(obj)
    }

    fn wrong(path: &Path, want: &str, got: &Object) -> Failure {
        Self::fail(path, Error::invalid(format!("expected a {want} document, found {}", got.kind())))
    }

    pub fn sset(&mut self, path: &Path) -> CliResult<Arc<SimplicialSet>> {
        match self.load(path)? {
            Object::Sset(_, x) => Ok(x),
            o => Err(Self::wrong(path, "sset", &o)),
        }
    }

    pub fn bss(&mut self, path: &Path) -> CliResult<BisimplicialSet> {
        match self.load(path)? {
            Object::Bss(_, x) => Ok(x),
            o => Err(Self::wrong(path, "bss", &o)),
        }
    }

    pub fn smap(&mut self, path: &Path) -> CliResult<SimplicialMap> {
        match self.load(path)? {
            Object::Smap(_, f) => Ok(f),
            o => Err(Self::wrong(path, "smap", &o)),
        }
    }

    pub fn cat(&mut self, path: &Path) -> CliResult<CatDocument> {
        match self.load(path)? {
            Object::Cat(d) => Ok(d),
            o => Err(Self::wrong(path, "cat", &o)),
        }
    }

    /// A `bmap` document, or the nerve of a functor in a CAT document.
    pub fn bmap(&mut self, path: &Path, name: Option<&str>) -> CliResult<BisimplicialMap> {
        match self.load(path)? {
            Object::Bmap(_, f) => Ok(f),
            Object::Cat(d) => {
                let f = functor(&d, name).map_err(|e| Self::fail(path, e))?;
                Ok(nerve_map(&f, &nerve(&f.source), &nerve(&f.target)))
            }
            o => Err(Self::wrong(path, "bmap", &o)),
        }
    }
}

/// The named functor of a document, or its only one.
pub fn functor(d: &CatDocument, name: Option<&str>) -> Result<Functor> {
    pick(&d.functors, name, "functor").map(|(_, f)| f.clone())
}

pub fn pick<'a, T>(items: &'a [(String, T)], name: Option<&str>, what: &str) -> Result<&'a (String, T)> {
    match name {
        Some(n) => items.iter().find(|(k, _)| k == n).ok_or_else(|| Error::invalid(format!("no {what} named `{n}`"))),
        None if items.len() == 1 => Ok(&items[0]),
        None => Err(Error::invalid(format!("the document has {} {what}s; name one", items.len()))),
    }
}

/// A result object that `-o` writes to disk.
pub enum Artifact {
    Sset(String, Arc<SimplicialSet>),
    Bss(String, BisimplicialSet),
    Smap(String, SimplicialMap),
    Bmap(String, BisimplicialMap),
    Text(String),
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Writes `artifact` to `path`; maps also write their endpoints next to it.
/// Returns the written paths.
pub fn write_artifact(path: &Path, artifact: &Artifact, window: usize, budget: Budget) -> CliResult<Vec<String>> {
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    match artifact {
        Artifact::Sset(name, x) => files.push((path.to_path_buf(), emit_sset(name, x))),
        Artifact::Bss(name, x) => files.push((path.to_path_buf(), emit_bss(name, x, window, budget)?)),
        Artifact::Text(t) => files.push((path.to_path_buf(), t.clone())),
        Artifact::Smap(name, f) => {
            let (s, t) = (sibling(path, "src.sset"), sibling(path, "tgt.sset"));
            files.push((s.clone(), emit_sset(&format!("{name}_src"), &f.source)));
            files.push((t.clone(), emit_sset(&format!("{name}_tgt"), &f.target)));
            files.push((path.to_path_buf(), emit_smap(name, &file_name(&s), &file_name(&t), f)));
        }
        Artifact::Bmap(name, f) => {
            let (s, t) = (sibling(path, "src.bss"), sibling(path, "tgt.bss"));
            files.push((s.clone(), emit_bss(&format!("{name}_src"), &f.source, window, budget)?));
            files.push((t.clone(), emit_bss(&format!("{name}_tgt"), &f.target, window, budget)?));
            files.push((path.to_path_buf(), emit_bmap(name, &file_name(&s), &file_name(&t), f, window, budget)?));
        }
    }
    let mut out = Vec::new();
    for (p, text) in files {
        if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Workspace::fail(dir, Error::Io(e.to_string())))?;
        }
        std::fs::write(&p, text).map_err(|e| Workspace::fail(&p, Error::Io(e.to_string())))?;
        out.push(p.display().to_string());
    }
    Ok(out)
}
