//! The canonical test corpus.

use std::path::Path;
use std::sync::Arc;

use super::workspace::{digest, write_artifact, Artifact, CliResult, Failure};
use crate::bisimplicial::format::emit_truncation;
use crate::cat::{emit_cat, emit_functor, emit_scat, emit_sfunctor, FiniteCategory, FiniteSimplicialCategory, Functor, SimplicialFunctor};
use crate::error::{Budget, Error};
use crate::segal::{build_generator, build_spine, e_space, Family, SpineKind};
use crate::simplicial::standard::{boundary, horn, simplex};
use crate::simplicial::{emit_smap, emit_sset, SimplicialMap, SimplicialSet};

/// The corpus categories: posets `I0..I3`, `iso = I[1]`, discrete sets and
/// codiscrete groupoids `C1..C3`, and the terminal category.
pub fn corpus_categories() -> Vec<Arc<FiniteCategory>> {
    let mut out: Vec<FiniteCategory> = (0..=3).map(|n| FiniteCategory::poset(n).renamed(format!("I{n}"))).collect();
    out.push(FiniteCategory::codiscrete(2).renamed("iso"));
    out.extend((1..=3).map(FiniteCategory::discrete));
    out.extend((1..=3).map(FiniteCategory::codiscrete));
    out.push(FiniteCategory::terminal());
    out.into_iter().map(Arc::new).collect()
}

/// Named functors between corpus categories.
pub fn corpus_functors(cats: &[Arc<FiniteCategory>]) -> Vec<(String, Functor)> {
    let get = |n: &str| cats.iter().find(|c| c.name == n).expect("corpus category").clone();
    let t = get("terminal");
    let mut out: Vec<(String, Functor)> = ["iso", "discrete2", "I1", "C3", "I0"].iter().map(|n| (format!("{n}_to_terminal"), Functor::to_terminal(&get(n), &t))).collect();
    let (i1, iso) = (get("I1"), get("iso"));
    let arrows = i1.arrows.iter().map(|a| iso.arrow_by_name(&a.name).expect("same names")).collect();
    out.push(("I1_into_iso".into(), Functor::new(&i1, &iso, vec![0, 1], arrows).expect("functor")));
    out.push(("I2_identity".into(), Functor::identity(&get("I2"))));
    out
}

fn put(dir: &Path, rel: &str, text: String, files: &mut Vec<(String, String)>) -> CliResult<()> {
    let p = dir.join(rel);
    if let Some(parent) = p.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Failure { file: Some(parent.display().to_string()), error: Error::Io(e.to_string()) })?;
    }
    std::fs::write(&p, &text).map_err(|e| Failure { file: Some(p.display().to_string()), error: Error::Io(e.to_string()) })?;
    files.push((p.display().to_string(), digest(&text)));
    Ok(())
}

fn bss_text(x: &crate::bisimplicial::BisimplicialSet, window: usize, budget: Budget) -> CliResult<String> {
    Ok(crate::bisimplicial::emit_bss(x.name(), x, window, budget)?)
}

/// Writes the corpus under `dir` and returns the written files with their
/// digests.
pub fn write_corpus(dir: &Path, budget: Budget) -> CliResult<Vec<(String, String)>> {
    let mut files = Vec::new();
    let sset = |name: &str, x: &SimplicialSet| emit_sset(name, x);
    for n in 0..=3 {
        put(dir, &format!("simplicial/D{n}.sset"), sset(&format!("D{n}"), &simplex(n)), &mut files)?;
        let bd = boundary(n);
        put(dir, &format!("simplicial/dD{n}.sset"), sset(&format!("dD{n}"), &bd.set), &mut files)?;
        put(dir, &format!("simplicial/inc_dD{n}.smap"), emit_smap(&format!("inc_dD{n}"), &format!("dD{n}.sset"), &format!("D{n}.sset"), &bd.inclusion), &mut files)?;
        if n >= 1 {
            for k in 0..=n {
                let h = horn(n, k)?;
                put(dir, &format!("simplicial/V{n}_{k}.sset"), sset(&format!("V{n}_{k}"), &h.set), &mut files)?;
                put(dir, &format!("simplicial/inc_V{n}_{k}.smap"), emit_smap(&format!("inc_V{n}_{k}"), &format!("V{n}_{k}.sset"), &format!("D{n}.sset"), &h.inclusion), &mut files)?;
            }
        }
    }
    let pt = Arc::new(SimplicialSet::point());
    put(dir, "simplicial/point.sset", sset("point", &pt), &mut files)?;
    for n in 1..=3 {
        put(dir, &format!("simplicial/D{n}_to_point.smap"), emit_smap(&format!("D{n}_to_point"), &format!("D{n}.sset"), "point.sset", &SimplicialMap::to_point(&simplex(n), &pt)), &mut files)?;
    }

    let cats = corpus_categories();
    let mut doc: String = cats.iter().map(|c| emit_cat(c)).collect::<Vec<_>>().join("\n");
    for (name, f) in corpus_functors(&cats) {
        doc.push('\n');
        doc.push_str(&emit_functor(&name, &f));
    }
    put(dir, "cat/categories.cat", doc, &mut files)?;
    for c in &cats {
        let x = crate::cat::nerve(c);
        put(dir, &format!("nerve/nerve_{}.bss", c.name), bss_text(&x, 3, budget)?, &mut files)?;
    }

    for k in 0..=3 {
        for (kind, label) in [(SpineKind::G, "G"), (SpineKind::Delta, "Delta")] {
            let x = build_spine(kind, k, None)?;
            put(dir, &format!("spine/{label}{k}.bss"), bss_text(&x, 3, budget)?, &mut files)?;
        }
    }
    let e = e_space();
    put(dir, "spine/E.bss", emit_truncation("E", &*e.rows(3, budget)?, true), &mut files)?;

    let mut scats = Vec::new();
    let mut us = Vec::new();
    for (name, k) in [("U_D2", simplex(2)), ("U_V21", horn(2, 1)?.set), ("U_dD2", boundary(2).set)] {
        let mut c = FiniteSimplicialCategory::u_functor(&k, budget)?;
        c.name = name.into();
        let c = Arc::new(c);
        scats.push(emit_scat(&c));
        us.push(c);
    }
    let uv = SimplicialFunctor::u_map(&horn(2, 1)?.inclusion, &us[1], &us[0])?;
    let ub = SimplicialFunctor::u_map(&boundary(2).inclusion, &us[2], &us[0])?;
    scats.push(emit_sfunctor("U_horn", &uv));
    scats.push(emit_sfunctor("U_boundary", &ub));
    put(dir, "cat/scats.cat", scats.join("\n"), &mut files)?;

    for family in [Family::Ic, Family::If] {
        for m in 0..=3 {
            for n in 0..=3 {
                let Ok(g) = build_generator(family, m, n) else { continue };
                let window = n.max(1);
                let path = dir.join(format!("gen/{family}_{m}_{n}.bmap"));
                for p in write_artifact(&path, &Artifact::Bmap(format!("{family}_{m}_{n}"), g.map), window, budget)? {
                    let text = std::fs::read_to_string(&p).map_err(|e| Failure { file: Some(p.clone()), error: Error::Io(e.to_string()) })?;
                    files.push((p, digest(&text)));
                }
            }
        }
    }
    Ok(files)
}
