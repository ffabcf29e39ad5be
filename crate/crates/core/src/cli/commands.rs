use std::sync::Arc;

use serde_json::{json, Value};

use super::workspace::{functor, pick, Artifact, CliResult, Object, Workspace};
use super::{Cmd, Opts, Outcome};
use crate::bisimplicial::{embed, find_isomorphism, matching_object, BisimplicialHom, BisimplicialMap, BisimplicialSet, Embed, MappingSpace};
use crate::cat::{
    cat_equiv_check, dk_check_sc, emit_cat, emit_scat, free_category, nerve, pi0_cat, psi_filtration, scat_nerve, tau1, CatDocument, Decision, FiniteSimplicialCategory, RewriteBound,
    SimplicialFunctor,
};
use crate::cat::scat::describe;
use crate::error::{Budget, Error, Result};
use crate::invariants::{homology, is_kan, pi0, we_verdict, State, Verdict};
use crate::lifting::{has_rlp, has_rlp_bss, injective_consequences, solve_lifting, FamilyRange, GeneratorFamily, LiftingSquare};
use crate::segal::{
    build_generator, build_spine, complete_check, discretize, dk_check_segal, fiber, ho_category, p_object, phi_factorization, q_object, reedy_generator, segal_check, strict_local_check, Family,
    SpineKind,
};
use crate::simplicial::standard::spine;
use crate::simplicial::{are_isomorphic, build_standard, hom_count, pushout, Limit, SimplicialSet};

fn sset_json(x: &SimplicialSet) -> Value {
    json!({ "counts": x.counts(), "nondegenerate": x.len() })
}

/// Nondegenerate counts of rows `0..=window` (fewer when fewer are stored).
fn rows_json(x: &BisimplicialSet, window: usize, budget: Budget) -> Result<Value> {
    let w = x.available().map(|a| a.min(window)).unwrap_or(window);
    let t = x.rows(w, budget)?;
    Ok(json!({ "rows": t.rows.iter().map(|r| r.len()).collect::<Vec<_>>(), "row_counts": t.row_counts(), "discrete0": t.discrete0() }))
}

fn artifact(payload: Value, a: Artifact) -> Outcome {
    Outcome { payload, artifact: Some(a), ..Default::default() }
}

fn demand(payload: Value, verdicts: Vec<(String, Verdict)>) -> Outcome {
    Outcome { payload, verdicts, demanded: true, ..Default::default() }
}

fn bmap_json(f: &BisimplicialMap, window: usize, budget: Budget) -> Result<Value> {
    let w = [f.source.available(), f.target.available()].into_iter().flatten().fold(window, usize::min);
    Ok(json!({
        "source": rows_json(&f.source, w, budget)?,
        "target": rows_json(&f.target, w, budget)?,
        "window": w,
        "injective": f.is_injective(w, budget)?,
        "isomorphism": f.is_isomorphism(w, budget)?,
    }))
}

fn generator_window(f: &BisimplicialMap, window: usize) -> usize {
    match (f.source.skeletal_bound(), f.target.skeletal_bound()) {
        (Some(a), Some(b)) => a.max(b).max(1),
        _ => window,
    }
}

fn scat<'a>(d: &'a CatDocument, name: Option<&str>) -> Result<&'a Arc<FiniteSimplicialCategory>> {
    match name {
        Some(n) => d.scat(n).ok_or_else(|| Error::invalid(format!("no simplicial category named `{n}`"))),
        None if d.scats.len() == 1 => Ok(&d.scats[0]),
        None => Err(Error::invalid(format!("the document has {} simplicial categories; name one", d.scats.len()))),
    }
}

fn parse_family(s: &str) -> Result<GeneratorFamily> {
    s.parse()
}

pub(super) fn run(cmd: &Cmd, opts: &Opts, ws: &mut Workspace) -> CliResult<Outcome> {
    let b = ws.budget;
    let window = opts.window;
    let out = match cmd {
        Cmd::Build { kind, n, k, embed: e } => {
            let x = match kind.as_str() {
                "point" => Arc::new(SimplicialSet::point()),
                "discrete" => Arc::new(SimplicialSet::discrete(*n)),
                "spine" => spine(*n).set,
                other => build_standard(other.parse()?, *n, *k)?.set,
            };
            let b = opts.budget();
            b.check_dim("build", x.top_dim().unwrap_or(0))?;
            b.check_size("build", x.len(), x.top_dim().unwrap_or(0))?;
            let name = match k {
                Some(k) => format!("{kind}_{n}_{k}"),
                None => format!("{kind}_{n}"),
            };
            match e {
                None => artifact(sset_json(&x), Artifact::Sset(name, x)),
                Some(e) => {
                    let e: Embed = e.parse()?;
                    let y = embed(e, &x);
                    artifact(rows_json(&y, window, b)?, Artifact::Bss(name, y))
                }
            }
        }
        Cmd::Corpus { dir } => {
            let dir = dir.clone().or_else(|| opts.output.clone()).ok_or_else(|| Error::invalid("corpus needs a target directory"))?;
            let files = super::write_corpus(&dir, b)?;
            let listed: Vec<Value> = files.iter().map(|(p, d)| json!({ "path": p, "sha256": d })).collect();
            return Ok(Outcome { payload: json!({ "files": listed }), outputs: files.into_iter().map(|f| f.0).collect(), ..Default::default() });
        }
        Cmd::Hom { source, target } => match (ws.load(source)?, ws.load(target)?) {
            (Object::Sset(_, a), Object::Sset(_, x)) => Outcome { payload: json!({ "count": hom_count(&a, &x, b)? }), ..Default::default() },
            (Object::Bss(_, a), Object::Bss(_, x)) => {
                let h = BisimplicialHom::new(&a, &x, window).budget(b);
                Outcome { payload: json!({ "count": h.count()?, "window": window, "exact": h.exact() }), ..Default::default() }
            }
            _ => return Err(Error::invalid("hom needs two sset or two bss documents").into()),
        },
        Cmd::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::invalid("product needs at least one factor").into());
            }
            let objs = factors.iter().map(|p| ws.load(p)).collect::<CliResult<Vec<_>>>()?;
            if objs.iter().all(|o| matches!(o, Object::Sset(..))) {
                let xs: Vec<_> = objs.into_iter().map(|o| if let Object::Sset(_, x) = o { x } else { unreachable!() }).collect();
                let l = Limit::product(&xs, b)?;
                artifact(sset_json(&l.set), Artifact::Sset("product".into(), l.set.clone()))
            } else if objs.iter().all(|o| matches!(o, Object::Bss(..))) {
                let xs: Vec<_> = objs.into_iter().map(|o| if let Object::Bss(_, x) = o { x } else { unreachable!() }).collect();
                let p = BisimplicialSet::product(&xs);
                artifact(rows_json(&p, window, b)?, Artifact::Bss("product".into(), p))
            } else {
                return Err(Error::invalid("factors must all be sset or all bss documents").into());
            }
        }
        Cmd::Pushout { f, g } => match (ws.load(f)?, ws.load(g)?) {
            (Object::Smap(_, f), Object::Smap(_, g)) => {
                let p = pushout(&f, &g, b)?;
                artifact(sset_json(&p.set), Artifact::Sset("pushout".into(), p.set.clone()))
            }
            (Object::Bmap(_, f), Object::Bmap(_, g)) => {
                let p = BisimplicialSet::pushout(&f, &g);
                artifact(rows_json(&p, window, b)?, Artifact::Bss("pushout".into(), p))
            }
            _ => return Err(Error::invalid("pushout needs two smap or two bmap documents").into()),
        },
        Cmd::Iso { a, b: c } => match (ws.load(a)?, ws.load(c)?) {
            (Object::Sset(_, x), Object::Sset(_, y)) => demand(Value::Null, vec![("isomorphic".into(), are_isomorphic(&x, &y, b))]),
            (Object::Bss(_, x), Object::Bss(_, y)) => {
                let (l, r) = (rows_json(&x, window, b)?, rows_json(&y, window, b)?);
                let v = if l["row_counts"] != r["row_counts"] {
                    Verdict::mismatch("row counts", l["row_counts"].clone(), r["row_counts"].clone(), b)
                } else {
                    match find_isomorphism(&x, &y, window, b) {
                        Ok(Some(f)) => Verdict::witness(State::Yes, format!("isomorphism through row {window}"), json!(f.key(window, b)?), b),
                        Ok(None) => Verdict::witness(State::No, format!("no isomorphism through row {window}"), json!({ "window": window }), b),
                        Err(e) => Verdict::from_budget_error(e, b)?,
                    }
                };
                demand(json!({ "window": window }), vec![("isomorphic".into(), v)])
            }
            _ => return Err(Error::invalid("iso needs two sset or two bss documents").into()),
        },
        Cmd::Skeleton { x, n } => match ws.load(x)? {
            Object::Sset(name, x) => {
                let (s, _) = x.skeleton(*n);
                artifact(sset_json(&s), Artifact::Sset(format!("sk{n}_{name}"), s))
            }
            Object::Bss(name, x) => {
                let s = x.skeleton(*n);
                artifact(rows_json(&s, window, b)?, Artifact::Bss(format!("sk{n}_{name}"), s))
            }
            _ => return Err(Error::invalid("skeleton needs an sset or bss document").into()),
        },
        Cmd::Pi0 { x } => {
            let x = ws.sset(x)?;
            let c = pi0(&x);
            Outcome { payload: json!({ "count": c.count, "classes": c.classes() }), ..Default::default() }
        }
        Cmd::Homology { x, max_deg } => {
            let x = ws.sset(x)?;
            let d = max_deg.unwrap_or_else(|| x.top_dim().unwrap_or(0));
            let h = homology(&x, d, b)?;
            let groups: Vec<Value> = h.iter().enumerate().map(|(k, g)| json!({ "degree": k, "group": g.to_string(), "rank": g.rank, "torsion": g.torsion })).collect();
            Outcome { payload: json!({ "homology": groups }), ..Default::default() }
        }
        Cmd::Kan { x } => {
            let x = ws.sset(x)?;
            demand(json!({ "dim_bound": opts.kmax }), vec![("kan".into(), is_kan(&x, opts.kmax, b))])
        }
        Cmd::We { f } => {
            let f = ws.smap(f)?;
            demand(Value::Null, vec![("weak_equivalence".into(), we_verdict(&f, b))])
        }
        Cmd::Cosk { x, n } => {
            let x = ws.bss(x)?;
            let c = x.cosk(*n);
            artifact(rows_json(&c, window, b)?, Artifact::Bss(format!("cosk{n}_{}", x.name()), c))
        }
        Cmd::Matching { x, n } => {
            let x = ws.bss(x)?;
            let (m, map) = matching_object(&x, *n, b)?;
            Outcome { payload: json!({ "matching": sset_json(&m), "row": sset_json(&*x.row(*n, b)?), "surjective": map.is_surjective(), "injective": map.is_injective() }), ..Default::default() }
        }
        Cmd::Mapspace { x, y, deg } => {
            let (x, y) = (ws.bss(x)?, ws.bss(y)?);
            let m = MappingSpace::compute(&x, &y, *deg, window, b)?;
            let payload = json!({ "sizes": m.sizes(), "space": sset_json(&m.set), "window": window, "exact": m.exact });
            artifact(payload, Artifact::Sset(format!("map_{}_{}", x.name(), y.name()), m.set.clone()))
        }
        Cmd::Reduce { x } => {
            let x = ws.bss(x)?;
            let r = x.reduce();
            artifact(rows_json(&r, window, b)?, Artifact::Bss(format!("{}_r", x.name()), r))
        }
        Cmd::Gen { family, m, n } => match family.as_str() {
            "P" | "Q" => {
                let p = if family == "P" { p_object(*m, *n) } else { q_object(*m, *n) };
                let w = p.set.skeletal_bound().unwrap_or(window);
                artifact(rows_json(&p.set, w, b)?, Artifact::Bss(format!("{family}_{m}_{n}"), p.set.clone()))
            }
            _ => {
                let map = if family == "reedy" { reedy_generator(*m, *n) } else { build_generator(family.parse::<Family>()?, *m, *n)?.map };
                let w = generator_window(&map, window);
                Outcome { payload: bmap_json(&map, w, b)?, artifact: Some(Artifact::Bmap(format!("{family}_{m}_{n}"), map)), ..Default::default() }
            }
        },
        Cmd::Fiber { x, vertices } => {
            let x = ws.bss(x)?;
            let f = fiber(&x, vertices, b)?;
            let label = vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_");
            artifact(json!({ "over": f.over, "fiber": sset_json(&f.set) }), Artifact::Sset(format!("fiber_{label}"), f.set.clone()))
        }
        Cmd::Spine { kind, k, objects } => {
            let kind: SpineKind = kind.parse()?;
            let x = build_spine(kind, *k, (!objects.is_empty()).then_some(objects.as_slice()))?;
            artifact(rows_json(&x, window, b)?, Artifact::Bss(x.name().to_string(), x.clone()))
        }
        Cmd::SegalCheck { x } => {
            let x = ws.bss(x)?;
            let r = segal_check(&x, opts.kmax, b)?;
            let steps: Vec<Value> = r.steps.iter().map(|s| json!({ "k": s.k, "source_size": s.source, "target_size": s.target, "state": s.verdict.state })).collect();
            demand(json!({ "steps": steps }), r.steps.iter().map(|s| (format!("phi_{}", s.k), s.verdict.clone())).collect())
        }
        Cmd::Ho { x } => {
            let x = ws.bss(x)?;
            let h = ho_category(&x, b)?;
            let c = &h.category;
            artifact(json!({ "objects": c.objects, "arrows": c.arrows.iter().map(|a| &a.name).collect::<Vec<_>>() }), Artifact::Text(emit_cat(c)))
        }
        Cmd::CompleteCheck { x } => {
            let x = ws.bss(x)?;
            demand(Value::Null, vec![("complete".into(), complete_check(&x, b)?)])
        }
        Cmd::DkSegal { f, name } => {
            let f = ws.bmap(f, name.as_deref())?;
            demand(Value::Null, vec![("dwyer_kan".into(), dk_check_segal(&f, b)?)])
        }
        Cmd::Discretize { w } => {
            let w = ws.bss(w)?;
            let d = discretize(&w, b)?;
            let mut payload = rows_json(&d.set, window, b)?;
            payload["unchanged"] = json!(d.set.ptr_eq(&w));
            artifact(payload, Artifact::Bss(format!("R_{}", w.name()), d.set))
        }
        Cmd::Phi { f, name } => {
            let f = ws.bmap(f, name.as_deref())?;
            let p = phi_factorization(&f, window, b)?;
            let payload = rows_json(&p.set, window, b)?;
            Outcome { payload, verdicts: vec![("factorization".into(), p.check)], demanded: true, artifact: Some(Artifact::Bss("PhiY".into(), p.set)), ..Default::default() }
        }
        Cmd::StrictLocal { x, deg } => {
            let x = ws.bss(x)?;
            demand(json!({ "kmax": opts.kmax, "deg": deg }), vec![("strictly_local".into(), strict_local_check(&x, opts.kmax, *deg, b)?)])
        }
        Cmd::Nerve { doc, name } => {
            let d = ws.cat(doc)?;
            let x = match name.as_deref().and_then(|n| d.category(n)).or(if name.is_none() && d.categories.len() == 1 { d.categories.first() } else { None }) {
                Some(c) => nerve(c),
                None => scat_nerve(scat(&d, name.as_deref())?),
            };
            artifact(rows_json(&x, window, b)?, Artifact::Bss(x.name().to_string(), x.clone()))
        }
        Cmd::Ufunctor { k } => {
            let k = ws.sset(k)?;
            let mut c = FiniteSimplicialCategory::u_functor(&k, b)?;
            c.name = "U".into();
            artifact(describe(&c), Artifact::Text(emit_scat(&c)))
        }
        Cmd::Pi0cat { doc, name } => {
            let d = ws.cat(doc)?;
            let p = pi0_cat(scat(&d, name.as_deref())?)?;
            let c = &p.category;
            artifact(json!({ "objects": c.objects, "arrows": c.arrows.iter().map(|a| &a.name).collect::<Vec<_>>() }), Artifact::Text(emit_cat(c)))
        }
        Cmd::Equiv { doc, name } => {
            let d = ws.cat(doc)?;
            let f = functor(&d, name.as_deref())?;
            demand(Value::Null, vec![("equivalence".into(), cat_equiv_check(&f, b))])
        }
        Cmd::DkSc { f, name } => {
            let sf = match ws.load(f)? {
                Object::Smap(_, m) => {
                    let s = Arc::new(FiniteSimplicialCategory::u_functor(&m.source, b)?);
                    let t = Arc::new(FiniteSimplicialCategory::u_functor(&m.target, b)?);
                    SimplicialFunctor::u_map(&m, &s, &t)?
                }
                Object::Cat(d) => pick(&d.sfunctors, name.as_deref(), "simplicial functor")?.1.clone(),
                _ => return Err(Error::invalid("dk-sc needs an smap or a CAT document with a simplicial functor").into()),
            };
            demand(Value::Null, vec![("dwyer_kan".into(), dk_check_sc(&sf, b)?)])
        }
        Cmd::Freecat { doc, name } => {
            let d = ws.cat(doc)?;
            let quivers: Vec<(String, _)> = d.quivers.iter().map(|q| (q.name.clone(), q.clone())).collect();
            let q = &pick(&quivers, name.as_deref(), "quiver")?.1;
            let c = free_category(q)?;
            artifact(json!({ "objects": c.num_objects(), "arrows": c.num_arrows() }), Artifact::Text(emit_cat(&c)))
        }
        Cmd::Psi { k, objects } => {
            let x = psi_filtration(objects, *k)?;
            artifact(rows_json(&x, window, b)?, Artifact::Bss(x.name().to_string(), x.clone()))
        }
        Cmd::Tau1 { x } => {
            let x = ws.bss(x)?;
            let p = tau1(&x, RewriteBound::default(), b)?;
            let base = json!({ "generators": p.quiver.edges.len(), "relations": p.relations.len() });
            match &p.status {
                Decision::Decided(c) => {
                    let mut payload = base;
                    payload["objects"] = json!(c.num_objects());
                    payload["arrows"] = json!(c.num_arrows());
                    Outcome { payload, artifact: Some(Artifact::Text(emit_cat(c))), ..Default::default() }
                }
                Decision::Undecided(reason) => Outcome { payload: base, verdicts: vec![("decided".into(), Verdict::unknown(reason.clone(), b))], ..Default::default() },
            }
        }
        Cmd::Lift { i, f, top, bottom } => {
            let sq = LiftingSquare::new(ws.smap(i)?, ws.smap(f)?, ws.smap(top)?, ws.smap(bottom)?)?;
            let lifts = solve_lifting(&sq, b)?;
            let v = if lifts.is_empty() {
                Verdict::witness(State::No, "no lift exists", sq.to_json(), b)
            } else {
                Verdict::witness(State::Yes, "a lift", json!(lifts[0].images()), b)
            };
            let payload = json!({ "square": sq.to_json(), "count": lifts.len(), "lifts": lifts.iter().map(|h| h.images().to_vec()).collect::<Vec<_>>() });
            demand(payload, vec![("lift".into(), v)])
        }
        Cmd::Rlp { f, name, family, m_max, n_max } => {
            let r = match ws.load(f)? {
                Object::Smap(_, f) => has_rlp(&f, FamilyRange::new(parse_family(family.as_deref().unwrap_or("horns"))?, *m_max, *n_max), b)?,
                Object::Bmap(_, g) => has_rlp_bss(&g, FamilyRange::new(parse_family(family.as_deref().unwrap_or("If"))?, *m_max, *n_max), b)?,
                Object::Cat(_) => {
                    let g = ws.bmap(f, name.as_deref())?;
                    has_rlp_bss(&g, FamilyRange::new(parse_family(family.as_deref().unwrap_or("If"))?, *m_max, *n_max), b)?
                }
                _ => return Err(Error::invalid("rlp needs an smap, a bmap or a CAT functor").into()),
            };
            demand(r.to_json(), vec![("rlp".into(), r.verdict.clone())])
        }
        Cmd::Injective { f, name, family, m_max, n_max } => {
            let g = ws.bmap(f, name.as_deref())?;
            let r = injective_consequences(&g, FamilyRange::new(parse_family(family)?, *m_max, *n_max), b)?;
            demand(r.to_json(), vec![("injective".into(), r.overall(b))])
        }
    };
    Ok(out)
}
