//! Segal maps, the homotopy category, completeness and Dwyer–Kan
//! equivalence of Segal precategories.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::fiber::fiber_in;
use crate::bisimplicial::rules::corestrict;
use crate::bisimplicial::{BisimplicialMap, BisimplicialSet, Truncation};
use crate::cat::{cat_equiv_check, Arrow, FiniteCategory, Functor};
use crate::error::{Budget, Error, Result};
use crate::invariants::{pi0, we_verdict, Components, Verdict};
use crate::simplicial::{Diagram, Limit, NdId, SimplicialMap};

pub(crate) fn require_discrete0(t: &Truncation) -> Result<()> {
    if t.discrete0() {
        Ok(())
    } else {
        Err(Error::invalid("row 0 is not discrete"))
    }
}

/// `X_1 ×_{X_0} ... ×_{X_0} X_1` (`k` factors) with the Segal map into it.
pub fn segal_map(t: &Truncation, k: usize, budget: Budget) -> Result<(Arc<Limit>, SimplicialMap)> {
    let mut d = Diagram::new();
    let ones: Vec<usize> = (0..k).map(|_| d.node(t.rows[1].clone())).collect();
    for j in 0..k.saturating_sub(1) {
        let z = d.node(t.rows[0].clone());
        d.arrow(ones[j], z, t.face(1, 0).clone());
        d.arrow(ones[j + 1], z, t.face(1, 1).clone());
    }
    let lim = Limit::compute(d, budget)?;
    let edges: Vec<SimplicialMap> = (0..k).map(|i| t.operator(&[i, i + 1], k)).collect();
    let verts: Vec<SimplicialMap> = (1..k).map(|i| t.vertex(k, i)).collect();
    let phi = lim.induced(&t.rows[k], |node, s| if node < k { edges[node].apply(s) } else { verts[node - k].apply(s) })?;
    Ok((Arc::new(lim), phi))
}

#[derive(Debug, Clone)]
pub struct SegalStep {
    pub k: usize,
    pub source: usize,
    pub target: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct SegalReport {
    pub steps: Vec<SegalStep>,
    pub overall: Verdict,
}

impl SegalReport {
    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                let mut r = s.verdict.record(&format!("phi_{}", s.k));
                r["k"] = json!(s.k);
                r["source_size"] = json!(s.source);
                r["target_size"] = json!(s.target);
                r
            })
            .collect();
        json!({ "overall": self.overall.record("segal"), "steps": steps })
    }
}

/// The Segal maps `φ_k` for `2 ≤ k ≤ k_max`, each with a weak-equivalence
/// verdict.
pub fn segal_check(x: &BisimplicialSet, k_max: usize, budget: Budget) -> Result<SegalReport> {
    let t = x.rows(k_max.max(1), budget)?;
    require_discrete0(&t)?;
    let mut steps = Vec::new();
    for k in 2..=k_max {
        let step = match segal_map(&t, k, budget) {
            Ok((lim, phi)) => SegalStep { k, source: t.rows[k].len(), target: lim.set.len(), verdict: we_verdict(&phi, budget) },
            Err(e) => SegalStep { k, source: t.rows[k].len(), target: 0, verdict: Verdict::from_budget_error(e, budget)? },
        };
        steps.push(step);
    }
    let overall = Verdict::all(steps.iter().map(|s| (format!("phi_{}", s.k), s.verdict.clone())).collect(), budget);
    Ok(SegalReport { steps, overall })
}

/// `Ho(W)` with the component data that produced it.
#[derive(Debug, Clone)]
pub struct HoCategory {
    pub category: Arc<FiniteCategory>,
    /// Row-0 point of each object.
    pub objects: Vec<NdId>,
    /// Arrow of each point of row 1, indexed by simplex id (unused for
    /// higher simplices).
    pub arrow_of: Vec<usize>,
    /// A point of row 1 in each arrow's component.
    pub representative: Vec<NdId>,
    pub components: Components,
}

impl HoCategory {
    pub fn object_of(&self, point: NdId) -> Option<usize> {
        self.objects.iter().position(|&p| p == point)
    }
}

pub fn ho_category(w: &BisimplicialSet, budget: Budget) -> Result<HoCategory> {
    let t = w.rows(2, budget)?;
    require_discrete0(&t)?;
    ho_of(&t, w.name())
}

pub(crate) fn ho_of(t: &Truncation, name: &str) -> Result<HoCategory> {
    let objects: Vec<NdId> = t.rows[0].vertices().to_vec();
    let obj_index: HashMap<NdId, usize> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let x1 = &t.rows[1];
    let comps = pi0(x1);
    let classes = comps.classes();
    let (d0, d1) = (t.face(1, 0), t.face(1, 1));
    let mut arrows = Vec::new();
    let mut representative = Vec::new();
    let mut arrow_of = vec![usize::MAX; x1.len()];
    let s0 = t.degen(0, 0);
    let identity_components: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &p)| (comps.component_of(x1, s0.image(p).nd), i)).collect();
    for (c, class) in classes.iter().enumerate() {
        let p = class[0];
        let src = obj_index[&d1.image(p).nd];
        let dst = obj_index[&d0.image(p).nd];
        let name = match identity_components.get(&c) {
            Some(&x) => format!("id_{x}"),
            None => format!("a{c}"),
        };
        arrows.push(Arrow { name, src, dst });
        representative.push(p);
        for &q in class {
            arrow_of[q as usize] = c;
        }
    }
    let identities: Vec<usize> = objects.iter().map(|&p| comps.component_of(x1, s0.image(p).nd)).collect();

    let x2 = &t.rows[2];
    let (e0, e1, e2) = (t.face(2, 0), t.face(2, 1), t.face(2, 2));
    let arrow = |s: crate::simplicial::Simplex| comps.component_of(x1, s.nd);
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for &v in x2.vertices() {
        let f = arrow(e2.image(v));
        let g = arrow(e0.image(v));
        let h = arrow(e1.image(v));
        if let Some(old) = table.insert((g, f), h) {
            if old != h {
                return Err(Error::SegalDefect(format!(
                    "{} ∘ {} has composites in two components ({} and {})",
                    arrows[g].name, arrows[f].name, arrows[old].name, arrows[h].name
                )));
            }
        }
    }
    let mut comps_list = Vec::new();
    for f in 0..arrows.len() {
        for g in 0..arrows.len() {
            if arrows[g].src != arrows[f].dst {
                continue;
            }
            match table.get(&(g, f)) {
                Some(&h) => comps_list.push((g, f, h)),
                None => {
                    return Err(Error::MissingComposite(format!(
                        "no 2-simplex over the composable pair ({}, {})",
                        arrows[f].name, arrows[g].name
                    )))
                }
            }
        }
    }
    let names = objects.iter().map(|p| p.to_string()).collect();
    let category = FiniteCategory::new(format!("Ho({name})"), names, arrows, identities, &comps_list)
        .map_err(|e| Error::SegalDefect(format!("composition is not a category: {e}")))?;
    Ok(HoCategory { category: Arc::new(category), objects, arrow_of, representative, components: comps })
}

/// Completeness: `s_0 : W_0 -> W_hoequiv` is a weak equivalence.
pub fn complete_check(w: &BisimplicialSet, budget: Budget) -> Result<Verdict> {
    let t = w.rows(2, budget)?;
    require_discrete0(&t)?;
    let ho = ho_of(&t, w.name())?;
    let x1 = &t.rows[1];
    let keep: Vec<NdId> = x1.ids().filter(|&id| ho.category.is_iso(ho.components.component_of(x1, id))).collect();
    let (hoequiv, inc) = x1.subcomplex(keep);
    let s0 = corestrict(t.degen(0, 0), &inc)?;
    debug_assert!(Arc::ptr_eq(&s0.target, &hoequiv));
    Ok(we_verdict(&s0, budget))
}

/// `Ho(f)` as a functor.
pub fn ho_functor(f: &BisimplicialMap, hu: &HoCategory, hv: &HoCategory, budget: Budget) -> Result<Functor> {
    let rows = f.rows(1, budget)?;
    let objects = hu
        .objects
        .iter()
        .map(|&p| hv.object_of(rows[0].image(p).nd).ok_or_else(|| Error::malformed("object image is not a point")))
        .collect::<Result<Vec<_>>>()?;
    let arrows = hu.representative.iter().map(|&p| hv.arrow_of[rows[1].image(p).nd as usize]).collect();
    Functor::new(&hu.category, &hv.category, objects, arrows)
}

/// DK-equivalence: every `map_U(x, y) -> map_V(fx, fy)` a weak equivalence
/// and `Ho(f)` an equivalence of categories.
pub fn dk_check_segal(f: &BisimplicialMap, budget: Budget) -> Result<Verdict> {
    let tu = f.source.rows(2, budget)?;
    let tv = f.target.rows(2, budget)?;
    require_discrete0(&tu)?;
    require_discrete0(&tv)?;
    let hu = ho_of(&tu, f.source.name())?;
    let hv = ho_of(&tv, f.target.name())?;
    let rows = f.rows(2, budget)?;
    let mut parts = Vec::new();
    for &x in &hu.objects {
        for &y in &hu.objects {
            let (fx, fy) = (rows[0].image(x).nd as usize, rows[0].image(y).nd as usize);
            let fu = fiber_in(&tu, &[x as usize, y as usize])?;
            let fv = fiber_in(&tv, &[fx, fy])?;
            let m = corestrict(&fu.inclusion.then(&rows[1]), &fv.inclusion)?;
            parts.push((format!("map({x},{y})"), we_verdict(&m, budget)));
        }
    }
    let hf = ho_functor(f, &hu, &hv, budget)?;
    parts.push(("Ho(f)".to_string(), cat_equiv_check(&hf, budget)));
    Ok(Verdict::all(parts, budget))
}
