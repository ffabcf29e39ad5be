//! Diagonal lifts in commuting squares and right lifting properties against
//! finite ranges of generator families.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::bisimplicial::rules::corestrict;
use crate::bisimplicial::{BisimplicialHom, BisimplicialMap};
use crate::error::{Budget, Error, Result};
use crate::invariants::{State, Verdict};
use crate::segal::fiber::{fiber_in, vertex_tuples};
use crate::segal::{if_generator, ic_generator, reedy_generator};
use crate::simplicial::standard::{boundary, horn};
use crate::simplicial::{HomSearch, NdId, Simplex, SimplicialMap, SimplicialSet};

/// A commuting square `top : A -> X`, `bottom : B -> Y` over `i : A -> B`
/// and `f : X -> Y`.
#[derive(Debug, Clone)]
pub struct LiftingSquare {
    pub i: SimplicialMap,
    pub f: SimplicialMap,
    pub top: SimplicialMap,
    pub bottom: SimplicialMap,
}

impl LiftingSquare {
    pub fn new(i: SimplicialMap, f: SimplicialMap, top: SimplicialMap, bottom: SimplicialMap) -> Result<Self> {
        if i.then(&bottom).images() != top.then(&f).images() {
            return Err(Error::invalid("the square does not commute"));
        }
        Ok(LiftingSquare { i, f, top, bottom })
    }

    pub fn is_lift(&self, h: &SimplicialMap) -> bool {
        self.i.then(h).images() == self.top.images() && h.then(&self.f).images() == self.bottom.images()
    }

    pub fn to_json(&self) -> Value {
        json!({ "top": self.top.images(), "bottom": self.bottom.images() })
    }
}

/// Every diagonal `h : B -> X`, sorted by images.
pub fn solve_lifting(sq: &LiftingSquare, budget: Budget) -> Result<Vec<SimplicialMap>> {
    let b = &sq.i.target;
    let x = &sq.f.source;
    let mut fixed: Vec<Option<Simplex>> = vec![None; b.len()];
    for a in sq.i.source.ids() {
        let s = sq.i.image(a);
        if s.word.is_empty() {
            fixed[s.nd as usize] = Some(sq.top.image(a));
        }
    }
    let bottom = sq.bottom.clone();
    let f = sq.f.clone();
    let mut out = Vec::new();
    HomSearch::new(b, x).budget(budget).fixed(fixed).filter(move |id, s| f.apply(s) == bottom.image(id)).for_each(|images| {
        let h = SimplicialMap::from_images_unchecked(b.clone(), x.clone(), images.to_vec());
        if sq.is_lift(&h) {
            out.push(h);
        }
        ControlFlow::Continue(())
    })?;
    out.sort_by(|p, q| p.images().cmp(q.images()));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorFamily {
    Horns,
    Boundaries,
    Reedy,
    Ic,
    If,
}

impl std::str::FromStr for GeneratorFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "horns" => Ok(GeneratorFamily::Horns),
            "boundaries" => Ok(GeneratorFamily::Boundaries),
            "reedy" => Ok(GeneratorFamily::Reedy),
            "Ic" | "ic" => Ok(GeneratorFamily::Ic),
            "If" | "if" => Ok(GeneratorFamily::If),
            _ => Err(Error::invalid(format!("unknown generator family `{s}`"))),
        }
    }
}

impl std::fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GeneratorFamily::Horns => "horns",
            GeneratorFamily::Boundaries => "boundaries",
            GeneratorFamily::Reedy => "reedy",
            GeneratorFamily::Ic => "Ic",
            GeneratorFamily::If => "If",
        })
    }
}

impl GeneratorFamily {
    pub fn is_simplicial(self) -> bool {
        matches!(self, GeneratorFamily::Horns | GeneratorFamily::Boundaries)
    }
}

/// A family with the checked parameter range `m ≤ m_max`, `n ≤ n_max`
/// (`n` unused for the simplicial families).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyRange {
    pub family: GeneratorFamily,
    pub m_max: usize,
    pub n_max: usize,
}

impl FamilyRange {
    pub fn new(family: GeneratorFamily, m_max: usize, n_max: usize) -> Self {
        FamilyRange { family, m_max, n_max }
    }

    /// The simplicial generators in range.
    pub fn simplicial_instances(&self) -> Result<Vec<(String, SimplicialMap)>> {
        match self.family {
            GeneratorFamily::Horns => {
                let mut out = Vec::new();
                for m in 1..=self.m_max {
                    for k in 0..=m {
                        out.push((format!("V[{m},{k}]"), horn(m, k)?.inclusion));
                    }
                }
                Ok(out)
            }
            GeneratorFamily::Boundaries => Ok((0..=self.m_max).map(|m| (format!("dD[{m}]"), boundary(m).inclusion)).collect()),
            _ => Err(Error::invalid(format!("{} is a family of bisimplicial maps", self.family))),
        }
    }

    /// The bisimplicial generators in range, skipping parameters outside
    /// the family.
    pub fn bisimplicial_instances(&self) -> Result<Vec<(String, BisimplicialMap)>> {
        let mut out = Vec::new();
        for m in 0..=self.m_max {
            for n in 0..=self.n_max {
                let label = format!("{}({m},{n})", self.family);
                match self.family {
                    GeneratorFamily::Reedy => out.push((label, reedy_generator(m, n))),
                    GeneratorFamily::Ic => {
                        if let Ok(g) = ic_generator(m, n) {
                            out.push((label, g.map));
                        }
                    }
                    GeneratorFamily::If => out.push((label, if_generator(m, n).map)),
                    _ => return Err(Error::invalid(format!("{} is a family of simplicial maps", self.family))),
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({ "family": self.family.to_string(), "m_max": self.m_max, "n_max": self.n_max })
    }
}

#[derive(Debug, Clone)]
pub struct RlpReport {
    pub range: FamilyRange,
    pub squares: usize,
    pub failures: Vec<Value>,
    pub verdict: Verdict,
}

impl RlpReport {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.range.family.to_string(),
            "range": self.range.to_json(),
            "squares_checked": self.squares,
            "failures": self.failures,
            "verdict": self.verdict.record("rlp"),
        })
    }
}

fn finish(range: FamilyRange, squares: usize, failure: Option<Value>, budget: Budget) -> RlpReport {
    match failure {
        Some(w) => RlpReport { range, squares, failures: vec![w.clone()], verdict: Verdict::witness(State::No, "unliftable square", w, budget) },
        None => {
            let desc = format!("every square against {} with m ≤ {}, n ≤ {} lifts", range.family, range.m_max, range.n_max);
            RlpReport { range, squares, failures: Vec::new(), verdict: Verdict::exhaustive(desc, squares, budget) }
        }
    }
}

fn budget_report(range: FamilyRange, squares: usize, e: Error, budget: Budget) -> Result<RlpReport> {
    Ok(RlpReport { range, squares, failures: Vec::new(), verdict: Verdict::from_budget_error(e, budget)? })
}

/// Right lifting property of a simplicial map against horns or boundaries.
pub fn has_rlp(f: &SimplicialMap, range: FamilyRange, budget: Budget) -> Result<RlpReport> {
    let mut squares = 0;
    match rlp_simplicial(f, &range.simplicial_instances()?, &mut squares, budget) {
        Ok(w) => Ok(finish(range, squares, w, budget)),
        Err(e) => budget_report(range, squares, e, budget),
    }
}

fn rlp_simplicial(f: &SimplicialMap, gens: &[(String, SimplicialMap)], squares: &mut usize, budget: Budget) -> Result<Option<Value>> {
    let (x, y) = (&f.source, &f.target);
    for (label, i) in gens {
        let (a, b) = (&i.source, &i.target);
        for bottom in HomSearch::new(b, y).budget(budget).collect()? {
            let ib = i.then(&bottom);
            let tops = HomSearch::new(a, x).budget(budget).filter(|id, s| f.apply(s) == ib.image(id)).collect()?;
            for top in tops {
                *squares += 1;
                let sq = LiftingSquare { i: i.clone(), f: f.clone(), top, bottom: bottom.clone() };
                if solve_lifting(&sq, budget)?.is_empty() {
                    let mut w = sq.to_json();
                    w["generator"] = json!(label);
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Right lifting property of a map of bisimplicial sets against reedy,
/// `I_c` or `I_f` generators in range.
pub fn has_rlp_bss(f: &BisimplicialMap, range: FamilyRange, budget: Budget) -> Result<RlpReport> {
    let mut squares = 0;
    match rlp_bss(f, &range.bisimplicial_instances()?, &mut squares, budget) {
        Ok(w) => Ok(finish(range, squares, w, budget)),
        Err(e) => budget_report(range, squares, e, budget),
    }
}

fn generator_window(i: &BisimplicialMap) -> usize {
    let s = i.source.skeletal_bound().unwrap_or(0);
    let t = i.target.skeletal_bound().unwrap_or(0);
    s.max(t)
}

fn keys(rows: &[SimplicialMap]) -> Vec<Vec<Simplex>> {
    rows.iter().map(|r| r.images().to_vec()).collect()
}

fn rlp_bss(f: &BisimplicialMap, gens: &[(String, BisimplicialMap)], squares: &mut usize, budget: Budget) -> Result<Option<Value>> {
    let (x, y) = (&f.source, &f.target);
    for (label, i) in gens {
        let w = generator_window(i);
        let fr = f.rows(w, budget)?;
        let ir = i.rows(w, budget)?;
        for bottom in BisimplicialHom::new(&i.target, y, w).budget(budget).collect()? {
            let br = bottom.rows(w, budget)?;
            let ib: Vec<SimplicialMap> = ir.iter().zip(&br).map(|(a, b)| a.then(b)).collect();
            let tops = BisimplicialHom::new(&i.source, x, w).budget(budget).filter(|k, id, s| fr[k].apply(s) == ib[k].image(id)).collect()?;
            for top in tops {
                *squares += 1;
                let tr = top.rows(w, budget)?;
                // images forced on B by i, and the required images under f
                let mut forced: Vec<HashMap<NdId, Simplex>> = vec![HashMap::new(); w + 1];
                for k in 0..=w {
                    for a in ir[k].source.ids() {
                        let s = ir[k].image(a);
                        if s.word.is_empty() {
                            forced[k].insert(s.nd, tr[k].image(a));
                        }
                    }
                }
                let lift = BisimplicialHom::new(&i.target, x, w)
                    .budget(budget)
                    .filter(|k, id, s| forced[k].get(&id).map(|&t| t == s).unwrap_or(true) && fr[k].apply(s) == br[k].image(id))
                    .collect()?
                    .into_iter()
                    .find(|h| {
                        h.rows(w, budget)
                            .map(|hr| {
                                let ih: Vec<SimplicialMap> = ir.iter().zip(&hr).map(|(a, b)| a.then(b)).collect();
                                let hf: Vec<SimplicialMap> = hr.iter().zip(fr.iter()).map(|(a, b)| a.then(b)).collect();
                                keys(&ih) == keys(&tr) && keys(&hf) == keys(&br)
                            })
                            .unwrap_or(false)
                    });
                if lift.is_none() {
                    return Ok(Some(json!({ "generator": label, "top": keys(&tr), "bottom": keys(&br) })));
                }
            }
        }
    }
    Ok(None)
}

/// The checks implied by `I`-injectivity of a map of Segal precategories.
#[derive(Debug, Clone)]
pub struct InjectiveConsequences {
    pub surjective_on_objects: Verdict,
    /// Every vertex-fiber map through row `n_max` against the boundary
    /// inclusions with `m ≤ m_max`.
    pub fibers: Verdict,
    pub family: RlpReport,
    /// False when the family check is Yes but some consequence is not.
    pub consistent: bool,
}

impl InjectiveConsequences {
    pub fn overall(&self, budget: Budget) -> Verdict {
        Verdict::all(vec![("objects".into(), self.surjective_on_objects.clone()), ("fibers".into(), self.fibers.clone())], budget)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "surjective_on_objects": self.surjective_on_objects.record("objects"),
            "fibers": self.fibers.record("fibers"),
            "family": self.family.to_json(),
            "consistent": self.consistent,
        })
    }
}

pub fn injective_consequences(f: &BisimplicialMap, range: FamilyRange, budget: Budget) -> Result<InjectiveConsequences> {
    let w = range.n_max;
    let tx = f.source.rows(w, budget)?;
    let ty = f.target.rows(w, budget)?;
    if !tx.discrete0() || !ty.discrete0() {
        return Err(Error::invalid("row 0 is not discrete"));
    }
    let fr = f.rows(w, budget)?;
    let hit: std::collections::HashSet<NdId> = tx.rows[0].vertices().iter().map(|&v| fr[0].image(v).nd).collect();
    let missed: Vec<NdId> = ty.rows[0].vertices().iter().copied().filter(|v| !hit.contains(v)).collect();
    let surjective_on_objects = if missed.is_empty() {
        Verdict::exhaustive("every object is hit", ty.rows[0].len(), budget)
    } else {
        Verdict::witness(State::No, "objects outside the image", json!(missed), budget)
    };

    let boundaries = FamilyRange::new(GeneratorFamily::Boundaries, range.m_max, 0);
    let mut parts = Vec::new();
    for n in 0..=w {
        for v in vertex_tuples(&tx, n) {
            let fv: Vec<usize> = v.iter().map(|&o| fr[0].image(o as NdId).nd as usize).collect();
            let a = fiber_in(&tx, &v)?;
            let b = fiber_in(&ty, &fv)?;
            let m = corestrict(&a.inclusion.then(&fr[n]), &b.inclusion)?;
            let r = has_rlp(&m, boundaries, budget)?;
            let mut verdict = r.verdict;
            if let crate::invariants::Certificate::Witness { data, .. } = &mut verdict.certificate {
                data["over"] = json!(v);
            }
            parts.push((format!("fiber{v:?}"), verdict));
        }
    }
    let fibers = Verdict::all(parts, budget);
    let family = has_rlp_bss(f, range, budget)?;
    let consistent = !family.verdict.is_yes() || (surjective_on_objects.is_yes() && fibers.is_yes());
    Ok(InjectiveConsequences { surjective_on_objects, fibers, family, consistent })
}

/// The map `X -> Δ[0]`.
pub fn to_point(x: &Arc<SimplicialSet>) -> SimplicialMap {
    SimplicialMap::to_point(x, &Arc::new(SimplicialSet::point()))
}

#[cfg(test)]
mod tests;
