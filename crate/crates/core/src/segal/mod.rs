//! Segal precategories: bisimplicial sets with discrete row 0.

pub mod check;
pub mod discretize;
pub mod fiber;
pub mod generators;
pub mod spine;

use std::sync::Arc;

pub use check::{complete_check, dk_check_segal, ho_category, ho_functor, segal_check, segal_map, HoCategory, SegalReport, SegalStep};
pub use discretize::{discretize, phi_factorization, strict_local_check, Discretization, PhiFactorization};
pub use fiber::{fiber, fiber_decomposition, hom_decomposition, vertex_tuples, Decomposition, Fiber};
pub use generators::{build_generator, if_generator, ic_generator, p_object, q_object, reedy_generator, reedy_reduction, vertices_t0, Family, Generator, PushoutObject};
pub use spine::{build_spine, e_space, spine_inclusion, Cell, SpineKind};

use crate::bisimplicial::{BisimplicialMap, BisimplicialSet, Presentation};
use crate::cat::format::parse_cat_block;
use crate::cat::{nerve, psi_filtration};
use crate::error::{Budget, Error, Result};
use crate::format::{parse_num, Cursor};

/// Whether row 0 is discrete.
pub fn is_segal_precategory(x: &BisimplicialSet, budget: Budget) -> Result<bool> {
    Ok(x.row(0, budget)?.is_discrete())
}

/// The map `(X)_r -> Y` corresponding to `h : X -> Y` for `Y` with
/// discrete row 0.
pub fn reduce_adjunct(h: &BisimplicialMap, rx: &BisimplicialSet) -> BisimplicialMap {
    let h = h.clone();
    BisimplicialMap::from_rows(rx, &h.target.clone(), move |k, tr, _| match &tr.presentations[k] {
        Some(Presentation::Quotient(q)) => Ok(q.descend(&h.rows(tr.top(), Budget::default())?[k])),
        _ => Err(Error::malformed("not a reduction")),
    })
}

fn parse_objects(line: usize, params: &[&str]) -> Result<Option<Vec<usize>>> {
    if params.is_empty() {
        return Ok(None);
    }
    params.iter().map(|p| parse_num(line, Some(p), "object")).collect::<Result<Vec<usize>>>().map(Some)
}

/// Virtual rules defined by the category and Segal modules.
pub(crate) fn parse_virtual(line: usize, rule: &str, params: &[&str], cur: &mut Cursor) -> Result<BisimplicialSet> {
    match rule {
        "nerve" => Ok(nerve(&Arc::new(parse_cat_block(cur)?))),
        "spine" => {
            let kind: SpineKind = params.first().ok_or_else(|| Error::parse(line, "missing spine kind"))?.parse().map_err(|e: Error| Error::parse(line, e.to_string()))?;
            let k: usize = parse_num(line, params.get(1), "spine length")?;
            let objects = parse_objects(line, params.get(2..).unwrap_or(&[]))?;
            build_spine(kind, k, objects.as_deref()).map_err(|e| Error::parse(line, e.to_string()))
        }
        "psi" => {
            let k: usize = parse_num(line, params.first(), "filtration stage")?;
            let objects = parse_objects(line, params.get(1..).unwrap_or(&[]))?.unwrap_or_default();
            psi_filtration(&objects, k).map_err(|e| Error::parse(line, e.to_string()))
        }
        _ => Err(Error::parse(line, format!("unknown virtual rule `{rule}`"))),
    }
}

#[cfg(test)]
mod tests;
