use std::collections::HashMap;

use serde_json::json;

use super::verdict::{State, Verdict};
use crate::error::Budget;
use crate::simplicial::{Simplex, SimplicialSet};

/// Horn filling up to `dim_bound`, by direct enumeration of compatible face
/// tuples `(y_i)_{i≠k}` with `d_i y_j = d_{j-1} y_i`.
pub fn is_kan(x: &SimplicialSet, dim_bound: usize, budget: Budget) -> Verdict {
    let mut checked = 0usize;
    for m in 1..=dim_bound {
        if budget.check_dim("horn filling", m).is_err() {
            return Verdict::unknown(format!("dimension budget {} below {m}", budget.dim), budget);
        }
        let faces = x.simplices_of_dim(m - 1);
        let fillers = x.simplices_of_dim(m);
        for k in 0..=m {
            let mut index: HashMap<Vec<Simplex>, usize> = HashMap::new();
            for z in &fillers {
                let key: Vec<Simplex> = (0..=m).filter(|&i| i != k).map(|i| x.face(*z, i)).collect();
                *index.entry(key).or_default() += 1;
            }
            let slots: Vec<usize> = (0..=m).filter(|&i| i != k).collect();
            let mut chosen: Vec<Simplex> = Vec::with_capacity(m);
            let mut nodes = 0u64;
            let mut failure: Option<Vec<Simplex>> = None;
            let ok = fill(x, &faces, &slots, &mut chosen, &index, &mut nodes, budget.nodes, &mut checked, &mut failure);
            match ok {
                Err(()) => return Verdict::unknown(format!("node budget exhausted at V[{m},{k}]"), budget),
                Ok(()) => {
                    if let Some(horn) = failure {
                        return Verdict::witness(
                            State::No,
                            format!("unfillable horn V[{m},{k}]"),
                            json!({ "m": m, "k": k, "faces": horn }),
                            budget,
                        );
                    }
                }
            }
        }
    }
    Verdict::exhaustive(format!("all horns V[m,k] with m ≤ {dim_bound} fill"), checked, budget)
}

#[allow(clippy::too_many_arguments)]
fn fill(
    x: &SimplicialSet,
    faces: &[Simplex],
    slots: &[usize],
    chosen: &mut Vec<Simplex>,
    index: &HashMap<Vec<Simplex>, usize>,
    nodes: &mut u64,
    limit: u64,
    checked: &mut usize,
    failure: &mut Option<Vec<Simplex>>,
) -> Result<(), ()> {
    if failure.is_some() {
        return Ok(());
    }
    let pos = chosen.len();
    if pos == slots.len() {
        *checked += 1;
        if !index.contains_key(chosen) {
            *failure = Some(chosen.clone());
        }
        return Ok(());
    }
    *nodes += 1;
    if *nodes > limit {
        return Err(());
    }
    let j = slots[pos];
    for &y in faces {
        // d_i y_j = d_{j-1} y_i for earlier slots i < j
        let compatible = slots[..pos]
            .iter()
            .zip(chosen.iter())
            .all(|(&i, &yi)| x.face(y, i) == x.face(yi, j - 1));
        if compatible {
            chosen.push(y);
            fill(x, faces, slots, chosen, index, nodes, limit, checked, failure)?;
            chosen.pop();
            if failure.is_some() {
                return Ok(());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::simplex;

    #[test]
    fn point_is_kan() {
        assert_eq!(is_kan(&SimplicialSet::point(), 3, Budget::default()).state, State::Yes);
    }

    #[test]
    fn interval_is_not() {
        assert_eq!(is_kan(&simplex(1), 2, Budget::default()).state, State::No);
    }
}
