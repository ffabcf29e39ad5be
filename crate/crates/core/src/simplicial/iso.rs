use std::sync::Arc;

use serde_json::json;

use super::hom::HomSearch;
use super::map::SimplicialMap;
use super::sset::SimplicialSet;
use crate::error::Budget;
use crate::invariants::{Certificate, Verdict};

/// Searches for an isomorphism `a -> b`.
///
/// An injective map that is dimensionwise bijective on nondegenerate
/// simplices is an isomorphism, so the search is the injective hom search
/// after comparing counts.
pub fn are_isomorphic(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>, budget: Budget) -> Verdict {
    if a.counts() != b.counts() {
        return Verdict::mismatch("nondegenerate counts", json!(a.counts()), json!(b.counts()), budget);
    }
    match find_isomorphism(a, b, budget) {
        Ok(Some(f)) => Verdict::yes(Certificate::Isomorphism { images: f.images().to_vec() }, budget),
        Ok(None) => Verdict::no(
            Certificate::Exhaustive { description: "no bijection commutes with the faces".into(), checked: 0 },
            budget,
        ),
        Err(e) => Verdict::unknown(e.to_string(), budget),
    }
}

pub fn find_isomorphism(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>, budget: Budget) -> crate::Result<Option<SimplicialMap>> {
    if a.counts() != b.counts() {
        return Ok(None);
    }
    HomSearch::new(a, b).budget(budget).injective().first()
}

/// Re-checks an isomorphism certificate against its two objects.
pub fn verify_isomorphism(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>, verdict: &Verdict) -> bool {
    match &verdict.certificate {
        Certificate::Isomorphism { images } => SimplicialMap::new(a.clone(), b.clone(), images.clone())
            .map(|f| f.is_isomorphism())
            .unwrap_or(false),
        Certificate::InvariantMismatch { .. } => a.counts() != b.counts(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::State;
    use crate::simplicial::standard::{horn, simplex};

    #[test]
    fn horns_with_different_apex_are_not_isomorphic() {
        let v20 = horn(2, 0).unwrap().set;
        let v21 = horn(2, 1).unwrap().set;
        // in V[2,0] vertex 0 is the d_1-face of both edges
        let v = are_isomorphic(&v20, &v21, Budget::default());
        assert_eq!(v.state, State::No);
    }

    #[test]
    fn identity_witness() {
        let x = simplex(2);
        let v = are_isomorphic(&x, &x, Budget::default());
        assert_eq!(v.state, State::Yes);
        assert!(verify_isomorphism(&x, &x, &v));
    }

    #[test]
    fn count_mismatch() {
        let two = Arc::new(SimplicialSet::discrete(2));
        let v = are_isomorphic(&two, &simplex(0), Budget::default());
        assert_eq!(v.state, State::No);
        assert!(verify_isomorphism(&two, &simplex(0), &v));
    }
}
