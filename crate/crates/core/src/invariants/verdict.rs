use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Budget, Error};
use crate::simplicial::{NdId, Simplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum State {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for State {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            State::Yes => "yes",
            State::No => "no",
            State::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// One elementary horn expansion: the nondegenerate simplex `simplex` of the
/// ambient set is added together with its face `face`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornStep {
    pub simplex: NdId,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Images of the nondegenerate simplices under an isomorphism.
    Isomorphism { images: Vec<Simplex> },
    /// An invariant with differing values on the two sides.
    InvariantMismatch { invariant: String, left: Value, right: Value },
    /// The map is injective and the target is obtained from its image by the
    /// listed horn expansions.
    AnodyneExpansion { steps: Vec<HornStep> },
    /// Both sides expand from one vertex per component (roots, steps), and
    /// the map is a bijection on components.
    Contractible { source: (Vec<NdId>, Vec<HornStep>), target: (Vec<NdId>, Vec<HornStep>) },
    /// A concrete counterexample, serialized.
    Witness { description: String, data: Value },
    /// Every instance in the stated range was checked.
    Exhaustive { description: String, checked: usize },
    /// Per-part verdicts of a conjunction.
    Conjunction { parts: Vec<(String, Verdict)> },
    /// A search ran out of budget or no method applied.
    Exhausted { reason: String },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Isomorphism { .. } => "isomorphism",
            Certificate::InvariantMismatch { .. } => "invariant_mismatch",
            Certificate::AnodyneExpansion { .. } => "anodyne_expansion",
            Certificate::Contractible { .. } => "contractible",
            Certificate::Witness { .. } => "witness",
            Certificate::Exhaustive { .. } => "exhaustive",
            Certificate::Conjunction { .. } => "conjunction",
            Certificate::Exhausted { .. } => "exhausted",
        }
    }
}

/// A three-valued answer with a certificate and the budget it ran under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub state: State,
    pub certificate: Certificate,
    pub budget: Budget,
}

impl Verdict {
    pub fn yes(certificate: Certificate, budget: Budget) -> Self {
        Verdict { state: State::Yes, certificate, budget }
    }

    pub fn no(certificate: Certificate, budget: Budget) -> Self {
        Verdict { state: State::No, certificate, budget }
    }

    pub fn unknown(reason: impl Into<String>, budget: Budget) -> Self {
        Verdict { state: State::Unknown, certificate: Certificate::Exhausted { reason: reason.into() }, budget }
    }

    pub fn mismatch(invariant: impl Into<String>, left: Value, right: Value, budget: Budget) -> Self {
        Verdict::no(Certificate::InvariantMismatch { invariant: invariant.into(), left, right }, budget)
    }

    pub fn witness(state: State, description: impl Into<String>, data: Value, budget: Budget) -> Self {
        Verdict { state, certificate: Certificate::Witness { description: description.into(), data }, budget }
    }

    pub fn exhaustive(description: impl Into<String>, checked: usize, budget: Budget) -> Self {
        Verdict::yes(Certificate::Exhaustive { description: description.into(), checked }, budget)
    }

    /// Budget errors become Unknown; other errors propagate.
    pub fn from_budget_error(e: Error, budget: Budget) -> Result<Self, Error> {
        if e.is_budget() {
            Ok(Verdict::unknown(e.to_string(), budget))
        } else {
            Err(e)
        }
    }

    /// Conjunction: No if any part is No, else Unknown if any is Unknown,
    /// else Yes.
    pub fn all(parts: Vec<(String, Verdict)>, budget: Budget) -> Self {
        let state = if parts.iter().any(|(_, v)| v.state == State::No) {
            State::No
        } else if parts.iter().any(|(_, v)| v.state == State::Unknown) {
            State::Unknown
        } else {
            State::Yes
        };
        Verdict { state, certificate: Certificate::Conjunction { parts }, budget }
    }

    pub fn is_yes(&self) -> bool {
        self.state == State::Yes
    }

    pub fn is_no(&self) -> bool {
        self.state == State::No
    }

    /// The report record `{label, state, certificate_kind, certificate_payload, budgets_used}`.
    pub fn record(&self, label: &str) -> Value {
        json!({
            "label": label,
            "state": self.state,
            "certificate_kind": self.certificate.kind(),
            "certificate_payload": serde_json::to_value(&self.certificate).unwrap_or(Value::Null),
            "budgets_used": self.budget,
        })
    }
}
