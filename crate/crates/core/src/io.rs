//! JSON documents for posets, weights, systems, complexes and traces.
//! Rationals always travel as strings (`"3/2"`, `"3"`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::greedy::GreedyTrace;
use crate::poset::{Poset, PosetError};
use crate::simplicial::{SimplicialComplex, SimplicialError};
use crate::subset::GroundSubset;
use crate::system::{PoIndependenceSystem, SystemError};
use crate::verify::{CorpusSummary, EquivalenceReport, Outcome, OptimumReport};
use crate::weight::{format_rational, parse_rational, Rational, WeightError, WeightFunction};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error("no weight given for {0:?}")]
    MissingWeight(String),
    #[error("weight given for unknown element {0:?}")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub poset: PosetDoc,
    #[serde(default)]
    pub independent: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDoc {
    pub weights: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub element: String,
    pub weight: String,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub steps: Vec<StepDoc>,
    pub total: String,
}

impl PosetDoc {
    pub fn build(&self) -> Result<Poset, PosetError> {
        Poset::from_labels(&self.elements, &self.covers)
    }

    pub fn from_poset(p: &Poset) -> Self {
        Self {
            elements: p.labels().to_vec(),
            covers: p
                .covers()
                .iter()
                .map(|&(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect(),
        }
    }
}

impl SystemDoc {
    pub fn build(&self) -> Result<PoIndependenceSystem, IoError> {
        let poset = self.poset.build()?;
        let members = self
            .independent
            .iter()
            .map(|m| poset.subset_of_labels(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PoIndependenceSystem::explicit(poset, members)?)
    }

    /// Lists every nonempty independent set.
    pub fn from_system(sys: &PoIndependenceSystem) -> Result<Self, SystemError> {
        let p = sys.poset();
        Ok(Self {
            poset: PosetDoc::from_poset(p),
            independent: sys
                .independent_sets()?
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| p.labels_of(s))
                .collect(),
        })
    }
}

impl WeightDoc {
    /// Weight on the poset elements; every element needs a value.
    pub fn for_poset(&self, p: &Poset) -> Result<WeightFunction, IoError> {
        self.resolve(p.len(), |l| p.id_of(l), |i| p.label(i).to_string())
    }

    /// Weight on faces, keyed by comma-joined vertex labels in any order.
    pub fn for_complex(&self, c: &SimplicialComplex) -> Result<WeightFunction, IoError> {
        self.resolve(
            c.len(),
            |key| {
                let labels: Vec<&str> = key.split(',').map(str::trim).collect();
                c.face_id_by_labels(&labels).ok()
            },
            |i| c.face_key(c.face(i)),
        )
    }

    fn resolve(
        &self,
        n: usize,
        lookup: impl Fn(&str) -> Option<usize>,
        name: impl Fn(usize) -> String,
    ) -> Result<WeightFunction, IoError> {
        let mut values: Vec<Option<Rational>> = vec![None; n];
        for (key, text) in &self.weights {
            let id = lookup(key).ok_or_else(|| IoError::UnknownLabel(key.clone()))?;
            values[id] = Some(parse_rational(text)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| IoError::MissingWeight(name(i))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightFunction::new(values)?)
    }

    pub fn from_poset_weight(p: &Poset, w: &WeightFunction) -> Self {
        Self {
            weights: (0..p.len()).map(|i| (p.label(i).to_string(), format_rational(&w[i]))).collect(),
        }
    }

    pub fn from_face_weight(c: &SimplicialComplex, w: &WeightFunction) -> Self {
        Self {
            weights: (0..c.len()).map(|i| (c.face_key(c.face(i)), format_rational(&w[i]))).collect(),
        }
    }
}

impl ComplexDoc {
    pub fn build(&self) -> Result<SimplicialComplex, SimplicialError> {
        SimplicialComplex::from_labels(&self.vertices, &self.facets)
    }

    /// Lists every face as a facet.
    pub fn from_complex(c: &SimplicialComplex) -> Self {
        Self {
            vertices: c.vertices().to_vec(),
            facets: c.faces().iter().map(|f| c.face_labels(f)).collect(),
        }
    }
}

impl TraceDoc {
    pub fn new(trace: &GreedyTrace, name: impl Fn(usize) -> String) -> Self {
        Self {
            steps: trace
                .steps
                .iter()
                .map(|s| StepDoc {
                    element: name(s.element),
                    weight: format_rational(&s.weight),
                    accepted: s.accepted(),
                })
                .collect(),
            total: format_rational(&trace.total),
        }
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

fn labels(p: &Poset, s: &GroundSubset) -> serde_json::Value {
    serde_json::json!(p.labels_of(s))
}

pub fn optimum_json(p: &Poset, r: &OptimumReport) -> serde_json::Value {
    serde_json::json!({
        "optimum": format_rational(&r.optimum),
        "witnesses": r.witnesses.iter().map(|s| labels(p, s)).collect::<Vec<_>>(),
        "family_size": r.family_size,
    })
}

pub fn report_json(p: &Poset, r: &EquivalenceReport) -> serde_json::Value {
    let (outcome, detail) = match &r.outcome {
        Outcome::Consistent => ("consistent", None),
        Outcome::TheoremViolation(why) => ("THEOREM-VIOLATION", Some(why.clone())),
    };
    serde_json::json!({
        "system_id": r.system_id,
        "is_poset_matroid": r.is_matroid,
        "greedy_always_optimal": r.greedy_always_optimal,
        "adversarial_gap": r.adversarial_gap.as_ref().map(format_rational),
        "violation": r.violation.as_ref().map(|v| serde_json::json!({"A": labels(p, v.a()), "B": labels(p, v.b())})),
        "adversarial_weight": r.adversarial_weight.as_ref().map(|w| WeightDoc::from_poset_weight(p, w).weights),
        "trials": r.trials,
        "seed": r.seed,
        "outcome": outcome,
        "detail": detail,
    })
}

pub fn summary_json(s: &CorpusSummary, seed: u64) -> serde_json::Value {
    serde_json::json!({"systems": s.systems, "violations": s.violations, "seed": seed})
}
