//! Bounded least-fixed-point solving of the structural object equation
//!
//! ```text
//! O = B + L ⊸ (O* ⊸→ O)
//! ```
//!
//! Starting from the one-point basis, each iteration builds the method space
//! `M = O_i* ⊸→ O_i`, the record space `R = L ⊸ M`, and `O_{i+1} = B + R`.
//! Element terms of each stage are built from the previous stage's terms, so
//! the carriers nest literally and the union of the stages is an ordinary set
//! union. The trace never claims its union is the solution itself: it is the
//! depth-k approximation allowed by the caps.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::basis::{one_point, Closure, FiniteBasis, Poset};
use crate::completion::check_subdomain;
use crate::constructors::{coalesced_sum, kleene_star, left_injection, record_basis, strict_fun, ConstructorParams};
use crate::element::Element;
use crate::error::{DomainError, Result};
use crate::report::{SubsetReport, Witness};

#[derive(Debug, Clone)]
pub struct CoopParams {
    /// Atomic base objects.
    pub base: FiniteBasis,
    /// Proper method labels (the label domain's bottom is never a key).
    pub labels: BTreeSet<String>,
    pub max_seq_len: usize,
    pub max_iters: usize,
    pub cardinality_cap: usize,
}

impl CoopParams {
    pub fn new(base: FiniteBasis, labels: impl IntoIterator<Item = impl Into<String>>) -> Self {
        CoopParams {
            base,
            labels: labels.into_iter().map(Into::into).collect(),
            max_seq_len: 1,
            max_iters: 3,
            cardinality_cap: 10_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.labels.is_empty() {
            return Err(DomainError::Input("the label set must be non-empty".into()));
        }
        if !self.base.is_finitary_basis().holds() {
            return Err(DomainError::Precondition(format!("base `{}` is not a finitary basis", self.base.name())));
        }
        Ok(())
    }

    fn constructor_params(&self) -> ConstructorParams {
        ConstructorParams {
            max_seq_len: self.max_seq_len,
            cardinality_cap: self.cardinality_cap,
            ..ConstructorParams::default()
        }
    }
}

/// One iteration's intermediate spaces.
#[derive(Debug, Clone)]
pub struct CoopStep {
    pub methods: FiniteBasis,
    pub records: FiniteBasis,
    pub next: FiniteBasis,
}

/// `(M, R, O_next)` from `O_i`. Cap errors name the constructor that tripped.
pub fn coop_step(current: &FiniteBasis, params: &CoopParams) -> Result<CoopStep> {
    let cp = params.constructor_params();
    let args = kleene_star(current, &cp)?;
    let methods = strict_fun(&args, current, &cp)?;
    let records = record_basis(&params.labels, &methods, &cp)?;
    let next = coalesced_sum(&params.base, &records, &cp)?;
    Ok(CoopStep { methods, records, next })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum StopReason {
    /// `O_{at} = O_{at-1}` as canonical-term bases.
    Converged { at: usize },
    IterCap,
    CardCap { message: String },
}

#[derive(Debug, Clone)]
pub struct CoopTrace {
    /// `O_0, O_1, ...`
    pub stages: Vec<FiniteBasis>,
    /// `M_1, M_2, ...`
    pub method_stages: Vec<FiniteBasis>,
    /// `R_1, R_2, ...`
    pub record_stages: Vec<FiniteBasis>,
    pub stop_reason: StopReason,
    /// Subdomain report for each consecutive pair of stages.
    pub embeddings: Vec<SubsetReport>,
}

pub fn coop_construct(params: &CoopParams) -> Result<CoopTrace> {
    params.validate()?;
    let mut trace = CoopTrace {
        stages: vec![one_point().with_name("O0")],
        method_stages: Vec::new(),
        record_stages: Vec::new(),
        stop_reason: StopReason::IterCap,
        embeddings: Vec::new(),
    };
    for i in 0..params.max_iters {
        let current = &trace.stages[i];
        let step = match coop_step(current, params) {
            Ok(step) => step,
            Err(e @ DomainError::Cap { .. }) => {
                trace.stop_reason = StopReason::CardCap { message: e.to_string() };
                return Ok(trace);
            }
            Err(e) => return Err(e),
        };
        let next = step.next.with_name(format!("O{}", i + 1));
        trace.embeddings.push(check_subdomain(current, &next));
        let converged = next == *current;
        trace.method_stages.push(step.methods.with_name(format!("M{}", i + 1)));
        trace.record_stages.push(step.records.with_name(format!("R{}", i + 1)));
        trace.stages.push(next);
        if converged {
            trace.stop_reason = StopReason::Converged { at: i + 1 };
            return Ok(trace);
        }
    }
    Ok(trace)
}

/// The union of the computed stages, labelled with its depth.
#[derive(Debug, Clone)]
pub struct Approximation {
    pub depth: usize,
    pub basis: FiniteBasis,
}

impl Approximation {
    pub fn label(&self) -> String {
        format!("depth-{} approximation", self.depth)
    }
}

impl CoopTrace {
    pub fn sizes(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.len()).collect()
    }

    pub fn converged(&self) -> bool {
        matches!(self.stop_reason, StopReason::Converged { .. })
    }

    /// Union of all stage carriers and orders.
    pub fn approximation(&self) -> Result<Approximation> {
        let mut elements = BTreeSet::new();
        let mut relation = BTreeSet::new();
        for s in &self.stages {
            elements.extend(s.elements().iter().cloned());
            relation.extend(s.relation());
        }
        let relation: Vec<(Element, Element)> = relation.into_iter().collect();
        let depth = self.stages.len() - 1;
        let poset = Poset::from_relation(format!("O<={depth}"), elements.into_iter().collect(), &relation, Closure::Auto)?;
        Ok(Approximation { depth, basis: FiniteBasis::try_from(poset)? })
    }

    pub fn summary(&self, params: &CoopParams) -> TraceSummary {
        let approx_label = format!("depth-{} approximation", self.stages.len() - 1);
        TraceSummary {
            stage_sizes: self.sizes(),
            method_sizes: self.method_stages.iter().map(|s| s.len()).collect(),
            record_sizes: self.record_stages.iter().map(|s| s.len()).collect(),
            stop_reason: self.stop_reason.clone(),
            embeddings: self.embeddings.clone(),
            approximation: approx_label,
            initial_stage: "one-point basis {bot}: the least pointed basis".into(),
            caps: Caps {
                max_seq_len: params.max_seq_len,
                max_iters: params.max_iters,
                cardinality_cap: params.cardinality_cap,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Caps {
    pub max_seq_len: usize,
    pub max_iters: usize,
    pub cardinality_cap: usize,
}

/// JSON-facing digest of a trace.
#[derive(Debug, Clone, Serialize)]
pub struct TraceSummary {
    pub stage_sizes: Vec<usize>,
    pub method_sizes: Vec<usize>,
    pub record_sizes: Vec<usize>,
    pub stop_reason: StopReason,
    pub embeddings: Vec<SubsetReport>,
    pub approximation: String,
    pub initial_stage: String,
    pub caps: Caps,
}

/// Each stage's carrier is included in the next and the pair satisfies all
/// four subdomain clauses.
pub fn verify_ascending(trace: &CoopTrace) -> SubsetReport {
    const NAME: &str = "ascending";
    for (i, pair) in trace.stages.windows(2).enumerate() {
        let (lo, hi) = (&pair[0], &pair[1]);
        if let Some(x) = lo.elements().iter().find(|x| !hi.contains(x)) {
            return SubsetReport::fails(
                NAME,
                format!("stages {i}->{}: carrier inclusion", i + 1),
                Witness::Element(x.clone()),
            );
        }
        let sub = check_subdomain(lo, hi);
        if let (Some(v), Some(w)) = (sub.violated(), sub.witness()) {
            return SubsetReport::fails(NAME, format!("stages {i}->{}: {v}", i + 1), w.clone());
        }
    }
    SubsetReport::holds_for(NAME)
}

/// The `inl` copy of the base inside stage `i` (for `i >= 1`).
pub fn base_embedding(trace: &CoopTrace, base: &FiniteBasis, i: usize) -> SubsetReport {
    check_subdomain(&left_injection(base), &trace.stages[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::lift_antichain;

    fn params(iters: usize) -> CoopParams {
        CoopParams { max_iters: iters, ..CoopParams::new(lift_antichain(&["a"]).unwrap(), ["l"]) }
    }

    #[test]
    fn first_steps() {
        let p = params(2);
        let s1 = coop_step(&one_point(), &p).unwrap();
        assert_eq!(s1.next.len(), 2);
        let s2 = coop_step(&s1.next, &p).unwrap();
        assert_eq!(s2.methods.len(), 4);
        assert_eq!(s2.records.len(), 4);
        assert_eq!(s2.next.len(), 5);
    }

    #[test]
    fn trace_sizes_and_stop() {
        let t = coop_construct(&params(2)).unwrap();
        assert_eq!(t.sizes(), vec![1, 2, 5]);
        assert_eq!(t.stop_reason, StopReason::IterCap);
        assert!(t.embeddings.iter().all(|r| r.holds()));
        assert!(verify_ascending(&t).holds());
        let approx = t.approximation().unwrap();
        assert_eq!(approx.basis, t.stages[2]);
        assert_eq!(approx.label(), "depth-2 approximation");

        let t0 = coop_construct(&params(0)).unwrap();
        assert_eq!(t0.sizes(), vec![1]);
        assert_eq!(t0.stop_reason, StopReason::IterCap);
    }

    #[test]
    fn one_point_base_converges() {
        let p = CoopParams { max_iters: 5, ..CoopParams::new(one_point(), ["l", "m"]) };
        let t = coop_construct(&p).unwrap();
        assert_eq!(t.stop_reason, StopReason::Converged { at: 1 });
        assert_eq!(t.sizes(), vec![1, 1]);
        assert!(verify_ascending(&t).holds());
    }

    #[test]
    fn card_cap_keeps_prefix() {
        let p = CoopParams { cardinality_cap: 4, ..params(5) };
        let t = coop_construct(&p).unwrap();
        assert!(matches!(t.stop_reason, StopReason::CardCap { ref message } if message.contains("in sum")), "{:?}", t.stop_reason);
        assert_eq!(t.sizes(), vec![1, 2]);
    }

    #[test]
    fn corrupted_trace_is_caught() {
        let mut t = coop_construct(&params(2)).unwrap();
        let o1 = &t.stages[1];
        let relabelled = o1.map_elements(|e| match e {
            Element::InL(_) => Element::inl(Element::atom("zzz")),
            other => other.clone(),
        });
        t.stages[1] = FiniteBasis::try_from(relabelled.unwrap()).unwrap();
        let r = verify_ascending(&t);
        assert_eq!(r.violated(), Some("stages 1->2: carrier inclusion"));
        assert_eq!(r.witness(), Some(&Witness::Element(Element::inl(Element::atom("zzz")))));
    }

    #[test]
    fn invalid_params() {
        let p = CoopParams { labels: BTreeSet::new(), ..params(1) };
        assert!(coop_construct(&p).is_err());
    }
}
