//! `domkit`: a desk-scale domain-theory workbench.
//!
//! Finite finitary bases are concrete values ([`FiniteBasis`]) over canonical
//! structural terms ([`Element`]). On top of them the crate provides
//!
//! * the order-theoretic predicates on subsets ([`basis`]),
//! * ideal enumeration, ideal completion, finite elements, isomorphism,
//!   domain and subdomain checks ([`completion`]),
//! * approximable mappings and their continuous-function counterparts
//!   ([`mappings`]),
//! * the coalesced sum, strict product, strict function space, strict
//!   sequence and record constructors ([`constructors`]),
//! * bounded least-fixed-point solving of the structural object equation
//!   `O = B + L ⊸ (O* ⊸→ O)` ([`coop`]),
//! * the JSON basis format and DOT export ([`io`]).
//!
//! Everything is finite and exhaustively checkable; every exponential scan is
//! guarded by a [`Limits`] cap.

pub mod basis;
pub mod completion;
pub mod constructors;
pub mod coop;
pub mod element;
pub mod error;
pub mod io;
pub mod mappings;
pub mod report;

pub use basis::{check_partial_order, lift_antichain, one_point, Closure, FiniteBasis, Poset, Term};
pub use completion::{CompletedDomain, Ideal, IsoWitness};
pub use constructors::{ConstructorParams, RecordOrdering};
pub use coop::{CoopParams, CoopTrace, StopReason};
pub use element::Element;
pub use error::{CapKind, DomainError, Result, SyntaxError};
pub use mappings::{ApproxMapping, IdealFunction};
pub use report::{Outcome, SubsetReport, Witness};

/// Size guards for the exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe scanned subset-by-subset (`2^n` subsets).
    pub subset_scan: usize,
    /// Largest poset handed to the isomorphism search.
    pub iso_elements: usize,
    /// Largest `|source| * |target|` accepted by mapping enumeration.
    pub relation_space: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { subset_scan: 16, iso_elements: 12, relation_space: 20 }
    }
}

impl Limits {
    pub(crate) fn check_subset_scan(&self, n: usize) -> Result<()> {
        if n > self.subset_scan {
            return Err(DomainError::cap(CapKind::SubsetScan, n as u128, self.subset_scan as u128));
        }
        Ok(())
    }
}
