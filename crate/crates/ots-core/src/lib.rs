//! Extendible exponential term structures as executable notation systems.
//!
//! A structure is fixed by a [`StructureDescriptor`]: a derivative level K
//! and a linear input order X addressing generator constants. Terms are
//! sums of fixed-point function values and generators, kept in a unique
//! normal form; comparison, addition, truncated subtraction, function
//! application, and dilation between structures operate on that form.
//!
//! On top of the term engine sit
//! - [`bounds`]: natural sums, base-2 powers and towers, the two-argument
//!   bound function, its iterated base values, and fundamental sequences;
//! - [`embed`]: the derivation calculus over a finite well-founded relation
//!   and the rank extraction that yields an order embedding below ω^(α+1);
//! - [`harness`]: seeded randomized law checking over all of the above,
//!   data-parallel by default (feature `parallel`) with a sequential mode
//!   that produces byte-identical reports.

pub mod bounds;
pub mod embed;
pub mod error;
pub mod harness;
pub mod order;
pub mod term;
pub mod text;

pub use bounds::{f_bound, fund_seq_gprime, gamma_iterate, natural_sum, power2, tower, BoundContext};
pub use embed::{
    build_derivation, check_extraction_invariants, extract_ranks, takeuti_embed,
    validate_derivation, verify_embedding, Derivation, EmbeddingCheck, EmbeddingReport,
    ExtractionState, NodeAssignment, NodeExtraction, DEFAULT_MAX_NODES,
};
pub use error::{Error, Result};
pub use harness::{
    check_bounds, check_embedding, check_indiscernibility, check_structure_axioms, run_checks,
    run_checks_in, CheckReport, RunMode, SuiteOutcome, Violation,
};
pub use order::{
    check_well_founded, decode_relation, pair, parse_relation_text, unpair, CodedRelation,
    FiniteRelation, LinearOrder,
};
pub use term::{
    add, apply_phi, compare, dilate, normalize, subtract, Atom, DilationMap, RawTerm,
    StructureDescriptor, Term, TermKind,
};
pub use text::{parse_expr, render};
