//! Decision library for the relevance relation between irreducible unitary
//! representations of Archimedean general linear groups, carried out
//! entirely on their formal parameters.
//!
//! Every unitary representation factors into Speh and complementary-series
//! building blocks, so it is determined by a formal sum of symbols
//! `L ⊠ S_d` ([`params`]). Relevance of two such parameters is decided two
//! independent ways ([`relevance`]): by searching for a witness partition
//! of block instances into shift-up / shift-down / involution roles, and by
//! non-negativity of the alternating sums `Λ`. SL₂-types and the
//! coordinatewise closeness condition live in [`partition`]; the text DSL
//! and report documents in [`io`]; exhaustive corpus enumeration and the
//! oracle-equivalence self-test in [`corpus`].

pub mod corpus;
pub mod io;
pub mod params;
pub mod partition;
pub mod relevance;

pub use params::{Block, EtaSymbol, FieldProfile, ParamError, Rational, UnitaryParameter};
pub use partition::{associated_partition_of, Partition};
pub use relevance::{
    find_witness, is_relevant_bruteforce, is_relevant_criterion, lambda_sum, multiplicity,
    proof_identity_check, verify_witness, RelevanceError, Role, Witness,
};
