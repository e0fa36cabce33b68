//! Brute-force ground truth by exact linear algebra.

pub mod appendix;
pub mod coinv;
pub mod fusion;
pub mod linalg;
pub mod ring;
pub mod sequence;

pub use appendix::{appendix_filtration_check, AppendixReport, Irrep};
pub use coinv::{coinv_quotient_character, coinv_quotient_check};
pub use fusion::{fusion_gr_character, sample_points};
pub use linalg::{bareiss_rank, EchelonBasis};
pub use ring::{
    hilbert_character, hilbert_character_with, ideal_generators, OracleOptions, QuotientRing, RingLayout, VarIndex,
};
pub use sequence::{admissible_pivots, exact_sequence_check, ExactSequenceReport};
