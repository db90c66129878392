//! Relation graphs G(Π_n) of quantum matrix algebras, exact Cuntz-Krieger
//! partial-isometry families on ℓ²(ℕ), and the quantum channels they induce.
//!
//! The crate has two computational layers. The combinatorial/symbolic layer
//! ([`relation_graph`], [`ap_operator`], [`ck_family`]) works in exact integer
//! arithmetic throughout, so Cuntz-Krieger relation verdicts are decisions,
//! not approximations; the independent window-truncation oracle
//! ([`truncation`]) re-derives every verdict numerically. The dense numeric
//! layer ([`channel`], [`qubit`]) is generic over the real scalar via
//! [`linalg::Scalar`]; the aliases below fix `f64` as the working precision.

pub mod ap_operator;
pub mod channel;
pub mod ck_family;
pub mod linalg;
pub mod qubit;
pub mod relation_graph;
pub mod truncation;

pub use ap_operator::{APOperator, APTerm, Progression, TruncationWindow};
pub use ck_family::{CKFamily, VerificationReport};
pub use relation_graph::{DirectedMultigraph, HamiltonianPath};

/// Working real scalar for the dense numeric layer.
pub type Real = f64;
/// Working complex scalar.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix at working precision.
pub type CMatrix64 = linalg::CMat<f64>;
/// Channel types at working precision.
pub type KrausChannel64 = channel::KrausChannel<f64>;
pub type ChoiMatrix64 = channel::ChoiMatrix<f64>;
pub type StinespringIsometry64 = channel::StinespringIsometry<f64>;
pub type ConfusabilityBasis64 = channel::ConfusabilityBasis<f64>;
/// Qubit types at working precision.
pub type QubitState64 = qubit::QubitState<f64>;
pub type FactorizationResult64 = qubit::FactorizationResult<f64>;
