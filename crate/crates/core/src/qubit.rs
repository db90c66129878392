//! Multi-qubit pure states: normalization, Schmidt rank across bipartitions,
//! product-state factorization, and the exhaustive/sampled classification of
//! restricted-amplitude states.
//!
//! Separability is decided by the Schmidt criterion (rank 1 at every cut), not
//! by amplitude bookkeeping: the claim tester below therefore *measures*
//! whether restricted-amplitude states are product states instead of assuming
//! it, and reports counterexamples when it finds them.

use nalgebra::{Complex, ComplexField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{CMat, CVec, Scalar};

#[derive(Debug, Error)]
pub enum QubitError {
    #[error("qubit count must be at least 1, got {0}")]
    NoQubits(u32),
    #[error("amplitude vector has length {got}, expected 2^{q} = {expected}")]
    WrongLength { q: u32, got: usize, expected: usize },
    #[error("zero amplitude vector")]
    ZeroVector,
    #[error("norm {0} is too far from 1 (tolerance 1e-9)")]
    NotNormalized(f64),
    #[error("cut {cut} outside 1..={max}")]
    CutOutOfRange { cut: u32, max: u32 },
    #[error("exhaustive classification is limited to q = 2; use sampling")]
    ExhaustiveTooLarge(u32),
    #[error("claim test needs q >= 2, got {0}")]
    ClaimRange(u32),
    #[error("bookkeeping index must be at least 2, got {0}")]
    BookkeepingRange(u32),
}

/// Unit vector in (C²)^⊗q, indexed by binary strings read as integers.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState<T: Scalar> {
    qubits: u32,
    amplitudes: CVec<T>,
    /// |‖input‖ − 1| before the exact renormalization.
    norm_deviation: T,
}

#[derive(Clone, Debug)]
pub struct FactorizationResult<T: Scalar> {
    pub is_product: bool,
    /// One (α, β) pair per qubit when the state factors; the global phase is
    /// absorbed into the first factor.
    pub factors: Option<Vec<[Complex<T>; 2]>>,
    /// First bipartition (1-based) with Schmidt rank > 1.
    pub failing_cut: Option<u32>,
    pub reconstruction_error: Option<T>,
}

impl<T: Scalar> QubitState<T> {
    /// Accepts a 2^q amplitude vector with norm within 1e-9 of 1, rescales it
    /// to exact unit norm, and records the deviation.
    pub fn new(q: u32, amplitudes: Vec<Complex<T>>) -> Result<Self, QubitError> {
        if q == 0 {
            return Err(QubitError::NoQubits(q));
        }
        let expected = 1usize << q;
        if amplitudes.len() != expected {
            return Err(QubitError::WrongLength { q, got: amplitudes.len(), expected });
        }
        let v = CVec::from_vec(amplitudes);
        let norm = v.norm();
        if norm == T::zero() {
            return Err(QubitError::ZeroVector);
        }
        let deviation = (norm - T::one()).abs();
        let bound: T = nalgebra::convert(1e-9);
        // negated form so that a NaN norm (non-finite amplitudes) is rejected
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(deviation <= bound) {
            return Err(QubitError::NotNormalized(nalgebra::convert(deviation)));
        }
        Ok(Self { qubits: q, amplitudes: v.unscale(norm), norm_deviation: deviation })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn amplitudes(&self) -> &CVec<T> {
        &self.amplitudes
    }

    pub fn norm_deviation(&self) -> T {
        self.norm_deviation
    }

    /// Amplitudes reshaped across the bipartition after `cut` leading qubits:
    /// a 2^cut × 2^(q−cut) matrix.
    pub fn amplitude_matrix(&self, cut: u32) -> Result<CMat<T>, QubitError> {
        if cut == 0 || cut >= self.qubits {
            return Err(QubitError::CutOutOfRange { cut, max: self.qubits.saturating_sub(1) });
        }
        let rows = 1usize << cut;
        let cols = 1usize << (self.qubits - cut);
        Ok(CMat::from_fn(rows, cols, |a, b| self.amplitudes[a * cols + b]))
    }

    /// Singular values of the amplitude matrix, descending.
    pub fn schmidt_values(&self, cut: u32) -> Result<Vec<T>, QubitError> {
        Ok(crate::linalg::singular_values(&self.amplitude_matrix(cut)?))
    }

    /// Number of singular values above `tol` across the given bipartition.
    pub fn schmidt_rank(&self, cut: u32, tol: T) -> Result<usize, QubitError> {
        Ok(self.schmidt_values(cut)?.iter().filter(|s| **s > tol).count())
    }

    /// Product test: rank 1 at every cut, then factor extraction by repeated
    /// leading-singular-vector peeling.
    pub fn factor_product(&self, tol: T) -> FactorizationResult<T> {
        for cut in 1..self.qubits {
            let rank = self.schmidt_rank(cut, tol).expect("cut in range");
            if rank != 1 {
                return FactorizationResult {
                    is_product: false,
                    factors: None,
                    failing_cut: Some(cut),
                    reconstruction_error: None,
                };
            }
        }
        let mut factors: Vec<[Complex<T>; 2]> = Vec::with_capacity(self.qubits as usize);
        let mut rest: CVec<T> = self.amplitudes.clone();
        for _ in 0..self.qubits - 1 {
            let cols = rest.len() / 2;
            let m = CMat::from_fn(2, cols, |a, b| rest[a * cols + b]);
            // leading left singular vector from the 2×2 Gram matrix; for a
            // rank-1 M = σ·u·v* the peeled remainder u*·M equals σ·v* with
            // the arbitrary eigenvector phase cancelling exactly
            let gram = &m * m.adjoint();
            let (vals, vecs) = crate::linalg::hermitian_eigen(&gram);
            let lead = vals.len() - 1; // ascending order: last is largest
            let u = &vecs[lead];
            factors.push([u[0], u[1]]);
            rest = CVec::from_fn(cols, |b, _| u[0].conj() * m[(0, b)] + u[1].conj() * m[(1, b)]);
        }
        factors.push([rest[0], rest[1]]);
        let mut recon = tensor_factors(&factors);
        // absorb the global phase into the first factor
        let overlap = recon.dotc(&self.amplitudes);
        if overlap.modulus() > T::zero() {
            let phase = overlap.unscale(overlap.modulus());
            factors[0] = [factors[0][0] * phase, factors[0][1] * phase];
            recon *= phase;
        }
        let err = (&self.amplitudes - &recon).norm();
        FactorizationResult {
            is_product: true,
            factors: Some(factors),
            failing_cut: None,
            reconstruction_error: Some(err),
        }
    }
}

/// Full amplitude vector of ⊗_k (α_k|0⟩ + β_k|1⟩).
pub fn tensor_factors<T: Scalar>(factors: &[[Complex<T>; 2]]) -> CVec<T> {
    let mut out = CVec::from_vec(vec![Complex::from(T::one())]);
    for f in factors {
        let next = CVec::from_fn(out.len() * 2, |k, _| out[k / 2] * f[k % 2]);
        out = next;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimMode {
    /// All 4^(2^q) sign/phase assignments; available for q = 2 only.
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// Empirical verdict on the restricted-amplitude non-entanglement claim.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimReport {
    pub q: u32,
    pub mode: String,
    pub total: usize,
    /// States accepted by the constructor (unit norm); always == total for
    /// the restricted amplitude set.
    pub valid: usize,
    pub product: usize,
    pub entangled: usize,
    /// Up to ten entangled amplitude vectors, as [re, im] pairs.
    pub counterexamples: Vec<Vec<[f64; 2]>>,
}

/// Classifies states whose amplitudes all lie in {±2^(−q/2), ±i·2^(−q/2)}.
///
/// The printed claim is that every such state is a product state; the report
/// records what the Schmidt test actually finds and keeps example
/// counterexamples when the claim fails.
pub fn test_restricted_amplitude_claim(q: u32, mode: ClaimMode) -> Result<ClaimReport, QubitError> {
    if q < 2 {
        return Err(QubitError::ClaimRange(q));
    }
    let len = 1usize << q;
    let modulus = 1.0 / (len as f64).sqrt();
    let phases: [Complex<f64>; 4] = [
        Complex::new(modulus, 0.0),
        Complex::new(-modulus, 0.0),
        Complex::new(0.0, modulus),
        Complex::new(0.0, -modulus),
    ];
    let tol = 1e-10;
    let mut report = ClaimReport {
        q,
        mode: match mode {
            ClaimMode::Exhaustive => "exhaustive".to_string(),
            ClaimMode::Sampled { count, seed } => format!("sampled:{count}:{seed}"),
        },
        total: 0,
        valid: 0,
        product: 0,
        entangled: 0,
        counterexamples: Vec::new(),
    };
    let classify = |amps: Vec<Complex<f64>>, report: &mut ClaimReport| {
        report.total += 1;
        let Ok(state) = QubitState::new(q, amps) else {
            return;
        };
        report.valid += 1;
        if state.factor_product(tol).is_product {
            report.product += 1;
        } else {
            report.entangled += 1;
            if report.counterexamples.len() < 10 {
                report
                    .counterexamples
                    .push(state.amplitudes().iter().map(|a| [a.re, a.im]).collect());
            }
        }
    };
    match mode {
        ClaimMode::Exhaustive => {
            if q != 2 {
                return Err(QubitError::ExhaustiveTooLarge(q));
            }
            for code in 0..4usize.pow(len as u32) {
                let mut digits = code;
                let amps: Vec<Complex<f64>> = (0..len)
                    .map(|_| {
                        let d = digits % 4;
                        digits /= 4;
                        phases[d]
                    })
                    .collect();
                classify(amps, &mut report);
            }
        }
        ClaimMode::Sampled { count, seed } => {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            for _ in 0..count {
                let amps: Vec<Complex<f64>> =
                    (0..len).map(|_| phases[rng.random_range(0..4)]).collect();
                classify(amps, &mut report);
            }
        }
    }
    Ok(report)
}

/// Subsystem dimensions attached to G(Π_i): k = 2i−3 qubits per factor and a
/// (C²)^⊗(2i−3) ⊗ (C²)^⊗(2i−3) state space of dimension 2^(4i−6).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionBookkeeping {
    pub i: u32,
    pub k: u32,
    pub subsystem_qubits: u32,
    pub state_dim: u64,
}

pub fn dimension_bookkeeping(i: u32) -> Result<DimensionBookkeeping, QubitError> {
    if i < 2 {
        return Err(QubitError::BookkeepingRange(i));
    }
    let k = 2 * i - 3;
    Ok(DimensionBookkeeping { i, k, subsystem_qubits: k, state_dim: 1u64 << (4 * i - 6) })
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn state(q: u32, amps: &[(f64, f64)]) -> QubitState<f64> {
        QubitState::new(q, amps.iter().map(|&(re, im)| c(re, im)).collect()).unwrap()
    }

    /// Schmidt rank by Gaussian elimination with partial pivoting — a route
    /// that shares no code with the eigen-based implementation.
    fn elimination_rank(s: &QubitState<f64>, cut: u32, pivot_tol: f64) -> usize {
        let mut m = s.amplitude_matrix(cut).unwrap();
        let (rows, cols) = m.shape();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows)
                .filter(|&r| m[(r, col)].norm() > pivot_tol)
                .max_by(|&a, &b| {
                    m[(a, col)].norm().partial_cmp(&m[(b, col)].norm()).expect("finite")
                })
            else {
                continue;
            };
            m.swap_rows(rank, pivot);
            for r in rank + 1..rows {
                let factor = m[(r, col)] / m[(rank, col)];
                for k in col..cols {
                    let sub = factor * m[(rank, k)];
                    m[(r, k)] -= sub;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    #[test]
    fn constructor_contract() {
        let s = state(1, &[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(s.qubits(), 1);
        assert_eq!(s.norm_deviation(), 0.0);

        assert!(QubitState::<f64>::new(2, vec![c(0.5, 0.0); 4]).is_ok());
        assert!(matches!(
            QubitState::<f64>::new(2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
            Err(QubitError::NotNormalized(_))
        ));
        assert!(matches!(
            QubitState::<f64>::new(2, vec![c(1.0, 0.0)]),
            Err(QubitError::WrongLength { .. })
        ));
        assert!(matches!(
            QubitState::<f64>::new(1, vec![c(0.0, 0.0), c(0.0, 0.0)]),
            Err(QubitError::ZeroVector)
        ));
        // slight drift is renormalized and recorded
        let eps = 5e-10;
        let s = QubitState::<f64>::new(1, vec![c(1.0 + eps, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((s.amplitudes().norm() - 1.0).abs() < 1e-15);
        assert!(s.norm_deviation() > 0.0);
    }

    #[test]
    fn schmidt_rank_examples() {
        let s00 = state(2, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        assert_eq!(s00.schmidt_rank(1, 1e-10).unwrap(), 1);

        let inv = 0.5f64.sqrt();
        let bell = state(2, &[(inv, 0.0), (0.0, 0.0), (0.0, 0.0), (inv, 0.0)]);
        assert_eq!(bell.schmidt_rank(1, 1e-10).unwrap(), 2);
        let vals = bell.schmidt_values(1).unwrap();
        assert!((vals[0] - inv).abs() < 1e-12 && (vals[1] - inv).abs() < 1e-12);

        let flat = state(2, &[(0.5, 0.0); 4]);
        assert_eq!(flat.schmidt_rank(1, 1e-10).unwrap(), 1);

        assert!(matches!(bell.schmidt_rank(2, 1e-10), Err(QubitError::CutOutOfRange { .. })));
        assert!(matches!(bell.schmidt_rank(0, 1e-10), Err(QubitError::CutOutOfRange { .. })));
    }

    #[test]
    fn schmidt_rank_is_phase_invariant() {
        let inv = 0.5f64.sqrt();
        let bell = state(2, &[(inv, 0.0), (0.0, 0.0), (0.0, 0.0), (inv, 0.0)]);
        let phase = c(0.6, 0.8);
        let rotated = QubitState::new(
            2,
            bell.amplitudes().iter().map(|a| a * phase).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(
            bell.schmidt_rank(1, 1e-10).unwrap(),
            rotated.schmidt_rank(1, 1e-10).unwrap()
        );
    }

    #[test]
    fn factorization_examples() {
        let s00 = state(2, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let f = s00.factor_product(1e-10);
        assert!(f.is_product);
        let factors = f.factors.unwrap();
        assert!((factors[0][0].norm() - 1.0).abs() < 1e-12);
        assert!(factors[0][1].norm() < 1e-12);
        assert!(f.reconstruction_error.unwrap() <= 1e-9);

        // restricted amplitudes, still entangled
        let m = state(2, &[(0.5, 0.0), (0.5, 0.0), (0.5, 0.0), (-0.5, 0.0)]);
        let f = m.factor_product(1e-10);
        assert!(!f.is_product);
        assert_eq!(f.failing_cut, Some(1));

        // (|+⟩)^⊗3
        let a = 1.0 / 8f64.sqrt();
        let plus3 = state(3, &[(a, 0.0); 8]);
        let f = plus3.factor_product(1e-10);
        assert!(f.is_product);
        assert!(f.reconstruction_error.unwrap() <= 1e-9);
    }

    #[test]
    fn tensor_then_factor_round_trip() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for q in 2..=4u32 {
            for _ in 0..25 {
                let factors: Vec<[C; 2]> = (0..q)
                    .map(|_| {
                        let raw = [
                            c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                            c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                        ];
                        let n = (raw[0].norm_sqr() + raw[1].norm_sqr()).sqrt();
                        [raw[0] / n, raw[1] / n]
                    })
                    .collect();
                let amps = tensor_factors(&factors);
                let s = QubitState::new(q, amps.iter().copied().collect()).unwrap();
                let f = s.factor_product(1e-10);
                assert!(f.is_product, "q={q}");
                assert!(f.reconstruction_error.unwrap() <= 1e-9);
            }
        }
    }

    #[test]
    fn factor_product_agrees_with_gram_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        for q in 2..=4u32 {
            let len = 1usize << q;
            for trial in 0..60 {
                // alternate generic states and exact product states
                let amps: Vec<C> = if trial % 2 == 0 {
                    let raw: Vec<C> = (0..len)
                        .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                        .collect();
                    let n = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                    raw.into_iter().map(|a| a / n).collect()
                } else {
                    let factors: Vec<[C; 2]> = (0..q)
                        .map(|_| {
                            let raw = [
                                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                                c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                            ];
                            let n = (raw[0].norm_sqr() + raw[1].norm_sqr()).sqrt();
                            [raw[0] / n, raw[1] / n]
                        })
                        .collect();
                    tensor_factors(&factors).iter().copied().collect()
                };
                let s = QubitState::new(q, amps).unwrap();
                let by_factor = s.factor_product(1e-10).is_product;
                let by_elimination = (1..q).all(|cut| elimination_rank(&s, cut, 1e-8) == 1);
                assert_eq!(by_factor, by_elimination, "q={q} trial={trial}");
            }
        }
    }

    #[test]
    fn exhaustive_claim_q2() {
        let report = test_restricted_amplitude_claim(2, ClaimMode::Exhaustive).unwrap();
        assert_eq!(report.total, 256);
        assert_eq!(report.valid, 256);
        assert_eq!(report.product, 64);
        assert_eq!(report.entangled, 192);
        assert_eq!(report.counterexamples.len(), 10);
        // the printed non-entanglement claim fails on (1/2)(1,1,1,-1)
        let m = state(2, &[(0.5, 0.0), (0.5, 0.0), (0.5, 0.0), (-0.5, 0.0)]);
        assert!(!m.factor_product(1e-10).is_product);
    }

    #[test]
    fn claim_mode_errors() {
        assert!(matches!(
            test_restricted_amplitude_claim(3, ClaimMode::Exhaustive),
            Err(QubitError::ExhaustiveTooLarge(3))
        ));
        assert!(matches!(
            test_restricted_amplitude_claim(1, ClaimMode::Sampled { count: 10, seed: 0 }),
            Err(QubitError::ClaimRange(1))
        ));
    }

    #[test]
    fn sampled_claim_reproducible() {
        let a = test_restricted_amplitude_claim(6, ClaimMode::Sampled { count: 200, seed: 42 })
            .unwrap();
        let b = test_restricted_amplitude_claim(6, ClaimMode::Sampled { count: 200, seed: 42 })
            .unwrap();
        assert_eq!(a.product, b.product);
        assert_eq!(a.entangled, b.entangled);
        assert_eq!(a.total, 200);
    }

    #[test]
    fn bookkeeping_sequence() {
        let d = dimension_bookkeeping(2).unwrap();
        assert_eq!((d.k, d.state_dim), (1, 4));
        let d = dimension_bookkeeping(3).unwrap();
        assert_eq!((d.k, d.state_dim), (3, 64));
        let d = dimension_bookkeeping(4).unwrap();
        assert_eq!((d.k, d.state_dim), (5, 1024));
        for i in 2..=6u32 {
            let d = dimension_bookkeeping(i).unwrap();
            assert_eq!(d.subsystem_qubits, 2 * i - 3);
            assert_eq!(d.state_dim, 1u64 << (4 * i - 6));
        }
        assert!(dimension_bookkeeping(1).is_err());
    }
}
