//! Quantum channels in Kraus form, with Choi and Stinespring representations
//! and the confusability operator system of the Kraus family.
//!
//! Channels built from truncated edge isometries carry a window-interior
//! bound: trace-preservation style identities are asserted only on indices
//! the truncation fully represents, and the bound is reported alongside every
//! verdict.

use nalgebra::{Complex, ComplexField};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ap_operator::TruncationWindow;
use crate::ck_family::{CKFamily, CkError};
use crate::linalg::{
    convert_cmat, hermitian_eigen, hermiticity_deviation, mgs_independent, partial_trace_first,
    partial_trace_second, random_cmat, span_residual, unvec_columns, vec_columns, CMat, CVec,
    Scalar,
};
use crate::relation_graph::HamiltonianPath;
use crate::truncation::TruncatedOp;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("a channel needs at least one Kraus operator")]
    EmptyKraus,
    #[error("Kraus operators must be square matrices of one dimension")]
    ShapeMismatch,
    #[error("input dimension {input} does not match channel dimension {dim}")]
    DimensionMismatch { input: usize, dim: usize },
    #[error("a channel needs a nonempty path")]
    EmptyPath,
    #[error("matrix is not Hermitian (deviation {0})")]
    NonHermitian(f64),
    #[error("Choi matrix is not positive semidefinite (min eigenvalue {0})")]
    NotCompletelyPositive(f64),
    #[error(transparent)]
    Family(#[from] CkError),
    #[error("tolerance must be positive")]
    BadTolerance,
}

/// Ψ(X) = Σ_i S_i X S_i* on M_dim.
#[derive(Clone, Debug)]
pub struct KrausChannel<T: Scalar> {
    dim: usize,
    kraus: Vec<CMat<T>>,
    /// Identities are asserted on indices 1..=interior only (== dim for
    /// channels that are not window truncations).
    interior: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TracePreservation<T> {
    pub flag: bool,
    pub max_deviation: T,
    pub interior: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompletePositivity<T> {
    pub flag: bool,
    pub min_eigenvalue: T,
}

#[derive(Clone, Debug)]
pub struct ChoiMatrix<T: Scalar> {
    dim: usize,
    matrix: CMat<T>,
}

#[derive(Clone, Debug)]
pub struct StinespringIsometry<T: Scalar> {
    pub sys_dim: usize,
    pub env_dim: usize,
    /// (env_dim·sys_dim)×sys_dim, Kraus blocks stacked vertically; the
    /// environment is the block (first) tensor factor.
    pub matrix: CMat<T>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StinespringReport<T> {
    pub flag: bool,
    pub max_action_error: T,
    pub isometry_deviation: T,
    pub trials: usize,
    pub seed: u64,
}

/// Basis of span{S_i* S_j} extracted by rank-revealing orthogonalization.
#[derive(Clone, Debug)]
pub struct ConfusabilityBasis<T: Scalar> {
    pub dim: usize,
    pub basis: Vec<CMat<T>>,
    /// Dimension of the smaller span{S_i* S_i} (diagonal products only).
    pub diagonal_dimension: usize,
    orthonormal: Vec<CVec<T>>,
}

impl<T: Scalar> KrausChannel<T> {
    pub fn new(kraus: Vec<CMat<T>>) -> Result<Self, ChannelError> {
        let dim = match kraus.first() {
            None => return Err(ChannelError::EmptyKraus),
            Some(k) => k.nrows(),
        };
        if kraus.iter().any(|k| k.nrows() != dim || k.ncols() != dim) {
            return Err(ChannelError::ShapeMismatch);
        }
        Ok(Self { dim, kraus, interior: dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[CMat<T>] {
        &self.kraus
    }

    pub fn interior(&self) -> usize {
        self.interior
    }

    pub fn apply(&self, x: &CMat<T>) -> Result<CMat<T>, ChannelError> {
        if x.nrows() != self.dim || x.ncols() != self.dim {
            return Err(ChannelError::DimensionMismatch { input: x.nrows(), dim: self.dim });
        }
        let mut out = CMat::<T>::zeros(self.dim, self.dim);
        for s in &self.kraus {
            out += s * x * s.adjoint();
        }
        Ok(out)
    }

    /// Σ S_i*S_i = I, tested entry-wise on the interior square.
    pub fn is_trace_preserving(&self, tol: T) -> Result<TracePreservation<T>, ChannelError> {
        if tol <= T::zero() {
            return Err(ChannelError::BadTolerance);
        }
        let mut sum = CMat::<T>::zeros(self.dim, self.dim);
        for s in &self.kraus {
            sum += s.adjoint() * s;
        }
        let mut max_deviation = T::zero();
        for r in 0..self.interior {
            for c in 0..self.interior {
                let expect =
                    if r == c { Complex::from(T::one()) } else { Complex::from(T::zero()) };
                max_deviation = max_deviation.max((sum[(r, c)] - expect).modulus());
            }
        }
        Ok(TracePreservation { flag: max_deviation <= tol, max_deviation, interior: self.interior })
    }

    /// C_Ψ = Σ_ij E_ij ⊗ Ψ(E_ij), assembled as Σ_k vec(S_k)vec(S_k)*
    /// (unnormalized, no 1/dim factor).
    pub fn choi(&self) -> ChoiMatrix<T> {
        let n = self.dim * self.dim;
        let mut matrix = CMat::<T>::zeros(n, n);
        for s in &self.kraus {
            let v = vec_columns(s);
            for r in 0..n {
                for c in 0..n {
                    matrix[(r, c)] += v[r] * v[c].conj();
                }
            }
        }
        ChoiMatrix { dim: self.dim, matrix }
    }

    /// V = [S_1; …; S_r] stacked vertically; the environment (dimension r =
    /// number of Kraus operators) is the block factor.
    pub fn stinespring(&self) -> StinespringIsometry<T> {
        let r = self.kraus.len();
        let mut matrix = CMat::<T>::zeros(r * self.dim, self.dim);
        for (k, s) in self.kraus.iter().enumerate() {
            matrix.view_mut((k * self.dim, 0), (self.dim, self.dim)).copy_from(s);
        }
        StinespringIsometry { sys_dim: self.dim, env_dim: r, matrix }
    }

    /// Span of all r² products S_i*S_j. The diagonal-only span dimension is
    /// reported alongside (the printed statement of the confusability system
    /// indexes the products ambiguously, so both readings are computed).
    pub fn confusability_basis(&self, tol: T) -> ConfusabilityBasis<T> {
        let mut products = Vec::new();
        let mut diagonal = Vec::new();
        for si in &self.kraus {
            for sj in &self.kraus {
                products.push(si.adjoint() * sj);
            }
        }
        for s in &self.kraus {
            diagonal.push(vec_columns(&(s.adjoint() * s)));
        }
        let vectors: Vec<CVec<T>> = products.iter().map(vec_columns).collect();
        let (kept, orthonormal) = mgs_independent(&vectors, tol);
        let (diag_kept, _) = mgs_independent(&diagonal, tol);
        ConfusabilityBasis {
            dim: kept.len(),
            basis: kept.into_iter().map(|i| products[i].clone()).collect(),
            diagonal_dimension: diag_kept.len(),
            orthonormal,
        }
    }
}

impl KrausChannel<f64> {
    /// Kraus family of a Hamiltonian path: the dense window truncations of the
    /// path's edge isometries, padded to a common dimension. The interior
    /// bound is the smallest column index range the window fully represents.
    pub fn from_path(
        fam: &CKFamily,
        path: &HamiltonianPath,
        window: TruncationWindow,
    ) -> Result<Self, ChannelError> {
        if path.edge_ids.is_empty() {
            return Err(ChannelError::EmptyPath);
        }
        let ops: Vec<_> = path
            .edge_ids
            .iter()
            .map(|id| {
                fam.isometry(id).ok_or_else(|| CkError::MissingEdge(id.clone()))
            })
            .collect::<Result<_, _>>()?;
        let dense: Vec<CMat<f64>> = ops.iter().map(|op| op.to_dense(window)).collect();
        let dim = dense.iter().map(|m| m.nrows()).max().unwrap_or(0);
        let kraus = dense
            .into_iter()
            .map(|m| {
                let mut padded = CMat::<f64>::zeros(dim, dim);
                padded.view_mut((0, 0), m.shape()).copy_from(&m);
                padded
            })
            .collect();
        let interior = ops
            .iter()
            .map(|op| TruncatedOp::atom(op, window).interior().1)
            .min()
            .unwrap_or(0)
            .clamp(0, dim as i64) as usize;
        Ok(Self { dim, kraus, interior })
    }
}

impl<T: Scalar> ChoiMatrix<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.matrix
    }

    /// Choi matrix assembled directly from the blocks Ψ(E_ij); used for maps
    /// that are not given in Kraus form (e.g. the transpose map).
    pub fn from_blocks(
        dim: usize,
        mut block: impl FnMut(usize, usize) -> CMat<T>,
    ) -> Result<Self, ChannelError> {
        let n = dim * dim;
        let mut matrix = CMat::<T>::zeros(n, n);
        for i in 0..dim {
            for j in 0..dim {
                let b = block(i, j);
                if b.nrows() != dim || b.ncols() != dim {
                    return Err(ChannelError::ShapeMismatch);
                }
                matrix.view_mut((i * dim, j * dim), (dim, dim)).copy_from(&b);
            }
        }
        Ok(Self { dim, matrix })
    }

    /// The transpose map X ↦ Xᵀ: blocks Ψ(E_ij) = E_ji. Not completely
    /// positive; its Choi matrix has eigenvalue −1.
    pub fn of_transpose_map(dim: usize) -> Self {
        Self::from_blocks(dim, |i, j| {
            let mut b = CMat::<T>::zeros(dim, dim);
            b[(j, i)] = Complex::from(T::one());
            b
        })
        .expect("blocks are square")
    }

    pub fn hermiticity_deviation(&self) -> T {
        hermiticity_deviation(&self.matrix)
    }

    /// PSD test by Hermitian eigendecomposition. Inputs that are not
    /// Hermitian within 1e-10 are rejected.
    pub fn is_completely_positive(&self, tol: T) -> Result<CompletePositivity<T>, ChannelError> {
        if tol <= T::zero() {
            return Err(ChannelError::BadTolerance);
        }
        self.require_hermitian()?;
        let vals = crate::linalg::hermitian_eigenvalues(&self.matrix);
        let min_eigenvalue = vals.first().copied().unwrap_or_else(T::zero);
        Ok(CompletePositivity { flag: min_eigenvalue >= -tol, min_eigenvalue })
    }

    fn require_hermitian(&self) -> Result<(), ChannelError> {
        let dev = self.hermiticity_deviation();
        let bound: T = nalgebra::convert(1e-10);
        if dev > bound {
            let dev64: f64 = nalgebra::convert(dev);
            return Err(ChannelError::NonHermitian(dev64));
        }
        Ok(())
    }

    /// Kraus extraction: eigendecompose, keep eigenpairs above `tol`, reshape
    /// √λ·v into a matrix. Errors when an eigenvalue sits below −tol.
    pub fn to_kraus(&self, tol: T) -> Result<Vec<CMat<T>>, ChannelError> {
        if tol <= T::zero() {
            return Err(ChannelError::BadTolerance);
        }
        self.require_hermitian()?;
        let (vals, vecs) = hermitian_eigen(&self.matrix);
        if let Some(&min) = vals.first() {
            if min < -tol {
                let min64: f64 = nalgebra::convert(min);
                return Err(ChannelError::NotCompletelyPositive(min64));
            }
        }
        Ok(vals
            .iter()
            .zip(&vecs)
            .filter(|(l, _)| **l > tol)
            .map(|(l, v)| {
                let scaled = v * Complex::from(l.sqrt());
                unvec_columns(&scaled, self.dim, self.dim)
            })
            .collect())
    }

    /// Both partial traces: over the input (first) factor, giving Ψ(I), and
    /// over the output (second) factor, which equals I exactly when the
    /// channel is trace preserving. The printed text fixes one side; the
    /// report carries both.
    pub fn partial_traces(&self) -> (CMat<T>, CMat<T>) {
        (
            partial_trace_first(&self.matrix, self.dim, self.dim),
            partial_trace_second(&self.matrix, self.dim, self.dim),
        )
    }

    /// (first-factor trace equals I, second-factor trace equals I) within tol.
    pub fn trace_side_is_identity(&self, tol: T) -> (bool, bool) {
        let (a, b) = self.partial_traces();
        let id = CMat::<T>::identity(self.dim, self.dim);
        ((&a - &id).norm() <= tol, (&b - &id).norm() <= tol)
    }
}

impl<T: Scalar> StinespringIsometry<T> {
    /// Checks Ψ(X) = Tr_env(V X V*) on seeded random inputs and V*V = I on the
    /// channel's interior square.
    pub fn verify(
        &self,
        ch: &KrausChannel<T>,
        tol: T,
        seed: u64,
        trials: usize,
    ) -> Result<StinespringReport<T>, ChannelError> {
        if tol <= T::zero() {
            return Err(ChannelError::BadTolerance);
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut max_action_error = T::zero();
        for _ in 0..trials {
            let x: CMat<T> = convert_cmat(&random_cmat(&mut rng, self.sys_dim, self.sys_dim));
            let direct = ch.apply(&x)?;
            let dilated = &self.matrix * &x * self.matrix.adjoint();
            let traced = partial_trace_first(&dilated, self.env_dim, self.sys_dim);
            max_action_error = max_action_error.max((direct - traced).norm());
        }
        let gram = self.matrix.adjoint() * &self.matrix;
        let mut isometry_deviation = T::zero();
        for r in 0..ch.interior.min(self.sys_dim) {
            for c in 0..ch.interior.min(self.sys_dim) {
                let expect =
                    if r == c { Complex::from(T::one()) } else { Complex::from(T::zero()) };
                isometry_deviation = isometry_deviation.max((gram[(r, c)] - expect).modulus());
            }
        }
        Ok(StinespringReport {
            flag: max_action_error <= tol && isometry_deviation <= tol,
            max_action_error,
            isometry_deviation,
            trials,
            seed,
        })
    }
}

impl<T: Scalar> ConfusabilityBasis<T> {
    /// Residual of the (unit-normalized) projection P onto the span; for a
    /// trace-preserving family the interior identity always lies in it.
    pub fn identity_residual(&self, interior: usize, full_dim: usize) -> T {
        let mut id = CMat::<T>::zeros(full_dim, full_dim);
        for d in 0..interior.min(full_dim) {
            id[(d, d)] = Complex::from(T::one());
        }
        let v = vec_columns(&id);
        let n = v.norm();
        if n == T::zero() {
            return T::zero();
        }
        span_residual(&self.orthonormal, &v.unscale(n))
    }
}

/// Exactly trace-preserving random channel: a Haar-style (m·r)×m isometry from
/// the QR of a seeded random matrix, cut into r Kraus blocks.
pub fn random_tp_channel<T: Scalar>(
    m: usize,
    r: usize,
    seed: u64,
) -> KrausChannel<T> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let tall = random_cmat(&mut rng, m * r, m);
    let q = tall.qr().q();
    let kraus: Vec<CMat<T>> = (0..r)
        .map(|k| convert_cmat(&q.view((k * m, 0), (m, m)).into_owned()))
        .collect();
    KrausChannel::new(kraus).expect("generated Kraus blocks are square")
}

// ---------------------------------------------------------------------------
// Matrix JSON: {"dim":m,"entries":[[re,im],…]} row-major; channel fixtures
// list Kraus matrices.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

pub fn matrix_to_json(m: &CMat<f64>) -> serde_json::Value {
    let repr = MatrixRepr {
        dim: m.nrows(),
        entries: (0..m.nrows())
            .flat_map(|r| (0..m.ncols()).map(move |c| (r, c)))
            .map(|(r, c)| [m[(r, c)].re, m[(r, c)].im])
            .collect(),
    };
    serde_json::to_value(repr).expect("matrix serialization")
}

pub fn matrix_from_json(value: &serde_json::Value) -> Result<CMat<f64>, ChannelError> {
    let repr: MatrixRepr =
        serde_json::from_value(value.clone()).map_err(|_| ChannelError::ShapeMismatch)?;
    if repr.entries.len() != repr.dim * repr.dim {
        return Err(ChannelError::ShapeMismatch);
    }
    Ok(CMat::from_fn(repr.dim, repr.dim, |r, c| {
        let [re, im] = repr.entries[r * repr.dim + c];
        Complex::new(re, im)
    }))
}

impl KrausChannel<f64> {
    pub fn to_fixture_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "interior": self.interior,
            "kraus": self.kraus.iter().map(matrix_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_fixture_json(value: &serde_json::Value) -> Result<Self, ChannelError> {
        let kraus = value["kraus"]
            .as_array()
            .ok_or(ChannelError::EmptyKraus)?
            .iter()
            .map(matrix_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let mut ch = Self::new(kraus)?;
        if let Some(i) = value["interior"].as_u64() {
            ch.interior = (i as usize).min(ch.dim);
        }
        Ok(ch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ck_family::CKFamily;
    use rand::Rng;

    type M = CMat<f64>;

    fn unit(dim: usize, r: usize, c: usize) -> M {
        let mut m = M::zeros(dim, dim);
        m[(r, c)] = Complex::from(1.0);
        m
    }

    fn w(n: usize) -> TruncationWindow {
        TruncationWindow::new(n).unwrap()
    }

    #[test]
    fn identity_channel_is_identity() {
        let ch = KrausChannel::new(vec![M::identity(3, 3)]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let x = random_cmat(&mut rng, 3, 3);
        assert!((ch.apply(&x).unwrap() - &x).norm() < 1e-14);
        let tp = ch.is_trace_preserving(1e-10).unwrap();
        assert!(tp.flag);
        assert_eq!(tp.max_deviation, 0.0);
    }

    #[test]
    fn scaled_identity_fails_tp() {
        let ch =
            KrausChannel::new(vec![M::identity(2, 2).unscale(2.0f64.sqrt())]).unwrap();
        let tp = ch.is_trace_preserving(1e-10).unwrap();
        assert!(!tp.flag);
        assert!((tp.max_deviation - 0.5).abs() < 1e-12);
    }

    #[test]
    fn projection_channel_collapses_to_trace() {
        // Kraus {E_11, E_12} on M_2 sends X to trace(X)·E_11
        let ch = KrausChannel::new(vec![unit(2, 0, 0), unit(2, 0, 1)]).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let x = random_cmat(&mut rng, 2, 2);
        let out = ch.apply(&x).unwrap();
        let expect = unit(2, 0, 0) * x.trace();
        assert!((out - expect).norm() < 1e-12);
        // brute-force expansion over the same Kraus list agrees
        let mut brute = M::zeros(2, 2);
        for s in ch.kraus() {
            brute += s * &x * s.adjoint();
        }
        assert!((ch.apply(&x).unwrap() - brute).norm() < 1e-14);
    }

    #[test]
    fn choi_of_identity_and_projection_channels() {
        let ch = KrausChannel::new(vec![M::identity(2, 2)]).unwrap();
        let choi = ch.choi();
        let mut expect = M::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                add_block(&mut expect, i, j, &unit(2, i, j));
            }
        }
        assert!((choi.matrix() - &expect).norm() < 1e-14);
        let vals = crate::linalg::hermitian_eigenvalues(choi.matrix());
        let rounded: Vec<f64> = vals.iter().map(|v| (v * 1e9).round() / 1e9).collect();
        assert_eq!(rounded, vec![0.0, 0.0, 0.0, 2.0]);

        let ch = KrausChannel::new(vec![unit(2, 0, 0), unit(2, 0, 1)]).unwrap();
        let choi = ch.choi();
        let mut expect = M::zeros(4, 4);
        expect[(0, 0)] = Complex::from(1.0); // E_11 ⊗ E_11
        expect[(2, 2)] = Complex::from(1.0); // E_22 ⊗ E_11
        assert!((choi.matrix() - &expect).norm() < 1e-14);
    }

    fn add_block(m: &mut M, i: usize, j: usize, b: &M) {
        let d = b.nrows();
        for a in 0..d {
            for c in 0..d {
                m[(i * d + a, j * d + c)] += b[(a, c)];
            }
        }
    }

    #[test]
    fn choi_of_zero_kraus_is_zero() {
        let ch = KrausChannel::new(vec![M::zeros(2, 2)]).unwrap();
        assert_eq!(choi_norm(&ch), 0.0);
    }

    fn choi_norm(ch: &KrausChannel<f64>) -> f64 {
        ch.choi().matrix().norm()
    }

    #[test]
    fn transpose_map_is_not_cp() {
        let choi = ChoiMatrix::<f64>::of_transpose_map(2);
        let cp = choi.is_completely_positive(1e-10).unwrap();
        assert!(!cp.flag);
        assert!((cp.min_eigenvalue + 1.0).abs() < 1e-9);
        assert!(matches!(
            choi.to_kraus(1e-10),
            Err(ChannelError::NotCompletelyPositive(_))
        ));
    }

    #[test]
    fn kraus_channels_are_cp() {
        for seed in 0..5u64 {
            let ch = random_tp_channel::<f64>(3, 2, seed);
            let choi = ch.choi();
            assert!(choi.hermiticity_deviation() <= 1e-12);
            let cp = choi.is_completely_positive(1e-10).unwrap();
            assert!(cp.flag, "seed {seed}: min eig {}", cp.min_eigenvalue);
            // TP convention: the second (output-factor) partial trace is I
            let (first, second) = choi.trace_side_is_identity(1e-9);
            assert!(second, "seed {seed}");
            let _ = first;
        }
    }

    #[test]
    fn choi_round_trip_action() {
        for (seed, m, r) in [(1u64, 2usize, 2usize), (2, 3, 2), (3, 4, 3)] {
            let ch = random_tp_channel::<f64>(m, r, seed);
            let kraus = ch.choi().to_kraus(1e-10).unwrap();
            assert_eq!(kraus.len(), r, "numerical Choi rank");
            let back = KrausChannel::new(kraus).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(seed + 100);
            for _ in 0..5 {
                let x = random_cmat(&mut rng, m, m);
                let d = (ch.apply(&x).unwrap() - back.apply(&x).unwrap()).norm();
                assert!(d <= 1e-9, "action mismatch {d}");
            }
        }
    }

    #[test]
    fn choi_of_identity_recovers_identity_kraus() {
        let ch = KrausChannel::new(vec![M::identity(2, 2)]).unwrap();
        let kraus = ch.choi().to_kraus(1e-10).unwrap();
        assert_eq!(kraus.len(), 1);
        // equal to I up to a global phase
        let phase = kraus[0][(0, 0)] / kraus[0][(0, 0)].norm();
        assert!((&kraus[0] * (Complex::from(1.0) / phase) - M::identity(2, 2)).norm() < 1e-9);
    }

    #[test]
    fn stinespring_examples() {
        let ch = KrausChannel::new(vec![M::identity(2, 2)]).unwrap();
        let st = ch.stinespring();
        assert_eq!(st.env_dim, 1);
        assert!((st.matrix.clone() - M::identity(2, 2)).norm() < 1e-14);
        let report = st.verify(&ch, 1e-10, 0, 20).unwrap();
        assert!(report.flag);
        assert_eq!(report.max_action_error, 0.0);

        let ch = KrausChannel::new(vec![unit(2, 0, 0), unit(2, 0, 1)]).unwrap();
        let st = ch.stinespring();
        assert_eq!(st.env_dim, 2);
        let gram = st.matrix.adjoint() * &st.matrix;
        assert!((gram - M::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn pi2_path_channel_checks() {
        let fam = CKFamily::pi2();
        let paths = fam.distinguished_paths();
        for (name, path) in paths {
            let ch = KrausChannel::from_path(&fam, path, w(4)).unwrap();
            assert_eq!(ch.kraus().len(), 3, "{name}");
            let tp = ch.is_trace_preserving(1e-10).unwrap();
            assert!(tp.flag, "{name}: interior completeness");
            assert_eq!(tp.interior, 12, "{name}: interior = 3N");
            let st = ch.stinespring();
            let report = st.verify(&ch, 1e-10, 7, 20).unwrap();
            assert!(report.flag, "{name}");
        }
        // N=8: interior indices 1..24
        let ch = KrausChannel::from_path(&fam, &paths[0].1, w(8)).unwrap();
        let tp = ch.is_trace_preserving(1e-10).unwrap();
        assert!(tp.flag);
        assert_eq!(tp.interior, 24);
        // a single edge is not trace preserving (density 1/3)
        let single = HamiltonianPath {
            edge_ids: vec!["e".into()],
            vertices: vec![
                crate::relation_graph::Vertex::new(1, 1),
                crate::relation_graph::Vertex::new(1, 2),
            ],
        };
        let ch = KrausChannel::from_path(&fam, &single, w(4)).unwrap();
        assert!(!ch.is_trace_preserving(1e-10).unwrap().flag);
    }

    #[test]
    fn path_channel_preserves_trace_on_interior() {
        let fam = CKFamily::pi2();
        let (_, path) = &fam.distinguished_paths()[0];
        let ch = KrausChannel::from_path(&fam, path, w(4)).unwrap();
        let mut x = M::zeros(ch.dim(), ch.dim());
        for d in 0..ch.interior() {
            x[(d, d)] = Complex::from(1.0);
        }
        let out = ch.apply(&x).unwrap();
        let diff = (out.trace() - x.trace()).norm();
        assert!(diff <= 1e-10, "trace drift {diff}");
    }

    #[test]
    fn zero_choi_is_cp_with_zero_eigenvalue() {
        let choi = ChoiMatrix::from_blocks(2, |_, _| M::zeros(2, 2)).unwrap();
        let cp = choi.is_completely_positive(1e-10).unwrap();
        assert!(cp.flag);
        assert_eq!(cp.min_eigenvalue, 0.0);
    }

    #[test]
    fn confusability_dimensions() {
        let ch = KrausChannel::new(vec![M::identity(2, 2)]).unwrap();
        let basis = ch.confusability_basis(1e-10);
        assert_eq!(basis.dim, 1);
        assert_eq!(basis.diagonal_dimension, 1);
        assert!(basis.identity_residual(2, 2) <= 1e-9);

        // Kraus {E_11, E_12}: products span all four matrix units
        let ch = KrausChannel::new(vec![unit(2, 0, 0), unit(2, 0, 1)]).unwrap();
        let basis = ch.confusability_basis(1e-10);
        assert_eq!(basis.dim, 4);
        assert_eq!(basis.diagonal_dimension, 2);

        // pi2 path channels: window-stable between N=2 and N=4. P1's edge
        // operators have disjoint row supports, so only the diagonal products
        // survive; P2 picks up the extra S_j*S_h and S_h*S_j terms from the
        // printed h/j row collision.
        let fam = CKFamily::pi2();
        let expected_dims = [3usize, 5];
        for ((_, path), expect) in fam.distinguished_paths().iter().zip(expected_dims) {
            let d2 = KrausChannel::from_path(&fam, path, w(2))
                .unwrap()
                .confusability_basis(1e-10)
                .dim;
            let d4 = KrausChannel::from_path(&fam, path, w(4))
                .unwrap()
                .confusability_basis(1e-10)
                .dim;
            assert_eq!(d2, d4);
            assert_eq!(d2, expect);
        }
    }

    #[test]
    fn apply_agrees_with_choi_contraction() {
        // Ψ(X)[a,b] = Σ_ij X[i,j]·C[(i,a),(j,b)]
        for (seed, m, r) in [(4u64, 2usize, 2usize), (5, 3, 3), (6, 4, 1)] {
            let ch = random_tp_channel::<f64>(m, r, seed);
            let choi = ch.choi();
            let c = choi.matrix();
            let mut rng = ChaCha12Rng::seed_from_u64(seed + 50);
            for _ in 0..5 {
                let x = random_cmat(&mut rng, m, m);
                let direct = ch.apply(&x).unwrap();
                let contracted = M::from_fn(m, m, |a, b| {
                    let mut acc = Complex::from(0.0);
                    for i in 0..m {
                        for j in 0..m {
                            acc += x[(i, j)] * c[(i * m + a, j * m + b)];
                        }
                    }
                    acc
                });
                assert!((direct - contracted).norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn confusability_span_bounds_on_random_channels() {
        for (seed, m, r) in [(11u64, 2usize, 2usize), (12, 3, 2), (13, 4, 3), (14, 3, 1)] {
            let ch = random_tp_channel::<f64>(m, r, seed);
            let basis = ch.confusability_basis(1e-10);
            assert!(basis.dim >= 1);
            assert!(basis.dim <= r * r);
            assert!(
                basis.identity_residual(m, m) <= 1e-9,
                "identity must lie in the span of a TP family"
            );
        }
    }

    #[test]
    fn apply_is_linear() {
        let ch = random_tp_channel::<f64>(3, 3, 42);
        let mut rng = ChaCha12Rng::seed_from_u64(43);
        for _ in 0..10 {
            let x = random_cmat(&mut rng, 3, 3);
            let y = random_cmat(&mut rng, 3, 3);
            let a = Complex::new(rng.random::<f64>(), rng.random::<f64>());
            let b = Complex::new(rng.random::<f64>(), rng.random::<f64>());
            let lhs = ch.apply(&(&x * a + &y * b)).unwrap();
            let rhs = ch.apply(&x).unwrap() * a + ch.apply(&y).unwrap() * b;
            assert!((lhs - rhs).norm() <= 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let ch = KrausChannel::new(vec![M::identity(2, 2)]).unwrap();
        assert!(matches!(
            ch.apply(&M::identity(3, 3)),
            Err(ChannelError::DimensionMismatch { .. })
        ));
        assert!(matches!(KrausChannel::<f64>::new(vec![]), Err(ChannelError::EmptyKraus)));
    }

    #[test]
    fn fixture_round_trip() {
        let ch = random_tp_channel::<f64>(2, 2, 9);
        let json = ch.to_fixture_json();
        let back = KrausChannel::from_fixture_json(&json).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(10);
        let x = random_cmat(&mut rng, 2, 2);
        assert!((ch.apply(&x).unwrap() - back.apply(&x).unwrap()).norm() < 1e-14);
    }
}
