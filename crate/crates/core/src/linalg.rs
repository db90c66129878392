//! Dense complex linear algebra helpers shared by the channel and qubit
//! modules. Everything is generic over the real scalar.

use nalgebra::{Complex, ComplexField, DMatrix, DVector, RealField};
use rand::Rng;
use simba::scalar::{SubsetOf, SupersetOf};

pub type CMat<T> = DMatrix<Complex<T>>;
pub type CVec<T> = DVector<Complex<T>>;

/// Scalar bound for the dense numeric layer: a real field convertible to and
/// from `f64` (satisfied by `f32` and `f64`).
pub trait Scalar: RealField + Copy + SubsetOf<f64> + SupersetOf<f64> {}
impl<T: RealField + Copy + SubsetOf<f64> + SupersetOf<f64>> Scalar for T {}

/// Largest entry-wise deviation from Hermitian symmetry.
pub fn hermiticity_deviation<T: Scalar>(m: &CMat<T>) -> T {
    let mut dev = T::zero();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            dev = dev.max((m[(r, c)] - m[(c, r)].conj()).modulus());
        }
    }
    dev
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues<T: Scalar>(m: &CMat<T>) -> Vec<T> {
    let mut vals: Vec<T> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues of Hermitian input are finite"));
    vals
}

/// Full Hermitian eigendecomposition: (ascending eigenvalues, matching eigenvectors).
pub fn hermitian_eigen<T: Scalar>(m: &CMat<T>) -> (Vec<T>, Vec<CVec<T>>) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).expect("finite eigenvalues")
    });
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    (vals, vecs)
}

/// Singular values, descending, via the Hermitian eigenvalues of the
/// Jordan–Wielandt augmentation [[0, M], [M*, 0]] (spectrum ±σ_i plus zeros).
/// Small singular values keep absolute accuracy ~ε‖M‖, which a Gram-matrix
/// route would square away; nalgebra's general complex SVD is avoided because
/// it returns inconsistent factors on some inputs.
pub fn singular_values<T: Scalar>(m: &CMat<T>) -> Vec<T> {
    let (r, c) = m.shape();
    let n = r + c;
    let mut aug = CMat::<T>::zeros(n, n);
    aug.view_mut((0, r), (r, c)).copy_from(m);
    aug.view_mut((r, 0), (c, r)).copy_from(&m.adjoint());
    let vals = hermitian_eigenvalues(&aug);
    vals.iter().rev().take(r.min(c)).map(|l| l.max(T::zero())).collect()
}

/// Trace over the first tensor factor of an (d1·d2)×(d1·d2) matrix with
/// row index k·d2 + a (k in the first factor).
pub fn partial_trace_first<T: Scalar>(m: &CMat<T>, d1: usize, d2: usize) -> CMat<T> {
    let mut out = CMat::<T>::zeros(d2, d2);
    for k in 0..d1 {
        for a in 0..d2 {
            for b in 0..d2 {
                out[(a, b)] += m[(k * d2 + a, k * d2 + b)];
            }
        }
    }
    out
}

/// Trace over the second tensor factor.
pub fn partial_trace_second<T: Scalar>(m: &CMat<T>, d1: usize, d2: usize) -> CMat<T> {
    let mut out = CMat::<T>::zeros(d1, d1);
    for k in 0..d1 {
        for l in 0..d1 {
            for a in 0..d2 {
                out[(k, l)] += m[(k * d2 + a, l * d2 + a)];
            }
        }
    }
    out
}

/// Column-stacked vectorization with index i·rows + a ↦ m[a, i].
pub fn vec_columns<T: Scalar>(m: &CMat<T>) -> CVec<T> {
    let (rows, cols) = m.shape();
    CVec::from_fn(rows * cols, |k, _| m[(k % rows, k / rows)])
}

pub fn unvec_columns<T: Scalar>(v: &CVec<T>, rows: usize, cols: usize) -> CMat<T> {
    CMat::from_fn(rows, cols, |a, i| v[i * rows + a])
}

/// Rank-revealing modified Gram-Schmidt over unit-normalized input vectors.
/// Returns the indices of an independent subset and the orthonormal basis it
/// spans; vectors whose residual stays below `tol` are dropped.
pub fn mgs_independent<T: Scalar>(
    vectors: &[CVec<T>],
    tol: T,
) -> (Vec<usize>, Vec<CVec<T>>) {
    let mut kept = Vec::new();
    let mut basis: Vec<CVec<T>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let norm = v.norm();
        if norm <= tol {
            continue;
        }
        let mut w = v.unscale(norm);
        for b in &basis {
            let overlap = b.dotc(&w);
            w -= b * overlap;
        }
        let res = w.norm();
        if res > tol {
            kept.push(i);
            basis.push(w.unscale(res));
        }
    }
    (kept, basis)
}

/// Residual of the best approximation of `v` inside the orthonormal span.
pub fn span_residual<T: Scalar>(basis: &[CVec<T>], v: &CVec<T>) -> T {
    let mut w = v.clone();
    for b in basis {
        let overlap = b.dotc(&w);
        w -= b * overlap;
    }
    w.norm()
}

/// Dense complex matrix with entries uniform in the unit square, at `f64`
/// precision (random data is generated concretely and converted by callers).
pub fn random_cmat(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat<f64> {
    CMat::from_fn(rows, cols, |_, _| {
        Complex::new(2.0 * rng.random::<f64>() - 1.0, 2.0 * rng.random::<f64>() - 1.0)
    })
}

/// Entry-wise conversion from the concrete f64 matrices the generators
/// produce into the working scalar.
pub fn convert_cmat<T: Scalar>(m: &CMat<f64>) -> CMat<T> {
    CMat::from_fn(m.nrows(), m.ncols(), |r, c| {
        Complex::new(nalgebra::convert(m[(r, c)].re), nalgebra::convert(m[(r, c)].im))
    })
}
