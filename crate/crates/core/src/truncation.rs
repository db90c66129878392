//! Window-truncated sparse realizations of AP operators.
//!
//! This is the numeric side of every verification verdict: it never touches
//! the symbolic Diophantine engine, only materializes entries step by step and
//! combines them. Every value carries *safe bounds*: the largest row/column
//! index below which the truncation provably agrees with the untruncated
//! operator. Sums shrink bounds to the minimum; products shrink them further
//! when a factor's matched index range leaves the other factor's safe region.
//! Comparisons are restricted to the common safe region, so a truncated
//! computation never reports a boundary artifact as a relation failure.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::ap_operator::{APOperator, TruncationWindow};

#[derive(Clone, Debug)]
pub struct TruncatedOp {
    entries: BTreeMap<(i64, i64), Complex64>,
    safe_row: i64,
    safe_col: i64,
}

/// Outcome of a numeric comparison on the common safe region.
#[derive(Clone, Debug)]
pub struct NumericCheck {
    pub pass: bool,
    /// First offending entry and its deviation, when the check fails.
    pub witness: Option<(i64, i64, f64)>,
    /// Row/column bounds of the region the verdict covers.
    pub region: (i64, i64),
}

impl TruncatedOp {
    pub fn zero() -> Self {
        Self { entries: BTreeMap::new(), safe_row: i64::MAX, safe_col: i64::MAX }
    }

    /// Materializes steps t = 1..=window of every family. Entries with larger
    /// steps start at row ≥ row(window+1), which gives the safe bounds.
    pub fn atom(op: &APOperator, window: TruncationWindow) -> Self {
        let n = window.steps as i64;
        let mut out = Self::zero();
        for term in op.terms() {
            if term.is_singleton() {
                out.insert(term.row.offset, term.col.offset, term.coeff);
            } else {
                for t in 1..=n {
                    out.insert(term.row.value(t), term.col.value(t), term.coeff);
                }
                out.safe_row = out.safe_row.min(term.row.value(n + 1) - 1);
                out.safe_col = out.safe_col.min(term.col.value(n + 1) - 1);
            }
        }
        out
    }

    fn insert(&mut self, r: i64, c: i64, v: Complex64) {
        let slot = self.entries.entry((r, c)).or_insert(Complex64::ZERO);
        *slot += v;
        if *slot == Complex64::ZERO {
            self.entries.remove(&(r, c));
        }
    }

    pub fn interior(&self) -> (i64, i64) {
        (self.safe_row, self.safe_col)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        out.safe_row = self.safe_col;
        out.safe_col = self.safe_row;
        for (&(r, c), v) in &self.entries {
            out.insert(c, r, v.conj());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.safe_row = self.safe_row.min(other.safe_row);
        out.safe_col = self.safe_col.min(other.safe_col);
        for (&(r, c), &v) in &other.entries {
            out.insert(r, c, v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut by_row: BTreeMap<i64, Vec<(i64, Complex64)>> = BTreeMap::new();
        for (&(r, c), &v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zero();
        // a product entry in row r is complete iff the left factor is complete
        // at r and every matched middle index stays inside the right factor's
        // safe rows; symmetrically for columns
        out.safe_row = self.safe_row;
        out.safe_col = other.safe_col;
        for &(r, k) in self.entries.keys() {
            if k > other.safe_row {
                out.safe_row = out.safe_row.min(r - 1);
            }
        }
        for &(k, c) in other.entries.keys() {
            if k > self.safe_col {
                out.safe_col = out.safe_col.min(c - 1);
            }
        }
        for (&(r, k), &v) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, w) in row {
                    out.insert(r, c, v * w);
                }
            }
        }
        out
    }

    fn common_region(&self, other: &Self) -> (i64, i64) {
        (self.safe_row.min(other.safe_row), self.safe_col.min(other.safe_col))
    }

    /// Entry-wise equality on the common safe region.
    pub fn eq_within(&self, other: &Self, tol: f64) -> NumericCheck {
        let region = self.common_region(other);
        let mut keys: Vec<(i64, i64)> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for (r, c) in keys {
            if r > region.0 || c > region.1 {
                continue;
            }
            let a = self.entries.get(&(r, c)).copied().unwrap_or(Complex64::ZERO);
            let b = other.entries.get(&(r, c)).copied().unwrap_or(Complex64::ZERO);
            let dev = (a - b).norm();
            if dev > tol {
                return NumericCheck { pass: false, witness: Some((r, c, dev)), region };
            }
        }
        NumericCheck { pass: true, witness: None, region }
    }

    pub fn is_zero_within(&self, tol: f64) -> NumericCheck {
        self.eq_within(&Self::zero(), tol)
    }

    /// Agreement with the identity: ones on the whole diagonal of the safe
    /// square, nothing anywhere else.
    pub fn is_identity_within(&self, tol: f64) -> NumericCheck {
        let region = (self.safe_row, self.safe_col);
        let bound = region.0.min(region.1);
        for (&(r, c), &v) in &self.entries {
            if r > region.0 || c > region.1 {
                continue;
            }
            let expect = if r == c { Complex64::ONE } else { Complex64::ZERO };
            let dev = (v - expect).norm();
            if dev > tol {
                return NumericCheck { pass: false, witness: Some((r, c, dev)), region };
            }
        }
        for d in 1..=bound {
            let v = self.entries.get(&(d, d)).copied().unwrap_or(Complex64::ZERO);
            let dev = (v - Complex64::ONE).norm();
            if dev > tol {
                return NumericCheck { pass: false, witness: Some((d, d, dev)), region };
            }
        }
        NumericCheck { pass: true, witness: None, region }
    }

    /// A 0/1 diagonal on the safe region: every present entry sits on the
    /// diagonal with value 1. Overlapping projection supports show up as a 2.
    pub fn is_diag_projection_within(&self, tol: f64) -> NumericCheck {
        let region = (self.safe_row, self.safe_col);
        for (&(r, c), &v) in &self.entries {
            if r > region.0 || c > region.1 {
                continue;
            }
            let dev = if r == c { (v - Complex64::ONE).norm() } else { v.norm() };
            if dev > tol {
                return NumericCheck { pass: false, witness: Some((r, c, dev)), region };
            }
        }
        NumericCheck { pass: true, witness: None, region }
    }

    /// Largest deviation from the identity over the safe diagonal square
    /// (trace-preservation style checks).
    pub fn max_deviation_from_identity(&self) -> (f64, (i64, i64)) {
        let bound = self.safe_row.min(self.safe_col);
        let mut max = 0.0f64;
        for (&(r, c), &v) in &self.entries {
            if r > bound || c > bound {
                continue;
            }
            let expect = if r == c { Complex64::ONE } else { Complex64::ZERO };
            max = max.max((v - expect).norm());
        }
        for d in 1..=bound {
            if !self.entries.contains_key(&(d, d)) {
                max = max.max(1.0);
            }
        }
        (max, (bound, bound))
    }
}
