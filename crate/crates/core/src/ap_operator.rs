//! Exact symbolic algebra of operators on ℓ²(ℕ) written as finite sums of
//! matrix-unit families indexed by arithmetic progressions.
//!
//! A term `coeff · Σ_{t≥1} E_{rs·t+ro, cs·t+co}` is stored by its integer
//! slope/offset data, so products, adjoints and projection checks are exact
//! integer computations (no floating-point index arithmetic anywhere).
//! A term with both slopes zero is a single matrix unit `coeff · E_{ro,co}`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Ceiling division for b > 0.
fn div_ceil(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// (g, x) with a·x ≡ g (mod m), for a, m > 0.
fn bezout(a: i64, m: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (a, m);
    let (mut x0, mut x1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
    }
    (r0, x0)
}

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("progression slope must be non-negative, got {0}")]
    NegativeSlope(i64),
    #[error("progression {slope}t+{offset} leaves ℕ at t=1")]
    IndexOutOfRange { slope: i64, offset: i64 },
    #[error("term must have both slopes zero or both positive (row slope {row}, col slope {col})")]
    MixedSlopes { row: i64, col: i64 },
    #[error("operation requires diagonal coeff-1 progressions")]
    NotDiagonal,
    #[error("cover check exceeds the exact-enumeration budget (period {0})")]
    CoverTooLarge(i64),
    #[error("truncation window must be at least 1")]
    EmptyWindow,
}

/// The set `{slope·t + offset : t = 1, 2, …}`; slope 0 denotes the singleton `{offset}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Progression {
    pub slope: i64,
    pub offset: i64,
}

impl Progression {
    pub fn new(slope: i64, offset: i64) -> Result<Self, OperatorError> {
        if slope < 0 {
            return Err(OperatorError::NegativeSlope(slope));
        }
        if slope + offset < 1 {
            return Err(OperatorError::IndexOutOfRange { slope, offset });
        }
        Ok(Self { slope, offset })
    }

    /// Index at step `t` (t ≥ 1). For singletons the step is irrelevant.
    pub fn value(&self, t: i64) -> i64 {
        self.slope * t + self.offset
    }

    pub fn first(&self) -> i64 {
        self.value(1)
    }

    pub fn is_singleton(&self) -> bool {
        self.slope == 0
    }

    pub fn contains(&self, x: i64) -> bool {
        if self.slope == 0 {
            x == self.offset
        } else {
            x >= self.first() && (x - self.offset) % self.slope == 0
        }
    }

    /// Smallest index common to both progressions, if any.
    pub fn intersection(&self, other: &Progression) -> Option<i64> {
        match (self.slope, other.slope) {
            (0, 0) => (self.offset == other.offset).then_some(self.offset),
            (0, _) => other.contains(self.offset).then_some(self.offset),
            (_, 0) => self.contains(other.offset).then_some(other.offset),
            (s1, s2) => {
                let g = gcd(s1, s2);
                let delta = other.offset - self.offset;
                if delta % g != 0 {
                    return None;
                }
                // x ≡ offset (mod slope) on both sides, x ≥ both first elements
                let l = s1 / g * s2;
                let inv = mod_inverse(s1 / g, s2 / g);
                let t0 = ((delta / g) as i128 * inv as i128).rem_euclid((s2 / g) as i128) as i64;
                let mut x = self.value(if t0 == 0 { s2 / g } else { t0 });
                let lo = self.first().max(other.first());
                if x < lo {
                    x += div_ceil(lo - x, l) * l;
                }
                Some(x)
            }
        }
    }

    pub fn disjoint(&self, other: &Progression) -> bool {
        self.intersection(other).is_none()
    }
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let (g, x) = bezout(a, m);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m)
}

/// Exact-cover verdict for a family of diagonal progressions against ℕ = {1, 2, …}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverReport {
    pub is_partition: bool,
    /// Σ 1/slope over the infinite progressions, as a reduced fraction.
    pub density: (i64, i64),
    pub witness: Option<CoverWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CoverWitness {
    /// Smallest natural number not covered.
    Gap { index: i64 },
    /// Smallest natural number covered more than once.
    Multiple { index: i64, multiplicity: u32 },
}

/// Decides exactly whether the progressions partition ℕ.
///
/// Membership is eventually periodic: beyond the largest first element every
/// progression reduces to a residue test, so checking one full lcm period past
/// that head is conclusive.
pub fn cover_naturals(progs: &[Progression]) -> Result<CoverReport, OperatorError> {
    let mut density = (0i64, 1i64);
    let mut lcm: i64 = 1;
    let mut head: i64 = 1;
    for p in progs {
        head = head.max(p.first());
        if p.slope > 0 {
            lcm = lcm.checked_mul(p.slope / gcd(lcm, p.slope)).ok_or(OperatorError::CoverTooLarge(i64::MAX))?;
            if lcm > 100_000_000 {
                return Err(OperatorError::CoverTooLarge(lcm));
            }
            let (num, den) = density;
            let d = num * p.slope + den;
            let g = gcd(d, den * p.slope);
            density = (d / g, den * p.slope / g);
        }
    }
    let mut witness = None;
    for x in 1..=head + lcm {
        let hits = progs.iter().filter(|p| p.contains(x)).count() as u32;
        if hits != 1 {
            witness = Some(if hits == 0 {
                CoverWitness::Gap { index: x }
            } else {
                CoverWitness::Multiple { index: x, multiplicity: hits }
            });
            break;
        }
    }
    Ok(CoverReport { is_partition: witness.is_none(), density, witness })
}

/// One matrix-unit family `coeff · Σ_{t≥1} E_{row(t), col(t)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct APTerm {
    pub coeff: Complex64,
    pub row: Progression,
    pub col: Progression,
}

impl APTerm {
    pub fn new(coeff: Complex64, row: Progression, col: Progression) -> Result<Self, OperatorError> {
        if (row.slope == 0) != (col.slope == 0) {
            return Err(OperatorError::MixedSlopes { row: row.slope, col: col.slope });
        }
        Ok(Self { coeff, row, col })
    }

    fn index_key(&self) -> (i64, i64, i64, i64) {
        (self.row.slope, self.row.offset, self.col.slope, self.col.offset)
    }

    pub fn is_singleton(&self) -> bool {
        self.row.is_singleton()
    }
}

/// Number of progression steps retained when realizing an operator as a finite matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationWindow {
    pub steps: usize,
}

impl TruncationWindow {
    pub fn new(steps: usize) -> Result<Self, OperatorError> {
        if steps == 0 {
            return Err(OperatorError::EmptyWindow);
        }
        Ok(Self { steps })
    }
}

/// Finite sum of [`APTerm`]s in canonical order (sorted by slopes then offsets,
/// families with identical index functions merged, zero coefficients dropped).
#[derive(Clone, Debug, Default)]
pub struct APOperator {
    terms: Vec<APTerm>,
}

impl APOperator {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    /// Single matrix unit `E_{r,c}`.
    pub fn unit(r: i64, c: i64) -> Result<Self, OperatorError> {
        Ok(Self::from_terms(vec![APTerm::new(
            Complex64::ONE,
            Progression::new(0, r)?,
            Progression::new(0, c)?,
        )?]))
    }

    /// The family `Σ_{t≥1} E_{rs·t+ro, cs·t+co}` with coefficient 1.
    pub fn ap_sum(rs: i64, ro: i64, cs: i64, co: i64) -> Result<Self, OperatorError> {
        Ok(Self::from_terms(vec![APTerm::new(
            Complex64::ONE,
            Progression::new(rs, ro)?,
            Progression::new(cs, co)?,
        )?]))
    }

    /// The identity on ℓ²(ℕ), `Σ E_{t,t}`.
    pub fn identity() -> Self {
        Self::ap_sum(1, 0, 1, 0).expect("identity progression is valid")
    }

    pub fn from_terms(terms: Vec<APTerm>) -> Self {
        let mut op = Self { terms };
        op.canonicalize();
        op
    }

    pub fn terms(&self) -> &[APTerm] {
        &self.terms
    }

    fn canonicalize(&mut self) {
        self.terms.sort_by_key(APTerm::index_key);
        let mut merged: Vec<APTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.index_key() == t.index_key() => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != Complex64::ZERO);
        self.terms = merged;
    }

    /// Swaps row/column index functions and conjugates coefficients.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| APTerm { coeff: t.coeff.conj(), row: t.col, col: t.row })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms(terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-Complex64::ONE))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.terms.iter().map(|t| APTerm { coeff: c * t.coeff, ..*t }).collect())
    }

    /// Exact product via the matrix-unit rule `E_{p,q}E_{r,s} = [q=r]·E_{p,s}`.
    ///
    /// Matching `q(t) = r(u)` over steps t,u ≥ 1 is a linear Diophantine
    /// equation whose solution set is again an arithmetic progression, so the
    /// product of AP sums is an AP sum.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for ta in &self.terms {
            for tb in &other.terms {
                match match_progressions(&ta.col, &tb.row) {
                    StepMatch::Empty => {}
                    StepMatch::Single { t, u } => {
                        let row = Progression { slope: 0, offset: ta.row.value(t) };
                        let col = Progression { slope: 0, offset: tb.col.value(u) };
                        terms.push(APTerm { coeff: ta.coeff * tb.coeff, row, col });
                    }
                    StepMatch::Family { t0, u0, dt, du } => {
                        let row = Progression {
                            slope: ta.row.slope * dt,
                            offset: ta.row.value(t0) - ta.row.slope * dt,
                        };
                        let col = Progression {
                            slope: tb.col.slope * du,
                            offset: tb.col.value(u0) - tb.col.slope * du,
                        };
                        terms.push(APTerm { coeff: ta.coeff * tb.coeff, row, col });
                    }
                }
            }
        }
        Self::from_terms(terms)
    }

    /// True iff every term has coefficient 1, identical row/column index
    /// functions, and the progressions are pairwise disjoint over t ≥ 1.
    pub fn is_diagonal_projection(&self) -> bool {
        if !self.terms.iter().all(|t| t.coeff == Complex64::ONE && t.row == t.col) {
            return false;
        }
        let progs: Vec<_> = self.terms.iter().map(|t| t.row).collect();
        progs
            .iter()
            .enumerate()
            .all(|(i, p)| progs[i + 1..].iter().all(|q| p.disjoint(q)))
    }

    /// The diagonal support progressions, for projections built from coeff-1
    /// diagonal terms. Errors on any off-diagonal or non-unit term.
    pub fn diagonal_progressions(&self) -> Result<Vec<Progression>, OperatorError> {
        self.terms
            .iter()
            .map(|t| {
                if t.coeff == Complex64::ONE && t.row == t.col {
                    Ok(t.row)
                } else {
                    Err(OperatorError::NotDiagonal)
                }
            })
            .collect()
    }

    /// Semantic zero test: true iff every matrix entry of the operator is 0.
    ///
    /// Distinct term lists can denote the same operator (e.g. `Σ E_{2t,2t}`
    /// versus `Σ E_{4t-2,4t-2} + Σ E_{4t,4t}`), so cancellation is decided on
    /// the underlying entry sets: terms are refined to a common step within
    /// each direction class, coefficients are merged line by line, and a
    /// nonzero infinite tail is conclusive because terms from other lines can
    /// meet it in at most finitely many entries.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let mut singles: BTreeMap<(i64, i64), Complex64> = BTreeMap::new();
        let mut classes: BTreeMap<(i64, i64), Vec<&APTerm>> = BTreeMap::new();
        for t in &self.terms {
            if t.is_singleton() {
                *singles.entry((t.row.offset, t.col.offset)).or_insert(Complex64::ZERO) += t.coeff;
            } else {
                let g = gcd(t.row.slope, t.col.slope);
                classes.entry((t.row.slope / g, t.col.slope / g)).or_default().push(t);
            }
        }
        for ((a, b), members) in classes {
            let big_m = members.iter().fold(1i64, |acc, t| {
                let m = t.row.slope / a;
                acc / gcd(acc, m) * m
            });
            let (rr, cc) = (a * big_m, b * big_m);
            // per line: (start step in canonical parameter, coefficient)
            let mut lines: BTreeMap<(i64, i64), Vec<(i64, Complex64)>> = BTreeMap::new();
            for t in members {
                let f = big_m / (t.row.slope / a);
                for s in 1..=f {
                    // original steps t' = f(k-1)+s, k ≥ 1, become canonical steps
                    let ro = t.row.slope * (s - f) + t.row.offset;
                    let co = t.col.slope * (s - f) + t.col.offset;
                    let d = (ro - 1).div_euclid(rr);
                    lines.entry((ro - rr * d, co - cc * d)).or_default().push((d + 1, t.coeff));
                }
            }
            for ((ro, co), mut events) in lines {
                events.sort_by_key(|e| e.0);
                let mut cum = Complex64::ZERO;
                let mut i = 0;
                while i < events.len() {
                    let start = events[i].0;
                    while i < events.len() && events[i].0 == start {
                        cum += events[i].1;
                        i += 1;
                    }
                    if cum == Complex64::ZERO {
                        continue;
                    }
                    match events.get(i) {
                        None => return false, // nonzero infinite tail
                        Some(&(next, _)) => {
                            for k in start..next {
                                *singles.entry((rr * k + ro, cc * k + co)).or_insert(Complex64::ZERO) += cum;
                            }
                        }
                    }
                }
            }
        }
        singles.values().all(|v| *v == Complex64::ZERO)
    }

    /// Lexicographically first (row, col) entry with a nonzero value, scanning
    /// exactly: an entry in row r can only come from steps t ≤ r, so each
    /// doubling pass is complete for the rows it covers.
    pub fn first_nonzero_entry(&self) -> Option<(i64, i64, Complex64)> {
        if self.is_zero() {
            return None;
        }
        let mut bound = 8i64;
        loop {
            let mut acc: BTreeMap<(i64, i64), Complex64> = BTreeMap::new();
            for term in &self.terms {
                if term.is_singleton() {
                    if term.row.offset <= bound {
                        *acc.entry((term.row.offset, term.col.offset)).or_insert(Complex64::ZERO) +=
                            term.coeff;
                    }
                } else {
                    let mut t = 1;
                    while term.row.value(t) <= bound {
                        *acc.entry((term.row.value(t), term.col.value(t)))
                            .or_insert(Complex64::ZERO) += term.coeff;
                        t += 1;
                    }
                }
            }
            if let Some((&(r, c), &v)) = acc.iter().find(|(_, v)| **v != Complex64::ZERO) {
                return Some((r, c, v));
            }
            bound *= 2;
        }
    }

    /// Dense realization keeping steps t = 1..=w.steps of every family. The
    /// matrix is square of dimension `max index realized`, 1-based indices
    /// mapped to 0-based entries.
    pub fn to_dense(&self, w: TruncationWindow) -> DMatrix<Complex64> {
        let n = w.steps as i64;
        let mut dim = 0i64;
        for t in &self.terms {
            let reach = if t.is_singleton() { t.row.offset.max(t.col.offset) } else { t.row.value(n).max(t.col.value(n)) };
            dim = dim.max(reach);
        }
        let mut m = DMatrix::zeros(dim as usize, dim as usize);
        for term in &self.terms {
            if term.is_singleton() {
                m[((term.row.offset - 1) as usize, (term.col.offset - 1) as usize)] += term.coeff;
            } else {
                for t in 1..=n {
                    m[((term.row.value(t) - 1) as usize, (term.col.value(t) - 1) as usize)] +=
                        term.coeff;
                }
            }
        }
        m
    }
}

/// Semantic equality: two operators are equal iff their difference has no
/// nonzero entry, regardless of how the progressions are sliced into terms.
impl PartialEq for APOperator {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

enum StepMatch {
    Empty,
    Single { t: i64, u: i64 },
    Family { t0: i64, u0: i64, dt: i64, du: i64 },
}

/// Solutions (t, u) with t, u ≥ 1 of `a.value(t) == b.value(u)`.
fn match_progressions(a: &Progression, b: &Progression) -> StepMatch {
    match (a.slope, b.slope) {
        (0, 0) => {
            if a.offset == b.offset {
                StepMatch::Single { t: 1, u: 1 }
            } else {
                StepMatch::Empty
            }
        }
        (0, _) => match exact_step(b, a.offset) {
            Some(u) => StepMatch::Single { t: 1, u },
            None => StepMatch::Empty,
        },
        (_, 0) => match exact_step(a, b.offset) {
            Some(t) => StepMatch::Single { t, u: 1 },
            None => StepMatch::Empty,
        },
        (sa, sb) => {
            let g = gcd(sa, sb);
            let delta = b.offset - a.offset;
            if delta % g != 0 {
                return StepMatch::Empty;
            }
            let (dt, du) = (sb / g, sa / g);
            // solve sa·t ≡ delta (mod sb): t ≡ (delta/g)·inv(sa/g) (mod sb/g)
            let inv = mod_inverse(sa / g, dt);
            let r = ((delta / g) as i128 * inv as i128).rem_euclid(dt as i128) as i64;
            let mut t0 = if r == 0 { dt } else { r };
            let mut u0 = (a.value(t0) - b.offset) / sb;
            if u0 < 1 {
                let k = div_ceil(1 - u0, du);
                t0 += k * dt;
                u0 += k * du;
            }
            StepMatch::Family { t0, u0, dt, du }
        }
    }
}

fn exact_step(p: &Progression, x: i64) -> Option<i64> {
    if p.contains(x) {
        Some((x - p.offset) / p.slope)
    } else {
        None
    }
}

/// Disjointness of two diagonal progressions, given as diagonal terms.
pub fn progressions_disjoint(p: &APTerm, q: &APTerm) -> Result<bool, OperatorError> {
    if p.row != p.col || q.row != q.col {
        return Err(OperatorError::NotDiagonal);
    }
    Ok(p.row.disjoint(&q.row))
}

// ---------------------------------------------------------------------------
// JSON schema: {"terms":[{"coeff":[re,im],"row":[slope,offset],"col":[slope,offset]},…]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: [f64; 2],
    row: [i64; 2],
    col: [i64; 2],
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for APOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        OperatorRepr {
            terms: self
                .terms
                .iter()
                .map(|t| TermRepr {
                    coeff: [t.coeff.re, t.coeff.im],
                    row: [t.row.slope, t.row.offset],
                    col: [t.col.slope, t.col.offset],
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for APOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = OperatorRepr::deserialize(deserializer)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| {
                APTerm::new(
                    Complex64::new(t.coeff[0], t.coeff[1]),
                    Progression::new(t.row[0], t.row[1]).map_err(serde::de::Error::custom)?,
                    Progression::new(t.col[0], t.col[1]).map_err(serde::de::Error::custom)?,
                )
                .map_err(serde::de::Error::custom)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(APOperator::from_terms(terms))
    }
}
