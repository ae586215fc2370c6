//! Minimum trace norm `ψₙ(m)` over `n × n` (0,1)-matrices with `m` ones.
//!
//! Exact values are returned where a closed form is known (`m <= 3n`, and
//! `3n < m <= 4n` under the prime-triple condition, unless a realised shape
//! beats the four-row value). Everywhere else the result is an interval whose
//! upper end is the best realised two-step shape.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::{factor_fit, is_prime, TripleWitness};
use crate::step_forms::{enumerate_shapes, RadicalKey, TwoStepShape};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsiStatus {
    Exact { value: f64 },
    Bounds { lower: f64, upper: f64 },
}

/// Matrix realising a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `J_{rows,cols}` padded with zeros.
    Rank1 {
        rows: u64,
        cols: u64,
    },
    Shape {
        shape: TwoStepShape,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Rank1,
    PrimeTwoRow,
    PrimeOrDoubleThreeRow,
    TripleFourRow,
    BoundOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsiResult {
    pub n: u64,
    pub m: u64,
    pub status: PsiStatus,
    pub witness: Option<Witness>,
    pub classification: Classification,
    /// `(ones, inner)` of the exact value or upper bound when it has the
    /// form `√(ones + 2√inner)`; `inner = 0` encodes `√ones`.
    pub key: Option<RadicalKey>,
    pub triple: Option<TripleWitness>,
}

impl PsiResult {
    pub fn upper(&self) -> f64 {
        match self.status {
            PsiStatus::Exact { value } => value,
            PsiStatus::Bounds { upper, .. } => upper,
        }
    }

    pub fn lower(&self) -> f64 {
        match self.status {
            PsiStatus::Exact { value } => value,
            PsiStatus::Bounds { lower, .. } => lower,
        }
    }

    pub fn exact(&self) -> Option<f64> {
        match self.status {
            PsiStatus::Exact { value } => Some(value),
            PsiStatus::Bounds { .. } => None,
        }
    }

    fn exact_from(n: u64, m: u64, key: RadicalKey, witness: Witness, classification: Classification) -> Self {
        Self {
            n,
            m,
            status: PsiStatus::Exact { value: key.value() },
            witness: Some(witness),
            classification,
            key: Some(key),
            triple: None,
        }
    }
}

fn check_range(n: u64, m: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n must be at least 2, got {n}")));
    }
    let cells = n.checked_mul(n).ok_or(Error::Overflow("n²"))?;
    if m == 0 || m > cells {
        return Err(Error::OutOfRange(format!("m must lie in [1, {cells}], got {m}")));
    }
    Ok(())
}

fn rank1_key(m: u64) -> RadicalKey {
    RadicalKey { ones: m, inner: 0 }
}

pub fn psi(n: u64, m: u64) -> Result<PsiResult> {
    check_range(n, m)?;
    let exact_shape =
        |shape: TwoStepShape, class| PsiResult::exact_from(n, m, shape.key(), Witness::Shape { shape }, class);

    if m <= n {
        return Ok(PsiResult::exact_from(
            n,
            m,
            rank1_key(m),
            Witness::Rank1 { rows: 1, cols: m },
            Classification::Rank1,
        ));
    }
    if let Some((a, b)) = factor_fit(n, m) {
        return Ok(PsiResult::exact_from(
            n,
            m,
            rank1_key(m),
            Witness::Rank1 { rows: a, cols: b },
            Classification::Rank1,
        ));
    }
    if m <= 2 * n && is_prime(m) {
        let shape = TwoStepShape::new(1, (m - 1) / 2, 1, 2)?;
        return Ok(exact_shape(shape, Classification::PrimeTwoRow));
    }
    if 2 * n < m && m <= 3 * n && n >= 4 && (is_prime(m) || (m % 2 == 0 && is_prime(m / 2))) {
        let shape = TwoStepShape::new(m % 3, m / 3, 1, 3)?;
        return Ok(exact_shape(shape, Classification::PrimeOrDoubleThreeRow));
    }
    if 3 * n < m && m <= 4 * n && n >= 6 {
        if let Some(triple) = TripleWitness::for_ones(m) {
            let shape = TwoStepShape::new(2, (m - 2) / 4, 1, 4)?;
            // For m = 12k - 2 = 3n + 1 the column (1, 3, 1, n) beats the
            // four-row shape although the triple is prime.
            let beaten = enumerate_shapes(n, m)
                .first()
                .is_some_and(|best| best.key().cmp_same_ones(&shape.key()) == Some(Ordering::Less));
            if beaten {
                return bounds_from_family(n, m);
            }
            let mut res = exact_shape(shape, Classification::TripleFourRow);
            res.triple = Some(triple);
            return Ok(res);
        }
    }

    bounds_from_family(n, m)
}

/// Interval `[√m, best realised two-step shape or the general bound]`.
fn bounds_from_family(n: u64, m: u64) -> Result<PsiResult> {
    let family_best = enumerate_shapes(n, m).into_iter().next();
    let gb = gb_bound(n, m)?;
    let (upper, witness, key) = match family_best {
        Some(shape) if shape.trace_norm() <= gb.value => {
            (shape.trace_norm(), Some(Witness::Shape { shape }), Some(shape.key()))
        }
        _ => (gb.value, gb.witness.map(|shape| Witness::Shape { shape }), None),
    };
    Ok(PsiResult {
        n,
        m,
        status: PsiStatus::Bounds { lower: (m as f64).sqrt(), upper },
        witness,
        classification: Classification::BoundOnly,
        key,
        triple: None,
    })
}

/// General upper bound `√m + √⌈m/n⌉/2` with the block used to prove it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GbBound {
    pub value: f64,
    /// `(s, ⌊m/k⌋, 1, k)` with `k = ⌈m/n⌉`, present when `s = m − k⌊m/k⌋ > 0`.
    pub witness: Option<TwoStepShape>,
}

pub fn gb_bound(n: u64, m: u64) -> Result<GbBound> {
    check_range(n, m)?;
    let k = m.div_ceil(n);
    let p = m / k;
    let s = m - k * p;
    let value = (m as f64).sqrt() + (k as f64).sqrt() / 2.0;
    let witness = if s > 0 { Some(TwoStepShape::new(s, p, 1, k)?) } else { None };
    Ok(GbBound { value, witness })
}

/// The four-row construction value for `m ≢ 0 (mod 4)`, `m >= 5`.
pub fn pro4_bound(m: u64) -> Result<f64> {
    Ok(pro4_shape(m)?.trace_norm())
}

/// `(m mod 4, ⌊m/4⌋, 1, 4)`.
pub fn pro4_shape(m: u64) -> Result<TwoStepShape> {
    if m < 5 {
        return Err(Error::OutOfRange(format!("four-row bound needs m >= 5, got {m}")));
    }
    if m % 4 == 0 {
        return Err(Error::OutOfRange(format!("four-row bound undefined for m ≡ 0 (mod 4), got {m}")));
    }
    TwoStepShape::new(m % 4, m / 4, 1, 4)
}

/// Checks that the best known value for `(n, m)` with `m <= 4n` stays
/// strictly below `√(m−1) + 1`, and that the four-row construction does
/// too whenever it fits.
pub fn cor1_check(n: u64, m: u64) -> Result<bool> {
    if m < 2 || m > 4 * n {
        return Err(Error::OutOfRange(format!("need 2 <= m <= 4n, got n={n} m={m}")));
    }
    let threshold = ((m - 1) as f64).sqrt() + 1.0;
    if psi(n, m)?.upper() >= threshold {
        return Ok(false);
    }
    if n >= 4 && m >= 5 && m % 4 != 0 && pro4_bound(m)? >= threshold {
        return Ok(false);
    }
    Ok(true)
}
