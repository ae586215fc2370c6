//! Two-step block matrices
//!
//! ```text
//! [ J(s,p)    J(s,r)   ]
//! [ J(q-s,p)  0(q-s,r) ]
//! ```
//!
//! and their closed-form spectrum. The Gram matrix of such a block has
//! characteristic polynomial `x^{q-2}(x² − (pq+rs)x + prs(q−s))`, so there
//! are exactly two nonzero singular values and the trace norm is
//! `√(pq + rs + 2√(prs(q−s)))`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::binmat::{is_step_matrix, strip_zeros, BinaryMatrix};
use crate::error::{Error, Result};
use crate::spectral::Spectrum;

/// Upper limit on entries produced by [`TwoStepShape::materialize`].
pub const MATERIALIZE_CAP: u64 = 10_000;

/// Block parameters of a two-step matrix. Serialized and parsed in the
/// order `s,p,r,q`: full-row block height, left block width, right block
/// width, total height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwoStepShape {
    #[serde(rename = "s")]
    full_rows: u64,
    #[serde(rename = "p")]
    left_cols: u64,
    #[serde(rename = "r")]
    right_cols: u64,
    #[serde(rename = "q")]
    rows: u64,
}

/// Exact key for a value of the form `√(ones + 2√inner)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RadicalKey {
    pub ones: u64,
    pub inner: u64,
}

impl RadicalKey {
    pub fn value(&self) -> f64 {
        (self.ones as f64 + 2.0 * (self.inner as f64).sqrt()).sqrt()
    }

    /// Exact comparison; only defined for keys with the same `ones`.
    pub fn cmp_same_ones(&self, other: &Self) -> Option<Ordering> {
        (self.ones == other.ones).then(|| self.inner.cmp(&other.inner))
    }
}

impl TwoStepShape {
    pub fn new(full_rows: u64, left_cols: u64, right_cols: u64, rows: u64) -> Result<Self> {
        if full_rows == 0 || left_cols == 0 || right_cols == 0 {
            return Err(Error::InvalidShape(format!(
                "block sizes must be positive: {full_rows},{left_cols},{right_cols},{rows}"
            )));
        }
        if rows <= full_rows {
            return Err(Error::InvalidShape(format!("total height {rows} must exceed full-row height {full_rows}")));
        }
        let shape = Self { full_rows, left_cols, right_cols, rows };
        shape.checked_ones().ok_or(Error::Overflow("shape ones count"))?;
        shape.checked_inner().ok_or(Error::Overflow("shape radicand"))?;
        Ok(shape)
    }

    pub fn full_rows(&self) -> u64 {
        self.full_rows
    }

    pub fn left_cols(&self) -> u64 {
        self.left_cols
    }

    pub fn right_cols(&self) -> u64 {
        self.right_cols
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn cols(&self) -> u64 {
        self.left_cols + self.right_cols
    }

    /// Height of the bottom block, `q − s`.
    pub fn bottom_rows(&self) -> u64 {
        self.rows - self.full_rows
    }

    pub fn as_tuple(&self) -> (u64, u64, u64, u64) {
        (self.full_rows, self.left_cols, self.right_cols, self.rows)
    }

    fn checked_ones(&self) -> Option<u64> {
        self.left_cols.checked_mul(self.rows)?.checked_add(self.right_cols.checked_mul(self.full_rows)?)
    }

    fn checked_inner(&self) -> Option<u64> {
        self.left_cols.checked_mul(self.right_cols)?.checked_mul(self.full_rows)?.checked_mul(self.bottom_rows())
    }

    /// `pq + rs`.
    pub fn ones(&self) -> u64 {
        self.checked_ones().expect("checked at construction")
    }

    /// `prs(q − s)`, the product of the two nonzero Gram eigenvalues.
    pub fn inner(&self) -> u64 {
        self.checked_inner().expect("checked at construction")
    }

    pub fn key(&self) -> RadicalKey {
        RadicalKey { ones: self.ones(), inner: self.inner() }
    }

    pub fn trace_norm(&self) -> f64 {
        self.key().value()
    }

    /// Squares of the two nonzero singular values, larger first.
    pub fn sigma_sq(&self) -> (f64, f64) {
        let sum = self.ones() as u128;
        let prod = self.inner() as u128;
        let disc = (sum * sum - 4 * prod) as f64;
        let big = (sum as f64 + disc.sqrt()) / 2.0;
        // the product of the roots is exact, unlike the difference form
        (big, prod as f64 / big)
    }

    /// Whether the block fits inside an `n × n` matrix.
    pub fn fits(&self, n: u64) -> bool {
        self.rows <= n && self.cols() <= n
    }

    /// The transposed block, itself two-step with parameters
    /// `(p, s, q − s, p + r)`.
    pub fn transpose(&self) -> Self {
        Self { full_rows: self.left_cols, left_cols: self.full_rows, right_cols: self.bottom_rows(), rows: self.cols() }
    }

    /// The lexicographically smaller of the shape and its transpose; two
    /// shapes give equivalent matrices iff their normal forms agree.
    pub fn normal_form(&self) -> Self {
        (*self).min(self.transpose())
    }

    pub fn materialize(&self) -> Result<BinaryMatrix> {
        let entries = self.rows.saturating_mul(self.cols());
        if entries > MATERIALIZE_CAP {
            return Err(Error::MaterializeCapExceeded { entries, cap: MATERIALIZE_CAP });
        }
        let (s, p) = (self.full_rows as usize, self.left_cols as usize);
        BinaryMatrix::from_fn(self.rows as usize, self.cols() as usize, |i, j| i < s || j < p)
    }
}

impl fmt::Display for TwoStepShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.full_rows, self.left_cols, self.right_cols, self.rows)
    }
}

impl FromStr for TwoStepShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidShape(format!("{s:?}: {e}")))?;
        match parts[..] {
            [s_, p, r, q] => Self::new(s_, p, r, q),
            _ => Err(Error::InvalidShape(format!("{s:?}: expected four comma-separated integers"))),
        }
    }
}

/// Closed-form spectrum of a two-step shape: two nonzero values padded with
/// zeros to the smaller dimension.
pub fn two_step_spectrum(shape: &TwoStepShape) -> Spectrum {
    let (big, small) = shape.sigma_sq();
    let len = shape.rows().min(shape.cols()) as usize;
    let mut values = vec![0.0; len];
    values[0] = big.sqrt();
    values[1] = small.sqrt();
    Spectrum { singular_values: values, trace_norm: shape.trace_norm(), frobenius: (shape.ones() as f64).sqrt() }
}

/// Every equivalence class of two-step shapes with `m` ones that fits in an
/// `n × n` matrix and has a unit-width right block in some orientation,
/// sorted by trace norm (ties broken by the shape tuple).
///
/// Shapes with bottom height 1 are transposes of shapes with right width 1,
/// so listing the right-width-1 orientation covers both.
pub fn enumerate_shapes(n: u64, m: u64) -> Vec<TwoStepShape> {
    let mut out = Vec::new();
    for q in 2..=n {
        let s = m % q;
        if s == 0 {
            continue;
        }
        let p = m / q;
        if p == 0 || p + 1 > n {
            continue;
        }
        let shape = TwoStepShape { full_rows: s, left_cols: p, right_cols: 1, rows: q };
        // both orientations have right width 1: keep one
        if shape.bottom_rows() == 1 && shape.transpose() < shape {
            continue;
        }
        out.push(shape);
    }
    out.sort_by(|a, b| a.inner().cmp(&b.inner()).then_with(|| a.cmp(b)));
    out
}

/// Recovers the shape of a matrix equivalent to a two-step block, if any.
pub fn recognize(a: &BinaryMatrix) -> Option<TwoStepShape> {
    let core = strip_zeros(a).ok()?.step_normalize();
    let info = is_step_matrix(&core);
    if !info.is_step || info.steps != 2 {
        return None;
    }
    let wide = core.row_weight(0) as u64;
    let full_rows = (0..core.rows()).take_while(|&i| core.row_weight(i) as u64 == wide).count() as u64;
    let narrow = core.row_weight(core.rows() - 1) as u64;
    TwoStepShape::new(full_rows, narrow, wide - narrow, core.rows() as u64).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binmat::canonicalize;
    use crate::spectral::singular_spectrum;
    use proptest::prelude::*;

    fn shape(s: u64, p: u64, r: u64, q: u64) -> TwoStepShape {
        TwoStepShape::new(s, p, r, q).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert!((shape(1, 1, 2, 3).sigma_sq().1 - 1.0).abs() < 1e-12);
        assert!((shape(2, 2, 1, 3).sigma_sq().1 - (4.0 - 2.0 * 3f64.sqrt())).abs() < 1e-12);
        let ex = shape(1, 5, 1, 5);
        assert_eq!(ex.key(), RadicalKey { ones: 26, inner: 20 });
        assert!((ex.trace_norm() - (26.0 + 2.0 * 20f64.sqrt()).sqrt()).abs() < 1e-12);
        assert!((shape(2, 3, 1, 5).sigma_sq().1 - (17.0 - 217f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(shape(1, 1, 1, 2).materialize().unwrap(), "11\n10".parse().unwrap());
        assert_eq!(shape(2, 2, 1, 3).materialize().unwrap(), "111\n111\n110".parse().unwrap());

        let example: BinaryMatrix = "1111110\n1111100\n1111100\n1111100\n1111100\n0000000\n0000000".parse().unwrap();
        let m = shape(1, 5, 1, 5).materialize().unwrap();
        assert_eq!((m.rows(), m.cols()), (5, 6));
        assert_eq!(canonicalize(&m).unwrap().tag, canonicalize(&example).unwrap().tag);

        assert!(matches!(shape(1, 5000, 1, 5).materialize(), Err(Error::MaterializeCapExceeded { .. })));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(TwoStepShape::new(0, 1, 1, 2).is_err());
        assert!(TwoStepShape::new(2, 1, 1, 2).is_err());
        assert!(TwoStepShape::new(1, 0, 1, 2).is_err());
        assert!("1,2,3".parse::<TwoStepShape>().is_err());
        assert!("1,x,3,4".parse::<TwoStepShape>().is_err());
        assert_eq!("1, 5,1,5".parse::<TwoStepShape>().unwrap(), shape(1, 5, 1, 5));
    }

    /// Independent enumeration over every (s, p, r, q) with `pq + rs = m`.
    fn brute_family(n: u64, m: u64) -> Vec<TwoStepShape> {
        let mut all = Vec::new();
        for q in 2..=n {
            for s in 1..q {
                for p in 1..n {
                    for r in 1..=n - p {
                        if p * q + r * s == m && (r == 1 || q - s == 1) {
                            all.push(shape(s, p, r, q));
                        }
                    }
                }
            }
        }
        all
    }

    #[test]
    fn enumerate_matches_brute_force_classes() {
        for n in 2..=9u64 {
            for m in 1..=n * n {
                let fast = enumerate_shapes(n, m);
                let mut fast_classes: Vec<_> = fast.iter().map(|s| s.normal_form()).collect();
                fast_classes.sort();
                let mut brute: Vec<_> = brute_family(n, m).iter().map(|s| s.normal_form()).collect();
                brute.sort();
                brute.dedup();
                assert_eq!(fast_classes, brute, "n={n} m={m}");
                assert!(fast.iter().all(|s| s.ones() == m && s.fits(n) && s.right_cols() == 1));
            }
        }
    }

    #[test]
    fn normal_form_agrees_with_canonical_tag() {
        let shapes: Vec<_> = (2..=9u64).flat_map(|m| brute_family(5, m)).collect();
        for a in &shapes {
            for b in &shapes {
                let same_class = a.normal_form() == b.normal_form();
                let ta = canonicalize(&a.materialize().unwrap()).unwrap().tag;
                let tb = canonicalize(&b.materialize().unwrap()).unwrap().tag;
                assert_eq!(same_class, ta == tb, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let two = enumerate_shapes(2, 3);
        assert_eq!(two, vec![shape(1, 1, 1, 2)]);
        assert!((two[0].trace_norm() - 5f64.sqrt()).abs() < 1e-12);

        let ten = enumerate_shapes(4, 10);
        let w = ten.iter().find(|s| s.as_tuple() == (1, 3, 1, 3)).expect("three-row witness");
        assert!((w.trace_norm() - (10.0 + 2.0 * 6f64.sqrt()).sqrt()).abs() < 1e-12);

        let seven = enumerate_shapes(7, 26);
        assert_eq!(seven[0], shape(1, 5, 1, 5));
        assert!(seven.contains(&shape(2, 6, 1, 4)));
        assert!(seven[0].trace_norm() < shape(2, 6, 1, 4).trace_norm());
    }

    #[test]
    fn recognize_round_trip() {
        let s = shape(2, 3, 1, 5);
        let m = s.materialize().unwrap().pad(7, 6).unwrap();
        let back = recognize(&m.transpose()).unwrap();
        assert_eq!(back.normal_form(), s.normal_form());
        assert_eq!(recognize(&"10\n01".parse().unwrap()), None);
        assert_eq!(recognize(&"11\n11".parse().unwrap()), None);
    }

    fn arb_shape() -> impl Strategy<Value = TwoStepShape> {
        (1u64..7, 1u64..7, 1u64..7, 1u64..7).prop_map(|(s, p, r, extra)| shape(s, p, r, s + extra))
    }

    proptest! {
        #[test]
        fn closed_form_matches_numeric(sh in arb_shape()) {
            let a = sh.materialize().unwrap();
            prop_assert_eq!(a.ones() as u64, sh.ones());
            let step = is_step_matrix(&a);
            prop_assert!(step.is_step && step.steps <= 2);

            let closed = two_step_spectrum(&sh);
            let numeric = singular_spectrum(&a).unwrap();
            prop_assert!((closed.trace_norm - numeric.trace_norm).abs() < 1e-9);
            for (c, n) in closed.singular_values.iter().zip(&numeric.singular_values) {
                prop_assert!((c - n).abs() < 1e-9);
            }
            let (big, small) = sh.sigma_sq();
            prop_assert!((big + small - sh.ones() as f64).abs() < 1e-12);
            prop_assert!(small > 0.0);
        }
    }
}
