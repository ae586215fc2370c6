//! Brute-force ground truth for `ψₙ(m)` at small `n`.
//!
//! Every placement of `m` ones in the `n × n` grid is scored with the numeric
//! spectrum; nothing here uses the closed forms of [`crate::psi`].

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::binmat::{canonicalize, tag_hex, BinaryMatrix, CanonicalForm};
use crate::error::{Error, Result};
use crate::spectral::{trace_norm_with, Workspace, TIE_TOL};

pub const ORACLE_MAX_N: u64 = 5;

/// Upper limit on `C(n², m)`.
pub const ORACLE_GUARD: u128 = 5_000_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleOptions {
    /// Only score matrices whose rows are sorted descending as bit-strings.
    /// Every row-permutation class keeps a representative, so the minimum is
    /// unchanged while far fewer spectra are computed.
    pub prune_sorted_rows: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub n: u64,
    pub m: u64,
    pub psi: f64,
    pub minimizer_tags: Vec<String>,
    pub count_scanned: u64,
    #[serde(skip)]
    pub minimizers: Vec<CanonicalForm>,
}

/// Exact `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Rejects `(n, m)` outside the oracle's feasibility window.
pub fn check_feasible(n: u64, m: u64) -> Result<()> {
    if !(2..=ORACLE_MAX_N).contains(&n) {
        return Err(Error::OutOfRange(format!("brute force needs 2 <= n <= {ORACLE_MAX_N}, got {n}")));
    }
    let cells = n * n;
    if m == 0 || m > cells {
        return Err(Error::OutOfRange(format!("m must lie in [1, {cells}], got {m}")));
    }
    let count = binomial(cells, m);
    if count > ORACLE_GUARD {
        return Err(Error::OracleGuardExceeded { cells, ones: m, count, cap: ORACLE_GUARD });
    }
    Ok(())
}

pub fn brute_force_psi(n: u64, m: u64) -> Result<OracleResult> {
    brute_force_psi_with(n, m, OracleOptions::default())
}

struct Partial {
    best: f64,
    candidates: Vec<(f64, u32)>,
    scanned: u64,
}

pub fn brute_force_psi_with(n: u64, m: u64, opts: OracleOptions) -> Result<OracleResult> {
    check_feasible(n, m)?;
    let n_us = n as usize;
    let cells = n_us * n_us;
    let ones = m as usize;

    // Split by the first (up to) two chosen positions, lexicographically.
    let depth = ones.min(2);
    let mut prefixes: Vec<Vec<usize>> = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == depth {
            prefixes.push(prefix);
            continue;
        }
        let start = prefix.last().map_or(0, |&p| p + 1);
        for pos in (start..cells).rev() {
            if pos + (ones - prefix.len()) <= cells {
                let mut next = prefix.clone();
                next.push(pos);
                stack.push(next);
            }
        }
    }

    let partials: Vec<Partial> =
        prefixes.par_iter().map(|prefix| scan_stratum(n_us, ones, prefix, opts)).collect::<Result<_>>()?;

    let best = partials.iter().map(|p| p.best).fold(f64::INFINITY, f64::min);
    let scanned = partials.iter().map(|p| p.scanned).sum();
    let mut classes: BTreeMap<Vec<u8>, CanonicalForm> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for p in &partials {
        for &(value, mask) in &p.candidates {
            if value <= best + TIE_TOL {
                let a = mask_matrix(n_us, mask);
                let rows = row_masks(n_us, mask);
                // identical row multisets are the same class; skip recanonicalizing
                let mut key = rows.clone();
                key.sort_unstable();
                if seen.insert(key) {
                    let cf = canonicalize(&a)?;
                    classes.entry(cf.tag.clone()).or_insert(cf);
                }
            }
        }
    }
    let minimizers: Vec<CanonicalForm> = classes.into_values().collect();
    Ok(OracleResult {
        n,
        m,
        psi: best,
        minimizer_tags: minimizers.iter().map(|c| tag_hex(&c.tag)).collect(),
        count_scanned: scanned,
        minimizers,
    })
}

fn row_masks(n: usize, mask: u32) -> Vec<u32> {
    let row = (1u32 << n) - 1;
    (0..n).map(|i| mask >> (i * n) & row).collect()
}

/// Cell `i·n + j` of the bitmask is entry `(i, j)`.
fn mask_matrix(n: usize, mask: u32) -> BinaryMatrix {
    BinaryMatrix::from_fn(n, n, |i, j| mask >> (i * n + j) & 1 == 1).expect("n >= 1")
}

/// Rows read as bit-strings with column 0 most significant must not increase.
fn rows_sorted(n: usize, mask: u32) -> bool {
    let rows = row_masks(n, mask);
    let as_string = |r: u32| r.reverse_bits() >> (32 - n);
    rows.windows(2).all(|w| as_string(w[0]) >= as_string(w[1]))
}

fn scan_stratum(n: usize, ones: usize, prefix: &[usize], opts: OracleOptions) -> Result<Partial> {
    let cells = n * n;
    let base = prefix.last().map_or(0, |&p| p + 1);
    let prefix_mask = prefix.iter().fold(0u32, |acc, &p| acc | 1 << p);
    let rest = ones - prefix.len();
    let width = cells - base;

    let mut ws = Workspace::new();
    let mut out = Vec::new();
    let mut part = Partial { best: f64::INFINITY, candidates: Vec::new(), scanned: 0 };

    let mut visit = |combo: u32| -> Result<()> {
        let mask = prefix_mask | combo << base;
        if opts.prune_sorted_rows && !rows_sorted(n, mask) {
            return Ok(());
        }
        part.scanned += 1;
        let value = trace_norm_with(&mask_matrix(n, mask), &mut ws, &mut out)?;
        if value < part.best {
            part.best = value;
            part.candidates.retain(|&(v, _)| v <= value + TIE_TOL);
        }
        if value <= part.best + TIE_TOL {
            part.candidates.push((value, mask));
        }
        Ok(())
    };

    if rest == 0 {
        visit(0)?;
        return Ok(part);
    }
    // Gosper's hack over `width` bits choosing `rest`.
    let limit = 1u64 << width;
    let mut combo: u64 = (1u64 << rest) - 1;
    while combo < limit {
        visit(combo as u32)?;
        let low = combo & combo.wrapping_neg();
        let ripple = combo + low;
        combo = (((ripple ^ combo) >> 2) / low) | ripple;
    }
    Ok(part)
}

/// Small submatrices whose presence pushes the trace norm to at least
/// `√(m−1) + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForbiddenPattern {
    /// `[[1,0],[0,1]]`
    Identity,
    /// `[[0,1],[1,0]]`
    AntiIdentity,
    /// `[[1,1,1],[1,0,0],[1,0,0]]`
    DoubleHook,
    /// `[[1,1,1,1],[1,1,1,0],[1,1,0,0]]`
    WideStaircase,
    /// `[[1,1,1,1],[1,1,1,0],[1,0,0,0]]`
    SteepStaircase,
}

impl ForbiddenPattern {
    pub const ALL: [ForbiddenPattern; 5] = [
        ForbiddenPattern::Identity,
        ForbiddenPattern::AntiIdentity,
        ForbiddenPattern::DoubleHook,
        ForbiddenPattern::WideStaircase,
        ForbiddenPattern::SteepStaircase,
    ];

    pub fn matrix(self) -> BinaryMatrix {
        let lit = match self {
            ForbiddenPattern::Identity => "10\n01",
            ForbiddenPattern::AntiIdentity => "01\n10",
            ForbiddenPattern::DoubleHook => "111\n100\n100",
            ForbiddenPattern::WideStaircase => "1111\n1110\n1100",
            ForbiddenPattern::SteepStaircase => "1111\n1110\n1000",
        };
        lit.parse().expect("static literal")
    }
}

/// Whether some choice of distinct rows and columns of `a`, in some order,
/// reproduces `pattern`.
pub fn contains_pattern(a: &BinaryMatrix, pattern: &BinaryMatrix) -> bool {
    let (h, w) = (pattern.rows(), pattern.cols());
    if h > a.rows() || w > a.cols() {
        return false;
    }
    let mut needed: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for row in pattern.to_rows() {
        *needed.entry(row).or_default() += 1;
    }
    let mut tuple = Vec::with_capacity(w);
    let mut used = vec![false; a.cols()];
    column_tuples(a, w, &mut tuple, &mut used, &mut |cols| {
        let mut have: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        for i in 0..a.rows() {
            let row: Vec<u8> = cols.iter().map(|&j| a.get(i, j) as u8).collect();
            *have.entry(row).or_default() += 1;
        }
        needed.iter().all(|(row, &k)| have.get(row).copied().unwrap_or(0) >= k)
    })
}

fn column_tuples(
    a: &BinaryMatrix,
    w: usize,
    tuple: &mut Vec<usize>,
    used: &mut [bool],
    hit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if tuple.len() == w {
        return hit(tuple);
    }
    for j in 0..a.cols() {
        if used[j] {
            continue;
        }
        used[j] = true;
        tuple.push(j);
        let found = column_tuples(a, w, tuple, used, hit);
        tuple.pop();
        used[j] = false;
        if found {
            return true;
        }
    }
    false
}

pub fn find_forbidden(a: &BinaryMatrix) -> Option<ForbiddenPattern> {
    ForbiddenPattern::ALL.into_iter().find(|p| contains_pattern(a, &p.matrix()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StructureVerdict {
    Holds,
    Violated {
        tag: String,
        detail: String,
    },
    /// The oracle minimum is not strictly between `√m` and `√(m−1) + 1`.
    NotApplicable {
        psi: f64,
    },
}

impl StructureVerdict {
    pub fn passed(&self) -> Option<bool> {
        match self {
            StructureVerdict::Holds => Some(true),
            StructureVerdict::Violated { .. } => Some(false),
            StructureVerdict::NotApplicable { .. } => None,
        }
    }
}

fn in_structure_window(res: &OracleResult) -> bool {
    let m = res.m as f64;
    res.psi > m.sqrt() + TIE_TOL && res.psi < (m - 1.0).sqrt() + 1.0 - TIE_TOL
}

/// Canonical tags of every `[[J(s,p), J(s,1)], [J(q−s,p), 0]]` with `m`
/// ones fitting in an `n × n` matrix (in either orientation).
fn unit_right_block_tags(n: u64, m: u64) -> Result<BTreeSet<Vec<u8>>> {
    let mut tags = BTreeSet::new();
    for q in 2..=m {
        for s in 1..q {
            if m < s || (m - s) % q != 0 {
                continue;
            }
            let p = (m - s) / q;
            if p == 0 {
                continue;
            }
            let (rows, cols) = (q, p + 1);
            if rows.max(cols) > n {
                continue;
            }
            let a = BinaryMatrix::from_fn(rows as usize, cols as usize, |i, j| (i as u64) < s || (j as u64) < p)?;
            tags.insert(canonicalize(&a)?.tag);
        }
    }
    Ok(tags)
}

/// Checks that every minimizer strictly between `√m` and `√(m−1) + 1` is
/// equivalent to a two-step block with a unit-width right block.
pub fn verify_tsm(n: u64, m: u64) -> Result<StructureVerdict> {
    let res = brute_force_psi(n, m)?;
    verify_tsm_for(&res)
}

pub fn verify_tsm_for(res: &OracleResult) -> Result<StructureVerdict> {
    if !in_structure_window(res) {
        return Ok(StructureVerdict::NotApplicable { psi: res.psi });
    }
    let family = unit_right_block_tags(res.n, res.m)?;
    for cf in &res.minimizers {
        if !family.contains(&cf.tag) {
            return Ok(StructureVerdict::Violated {
                tag: cf.tag_hex(),
                detail: format!("minimizer is not a unit-right-block two-step matrix:\n{}", cf.matrix),
            });
        }
    }
    Ok(StructureVerdict::Holds)
}

/// Checks that no minimizer in the structure window contains one of the
/// [`ForbiddenPattern`]s.
pub fn verify_forbidden_submatrices(n: u64, m: u64) -> Result<StructureVerdict> {
    let res = brute_force_psi(n, m)?;
    verify_forbidden_for(&res)
}

pub fn verify_forbidden_for(res: &OracleResult) -> Result<StructureVerdict> {
    if !in_structure_window(res) {
        return Ok(StructureVerdict::NotApplicable { psi: res.psi });
    }
    for cf in &res.minimizers {
        if let Some(p) = find_forbidden(&cf.matrix) {
            return Ok(StructureVerdict::Violated { tag: cf.tag_hex(), detail: format!("contains {p:?}") });
        }
    }
    Ok(StructureVerdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binmat::is_step_matrix;
    use crate::step_forms::TwoStepShape;

    #[test]
    fn binomials() {
        assert_eq!(binomial(16, 12), 1820);
        assert_eq!(binomial(16, 11), 4368);
        assert_eq!(binomial(25, 12), 5_200_300);
        assert_eq!(binomial(25, 11), 4_457_400);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn guard() {
        assert!(matches!(brute_force_psi(5, 12), Err(Error::OracleGuardExceeded { count: 5_200_300, .. })));
        assert!(brute_force_psi(6, 2).is_err());
        assert!(brute_force_psi(3, 10).is_err());
    }

    #[test]
    fn two_by_two_three_ones() {
        let r = brute_force_psi(2, 3).unwrap();
        assert!((r.psi - 5f64.sqrt()).abs() < 1e-9);
        assert_eq!(r.count_scanned, 4);
        assert_eq!(r.minimizers.len(), 1);
        let expected = canonicalize(&"11\n10".parse().unwrap()).unwrap();
        assert_eq!(r.minimizers[0].tag, expected.tag);
    }

    #[test]
    fn three_by_three() {
        let r = brute_force_psi(3, 5).unwrap();
        assert!((r.psi - (5.0 + 8f64.sqrt()).sqrt()).abs() < 1e-9);
        assert_eq!(r.count_scanned, 126);
        let r = brute_force_psi(3, 4).unwrap();
        assert!((r.psi - 2.0).abs() < 1e-9);
    }

    #[test]
    fn tsm_examples() {
        assert_eq!(verify_tsm(3, 5).unwrap(), StructureVerdict::Holds);
        let r = brute_force_psi(3, 5).unwrap();
        let shape = canonicalize(&TwoStepShape::new(1, 2, 1, 2).unwrap().materialize().unwrap()).unwrap();
        assert_eq!(r.minimizers.iter().map(|c| &c.tag).collect::<Vec<_>>(), vec![&shape.tag]);

        assert!(matches!(verify_tsm(3, 4).unwrap(), StructureVerdict::NotApplicable { .. }));

        assert_eq!(verify_tsm(4, 7).unwrap(), StructureVerdict::Holds);
        let r = brute_force_psi(4, 7).unwrap();
        let shape = canonicalize(&TwoStepShape::new(1, 3, 1, 2).unwrap().materialize().unwrap()).unwrap();
        assert!(r.minimizers.iter().any(|c| c.tag == shape.tag));
    }

    #[test]
    fn forbidden_examples() {
        assert_eq!(verify_forbidden_submatrices(3, 5).unwrap(), StructureVerdict::Holds);
        let j22 = BinaryMatrix::ones_matrix(2, 2).unwrap().pad(4, 4).unwrap();
        assert_eq!(find_forbidden(&j22), None);
        let id: BinaryMatrix = "10\n01".parse().unwrap();
        assert_eq!(find_forbidden(&id), Some(ForbiddenPattern::Identity));
        let hidden: BinaryMatrix = "0110\n1011\n0100".parse().unwrap();
        assert!(contains_pattern(&hidden, &ForbiddenPattern::Identity.matrix()));
        let x4_scrambled: BinaryMatrix = "0111\n1111\n0011".parse().unwrap();
        assert!(contains_pattern(&x4_scrambled, &ForbiddenPattern::WideStaircase.matrix()));
    }

    #[test]
    fn pruned_mode_agrees() {
        for (n, m) in [(3, 5), (3, 7), (4, 6), (4, 10)] {
            let full = brute_force_psi(n, m).unwrap();
            let pruned = brute_force_psi_with(n, m, OracleOptions { prune_sorted_rows: true }).unwrap();
            assert!((full.psi - pruned.psi).abs() < 1e-12);
            assert_eq!(full.minimizer_tags, pruned.minimizer_tags);
            assert!(pruned.count_scanned < full.count_scanned);
        }
    }

    #[test]
    fn minimizers_are_two_step_in_window() {
        for n in 2..=4u64 {
            for m in 1..=n * n {
                let r = brute_force_psi(n, m).unwrap();
                assert!(r.psi >= (m as f64).sqrt() - 1e-9);
                assert!(!r.minimizers.is_empty());
                if in_structure_window(&r) {
                    for cf in &r.minimizers {
                        let info = is_step_matrix(&cf.matrix.step_normalize());
                        assert!(info.is_step && info.steps <= 2, "n={n} m={m}\n{}", cf.matrix);
                    }
                }
            }
        }
    }

    #[test]
    fn padding_never_hurts() {
        // an n×n minimizer padded with a zero row and column lies in the
        // (n+1)×(n+1) search space, so the minimum can only drop
        for n in 2..=3u64 {
            for m in 1..=n * n {
                let a = brute_force_psi(n, m).unwrap().psi;
                let b = brute_force_psi(n + 1, m).unwrap().psi;
                assert!(b <= a + 1e-9, "n={n} m={m}: {a} vs {b}");
            }
        }
        // strict drop: three ones fit in one row of a 3x3 grid but not a 2x2 one
        let a = brute_force_psi(2, 3).unwrap().psi;
        let b = brute_force_psi(3, 3).unwrap().psi;
        assert!(b < a - 1e-6);
    }
}
