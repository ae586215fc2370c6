//! Dense (0,1)-matrices and the equivalence they are studied under.
//!
//! Two matrices are equivalent when one can be reached from the other by
//! transposition, row/column permutation and insertion or deletion of zero
//! rows/columns. Equivalent matrices share their nonzero singular values, so
//! every search in this crate works on equivalence classes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest smaller-side dimension accepted by [`canonicalize`].
pub const CANONICAL_CAP: usize = 8;

/// A dense (0,1)-matrix stored row-major as packed bits.
///
/// Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    ones: usize,
}

impl BinaryMatrix {
    /// All-zero matrix of the given size.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| false)
    }

    /// All-ones matrix `J_{rows,cols}`.
    pub fn ones_matrix(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::OutOfRange(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        let words_per_row = cols.div_ceil(64);
        let mut bits = vec![0u64; rows * words_per_row];
        let mut ones = 0;
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    bits[i * words_per_row + j / 64] |= 1 << (j % 64);
                    ones += 1;
                }
            }
        }
        Ok(Self { rows, cols, words_per_row, bits, ones })
    }

    /// Builds a matrix from nested rows of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            if let Some(v) = r.iter().find(|&&v| v > 1) {
                return Err(Error::Parse(format!("row {i} contains non-binary value {v}")));
            }
        }
        Self::from_fn(rows.len(), cols, |i, j| rows[i].as_ref()[j] == 1)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of 1-entries.
    pub fn ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    /// Number of columns where rows `i` and `k` both carry a 1.
    pub fn row_overlap(&self, i: usize, k: usize) -> usize {
        self.row_words(i).iter().zip(self.row_words(k)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i)).expect("nonempty dims")
    }

    /// `P·A·Q`: row `i` of the result is row `row_perm[i]` of `self`, and
    /// likewise for columns.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        check_permutation(row_perm, self.rows, "row")?;
        check_permutation(col_perm, self.cols, "column")?;
        Self::from_fn(self.rows, self.cols, |i, j| self.get(row_perm[i], col_perm[j]))
    }

    /// Embeds the matrix in the top-left corner of a `rows × cols` zero matrix.
    pub fn pad(&self, rows: usize, cols: usize) -> Result<Self> {
        if rows < self.rows || cols < self.cols {
            return Err(Error::OutOfRange(format!("cannot pad {}x{} into {rows}x{cols}", self.rows, self.cols)));
        }
        Self::from_fn(rows, cols, |i, j| i < self.rows && j < self.cols && self.get(i, j))
    }

    /// The submatrix on the selected rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if let Some(&i) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::NotASubmatrix(format!("row index {i} out of range")));
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::NotASubmatrix(format!("column index {j} out of range")));
        }
        if has_duplicates(rows) || has_duplicates(cols) {
            return Err(Error::NotASubmatrix("repeated index in selection".into()));
        }
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Reorders rows by weight, then columns by weight, both descending
    /// (stable). A matrix equivalent to a step matrix becomes one.
    pub fn step_normalize(&self) -> Self {
        let mut row_order: Vec<usize> = (0..self.rows).collect();
        row_order.sort_by_key(|&i| std::cmp::Reverse(self.row_weight(i)));
        let mut col_order: Vec<usize> = (0..self.cols).collect();
        col_order.sort_by_key(|&j| std::cmp::Reverse(self.col_weight(j)));
        self.permute(&row_order, &col_order).expect("orders are permutations")
    }

    /// Row-major 0/1 values, mostly for tests.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect()).collect()
    }
}

fn check_permutation(perm: &[usize], len: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::OutOfRange(format!("{what} permutation has length {}, expected {len}", perm.len())));
    }
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::OutOfRange(format!("{what} permutation is not a bijection")));
        }
    }
    Ok(())
}

fn has_duplicates(idx: &[usize]) -> bool {
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).any(|w| w[0] == w[1])
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix({}x{}, ones={}):\n{}", self.rows, self.cols, self.ones, self)
    }
}

/// Parses the literal format: one row per line, `0`/`1` characters with no
/// separators. Blank lines and trailing whitespace are ignored.
impl FromStr for BinaryMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let row = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(0u8),
                    '1' => Ok(1u8),
                    other => Err(Error::Parse(format!("line {}: unexpected character {other:?}", lineno + 1))),
                })
                .collect::<Result<Vec<u8>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse("no rows".into()));
        }
        Self::from_rows(&rows)
    }
}

/// Deletes every zero row and zero column.
pub fn strip_zeros(a: &BinaryMatrix) -> Result<BinaryMatrix> {
    if a.ones() == 0 {
        return Err(Error::AllZero);
    }
    let rows: Vec<usize> = (0..a.rows()).filter(|&i| a.row_weight(i) > 0).collect();
    let cols: Vec<usize> = (0..a.cols()).filter(|&j| a.col_weight(j) > 0).collect();
    a.submatrix(&rows, &cols)
}

/// Representative of an equivalence class together with its identifying tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub matrix: BinaryMatrix,
    pub tag: Vec<u8>,
}

impl CanonicalForm {
    pub fn tag_hex(&self) -> String {
        tag_hex(&self.tag)
    }
}

pub fn tag_hex(tag: &[u8]) -> String {
    tag.iter().map(|b| format!("{b:02x}")).collect()
}

/// Exact canonical form under the matrix equivalence.
///
/// The zero-stripped matrix is oriented so that it has no more columns than
/// rows (both orientations when square). For every permutation of the
/// columns the rows are encoded as bit-strings and sorted descending; the
/// lexicographically least encoding wins. The tag is
/// `rows (u32 BE) ‖ cols (u32 BE) ‖ one byte per row`.
pub fn canonicalize(a: &BinaryMatrix) -> Result<CanonicalForm> {
    let core = strip_zeros(a)?;
    let small = core.rows().min(core.cols());
    if small > CANONICAL_CAP {
        return Err(Error::CanonicalCapExceeded { rows: core.rows(), cols: core.cols(), cap: CANONICAL_CAP });
    }
    let orientations = match core.rows().cmp(&core.cols()) {
        Ordering::Greater => vec![core],
        Ordering::Less => vec![core.transpose()],
        Ordering::Equal => {
            let t = core.transpose();
            vec![core, t]
        }
    };

    let mut best: Option<Vec<u8>> = None;
    for m in &orientations {
        let candidate = least_row_encoding(m);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    let rows_enc = best.expect("at least one orientation");
    let (rows, cols) = (orientations[0].rows(), orientations[0].cols());

    let mut tag = Vec::with_capacity(8 + rows);
    tag.extend_from_slice(&(rows as u32).to_be_bytes());
    tag.extend_from_slice(&(cols as u32).to_be_bytes());
    tag.extend_from_slice(&rows_enc);
    let matrix = BinaryMatrix::from_fn(rows, cols, |i, j| rows_enc[i] >> (cols - 1 - j) & 1 == 1)?;
    Ok(CanonicalForm { matrix, tag })
}

/// Lexicographically least descending-sorted row encoding over all column
/// permutations. Requires `cols <= 8`.
fn least_row_encoding(m: &BinaryMatrix) -> Vec<u8> {
    let cols = m.cols();
    let rows: Vec<[bool; CANONICAL_CAP]> = (0..m.rows())
        .map(|i| {
            let mut r = [false; CANONICAL_CAP];
            for (j, slot) in r.iter_mut().enumerate().take(cols) {
                *slot = m.get(i, j);
            }
            r
        })
        .collect();

    let encode = |perm: &[usize], out: &mut Vec<u8>| {
        out.clear();
        out.extend(rows.iter().map(|r| {
            // column perm[j] of the source lands at position j
            perm.iter().fold(0u8, |acc, &src| acc << 1 | r[src] as u8)
        }));
        out.sort_unstable_by(|a, b| b.cmp(a));
    };

    let mut perm: Vec<usize> = (0..cols).collect();
    let mut best = Vec::with_capacity(rows.len());
    encode(&perm, &mut best);
    let mut scratch = Vec::with_capacity(rows.len());

    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; cols];
    let mut i = 1;
    while i < cols {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            encode(&perm, &mut scratch);
            if scratch < best {
                std::mem::swap(&mut scratch, &mut best);
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Result of [`is_step_matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepInfo {
    pub is_step: bool,
    /// Number of distinct nonzero rows; meaningful only when `is_step`.
    pub steps: usize,
}

/// Checks `a[i][j] >= a[k][l]` whenever `i <= k` and `j <= l`.
pub fn is_step_matrix(a: &BinaryMatrix) -> StepInfo {
    // Equivalent: every row is a prefix of ones and the prefix widths do not
    // increase going down.
    let mut prev_width = usize::MAX;
    let mut steps = 0;
    for i in 0..a.rows() {
        let width = a.row_weight(i);
        let is_prefix = (0..width).all(|j| a.get(i, j));
        if !is_prefix || width > prev_width {
            return StepInfo { is_step: false, steps: 0 };
        }
        if width > 0 && width != prev_width {
            steps += 1;
        }
        prev_width = width;
    }
    StepInfo { is_step: true, steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(lit: &str) -> BinaryMatrix {
        lit.parse().unwrap()
    }

    /// The 7x7 example with 26 ones from the discussion of the four-row case.
    fn seven_by_seven() -> BinaryMatrix {
        m("1111110\n1111100\n1111100\n1111100\n1111100\n0000000\n0000000")
    }

    #[test]
    fn parse_and_display_round_trip() {
        let a = m("110\n001\n");
        assert_eq!((a.rows(), a.cols(), a.ones()), (2, 3, 3));
        assert_eq!(a.to_string(), "110\n001");
        assert!("12\n01".parse::<BinaryMatrix>().is_err());
        assert!("11\n1".parse::<BinaryMatrix>().is_err());
        assert!("".parse::<BinaryMatrix>().is_err());
    }

    #[test]
    fn strip_single_entry() {
        let a = BinaryMatrix::from_fn(3, 3, |i, j| i == 1 && j == 1).unwrap();
        assert_eq!(strip_zeros(&a).unwrap(), m("1"));
    }

    #[test]
    fn strip_padding() {
        let j22 = BinaryMatrix::ones_matrix(2, 2).unwrap();
        let padded = j22.pad(4, 4).unwrap();
        assert_eq!(strip_zeros(&padded).unwrap(), j22);
    }

    #[test]
    fn strip_seven_by_seven_example() {
        let core = strip_zeros(&seven_by_seven()).unwrap();
        assert_eq!((core.rows(), core.cols(), core.ones()), (5, 6, 26));
    }

    #[test]
    fn strip_rejects_all_zero() {
        let z = BinaryMatrix::zeros(3, 2).unwrap();
        assert_eq!(strip_zeros(&z), Err(Error::AllZero));
        assert_eq!(canonicalize(&z), Err(Error::AllZero));
    }

    #[test]
    fn canonical_row_column_permutation() {
        let a = canonicalize(&m("11\n10")).unwrap();
        let b = canonicalize(&m("01\n11")).unwrap();
        assert_eq!(a.tag, b.tag);
    }

    #[test]
    fn canonical_transpose() {
        let a = m("111\n100");
        assert_eq!(canonicalize(&a).unwrap().tag, canonicalize(&a.transpose()).unwrap().tag);
    }

    #[test]
    fn canonical_distinguishes_identity_from_row() {
        let id = m("10\n01");
        let row = m("11\n00");
        // every row/column permutation and transpose of the identity stays a
        // permutation matrix, never a single full row
        for rp in [[0, 1], [1, 0]] {
            for cp in [[0, 1], [1, 0]] {
                let p = id.permute(&rp, &cp).unwrap();
                assert_ne!(strip_zeros(&p).unwrap(), strip_zeros(&row).unwrap());
                assert_ne!(strip_zeros(&p.transpose()).unwrap(), strip_zeros(&row).unwrap());
            }
        }
        assert_ne!(canonicalize(&id).unwrap().tag, canonicalize(&row).unwrap().tag);
    }

    #[test]
    fn canonical_cap() {
        let big = BinaryMatrix::ones_matrix(9, 9).unwrap();
        assert!(matches!(canonicalize(&big), Err(Error::CanonicalCapExceeded { .. })));
        // a long thin core is fine
        assert!(canonicalize(&BinaryMatrix::ones_matrix(1, 40).unwrap()).is_ok());
    }

    #[test]
    fn step_matrix_examples() {
        assert_eq!(is_step_matrix(&m("11\n10")), StepInfo { is_step: true, steps: 2 });
        assert!(!is_step_matrix(&m("10\n01")).is_step);
        assert_eq!(is_step_matrix(&m("111\n110\n100")), StepInfo { is_step: true, steps: 3 });
        assert_eq!(is_step_matrix(&m("110\n110\n000")), StepInfo { is_step: true, steps: 1 });
        assert!(!is_step_matrix(&m("01\n11")).is_step);
    }

    #[test]
    fn step_normalize_recovers_step_form() {
        let scrambled = m("0101\n1111\n0100");
        let s = scrambled.step_normalize();
        assert_eq!(s, m("1111\n1100\n1000"));
        assert_eq!(is_step_matrix(&s), StepInfo { is_step: true, steps: 3 });
    }

    #[test]
    fn submatrix_errors() {
        let a = m("11\n10");
        assert!(a.submatrix(&[0, 0], &[0]).is_err());
        assert!(a.submatrix(&[2], &[0]).is_err());
        assert_eq!(a.submatrix(&[1], &[0, 1]).unwrap(), m("10"));
    }
}
