//! Binary linear codes as design generators.
//!
//! A code is the kernel `C = {x : Mx = 0}` of a GF(2) check matrix `M`; its
//! dual `C⊥` is the row span of `M`.  Viewed as a vertex subset of the cube
//! `Q_n`, a linear code fails to integrate exactly the characters `χ_a` with
//! `a ∈ C⊥ ∖ {0}`, so the weights of the nonzero dual codewords predict the
//! unintegrated eigenspaces ([`predicted_unintegrated_weights`]).
//!
//! Words and matrix rows are bit-packed: bit `j` of an integer is coordinate
//! `j + 1`, consistent with the cube module's vertex encoding, so the row
//! string `"101"` is the mask `0b101 = 5`.  Codewords are enumerated
//! exhaustively (lengths up to 24), which keeps every derived quantity —
//! dimension, distance, weight distribution, orthogonal-array strength —
//! exact.

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest supported code length (codeword enumeration stays ≤ 2²⁴ words).
pub const MAX_CODE_LENGTH: usize = 24;

/// Largest supported matrix width (masks are stored in 64-bit words).
pub const MAX_MATRIX_COLS: usize = 63;

/// A 0/1 matrix with bit-packed rows (bit `j` = column `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    /// Build a matrix from bit-packed rows (bit `j` = column `j`).
    pub fn from_row_masks(cols: usize, rows: &[u64]) -> Result<BinaryMatrix> {
        if cols == 0 || cols > MAX_MATRIX_COLS {
            return Err(Error::OutOfSupportedRange {
                what: "matrix columns",
                value: cols,
                min: 1,
                max: MAX_MATRIX_COLS,
            });
        }
        if rows.is_empty() {
            return Err(Error::TooShort { length: 0, min: 1 });
        }
        for (i, &mask) in rows.iter().enumerate() {
            if mask >> cols != 0 {
                return Err(Error::Parse {
                    message: format!("row {i} has bits outside the {cols} columns"),
                });
            }
        }
        Ok(BinaryMatrix {
            cols,
            rows: rows.to_vec(),
        })
    }

    /// Build a matrix from '0'/'1' strings, one per row; character `j` of a
    /// string is column `j`.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<BinaryMatrix> {
        let first = rows.first().ok_or(Error::TooShort { length: 0, min: 1 })?;
        let cols = first.as_ref().len();
        let mut masks = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            let mut mask = 0u64;
            for (j, b) in row.bytes().enumerate() {
                match b {
                    b'0' => {}
                    b'1' => mask |= 1 << j,
                    _ => {
                        return Err(Error::Parse {
                            message: format!("row {i} has a character other than 0/1"),
                        })
                    }
                }
            }
            masks.push(mask);
        }
        BinaryMatrix::from_row_masks(cols, &masks)
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row `i` as a bit mask.
    pub fn row_mask(&self, i: usize) -> u64 {
        self.rows[i]
    }

    /// Entry at row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// The rows as '0'/'1' strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|&mask| {
                (0..self.cols)
                    .map(|j| if mask >> j & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

/// Bring masks into reduced row-echelon form; returns the pivot columns.
fn row_reduce(rows: &mut Vec<u64>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        if let Some(found) = (rank..rows.len()).find(|&i| rows[i] >> col & 1 == 1) {
            rows.swap(rank, found);
            let pivot_row = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && *row >> col & 1 == 1 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(col);
            rank += 1;
        }
    }
    rows.truncate(rank);
    pivots
}

/// A basis of `{x : Mx = 0}` from the reduced rows and their pivot columns.
fn kernel_basis(reduced: &[u64], pivots: &[usize], cols: usize) -> Vec<u64> {
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut word = 1u64 << free;
        for (row, &pivot) in reduced.iter().zip(pivots) {
            if row >> free & 1 == 1 {
                word |= 1 << pivot;
            }
        }
        basis.push(word);
    }
    basis
}

/// A GF(2) linear code: the kernel of a check matrix, with its codewords
/// enumerated.
///
/// Equality compares the codeword sets (two codes with different check
/// matrices for the same kernel are equal).
#[derive(Clone, Debug)]
pub struct BinaryLinearCode {
    check_matrix: BinaryMatrix,
    codewords: Vec<u64>,
    dimension: usize,
    distance: Option<usize>,
}

impl PartialEq for BinaryLinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.length() == other.length() && self.codewords == other.codewords
    }
}

impl Eq for BinaryLinearCode {}

impl BinaryLinearCode {
    /// The code length `n` (number of coordinates).
    pub fn length(&self) -> usize {
        self.check_matrix.cols()
    }

    /// The defining check matrix.
    pub fn check_matrix(&self) -> &BinaryMatrix {
        &self.check_matrix
    }

    /// All codewords, ascending in the integer encoding.
    pub fn codewords(&self) -> &[u64] {
        &self.codewords
    }

    /// The code dimension `n − rank(M)`; `|C| = 2^dimension`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Minimum weight of a nonzero codeword; `None` for the zero code, whose
    /// distance is undefined.
    pub fn distance(&self) -> Option<usize> {
        self.distance
    }

    /// Whether a word belongs to the code.
    pub fn contains(&self, word: u64) -> bool {
        self.codewords.binary_search(&word).is_ok()
    }

    /// Codeword count per weight `0..=n`.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.length() + 1];
        for &w in &self.codewords {
            counts[w.count_ones() as usize] += 1;
        }
        counts
    }

    /// The codewords as cube vertex indices, for design verification on
    /// `Q_n`.
    pub fn codeword_vertices(&self) -> Vec<usize> {
        self.codewords.iter().map(|&w| w as usize).collect()
    }

    /// The codewords as the rows of a matrix (an orthogonal-array candidate).
    pub fn codeword_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_row_masks(self.length(), &self.codewords)
            .expect("codewords fit their own length")
    }
}

/// Build the code `C = {x : Mx = 0}` and enumerate its codewords.
///
/// Lengths up to 24 are supported (the enumeration is exhaustive).
pub fn code_from_check_matrix(matrix: &BinaryMatrix) -> Result<BinaryLinearCode> {
    let n = matrix.cols();
    if n > MAX_CODE_LENGTH {
        return Err(Error::TooLarge {
            context: "code length",
            size: n as u64,
            limit: MAX_CODE_LENGTH as u64,
        });
    }
    let mut reduced: Vec<u64> = matrix.rows.clone();
    let pivots = row_reduce(&mut reduced, n);
    let basis = kernel_basis(&reduced, &pivots, n);
    let codewords = span(&basis);
    let dimension = basis.len();
    let distance = codewords
        .iter()
        .filter(|&&w| w != 0)
        .map(|&w| w.count_ones() as usize)
        .min();
    Ok(BinaryLinearCode {
        check_matrix: matrix.clone(),
        codewords,
        dimension,
        distance,
    })
}

/// All XOR combinations of the basis words, sorted ascending.
fn span(basis: &[u64]) -> Vec<u64> {
    let mut words = Vec::with_capacity(1 << basis.len());
    words.push(0);
    for &b in basis {
        for i in 0..words.len() {
            words.push(words[i] ^ b);
        }
    }
    words.sort_unstable();
    words
}

/// The Hamming code `H_r` of length `2^r − 1`: the check matrix's column `c`
/// (1-indexed) is the binary representation of `c`, with row `i` holding bit
/// `i − 1`.
///
/// Supported for `2 ≤ r ≤ 4` (lengths 3, 7, 15 — exact enumeration).
pub fn hamming(r: usize) -> Result<BinaryLinearCode> {
    if !(2..=4).contains(&r) {
        return Err(Error::OutOfSupportedRange {
            what: "Hamming code order",
            value: r,
            min: 2,
            max: 4,
        });
    }
    let n = (1usize << r) - 1;
    let masks: Vec<u64> = (0..r)
        .map(|bit| {
            (1..=n)
                .filter(|c| c >> bit & 1 == 1)
                .fold(0u64, |mask, c| mask | 1 << (c - 1))
        })
        .collect();
    let matrix = BinaryMatrix::from_row_masks(n, &masks)?;
    code_from_check_matrix(&matrix)
}

/// The dual code `C⊥` = row span of the check matrix, itself presented as a
/// code (its check matrix is a generator matrix of `C`).
pub fn dual(code: &BinaryLinearCode) -> BinaryLinearCode {
    let n = code.length();
    let mut reduced: Vec<u64> = code.check_matrix.rows.clone();
    let pivots = row_reduce(&mut reduced, n);
    let mut generator = kernel_basis(&reduced, &pivots, n);
    if generator.is_empty() {
        // C = {0}: its dual is the full space, cut out by a zero row.
        generator.push(0);
    }
    let matrix =
        BinaryMatrix::from_row_masks(n, &generator).expect("generator rows fit the length");
    code_from_check_matrix(&matrix).expect("dual length equals the original length")
}

/// Append one zero column to the check matrix: each codeword doubles into
/// `{c, c + e_{n+1}}`.
pub fn lift(code: &BinaryLinearCode) -> Result<BinaryLinearCode> {
    let matrix = BinaryMatrix::from_row_masks(code.length() + 1, &code.check_matrix.rows)?;
    code_from_check_matrix(&matrix)
}

/// Append two zero columns to the check matrix.
pub fn double_lift(code: &BinaryLinearCode) -> Result<BinaryLinearCode> {
    let matrix = BinaryMatrix::from_row_masks(code.length() + 2, &code.check_matrix.rows)?;
    code_from_check_matrix(&matrix)
}

/// Drop the last column of the check matrix (the code of the remaining
/// coordinates).
pub fn project(code: &BinaryLinearCode) -> Result<BinaryLinearCode> {
    let n = code.length();
    if n < 2 {
        return Err(Error::TooShort { length: n, min: 2 });
    }
    let keep = (1u64 << (n - 1)) - 1;
    let masks: Vec<u64> = code.check_matrix.rows.iter().map(|&m| m & keep).collect();
    let matrix = BinaryMatrix::from_row_masks(n - 1, &masks)?;
    code_from_check_matrix(&matrix)
}

/// Weights of the nonzero dual codewords, as a sorted multiset.
///
/// On `Q_n`, the design `C` fails to integrate exactly the characters `χ_a`
/// with `a ∈ C⊥ ∖ {0}`, so the weight classes that can fail are exactly the
/// values in this multiset.
pub fn predicted_unintegrated_weights(code: &BinaryLinearCode) -> Vec<usize> {
    let mut weights: Vec<usize> = dual(code)
        .codewords()
        .iter()
        .filter(|&&w| w != 0)
        .map(|&w| w.count_ones() as usize)
        .collect();
    weights.sort_unstable();
    weights
}

/// Orthogonal-array analysis of a 0/1 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalArrayReport {
    /// Number of rows (runs).
    pub runs: usize,
    /// Number of columns (factors).
    pub factors: usize,
    /// Maximum `t` such that every `t`-column projection contains each of
    /// the `2^t` patterns equally often.
    pub strength: usize,
    /// The index `λ = runs / 2^strength`.
    pub index: u64,
}

/// Compute the strength of a 0/1 matrix as an orthogonal array: the largest
/// `t` such that every `t`-column projection is balanced, with the index
/// `λ = runs / 2^t` at that strength.
///
/// Strength `t` implies strength `t − 1` (marginalizing a balanced
/// projection keeps it balanced), so the scan stops at the first failing
/// level.
pub fn orthogonal_array_strength(matrix: &BinaryMatrix) -> OrthogonalArrayReport {
    let runs = matrix.rows();
    let factors = matrix.cols();
    let mut strength = 0usize;
    for t in 1..=factors {
        let patterns = 1usize << t;
        if runs % patterns != 0 || !all_projections_balanced(matrix, t) {
            break;
        }
        strength = t;
    }
    OrthogonalArrayReport {
        runs,
        factors,
        strength,
        index: (runs >> strength) as u64,
    }
}

fn all_projections_balanced(matrix: &BinaryMatrix, t: usize) -> bool {
    let expected = (matrix.rows() / (1 << t)) as u64;
    (0..matrix.cols()).combinations(t).all(|columns| {
        let mut counts = vec![0u64; 1 << t];
        for &row in &matrix.rows {
            let pattern = columns.iter().enumerate().fold(0usize, |p, (bit, &col)| {
                p | ((row >> col & 1) as usize) << bit
            });
            counts[pattern] += 1;
        }
        counts.iter().all(|&c| c == expected)
    })
}
