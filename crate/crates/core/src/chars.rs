//! Cube character helpers shared by the cube, design, and scheme modules.
//!
//! Vertices of the `n`-cube are integers `0..2^n` with bit `i` holding
//! coordinate `i + 1` (little-endian: the string `"100"` is `e₁`, integer 1).
//! The character attached to a word `a` is `χ_a(x) = (−1)^{a·x}`, computed as
//! the parity of `popcount(a & x)`.  Character sums over vertex subsets are
//! small integers, so every verdict built from them is exact.

use nalgebra::{DMatrix, DVector};

/// `χ_a(x) = (−1)^{a·x}` as `±1`.
pub(crate) fn character_value(a: usize, x: usize) -> i64 {
    if (a & x).count_ones() & 1 == 1 {
        -1
    } else {
        1
    }
}

/// `Σ_{x ∈ vertices} χ_a(x)` as an exact integer.
pub(crate) fn character_sum(a: usize, vertices: &[usize]) -> i64 {
    vertices.iter().map(|&x| character_value(a, x)).sum()
}

/// Iterator over the words of `n` bits with exactly `weight` ones, in
/// ascending numeric order (Gosper's hack).
pub(crate) fn words_of_weight(n: usize, weight: usize) -> WordsOfWeight {
    debug_assert!(weight <= n && n < usize::BITS as usize);
    WordsOfWeight {
        current: Some(if weight == 0 { 0 } else { (1 << weight) - 1 }),
        limit: 1 << n,
    }
}

/// See [`words_of_weight`].
pub(crate) struct WordsOfWeight {
    current: Option<usize>,
    limit: usize,
}

impl Iterator for WordsOfWeight {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let word = self.current?;
        self.current = if word == 0 {
            None
        } else {
            let low = word & word.wrapping_neg();
            let ripple = word + low;
            let next = ripple | (((word ^ ripple) / low) >> 2);
            (next < self.limit).then_some(next)
        };
        Some(word)
    }
}

/// Whether every character of the given weight class sums to zero over the
/// subset.  This is the raw annihilation test `J_class · 1_W = 0`; for class
/// 0 it is always `false` on a nonempty subset.
pub(crate) fn weight_class_sums_vanish(n: usize, class: usize, vertices: &[usize]) -> bool {
    words_of_weight(n, class).all(|a| character_sum(a, vertices) == 0)
}

/// Whether the subset integrates the weight-`class` character eigenspace.
///
/// Class 0 is the trivial eigenspace (the constant character), which every
/// nonempty subset integrates; nontrivial classes integrate exactly when all
/// their character sums over the subset vanish.
pub(crate) fn weight_class_integrated(n: usize, class: usize, vertices: &[usize]) -> bool {
    class == 0 || weight_class_sums_vanish(n, class, vertices)
}

/// Orthonormal basis of the span of the characters in the given weight
/// classes: the vectors `χ_a / sqrt(2^n)` (exactly unit length, exactly
/// orthogonal).
pub(crate) fn character_basis(n: usize, classes: &[usize]) -> Vec<DVector<f64>> {
    let size = 1usize << n;
    let scale = 1.0 / (size as f64).sqrt();
    let mut basis = Vec::new();
    for &class in classes {
        for a in words_of_weight(n, class) {
            basis.push(DVector::from_fn(size, |x, _| {
                character_value(a, x) as f64 * scale
            }));
        }
    }
    basis
}

/// Dense orthogonal projector onto the span of the characters in the given
/// weight classes.  Entries are dyadic rationals `k / 2^n` with `|k| ≤ 2^n`,
/// exactly representable in `f64`.
pub(crate) fn character_projector(n: usize, classes: &[usize]) -> DMatrix<f64> {
    let size = 1usize << n;
    let scale = 1.0 / size as f64;
    DMatrix::from_fn(size, size, |x, y| {
        let mut sum = 0i64;
        for &class in classes {
            for a in words_of_weight(n, class) {
                sum += character_value(a, x) * character_value(a, y);
            }
        }
        sum as f64 * scale
    })
}

/// Exact projection of an integer-valued vector onto the character span,
/// scaled by `2^n` to stay integral: returns `2^n · P · v` as exact integers.
///
/// All intermediate values are integers below `2^53`, so the computation is
/// exact for the sizes this crate supports (`n ≤ 20`, entries ≤ `2^24`).
#[cfg(test)]
pub(crate) fn character_project_scaled(n: usize, classes: &[usize], v: &[i64]) -> Vec<i64> {
    let size = 1usize << n;
    debug_assert_eq!(v.len(), size);
    let mut out = vec![0i64; size];
    for &class in classes {
        for a in words_of_weight(n, class) {
            let coefficient: i64 = (0..size).map(|x| character_value(a, x) * v[x]).sum();
            if coefficient != 0 {
                for (x, slot) in out.iter_mut().enumerate() {
                    *slot += character_value(a, x) * coefficient;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_of_weight_enumerates_binomial_many() {
        let words: Vec<usize> = words_of_weight(5, 2).collect();
        assert_eq!(words.len(), 10);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        assert!(words.iter().all(|w| w.count_ones() == 2));
        assert_eq!(words_of_weight(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(words_of_weight(4, 4).collect::<Vec<_>>(), vec![0b1111]);
    }

    #[test]
    fn characters_are_orthogonal() {
        // Σ_x χ_a(x) χ_b(x) = 2^n [a = b].
        let n = 4;
        for a in 0..1usize << n {
            for b in 0..1usize << n {
                let sum: i64 = (0..1usize << n)
                    .map(|x| character_value(a, x) * character_value(b, x))
                    .sum();
                assert_eq!(sum, if a == b { 16 } else { 0 });
            }
        }
    }

    #[test]
    fn antipodal_pair_character_sums() {
        // {000, 111}: characters of odd weight sum to zero, even weight ≥ 2 to ±2.
        let w = [0usize, 0b111];
        assert!(weight_class_sums_vanish(3, 1, &w));
        assert!(!weight_class_sums_vanish(3, 2, &w));
        assert!(weight_class_sums_vanish(3, 3, &w));
        assert!(weight_class_integrated(3, 0, &w));
    }

    #[test]
    fn scaled_projection_matches_dense_projector() {
        let n = 3;
        let classes = vec![1usize, 3];
        let v: Vec<i64> = vec![8, -3, 0, 5, 1, 1, -7, 2];
        let scaled = character_project_scaled(n, &classes, &v);
        let dense = character_projector(n, &classes);
        let vf = DVector::from_fn(8, |i, _| v[i] as f64);
        let via_dense = dense * vf * 8.0;
        for i in 0..8 {
            assert!((scaled[i] as f64 - via_dense[i]).abs() < 1e-9);
        }
    }
}
