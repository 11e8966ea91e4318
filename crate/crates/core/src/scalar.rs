//! Exact-or-floating scalar values.
//!
//! Eigenvalues and bound values flow through the crate as [`Scalar`]s: exact
//! rationals where a closed form exists (cube graphs, Hamming schemes,
//! regular-graph bounds) and `f64` where they come from a floating
//! eigendecomposition.  Display and serialization keep the two apart — exact
//! values render as fractions (`-2/3`), floating values as decimal strings
//! with twelve significant digits — so an exact value is never laundered
//! through a decimal.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive};

use crate::tolerance::VALUE_COMPARE_TOL;

/// A real number that is either exactly known or floating.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scalar {
    /// An exact rational value.
    Exact(Rational64),
    /// A floating-point approximation.
    Approx(f64),
}

impl Scalar {
    /// Exact zero.
    pub const ZERO: Scalar = Scalar::Approx(0.0);

    /// Construct an exact scalar from a rational.
    pub fn exact(value: Rational64) -> Self {
        Scalar::Exact(value)
    }

    /// The value as `f64` (lossless for every rational this crate produces).
    pub fn to_f64(self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().expect("rational out of f64 range"),
            Scalar::Approx(x) => x,
        }
    }

    /// The exact rational, if this scalar carries one.
    pub fn as_exact(self) -> Option<Rational64> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    /// Whether the scalar is exact.
    pub fn is_exact(self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Absolute value, staying exact when the input is exact.
    pub fn abs(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(x) => Scalar::Approx(x.abs()),
        }
    }

    /// The scalar plus one, staying exact when the input is exact.
    pub fn plus_one(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r + Rational64::new(1, 1)),
            Scalar::Approx(x) => Scalar::Approx(x + 1.0),
        }
    }

    /// Total order by numeric value (exact comparison when both sides are
    /// exact, `f64` total order otherwise).
    pub fn total_cmp(self, other: Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(&b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    /// Equality up to [`VALUE_COMPARE_TOL`] on the floating path, exact
    /// equality when both sides are exact.
    pub fn approx_eq(self, other: Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() < VALUE_COMPARE_TOL,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Approx(x) => write!(f, "{}", format_significant(*x, 12)),
        }
    }
}

/// Render `x` as a plain decimal string with the given number of significant
/// digits.
///
/// Values with magnitude below `1e-12` render as `"0"` — the display
/// convention for floating spectra whose true value is zero.  This affects
/// rendering only; no verdict or comparison consults the rendered string.
///
/// # Example
///
/// ```
/// use gdesign_core::scalar::format_significant;
///
/// assert_eq!(format_significant(-5.0 / 6.0, 12), "-0.833333333333");
/// assert_eq!(format_significant(3.0, 12), "3.00000000000");
/// assert_eq!(format_significant(0.0, 12), "0");
/// ```
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || x.abs() < 1e-12 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let rendered = format!("{x:.decimals$}");
    // Rounding can carry the mantissa across a power of ten (0.99999… with
    // twelve decimals prints as 1.000000000000, one digit too many); detect
    // the carry on the rounded value and drop the extra decimal.
    let reparsed: f64 = rendered.parse().unwrap_or(x);
    if decimals > 0 && reparsed != 0.0 && (reparsed.abs().log10().floor() as i32) > exponent {
        let decimals = decimals - 1;
        return format!("{reparsed:.decimals$}");
    }
    rendered
}

/// Render a rational as a fraction string (`"2/5"`, `"-1"`).
pub fn fraction_string(r: Rational64) -> String {
    r.to_string()
}

/// Parse a fraction string (`"2/5"`, `"-1"`) into a rational.
pub fn parse_fraction(s: &str) -> crate::Result<Rational64> {
    let parse_int = |t: &str| -> crate::Result<i64> {
        t.trim().parse::<i64>().map_err(|_| crate::Error::Parse {
            message: format!("invalid integer {t:?} in fraction"),
        })
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == 0 {
                return Err(crate::Error::Parse {
                    message: format!("zero denominator in fraction {s:?}"),
                });
            }
            Ok(Rational64::new(parse_int(num)?, den))
        }
        None => Ok(Rational64::from_integer(parse_int(s)?)),
    }
}
