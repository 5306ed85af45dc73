//! Truncated power series with exact integer coefficients.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Coefficients `c_0 .. c_D` of a series truncated at degree `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    /// The constant series 1, truncated at `max_degree`.
    pub fn one(max_degree: u32) -> Self {
        let mut coeffs = vec![BigInt::zero(); max_degree as usize + 1];
        coeffs[0] = BigInt::one();
        TruncatedSeries { coeffs }
    }

    pub fn max_degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coefficient(&self, d: u32) -> &BigInt {
        &self.coeffs[d as usize]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Product truncated at this series' degree.
    pub fn multiply(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len();
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    /// `1/(1 - k t)` truncated at `max_degree`.
    pub fn geometric(k: u64, max_degree: u32) -> Self {
        let mut coeffs = Vec::with_capacity(max_degree as usize + 1);
        let mut c = BigInt::one();
        for _ in 0..=max_degree {
            coeffs.push(c.clone());
            c *= k;
        }
        TruncatedSeries { coeffs }
    }

    /// `(1 - t^d)^{-r}` truncated at `max_degree`: the coefficient of
    /// `t^{d j}` is `C(r - 1 + j, j)`.
    pub fn inverse_one_minus_power(d: u32, r: &BigUint, max_degree: u32) -> Self {
        assert!(d >= 1);
        let mut coeffs = vec![BigInt::zero(); max_degree as usize + 1];
        let mut j = 0u32;
        while d * j <= max_degree {
            coeffs[(d * j) as usize] = BigInt::from(binomial_shifted(r, j));
            j += 1;
        }
        TruncatedSeries { coeffs }
    }
}

/// `C(r - 1 + j, j)` computed as a stepwise exact product.
fn binomial_shifted(r: &BigUint, j: u32) -> BigUint {
    let mut result = BigUint::one();
    for t in 1..=j {
        result = result * (r + BigUint::from(t) - BigUint::one()) / BigUint::from(t);
    }
    result
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
