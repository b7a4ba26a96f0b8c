use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Counts of structures indexed by their size: `coeffs()[k]` is the number
/// of matchings (or independent sets) with `k` elements.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients at all.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct SizePolynomial {
    coeffs: Vec<BigUint>,
}

impl SizePolynomial {
    pub fn zero() -> Self {
        SizePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        SizePolynomial {
            coeffs: vec![BigUint::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigUint>) -> Self {
        let mut p = SizePolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficient of size `k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest size with a nonzero count, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn add_assign(&mut self, other: &SizePolynomial) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigUint::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Multiplication by the size variable: every structure grows by one.
    pub fn shifted(&self) -> SizePolynomial {
        if self.is_zero() {
            return SizePolynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigUint::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        SizePolynomial { coeffs }
    }

    /// Convolution. The outer loop runs over `small`'s coefficients, so
    /// callers pass the operand with the lower degree bound first.
    pub fn convolve(small: &SizePolynomial, large: &SizePolynomial) -> SizePolynomial {
        if small.is_zero() || large.is_zero() {
            return SizePolynomial::zero();
        }
        let mut coeffs = vec![BigUint::zero(); small.coeffs.len() + large.coeffs.len() - 1];
        for (i, a) in small.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in large.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        SizePolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for SizePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for SizePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SizePolynomial{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_displays() {
        let p = SizePolynomial::from_u64s(&[1, 6, 9, 2, 0, 0]);
        assert_eq!(p.coeffs().len(), 4);
        assert_eq!(p.to_string(), "(1,6,9,2)");
        assert_eq!(p.total(), BigUint::from(18u32));
        assert_eq!(p.degree(), Some(3));
        assert_eq!(SizePolynomial::from_u64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn convolution_matches_binomials() {
        let edge = SizePolynomial::from_u64s(&[1, 1]);
        let sq = SizePolynomial::convolve(&edge, &edge);
        let cube = SizePolynomial::convolve(&edge, &sq);
        assert_eq!(cube, SizePolynomial::from_u64s(&[1, 3, 3, 1]));
        assert_eq!(edge.shifted(), SizePolynomial::from_u64s(&[0, 1, 1]));
        assert!(SizePolynomial::convolve(&SizePolynomial::zero(), &edge).is_zero());
    }
}
