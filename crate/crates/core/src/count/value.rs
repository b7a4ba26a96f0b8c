use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::poly::SizePolynomial;

/// What a table cell holds: a plain count, or counts split by structure size.
pub trait CountValue: Clone + Default {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&mut self, other: &Self);
    /// Adds `other` after every structure in it grew by one element.
    fn add_grown(&mut self, other: &Self);
    /// Product over disjoint sub-structures. `small` should be the operand
    /// coming from the child with fewer vertices below it.
    fn product(small: &Self, large: &Self) -> Self;
}

impl CountValue for BigUint {
    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&mut self, other: &Self) {
        *self += other;
    }

    fn add_grown(&mut self, other: &Self) {
        *self += other;
    }

    fn product(small: &Self, large: &Self) -> Self {
        small * large
    }
}

impl CountValue for SizePolynomial {
    fn one() -> Self {
        SizePolynomial::one()
    }

    fn is_zero(&self) -> bool {
        SizePolynomial::is_zero(self)
    }

    fn add(&mut self, other: &Self) {
        self.add_assign(other);
    }

    fn add_grown(&mut self, other: &Self) {
        if !other.is_zero() {
            self.add_assign(&other.shifted());
        }
    }

    fn product(small: &Self, large: &Self) -> Self {
        SizePolynomial::convolve(small, large)
    }
}
