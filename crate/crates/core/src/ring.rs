//! Commutative coefficient rings for characters and Γ matrices.

use std::fmt::Debug;

use num_traits::{One, Pow, Zero};

use crate::Q;

pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, q: &Q) -> Self;

    fn from_q(q: &Q) -> Self {
        Self::one().scale(q)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.mul(self))
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Ring::add(self, other);
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn scale(&self, q: &Q) -> Self {
        self * q
    }

    fn from_q(q: &Q) -> Self {
        q.clone()
    }

    fn pow(&self, exp: u32) -> Self {
        Pow::pow(self, exp)
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}
