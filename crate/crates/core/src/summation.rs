//! Compensated (Neumaier) summation.
//!
//! Long running sums in this crate (log-products over millions of factors,
//! the remaining budget after tens of thousands of subtractions) go through
//! [`Compensated`] so that results do not depend on accumulated rounding.

use std::ops::{AddAssign, SubAssign};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Compensated {
    sum: f64,
    err: f64,
}

impl Compensated {
    pub fn new(value: f64) -> Self {
        Self {
            sum: value,
            err: 0.0,
        }
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.err += (self.sum - t) + x;
        } else {
            self.err += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.err
    }
}

impl AddAssign<f64> for Compensated {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl SubAssign<f64> for Compensated {
    fn sub_assign(&mut self, rhs: f64) {
        self.add(-rhs);
    }
}

impl AddAssign<Compensated> for Compensated {
    fn add_assign(&mut self, rhs: Compensated) {
        self.add(rhs.sum);
        self.add(rhs.err);
    }
}

impl SubAssign<Compensated> for Compensated {
    fn sub_assign(&mut self, rhs: Compensated) {
        self.add(-rhs.sum);
        self.add(-rhs.err);
    }
}

impl From<Compensated> for f64 {
    fn from(c: Compensated) -> f64 {
        c.value()
    }
}

impl std::iter::Sum<f64> for Compensated {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Compensated::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().sum::<Compensated>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(xs), 2.0);
        assert_eq!(xs.iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn many_small_terms() {
        let mut acc = Compensated::new(1.0);
        for _ in 0..1_000_000 {
            acc += 1e-16;
        }
        assert!((acc.value() - (1.0 + 1e-10)).abs() < 1e-22);
    }

    #[test]
    fn subtraction_of_accumulators() {
        let mut a = Compensated::new(3.0);
        a += 1e-20;
        let mut b = Compensated::new(1.0);
        b += 1e-20;
        a -= b;
        assert_eq!(a.value(), 2.0);
    }
}
