use core::fmt;
use core::ops::{Add, Neg, Sub};

/// A non-negative or negative half-integer stored as twice its value.
///
/// Angular-momentum labels `j` and `m` live on the half-integer lattice;
/// keeping them doubled makes all label arithmetic exact.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn integer(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// `self` as an integer, if it is one.
    pub const fn as_integer(self) -> Option<i32> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    /// The labels `-j, -j + 1, ..., j` in ascending order.
    pub fn ladder(j: HalfInt) -> impl DoubleEndedIterator<Item = HalfInt> + Clone {
        (0..=j.0).map(move |i| HalfInt(2 * i - j.0))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use std::format;

    #[test]
    fn ladder_covers_all_projections() {
        let j = HalfInt::from_twice(3);
        let ms: Vec<i32> = HalfInt::ladder(j).map(HalfInt::twice).collect();
        assert_eq!(ms, [-3, -1, 1, 3]);
        assert_eq!(HalfInt::ladder(HalfInt::ZERO).count(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(format!("{}", HalfInt::from_twice(3)), "3/2");
        assert_eq!(format!("{}", HalfInt::from_twice(-4)), "-2");
    }
}
