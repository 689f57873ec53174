//! The natural-number value domain.
//!
//! Evaluation and bound certification are generic over the integer type so
//! the same code runs on machine words (with overflow reported, never
//! wrapped) and on arbitrary-precision integers.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, ToPrimitive, Zero};

pub trait Natural:
    Clone + Ord + Hash + Debug + Display + Zero + One + CheckedAdd + CheckedMul + CheckedSub + FromPrimitive + ToPrimitive
{
    fn from_u64(n: u64) -> Self {
        <Self as FromPrimitive>::from_u64(n).expect("every natural type holds u64 values")
    }

    fn succ(&self) -> Option<Self> {
        self.checked_add(&Self::one())
    }
}

impl Natural for u32 {
    fn from_u64(n: u64) -> Self {
        // callers only use this for small constants
        u32::try_from(n).expect("value fits in u32")
    }
}
impl Natural for u64 {}
impl Natural for u128 {}
impl Natural for BigUint {}
