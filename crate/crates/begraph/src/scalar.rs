//! The scalar field abstraction behind the geometry module.
//!
//! All geometric code is generic over [`Scalar`], any ordered field with
//! exact or approximate arithmetic. The shipped tools use
//! [`num_rational::BigRational`] (aliased as [`crate::Rat`]), whose
//! canonicalisation scales facet data to primitive integer vectors; `f32`
//! and `f64` are available for quick numeric experiments.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + PartialOrd + Debug + Display + 'static
{
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("small integer representable in every scalar")
    }

    /// Exact in a field; a plain division for floats.
    fn from_fraction(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Rescales `values` by one positive factor into the canonical
    /// representative of its ray. Positive scaling preserves the direction of
    /// an inequality, so supporting hyperplane data stays supporting.
    fn canonicalize_positive(values: &mut [Self]) {
        if let Some(lead) = values.iter().find(|x| !x.is_zero()) {
            let scale = lead.abs();
            for x in values.iter_mut() {
                *x = x.clone() / scale.clone();
            }
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

impl Scalar for BigRational {
    /// Primitive integer vector: clear denominators, divide by the gcd of the
    /// numerators.
    fn canonicalize_positive(values: &mut [Self]) {
        if values.iter().all(Zero::is_zero) {
            return;
        }
        let mut denom_lcm = BigInt::one();
        for v in values.iter() {
            denom_lcm = denom_lcm.lcm(v.denom());
        }
        let mut ints: Vec<BigInt> = values
            .iter()
            .map(|v| v.numer() * (&denom_lcm / v.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for i in &ints {
            gcd = gcd.gcd(i);
        }
        for i in &mut ints {
            *i = &*i / &gcd;
        }
        for (v, i) in values.iter_mut().zip(ints) {
            *v = BigRational::from_integer(i);
        }
    }
}
