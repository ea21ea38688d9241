use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::elem::{self, Elem};
use super::number::ConstructibleNumber;
use super::{Rational, Sign};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalInterval {
    #[serde(serialize_with = "super::serde_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "super::serde_rational")]
    pub hi: Rational,
}

impl RationalInterval {
    pub fn point(r: Rational) -> Self {
        RationalInterval { lo: r.clone(), hi: r }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    fn add(&self, o: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &RationalInterval) -> RationalInterval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RationalInterval { lo, hi }
    }
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn floor_scaled(r: &Rational, scale: &BigInt) -> BigInt {
    (r * Rational::from_integer(scale.clone())).floor().to_integer()
}

fn ceil_scaled(r: &Rational, scale: &BigInt) -> BigInt {
    (r * Rational::from_integer(scale.clone())).ceil().to_integer()
}

/// Outward enclosure of `sqrt` over a nonnegative interval, to `bits` bits.
fn sqrt_enclosure(iv: &RationalInterval, bits: u32) -> RationalInterval {
    let scale = pow2(2 * bits);
    let denom = pow2(bits);
    let lo_num = floor_scaled(&iv.lo, &scale);
    let lo_num = if lo_num.is_negative() { BigInt::zero() } else { lo_num };
    let hi_num = ceil_scaled(&iv.hi, &scale);
    let hi_num = if hi_num.is_negative() { BigInt::zero() } else { hi_num };
    RationalInterval {
        lo: Rational::new(lo_num.sqrt(), denom.clone()),
        hi: Rational::new(hi_num.sqrt() + BigInt::one(), denom),
    }
}

fn enclose_elem(rads: &[Elem], x: &Elem, bits: u32) -> RationalInterval {
    match x {
        Elem::Rat(r) => RationalInterval::point(r.clone()),
        Elem::Quad { level, a, b } => {
            let ia = enclose_elem(rads, a, bits);
            let ib = enclose_elem(rads, b, bits);
            let id = enclose_elem(rads, &rads[level - 1], bits);
            ia.add(&ib.mul(&sqrt_enclosure(&id, bits)))
        }
    }
}

/// Rough enclosure at a working precision, without the dyadic snapping.
pub(crate) fn rough(x: &ConstructibleNumber, bits: u32) -> RationalInterval {
    enclose_elem(x.tower().radicands(), x.elem(), bits)
}

pub(crate) fn enclose(x: &ConstructibleNumber, precision: u32) -> RationalInterval {
    if let Some(r) = x.as_rational() {
        return RationalInterval::point(r.clone());
    }
    let target = Rational::new(BigInt::one(), pow2(precision));
    let mut bits = precision + 16;
    let iv = loop {
        let iv = rough(x, bits);
        if iv.width() < target {
            break iv;
        }
        bits += 32;
    };
    // x is irrational, so it is never a dyadic rational: pick the unique
    // k with k/2^p < x < (k+1)/2^p by exact comparison.
    let scale = pow2(precision);
    let k_lo = floor_scaled(&iv.lo, &scale);
    let k_hi = floor_scaled(&iv.hi, &scale);
    let k = if k_lo == k_hi {
        k_lo
    } else {
        debug_assert_eq!(&k_lo + BigInt::one(), k_hi);
        let probe = Rational::new(k_hi.clone(), scale.clone());
        if x.cmp_rational(&probe).is_ge() {
            k_hi
        } else {
            k_lo
        }
    };
    let (lo, hi) = (
        Rational::new(k.clone(), scale.clone()),
        Rational::new(k + BigInt::one(), scale),
    );
    RationalInterval { lo, hi }
}

/// Sign test that tries a cheap enclosure before the exact recursion.
pub(crate) fn fast_sign(x: &ConstructibleNumber) -> Sign {
    let exact = || elem::sign(x.tower().radicands(), x.elem());
    if x.is_rational() || x.level() <= 1 {
        return exact();
    }
    let iv = rough(x, 64);
    if iv.lo.is_positive() {
        Sign::Positive
    } else if iv.hi.is_negative() {
        Sign::Negative
    } else {
        exact()
    }
}
