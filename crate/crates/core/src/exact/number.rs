use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::elem::{self, Elem};
use super::interval::{self, RationalInterval};
use super::tower::FieldTower;
use super::{ExactError, Rational, Sign};

/// An exact real number living in a tower of quadratic extensions.
#[derive(Clone)]
pub struct ConstructibleNumber {
    tower: FieldTower,
    value: Elem,
}

impl ConstructibleNumber {
    pub(crate) fn from_parts(tower: FieldTower, value: Elem) -> Self {
        debug_assert!(value.level() <= tower.depth());
        ConstructibleNumber { tower, value }
    }

    pub fn from_rational(r: Rational) -> Self {
        ConstructibleNumber::from_parts(FieldTower::rationals(), Elem::Rat(r))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub(crate) fn elem(&self) -> &Elem {
        &self.value
    }

    /// Number of the highest tower level this value actually uses.
    pub fn level(&self) -> usize {
        self.value.level()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.value.as_rational().is_some()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.value.as_rational()
    }

    /// Same value over the shortest prefix of its tower that contains it.
    pub fn trimmed(&self) -> Self {
        let level = self.value.level();
        if level == self.tower.depth() {
            return self.clone();
        }
        ConstructibleNumber::from_parts(self.tower.ancestor(level), self.value.clone())
    }

    /// Same value, re-expressed over `target`, which must extend this tower.
    pub fn lift_to(&self, target: &FieldTower) -> Self {
        if self.tower.is_prefix_of(target) {
            return ConstructibleNumber::from_parts(target.clone(), self.value.clone());
        }
        let (merged, _, lift) = FieldTower::merge(target, &self.tower);
        assert!(
            merged.depth() == target.depth(),
            "lift_to: target tower does not contain this value"
        );
        let v = lift.apply(merged.radicands(), &self.value);
        ConstructibleNumber::from_parts(target.clone(), v)
    }

    /// Bring two numbers into one tower.
    fn align(&self, other: &Self) -> (FieldTower, Elem, Elem) {
        if self.tower.ptr_eq(&other.tower) {
            return (self.tower.clone(), self.value.clone(), other.value.clone());
        }
        let (t, la, lb) = FieldTower::merge(&self.tower, &other.tower);
        let a = la.apply(t.radicands(), &self.value);
        let b = lb.apply(t.radicands(), &other.value);
        (t, a, b)
    }

    pub fn sign(&self) -> Sign {
        interval::fast_sign(self)
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Sign::Negative {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        let v = elem::recip(self.tower.radicands(), &self.value).ok_or(ExactError::DivisionByZero)?;
        Ok(ConstructibleNumber::from_parts(self.tower.clone(), v))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * &other.recip()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ConstructibleNumber::from_parts(self.tower.clone(), elem::scale(&self.value, c))
    }

    /// Nonnegative square root if it already exists in this tower.
    pub fn try_sqrt(&self) -> Option<Self> {
        elem::try_sqrt(self.tower.radicands(), &self.value, self.tower.depth())
            .map(|v| ConstructibleNumber::from_parts(self.tower.clone(), v))
    }

    /// `sqrt(self)`, adjoining it to this number's tower when it is not
    /// already present. Returns the (possibly unchanged) tower and the root.
    pub fn sqrt_extend(&self) -> Result<(FieldTower, Self), ExactError> {
        let tower = self.tower.clone();
        self.sqrt_extend_in(&tower)
    }

    /// Like [`sqrt_extend`](Self::sqrt_extend) but works over `tower`, which
    /// must extend this number's tower. Threading one tower through a
    /// computation keeps every intermediate value prefix-compatible.
    pub fn sqrt_extend_in(&self, tower: &FieldTower) -> Result<(FieldTower, Self), ExactError> {
        let x = self.lift_to(tower);
        match x.sign() {
            Sign::Negative => return Err(ExactError::NegativeSqrt),
            Sign::Zero => return Ok((tower.clone(), x)),
            Sign::Positive => {}
        }
        if let Some(r) = x.try_sqrt() {
            return Ok((tower.clone(), r));
        }
        let extended = tower.extend_raw(x.value.clone())?;
        let root = ConstructibleNumber::from_parts(extended.clone(), Elem::generator(extended.depth()));
        Ok((extended, root))
    }

    pub fn sqrt(&self) -> Result<Self, ExactError> {
        self.sqrt_extend().map(|(_, r)| r)
    }

    /// Dyadic enclosure of width `2^-precision` (degenerate for rationals).
    /// Intervals for increasing precision are nested.
    pub fn to_interval(&self, precision: u32) -> RationalInterval {
        interval::enclose(self, precision)
    }

    pub fn to_f64(&self) -> f64 {
        let iv = self.to_interval(60);
        let mid = (iv.lo + iv.hi) / Rational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        match self.as_rational() {
            Some(x) => x.cmp(r),
            None => (self - &ConstructibleNumber::from_rational(r.clone())).sign().as_ordering(),
        }
    }

    /// Values are kept in normal form, so a rational value is always stored
    /// as a bare rational.
    pub fn eq_rational(&self, r: &Rational) -> bool {
        self.as_rational() == Some(r)
    }

    pub fn is_one(&self) -> bool {
        self.eq_rational(&Rational::from_integer(BigInt::from(1)))
    }

    pub fn max_with_zero(&self) -> Self {
        if self.sign() == Sign::Negative {
            ConstructibleNumber::zero()
        } else {
            self.clone()
        }
    }
}

/// Lift every number into one shared tower.
pub fn common_tower<'a, I>(values: I) -> FieldTower
where
    I: IntoIterator<Item = &'a ConstructibleNumber>,
{
    let mut tower = FieldTower::rationals();
    for v in values {
        if v.tower.is_prefix_of(&tower) {
            continue;
        }
        if tower.is_prefix_of(&v.tower) {
            tower = v.tower.clone();
            continue;
        }
        let (merged, _, _) = FieldTower::merge(&tower, &v.tower);
        tower = merged;
    }
    tower
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b ConstructibleNumber> for &'a ConstructibleNumber {
            type Output = ConstructibleNumber;
            fn $method(self, rhs: &'b ConstructibleNumber) -> ConstructibleNumber {
                let (t, a, b) = self.align(rhs);
                let f: fn(&[Elem], &Elem, &Elem) -> Elem = $body;
                let v = f(t.radicands(), &a, &b);
                ConstructibleNumber::from_parts(t, v)
            }
        }
        impl $tr for ConstructibleNumber {
            type Output = ConstructibleNumber;
            fn $method(self, rhs: ConstructibleNumber) -> ConstructibleNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b ConstructibleNumber> for ConstructibleNumber {
            type Output = ConstructibleNumber;
            fn $method(self, rhs: &'b ConstructibleNumber) -> ConstructibleNumber {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |_, a, b| elem::add(a, b));
binop!(Sub, sub, |_, a, b| elem::sub(a, b));
binop!(Mul, mul, |r, a, b| elem::mul(r, a, b));

impl Neg for &ConstructibleNumber {
    type Output = ConstructibleNumber;
    fn neg(self) -> ConstructibleNumber {
        ConstructibleNumber::from_parts(self.tower.clone(), elem::neg(&self.value))
    }
}

impl Neg for ConstructibleNumber {
    type Output = ConstructibleNumber;
    fn neg(self) -> ConstructibleNumber {
        -&self
    }
}

impl PartialEq for ConstructibleNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.tower.ptr_eq(&other.tower) {
            return self.value == other.value;
        }
        (self - other).is_zero()
    }
}

impl Eq for ConstructibleNumber {}

impl PartialOrd for ConstructibleNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConstructibleNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().as_ordering()
    }
}

impl From<Rational> for ConstructibleNumber {
    fn from(r: Rational) -> Self {
        ConstructibleNumber::from_rational(r)
    }
}

impl From<i64> for ConstructibleNumber {
    fn from(n: i64) -> Self {
        ConstructibleNumber::from_integer(n)
    }
}

impl fmt::Display for ConstructibleNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::expr::format_elem(self.tower.radicands(), &self.value))
    }
}

impl fmt::Debug for ConstructibleNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:.6})", self, self.to_f64())
    }
}

impl Default for ConstructibleNumber {
    fn default() -> Self {
        ConstructibleNumber::zero()
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<ConstructibleNumber>();
    check::<FieldTower>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn zero_and_rational_detection() {
        let z = ConstructibleNumber::zero();
        assert!(z.is_zero());
        assert_eq!(z.sign(), Sign::Zero);
        assert!(ConstructibleNumber::from_ratio(3, 4).is_rational());
        assert!(Rational::zero().is_zero());
    }
}
