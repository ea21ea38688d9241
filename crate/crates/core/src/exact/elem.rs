//! Raw tower elements.
//!
//! An [`Elem`] is either a rational or `a + b*sqrt(d_k)` where `d_k` is the
//! radicand of level `k` and `a`, `b` live strictly below level `k`. Every
//! function here takes the radicand table of the ambient tower explicitly;
//! index `k - 1` holds the radicand of level `k`.
//!
//! Normal form: a `Quad` never has a zero `b`. Combined with the fact that
//! each radicand is a non-square at its level, the representation of a value
//! inside a fixed tower is unique, so structural equality is value equality.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Rational, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Elem {
    Rat(Rational),
    Quad {
        level: usize,
        a: Arc<Elem>,
        b: Arc<Elem>,
    },
}

impl Elem {
    pub(crate) fn zero() -> Elem {
        Elem::Rat(Rational::zero())
    }

    pub(crate) fn one() -> Elem {
        Elem::Rat(Rational::one())
    }

    pub(crate) fn level(&self) -> usize {
        match self {
            Elem::Rat(_) => 0,
            Elem::Quad { level, .. } => *level,
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        matches!(self, Elem::Rat(r) if r.is_zero())
    }

    pub(crate) fn as_rational(&self) -> Option<&Rational> {
        match self {
            Elem::Rat(r) => Some(r),
            Elem::Quad { .. } => None,
        }
    }

    /// The generator `sqrt(d_level)` itself.
    pub(crate) fn generator(level: usize) -> Elem {
        Elem::Quad {
            level,
            a: Arc::new(Elem::zero()),
            b: Arc::new(Elem::one()),
        }
    }
}

fn quad(level: usize, a: Elem, b: Elem) -> Elem {
    if b.is_zero() {
        a
    } else {
        Elem::Quad {
            level,
            a: Arc::new(a),
            b: Arc::new(b),
        }
    }
}

/// Coordinates of `x` with respect to level `level` (which must be >= the
/// level of `x`).
fn split(x: &Elem, level: usize) -> (Elem, Elem) {
    match x {
        Elem::Quad { level: l, a, b } if *l == level => ((**a).clone(), (**b).clone()),
        _ => (x.clone(), Elem::zero()),
    }
}

pub(crate) fn neg(x: &Elem) -> Elem {
    match x {
        Elem::Rat(r) => Elem::Rat(-r),
        Elem::Quad { level, a, b } => Elem::Quad {
            level: *level,
            a: Arc::new(neg(a)),
            b: Arc::new(neg(b)),
        },
    }
}

pub(crate) fn add(x: &Elem, y: &Elem) -> Elem {
    match (x, y) {
        (Elem::Rat(p), Elem::Rat(q)) => Elem::Rat(p + q),
        _ => {
            let level = x.level().max(y.level());
            let (xa, xb) = split(x, level);
            let (ya, yb) = split(y, level);
            quad(level, add(&xa, &ya), add(&xb, &yb))
        }
    }
}

pub(crate) fn sub(x: &Elem, y: &Elem) -> Elem {
    add(x, &neg(y))
}

pub(crate) fn scale(x: &Elem, c: &Rational) -> Elem {
    if c.is_zero() {
        return Elem::zero();
    }
    match x {
        Elem::Rat(r) => Elem::Rat(r * c),
        Elem::Quad { level, a, b } => Elem::Quad {
            level: *level,
            a: Arc::new(scale(a, c)),
            b: Arc::new(scale(b, c)),
        },
    }
}

pub(crate) fn mul(rads: &[Elem], x: &Elem, y: &Elem) -> Elem {
    match (x, y) {
        (Elem::Rat(p), Elem::Rat(q)) => Elem::Rat(p * q),
        (Elem::Rat(p), other) | (other, Elem::Rat(p)) => scale(other, p),
        _ => {
            let level = x.level().max(y.level());
            let d = &rads[level - 1];
            let (xa, xb) = split(x, level);
            let (ya, yb) = split(y, level);
            let ac = mul(rads, &xa, &ya);
            let bd = mul(rads, &xb, &yb);
            let ad = mul(rads, &xa, &yb);
            let bc = mul(rads, &xb, &ya);
            quad(level, add(&ac, &mul(rads, &bd, d)), add(&ad, &bc))
        }
    }
}

pub(crate) fn square(rads: &[Elem], x: &Elem) -> Elem {
    mul(rads, x, x)
}

/// `a^2 - b^2 d` for `x = a + b sqrt(d)`; nonzero whenever `x` is.
fn norm_down(rads: &[Elem], level: usize, a: &Elem, b: &Elem) -> Elem {
    let d = &rads[level - 1];
    sub(&square(rads, a), &mul(rads, &square(rads, b), d))
}

pub(crate) fn recip(rads: &[Elem], x: &Elem) -> Option<Elem> {
    match x {
        Elem::Rat(r) => {
            if r.is_zero() {
                None
            } else {
                Some(Elem::Rat(r.recip()))
            }
        }
        Elem::Quad { level, a, b } => {
            let n = norm_down(rads, *level, a, b);
            let inv = recip(rads, &n)?;
            Some(quad(*level, mul(rads, a, &inv), neg(&mul(rads, b, &inv))))
        }
    }
}

pub(crate) fn sign(rads: &[Elem], x: &Elem) -> Sign {
    match x {
        Elem::Rat(r) => Sign::of_rational(r),
        Elem::Quad { level, a, b } => {
            let sa = sign(rads, a);
            let sb = sign(rads, b);
            match (sa, sb) {
                (Sign::Zero | Sign::Positive, Sign::Positive) => Sign::Positive,
                (Sign::Zero | Sign::Negative, Sign::Negative) => Sign::Negative,
                _ => {
                    // opposite signs: compare a^2 with b^2 d
                    let t = sign(rads, &norm_down(rads, *level, a, b));
                    if sa == Sign::Positive {
                        t
                    } else {
                        t.negate()
                    }
                }
            }
        }
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// Some square root of `x` among elements of level `<= max_level`, if one
/// exists. The sign of the returned root is unspecified.
fn try_sqrt_any(rads: &[Elem], x: &Elem, max_level: usize) -> Option<Elem> {
    if x.is_zero() {
        return Some(Elem::zero());
    }
    if max_level == 0 {
        return match x {
            Elem::Rat(r) => rational_sqrt(r).map(Elem::Rat),
            Elem::Quad { .. } => None,
        };
    }
    let level = max_level;
    let d = &rads[level - 1];
    let (a, b) = split(x, level);
    if b.is_zero() {
        if let Some(p) = try_sqrt_any(rads, &a, level - 1) {
            return Some(p);
        }
        // sqrt(a) = q sqrt(d) with q^2 = a / d
        let inv_d = recip(rads, d).expect("radicands are nonzero");
        let q = try_sqrt_any(rads, &mul(rads, &a, &inv_d), level - 1)?;
        return Some(quad(level, Elem::zero(), q));
    }
    // (p + q sqrt d)^2 = a + b sqrt d  =>  p^2 + q^2 d = a, 2pq = b,
    // and (p^2 - q^2 d)^2 = a^2 - b^2 d.
    let n = norm_down(rads, level, &a, &b);
    if sign(rads, &n) == Sign::Negative {
        return None;
    }
    let s = try_sqrt_any(rads, &n, level - 1)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for cand in [add(&a, &s), sub(&a, &s)] {
        let p2 = scale(&cand, &half);
        if sign(rads, &p2) == Sign::Negative || p2.is_zero() {
            continue;
        }
        if let Some(p) = try_sqrt_any(rads, &p2, level - 1) {
            let two_p = scale(&p, &Rational::from_integer(BigInt::from(2)));
            let q = mul(rads, &b, &recip(rads, &two_p)?);
            let root = quad(level, p, q);
            if square(rads, &root) == *x {
                return Some(root);
            }
        }
    }
    None
}

/// The nonnegative square root of `x` inside the tower (levels `<= max_level`),
/// or `None` when `x` is negative or not a square there.
pub(crate) fn try_sqrt(rads: &[Elem], x: &Elem, max_level: usize) -> Option<Elem> {
    if sign(rads, x) == Sign::Negative {
        return None;
    }
    let r = try_sqrt_any(rads, x, max_level)?;
    if sign(rads, &r) == Sign::Negative {
        Some(neg(&r))
    } else {
        Some(r)
    }
}
