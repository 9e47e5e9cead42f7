//! Exact arithmetic in the ring of integers Z[w_d] of Q(sqrt(-d)) for the
//! Euclidean discriminants d in {1, 2, 3, 7, 11}, where w_d = sqrt(-d) for
//! d = 1, 2 and w_d = (1 + sqrt(-d))/2 for d = 3, 7, 11.
//!
//! Elements are stored as coordinate pairs (a, b) meaning a + b*w_d. The ring
//! is norm-Euclidean for these five d, which `nearest_div_rem` and `gcd`
//! exploit.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer scalar the whole crate is generic over. `BigInt` is the default
/// (convergent denominators grow exponentially); fixed-width types are fine
/// for bounded desk-scale searches.
pub trait Coeff:
    Integer
    + Signed
    + Roots
    + Clone
    + Hash
    + FromPrimitive
    + fmt::Display
    + fmt::Debug
    + FromStr
    + 'static
{
}

impl<T> Coeff for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Hash
        + FromPrimitive
        + fmt::Display
        + fmt::Debug
        + FromStr
        + 'static
{
}

/// One of the five Euclidean imaginary quadratic discriminants.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Disc(u8);

impl Disc {
    pub const ALL: [Disc; 5] = [Disc(1), Disc(2), Disc(3), Disc(7), Disc(11)];

    pub fn new(d: i64) -> Result<Disc> {
        match d {
            1 | 2 | 3 | 7 | 11 => Ok(Disc(d as u8)),
            _ => Err(Error::BadDiscriminant(d)),
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// True for d = 3, 7, 11, where w = (1 + sqrt(-d))/2.
    pub fn half_integer(self) -> bool {
        self.0 % 4 == 3
    }

    /// N(w_d) = w * conj(w): d for d = 1, 2 and (d + 1)/4 for d = 3, 7, 11.
    pub fn omega_norm(self) -> u8 {
        if self.half_integer() {
            (self.0 + 1) / 4
        } else {
            self.0
        }
    }

    /// Number of units: 4 for d = 1, 6 for d = 3, otherwise 2.
    pub fn unit_count(self) -> usize {
        match self.0 {
            1 => 4,
            3 => 6,
            _ => 2,
        }
    }
}

impl fmt::Display for Disc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Element a + b*w_d of Z[w_d], exact integer coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElem<T> {
    d: Disc,
    a: T,
    b: T,
}

impl<T: Coeff> RingElem<T> {
    pub fn new(d: Disc, a: T, b: T) -> Self {
        RingElem { d, a, b }
    }

    pub fn from_i64(d: Disc, a: i64, b: i64) -> Self {
        RingElem::new(d, T::from_i64(a).unwrap(), T::from_i64(b).unwrap())
    }

    pub fn zero(d: Disc) -> Self {
        Self::from_i64(d, 0, 0)
    }

    pub fn one(d: Disc) -> Self {
        Self::from_i64(d, 1, 0)
    }

    pub fn omega(d: Disc) -> Self {
        Self::from_i64(d, 0, 1)
    }

    pub fn from_int(d: Disc, a: T) -> Self {
        RingElem::new(d, a, T::zero())
    }

    pub fn disc(&self) -> Disc {
        self.d
    }

    pub fn coords(&self) -> (&T, &T) {
        (&self.a, &self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_rational_integer(&self) -> bool {
        self.b.is_zero()
    }

    fn same_disc(&self, other: &Self) {
        assert_eq!(
            self.d, other.d,
            "mixed discriminants: d = {} vs d = {}",
            self.d, other.d
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.same_disc(rhs);
        RingElem::new(
            self.d,
            self.a.clone() + rhs.a.clone(),
            self.b.clone() + rhs.b.clone(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.same_disc(rhs);
        RingElem::new(
            self.d,
            self.a.clone() - rhs.a.clone(),
            self.b.clone() - rhs.b.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        RingElem::new(self.d, -self.a.clone(), -self.b.clone())
    }

    /// Exact product: w^2 = -d for d = 1, 2 and w^2 = w - (d+1)/4 for
    /// d = 3, 7, 11.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.same_disc(rhs);
        let aa = self.a.clone() * rhs.a.clone();
        let bb = self.b.clone() * rhs.b.clone();
        let cross = self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.a.clone();
        let c = T::from_u8(self.d.omega_norm()).unwrap();
        if self.d.half_integer() {
            RingElem::new(self.d, aa - c * bb.clone(), cross + bb)
        } else {
            RingElem::new(self.d, aa - c * bb, cross)
        }
    }

    /// Complex conjugate: (a, -b) for d = 1, 2 and (a + b, -b) for d = 3, 7, 11.
    pub fn conj(&self) -> Self {
        if self.d.half_integer() {
            RingElem::new(self.d, self.a.clone() + self.b.clone(), -self.b.clone())
        } else {
            RingElem::new(self.d, self.a.clone(), -self.b.clone())
        }
    }

    /// N(a + b*w) = a^2 + d*b^2, or a^2 + ab + b^2*(d+1)/4 for d = 3 mod 4.
    /// Always nonnegative, zero only at zero, and equal to self * conj(self).
    pub fn norm(&self) -> T {
        let c = T::from_u8(self.d.omega_norm()).unwrap();
        if self.d.half_integer() {
            self.a.clone() * self.a.clone()
                + self.a.clone() * self.b.clone()
                + c * self.b.clone() * self.b.clone()
        } else {
            self.a.clone() * self.a.clone() + c * self.b.clone() * self.b.clone()
        }
    }

    pub fn mul_int(&self, k: &T) -> Self {
        RingElem::new(self.d, self.a.clone() * k.clone(), self.b.clone() * k.clone())
    }

    /// The units of Z[w_d]: {1, -1} plus {w, -w} for d = 1 and the six powers
    /// of w for d = 3.
    pub fn units(d: Disc) -> Vec<Self> {
        match d.value() {
            1 => vec![
                Self::from_i64(d, 1, 0),
                Self::from_i64(d, -1, 0),
                Self::from_i64(d, 0, 1),
                Self::from_i64(d, 0, -1),
            ],
            3 => vec![
                Self::from_i64(d, 1, 0),
                Self::from_i64(d, 0, 1),
                Self::from_i64(d, -1, 1),
                Self::from_i64(d, -1, 0),
                Self::from_i64(d, 0, -1),
                Self::from_i64(d, 1, -1),
            ],
            _ => vec![Self::from_i64(d, 1, 0), Self::from_i64(d, -1, 0)],
        }
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then_with(|| self.b.cmp(&other.b))
    }

    /// Canonical representative among the associates u * self, u a unit:
    /// the one with lexicographically maximal coordinates. Returns the
    /// representative and the unit that produces it.
    pub fn canonical_associate(&self) -> (Self, Self) {
        let mut best: Option<(Self, Self)> = None;
        for u in Self::units(self.d) {
            let cand = u.mul(self);
            match &best {
                Some((b, _)) if cand.lex_cmp(b) != Ordering::Greater => {}
                _ => best = Some((cand, u)),
            }
        }
        best.unwrap()
    }

    /// Exact quotient self / g, or None when g does not divide self.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        self.same_disc(g);
        if g.is_zero() {
            return None;
        }
        let num = self.mul(&g.conj());
        let n = g.norm();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Some(RingElem::new(self.d, qa, qb))
        } else {
            None
        }
    }

    /// Euclidean division: self = q * rhs + r with N(r) < N(rhs).
    ///
    /// The quotient is found by rounding the exact rational coordinates of
    /// self/rhs componentwise and scanning the 3x3 neighborhood for the
    /// remainder of minimal norm (componentwise rounding alone is not enough
    /// for d = 11); ties are broken on the lexicographically smallest
    /// quotient.
    pub fn nearest_div_rem(&self, rhs: &Self) -> Result<(Self, Self)> {
        self.same_disc(rhs);
        if rhs.is_zero() {
            return Err(Error::DivisionByZero(self.d.value()));
        }
        let num = self.mul(&rhs.conj());
        let n = rhs.norm();
        let qa = round_div(&num.a, &n);
        let qb = round_div(&num.b, &n);
        let mut best: Option<(Self, Self, T)> = None;
        for da in -1..=1i64 {
            for db in -1..=1i64 {
                let q = RingElem::new(
                    self.d,
                    qa.clone() + T::from_i64(da).unwrap(),
                    qb.clone() + T::from_i64(db).unwrap(),
                );
                let r = self.sub(&q.mul(rhs));
                let rn = r.norm();
                let better = match &best {
                    None => true,
                    Some((bq, _, bn)) => {
                        rn < *bn || (rn == *bn && q.lex_cmp(bq) == Ordering::Less)
                    }
                };
                if better {
                    best = Some((q, r, rn));
                }
            }
        }
        let (q, r, rn) = best.unwrap();
        debug_assert!(rn < n, "Euclidean property violated");
        Ok((q, r))
    }

    /// Greatest common divisor, unit-normalized to the canonical associate.
    pub fn gcd(&self, rhs: &Self) -> Result<Self> {
        self.same_disc(rhs);
        if self.is_zero() && rhs.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut x = self.clone();
        let mut y = rhs.clone();
        while !y.is_zero() {
            let (_, r) = x.nearest_div_rem(&y)?;
            x = y;
            y = r;
        }
        Ok(x.canonical_associate().0)
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*rhs = g and g the
    /// canonical-associate gcd.
    pub fn ext_gcd(&self, rhs: &Self) -> Result<(Self, Self, Self)> {
        self.same_disc(rhs);
        if self.is_zero() && rhs.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let d = self.d;
        let (mut r0, mut u0, mut v0) = (self.clone(), Self::one(d), Self::zero(d));
        let (mut r1, mut u1, mut v1) = (rhs.clone(), Self::zero(d), Self::one(d));
        while !r1.is_zero() {
            let (q, r) = r0.nearest_div_rem(&r1)?;
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            u0 = u1;
            v0 = v1;
            r1 = r;
            u1 = u;
            v1 = v;
        }
        let (g, w) = r0.canonical_associate();
        Ok((g, w.mul(&u0), w.mul(&v0)))
    }
}

/// Nearest integer to p/n for n > 0 (round half up): floor((2p + n) / 2n).
fn round_div<T: Coeff>(p: &T, n: &T) -> T {
    let two = T::from_u8(2).unwrap();
    let num = two.clone() * p.clone() + n.clone();
    num.div_floor(&(two * n.clone()))
}

impl<T: Coeff> Add for &RingElem<T> {
    type Output = RingElem<T>;
    fn add(self, rhs: Self) -> RingElem<T> {
        RingElem::add(self, rhs)
    }
}

impl<T: Coeff> Sub for &RingElem<T> {
    type Output = RingElem<T>;
    fn sub(self, rhs: Self) -> RingElem<T> {
        RingElem::sub(self, rhs)
    }
}

impl<T: Coeff> Mul for &RingElem<T> {
    type Output = RingElem<T>;
    fn mul(self, rhs: Self) -> RingElem<T> {
        RingElem::mul(self, rhs)
    }
}

impl<T: Coeff> Neg for &RingElem<T> {
    type Output = RingElem<T>;
    fn neg(self) -> RingElem<T> {
        RingElem::neg(self)
    }
}

impl<T: Coeff> PartialOrd for RingElem<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Coeff> Ord for RingElem<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

/// Text form "a+b*w" (the discriminant is implied by context).
impl<T: Coeff> fmt::Display for RingElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*w", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*w", self.a, self.b.abs())
        } else {
            write!(f, "{}+{}*w", self.a, self.b)
        }
    }
}

impl<T: Coeff> RingElem<T> {
    /// Parses "a", "a+b*w", "a-b*w", "b*w", "w", "-w".
    pub fn parse(d: Disc, s: &str) -> Result<Self> {
        let s = s.trim().replace(' ', "");
        let bad = || Error::Parse(format!("cannot read ring element from {s:?}"));
        let int = |t: &str| -> Result<T> {
            if t.is_empty() || t == "+" {
                return Ok(T::one());
            }
            if t == "-" {
                return Ok(-T::one());
            }
            t.parse::<T>().map_err(|_| bad())
        };
        if let Some(head) = s.strip_suffix("*w").or_else(|| s.strip_suffix('w')) {
            // split the w-part off: find the sign that separates "a" from "b"
            let mut split = None;
            for (i, ch) in head.char_indices().skip(1) {
                if ch == '+' || ch == '-' {
                    split = Some(i);
                }
            }
            let head = head.strip_suffix('*').unwrap_or(head);
            return match split {
                None => Ok(RingElem::new(d, T::zero(), int(head)?)),
                Some(i) => {
                    let (ap, bp) = head.split_at(i);
                    Ok(RingElem::new(d, int(ap)?, int(bp)?))
                }
            };
        }
        Ok(RingElem::from_int(d, int(&s)?))
    }
}

/// JSON form: two-element integer array [a, b], arbitrary precision.
impl<T: Coeff> Serialize for RingElem<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        let a = serde_json::Number::from_str(&self.a.to_string()).map_err(serde::ser::Error::custom)?;
        let b = serde_json::Number::from_str(&self.b.to_string()).map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&a)?;
        seq.serialize_element(&b)?;
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type E = RingElem<BigInt>;

    fn d(v: i64) -> Disc {
        Disc::new(v).unwrap()
    }

    fn e(dd: i64, a: i64, b: i64) -> E {
        E::from_i64(d(dd), a, b)
    }

    #[test]
    fn discriminants_restricted_to_euclidean_list() {
        for v in [1, 2, 3, 7, 11] {
            assert!(Disc::new(v).is_ok());
        }
        for v in [0, 4, 5, 6, 10, 13, -1, 19] {
            assert!(Disc::new(v).is_err());
        }
    }

    #[test]
    fn omega_squared_identities() {
        // w_3^2 = w_3 - 1 and w_2^2 = -2
        assert_eq!(e(3, 0, 1).mul(&e(3, 0, 1)), e(3, -1, 1));
        assert_eq!(e(2, 0, 1).mul(&e(2, 0, 1)), e(2, -2, 0));
        // additive inverse
        let x = e(7, 5, -3);
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    #[should_panic(expected = "mixed discriminants")]
    fn mixed_discriminants_rejected() {
        let _ = e(1, 1, 0).add(&e(2, 1, 0));
    }

    #[test]
    fn conjugation() {
        assert_eq!(e(7, 0, 1).conj(), e(7, 1, -1)); // conj(w_7) = 1 - w_7
        assert_eq!(e(1, 0, 1).conj(), e(1, 0, -1)); // conj(w_1) = -w_1
        assert_eq!(e(11, 3, 2).conj(), e(11, 5, -2)); // conj(3 + 2w) = 5 - 2w
        let x = e(11, -4, 9);
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn norms() {
        assert_eq!(e(11, 0, 1).norm(), BigInt::from(3)); // (1 + 11)/4
        assert_eq!(e(2, 0, 1).norm(), BigInt::from(2));
        assert_eq!(e(7, -1, 2).norm(), BigInt::from(7)); // 2w_7 - 1 = sqrt(-7)
        for x in [e(7, -1, 2), e(3, 4, -5), e(1, 2, 3)] {
            assert_eq!(x.norm(), x.mul(&x.conj()).norm().sqrt());
            assert_eq!(E::from_int(x.disc(), x.norm()), x.mul(&x.conj()));
        }
    }

    #[test]
    fn units_match_discriminant() {
        let u3 = E::units(d(3));
        assert_eq!(u3.len(), 6);
        // closed under multiplication
        for a in &u3 {
            for b in &u3 {
                assert!(u3.contains(&a.mul(b)));
            }
        }
        assert_eq!(E::units(d(2)), vec![e(2, 1, 0), e(2, -1, 0)]);
        let u1 = E::units(d(1));
        assert_eq!(u1.len(), 4);
        assert!(u1.contains(&e(1, 0, 1)) && u1.contains(&e(1, 0, -1)));
        for dd in Disc::ALL {
            for u in E::units(dd) {
                assert!(u.is_unit());
            }
        }
    }

    #[test]
    fn nearest_division_examples() {
        // 5 = q*2 + r in Z[w_1] with N(r) = 1 < 4
        let (q, r) = e(1, 5, 0).nearest_div_rem(&e(1, 2, 0)).unwrap();
        assert_eq!(e(1, 5, 0), q.mul(&e(1, 2, 0)).add(&r));
        assert_eq!(r.norm(), BigInt::from(1));
        // dividing by one returns (x, 0)
        let x = e(11, -7, 13);
        let (q, r) = x.nearest_div_rem(&E::one(d(11))).unwrap();
        assert_eq!(q, x);
        assert!(r.is_zero());
        // w_11 / 2 leaves a remainder within the Euclidean minimum 9/11 * 4
        let (_, r) = e(11, 0, 1).nearest_div_rem(&e(11, 2, 0)).unwrap();
        assert!(r.norm() * BigInt::from(11) <= BigInt::from(9) * BigInt::from(4));
        // division by zero rejected
        assert!(x.nearest_div_rem(&E::zero(d(11))).is_err());
    }

    /// Exhaustive oracle: the scanned quotient has globally minimal remainder
    /// norm among all quotients in a wide window.
    #[test]
    fn nearest_division_minimizes_over_wide_scan() {
        for dd in Disc::ALL {
            let alpha = E::from_i64(dd, 23, -17);
            let beta = E::from_i64(dd, 4, 3);
            let (q, r) = alpha.nearest_div_rem(&beta).unwrap();
            assert_eq!(alpha, q.mul(&beta).add(&r));
            let mut min = r.norm();
            for a in -30..30 {
                for b in -30..30 {
                    let cand = alpha.sub(&E::from_i64(dd, a, b).mul(&beta));
                    if cand.norm() < min {
                        min = cand.norm();
                    }
                }
            }
            assert_eq!(min, r.norm());
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(e(2, 6, 0).gcd(&e(2, 4, 0)).unwrap(), e(2, 2, 0));
        // gcd(x, 0) is the canonical associate of x
        assert_eq!(e(1, 0, -3).gcd(&E::zero(d(1))).unwrap(), e(1, 3, 0));
        assert!(E::zero(d(1)).gcd(&E::zero(d(1))).is_err());
        // Bezout identity with unit gcd
        let a = e(2, 0, 1);
        let b = e(2, 1, 1);
        let (g, u, v) = a.ext_gcd(&b).unwrap();
        assert!(g.is_unit());
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn ext_gcd_divides_both() {
        for dd in Disc::ALL {
            let a = E::from_i64(dd, 91, -35);
            let b = E::from_i64(dd, 14, 21);
            let (g, u, v) = a.ext_gcd(&b).unwrap();
            assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
            assert!(a.exact_div(&g).is_some());
            assert!(b.exact_div(&g).is_some());
        }
    }

    #[test]
    fn canonical_associate_is_stable_under_unit_scaling() {
        for dd in Disc::ALL {
            let x = E::from_i64(dd, -3, 5);
            let (c, u) = x.canonical_associate();
            assert_eq!(u.mul(&x), c);
            for w in E::units(dd) {
                assert_eq!(w.mul(&x).canonical_associate().0, c);
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3-2*w", "-1", "w", "-w", "0", "5+1*w", "-4-7*w"] {
            let x = E::parse(d(7), s).unwrap();
            let y = E::parse(d(7), &x.to_string()).unwrap();
            assert_eq!(x, y);
        }
        assert_eq!(E::parse(d(7), "1+w").unwrap(), e(7, 1, 1));
    }
}
