//! Points of Q(sqrt(-d)) + infinity as canonical reduced fractions of ring
//! integers, plus exact complex-rational coordinates for the geometry layer.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{Coeff, Disc, RingElem};

/// A point of Q(sqrt(-d)) + infinity as a reduced, unit-normalized fraction.
///
/// Invariants: gcd(p, q) is a unit; the pair is scaled by the unit that makes
/// the denominator the canonical associate, so equal values have identical
/// representations. Infinity is canonically 1/0 and zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QElem<T> {
    p: RingElem<T>,
    q: RingElem<T>,
}

impl<T: Coeff> QElem<T> {
    /// Builds the canonical representative of p/q. Rejects (0, 0).
    pub fn make(p: RingElem<T>, q: RingElem<T>) -> Result<Self> {
        assert_eq!(p.disc(), q.disc(), "mixed discriminants");
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroOverZero);
        }
        if q.is_zero() {
            return Ok(Self::infinity(p.disc()));
        }
        if p.is_zero() {
            return Ok(Self::zero(p.disc()));
        }
        let g = p.gcd(&q)?;
        let pr = p.exact_div(&g).expect("gcd divides");
        let qr = q.exact_div(&g).expect("gcd divides");
        Ok(Self::from_coprime(pr, qr))
    }

    /// Like `make` but skips the gcd computation; the caller promises the
    /// pair is already coprime. Only the unit normalization is applied.
    pub fn from_coprime(p: RingElem<T>, q: RingElem<T>) -> Self {
        if q.is_zero() {
            return Self::infinity(p.disc());
        }
        let (qc, u) = q.canonical_associate();
        QElem { p: u.mul(&p), q: qc }
    }

    pub fn infinity(d: Disc) -> Self {
        QElem {
            p: RingElem::one(d),
            q: RingElem::zero(d),
        }
    }

    pub fn zero(d: Disc) -> Self {
        QElem {
            p: RingElem::zero(d),
            q: RingElem::one(d),
        }
    }

    pub fn from_ring(x: RingElem<T>) -> Self {
        let d = x.disc();
        QElem {
            p: x,
            q: RingElem::one(d),
        }
    }

    pub fn disc(&self) -> Disc {
        self.p.disc()
    }

    pub fn num(&self) -> &RingElem<T> {
        &self.p
    }

    pub fn den(&self) -> &RingElem<T> {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && !self.q.is_zero()
    }

    /// True when the value lies in Z[w_d]; canonical integers have q = 1.
    pub fn is_integral(&self) -> bool {
        self.q.is_one()
    }

    /// The ring integer this point represents, if any.
    pub fn as_ring(&self) -> Option<RingElem<T>> {
        if self.is_integral() {
            Some(self.p.clone())
        } else {
            None
        }
    }

    /// x + alpha with infinity + alpha = infinity.
    pub fn q_add(&self, alpha: &RingElem<T>) -> Self {
        if self.is_infinity() {
            return self.clone();
        }
        QElem {
            p: self.p.add(&alpha.mul(&self.q)),
            q: self.q.clone(),
        }
    }

    /// 1/x projectively: 1/0 = infinity and 1/infinity = 0.
    pub fn q_inv(&self) -> Self {
        Self::from_coprime(self.q.clone(), self.p.clone())
    }

    /// -x (fixes infinity).
    pub fn q_neg(&self) -> Self {
        QElem {
            p: self.p.neg(),
            q: self.q.clone(),
        }
    }

    /// Complex conjugation, numerator and denominator conjugated.
    pub fn conj_q(&self) -> Self {
        Self::from_coprime(self.p.conj(), self.q.conj())
    }

    /// Difference of two finite points as a finite point.
    pub fn sub_finite(&self, other: &Self) -> Result<Self> {
        if self.is_infinity() || other.is_infinity() {
            return Err(Error::InfinityNotFinite);
        }
        let p = self.p.mul(&other.q).sub(&other.p.mul(&self.q));
        let q = self.q.mul(&other.q);
        Self::make(p, q)
    }

    /// Exact coordinates x + y*sqrt(d)*i of a finite point:
    /// p/q = p*conj(q)/N(q).
    pub fn embed(&self) -> Result<ComplexRational<T>> {
        if self.is_infinity() {
            return Err(Error::InfinityNotFinite);
        }
        let num = self.p.mul(&self.q.conj());
        let n = self.q.norm();
        let (e, f) = num.coords();
        let d = self.disc();
        let (x, y) = if d.half_integer() {
            let two = T::from_u8(2).unwrap();
            (
                Ratio::new(two.clone() * e.clone() + f.clone(), two.clone() * n.clone()),
                Ratio::new(f.clone(), two * n),
            )
        } else {
            (Ratio::new(e.clone(), n.clone()), Ratio::new(f.clone(), n))
        };
        Ok(ComplexRational { d, x, y })
    }

    /// Deterministic total order used for canonical witnesses and sorted
    /// neighbor lists: by denominator coordinates, then numerator.
    fn key(&self) -> (&RingElem<T>, &RingElem<T>) {
        (&self.q, &self.p)
    }
}

impl<T: Coeff> PartialOrd for QElem<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Coeff> Ord for QElem<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Text form "(a,b)/(c,e)" meaning (a + b*w)/(c + e*w); "inf" for infinity.
impl<T: Coeff> fmt::Display for QElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            return write!(f, "inf");
        }
        let (a, b) = self.p.coords();
        let (c, e) = self.q.coords();
        write!(f, "({a},{b})/({c},{e})")
    }
}

impl<T: Coeff> QElem<T> {
    /// Parses "(a,b)/(c,e)", "(a,b)" (denominator one) and "inf".
    pub fn parse(d: Disc, s: &str) -> Result<Self> {
        let s = s.trim().replace(' ', "");
        if s == "inf" || s == "infinity" {
            return Ok(Self::infinity(d));
        }
        let bad = || Error::Parse(format!("cannot read element from {s:?}"));
        let pair = |t: &str| -> Result<RingElem<T>> {
            let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
            let (a, b) = t.split_once(',').ok_or_else(bad)?;
            let a = a.parse::<T>().map_err(|_| bad())?;
            let b = b.parse::<T>().map_err(|_| bad())?;
            Ok(RingElem::new(d, a, b))
        };
        match s.split_once('/') {
            Some((np, dp)) => Self::make(pair(np)?, pair(dp)?),
            None => Ok(Self::from_ring(pair(&s)?)),
        }
    }
}

impl<T: Coeff> Serialize for QElem<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Exact point x + y*sqrt(d)*i of the complex plane; y is the coefficient of
/// sqrt(d) so that both coordinates stay rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexRational<T: Clone + num_integer::Integer> {
    d: Disc,
    x: Ratio<T>,
    y: Ratio<T>,
}

impl<T: Coeff> ComplexRational<T> {
    pub fn new(d: Disc, x: Ratio<T>, y: Ratio<T>) -> Self {
        ComplexRational { d, x, y }
    }

    pub fn zero(d: Disc) -> Self {
        ComplexRational {
            d,
            x: Ratio::zero(),
            y: Ratio::zero(),
        }
    }

    pub fn from_ring(e: &RingElem<T>) -> Self {
        QElem::from_ring(e.clone()).embed().expect("finite")
    }

    pub fn disc(&self) -> Disc {
        self.d
    }

    pub fn x(&self) -> &Ratio<T> {
        &self.x
    }

    /// Coefficient of sqrt(d)*i; the imaginary part is y*sqrt(d).
    pub fn y(&self) -> &Ratio<T> {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexRational {
            d: self.d,
            x: self.x.clone() + o.x.clone(),
            y: self.y.clone() + o.y.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexRational {
            d: self.d,
            x: self.x.clone() - o.x.clone(),
            y: self.y.clone() - o.y.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        ComplexRational {
            d: self.d,
            x: -self.x.clone(),
            y: -self.y.clone(),
        }
    }

    /// (x1 + y1 s i)(x2 + y2 s i) = x1x2 - d y1y2 + (x1y2 + x2y1) s i.
    pub fn mul(&self, o: &Self) -> Self {
        let dr = Ratio::from_integer(T::from_u8(self.d.value()).unwrap());
        ComplexRational {
            d: self.d,
            x: self.x.clone() * o.x.clone() - dr * self.y.clone() * o.y.clone(),
            y: self.x.clone() * o.y.clone() + self.y.clone() * o.x.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let n = self.norm_sq();
        Ok(ComplexRational {
            d: self.d,
            x: self.x.clone() / n.clone(),
            y: -self.y.clone() / n,
        })
    }

    /// Squared modulus x^2 + d*y^2, exact.
    pub fn norm_sq(&self) -> Ratio<T> {
        let dr = Ratio::from_integer(T::from_u8(self.d.value()).unwrap());
        self.x.clone() * self.x.clone() + dr * self.y.clone() * self.y.clone()
    }

    /// Squared Euclidean distance to another point, exact.
    pub fn dist_sq(&self, o: &Self) -> Ratio<T> {
        self.sub(o).norm_sq()
    }
}
