//! Exact ground-field arithmetic.
//!
//! Two kinds of field are supported: the rationals and prime fields `F_p`
//! with `p > 2`. Rationals keep an `i64` fast path and fall back to
//! arbitrary precision when a result no longer fits.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`. Rejects `p = 2` and composite moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("modulus {p} too large (must be < 2^31)")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::small(n, 1)),
            Field::Prime(p) => Scalar::Fp(Fp::new(n.rem_euclid(*p as i64) as u64, *p)),
        }
    }

    /// `num / den`; panics on zero denominator in the field.
    pub fn ratio(&self, num: i64, den: i64) -> Scalar {
        let d = self.from_i64(den);
        self.from_i64(num) * d.inv().expect("zero denominator")
    }

    /// The rational `r` as a field element (`F_p`: reduced modulo `p`).
    pub fn from_big_rational(&self, r: &BigRational) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::from_big(r.clone())),
            Field::Prime(p) => {
                let p_big = BigInt::from(*p);
                let reduce = |x: &BigInt| x.mod_floor(&p_big).to_u64().unwrap();
                let num = Scalar::Fp(Fp::new(reduce(r.numer()), *p));
                let den = Scalar::Fp(Fp::new(reduce(r.denom()), *p));
                num * den.inv().expect("denominator divisible by p")
            }
        }
    }

    /// Parses `a`, `-a`, or `a/b` (integers of arbitrary size).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse {
            line: 0,
            column: 0,
            message: format!("invalid scalar `{s}`"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rational => Ok(Scalar::Q(Rational::from_big(BigRational::new(num, den)))),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = num.mod_floor(&pb).to_u64().unwrap();
                let d = den.mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(bad());
                }
                let n = Scalar::Fp(Fp::new(n, *p));
                Ok(n * Scalar::Fp(Fp::new(d, *p)).inv().unwrap())
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }
}

/// Normalized rational: `den > 0`, `gcd(num, den) = 1`; the `Big` variant is
/// only used when the value does not fit the small one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational(RInner);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum RInner {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    fn small(num: i64, den: i64) -> Self {
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(RInner::Small(n, d)),
            _ => Rational(RInner::Big(BigRational::new(n.into(), d.into()))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(RInner::Small(n, d)),
            _ => Rational(RInner::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            RInner::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            RInner::Big(b) => b.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, RInner::Small(0, _))
    }

    fn add(&self, o: &Rational) -> Rational {
        if let (RInner::Small(a, b), RInner::Small(c, d)) = (&self.0, &o.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Self::from_i128(a + c, b);
            }
            return Self::from_i128(a * d + c * b, b * d);
        }
        Self::from_big(self.to_big() + o.to_big())
    }

    fn mul(&self, o: &Rational) -> Rational {
        if let (RInner::Small(a, b), RInner::Small(c, d)) = (&self.0, &o.0) {
            return Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Self::from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Rational {
        match &self.0 {
            RInner::Small(n, d) if *n != i64::MIN => Rational(RInner::Small(-n, *d)),
            _ => Self::from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        match &self.0 {
            RInner::Small(n, d) => Some(Self::from_i128(*d as i128, *n as i128)),
            RInner::Big(b) => Some(Self::from_big(b.recip())),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            RInner::Small(n, 1) => write!(f, "{n}"),
            RInner::Small(n, d) => write!(f, "{n}/{d}"),
            RInner::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            RInner::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// An exact field element. Mixing elements of different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp(x) => Field::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.0 == RInner::Small(1, 1),
            Scalar::Fp(x) => x.value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => r.inv().map(Scalar::Q),
            Scalar::Fp(x) => {
                if x.value == 0 {
                    return None;
                }
                Some(Scalar::Fp(Fp::new(
                    pow_mod(x.value, x.modulus - 2, x.modulus),
                    x.modulus,
                )))
            }
        }
    }

    /// `(-1)^k` times `self`.
    pub fn signed(self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self
        } else {
            -self
        }
    }

    /// Integer value when the scalar is an integer of small size (rationals only).
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rational(RInner::Small(n, 1))) => Some(*n),
            Scalar::Fp(x) => Some(x.value as i64),
            _ => None,
        }
    }

    /// The value as an arbitrary-precision rational (rationals only).
    pub fn to_big_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(r) => Some(r.to_big()),
            Scalar::Fp(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rational(RInner::Small(n, _))) => *n < 0,
            Scalar::Q(Rational(RInner::Big(b))) => b.is_negative(),
            Scalar::Fp(_) => false,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.modulus == b.modulus => {
                Scalar::Fp(Fp::new(a.value + b.value, a.modulus))
            }
            _ => mismatch(self, o),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.modulus == b.modulus => {
                Scalar::Fp(Fp::new(a.value * b.value, a.modulus))
            }
            _ => mismatch(self, o),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp(a) => Scalar::Fp(Fp::new(a.modulus - a.value, a.modulus)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp(x) => write!(f, "{}", x.value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_char_two_and_composites() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn rational_overflow_promotes() {
        let q = Field::Rational;
        let big = q.from_i64(i64::MAX);
        let sq = &big * &big;
        assert_eq!(&(&sq * &big.inv().unwrap()) - &big, q.zero());
        assert_eq!(q.parse("-6/4").unwrap(), q.ratio(-3, 2));
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(7).unwrap();
        for n in 1..7 {
            let x = f.from_i64(n);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }
}
