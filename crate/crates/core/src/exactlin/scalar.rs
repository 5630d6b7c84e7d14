//! Exact field elements: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The base field every structure in a computation is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composite or trivial moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { value: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod { value: reduce_i128(n as i128, p), p },
        }
    }

    /// `n / d` in this field; fails when `d` vanishes in the field.
    pub fn ratio(self, n: i64, d: i64) -> Result<Scalar> {
        self.ratio_big(BigInt::from(n), BigInt::from(d))
    }

    fn ratio_big(self, n: BigInt, d: BigInt) -> Result<Scalar> {
        if d.is_zero() {
            return Err(Error::Literal("division by zero".into()));
        }
        match self {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(n, d))),
            Field::Prime(p) => {
                let num = reduce_big(&n, p);
                let den = reduce_big(&d, p);
                if den == 0 {
                    return Err(Error::Literal(format!("denominator {d} vanishes mod {p}")));
                }
                let inv = Scalar::Mod { value: den, p }.inv().expect("nonzero residue");
                Ok(Scalar::Mod { value: num, p } * inv)
            }
        }
    }

    /// Parses `p/q`, `p`, or `n mod p`. Rational literals are reduced into a prime field.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        if let Some((n, m)) = text.split_once(" mod ") {
            let p: u64 = m
                .trim()
                .parse()
                .map_err(|_| Error::Literal(format!("bad modulus in `{text}`")))?;
            if self != Field::Prime(p) {
                return Err(Error::FieldMismatch {
                    left: self,
                    right: Field::Prime(p),
                });
            }
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Literal(format!("bad residue in `{text}`")))?;
            return Ok(Scalar::Mod { value: reduce_big(&n, p), p });
        }
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let n: BigInt = parse_int(n).ok_or_else(|| Error::Literal(format!("bad literal `{text}`")))?;
        let d: BigInt = parse_int(d).ok_or_else(|| Error::Literal(format!("bad literal `{text}`")))?;
        self.ratio_big(n, d)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "q" => Ok(Field::Rationals),
            other => match other.strip_prefix("Fp:").or_else(|| other.strip_prefix("F:")) {
                Some(p) => Field::prime(
                    p.parse()
                        .map_err(|_| Error::InvalidField(format!("bad prime `{p}`")))?,
                ),
                None => Err(Error::InvalidField(format!("unknown field `{other}`"))),
            },
        }
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    s.parse().ok()
}

fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

fn reduce_big(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// An element of a [`Field`].
///
/// Arithmetic operators panic when the operands live in different fields; use the
/// `checked_*` methods where mixing is possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_field(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_field(rhs)?;
        Ok(self * rhs)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_field(rhs)?;
        let inv = rhs.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    fn same_field(&self, rhs: &Scalar) -> Result<()> {
        if self.field() == rhs.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field(),
                right: rhs.field(),
            })
        }
    }

    /// Exact square root when it exists in the field. Prime fields are searched exhaustively.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = exact_isqrt(r.numer())?;
                let d = exact_isqrt(r.denom())?;
                Some(Scalar::Rational(BigRational::new(n, d)))
            }
            Scalar::Mod { value, p } => (0..*p)
                .find(|x| (*x as u128 * *x as u128 % *p as u128) as u64 == *value)
                .map(|x| Scalar::Mod { value: x, p: *p }),
        }
    }

    /// Borrow the rational value, if any.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = p as u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn mismatch(l: &Scalar, r: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", l.field(), r.field())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, p } => write!(f, "{value} mod {p}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sums_normalize() {
        let q = Field::Rationals;
        let s = q.ratio(1, 2).unwrap() + q.ratio(1, 6).unwrap();
        assert_eq!(s, q.ratio(2, 3).unwrap());
        assert_eq!(s.to_string(), "2/3");
    }

    #[test]
    fn prime_field_residues() {
        let f = Field::prime(7).unwrap();
        let x = f.int(-1);
        assert_eq!(x, Scalar::Mod { value: 6, p: 7 });
        assert_eq!((&x * &x), f.one());
        assert_eq!(f.ratio(1, 2).unwrap(), f.int(4));
        assert_eq!(f.int(3).inv().unwrap() * f.int(3), f.one());
    }

    #[test]
    fn parsing_literals() {
        let q = Field::Rationals;
        assert_eq!(q.parse("-3/6").unwrap(), q.ratio(-1, 2).unwrap());
        assert_eq!(q.parse("+5").unwrap(), q.int(5));
        assert!(matches!(q.parse("1/0"), Err(Error::Literal(_))));
        assert!(q.parse("x").is_err());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse("7 mod 5").unwrap(), f5.int(2));
        assert_eq!(f5.parse("1/2").unwrap(), f5.int(3));
        assert!(q.parse("3 mod 5").is_err());
        assert!(matches!(f5.parse("1/5"), Err(Error::Literal(_))));
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = Field::Rationals.one();
        let b = Field::prime(3).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn operator_mixing_panics() {
        let _ = Field::Rationals.one() + Field::prime(3).unwrap().one();
    }

    #[test]
    fn field_names() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("Fp:11".parse::<Field>().unwrap(), Field::Prime(11));
        assert!("Fp:9".parse::<Field>().is_err());
    }

    #[test]
    fn square_roots() {
        let q = Field::Rationals;
        assert_eq!(q.ratio(9, 4).unwrap().sqrt(), Some(q.ratio(3, 2).unwrap()));
        assert_eq!(q.int(2).sqrt(), None);
        let f = Field::prime(7).unwrap();
        let r = f.int(2).sqrt().unwrap();
        assert_eq!(&r * &r, f.int(2));
    }
}
