//! Exact ground-field scalars: the rationals and prime fields.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Descriptor of the ground field every scalar of a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field of order `p`; rejects composites.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
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

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                residue: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Input("zero denominator".into()));
        }
        match *self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let n = reduce_bigint(num, p);
                let d = reduce_bigint(den, p);
                if d == 0 {
                    return Err(Error::Input(format!(
                        "denominator {den} is divisible by the characteristic {p}"
                    )));
                }
                Ok(Scalar::Prime {
                    residue: mul_mod(n, inv_mod(d, p), p),
                    p,
                })
            }
        }
    }

    /// Parses `"p/q"`, `"p"` or a bare integer string.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::Input(format!("cannot parse scalar {text:?}")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::Input(format!("cannot parse scalar {text:?}")))?;
        self.from_ratio(&num, &den)
    }

    pub fn label(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    r.to_u64().expect("residue fits")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} has no inverse mod {p}");
    t0.rem_euclid(p as i128) as u64
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator; prime-field residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { residue, p } => Scalar::Prime {
                residue: inv_mod(*residue, *p),
                p: *p,
            },
        })
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Scalar::Rational(q) => q.numer().clone(),
            Scalar::Prime { residue, .. } => BigInt::from(*residue),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Scalar::Rational(q) => q.denom().clone(),
            Scalar::Prime { .. } => BigInt::one(),
        }
    }

    /// Sign-aware magnitude used only for pretty printing.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Prime { .. } => false,
        }
    }

    fn mismatch(a: &Scalar, b: &Scalar) -> ! {
        panic!("arithmetic across fields {} and {}", a.field(), b.field())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { residue: a, p }, Scalar::Prime { residue: b, p: q }) if p == q => {
                let s = a + b;
                Scalar::Prime {
                    residue: if s >= *p { s - p } else { s },
                    p: *p,
                }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { residue: a, p }, Scalar::Prime { residue: b, p: q }) if p == q => {
                Scalar::Prime {
                    residue: if a >= b { a - b } else { a + p - b },
                    p: *p,
                }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { residue: a, p }, Scalar::Prime { residue: b, p: q }) if p == q => {
                Scalar::Prime {
                    residue: mul_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { residue, p } => Scalar::Prime {
                residue: if *residue == 0 { 0 } else { p - residue },
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

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.parse("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(a.denom(), BigInt::from(2));
        assert_eq!(q.parse("0/5").unwrap(), q.zero());
        assert_eq!((&a + &q.parse("3/2").unwrap()).denom(), BigInt::one());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f7 = Field::prime(7).unwrap();
        let three = f7.from_i64(3);
        assert_eq!((&three * &three.inv().unwrap()), f7.one());
        assert_eq!(f7.from_i64(-1), f7.from_i64(6));
        assert_eq!(f7.parse("1/2").unwrap(), f7.from_i64(4));
        assert!(f7.parse("1/7").is_err());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(matches!(Field::prime(9), Err(Error::NotPrime(9))));
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    #[should_panic(expected = "across fields")]
    fn mixing_fields_panics() {
        let _ = &Field::Rational.one() + &Field::Prime(5).one();
    }
}
