//! Exact scalars over ℚ or a prime field F_p.
//!
//! A [`Scalar`] carries its own field tag. Mixing scalars from different
//! fields in one operation is a programming error and panics; every loader
//! and constructor in this crate checks field agreement up front.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 61;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// F_p, after checking that `p` is a prime below 2^61.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^61")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::P { v: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::one()),
            Field::Prime(p) => Scalar::P { v: 1 % p, p },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::P { v: reduce_i128(n as i128, p), p },
        }
    }

    /// `num/den` in this field; `None` when the denominator vanishes.
    pub fn fraction(self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        if den.is_zero() {
            return None;
        }
        match self {
            Field::Rational => Some(Scalar::Q(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let n = reduce_big(num, p);
                let d = reduce_big(den, p);
                if d == 0 {
                    return None;
                }
                Some(Scalar::P { v: mul_mod(n, inv_mod(d, p), p), p })
            }
        }
    }

    /// Parses `a`, `-a` or `a/b`. For F_p, numerators outside `[0, p)` are
    /// reduced; the returned flag reports whether that happened.
    pub fn parse(self, text: &str) -> Result<(Scalar, bool), Error> {
        let text = text.trim();
        let bad = || Error::Parse(format!("invalid scalar '{text}'"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => {
                (BigInt::from_str(n.trim()).map_err(|_| bad())?, BigInt::from_str(d.trim()).map_err(|_| bad())?)
            }
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{text}'")));
        }
        let normalized = match self {
            Field::Rational => false,
            Field::Prime(p) => num.is_negative() || num >= BigInt::from(p) || !den.is_one(),
        };
        let value =
            self.fraction(&num, &den).ok_or_else(|| Error::Parse(format!("denominator of '{text}' vanishes mod p")))?;
        Ok((value, normalized))
    }

    /// Uniform over F_p; small integers over Q.
    pub fn random<R: rand::Rng + ?Sized>(self, rng: &mut R) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::P { v: rng.gen_range(0..p), p },
            Field::Rational => self.from_i64(rng.gen_range(-3..=3)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("fp:"))
            .ok_or_else(|| Error::InvalidField(format!("expected 'Q' or 'Fp:<p>', got '{s}'")))?;
        let p: u64 = p.parse().map_err(|_| Error::InvalidField(format!("bad modulus '{p}'")))?;
        Field::prime(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::P { v, p } => Scalar::P { v: inv_mod(*v, *p), p: *p },
        })
    }

    /// `(-1)^k` times `self`.
    pub fn signed(self, k: usize) -> Scalar {
        if k.is_multiple_of(2) {
            self
        } else {
            -self
        }
    }

    /// Canonical text: reduced `a/b` or `a` over ℚ, the residue over F_p.
    pub fn to_canonical(&self) -> String {
        match self {
            Scalar::Q(q) if q.denom().is_one() => q.numer().to_string(),
            Scalar::Q(q) => format!("{}/{}", q.numer(), q.denom()),
            Scalar::P { v, .. } => v.to_string(),
        }
    }

    /// Residue for F_p values; `None` over ℚ.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::P { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    /// Small integer value if the scalar is one (ℚ only).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.denom().is_one() => q.numer().to_i64(),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.partial_cmp(b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) if p == q => a.partial_cmp(b),
            _ => None,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) if p == q => Scalar::P { v: add_mod(*a, *b, *p), p: *p },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) if p == q => {
                Scalar::P { v: add_mod(*a, *p - *b, *p), p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::P { v: a, p }, Scalar::P { v: b, p: q }) if p == q => Scalar::P { v: mul_mod(*a, *b, *p), p: *p },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::P { v, p } => Scalar::P { v: (*p - *v) % *p, p: *p },
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
            fn $m(self, rhs: &Scalar) -> Scalar {
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

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

fn reduce_big(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primes_are_recognised() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1 << 61).is_err());
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(Field::Rational.parse("1/0").is_err());
        assert!(Field::Prime(5).parse("1/5").is_err());
        let (x, norm) = Field::Rational.parse("-4/6").unwrap();
        assert_eq!(x.to_canonical(), "-2/3");
        assert!(!norm);
    }

    #[test]
    fn prime_field_normalizes_out_of_range() {
        let (x, norm) = Field::Prime(5).parse("7").unwrap();
        assert_eq!(x, Field::Prime(5).from_i64(2));
        assert!(norm);
        let (y, norm) = Field::Prime(5).parse("1/2").unwrap();
        assert_eq!(y, Field::Prime(5).from_i64(3));
        assert!(norm);
    }

    #[test]
    fn field_names_round_trip() {
        for f in [Field::Rational, Field::Prime(5), Field::Prime(2_305_843_009_213_693_951)] {
            assert_eq!(f.to_string().parse::<Field>().unwrap(), f);
        }
    }

    proptest! {
        #[test]
        fn fp_inverse(v in 1u64..1_000_002) {
            let f = Field::Prime(1_000_003);
            let x = f.from_i64(v as i64);
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn rational_field_axioms(a in -50i64..50, b in -50i64..50, c in 1i64..50) {
            let f = Field::Rational;
            let x = f.fraction(&BigInt::from(a), &BigInt::from(c)).unwrap();
            let y = f.from_i64(b);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(&x * &(&y + &f.one()), &(&x * &y) + &x);
        }
    }
}
