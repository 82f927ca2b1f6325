//! Exact ground-field arithmetic: prime fields `F_p` and the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest admissible prime modulus.
pub const MAX_PRIME: u64 = 1 << 31;

/// The ground field every computation takes place over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Prime(u64),
    Rational,
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not a prime in [2, 2^31]")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `F2`, `F3`, `F5`, `F<p>` or `Q`.
    pub fn parse(text: &str) -> Result<Field, Error> {
        let t = text.trim();
        if t == "Q" || t == "QQ" {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix('F')
            .or_else(|| t.strip_prefix("GF"))
            .ok_or_else(|| Error::invalid(format!("unknown field `{t}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::invalid(format!("unknown field `{t}`")))?;
        Field::prime(p)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    /// Number of elements, or `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(*p),
            Field::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let r = ((v % &m) + &m) % &m;
                Scalar::Mod {
                    value: r.to_u64().expect("residue fits"),
                    modulus: *p,
                }
            }
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
        }
    }

    /// The `index`-th element in a fixed enumeration of a finite field.
    pub fn element(&self, index: u64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod {
                value: index % p,
                modulus: *p,
            },
            Field::Rational => panic!("the rationals cannot be enumerated"),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Prime(p), Scalar::Mod { modulus, .. }) => p == modulus,
            (Field::Rational, Scalar::Rational(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a prime field or of the rationals.
///
/// Residues are kept in `[0, p)`; fractions are always reduced with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { value: u64, modulus: u64 },
    Rational(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
            Scalar::Rational(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rational(q) => q.is_one(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// The residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Index of this element in [`Field::element`] order.
    pub fn index(&self) -> u64 {
        self.residue().expect("finite field element")
    }

    /// Whether the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Mod { .. } => false,
            Scalar::Rational(q) => q.is_negative(),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn same_field(a: &Scalar, b: &Scalar) {
    debug_assert_eq!(a.field(), b.field(), "mixed ground fields");
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => panic!("mixed ground fields"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + modulus - b) % modulus,
                modulus: *modulus,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => panic!("mixed ground fields"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: a * b % modulus,
                modulus: *modulus,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => panic!("mixed ground fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Scalar::Rational(a) => Scalar::Rational(-a),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fields() {
        assert_eq!(Field::parse("F2").unwrap(), Field::Prime(2));
        assert_eq!(Field::parse("Q").unwrap(), Field::Rational);
        assert!(Field::parse("F4").is_err());
        assert!(Field::parse("R").is_err());
    }

    #[test]
    fn rationals_are_normalized() {
        let q = Field::Rational;
        let a = &q.from_i64(2) * &q.from_i64(3).inv().unwrap();
        let b = &q.from_i64(-4) * &q.from_i64(-6).inv().unwrap();
        assert_eq!(a, b);
        let z = &a - &b;
        assert_eq!(z, q.zero());
        if let Scalar::Rational(r) = (&q.from_i64(1) * &q.from_i64(-2).inv().unwrap()).clone() {
            assert!(r.denom().is_positive());
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(Field::Prime(7).zero().inv().is_none());
        assert!(Field::Rational.zero().inv().is_none());
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::Prime(2)),
            Just(Field::Prime(3)),
            Just(Field::Prime(5)),
            Just(Field::Prime(2147483647)),
            Just(Field::Rational),
        ]
    }

    fn elt(f: Field, n: i64, d: i64) -> Scalar {
        match f {
            Field::Rational => Scalar::Rational(BigRational::new(n.into(), d.into())),
            _ => f.from_i64(n),
        }
    }

    proptest! {
        #[test]
        fn field_axioms(f in field_strategy(), a in -50i64..50, b in -50i64..50, c in -50i64..50, d in 1i64..9) {
            let (x, y, z) = (elt(f, a, d), elt(f, b, d + 1), elt(f, c, 1));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x + &(-&x), f.zero());
            prop_assert_eq!(&x * &f.one(), x.clone());
            if let Some(inv) = x.inv() {
                prop_assert_eq!(&x * &inv, f.one());
            }
        }
    }
}
