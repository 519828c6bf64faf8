//! Exact scalars: elements of GF(p) for a prime p < 2^16, or arbitrary
//! precision rationals.
//!
//! A [`Scalar`] knows which field it belongs to (GF(p) elements carry their
//! modulus). Containers such as matrices validate at construction time that
//! every entry matches their [`FieldDesc`] and report [`Error::FieldMismatch`]
//! otherwise; once inside the engine, arithmetic therefore never mixes fields.
//! The raw operator impls on `Scalar` document this contract by panicking on a
//! mismatch, which is always an engine bug, never a consequence of user input.
//!
//! GF(p) values are kept canonical in `0..p`; rationals are kept reduced with
//! positive denominator (maintained by `num-rational`). Equality of scalars is
//! therefore structural equality.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive bound 2^16 keeps all GF(p)
/// arithmetic inside u64 without overflow).
pub const MAX_PRIME: u64 = 65_535;

/// Description of the base field: the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldDesc {
    /// The field of rational numbers.
    Rat,
    /// The prime field GF(p); the modulus is validated by [`FieldDesc::gf`].
    Gf(u64),
}

impl FieldDesc {
    /// GF(p) for a prime `p` with `2 <= p <= 65535`.
    pub fn gf(p: u64) -> Result<FieldDesc> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(FieldDesc::Gf(p))
    }

    /// The additive identity of this field.
    pub fn zero(&self) -> Scalar {
        match *self {
            FieldDesc::Rat => Scalar::Rat(BigRational::zero()),
            FieldDesc::Gf(p) => Scalar::Gf { v: 0, p },
        }
    }

    /// The multiplicative identity of this field.
    pub fn one(&self) -> Scalar {
        match *self {
            FieldDesc::Rat => Scalar::Rat(BigRational::one()),
            FieldDesc::Gf(p) => Scalar::Gf { v: 1, p },
        }
    }

    /// The canonical image of an integer in this field.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldDesc::Rat => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldDesc::Gf(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Gf { v: r, p }
            }
        }
    }

    /// Exact rational `num/den`; only meaningful for [`FieldDesc::Rat`].
    /// Over GF(p) the fraction is evaluated there (den must be a unit).
    pub fn from_fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DimMismatch(String::from("zero denominator")));
        }
        match *self {
            FieldDesc::Rat => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldDesc::Gf(_) => {
                let d = self.from_i64(den);
                let inv = d
                    .inv()
                    .ok_or_else(|| Error::DimMismatch(String::from("denominator is 0 mod p")))?;
                Ok(&self.from_i64(num) * &inv)
            }
        }
    }

    /// Characteristic: 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDesc::Rat => 0,
            FieldDesc::Gf(p) => p,
        }
    }

    /// Number of elements for a finite field, `None` over the rationals.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldDesc::Rat => None,
            FieldDesc::Gf(p) => Some(p),
        }
    }

    /// Iterator over all field elements (finite fields only).
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            FieldDesc::Rat => None,
            FieldDesc::Gf(p) => Some((0..p).map(move |v| Scalar::Gf { v, p })),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rat => write!(f, "QQ"),
            FieldDesc::Gf(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element. See the module docs for the canonicity contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    /// A reduced rational.
    Rat(BigRational),
    /// An element of GF(p), canonical in `0..p`.
    Gf { v: u64, p: u64 },
}

impl Scalar {
    /// The field this element lives in.
    pub fn field(&self) -> FieldDesc {
        match self {
            Scalar::Rat(_) => FieldDesc::Rat,
            Scalar::Gf { p, .. } => FieldDesc::Gf(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gf { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Gf { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Gf { v, p } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar::Gf { v: mod_inv(*v, *p), p: *p })
                }
            }
        }
    }
}

fn same_prime(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "mixed GF(p) moduli reached scalar arithmetic (engine bug)");
    a
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Gf { v: a, p }, Scalar::Gf { v: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Gf { v: (a + b) % p, p }
            }
            _ => panic!("mixed-field scalar arithmetic (engine bug)"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Gf { v: a, p }, Scalar::Gf { v: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Gf { v: (a + p - b) % p, p }
            }
            _ => panic!("mixed-field scalar arithmetic (engine bug)"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Gf { v: a, p }, Scalar::Gf { v: b, p: q }) => {
                let p = same_prime(*p, *q);
                Scalar::Gf { v: (a * b) % p, p }
            }
            _ => panic!("mixed-field scalar arithmetic (engine bug)"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Gf { v, p } => Scalar::Gf { v: (p - v) % p, p: *p },
        }
    }
}

/// Total order used only for deterministic sorting of reported data.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Gf { v: a, p }, Scalar::Gf { v: b, p: q }) => p.cmp(q).then(a.cmp(b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Gf { .. }, Scalar::Rat(_)) => Ordering::Less,
            (Scalar::Rat(_), Scalar::Gf { .. }) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders `v` over GF(p) and `p/q` (or `p` when integral) over the rationals.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Gf { v, .. } => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.numer().is_negative() {
                    // keep the sign on the numerator: -1/2, never 1/-2
                    write!(f, "{}/{}", r.numer(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
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

/// Inverse of `a` mod prime `p` by extended Euclid; `a` must be nonzero mod p.
fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of a non-unit");
    (t.rem_euclid(p as i128)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn gf_rejects_non_primes() {
        assert!(FieldDesc::gf(2).is_ok());
        assert!(FieldDesc::gf(65_521).is_ok()); // largest prime below 2^16
        for bad in [0u64, 1, 4, 9, 65_536, 100_000] {
            assert!(FieldDesc::gf(bad).is_err(), "{bad} accepted");
        }
    }

    #[test]
    fn gf7_field_axioms_exhaustive() {
        let f = FieldDesc::gf(7).unwrap();
        let els: alloc::vec::Vec<Scalar> = f.elements().unwrap().collect();
        for a in &els {
            for b in &els {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                for c in &els {
                    assert_eq!(&(a + b) + c, a + &(b + c));
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                }
            }
            assert_eq!(&(a + &f.zero()), a);
            assert_eq!(&(a * &f.one()), a);
            assert!((a - a).is_zero());
            if !a.is_zero() {
                assert!((&a.inv().unwrap() * a).is_one());
            }
        }
    }

    #[test]
    fn rational_arithmetic_reduces() {
        let f = FieldDesc::Rat;
        let half = f.from_fraction(1, 2).unwrap();
        let third = f.from_fraction(1, 3).unwrap();
        let sum = &half + &third;
        assert_eq!(format!("{sum}"), "5/6");
        let neg = f.from_fraction(-2, 4).unwrap();
        assert_eq!(format!("{neg}"), "-1/2");
        let four = f.from_fraction(8, 2).unwrap();
        assert_eq!(format!("{four}"), "4");
        assert!((&half - &half).is_zero());
        assert!((&half * &f.from_i64(2)).is_one());
    }

    #[test]
    fn inverse_matches_fermat_on_gf_65521() {
        let p = 65_521u64;
        for a in [1u64, 2, 3, 12345, 65_520] {
            let s = Scalar::Gf { v: a, p };
            let inv = s.inv().unwrap();
            assert!((&s * &inv).is_one());
        }
        assert_eq!(Scalar::Gf { v: 0, p }.inv(), None);
    }
}
