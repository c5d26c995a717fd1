use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational number; always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Scalars that exact Gaussian elimination and polynomial evaluation can run over.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Image of an integer under the canonical ring map `Z -> F`.
    fn from_bigint(v: &BigInt) -> Self;

    /// Image of a rational, or `None` if its denominator vanishes in `F`.
    fn from_rational(v: &Rational) -> Option<Self> {
        let den = Self::from_bigint(v.denom());
        if den.is_zero() {
            return None;
        }
        Some(Self::from_bigint(v.numer()).mul(&den.inv()))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(v: &Rational) -> Option<Self> {
        Some(v.clone())
    }
}

/// The Mersenne prime 2^31 - 1, modulus of the screening field.
pub const MODULUS: u64 = 2_147_483_647;

/// Element of the prime field `F_p`, `p = 2^31 - 1`, stored reduced in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp(u32);

impl Fp {
    #[inline]
    pub fn new(v: u64) -> Self {
        Fp((v % MODULUS) as u32)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    fn reduce(v: u64) -> u32 {
        // v < 2^62; fold twice using 2^31 ≡ 1 (mod p).
        let v = (v & MODULUS) + (v >> 31);
        let v = (v & MODULUS) + (v >> 31);
        if v >= MODULUS {
            (v - MODULUS) as u32
        } else {
            v as u32
        }
    }

    #[inline]
    pub fn mul_fast(self, rhs: Fp) -> Fp {
        Fp(Self::reduce(self.0 as u64 * rhs.0 as u64))
    }

    #[inline]
    pub fn add_fast(self, rhs: Fp) -> Fp {
        let s = self.0 as u64 + rhs.0 as u64;
        Fp(if s >= MODULUS { s - MODULUS } else { s } as u32)
    }

    #[inline]
    pub fn sub_fast(self, rhs: Fp) -> Fp {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp((self.0 as u64 + MODULUS - rhs.0 as u64) as u32)
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_fast(*rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub_fast(*rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_fast(*rhs)
    }
    fn neg(&self) -> Self {
        Fp(0).sub_fast(*self)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        Field::pow(self, (MODULUS - 2) as u32)
    }
    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(MODULUS as i64);
        Fp(r as u32)
    }
    fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(MODULUS);
        let r = v.mod_floor(&m);
        Fp(r.to_u32().expect("reduced value fits"))
    }
}
