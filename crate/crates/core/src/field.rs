//! Prime fields and the scalar trait the rest of the crate is generic over.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{Inv, One, Zero};
use rand::Rng;

/// Scalar type for exact graded linear algebra.
///
/// Every computation in the crate (polynomials, graded pieces, ranks, complexes)
/// is written against this trait. Concrete instances are the prime fields
/// [`Fp`]; the runtime prime is chosen via [`with_prime!`](crate::with_prime).
pub trait Field:
    Copy
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn characteristic() -> u64;
    /// Canonical representative in `[0, p)`.
    fn to_u64(self) -> u64;
    /// Uniform sample over the whole field.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

/// The prime field GF(P). `P` must be an odd prime below 2^31.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub const MODULUS: u32 = P;

    #[inline]
    pub fn new(v: u64) -> Self {
        Fp((v % P as u64) as u32)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // symmetric representative reads better in printed polynomials
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u32> AddAssign for Fp<P> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u32> SubAssign for Fp<P> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u32> MulAssign for Fp<P> {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u32> Zero for Fp<P> {
    #[inline]
    fn zero() -> Self {
        Fp(0)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    #[inline]
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u32> Inv for Fp<P> {
    type Output = Self;
    fn inv(self) -> Self {
        self.inverse().expect("zero has no inverse")
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inverse(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // extended Euclid on (a, P)
        let (mut r0, mut r1) = (P as i64, self.0 as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "modulus is not prime");
        Some(Fp(s0.rem_euclid(P as i64) as u32))
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    fn characteristic() -> u64 {
        P as u64
    }

    fn to_u64(self) -> u64 {
        self.0 as u64
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
}

/// Default coefficient field modulus.
pub const DEFAULT_PRIME: u64 = 32003;

/// Primes that can be selected at runtime (CLI flag / `DETREP_PRIME`).
pub const SUPPORTED_PRIMES: [u64; 6] = [101, 1009, 10007, 32003, 65521, 2147483647];

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Runs `$body` with the type alias `$F` bound to `Fp<p>` for a runtime prime `p`.
///
/// Evaluates to `Ok(body)` for a supported prime and to
/// `Err(Error::UnsupportedPrime(p))` otherwise.
#[macro_export]
macro_rules! with_prime {
    ($p:expr, $F:ident => $body:expr) => {{
        match $p {
            101 => {
                type $F = $crate::field::Fp<101>;
                Ok($body)
            }
            1009 => {
                type $F = $crate::field::Fp<1009>;
                Ok($body)
            }
            10007 => {
                type $F = $crate::field::Fp<10007>;
                Ok($body)
            }
            32003 => {
                type $F = $crate::field::Fp<32003>;
                Ok($body)
            }
            65521 => {
                type $F = $crate::field::Fp<65521>;
                Ok($body)
            }
            2147483647 => {
                type $F = $crate::field::Fp<2147483647>;
                Ok($body)
            }
            other => Err($crate::Error::UnsupportedPrime(other)),
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = Fp<32003>;

    #[test]
    fn inverses_multiply_to_one() {
        for v in [1u64, 2, 3, 17, 32002, 16001] {
            let a = F::new(v);
            assert_eq!(a * a.inverse().unwrap(), F::one());
        }
        assert!(F::zero().inverse().is_none());
    }

    #[test]
    fn negation_and_subtraction_agree() {
        let a = F::new(5);
        let b = F::new(32000);
        assert_eq!(a - b, a + (-b));
        assert_eq!(F::from_i64(-1), F::new(32002));
        assert_eq!(format!("{}", F::from_i64(-3)), "-3");
    }

    #[test]
    fn supported_primes_are_prime() {
        for p in SUPPORTED_PRIMES {
            assert!(is_prime(p), "{p}");
        }
        assert!(!is_prime(32001));
    }

    #[test]
    fn fermat_little_theorem() {
        let a = Fp::<65521>::new(12345);
        assert_eq!(a.pow(65520), Fp::<65521>::one());
        let big = Fp::<2147483647>::new(2147483646);
        assert_eq!(big * big, Fp::<2147483647>::one());
    }
}
