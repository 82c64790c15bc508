//! Exact arithmetic in the cyclotomic field ℚ[ω], ω = e^{iπ/4}.
//!
//! Elements are stored on the ℚ-basis {1, ω, ω², ω³}, reduced with ω⁴ = −1.
//! The representation is unique, so structural equality is field equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element a0 + a1·ω + a2·ω² + a3·ω³ of ℚ[ω].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    c: [BigRational; 4],
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn new(a0: BigRational, a1: BigRational, a2: BigRational, a3: BigRational) -> Self {
        Scalar { c: [a0, a1, a2, a3] }
    }

    /// Builds a scalar from (numerator, denominator) pairs.
    ///
    /// Panics if a denominator is zero.
    pub fn from_ratios(c: [(i64, i64); 4]) -> Self {
        Scalar {
            c: [rat(c[0].0, c[0].1), rat(c[1].0, c[1].1), rat(c[2].0, c[2].1), rat(c[3].0, c[3].1)],
        }
    }

    pub fn zero() -> Self {
        Scalar { c: [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar { c: [q, BigRational::zero(), BigRational::zero(), BigRational::zero()] }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn half() -> Self {
        Self::ratio(1, 2)
    }

    /// ω^k for any integer k.
    pub fn omega_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut s = Scalar::zero();
        if k < 4 {
            s.c[k] = BigRational::one();
        } else {
            s.c[k - 4] = -BigRational::one();
        }
        s
    }

    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    /// The imaginary unit, stored as ω².
    pub fn i() -> Self {
        Self::omega_pow(2)
    }

    /// √2 = ω − ω³.
    pub fn sqrt2() -> Self {
        Self::omega() - Self::omega_pow(3)
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Complex conjugate. Since ω̄ = ω⁷ = −ω³, (a0, a1, a2, a3) ↦ (a0, −a3, −a2, −a1).
    pub fn conj(&self) -> Self {
        Scalar { c: [self.c[0].clone(), -self.c[3].clone(), -self.c[2].clone(), -self.c[1].clone()] }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Real part (x + x̄)/2, exact.
    pub fn re(&self) -> Self {
        (self + &self.conj()) * Scalar::half()
    }

    /// Imaginary part (x − x̄)/(2i), exact and real.
    pub fn im(&self) -> Self {
        (self - &self.conj()) * Scalar::from_ratios([(0, 1), (0, 1), (-1, 2), (0, 1)])
    }

    /// |x|² = x·x̄.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    /// For a real element, writes it as p + q√2 with p, q rational.
    pub fn real_parts(&self) -> Option<(BigRational, BigRational)> {
        if !self.is_real() {
            return None;
        }
        Some((self.c[0].clone(), self.c[1].clone()))
    }

    /// Exact sign of a real element (−1, 0 or 1); `None` when not real.
    pub fn real_sign(&self) -> Option<i8> {
        let (p, q) = self.real_parts()?;
        let sign = |x: &BigRational| -> i8 {
            if x.is_zero() {
                0
            } else if x.is_positive() {
                1
            } else {
                -1
            }
        };
        let (sp, sq) = (sign(&p), sign(&q));
        if sp == 0 {
            return Some(sq);
        }
        if sq == 0 || sp == sq {
            return Some(sp);
        }
        // p and q√2 have opposite signs: compare p² with 2q².
        let p2 = &p * &p;
        let q2 = &q * &q * BigRational::from_integer(BigInt::from(2));
        Some(if p2 > q2 {
            sp
        } else if p2 < q2 {
            sq
        } else {
            0
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Multiply by the three non-trivial Galois conjugates; the product is rational.
        // σ_k : ω ↦ ω^k for k ∈ {3, 5, 7}.
        let s3 = self.galois(3);
        let s5 = self.galois(5);
        let s7 = self.galois(7);
        let others = &(&s3 * &s5) * &s7;
        let norm = self * &others;
        debug_assert!(norm.c[1..].iter().all(Zero::is_zero));
        let n = norm.c[0].clone();
        Ok(Scalar { c: others.c.map(|x| x / &n) })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    fn galois(&self, k: i64) -> Self {
        let mut out = Scalar::zero();
        for (j, a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                out += Scalar::omega_pow(j as i64 * k) * Scalar::from_rational(a.clone());
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Double-precision embedding a0 + a1·e^{iπ/4} + a2·i + a3·e^{3iπ/4}.
    pub fn to_complex(&self) -> Result<Complex64> {
        let mut f = [0.0f64; 4];
        for (k, a) in self.c.iter().enumerate() {
            let v = a.to_f64().ok_or(Error::Overflow)?;
            if !v.is_finite() {
                return Err(Error::Overflow);
            }
            f[k] = v;
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Ok(Complex64::new(f[0] + h * f[1] - h * f[3], h * f[1] + f[2] + h * f[3]))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser { src: text.as_bytes(), pos: 0 }.scalar()
    }

    fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        let mut acc: [BigRational; 8] = Default::default();
        let mut any = false;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] += a * b;
                any = true;
            }
        }
        if !any {
            return Scalar::zero();
        }
        let [a0, a1, a2, a3, a4, a5, a6, _] = acc;
        Scalar { c: [a0 - a4, a1 - a5, a2 - a6, a3] }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Scalar {
    c: [&a.c[0] + &b.c[0], &a.c[1] + &b.c[1], &a.c[2] + &b.c[2], &a.c[3] + &b.c[3]]
});
forward_binop!(Sub, sub, |a, b| Scalar {
    c: [&a.c[0] - &b.c[0], &a.c[1] - &b.c[1], &a.c[2] - &b.c[2], &a.c[3] - &b.c[3]]
});
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (x, y) in self.c.iter_mut().zip(rhs.c.iter()) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (x, y) in self.c.iter_mut().zip(rhs.c.iter()) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { c: self.c.map(|x| -x) }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.clone().neg()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let unit = match k {
                0 => "",
                1 => "w",
                2 => "w^2",
                _ => "w^3",
            };
            if k == 0 || !mag.is_one() {
                out.push_str(&fmt_rational(&mag));
            }
            out.push_str(unit);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, column: self.pos + 1, message: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn scalar(&mut self) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        let mut first = true;
        while self.pos < self.src.len() || first {
            let negative = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                _ if first => false,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let t = self.term()?;
            if negative {
                acc -= &t;
            } else {
                acc += &t;
            }
        }
        Ok(acc)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn term(&mut self) -> Result<Scalar> {
        let coeff = match self.digits() {
            Some(n) => {
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits().ok_or_else(|| self.err("expected denominator"))?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Some(BigRational::new(n, d))
                } else {
                    Some(BigRational::from_integer(n))
                }
            }
            None => None,
        };
        if self.peek() == Some(b'w') {
            self.pos += 1;
            let mut power = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                power = match self.peek() {
                    Some(b'2') => 2,
                    Some(b'3') => 3,
                    _ => return Err(self.err("expected exponent 2 or 3")),
                };
                self.pos += 1;
            }
            let mut s = Scalar::zero();
            s.c[power] = coeff.unwrap_or_else(BigRational::one);
            Ok(s)
        } else {
            match coeff {
                Some(q) => Ok(Scalar::from_rational(q)),
                None => Err(self.err("expected rational or 'w'")),
            }
        }
    }
}
