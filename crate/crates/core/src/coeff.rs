//! Exact coefficient rings for power series: rationals, and polynomials in a
//! single weight variable `t` over the rationals.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring containing the rationals.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn scale(&self, r: &BigRational) -> Self;

    /// `t -> t^k` on weighted rings; the identity on rationals.
    fn adams(&self, k: usize) -> Self;

    /// The weight variable `t`, if the ring has one.
    fn weight_marker() -> Option<Self>;

    /// Embed a weight inventory; `None` when the ring cannot represent it.
    fn from_weight(w: &TPoly) -> Option<Self>;

    /// The value as a rational, if it is one.
    fn to_rational(&self) -> Option<BigRational>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()))
    }

    fn from_biguint(n: &BigUint) -> Self {
        Self::from_bigint(&BigInt::from(n.clone()))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn div_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::new(BigInt::one(), n.clone()))
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
    fn adams(&self, _k: usize) -> Self {
        self.clone()
    }
    fn weight_marker() -> Option<Self> {
        None
    }
    fn from_weight(w: &TPoly) -> Option<Self> {
        w.as_constant()
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// A polynomial in `t` with rational coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<BigRational>,
}

impl TPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn constant(c: BigRational) -> Self {
        TPoly::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![<BigRational as Zero>::zero(); k];
        v.push(c);
        TPoly::new(v)
    }

    pub fn t() -> Self {
        TPoly::monomial(<BigRational as One>::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(<BigRational as Zero>::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(<BigRational as Zero>::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Value at `t = c`.
    pub fn eval(&self, c: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(<BigRational as Zero>::zero(), |acc, a| acc * c + a)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            first = false;
            match (k, One::is_one(&mag)) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "t")?,
                (_, false) => write!(f, "{mag}*t")?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl Coeff for TPoly {
    fn zero() -> Self {
        TPoly::default()
    }
    fn one() -> Self {
        TPoly::constant(<BigRational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        TPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        TPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return TPoly::default();
        }
        let mut out =
            vec![<BigRational as Zero>::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }
    fn neg(&self) -> Self {
        TPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn from_rational(r: &BigRational) -> Self {
        TPoly::constant(r.clone())
    }
    fn scale(&self, r: &BigRational) -> Self {
        TPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }
    fn adams(&self, k: usize) -> Self {
        let mut out =
            vec![<BigRational as Zero>::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        TPoly::new(out)
    }
    fn weight_marker() -> Option<Self> {
        Some(TPoly::t())
    }
    fn from_weight(w: &TPoly) -> Option<Self> {
        Some(w.clone())
    }
    fn to_rational(&self) -> Option<BigRational> {
        self.as_constant()
    }
}
