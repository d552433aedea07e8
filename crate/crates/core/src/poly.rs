//! Polynomials over F_q and enumeration of monic irreducibles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gfq::{FieldElem, FieldSpec};
use crate::linalg::Matrix;

/// A polynomial in `z` over F_q, coefficients lowest degree first, with no
/// trailing zeros.
///
/// Ordering is by degree, then lexicographic on the coefficient vector read
/// from the leading coefficient down, so the constant term is compared last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (d, c.rep()) {
                (0, r) => write!(f, "{r}")?,
                (1, 1) => write!(f, "z")?,
                (1, r) => write!(f, "{r}z")?,
                (d, 1) => write!(f, "z^{d}")?,
                (d, r) => write!(f, "{r}z^{d}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Build from integer reps, lowest degree first.
    pub fn from_reps(field: &FieldSpec, reps: &[u32]) -> Result<Self> {
        let c = reps
            .iter()
            .map(|&r| field.elem(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(c))
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(FieldElem::ONE)
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Poly::new(vec![FieldElem::ZERO, FieldElem::ONE])
    }

    /// The polynomial `z - a`.
    pub fn linear(field: &FieldSpec, a: FieldElem) -> Self {
        Poly::new(vec![field.neg(a), FieldElem::ONE])
    }

    /// The polynomial `z - 1`.
    pub fn z_minus_one(field: &FieldSpec) -> Self {
        Poly::linear(field, FieldElem::ONE)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElem::ONE
    }

    pub fn coeff(&self, d: usize) -> FieldElem {
        self.coeffs.get(d).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn add(&self, other: &Poly, field: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, field: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: FieldElem, field: &FieldSpec) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, field: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize, field: &FieldSpec) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, field))
    }

    /// Quotient and remainder.
    pub fn divmod(&self, divisor: &Poly, field: &FieldSpec) -> Result<(Poly, Poly)> {
        let db = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let lead_inv = field.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - db];
        for shift in (0..quot.len()).rev() {
            let c = field.mul(rem[shift + db], lead_inv);
            quot[shift] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = field.sub(rem[shift + j], field.mul(c, b));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, divisor: &Poly, field: &FieldSpec) -> Result<Poly> {
        Ok(self.divmod(divisor, field)?.1)
    }

    pub fn make_monic(&self, field: &FieldSpec) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = field
            .inv(self.leading())
            .expect("nonzero leading coefficient");
        self.scale(inv, field)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly, field: &FieldSpec) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, field).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.make_monic(field)
    }

    pub fn eval(&self, x: FieldElem, field: &FieldSpec) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// f(A) for a square matrix A, by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix, field: &FieldSpec) -> Result<Matrix> {
        if a.rows() != a.cols() {
            return Err(Error::DimensionMismatch(format!(
                "cannot evaluate a polynomial at a {}x{} matrix",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let mut acc = Matrix::zero(n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a, field)?.add(&Matrix::scalar(n, c), field)?;
        }
        Ok(acc)
    }

    /// Irreducibility of a monic polynomial of degree at least 1.
    pub fn is_irreducible(&self, field: &FieldSpec) -> Result<bool> {
        let d = match self.degree() {
            Some(d) if d >= 1 && self.is_monic() => d,
            _ => return Err(Error::NotMonic),
        };
        if d == 1 {
            return Ok(true);
        }
        if d <= 3 {
            return Ok(field.elements().all(|x| !self.eval(x, field).is_zero()));
        }
        let table = irreducibles_up_to(field, d / 2);
        for level in &table {
            for g in level {
                if self.rem(g, field)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Companion matrix: ones on the subdiagonal, last column `-c_0, ..., -c_{d-1}`.
    pub fn companion_matrix(&self, field: &FieldSpec) -> Result<Matrix> {
        let d = match self.degree() {
            Some(d) if d >= 1 && self.is_monic() => d,
            _ => return Err(Error::NotMonic),
        };
        let mut m = Matrix::zero(d, d);
        for i in 1..d {
            m.set(i, i - 1, FieldElem::ONE);
        }
        for i in 0..d {
            m.set(i, d - 1, field.neg(self.coeff(i)));
        }
        Ok(m)
    }
}

/// All monic polynomials of degree exactly `d`, in polynomial order.
pub fn monic_polys(field: &FieldSpec, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = u64::from(field.q());
    let total = q.pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(field.elem((idx % q) as u32).expect("digit below q"));
            idx /= q;
        }
        c.push(FieldElem::ONE);
        Poly::new(c)
    })
}

/// Monic irreducibles of degrees `1..=max_deg`; entry `d - 1` holds degree `d`.
pub fn irreducibles_up_to(field: &FieldSpec, max_deg: usize) -> Vec<Vec<Poly>> {
    let mut table: Vec<Vec<Poly>> = Vec::with_capacity(max_deg);
    for d in 1..=max_deg {
        let level: Vec<Poly> = if d == 1 {
            monic_polys(field, 1).collect()
        } else if d <= 3 {
            monic_polys(field, d)
                .filter(|f| field.elements().all(|x| !f.eval(x, field).is_zero()))
                .collect()
        } else {
            monic_polys(field, d)
                .filter(|f| {
                    table[..d / 2]
                        .iter()
                        .flatten()
                        .all(|g| !f.rem(g, field).expect("g nonzero").is_zero())
                })
                .collect()
        };
        table.push(level);
    }
    table
}

/// Monic irreducibles of degree exactly `d` in polynomial order, optionally
/// omitting `z`.
pub fn monic_irreducibles(field: &FieldSpec, d: usize, exclude_z: bool) -> Vec<Poly> {
    if d == 0 {
        return Vec::new();
    }
    let mut v = irreducibles_up_to(field, d).pop().unwrap_or_default();
    if exclude_z {
        let z = Poly::z();
        v.retain(|f| *f != z);
    }
    v
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `d` over F_q (necklace formula).
pub fn irreducible_count(q: u32, d: usize) -> BigUint {
    if d == 0 {
        return BigUint::zero();
    }
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        total += BigInt::from(mobius(e)) * num_traits::pow(qb.clone(), d / e);
    }
    let count = total / BigInt::from(d);
    count.to_biguint().expect("count is non-negative")
}

/// Irreducible count as a machine integer, for the small cases that fit.
pub fn irreducible_count_u64(q: u32, d: usize) -> Option<u64> {
    irreducible_count(q, d).to_u64()
}
