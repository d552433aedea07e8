//! Truncated power series in one variable `x` over an exact coefficient ring.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// Coefficients of `x^0 ..= x^order`; nothing beyond `order` is ever read.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<C: Coeff> {
    order: usize,
    coeffs: Vec<C>,
}

pub type RationalSeries = PowerSeries<BigRational>;

impl<C: Coeff> PowerSeries<C> {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            order,
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// `c * x^k` (zero if `k > order`).
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// From leading coefficients; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::zero());
        PowerSeries { order, coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        PowerSeries {
            order,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_fn(self.order, |n| {
            self.coeffs[n].add(&other.coeffs[n])
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_fn(self.order, |n| {
            self.coeffs[n].sub(&other.coeffs[n])
        }))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=self.order - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_fn(self.order, |n| self.coeffs[n].mul(c))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::from_fn(self.order, |n| self.coeffs[n].scale(r))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Self::from_fn(self.order, |n| f(&self.coeffs[n]))
    }

    /// The same series with its constant term removed.
    pub fn without_constant(&self) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = C::zero();
        s
    }

    /// Re-truncate at a different order (padding with zeros).
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.clone())
    }

    /// `a(x^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        let mut out = Self::zero(self.order);
        for n in (0..=self.order).step_by(k) {
            out.coeffs[n] = self.coeffs[n / k].clone();
        }
        out
    }

    /// `exp(a)` for `a` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm);
        }
        let mut b = Self::zero(self.order);
        b.coeffs[0] = C::one();
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&b.coeffs[n - k]).scale(&int(k)));
            }
            b.coeffs[n] = acc.div_int(&BigInt::from(n));
        }
        Ok(b)
    }

    /// `log(a)` for `a` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantTerm);
        }
        let mut b = Self::zero(self.order);
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..n {
                acc = acc.add(&b.coeffs[k].mul(&self.coeffs[n - k]).scale(&int(k)));
            }
            b.coeffs[n] = self.coeffs[n].sub(&acc.div_int(&BigInt::from(n)));
        }
        Ok(b)
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn reciprocal(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Unsupported(
                "reciprocal of a series whose constant term is not 1".into(),
            ));
        }
        let mut b = Self::zero(self.order);
        b.coeffs[0] = C::one();
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                acc = acc.add(&self.coeffs[k].mul(&b.coeffs[n - k]));
            }
            b.coeffs[n] = acc.neg();
        }
        Ok(b)
    }

    /// Apply `t -> t^k` to every coefficient.
    pub fn adams(&self, k: usize) -> Self {
        self.map(|c| c.adams(k))
    }

    /// `[{"n": .., "coeff": ".."}, ...]` over every degree.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| json!({"n": n, "coeff": c.to_string()}))
                .collect(),
        )
    }
}

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl<C: Coeff> fmt::Display for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s[1..].contains(['+', '-']);
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            let body = if compound { format!("({body})") } else { body };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = body == "1";
            match n {
                0 => write!(f, "{body}")?,
                _ => {
                    if !unit {
                        write!(f, "{body}*")?;
                    }
                    write!(f, "x")?;
                    if n > 1 {
                        write!(f, "^{n}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PowerSeries<BigRational> {
    /// Embed a rational series into another coefficient ring.
    pub fn map_into<C: Coeff>(&self) -> PowerSeries<C> {
        PowerSeries::from_coeffs(
            self.order(),
            self.coeffs().iter().map(C::from_rational).collect(),
        )
    }

    /// The coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs()
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// The coefficients as machine integers, if they all fit.
    pub fn i64_coeffs(&self) -> Option<Vec<i64>> {
        self.integer_coeffs()?
            .iter()
            .map(ToPrimitive::to_i64)
            .collect()
    }
}

/// `prod_{n >= 1} (1 - x^n)^(-a_n)`; `exponents[n]` is `a_n`, index 0 ignored.
pub fn euler_product(exponents: &[BigInt], order: usize) -> Result<RationalSeries> {
    let mut acc = RationalSeries::one(order);
    for (n, a) in exponents.iter().enumerate().take(order + 1).skip(1) {
        if a.is_negative() {
            return Err(Error::Unsupported(format!(
                "negative Euler exponent {a} at degree {n}"
            )));
        }
        if a.is_zero() {
            continue;
        }
        // (1 - x^n)^(-a) = sum_k C(a + k - 1, k) x^(nk)
        let mut factor = RationalSeries::zero(order);
        let mut binom = BigInt::one();
        for k in 0..=order / n {
            factor.coeffs[n * k] = BigRational::from_integer(binom.clone());
            binom = binom * (a + BigInt::from(k)) / BigInt::from(k + 1);
        }
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// `prod_{r >= 1} (1 - x^r) / (1 - q x^r)`, truncated.
pub fn aut_type_product(q: u32, order: usize) -> RationalSeries {
    let mut acc = RationalSeries::one(order);
    let qb = BigInt::from(q);
    for r in 1..=order {
        let mut num = RationalSeries::one(order);
        num.coeffs[r] = -<BigRational as One>::one();
        let den_inv = RationalSeries::from_fn(order, |n| {
            if n % r == 0 {
                BigRational::from_integer(num_traits::pow(qb.clone(), n / r))
            } else {
                <BigRational as Zero>::zero()
            }
        });
        acc = acc
            .mul(&num)
            .and_then(|s| s.mul(&den_inv))
            .expect("same order");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::TPoly;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rs(order: usize, v: &[(i64, i64)]) -> RationalSeries {
        RationalSeries::from_coeffs(order, v.iter().map(|&(n, d)| r(n, d)).collect())
    }

    fn geometric(order: usize) -> RationalSeries {
        RationalSeries::from_fn(order, |_| <BigRational as One>::one())
    }

    /// Partition numbers by the standard part-size dynamic program.
    fn partition_counts(n: usize) -> Vec<u64> {
        let mut p = vec![0u64; n + 1];
        p[0] = 1;
        for part in 1..=n {
            for m in part..=n {
                p[m] += p[m - part];
            }
        }
        p
    }

    #[test]
    fn product_examples() {
        let one_minus_x = rs(6, &[(1, 1), (-1, 1)]);
        assert_eq!(
            geometric(6).mul(&one_minus_x).unwrap(),
            RationalSeries::one(6)
        );
        let s = rs(4, &[(1, 1), (2, 1), (2, 3)]);
        assert_eq!(s.mul(&RationalSeries::one(4)).unwrap(), s);
        assert_eq!(
            s.add(&RationalSeries::zero(5)),
            Err(Error::OrderMismatch(4, 5))
        );
    }

    #[test]
    fn exp_examples() {
        let x = RationalSeries::monomial(<BigRational as One>::one(), 1, 6);
        let e = x.exp().unwrap();
        let mut fact = BigInt::one();
        for n in 0..=6 {
            if n > 0 {
                fact *= BigInt::from(n);
            }
            assert_eq!(*e.coeff(n), BigRational::new(BigInt::one(), fact.clone()));
        }
        // sum_{n>=1} x^n / gamma_n over F_2
        let v = rs(3, &[(0, 1), (1, 1), (1, 6), (1, 168)]);
        assert_eq!(
            v.exp().unwrap(),
            rs(3, &[(1, 1), (1, 1), (2, 3), (57, 168)])
        );
        let tx = PowerSeries::<TPoly>::monomial(TPoly::t(), 1, 4);
        let et = tx.exp().unwrap();
        assert_eq!(*et.coeff(3), TPoly::monomial(r(1, 6), 3));
        assert_eq!(RationalSeries::one(3).exp(), Err(Error::ExpConstantTerm));
    }

    #[test]
    fn log_examples() {
        let l = geometric(6).log().unwrap();
        assert_eq!(
            l,
            RationalSeries::from_fn(6, |n| if n == 0 { r(0, 1) } else { r(1, n as i64) })
        );
        let x = RationalSeries::monomial(<BigRational as One>::one(), 1, 6);
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
        assert_eq!(RationalSeries::zero(3).log(), Err(Error::LogConstantTerm));
        let parts = euler_product(&vec![BigInt::one(); 9], 8).unwrap();
        assert_eq!(parts.log().unwrap().exp().unwrap(), parts);
    }

    #[test]
    fn substitution_examples() {
        let s = rs(4, &[(1, 1), (1, 1)]);
        assert_eq!(s.substitute_power(2), rs(4, &[(1, 1), (0, 1), (1, 1)]));
        let g3 = geometric(7).substitute_power(3);
        assert_eq!(
            g3,
            RationalSeries::from_fn(7, |n| if n % 3 == 0 { r(1, 1) } else { r(0, 1) })
        );
    }

    #[test]
    fn euler_examples() {
        let parts = euler_product(&vec![BigInt::one(); 7], 6).unwrap();
        let expect: Vec<BigRational> = partition_counts(6)
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        assert_eq!(parts.coeffs(), &expect[..]);
        let mut ex = vec![BigInt::zero(); 6];
        ex[1] = BigInt::from(2);
        let two = euler_product(&ex, 5).unwrap();
        assert_eq!(two, RationalSeries::from_fn(5, |n| r(n as i64 + 1, 1)));
        assert_eq!(euler_product(&[], 5).unwrap(), RationalSeries::one(5));
    }

    #[test]
    fn aut_product_examples() {
        assert_eq!(
            aut_type_product(2, 3),
            rs(3, &[(1, 1), (1, 1), (3, 1), (6, 1)])
        );
        assert_eq!(aut_type_product(3, 2), rs(2, &[(1, 1), (2, 1), (8, 1)]));
    }

    #[test]
    fn display() {
        assert_eq!(
            rs(3, &[(1, 1), (1, 1), (2, 3), (19, 56)]).to_string(),
            "1 + x + 2/3*x^2 + 19/56*x^3"
        );
        assert_eq!(rs(2, &[(0, 1), (-1, 2)]).to_string(), "-1/2*x");
        assert_eq!(RationalSeries::zero(2).to_string(), "0");
        let w = PowerSeries::<TPoly>::from_coeffs(
            2,
            vec![
                TPoly::one(),
                TPoly::t(),
                TPoly::new(vec![r(0, 1), r(1, 6), r(1, 2)]),
            ],
        );
        assert_eq!(w.to_string(), "1 + t*x + (1/2*t^2+1/6*t)*x^2");
    }

    fn arb_series(order: usize) -> impl Strategy<Value = RationalSeries> {
        prop::collection::vec((-6i64..6, 1i64..5), order + 1).prop_map(move |v| rs(order, &v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(a in arb_series(5), b in arb_series(5), c in arb_series(5)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        }

        #[test]
        fn exp_log_round_trip(a in arb_series(6)) {
            let a0 = a.without_constant();
            prop_assert_eq!(a0.exp().unwrap().log().unwrap(), a0.clone());
            let b = a0.exp().unwrap();
            prop_assert_eq!(b.log().unwrap().exp().unwrap(), b);
        }

        #[test]
        fn exp_is_a_homomorphism(a in arb_series(5), b in arb_series(5)) {
            let (a, b) = (a.without_constant(), b.without_constant());
            prop_assert_eq!(
                a.add(&b).unwrap().exp().unwrap(),
                a.exp().unwrap().mul(&b.exp().unwrap()).unwrap()
            );
        }

        #[test]
        fn euler_matches_exp_form(ex in prop::collection::vec(0i64..4, 9)) {
            let order = 8;
            let exps: Vec<BigInt> = ex.iter().map(|&e| BigInt::from(e)).collect();
            let lhs = euler_product(&exps, order).unwrap();
            // exp(sum_n a_n sum_k x^(nk) / k)
            let mut arg = RationalSeries::zero(order);
            for n in 1..=order {
                for k in 1..=order / n {
                    let term = RationalSeries::monomial(r(ex[n], k as i64), n * k, order);
                    arg = arg.add(&term).unwrap();
                }
            }
            prop_assert_eq!(lhs, arg.exp().unwrap());
        }

        #[test]
        fn reciprocal_inverts(a in arb_series(6)) {
            let u = a.without_constant().add(&RationalSeries::one(6)).unwrap();
            prop_assert_eq!(u.mul(&u.reciprocal().unwrap()).unwrap(), RationalSeries::one(6));
        }
    }
}
