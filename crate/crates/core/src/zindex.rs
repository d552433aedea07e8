//! Cycle index series: sums of `fix/|centralizer|` times the class monomial
//! `prod x[phi,i]^e(phi,i)`, graded by dimension.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::classes::{enumerate_classes, ClassKind, ConjClass};
use crate::error::{Error, Result};
use crate::gfq::FieldSpec;
use crate::linalg::InvariantData;
use crate::poly::Poly;
use crate::series::RationalSeries;

/// `prod x[phi,i]^e`; keys with exponent zero are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZMonomial {
    exps: BTreeMap<(Poly, usize), usize>,
}

impl ZMonomial {
    pub fn one() -> Self {
        ZMonomial::default()
    }

    pub fn new(mut exps: BTreeMap<(Poly, usize), usize>) -> Self {
        exps.retain(|_, e| *e > 0);
        ZMonomial { exps }
    }

    pub fn var(phi: Poly, i: usize) -> Self {
        ZMonomial::new(BTreeMap::from([((phi, i), 1)]))
    }

    pub fn exponents(&self) -> &BTreeMap<(Poly, usize), usize> {
        &self.exps
    }

    /// `sum e * i * deg(phi)`: the dimension of the class it records.
    pub fn degree(&self) -> usize {
        self.exps
            .iter()
            .map(|((phi, i), e)| e * i * phi.deg())
            .sum()
    }

    /// `sum e * i`, the exponent under the substitution `x[phi,i] = x^i`.
    pub fn literal_degree(&self) -> usize {
        self.exps.iter().map(|((_, i), e)| e * i).sum()
    }

    pub fn mul(&self, other: &ZMonomial) -> ZMonomial {
        let mut exps = self.exps.clone();
        for (k, e) in &other.exps {
            *exps.entry(k.clone()).or_insert(0) += e;
        }
        ZMonomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn to_invariant(&self) -> InvariantData {
        InvariantData::new(self.exps.clone())
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.exps
                .iter()
                .map(|((phi, i), e)| json!({"phi": phi.to_string(), "i": i, "e": e}))
                .collect(),
        )
    }
}

impl From<&InvariantData> for ZMonomial {
    fn from(inv: &InvariantData) -> Self {
        ZMonomial::new(inv.entries().clone())
    }
}

impl Ord for ZMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for ZMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ZMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (idx, ((phi, i), e)) in self.exps.iter().enumerate() {
            if idx > 0 {
                write!(f, " * ")?;
            }
            write!(f, "x[{phi},{i}]")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A cycle index series over a fixed field, truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleIndexSeries {
    field: FieldSpec,
    order: usize,
    terms: BTreeMap<ZMonomial, BigRational>,
}

impl CycleIndexSeries {
    pub fn zero(field: &FieldSpec, order: usize) -> Self {
        CycleIndexSeries {
            field: field.clone(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &FieldSpec, order: usize) -> Self {
        let mut z = Self::zero(field, order);
        z.terms.insert(ZMonomial::one(), BigRational::one());
        z
    }

    /// Accumulate `c * m`; terms above the order are dropped.
    pub fn add_term(&mut self, m: ZMonomial, c: BigRational) {
        if m.degree() > self.order || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// `sum over Aut classes c with n <= order of fix(c)/|C(c)| * monomial(c)`.
    pub fn build<F>(field: &FieldSpec, order: usize, mut fix: F) -> Result<Self>
    where
        F: FnMut(&ConjClass) -> Result<BigInt>,
    {
        let mut z = Self::zero(field, order);
        for n in 0..=order {
            for class in enumerate_classes(field, n, ClassKind::Aut) {
                let f = fix(&class)?;
                let c = BigRational::new(f, BigInt::from(class.centralizer_order.clone()));
                z.add_term(ZMonomial::from(&class.invariant), c);
            }
        }
        Ok(z)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<ZMonomial, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, m: &ZMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.field != other.field {
            return Err(Error::Unsupported(format!(
                "cycle index series over F_{} and F_{} cannot be combined",
                self.field.q(),
                other.field.q()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.field, self.order);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.degree() + b.degree() <= self.order {
                    out.add_term(a.mul(b), ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(&self.field, self.order);
        for _ in 0..e {
            acc = acc.mul(self).expect("same order and field");
        }
        acc
    }

    /// Drop the degree-zero part.
    pub fn plus(&self) -> Self {
        let mut out = self.clone();
        out.terms.retain(|m, _| m.degree() > 0);
        out
    }

    /// `x[z-1,1] = x`, every other variable 0: the generating series.
    pub fn specialize_generating(&self) -> RationalSeries {
        let key = (Poly::z_minus_one(&self.field), 1);
        let mut coeffs = vec![BigRational::zero(); self.order + 1];
        for (m, c) in &self.terms {
            if m.exps.keys().all(|k| *k == key) {
                coeffs[m.degree()] += c;
            }
        }
        RationalSeries::from_coeffs(self.order, coeffs)
    }

    /// Every class monomial sent to `x^n` with `n` its dimension. By Burnside
    /// this is the type generating series.
    pub fn specialize_type(&self) -> RationalSeries {
        self.specialize_with(ZMonomial::degree)
    }

    /// The substitution `x[phi,i] = x^i` taken literally. It only agrees with the
    /// type series when every invariant factor has degree 1.
    pub fn specialize_type_literal(&self) -> RationalSeries {
        self.specialize_with(ZMonomial::literal_degree)
    }

    fn specialize_with(&self, exponent: impl Fn(&ZMonomial) -> usize) -> RationalSeries {
        let mut coeffs = vec![BigRational::zero(); self.order + 1];
        for (m, c) in &self.terms {
            coeffs[exponent(m)] += c;
        }
        RationalSeries::from_coeffs(self.order, coeffs)
    }

    /// One `coeff * monomial` line per term, by degree then monomial order.
    pub fn to_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else {
                    format!("{c} * {m}")
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.field.q(),
            "order": self.order,
            "terms": self.terms.iter().map(|(m, c)| json!({
                "degree": m.degree(),
                "monomial": m.to_json(),
                "coeff": c.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CycleIndexSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for line in self.to_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
