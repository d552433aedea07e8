//! Species expressions: built-in species, combinators, and the rules that
//! turn an expression into its generating, type, and cycle index series.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classes::{enumerate_classes, ClassKind, ConjClass};
use crate::coeff::Coeff;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::gfq::FieldSpec;
use crate::linalg::{gl_order, qbinomial, InvariantData, Matrix};
use crate::oracle;
use crate::poly::Poly;
use crate::series::{aut_type_product, euler_product, PowerSeries};
use crate::zindex::CycleIndexSeries;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    /// A single structure on the zero space.
    One,
    /// No structures at all.
    Zero,
    /// Vectors of `V`.
    Elem,
    /// Lines of `V`.
    Proj,
    /// Endomorphisms, acted on by conjugation.
    End,
    /// Automorphisms, acted on by conjugation.
    Aut,
    /// Ordered bases.
    Bases,
    /// One structure on every space.
    V,
    /// One structure on every nonzero space.
    Vplus,
    /// `k`-dimensional subspaces.
    Sub(usize),
    /// Scalars on a line: `F_q` in dimension 1, empty elsewhere.
    Fscalar,
    /// Nonzero scalars on a line.
    Fstar,
    /// Automorphisms `rho` with `rho^m = 1`, i.e. representations of `Z/m`.
    RepCyclic(usize),
}

impl Builtin {
    /// Whether the species has no structure on the zero space.
    pub fn zero_empty(&self) -> bool {
        match self {
            Builtin::Zero | Builtin::Proj | Builtin::Vplus | Builtin::Fscalar | Builtin::Fstar => {
                true
            }
            Builtin::Sub(k) => *k > 0,
            Builtin::One
            | Builtin::Elem
            | Builtin::End
            | Builtin::Aut
            | Builtin::Bases
            | Builtin::V
            | Builtin::RepCyclic(_) => false,
        }
    }

    /// `|F[E_n]|`.
    pub fn count(&self, field: &FieldSpec, n: usize) -> Result<BigUint> {
        let q = BigUint::from(field.q());
        Ok(match self {
            Builtin::One => BigUint::from((n == 0) as u8),
            Builtin::Zero => BigUint::zero(),
            Builtin::Elem => num_traits::pow(q, n),
            Builtin::Proj => q_integer(field.q(), n),
            Builtin::End => num_traits::pow(q, n * n),
            Builtin::Aut | Builtin::Bases => gl_order(field.q(), n),
            Builtin::V => BigUint::one(),
            Builtin::Vplus => BigUint::from((n > 0) as u8),
            Builtin::Sub(k) if *k > n => BigUint::zero(),
            Builtin::Sub(k) => qbinomial(field.q(), n, *k)?,
            Builtin::Fscalar => BigUint::from(if n == 1 { field.q() } else { 0 }),
            Builtin::Fstar => BigUint::from(if n == 1 { field.q() - 1 } else { 0 }),
            Builtin::RepCyclic(m) => enumerate_classes(field, n, ClassKind::Aut)
                .into_iter()
                .filter(|c| has_order_dividing(&c.representative, *m, field))
                .map(|c| c.class_size)
                .sum(),
        })
    }

    /// Closed-form number of structures fixed by any automorphism with the
    /// given invariants; `None` where only enumeration is available.
    pub fn fix_closed(&self, field: &FieldSpec, inv: &InvariantData) -> Option<BigUint> {
        let n = inv.n();
        let q = field.q();
        let qb = BigUint::from(q);
        Some(match self {
            Builtin::One => BigUint::from((n == 0) as u8),
            Builtin::Zero => BigUint::zero(),
            // fixed vectors form the 1-eigenspace, whose dimension is the
            // number of Jordan blocks for z - 1
            Builtin::Elem => {
                let parts = inv.partition(&Poly::z_minus_one(field)).len();
                num_traits::pow(qb, parts)
            }
            // fixed lines are lines inside eigenspaces
            Builtin::Proj => inv
                .polys()
                .iter()
                .filter(|phi| phi.deg() == 1)
                .map(|phi| q_integer(q, inv.partition(phi).len()))
                .sum(),
            // the commutant of a primary block of type lambda over F_{q^d}
            // has dimension d * sum_{a,b} min(a, b)
            Builtin::End => {
                let dim: usize = inv
                    .polys()
                    .iter()
                    .map(|phi| {
                        let lambda = inv.partition(phi);
                        let s: usize = lambda
                            .iter()
                            .flat_map(|a| lambda.iter().map(move |b| (*a).min(*b)))
                            .sum();
                        phi.deg() * s
                    })
                    .sum();
                num_traits::pow(qb, dim)
            }
            Builtin::Aut => crate::classes::centralizer_order(inv, q),
            Builtin::Bases => {
                if inv.is_identity(field) {
                    gl_order(q, n)
                } else {
                    BigUint::zero()
                }
            }
            Builtin::V | Builtin::Vplus | Builtin::Fscalar | Builtin::Fstar => {
                self.count(field, n).ok()?
            }
            Builtin::Sub(_) | Builtin::RepCyclic(_) => return None,
        })
    }

    /// Fixed-structure counts for every automorphism class of dimension `n`;
    /// enumerates structures when no closed form exists.
    pub fn class_fixes(
        &self,
        field: &FieldSpec,
        n: usize,
        budget: &Budget,
    ) -> Result<Vec<(ConjClass, BigUint)>> {
        let classes = enumerate_classes(field, n, ClassKind::Aut);
        if self
            .fix_closed(field, &InvariantData::identity(field, n))
            .is_some()
        {
            return Ok(classes
                .into_iter()
                .map(|c| {
                    let f = self.fix_closed(field, &c.invariant).expect("closed form");
                    (c, f)
                })
                .collect());
        }
        let e = SpeciesExpr::Builtin(self.clone());
        let structures = oracle::enumerate_structures(&e, field, n, budget)?;
        classes
            .into_iter()
            .map(|c| {
                let f = oracle::fixed_count(&e, &structures, &c.representative, field)?;
                Ok((c, BigUint::from(f)))
            })
            .collect()
    }

    /// Number of isomorphism types in dimension `n`.
    fn type_count(&self, field: &FieldSpec, n: usize, budget: &Budget) -> Result<BigUint> {
        if let Builtin::RepCyclic(m) = self {
            // the action is conjugation, so the orbits are conjugacy classes
            let c = enumerate_classes(field, n, ClassKind::Aut)
                .iter()
                .filter(|c| has_order_dividing(&c.representative, *m, field))
                .count();
            return Ok(BigUint::from(c));
        }
        let total: BigUint = self
            .class_fixes(field, n, budget)?
            .into_iter()
            .map(|(c, f)| c.class_size * f)
            .sum();
        let gamma = gl_order(field.q(), n);
        if !(&total % &gamma).is_zero() {
            return Err(Error::NotIntegral(format!(
                "orbit count of {self} in dimension {n}: {total}/{gamma}"
            )));
        }
        Ok(total / gamma)
    }
}

fn q_integer(q: u32, n: usize) -> BigUint {
    (0..n).map(|i| num_traits::pow(BigUint::from(q), i)).sum()
}

fn has_order_dividing(rho: &Matrix, m: usize, field: &FieldSpec) -> bool {
    rho.pow(m as u64, field).expect("square") == Matrix::identity(rho.rows())
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::One => write!(f, "One"),
            Builtin::Zero => write!(f, "Zero"),
            Builtin::Elem => write!(f, "Elem"),
            Builtin::Proj => write!(f, "Proj"),
            Builtin::End => write!(f, "End"),
            Builtin::Aut => write!(f, "Aut"),
            Builtin::Bases => write!(f, "Bases"),
            Builtin::V => write!(f, "V"),
            Builtin::Vplus => write!(f, "Vplus"),
            Builtin::Sub(k) => write!(f, "Sub({k})"),
            Builtin::Fscalar => write!(f, "Fscalar"),
            Builtin::Fstar => write!(f, "Fstar"),
            Builtin::RepCyclic(m) => write!(f, "RepCyclic({m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpeciesExpr {
    Builtin(Builtin),
    Sum(Box<SpeciesExpr>, Box<SpeciesExpr>),
    Product(Box<SpeciesExpr>, Box<SpeciesExpr>),
    Power(Box<SpeciesExpr>, usize),
    SymPower(Box<SpeciesExpr>, usize),
    Assembly(Box<SpeciesExpr>),
    Plus(Box<SpeciesExpr>),
    Mark(Box<SpeciesExpr>),
}

impl From<Builtin> for SpeciesExpr {
    fn from(b: Builtin) -> Self {
        SpeciesExpr::Builtin(b)
    }
}

impl SpeciesExpr {
    pub fn sum(a: impl Into<SpeciesExpr>, b: impl Into<SpeciesExpr>) -> Self {
        SpeciesExpr::Sum(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn product(a: impl Into<SpeciesExpr>, b: impl Into<SpeciesExpr>) -> Self {
        SpeciesExpr::Product(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn power(a: impl Into<SpeciesExpr>, n: usize) -> Self {
        SpeciesExpr::Power(Box::new(a.into()), n)
    }

    pub fn sym(a: impl Into<SpeciesExpr>, n: usize) -> Self {
        SpeciesExpr::SymPower(Box::new(a.into()), n)
    }

    pub fn assembly(a: impl Into<SpeciesExpr>) -> Self {
        SpeciesExpr::Assembly(Box::new(a.into()))
    }

    pub fn plus(a: impl Into<SpeciesExpr>) -> Self {
        SpeciesExpr::Plus(Box::new(a.into()))
    }

    pub fn mark(a: impl Into<SpeciesExpr>) -> Self {
        SpeciesExpr::Mark(Box::new(a.into()))
    }

    /// Static check that `F[0]` is empty.
    pub fn zero_empty(&self) -> bool {
        match self {
            SpeciesExpr::Builtin(b) => b.zero_empty(),
            SpeciesExpr::Sum(a, b) => a.zero_empty() && b.zero_empty(),
            SpeciesExpr::Product(a, b) => a.zero_empty() || b.zero_empty(),
            SpeciesExpr::Power(a, n) | SpeciesExpr::SymPower(a, n) => *n > 0 && a.zero_empty(),
            SpeciesExpr::Assembly(_) => false,
            SpeciesExpr::Plus(_) => true,
            SpeciesExpr::Mark(a) => a.zero_empty(),
        }
    }

    /// Reject `E(F)` and `sym(n, F)` whose operand may live on the zero space,
    /// and degenerate builtin parameters.
    pub fn check(&self) -> Result<()> {
        match self {
            SpeciesExpr::Builtin(Builtin::RepCyclic(0)) => {
                Err(Error::Unsupported("RepCyclic(m) needs m >= 1".into()))
            }
            SpeciesExpr::Builtin(_) => Ok(()),
            SpeciesExpr::Sum(a, b) | SpeciesExpr::Product(a, b) => {
                a.check()?;
                b.check()
            }
            SpeciesExpr::Power(a, _) | SpeciesExpr::Plus(a) | SpeciesExpr::Mark(a) => a.check(),
            SpeciesExpr::SymPower(a, n) if *n == 0 => a.check(),
            SpeciesExpr::SymPower(a, _) | SpeciesExpr::Assembly(a) => {
                a.check()?;
                if a.zero_empty() {
                    Ok(())
                } else {
                    Err(Error::NonEmptyAtZero(a.to_string()))
                }
            }
        }
    }

    pub fn has_mark(&self) -> bool {
        self.any(&|e| matches!(e, SpeciesExpr::Mark(_)))
    }

    /// Contains a symmetric power or assembly node.
    pub fn has_quotient(&self) -> bool {
        self.any(&|e| matches!(e, SpeciesExpr::SymPower(..) | SpeciesExpr::Assembly(_)))
    }

    fn any(&self, pred: &dyn Fn(&SpeciesExpr) -> bool) -> bool {
        pred(self)
            || match self {
                SpeciesExpr::Builtin(_) => false,
                SpeciesExpr::Sum(a, b) | SpeciesExpr::Product(a, b) => a.any(pred) || b.any(pred),
                SpeciesExpr::Power(a, _)
                | SpeciesExpr::SymPower(a, _)
                | SpeciesExpr::Assembly(a)
                | SpeciesExpr::Plus(a)
                | SpeciesExpr::Mark(a) => a.any(pred),
            }
    }

    fn precedence(&self) -> u8 {
        match self {
            SpeciesExpr::Sum(..) => 0,
            SpeciesExpr::Product(..) => 1,
            SpeciesExpr::Power(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            write!(f, "(")?;
        }
        match self {
            SpeciesExpr::Builtin(b) => write!(f, "{b}")?,
            SpeciesExpr::Sum(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " + ")?;
                b.fmt_at(f, 1)?;
            }
            SpeciesExpr::Product(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " * ")?;
                b.fmt_at(f, 2)?;
            }
            SpeciesExpr::Power(a, n) => {
                a.fmt_at(f, 2)?;
                write!(f, "^{n}")?;
            }
            SpeciesExpr::SymPower(a, n) => write!(f, "sym({n}, {a})")?,
            SpeciesExpr::Assembly(a) => write!(f, "E({a})")?,
            SpeciesExpr::Plus(a) => write!(f, "plus({a})")?,
            SpeciesExpr::Mark(a) => write!(f, "mark({a})")?,
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for SpeciesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

fn prepare<C: Coeff>(e: &SpeciesExpr) -> Result<()> {
    e.check()?;
    if e.has_mark() && C::weight_marker().is_none() {
        return Err(Error::WeightedExpression);
    }
    Ok(())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `sum_n |F[E_n]|_w x^n / gamma_n`.
pub fn gen_series<C: Coeff>(
    e: &SpeciesExpr,
    field: &FieldSpec,
    order: usize,
    _budget: &Budget,
) -> Result<PowerSeries<C>> {
    prepare::<C>(e)?;
    gen_rec(e, field, order)
}

fn gen_rec<C: Coeff>(e: &SpeciesExpr, field: &FieldSpec, order: usize) -> Result<PowerSeries<C>> {
    Ok(match e {
        SpeciesExpr::Builtin(b) => {
            let mut coeffs = Vec::with_capacity(order + 1);
            for n in 0..=order {
                let count = BigInt::from(b.count(field, n)?);
                let gamma = BigInt::from(gl_order(field.q(), n));
                coeffs.push(C::from_rational(&BigRational::new(count, gamma)));
            }
            PowerSeries::from_coeffs(order, coeffs)
        }
        SpeciesExpr::Sum(a, b) => gen_rec(a, field, order)?.add(&gen_rec(b, field, order)?)?,
        SpeciesExpr::Product(a, b) => gen_rec(a, field, order)?.mul(&gen_rec(b, field, order)?)?,
        SpeciesExpr::Power(a, n) => gen_rec::<C>(a, field, order)?.pow(*n),
        SpeciesExpr::SymPower(a, n) => gen_rec::<C>(a, field, order)?
            .pow(*n)
            .scale_rational(&BigRational::new(BigInt::one(), factorial(*n))),
        SpeciesExpr::Assembly(a) => gen_rec::<C>(a, field, order)?.exp()?,
        SpeciesExpr::Plus(a) => gen_rec::<C>(a, field, order)?.without_constant(),
        SpeciesExpr::Mark(a) => {
            let t = C::weight_marker().ok_or(Error::WeightedExpression)?;
            gen_rec::<C>(a, field, order)?.scale(&t)
        }
    })
}

/// Weighted generating series in `Q[t]`, each mark contributing a factor `t`.
pub fn weighted_gen_series(
    e: &SpeciesExpr,
    field: &FieldSpec,
    order: usize,
    budget: &Budget,
) -> Result<PowerSeries<crate::coeff::TPoly>> {
    gen_series(e, field, order, budget)
}

/// `sum_n (number of isomorphism types on E_n) x^n`, weighted by marks.
pub fn type_series<C: Coeff>(
    e: &SpeciesExpr,
    field: &FieldSpec,
    order: usize,
    budget: &Budget,
) -> Result<PowerSeries<C>> {
    prepare::<C>(e)?;
    type_rec(e, field, order, budget)
}

fn type_rec<C: Coeff>(
    e: &SpeciesExpr,
    field: &FieldSpec,
    order: usize,
    budget: &Budget,
) -> Result<PowerSeries<C>> {
    Ok(match e {
        SpeciesExpr::Builtin(Builtin::Aut) => aut_type_product(field.q(), order).map_into(),
        SpeciesExpr::Builtin(Builtin::Bases) => PowerSeries::from_fn(order, |_| C::one()),
        SpeciesExpr::Builtin(b) => {
            let mut coeffs = Vec::with_capacity(order + 1);
            for n in 0..=order {
                coeffs.push(C::from_biguint(&b.type_count(field, n, budget)?));
            }
            PowerSeries::from_coeffs(order, coeffs)
        }
        SpeciesExpr::Sum(a, b) => {
            type_rec(a, field, order, budget)?.add(&type_rec(b, field, order, budget)?)?
        }
        SpeciesExpr::Product(a, b) => {
            type_rec(a, field, order, budget)?.mul(&type_rec(b, field, order, budget)?)?
        }
        SpeciesExpr::Power(a, n) => type_rec::<C>(a, field, order, budget)?.pow(*n),
        SpeciesExpr::SymPower(..) => {
            let mut coeffs = Vec::with_capacity(order + 1);
            for n in 0..=order {
                let w = oracle::type_inventory(e, field, n, budget)?;
                coeffs.push(C::from_weight(&w).ok_or(Error::WeightedExpression)?);
            }
            PowerSeries::from_coeffs(order, coeffs)
        }
        SpeciesExpr::Assembly(a) => {
            let inner = type_rec::<C>(a, field, order, budget)?;
            assembly_types(&inner)?
        }
        SpeciesExpr::Plus(a) => type_rec::<C>(a, field, order, budget)?.without_constant(),
        SpeciesExpr::Mark(a) => {
            let t = C::weight_marker().ok_or(Error::WeightedExpression)?;
            type_rec::<C>(a, field, order, budget)?.scale(&t)
        }
    })
}

/// Types of assemblies from the types of the parts: the Euler product for
/// plain counts, its Polya form when the counts carry weights.
fn assembly_types<C: Coeff>(inner: &PowerSeries<C>) -> Result<PowerSeries<C>> {
    if C::weight_marker().is_some() {
        return polya_assembly_types(inner);
    }
    let rational = PowerSeries::from_coeffs(
        inner.order(),
        inner
            .coeffs()
            .iter()
            .map(|c| c.to_rational().ok_or(Error::WeightedExpression))
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(euler_assembly_types(&rational)?.map_into())
}

/// `prod_{n >= 1} (1 - x^n)^(-f_n)` for the integer type counts `f_n`.
pub fn euler_assembly_types(inner: &PowerSeries<BigRational>) -> Result<PowerSeries<BigRational>> {
    let exps = inner
        .integer_coeffs()
        .ok_or_else(|| Error::NotIntegral(format!("type counts {inner}")))?;
    euler_product(&exps, inner.order())
}

/// `exp(sum_{k >= 1} psi_k(F)(x^k) / k)`, with `psi_k` sending `t` to `t^k`.
pub fn polya_assembly_types<C: Coeff>(inner: &PowerSeries<C>) -> Result<PowerSeries<C>> {
    let order = inner.order();
    let mut arg = PowerSeries::<C>::zero(order);
    for k in 1..=order {
        let term = inner
            .without_constant()
            .adams(k)
            .substitute_power(k)
            .scale_rational(&BigRational::new(BigInt::one(), BigInt::from(k)));
        arg = arg.add(&term)?;
    }
    arg.exp()
}

/// The cycle index series. Symmetric powers and assemblies are evaluated by
/// enumerating their structures on each class representative.
pub fn cycle_index(
    e: &SpeciesExpr,
    field: &FieldSpec,
    order: usize,
    budget: &Budget,
) -> Result<CycleIndexSeries> {
    e.check()?;
    if e.has_mark() {
        return Err(Error::WeightedExpression);
    }
    z_rec(e, field, order, budget)
}

fn z_rec(
    e: &SpeciesExpr,
    field: &FieldSpec,
    order: usize,
    budget: &Budget,
) -> Result<CycleIndexSeries> {
    Ok(match e {
        SpeciesExpr::Builtin(b) => {
            let mut z = CycleIndexSeries::zero(field, order);
            for n in 0..=order {
                for (c, f) in b.class_fixes(field, n, budget)? {
                    let coeff = BigRational::new(
                        BigInt::from(f),
                        BigInt::from(c.centralizer_order.clone()),
                    );
                    z.add_term((&c.invariant).into(), coeff);
                }
            }
            z
        }
        SpeciesExpr::Sum(a, b) => {
            z_rec(a, field, order, budget)?.add(&z_rec(b, field, order, budget)?)?
        }
        SpeciesExpr::Product(a, b) => {
            z_rec(a, field, order, budget)?.mul(&z_rec(b, field, order, budget)?)?
        }
        SpeciesExpr::Power(a, n) => z_rec(a, field, order, budget)?.pow(*n),
        SpeciesExpr::Plus(a) => z_rec(a, field, order, budget)?.plus(),
        SpeciesExpr::SymPower(..) | SpeciesExpr::Assembly(_) => {
            oracle::class_cycle_index(e, field, order, budget)?
        }
        SpeciesExpr::Mark(_) => return Err(Error::WeightedExpression),
    })
}

/// `f_n` for every `n <= order`, read off the generating series.
pub fn counts(
    e: &SpeciesExpr,
    field: &FieldSpec,
    order: usize,
    budget: &Budget,
) -> Result<Vec<BigUint>> {
    let s: PowerSeries<BigRational> = gen_series(e, field, order, budget)?;
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let v = c * BigRational::from_integer(BigInt::from(gl_order(field.q(), n)));
            v.to_integer()
                .to_biguint()
                .filter(|_| v.is_integer())
                .ok_or_else(|| Error::NotIntegral(format!("structure count {v} at degree {n}")))
        })
        .collect()
}
