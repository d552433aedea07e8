//! Brute force: structures of an expression materialized on `F_q^n`, moved
//! by explicit matrices, and counted.
//!
//! A structure on a summand `W` of a product or assembly is stored on the
//! standard space `F_q^dim(W)` through the chart sending the i-th standard
//! basis vector to the i-th row of the RREF basis of `W`. Transport by `g`
//! acts on such a part by the matrix of `W -> gW` in the two charts.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::classes::{enumerate_classes, ClassKind};
use crate::coeff::{Coeff, TPoly};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::gfq::{FieldElem, FieldSpec};
use crate::linalg::{
    enumerate_decompositions, enumerate_matrices, enumerate_subspaces, gl_order, invariant_data,
    Matrix, Subspace,
};
use crate::species::{Builtin, SpeciesExpr};
use crate::zindex::{CycleIndexSeries, ZMonomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    /// The unique structure of `One`, `V`, `Vplus`.
    Unit,
    Vector(Vec<FieldElem>),
    Space(Subspace),
    /// An endomorphism or automorphism.
    Map(Matrix),
    /// An ordered basis, as the columns of a matrix.
    Basis(Matrix),
    Scalar(FieldElem),
    Left(Box<Structure>),
    Right(Box<Structure>),
    /// Ordered factors of a product or power.
    Tuple(Vec<Part>),
    /// Unordered factors of a symmetric power or assembly, sorted.
    Multiset(Vec<Part>),
}

/// A summand together with a structure on its chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    pub space: Subspace,
    pub inner: Structure,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn parts(f: &mut fmt::Formatter<'_>, ps: &[Part]) -> fmt::Result {
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}: {}", p.space, p.inner)?;
            }
            Ok(())
        }
        match self {
            Structure::Unit => write!(f, "*"),
            Structure::Vector(v) => {
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            Structure::Space(w) => write!(f, "{w}"),
            Structure::Map(m) => write!(f, "{m}"),
            Structure::Basis(m) => write!(f, "basis{m}"),
            Structure::Scalar(c) => write!(f, "{c}"),
            Structure::Left(s) => write!(f, "inl {s}"),
            Structure::Right(s) => write!(f, "inr {s}"),
            Structure::Tuple(ps) => {
                write!(f, "(")?;
                parts(f, ps)?;
                write!(f, ")")
            }
            Structure::Multiset(ps) => {
                write!(f, "{{")?;
                parts(f, ps)?;
                write!(f, "}}")
            }
        }
    }
}

fn too_many(e: &SpeciesExpr, n: usize, size: usize, budget: &Budget) -> Result<()> {
    if size as u64 > budget.structures {
        return Err(Error::BudgetExceeded {
            what: format!("structures of {e} in dimension {n}"),
            size: size.to_string(),
            budget: budget.structures,
        });
    }
    Ok(())
}

/// Every structure on `F_q^n`, once each, in canonical order.
pub fn enumerate_structures(
    e: &SpeciesExpr,
    field: &FieldSpec,
    n: usize,
    budget: &Budget,
) -> Result<Vec<Structure>> {
    let mut cache = HashMap::new();
    let mut out = structures(e, field, n, budget, &mut cache)?;
    out.sort();
    Ok(out)
}

type Cache = HashMap<(SpeciesExpr, usize), Vec<Structure>>;

fn structures(
    e: &SpeciesExpr,
    field: &FieldSpec,
    n: usize,
    budget: &Budget,
    cache: &mut Cache,
) -> Result<Vec<Structure>> {
    if let Some(s) = cache.get(&(e.clone(), n)) {
        return Ok(s.clone());
    }
    let out = match e {
        SpeciesExpr::Builtin(b) => builtin_structures(b, field, n, budget)?,
        SpeciesExpr::Sum(a, b) => {
            let mut out: Vec<Structure> = structures(a, field, n, budget, cache)?
                .into_iter()
                .map(|s| Structure::Left(Box::new(s)))
                .collect();
            out.extend(
                structures(b, field, n, budget, cache)?
                    .into_iter()
                    .map(|s| Structure::Right(Box::new(s))),
            );
            out
        }
        SpeciesExpr::Product(a, b) => tuples(e, &[a, b], false, field, n, budget, cache)?,
        SpeciesExpr::Power(a, m) => tuples(e, &vec![&**a; *m], false, field, n, budget, cache)?,
        SpeciesExpr::SymPower(a, m) => multisets(e, a, *m, field, n, budget, cache)?,
        SpeciesExpr::Assembly(a) => {
            let mut out = Vec::new();
            for m in 0..=n {
                out.extend(multisets(e, a, m, field, n, budget, cache)?);
                too_many(e, n, out.len(), budget)?;
            }
            out
        }
        SpeciesExpr::Plus(_) if n == 0 => Vec::new(),
        SpeciesExpr::Plus(a) | SpeciesExpr::Mark(a) => structures(a, field, n, budget, cache)?,
    };
    too_many(e, n, out.len(), budget)?;
    cache.insert((e.clone(), n), out.clone());
    Ok(out)
}

fn builtin_structures(
    b: &Builtin,
    field: &FieldSpec,
    n: usize,
    budget: &Budget,
) -> Result<Vec<Structure>> {
    let maps = |invertible: bool| -> Result<Vec<Matrix>> {
        Ok(enumerate_matrices(field, n, invertible, budget)?.collect())
    };
    Ok(match b {
        Builtin::One => (n == 0).then_some(Structure::Unit).into_iter().collect(),
        Builtin::Zero => Vec::new(),
        Builtin::Elem => {
            let size = num_traits::pow(BigUint::from(field.q()), n);
            if size > BigUint::from(budget.enumeration) {
                return Err(Error::BudgetExceeded {
                    what: format!("vectors of F_{}^{n}", field.q()),
                    size: size.to_string(),
                    budget: budget.enumeration,
                });
            }
            let elems: Vec<FieldElem> = field.elements().collect();
            let mut out = vec![Vec::new()];
            for _ in 0..n {
                out = out
                    .into_iter()
                    .flat_map(|v| {
                        elems.iter().map(move |&c| {
                            let mut w = v.clone();
                            w.push(c);
                            w
                        })
                    })
                    .collect();
            }
            out.into_iter().map(Structure::Vector).collect()
        }
        Builtin::Proj => subspaces(field, n, 1, budget)?,
        Builtin::Sub(k) => subspaces(field, n, *k, budget)?,
        Builtin::End => maps(false)?.into_iter().map(Structure::Map).collect(),
        Builtin::Aut => maps(true)?.into_iter().map(Structure::Map).collect(),
        Builtin::Bases => maps(true)?.into_iter().map(Structure::Basis).collect(),
        Builtin::V => vec![Structure::Unit],
        Builtin::Vplus => (n > 0).then_some(Structure::Unit).into_iter().collect(),
        Builtin::Fscalar if n == 1 => field.elements().map(Structure::Scalar).collect(),
        Builtin::Fstar if n == 1 => field.elements().skip(1).map(Structure::Scalar).collect(),
        Builtin::Fscalar | Builtin::Fstar => Vec::new(),
        Builtin::RepCyclic(m) => {
            let id = Matrix::identity(n);
            maps(true)?
                .into_iter()
                .filter(|g| g.pow(*m as u64, field).expect("square") == id)
                .map(Structure::Map)
                .collect()
        }
    })
}

fn subspaces(field: &FieldSpec, n: usize, k: usize, budget: &Budget) -> Result<Vec<Structure>> {
    if k > n {
        return Ok(Vec::new());
    }
    Ok(enumerate_subspaces(field, n, k, budget)?
        .into_iter()
        .map(Structure::Space)
        .collect())
}

/// Compositions of `n` into `m` nonnegative parts; non-increasing ones only if asked.
fn compositions(n: usize, m: usize, non_increasing: bool) -> Vec<Vec<usize>> {
    fn rec(
        rest: usize,
        slots: usize,
        cap: usize,
        ni: bool,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let top = if ni { rest.min(cap) } else { rest };
        for d in 0..=top {
            cur.push(d);
            rec(rest - d, slots - 1, d, ni, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, n, non_increasing, &mut Vec::new(), &mut out);
    out
}

fn tuples(
    whole: &SpeciesExpr,
    factors: &[&SpeciesExpr],
    non_increasing: bool,
    field: &FieldSpec,
    n: usize,
    budget: &Budget,
    cache: &mut Cache,
) -> Result<Vec<Structure>> {
    let mut out = Vec::new();
    for dims in compositions(n, factors.len(), non_increasing) {
        let mut subs = Vec::with_capacity(factors.len());
        for (f, &d) in factors.iter().zip(&dims) {
            subs.push(structures(f, field, d, budget, cache)?);
        }
        if subs.iter().any(Vec::is_empty) {
            continue;
        }
        for decomposition in enumerate_decompositions(field, n, &dims, budget)? {
            let mut idx = vec![0usize; subs.len()];
            loop {
                let parts = decomposition
                    .iter()
                    .zip(&subs)
                    .zip(&idx)
                    .map(|((w, s), &i)| Part {
                        space: w.clone(),
                        inner: s[i].clone(),
                    })
                    .collect();
                out.push(Structure::Tuple(parts));
                let mut pos = 0;
                while pos < idx.len() {
                    idx[pos] += 1;
                    if idx[pos] < subs[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
            too_many(whole, n, out.len(), budget)?;
        }
    }
    Ok(out)
}

fn multisets(
    whole: &SpeciesExpr,
    a: &SpeciesExpr,
    m: usize,
    field: &FieldSpec,
    n: usize,
    budget: &Budget,
    cache: &mut Cache,
) -> Result<Vec<Structure>> {
    let ordered = tuples(whole, &vec![a; m], true, field, n, budget, cache)?;
    let set: BTreeSet<Structure> = ordered
        .into_iter()
        .map(|s| match s {
            Structure::Tuple(mut parts) => {
                parts.sort();
                Structure::Multiset(parts)
            }
            _ => unreachable!("tuples yields tuples"),
        })
        .collect();
    Ok(set.into_iter().collect())
}

/// `F[g](s)` for an invertible `g`.
pub fn transport(
    e: &SpeciesExpr,
    s: &Structure,
    g: &Matrix,
    field: &FieldSpec,
) -> Result<Structure> {
    let g_inv = g.inverse(field)?;
    move_by(e, s, g, &g_inv, field)
}

fn move_by(
    e: &SpeciesExpr,
    s: &Structure,
    g: &Matrix,
    gi: &Matrix,
    field: &FieldSpec,
) -> Result<Structure> {
    let wrong = || Error::DimensionMismatch(format!("structure {s} does not belong to {e}"));
    Ok(match (e, s) {
        (SpeciesExpr::Builtin(_), s) => match s {
            Structure::Unit => Structure::Unit,
            Structure::Vector(v) => Structure::Vector(g.mul_vec(v, field)),
            Structure::Space(w) => Structure::Space(w.image(g, field)),
            Structure::Map(a) => Structure::Map(a.conjugate(g, gi, field)?),
            Structure::Basis(b) => Structure::Basis(g.mul(b, field)?),
            Structure::Scalar(c) => Structure::Scalar(*c),
            _ => return Err(wrong()),
        },
        (SpeciesExpr::Sum(a, _), Structure::Left(s)) => {
            Structure::Left(Box::new(move_by(a, s, g, gi, field)?))
        }
        (SpeciesExpr::Sum(_, b), Structure::Right(s)) => {
            Structure::Right(Box::new(move_by(b, s, g, gi, field)?))
        }
        (SpeciesExpr::Product(a, b), Structure::Tuple(ps)) if ps.len() == 2 => {
            Structure::Tuple(vec![
                move_part(a, &ps[0], g, field)?,
                move_part(b, &ps[1], g, field)?,
            ])
        }
        (SpeciesExpr::Power(a, m), Structure::Tuple(ps)) if ps.len() == *m => Structure::Tuple(
            ps.iter()
                .map(|p| move_part(a, p, g, field))
                .collect::<Result<_>>()?,
        ),
        (SpeciesExpr::SymPower(a, _) | SpeciesExpr::Assembly(a), Structure::Multiset(ps)) => {
            let mut moved = ps
                .iter()
                .map(|p| move_part(a, p, g, field))
                .collect::<Result<Vec<_>>>()?;
            moved.sort();
            Structure::Multiset(moved)
        }
        (SpeciesExpr::Plus(a) | SpeciesExpr::Mark(a), s) => move_by(a, s, g, gi, field)?,
        _ => return Err(wrong()),
    })
}

/// Move a part from `W` to `gW`, acting on its chart by the induced matrix.
fn move_part(e: &SpeciesExpr, p: &Part, g: &Matrix, field: &FieldSpec) -> Result<Part> {
    let image = p.space.image(g, field);
    let d = p.space.dim();
    let mut h = Matrix::zero(d, d);
    for j in 0..d {
        let moved = g.mul_vec(p.space.basis().row(j), field);
        let c = image.coords(&moved, field).expect("g maps W onto gW");
        for (i, ci) in c.into_iter().enumerate() {
            h.set(i, j, ci);
        }
    }
    let hi = h.inverse(field)?;
    Ok(Part {
        space: image,
        inner: move_by(e, &p.inner, &h, &hi, field)?,
    })
}

/// Product of `t` over the marks enclosing each atomic structure.
pub fn weight(e: &SpeciesExpr, s: &Structure) -> TPoly {
    match (e, s) {
        (SpeciesExpr::Builtin(_), _) => TPoly::one(),
        (SpeciesExpr::Sum(a, _), Structure::Left(s))
        | (SpeciesExpr::Sum(_, a), Structure::Right(s)) => weight(a, s),
        (SpeciesExpr::Product(a, b), Structure::Tuple(ps)) => {
            weight(a, &ps[0].inner).mul(&weight(b, &ps[1].inner))
        }
        (SpeciesExpr::Power(a, _), Structure::Tuple(ps))
        | (SpeciesExpr::SymPower(a, _) | SpeciesExpr::Assembly(a), Structure::Multiset(ps)) => ps
            .iter()
            .fold(TPoly::one(), |acc, p| acc.mul(&weight(a, &p.inner))),
        (SpeciesExpr::Plus(a), s) => weight(a, s),
        (SpeciesExpr::Mark(a), s) => TPoly::t().mul(&weight(a, s)),
        _ => panic!("structure {s} does not belong to {e}"),
    }
}

/// Total weight of the structures on `F_q^n`.
pub fn inventory(e: &SpeciesExpr, field: &FieldSpec, n: usize, budget: &Budget) -> Result<TPoly> {
    Ok(enumerate_structures(e, field, n, budget)?
        .iter()
        .fold(TPoly::zero(), |acc, s| acc.add(&weight(e, s))))
}

pub fn count_bf(e: &SpeciesExpr, field: &FieldSpec, n: usize, budget: &Budget) -> Result<u64> {
    Ok(enumerate_structures(e, field, n, budget)?.len() as u64)
}

/// Number of the given structures fixed by `sigma`.
pub fn fixed_count(
    e: &SpeciesExpr,
    structures: &[Structure],
    sigma: &Matrix,
    field: &FieldSpec,
) -> Result<u64> {
    let inv = sigma.inverse(field)?;
    let mut c = 0;
    for s in structures {
        if move_by(e, s, sigma, &inv, field)? == *s {
            c += 1;
        }
    }
    Ok(c)
}

/// Total weight of the given structures fixed by `sigma`.
pub fn fixed_inventory(
    e: &SpeciesExpr,
    structures: &[Structure],
    sigma: &Matrix,
    field: &FieldSpec,
) -> Result<TPoly> {
    let inv = sigma.inverse(field)?;
    let mut acc = TPoly::zero();
    for s in structures {
        if move_by(e, s, sigma, &inv, field)? == *s {
            acc = acc.add(&weight(e, s));
        }
    }
    Ok(acc)
}

pub fn fix_count_bf(
    e: &SpeciesExpr,
    field: &FieldSpec,
    n: usize,
    sigma: &Matrix,
    budget: &Budget,
) -> Result<u64> {
    if sigma.rows() != n || !sigma.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "automorphism is {}x{}, dimension is {n}",
            sigma.rows(),
            sigma.cols()
        )));
    }
    fixed_count(e, &enumerate_structures(e, field, n, budget)?, sigma, field)
}

/// Generators of GL_n(F_q): `diag(w, 1, ..., 1)` for a primitive `w` and the
/// transvections `1 + c E_ij` with `c` running over `1, w, ..., w^(k-1)`.
pub fn gl_generators(field: &FieldSpec, n: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    let w = field.primitive_element();
    if w != FieldElem::ONE {
        let mut d = Matrix::identity(n);
        d.set(0, 0, w);
        gens.push(d);
    }
    let additive: Vec<FieldElem> = (0..field.k()).map(|i| field.pow(w, u64::from(i))).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &c in &additive {
                let mut t = Matrix::identity(n);
                t.set(i, j, c);
                gens.push(t);
            }
        }
    }
    gens
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// The least structure of the orbit in canonical order.
    pub representative: Structure,
    pub size: u64,
    pub weight: TPoly,
}

/// Orbits of GL_n(F_q), found by closing each structure under generators.
pub fn orbit_classes_bf(
    e: &SpeciesExpr,
    field: &FieldSpec,
    n: usize,
    budget: &Budget,
) -> Result<Vec<Orbit>> {
    let all = enumerate_structures(e, field, n, budget)?;
    let index: HashMap<&Structure, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gl_generators(field, n) {
        let gi = g.inverse(field)?;
        for (i, s) in all.iter().enumerate() {
            let t = move_by(e, s, &g, &gi, field)?;
            let j = *index.get(&t).ok_or_else(|| {
                Error::OracleMismatch(format!("{t} is not among the structures of {e}"))
            })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                // keep the smaller index as root so roots are least members
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, s) in all.iter().enumerate() {
        let r = find(&mut parent, i);
        let k = *slot.entry(r).or_insert_with(|| {
            orbits.push(Orbit {
                representative: all[r].clone(),
                size: 0,
                weight: weight(e, &all[r]),
            });
            orbits.len() - 1
        });
        orbits[k].size += 1;
        debug_assert_eq!(weight(e, s), orbits[k].weight);
    }
    Ok(orbits)
}

/// `(1/gamma_n) sum over all sigma of fix(sigma)`.
pub fn burnside_count_bf(
    e: &SpeciesExpr,
    field: &FieldSpec,
    n: usize,
    budget: &Budget,
) -> Result<u64> {
    let all = enumerate_structures(e, field, n, budget)?;
    let mut total = BigUint::zero();
    for sigma in enumerate_matrices(field, n, true, budget)? {
        total += fixed_count(e, &all, &sigma, field)?;
    }
    let gamma = gl_order(field.q(), n);
    if !(&total % &gamma).is_zero() {
        return Err(Error::NotIntegral(format!(
            "Burnside sum {total}/{gamma} for {e}"
        )));
    }
    Ok((total / gamma)
        .to_u64()
        .expect("bounded by the structure count"))
}

/// Number of isomorphism types on `F_q^n`, by orbit closure and by Burnside;
/// an error if the two disagree.
pub fn orbit_count_bf(
    e: &SpeciesExpr,
    field: &FieldSpec,
    n: usize,
    budget: &Budget,
) -> Result<u64> {
    let explicit = orbit_classes_bf(e, field, n, budget)?.len() as u64;
    let burnside = burnside_count_bf(e, field, n, budget)?;
    if explicit != burnside {
        return Err(Error::OracleMismatch(format!(
            "{e} in dimension {n}: {explicit} orbits but Burnside gives {burnside}"
        )));
    }
    Ok(explicit)
}

/// The cycle index as the literal sum over every automorphism.
pub fn zindex_bf(
    e: &SpeciesExpr,
    field: &FieldSpec,
    order: usize,
    budget: &Budget,
) -> Result<CycleIndexSeries> {
    let mut z = CycleIndexSeries::zero(field, order);
    for n in 0..=order {
        let all = enumerate_structures(e, field, n, budget)?;
        let gamma = BigInt::from(gl_order(field.q(), n));
        for sigma in enumerate_matrices(field, n, true, budget)? {
            let f = fixed_count(e, &all, &sigma, field)?;
            let m = ZMonomial::from(&invariant_data(&sigma, field)?);
            z.add_term(m, BigRational::new(BigInt::from(f), gamma.clone()));
        }
    }
    Ok(z)
}

/// The cycle index from one representative per class.
pub fn class_cycle_index(
    e: &SpeciesExpr,
    field: &FieldSpec,
    order: usize,
    budget: &Budget,
) -> Result<CycleIndexSeries> {
    let mut z = CycleIndexSeries::zero(field, order);
    for n in 0..=order {
        let all = enumerate_structures(e, field, n, budget)?;
        for c in enumerate_classes(field, n, ClassKind::Aut) {
            let f = fixed_count(e, &all, &c.representative, field)?;
            let coeff =
                BigRational::new(BigInt::from(f), BigInt::from(c.centralizer_order.clone()));
            z.add_term(ZMonomial::from(&c.invariant), coeff);
        }
    }
    Ok(z)
}

/// Weighted number of isomorphism types on `F_q^n`, by Burnside over class
/// representatives.
pub fn type_inventory(
    e: &SpeciesExpr,
    field: &FieldSpec,
    n: usize,
    budget: &Budget,
) -> Result<TPoly> {
    let all = enumerate_structures(e, field, n, budget)?;
    let mut acc = TPoly::zero();
    for c in enumerate_classes(field, n, ClassKind::Aut) {
        let w = fixed_inventory(e, &all, &c.representative, field)?;
        acc = acc.add(&w.scale(&BigRational::from_integer(BigInt::from(c.class_size))));
    }
    let gamma = BigRational::from_integer(BigInt::from(gl_order(field.q(), n)));
    let out = acc.scale(&(BigRational::from_integer(1.into()) / gamma));
    if out.coeffs().iter().any(|c| !c.is_integer()) {
        return Err(Error::NotIntegral(format!(
            "type inventory {out} of {e} in dimension {n}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::RationalSeries;
    use crate::species::{counts, cycle_index, gen_series};
    use Builtin::*;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    fn b(x: Builtin) -> SpeciesExpr {
        SpeciesExpr::Builtin(x)
    }

    fn m2(field: &FieldSpec, reps: &[u32]) -> Matrix {
        Matrix::from_reps(field, 2, 2, reps).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    fn builtins() -> Vec<Builtin> {
        vec![
            One,
            Zero,
            Elem,
            Proj,
            End,
            Aut,
            Bases,
            V,
            Vplus,
            Sub(0),
            Sub(1),
            Sub(2),
            Fscalar,
            Fstar,
            RepCyclic(2),
            RepCyclic(3),
        ]
    }

    /// Builtins and combinators small enough to enumerate at q = 2, n <= 3.
    fn samples() -> Vec<SpeciesExpr> {
        let mut out: Vec<SpeciesExpr> = builtins().into_iter().map(b).collect();
        out.extend([
            SpeciesExpr::sum(Elem, Proj),
            SpeciesExpr::product(Vplus, Vplus),
            SpeciesExpr::product(Elem, Aut),
            SpeciesExpr::product(Proj, Bases),
            SpeciesExpr::power(Proj, 2),
            SpeciesExpr::power(Elem, 0),
            SpeciesExpr::sym(Vplus, 2),
            SpeciesExpr::sym(SpeciesExpr::plus(Elem), 2),
            SpeciesExpr::assembly(Vplus),
            SpeciesExpr::assembly(Fscalar),
            SpeciesExpr::assembly(Fstar),
            SpeciesExpr::assembly(SpeciesExpr::sum(Fscalar, Vplus)),
            SpeciesExpr::assembly(SpeciesExpr::mark(Vplus)),
            SpeciesExpr::plus(End),
            SpeciesExpr::mark(SpeciesExpr::product(SpeciesExpr::mark(Proj), Elem)),
        ]);
        out
    }

    #[test]
    fn structure_count_examples() {
        let field = f(2);
        let bd = budget();
        assert_eq!(count_bf(&b(Elem), &field, 2, &bd).unwrap(), 4);
        assert_eq!(
            count_bf(&SpeciesExpr::assembly(Vplus), &field, 2, &bd).unwrap(),
            4
        );
        assert_eq!(
            count_bf(&SpeciesExpr::product(Vplus, Vplus), &field, 2, &bd).unwrap(),
            6
        );
        let splittings: Vec<u64> = (0..=3)
            .map(|n| count_bf(&SpeciesExpr::assembly(Vplus), &field, n, &bd).unwrap())
            .collect();
        assert_eq!(splittings, vec![1, 1, 4, 57]);
        let diag: Vec<u64> = (0..=2)
            .map(|n| count_bf(&SpeciesExpr::assembly(Fscalar), &field, n, &bd).unwrap())
            .collect();
        assert_eq!(diag, vec![1, 2, 12]);
    }

    #[test]
    fn enumeration_is_canonical_and_duplicate_free() {
        let field = f(2);
        for e in samples() {
            for n in 0..=2 {
                let s = enumerate_structures(&e, &field, n, &budget()).unwrap();
                assert!(s.windows(2).all(|w| w[0] < w[1]), "{e} n={n}");
            }
        }
    }

    #[test]
    fn transport_examples() {
        let field = f(2);
        let g = m2(&field, &[1, 1, 0, 1]);
        let v = Structure::Vector(vec![FieldElem::ZERO, FieldElem::ONE]);
        assert_eq!(
            transport(&b(Elem), &v, &g, &field).unwrap(),
            Structure::Vector(vec![FieldElem::ONE, FieldElem::ONE])
        );
        let a = m2(&field, &[0, 1, 0, 0]);
        let gi = g.inverse(&field).unwrap();
        assert_eq!(
            transport(&b(End), &Structure::Map(a.clone()), &g, &field).unwrap(),
            Structure::Map(g.mul(&a, &field).unwrap().mul(&gi, &field).unwrap())
        );
        assert!(transport(&b(Elem), &v, &m2(&field, &[1, 1, 1, 1]), &field).is_err());
    }

    fn check_functor_laws(e: &SpeciesExpr, field: &FieldSpec, n: usize, group: &[Matrix]) {
        let all = enumerate_structures(e, field, n, &budget()).unwrap();
        let id = Matrix::identity(n);
        for s in &all {
            assert_eq!(transport(e, s, &id, field).unwrap(), *s, "{e}: identity");
        }
        for g in group {
            for h in group {
                let gh = g.mul(h, field).unwrap();
                for s in &all {
                    let once = transport(e, s, &gh, field).unwrap();
                    let twice =
                        transport(e, &transport(e, s, h, field).unwrap(), g, field).unwrap();
                    assert_eq!(once, twice, "{e}: composition at n={n}");
                    assert_eq!(weight(e, &once), weight(e, s), "{e}: weight");
                }
            }
        }
    }

    #[test]
    fn functor_laws_exhaustive() {
        let field = f(2);
        for n in 0..=2 {
            let group: Vec<Matrix> = enumerate_matrices(&field, n, true, &budget())
                .unwrap()
                .collect();
            for e in samples() {
                check_functor_laws(&e, &field, n, &group);
            }
        }
    }

    #[test]
    fn functor_laws_sampled() {
        let field = f(2);
        let group: Vec<Matrix> = enumerate_matrices(&field, 3, true, &budget())
            .unwrap()
            .step_by(29)
            .collect();
        for e in samples() {
            check_functor_laws(&e, &field, 3, &group);
        }
        let f3 = f(3);
        let group: Vec<Matrix> = enumerate_matrices(&f3, 2, true, &budget())
            .unwrap()
            .step_by(7)
            .collect();
        for e in samples() {
            check_functor_laws(&e, &f3, 2, &group);
        }
    }

    #[test]
    fn fix_examples() {
        let field = f(2);
        let bd = budget();
        let u = m2(&field, &[1, 1, 0, 1]);
        assert_eq!(
            fix_count_bf(&b(Bases), &field, 2, &Matrix::identity(2), &bd).unwrap(),
            6
        );
        assert_eq!(fix_count_bf(&b(Bases), &field, 2, &u, &bd).unwrap(), 0);
        assert_eq!(fix_count_bf(&b(Elem), &field, 2, &u, &bd).unwrap(), 2);
        assert!(fix_count_bf(&b(Elem), &field, 3, &u, &bd).is_err());
    }

    #[test]
    fn fixed_counts_are_class_functions() {
        let field = f(2);
        for n in 0..=3 {
            let group: Vec<Matrix> = enumerate_matrices(&field, n, true, &budget())
                .unwrap()
                .collect();
            for e in samples() {
                let all = enumerate_structures(&e, &field, n, &budget()).unwrap();
                let mut seen: HashMap<crate::linalg::InvariantData, u64> = HashMap::new();
                for g in &group {
                    let inv = invariant_data(g, &field).unwrap();
                    let c = fixed_count(&e, &all, g, &field).unwrap();
                    assert_eq!(*seen.entry(inv).or_insert(c), c, "{e} n={n}");
                }
            }
        }
    }

    /// The closed-form fixed-point counts against enumeration on every class.
    #[test]
    fn closed_fix_counts() {
        for (q, nmax) in [(2u32, 3usize), (3, 2), (4, 2), (5, 2)] {
            let field = f(q);
            for bi in builtins() {
                for n in 0..=nmax {
                    let e = b(bi.clone());
                    let all = enumerate_structures(&e, &field, n, &budget()).unwrap();
                    for c in enumerate_classes(&field, n, ClassKind::Aut) {
                        let brute = fixed_count(&e, &all, &c.representative, &field).unwrap();
                        if let Some(closed) = bi.fix_closed(&field, &c.invariant) {
                            assert_eq!(closed, BigUint::from(brute), "{bi} q={q} {}", c.invariant);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn counts_match_enumeration() {
        for (q, nmax) in [(2u32, 3usize), (3, 2)] {
            let field = f(q);
            for e in samples() {
                let closed = match counts(&e, &field, nmax, &budget()) {
                    Ok(c) => c,
                    // weighted expressions have no plain count
                    Err(Error::WeightedExpression) => continue,
                    Err(err) => panic!("{e}: {err}"),
                };
                for n in 0..=nmax {
                    let brute = count_bf(&e, &field, n, &budget()).unwrap();
                    assert_eq!(closed[n], BigUint::from(brute), "{e} q={q} n={n}");
                }
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let field = f(2);
        let bd = budget();
        assert_eq!(orbit_count_bf(&b(Aut), &field, 2, &bd).unwrap(), 3);
        assert_eq!(
            orbit_count_bf(&SpeciesExpr::assembly(Vplus), &field, 3, &bd).unwrap(),
            3
        );
        assert_eq!(orbit_count_bf(&b(Bases), &field, 3, &bd).unwrap(), 1);
        let orbits = orbit_classes_bf(
            &SpeciesExpr::assembly(SpeciesExpr::mark(Vplus)),
            &field,
            2,
            &bd,
        )
        .unwrap();
        let sizes: Vec<u64> = orbits.iter().map(|o| o.size).collect();
        assert_eq!(sizes.iter().sum::<u64>(), 4);
        let weights: BTreeSet<String> = orbits.iter().map(|o| o.weight.to_string()).collect();
        assert_eq!(
            weights,
            ["t", "t^2"].into_iter().map(String::from).collect()
        );
    }

    #[test]
    fn burnside_agrees_with_orbit_closure() {
        for (q, nmax) in [(2u32, 3usize), (3, 2)] {
            let field = f(q);
            for e in samples() {
                for n in 0..=nmax {
                    orbit_count_bf(&e, &field, n, &budget()).unwrap();
                }
            }
        }
    }

    #[test]
    fn generators_generate() {
        for (q, n) in [(2u32, 3usize), (3, 2), (4, 2)] {
            let field = f(q);
            let gens = gl_generators(&field, n);
            let mut seen: BTreeSet<Matrix> = BTreeSet::from([Matrix::identity(n)]);
            let mut frontier = vec![Matrix::identity(n)];
            while let Some(m) = frontier.pop() {
                for g in &gens {
                    let p = g.mul(&m, &field).unwrap();
                    if seen.insert(p.clone()) {
                        frontier.push(p);
                    }
                }
            }
            assert_eq!(BigUint::from(seen.len()), gl_order(q, n));
        }
    }

    #[test]
    fn zindex_examples() {
        let field = f(2);
        let bd = budget();
        assert_eq!(
            zindex_bf(&b(One), &field, 3, &bd).unwrap(),
            CycleIndexSeries::one(&field, 3)
        );
        let z = zindex_bf(&b(Aut), &field, 2, &bd).unwrap();
        assert_eq!(z.terms().len(), 5);
        assert!(z
            .terms()
            .values()
            .all(|c| *c == BigRational::from_integer(1.into())));
    }

    #[test]
    fn zindex_matches_closed_forms() {
        let field = f(2);
        for e in samples().into_iter().filter(|e| !e.has_mark()) {
            let brute = zindex_bf(&e, &field, 3, &budget()).unwrap();
            assert_eq!(
                class_cycle_index(&e, &field, 3, &budget()).unwrap(),
                brute,
                "{e}"
            );
            assert_eq!(cycle_index(&e, &field, 3, &budget()).unwrap(), brute, "{e}");
            let gen: RationalSeries = gen_series(&e, &field, 3, &budget()).unwrap();
            assert_eq!(brute.specialize_generating(), gen, "{e}");
        }
    }

    /// `|(F+G)^[n]| = sum_m |F^[m] G^[n-m]|` on structures.
    #[test]
    fn symmetric_power_of_a_sum() {
        let field = f(2);
        for (x, y) in [(Vplus, Proj), (Fscalar, Vplus), (Proj, Sub(1))] {
            for k in 0..=3 {
                let lhs = SpeciesExpr::sym(SpeciesExpr::sum(x.clone(), y.clone()), k);
                for n in 0..=3 {
                    let left = count_bf(&lhs, &field, n, &budget()).unwrap();
                    let right: u64 = (0..=k)
                        .map(|m| {
                            let p = SpeciesExpr::product(
                                SpeciesExpr::sym(x.clone(), m),
                                SpeciesExpr::sym(y.clone(), k - m),
                            );
                            count_bf(&p, &field, n, &budget()).unwrap()
                        })
                        .sum();
                    assert_eq!(left, right, "k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn budgets_are_enforced() {
        let field = f(2);
        let tight = Budget {
            enumeration: 100,
            structures: 10,
        };
        assert!(matches!(
            enumerate_structures(&b(End), &field, 3, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            enumerate_structures(&SpeciesExpr::assembly(Vplus), &field, 3, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
