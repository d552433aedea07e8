//! Closed forms checked against the oracle, reported identity by identity.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::classes::{enumerate_classes, ClassKind};
use crate::coeff::{Coeff, TPoly};
use crate::config::Budget;
use crate::error::Result;
use crate::gfq::FieldSpec;
use crate::linalg::{enumerate_matrices, gl_order};
use crate::oracle;
use crate::series::{aut_type_product, PowerSeries, RationalSeries};
use crate::species::{
    counts, cycle_index, euler_assembly_types, gen_series, polya_assembly_types, type_series,
    weighted_gen_series, Builtin, SpeciesExpr,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Too large for exhaustive checking within the budget.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    pub status: Status,
    pub detail: String,
}

/// What a single check concluded.
pub enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

impl Check {
    /// Run `f`; library errors count as failures, except exhausted budgets.
    pub fn run(identity: impl Into<String>, f: impl FnOnce() -> Result<Outcome>) -> Check {
        let (status, detail) = match f() {
            Ok(Outcome::Pass(d)) => (Status::Pass, d),
            Ok(Outcome::Fail(d)) => (Status::Fail, d),
            Ok(Outcome::Skip(d)) => (Status::Skipped, d),
            Err(e @ crate::Error::BudgetExceeded { .. }) => (Status::Skipped, e.to_string()),
            Err(e) => (Status::Fail, e.to_string()),
        };
        Check {
            identity: identity.into(),
            status,
            detail,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"identity": self.identity, "status": self.status.to_string(), "detail": self.detail})
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.status, self.identity, self.detail)
    }
}

pub fn any_failed(checks: &[Check]) -> bool {
    checks.iter().any(|c| c.status == Status::Fail)
}

fn expect<T: PartialEq + fmt::Debug>(got: T, want: T) -> Outcome {
    if got == want {
        Outcome::Pass(format!("{got:?}"))
    } else {
        Outcome::Fail(format!("got {got:?}, expected {want:?}"))
    }
}

fn all(results: Vec<Outcome>) -> Outcome {
    let mut last = String::new();
    let total = results.len();
    for r in results {
        match r {
            Outcome::Pass(d) => last = d,
            other => return other,
        }
    }
    if total == 1 {
        Outcome::Pass(last)
    } else {
        Outcome::Pass(format!("{total} comparisons agree"))
    }
}

fn b(x: Builtin) -> SpeciesExpr {
    SpeciesExpr::Builtin(x)
}

pub fn corpus_builtins() -> Vec<Builtin> {
    use Builtin::*;
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
        Sub(1),
        Sub(2),
        Fscalar,
        Fstar,
        RepCyclic(2),
    ]
}

/// Expressions without symmetric powers, assemblies, or marks.
pub fn plain_corpus() -> Vec<SpeciesExpr> {
    use Builtin::*;
    let mut out: Vec<SpeciesExpr> = corpus_builtins().into_iter().map(b).collect();
    out.extend([
        SpeciesExpr::sum(Elem, Proj),
        SpeciesExpr::product(Vplus, Vplus),
        SpeciesExpr::product(Elem, Aut),
        SpeciesExpr::product(Proj, Bases),
        SpeciesExpr::product(End, Fstar),
        SpeciesExpr::power(SpeciesExpr::sum(Proj, Fstar), 2),
        SpeciesExpr::plus(SpeciesExpr::product(Aut, Elem)),
        SpeciesExpr::product(Sub(1), SpeciesExpr::plus(V)),
    ]);
    out
}

/// The operands of the assemblies in [`corpus`].
pub fn assembly_operands() -> Vec<SpeciesExpr> {
    use Builtin::*;
    vec![
        b(Vplus),
        b(Fscalar),
        b(Fstar),
        SpeciesExpr::sum(Fscalar, Vplus),
        SpeciesExpr::plus(Elem),
        b(Proj),
    ]
}

pub fn corpus() -> Vec<SpeciesExpr> {
    use Builtin::*;
    let mut out = plain_corpus();
    out.extend(assembly_operands().into_iter().map(SpeciesExpr::assembly));
    out.extend([
        SpeciesExpr::sym(Vplus, 2),
        SpeciesExpr::sym(Proj, 2),
        SpeciesExpr::sym(Vplus, 3),
        SpeciesExpr::assembly(SpeciesExpr::mark(Vplus)),
        SpeciesExpr::mark(SpeciesExpr::product(SpeciesExpr::mark(Proj), Elem)),
    ]);
    out
}

/// Rough number of transports a Burnside sum over all of GL_n costs.
fn burnside_work(e: &SpeciesExpr, field: &FieldSpec, n: usize, budget: &Budget) -> Result<u64> {
    let count = oracle::count_bf(e, field, n, budget)?;
    let gamma = gl_order(field.q(), n).to_u64().unwrap_or(u64::MAX);
    Ok(count.saturating_mul(gamma))
}

const WORK_LIMIT: u64 = 4_000_000;

/// Every closed form against enumeration over `field`, in dimensions up to `max_dim`.
pub fn verify(field: &FieldSpec, max_dim: usize, budget: &Budget) -> Vec<Check> {
    let q = field.q();
    let mut out = Vec::new();

    for n in 0..=max_dim {
        out.push(Check::run(format!("gamma_{n} = |GL_{n}(F_{q})|"), || {
            let brute = enumerate_matrices(field, n, true, budget)?.count();
            Ok(expect(BigUint::from(brute), gl_order(q, n)))
        }));
    }

    for n in 0..=max_dim {
        out.push(Check::run(
            format!("class sizes in dimension {n} sum to gamma_{n}"),
            || {
                let total: BigUint = enumerate_classes(field, n, ClassKind::Aut)
                    .into_iter()
                    .map(|c| c.class_size)
                    .sum();
                Ok(expect(total, gl_order(q, n)))
            },
        ));
        out.push(Check::run(
            format!("centralizer orders in dimension {n} by brute force"),
            || {
                let group: Vec<_> = enumerate_matrices(field, n, true, budget)?.collect();
                if (group.len() as u64).saturating_mul(group.len() as u64) > WORK_LIMIT * 4 {
                    return Ok(Outcome::Skip(format!("|GL_{n}| = {}", group.len())));
                }
                let mut results = Vec::new();
                for c in enumerate_classes(field, n, ClassKind::Aut) {
                    let rep = &c.representative;
                    let commuting = group
                        .iter()
                        .filter(|g| g.mul(rep, field).ok() == rep.mul(g, field).ok())
                        .count();
                    results.push(expect(
                        BigUint::from(commuting),
                        c.centralizer_order.clone(),
                    ));
                }
                Ok(all(results))
            },
        ));
    }

    out.push(Check::run("Aut types = prod (1 - x^r)/(1 - q x^r)", || {
        let counts: Vec<BigRational> = (0..=6)
            .map(|n| {
                BigRational::from_integer(enumerate_classes(field, n, ClassKind::Aut).len().into())
            })
            .collect();
        Ok(expect(counts, aut_type_product(q, 6).coeffs().to_vec()))
    }));

    for x in corpus_builtins() {
        out.push(Check::run(
            format!("fixed points of {x}: closed form = enumeration"),
            || {
                let e = b(x.clone());
                let mut results = Vec::new();
                for n in 0..=max_dim {
                    if x.fix_closed(field, &crate::linalg::InvariantData::identity(field, n))
                        .is_none()
                    {
                        return Ok(Outcome::Skip("computed by enumeration only".into()));
                    }
                    let all_s = oracle::enumerate_structures(&e, field, n, budget)?;
                    for c in enumerate_classes(field, n, ClassKind::Aut) {
                        let brute = oracle::fixed_count(&e, &all_s, &c.representative, field)?;
                        let closed = x.fix_closed(field, &c.invariant).expect("closed form");
                        if closed != BigUint::from(brute) {
                            results.push(Outcome::Fail(format!(
                                "{}: closed {closed}, brute {brute}",
                                c.invariant
                            )));
                        }
                    }
                }
                results.push(Outcome::Pass(format!(
                    "all classes up to dimension {max_dim}"
                )));
                Ok(all(results))
            },
        ));
    }

    for e in corpus() {
        out.push(Check::run(format!("structure counts of {e}"), || {
            if e.has_mark() {
                let w = weighted_gen_series(&e, field, max_dim, budget)?;
                let mut results = Vec::new();
                for n in 0..=max_dim {
                    let inv = oracle::inventory(&e, field, n, budget)?;
                    let gamma = BigRational::from_integer(BigInt::from(gl_order(q, n)));
                    results.push(expect(w.coeff(n).clone(), inv.scale(&(rat_one() / gamma))));
                }
                return Ok(all(results));
            }
            let closed = counts(&e, field, max_dim, budget)?;
            let brute = (0..=max_dim)
                .map(|n| oracle::count_bf(&e, field, n, budget).map(BigUint::from))
                .collect::<Result<Vec<_>>>()?;
            Ok(expect(closed, brute))
        }));
        out.push(Check::run(format!("types of {e} = orbits"), || {
            let closed: PowerSeries<TPoly> = type_series(&e, field, max_dim, budget)?;
            let mut results = Vec::new();
            let mut skipped = Vec::new();
            for n in 0..=max_dim {
                if burnside_work(&e, field, n, budget)? > WORK_LIMIT {
                    skipped.push(n.to_string());
                    continue;
                }
                let burnside = oracle::orbit_count_bf(&e, field, n, budget)?;
                let orbits = oracle::orbit_classes_bf(&e, field, n, budget)?;
                let w = orbits
                    .iter()
                    .fold(TPoly::default(), |acc, o| acc.add(&o.weight));
                results.push(expect(closed.coeff(n).clone(), w.clone()));
                results.push(expect(
                    w.eval(&rat_one()),
                    BigRational::from_integer(burnside.into()),
                ));
            }
            Ok(match all(results) {
                Outcome::Pass(_) if skipped.len() == max_dim + 1 => {
                    Outcome::Skip("every dimension too large".into())
                }
                Outcome::Pass(d) if !skipped.is_empty() => Outcome::Pass(format!(
                    "{d}; dimensions {} too large, not checked",
                    skipped.join(", ")
                )),
                other => other,
            })
        }));
    }

    for e in plain_corpus() {
        out.push(Check::run(
            format!("cycle index of {e} = sum over GL_n"),
            || {
                for n in 0..=max_dim {
                    if burnside_work(&e, field, n, budget)? > WORK_LIMIT {
                        return Ok(Outcome::Skip(format!("dimension {n} too large")));
                    }
                }
                let closed = cycle_index(&e, field, max_dim, budget)?;
                let brute = oracle::zindex_bf(&e, field, max_dim, budget)?;
                Ok(if closed == brute {
                    Outcome::Pass(format!("{} terms", closed.terms().len()))
                } else {
                    Outcome::Fail(format!("closed {closed} vs literal {brute}"))
                })
            },
        ));
        out.push(Check::run(
            format!("cycle index of {e} specializes to both series"),
            || {
                let z = cycle_index(&e, field, max_dim, budget)?;
                let gen: RationalSeries = gen_series(&e, field, max_dim, budget)?;
                let types: RationalSeries = type_series(&e, field, max_dim, budget)?;
                Ok(all(vec![
                    expect(z.specialize_generating(), gen),
                    expect(z.specialize_type(), types),
                ]))
            },
        ));
    }
    out
}

/// The acceptance criteria. `parse_round_trip` supplies the check of the
/// expression syntax, which lives outside this crate.
pub fn selftest(
    budget: &Budget,
    parse_round_trip: &dyn Fn() -> std::result::Result<(), String>,
) -> Vec<Check> {
    let f2 = FieldSpec::prime(2).expect("2 is prime");
    let f3 = FieldSpec::prime(3).expect("3 is prime");
    let f4 = FieldSpec::from_order(4).expect("4 is a prime power");
    let ints = |v: &[i64]| -> Vec<BigRational> {
        v.iter()
            .map(|&n| BigRational::from_integer(n.into()))
            .collect()
    };
    let ratio = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let gen = |e: &SpeciesExpr, field: &FieldSpec, order: usize| -> Result<RationalSeries> {
        gen_series(e, field, order, budget)
    };
    let types = |e: &SpeciesExpr, field: &FieldSpec, order: usize| -> Result<RationalSeries> {
        type_series(e, field, order, budget)
    };
    let bf_counts = |e: &SpeciesExpr, field: &FieldSpec, nmax: usize| -> Result<Vec<u64>> {
        (0..=nmax)
            .map(|n| oracle::count_bf(e, field, n, budget))
            .collect()
    };
    let orbit_counts =
        |e: &SpeciesExpr, field: &FieldSpec, nmax: usize| -> Result<Vec<BigRational>> {
            (0..=nmax)
                .map(|n| {
                    oracle::orbit_count_bf(e, field, n, budget)
                        .map(|c| BigRational::from_integer(c.into()))
                })
                .collect()
        };
    use Builtin::*;
    let mut out = Vec::new();

    out.push(Check::run(
        "criterion 1: gamma_n matches invertible-matrix counts",
        || {
            let brute = (0..=3)
                .map(|n| Ok(enumerate_matrices(&f2, n, true, budget)?.count() as u64))
                .collect::<Result<Vec<_>>>()?;
            let closed: Vec<u64> = (0..=3).map(|n| gl_order(2, n).to_u64().unwrap()).collect();
            Ok(all(vec![
                expect(brute.clone(), vec![1, 1, 6, 168]),
                expect(closed, brute),
            ]))
        },
    ));

    out.push(Check::run(
        "criterion 2: generating-series counts match enumeration",
        || {
            let mut results = Vec::new();
            for (field, nmax) in [(&f2, 3), (&f3, 2)] {
                for x in [
                    Elem,
                    Proj,
                    End,
                    Aut,
                    Bases,
                    Sub(1),
                    Sub(2),
                    V,
                    Vplus,
                    One,
                    Zero,
                ] {
                    let e = b(x);
                    let closed: Vec<u64> = counts(&e, field, nmax, budget)?
                        .iter()
                        .map(|c| c.to_u64().unwrap())
                        .collect();
                    results.push(expect(closed, bf_counts(&e, field, nmax)?));
                }
            }
            Ok(all(results))
        },
    ));

    out.push(Check::run(
        "criterion 3: Aut types = prod (1-x^r)/(1-qx^r) = class counts",
        || {
            let mut results = Vec::new();
            for (field, nmax, want) in [(&f2, 3, ints(&[1, 1, 3, 6])), (&f3, 2, ints(&[1, 2, 8]))] {
                let product = aut_type_product(field.q(), nmax);
                let classes: Vec<BigRational> = (0..=nmax)
                    .map(|n| {
                        BigRational::from_integer(
                            enumerate_classes(field, n, ClassKind::Aut).len().into(),
                        )
                    })
                    .collect();
                results.push(expect(product.coeffs().to_vec(), want.clone()));
                results.push(expect(orbit_counts(&b(Aut), field, nmax)?, want));
                results.push(expect(classes, product.coeffs().to_vec()));
            }
            Ok(all(results))
        },
    ));

    out.push(Check::run(
        "criterion 4: cycle index specializations",
        || {
            let mut results = Vec::new();
            for e in plain_corpus() {
                let z = cycle_index(&e, &f2, 3, budget)?;
                results.push(expect(z.specialize_generating(), gen(&e, &f2, 3)?));
                results.push(expect(
                    z.specialize_type(),
                    PowerSeries::from_coeffs(3, orbit_counts(&e, &f2, 3)?),
                ));
            }
            Ok(all(results))
        },
    ));

    out.push(Check::run("criterion 5: product identities", || {
        let pc = plain_corpus();
        let mut results = Vec::new();
        for (i, j) in [
            (2, 3),
            (3, 3),
            (8, 8),
            (2, 5),
            (4, 11),
            (14, 15),
            (3, 10),
            (5, 8),
            (12, 2),
            (15, 19),
        ] {
            let (x, y) = (&pc[i], &pc[j]);
            let p = SpeciesExpr::product(x.clone(), y.clone());
            results.push(expect(
                gen(&p, &f2, 3)?,
                gen(x, &f2, 3)?.mul(&gen(y, &f2, 3)?)?,
            ));
            results.push(expect(
                types(&p, &f2, 3)?,
                types(x, &f2, 3)?.mul(&types(y, &f2, 3)?)?,
            ));
            let zp = cycle_index(&p, &f2, 3, budget)?;
            let zxy = cycle_index(x, &f2, 3, budget)?.mul(&cycle_index(y, &f2, 3, budget)?)?;
            results.push(expect(zp == zxy, true));
            let (fx, fy, h) = (
                bf_counts(x, &f2, 3)?,
                bf_counts(y, &f2, 3)?,
                bf_counts(&p, &f2, 3)?,
            );
            for n in 0..=3 {
                let sum: BigUint = (0..=n)
                    .map(|k| {
                        gl_order(2, n) / (gl_order(2, k) * gl_order(2, n - k))
                            * BigUint::from(fx[k] * fy[n - k])
                    })
                    .sum();
                results.push(expect(BigUint::from(h[n]), sum));
            }
        }
        Ok(all(results))
    }));

    out.push(Check::run("criterion 6: |F^[m]| = |F^m| / m!", || {
        let mut results = Vec::new();
        for x in [b(Vplus), SpeciesExpr::plus(Proj)] {
            for m in 0..=3usize {
                let sym = bf_counts(&SpeciesExpr::sym(x.clone(), m), &f2, 3)?;
                let pow = bf_counts(&SpeciesExpr::power(x.clone(), m), &f2, 3)?;
                let fact: u64 = (1..=m as u64).product();
                results.push(expect(sym, pow.iter().map(|c| c / fact).collect()));
                results.push(expect(pow.iter().all(|c| c % fact == 0), true));
            }
        }
        Ok(all(results))
    }));

    out.push(Check::run(
        "criterion 7: splittings 1, 1, 4, 57 and the exponential formula",
        || {
            let e = SpeciesExpr::assembly(Vplus);
            let brute = bf_counts(&e, &f2, 3)?;
            let v: RationalSeries = PowerSeries::from_fn(3, |n| {
                if n == 0 {
                    BigRational::from_integer(0.into())
                } else {
                    BigRational::new(BigInt::one(), BigInt::from(gl_order(2, n)))
                }
            });
            let via_exp: Vec<u64> = v
                .exp()?
                .coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    (c * BigRational::from_integer(BigInt::from(gl_order(2, n))))
                        .to_integer()
                        .to_u64()
                        .unwrap()
                })
                .collect();
            Ok(all(vec![
                expect(brute.clone(), vec![1, 1, 4, 57]),
                expect(via_exp, brute),
                expect(
                    gen(&e, &f2, 3)?.coeffs().to_vec(),
                    vec![ratio(1, 1), ratio(1, 1), ratio(2, 3), ratio(19, 56)],
                ),
            ]))
        },
    ));

    out.push(Check::run("criterion 8: assembly type series", || {
        let e = SpeciesExpr::assembly(Vplus);
        let mut results = vec![
            expect(
                types(&e, &f2, 5)?.coeffs().to_vec(),
                ints(&[1, 1, 2, 3, 5, 7]),
            ),
            expect(orbit_counts(&e, &f2, 3)?, ints(&[1, 1, 2, 3])),
        ];
        for a in assembly_operands() {
            let inner = types(&a, &f2, 8)?;
            results.push(expect(
                polya_assembly_types(&inner)?,
                euler_assembly_types(&inner)?,
            ));
        }
        let marked: PowerSeries<TPoly> = type_series(&SpeciesExpr::mark(Vplus), &f2, 8, budget)?;
        let w = polya_assembly_types(&marked)?;
        let direct: PowerSeries<TPoly> = type_series(
            &SpeciesExpr::assembly(SpeciesExpr::mark(Vplus)),
            &f2,
            8,
            budget,
        )?;
        results.push(expect(w, direct));
        Ok(all(results))
    }));

    out.push(Check::run("criterion 9: diagonalizations", || {
        let d = SpeciesExpr::assembly(Fscalar);
        let dx = SpeciesExpr::assembly(Fstar);
        let exp_of = |c: i64, order: usize| -> Result<RationalSeries> {
            PowerSeries::monomial(BigRational::from_integer(c.into()), 1, order).exp()
        };
        let binom = |order: usize| -> RationalSeries {
            PowerSeries::from_fn(order, |n| BigRational::from_integer((n as i64 + 1).into()))
        };
        Ok(all(vec![
            expect(gen(&d, &f2, 6)?, exp_of(2, 6)?),
            expect(bf_counts(&d, &f2, 2)?, vec![1, 2, 12]),
            expect(types(&d, &f2, 6)?, binom(6)),
            expect(orbit_counts(&d, &f2, 2)?, ints(&[1, 2, 3])),
            expect(gen(&dx, &f2, 6)?, exp_of(1, 6)?),
            expect(types(&dx, &f2, 6)?, PowerSeries::from_fn(6, |_| rat_one())),
        ]))
    }));

    out.push(Check::run("criterion 10: E(F + G) = E(F) E(G)", || {
        let lhs = SpeciesExpr::assembly(SpeciesExpr::sum(Fscalar, Vplus));
        let rhs =
            SpeciesExpr::product(SpeciesExpr::assembly(Fscalar), SpeciesExpr::assembly(Vplus));
        Ok(all(vec![
            expect(gen(&lhs, &f2, 6)?, gen(&rhs, &f2, 6)?),
            expect(types(&lhs, &f2, 6)?, types(&rhs, &f2, 6)?),
        ]))
    }));

    out.push(Check::run("criterion 11: weighted splittings", || {
        let e = SpeciesExpr::assembly(SpeciesExpr::mark(Vplus));
        let w = weighted_gen_series(&e, &f2, 2, budget)?;
        let want = vec![
            TPoly::constant(rat_one()),
            TPoly::t(),
            TPoly::new(vec![ratio(0, 1), ratio(1, 6), ratio(1, 2)]),
        ];
        let mut results = vec![expect(w.coeffs().to_vec(), want)];
        for n in 0..=2 {
            let inv = oracle::inventory(&e, &f2, n, budget)?;
            let gamma = BigRational::from_integer(BigInt::from(gl_order(2, n)));
            results.push(expect(w.coeff(n).clone(), inv.scale(&(rat_one() / gamma))));
        }
        let at_one: Vec<BigRational> = w.coeffs().iter().map(|c| c.eval(&rat_one())).collect();
        results.push(expect(
            at_one,
            gen(&SpeciesExpr::assembly(Vplus), &f2, 2)?
                .coeffs()
                .to_vec(),
        ));
        Ok(all(results))
    }));

    out.push(Check::run(
        "criterion 12: centralizer orders and class sizes",
        || {
            let mut results = Vec::new();
            for (field, nmax) in [(&f2, 3), (&f3, 2)] {
                for n in 0..=nmax {
                    let group: Vec<_> = enumerate_matrices(field, n, true, budget)?.collect();
                    for c in enumerate_classes(field, n, ClassKind::Aut) {
                        let rep = &c.representative;
                        let commuting = group
                            .iter()
                            .filter(|g| g.mul(rep, field).ok() == rep.mul(g, field).ok())
                            .count();
                        results.push(expect(
                            BigUint::from(commuting),
                            c.centralizer_order.clone(),
                        ));
                    }
                }
            }
            for field in [&f2, &f3, &f4] {
                for n in 0..=6 {
                    let total: BigUint = enumerate_classes(field, n, ClassKind::Aut)
                        .into_iter()
                        .map(|c| c.class_size)
                        .sum();
                    results.push(expect(total, gl_order(field.q(), n)));
                }
            }
            Ok(all(results))
        },
    ));

    out.push(Check::run(
        "criterion 13: functor laws, integrality, exp/log, ring axioms, parsing",
        || {
            let mut results = Vec::new();
            for n in 0..=2 {
                let group: Vec<_> = enumerate_matrices(&f2, n, true, budget)?.collect();
                for e in corpus() {
                    let all_s = oracle::enumerate_structures(&e, &f2, n, budget)?;
                    for s in &all_s {
                        for g in &group {
                            for h in &group {
                                let gh = g.mul(h, &f2)?;
                                let once = oracle::transport(&e, s, &gh, &f2)?;
                                let twice = oracle::transport(
                                    &e,
                                    &oracle::transport(&e, s, h, &f2)?,
                                    g,
                                    &f2,
                                )?;
                                if once != twice {
                                    return Ok(Outcome::Fail(format!(
                                        "{e}: transport is not functorial"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
            results.push(Outcome::Pass("functor laws".into()));
            for field in [&f2, &f3] {
                for e in corpus().into_iter().filter(|e| !e.has_mark()) {
                    types(&e, field, 4)?;
                }
            }
            results.push(Outcome::Pass("Burnside integrality".into()));
            let a: RationalSeries =
                PowerSeries::from_fn(6, |n| ratio((n * n) as i64 % 7 - 3, n as i64 + 1));
            let a0 = a.without_constant();
            let b: RationalSeries = PowerSeries::from_fn(6, |n| ratio(2 - n as i64, 3));
            let c: RationalSeries = PowerSeries::from_fn(6, |n| ratio(1, (n as i64 + 2) * 3));
            results.push(expect(a0.exp()?.log()?, a0.clone()));
            results.push(expect(a.mul(&b)?, b.mul(&a)?));
            results.push(expect(a.mul(&b)?.mul(&c)?, a.mul(&b.mul(&c)?)?));
            results.push(expect(a.mul(&b.add(&c)?)?, a.mul(&b)?.add(&a.mul(&c)?)?));
            results.push(match parse_round_trip() {
                Ok(()) => Outcome::Pass("parse/render".into()),
                Err(e) => Outcome::Fail(e),
            });
            Ok(all(results))
        },
    ));

    out
}

pub fn report_json(checks: &[Check]) -> Value {
    Value::Array(checks.iter().map(Check::to_json).collect())
}

fn rat_one() -> BigRational {
    <BigRational as One>::one()
}
