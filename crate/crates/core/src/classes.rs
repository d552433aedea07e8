//! Conjugacy classes of GL_n(F_q) and M_n(F_q) as invariant data, with
//! centralizer orders and class sizes.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::coeff::Coeff;
use crate::error::Result;
use crate::gfq::FieldSpec;
use crate::linalg::{gl_order, InvariantData, Matrix};
use crate::poly::{irreducibles_up_to, Poly};

/// Which matrices are being classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    /// Invertible matrices; `z` never occurs among the invariants.
    Aut,
    /// All matrices.
    End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub invariant: InvariantData,
    pub centralizer_order: BigUint,
    pub class_size: BigUint,
    pub representative: Matrix,
}

impl ConjClass {
    pub fn from_invariant(invariant: InvariantData, field: &FieldSpec) -> Self {
        let q = field.q();
        let centralizer = centralizer_order(&invariant, q);
        let group = gl_order(q, invariant.n());
        debug_assert!((&group % &centralizer).is_zero());
        let class_size = group / &centralizer;
        let representative = invariant.representative(field);
        ConjClass {
            invariant,
            centralizer_order: centralizer,
            class_size,
            representative,
        }
    }

    pub fn n(&self) -> usize {
        self.invariant.n()
    }
}

/// Partitions of `s` with parts in decreasing order.
pub fn partitions(s: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, s, &mut Vec::new(), &mut out);
    out
}

/// One class per invariant datum of total weight `n`.
pub fn enumerate_classes(field: &FieldSpec, n: usize, kind: ClassKind) -> Vec<ConjClass> {
    enumerate_invariants(field, n, kind)
        .into_iter()
        .map(|inv| ConjClass::from_invariant(inv, field))
        .collect()
}

/// Invariant data of all classes of weight `n`, without centralizer data.
pub fn enumerate_invariants(field: &FieldSpec, n: usize, kind: ClassKind) -> Vec<InvariantData> {
    let z = Poly::z();
    let polys: Vec<Poly> = irreducibles_up_to(field, n)
        .into_iter()
        .flatten()
        .filter(|p| kind == ClassKind::End || *p != z)
        .collect();
    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    assign(&polys, 0, n, &mut current, &mut out);
    out.sort();
    out
}

fn assign(
    polys: &[Poly],
    start: usize,
    remaining: usize,
    current: &mut BTreeMap<(Poly, usize), usize>,
    out: &mut Vec<InvariantData>,
) {
    if remaining == 0 {
        out.push(InvariantData::new(current.clone()));
        return;
    }
    for idx in start..polys.len() {
        let phi = &polys[idx];
        let d = phi.deg();
        if d > remaining {
            // polys are sorted by degree
            break;
        }
        for s in 1..=remaining / d {
            for lambda in partitions(s) {
                let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
                for part in lambda {
                    *mult.entry(part).or_insert(0) += 1;
                }
                for (&i, &e) in &mult {
                    current.insert((phi.clone(), i), e);
                }
                assign(polys, idx + 1, remaining - s * d, current, out);
                for &i in mult.keys() {
                    current.remove(&(phi.clone(), i));
                }
            }
        }
    }
}

/// Order of the centralizer in GL_n(F_q) of any matrix with these invariants.
///
/// For each irreducible `phi` with partition `lambda` and `Q = q^deg(phi)`
/// the factor is `Q^(|lambda| + 2 n(lambda)) * prod_i prod_{k=1}^{m_i} (1 - Q^-k)`.
pub fn centralizer_order(inv: &InvariantData, q: u32) -> BigUint {
    let mut total = BigUint::one();
    for phi in inv.polys() {
        let big_q = num_traits::pow(BigUint::from(q), phi.deg());
        let lambda = inv.partition(&phi);
        let size: usize = lambda.iter().sum();
        let n_lambda: usize = lambda.iter().enumerate().map(|(j, &part)| j * part).sum();
        let mut exponent = (size + 2 * n_lambda) as i64;
        let mut factor = BigUint::one();
        for i in lambda
            .iter()
            .copied()
            .collect::<std::collections::BTreeSet<_>>()
        {
            let m = inv.multiplicity(&phi, i);
            for k in 1..=m {
                factor *= num_traits::pow(big_q.clone(), k) - BigUint::one();
                exponent -= k as i64;
            }
        }
        if exponent >= 0 {
            factor *= num_traits::pow(big_q, exponent as usize);
        } else {
            let den = num_traits::pow(big_q, (-exponent) as usize);
            debug_assert!((&factor % &den).is_zero());
            factor /= den;
        }
        total *= factor;
    }
    total
}

/// `sum over classes of class_size * f(class)`.
pub fn class_weighted_sum<R, F>(classes: &[ConjClass], mut f: F) -> Result<R>
where
    R: Coeff,
    F: FnMut(&ConjClass) -> Result<R>,
{
    let mut acc = R::zero();
    for c in classes {
        let v = f(c)?;
        acc = acc.add(&v.mul(&R::from_biguint(&c.class_size)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Budget;
    use crate::linalg::{enumerate_matrices, invariant_data};
    use num_rational::BigRational;
    use std::collections::BTreeSet;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    fn inv(field: &FieldSpec, items: &[(&[u32], usize, usize)]) -> InvariantData {
        let mut m = BTreeMap::new();
        for (reps, i, e) in items {
            m.insert((Poly::from_reps(field, reps).unwrap(), *i), *e);
        }
        InvariantData::new(m)
    }

    #[test]
    fn partitions_small() {
        assert_eq!(partitions(0), vec![Vec::<usize>::new()]);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(7).len(), 15);
    }

    #[test]
    fn gl2_f2_classes() {
        let field = f(2);
        let classes = enumerate_classes(&field, 2, ClassKind::Aut);
        let got: BTreeSet<_> = classes.iter().map(|c| c.invariant.clone()).collect();
        let expect: BTreeSet<_> = [
            inv(&field, &[(&[1, 1], 1, 2)]),
            inv(&field, &[(&[1, 1], 2, 1)]),
            inv(&field, &[(&[1, 1, 1], 1, 1)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);
        assert_eq!(enumerate_classes(&field, 3, ClassKind::Aut).len(), 6);
        let empty = enumerate_classes(&field, 0, ClassKind::Aut);
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].centralizer_order, BigUint::one());
    }

    #[test]
    fn centralizer_examples() {
        let field = f(2);
        assert_eq!(
            centralizer_order(&inv(&field, &[(&[1, 1], 1, 2)]), 2),
            BigUint::from(6u32)
        );
        assert_eq!(
            centralizer_order(&inv(&field, &[(&[1, 1], 2, 1)]), 2),
            BigUint::from(2u32)
        );
        assert_eq!(
            centralizer_order(&inv(&field, &[(&[1, 1], 1, 1)]), 2),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn weighted_sum_examples() {
        let field = f(2);
        let aut = enumerate_classes(&field, 2, ClassKind::Aut);
        let total: BigRational =
            class_weighted_sum(&aut, |_| Ok(<BigRational as One>::one())).unwrap();
        assert_eq!(total, BigRational::from_integer(6.into()));
        let end = enumerate_classes(&field, 2, ClassKind::End);
        let total: BigRational =
            class_weighted_sum(&end, |_| Ok(<BigRational as One>::one())).unwrap();
        assert_eq!(total, BigRational::from_integer(16.into()));
        // ordered bases: only the identity fixes any, and it fixes all 6
        let bases: BigRational = class_weighted_sum(&aut, |c| {
            Ok(if c.invariant.is_identity(&field) {
                BigRational::from_integer(6.into())
            } else {
                <BigRational as Zero>::zero()
            })
        })
        .unwrap();
        assert_eq!(bases, BigRational::from_integer(6.into()));
    }

    #[test]
    fn representatives_carry_their_invariants() {
        for q in [2u32, 3] {
            let field = f(q);
            for n in 0..=3 {
                for kind in [ClassKind::Aut, ClassKind::End] {
                    for c in enumerate_classes(&field, n, kind) {
                        assert_eq!(
                            invariant_data(&c.representative, &field).unwrap(),
                            c.invariant
                        );
                        assert_eq!(&c.class_size * &c.centralizer_order, gl_order(q, n));
                        if kind == ClassKind::Aut {
                            assert!(c.invariant.is_automorphism());
                            assert!(c.representative.is_invertible(&field));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_group_orders() {
        for q in [2u32, 3, 4] {
            let field = f(q);
            for n in 0..=6 {
                let total: BigUint = enumerate_classes(&field, n, ClassKind::Aut)
                    .iter()
                    .map(|c| c.class_size.clone())
                    .sum();
                assert_eq!(total, gl_order(q, n), "q={q} n={n}");
            }
            for n in 0..=4 {
                let total: BigUint = enumerate_classes(&field, n, ClassKind::End)
                    .iter()
                    .map(|c| c.class_size.clone())
                    .sum();
                assert_eq!(
                    total,
                    num_traits::pow(BigUint::from(q), n * n),
                    "q={q} n={n}"
                );
            }
        }
    }

    /// Exhaustive: the centralizer formula equals the number of invertible
    /// matrices commuting with the representative, and classes partition GL_n.
    #[test]
    fn centralizers_by_brute_force() {
        let b = Budget::default();
        for (q, nmax) in [(2u32, 3usize), (3, 2)] {
            let field = f(q);
            for n in 1..=nmax {
                let gl: Vec<Matrix> = enumerate_matrices(&field, n, true, &b).unwrap().collect();
                let mut sizes: BTreeMap<InvariantData, usize> = BTreeMap::new();
                for g in &gl {
                    *sizes.entry(invariant_data(g, &field).unwrap()).or_insert(0) += 1;
                }
                let classes = enumerate_classes(&field, n, ClassKind::Aut);
                assert_eq!(classes.len(), sizes.len());
                for c in &classes {
                    let rep = &c.representative;
                    let commuting = gl
                        .iter()
                        .filter(|g| g.mul(rep, &field).unwrap() == rep.mul(g, &field).unwrap())
                        .count();
                    assert_eq!(BigUint::from(commuting), c.centralizer_order);
                    assert_eq!(BigUint::from(sizes[&c.invariant]), c.class_size);
                }
            }
        }
    }
}
