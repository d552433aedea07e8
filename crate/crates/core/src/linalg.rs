//! Dense linear algebra over F_q: matrices, subspaces, rational canonical
//! invariants, and exhaustive enumeration for small dimensions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::gfq::{FieldElem, FieldSpec};
use crate::poly::{irreducibles_up_to, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

fn mismatch(what: &str, a: &Matrix, b: &Matrix) -> Error {
    Error::DimensionMismatch(format!(
        "{what}: {}x{} and {}x{}",
        a.rows, a.cols, b.rows, b.cols
    ))
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::scalar(n, FieldElem::ONE)
    }

    pub fn scalar(n: usize, c: FieldElem) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_elems(rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Row-major integer reps.
    pub fn from_reps(field: &FieldSpec, rows: usize, cols: usize, reps: &[u32]) -> Result<Self> {
        let data = reps
            .iter()
            .map(|&r| field.elem(r))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_elems(rows, cols, data)
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_rows(cols: usize, rows: &[Vec<FieldElem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<FieldElem>]) -> Self {
        Matrix::from_rows(rows, cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix, field: &FieldSpec) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(mismatch("add", self, other));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix, field: &FieldSpec) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(mismatch("sub", self, other));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.sub(a, b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Matrix, field: &FieldSpec) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(mismatch("mul", self, other));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = field.add(out.data[idx], field.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem], field: &FieldSpec) -> Vec<FieldElem> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| {
                        field.add(acc, field.mul(a, b))
                    })
            })
            .collect()
    }

    pub fn pow(&self, e: u64, field: &FieldSpec) -> Result<Matrix> {
        if !self.is_square() {
            return Err(mismatch("pow", self, self));
        }
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field)?;
            }
            base = base.mul(&base, field)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, field: &FieldSpec) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = field.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = field.sub(m.get(i, j), field.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        self.rref(field).1.len()
    }

    pub fn is_invertible(&self, field: &FieldSpec) -> bool {
        self.is_square() && self.rank(field) == self.rows
    }

    /// Null space `{v : A v = 0}` as a subspace of F_q^cols.
    pub fn kernel(&self, field: &FieldSpec) -> Subspace {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<FieldElem>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![FieldElem::ZERO; self.cols];
                v[f] = FieldElem::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(r.get(row, f));
                }
                v
            })
            .collect();
        Subspace::span(self.cols, &basis, field)
    }

    pub fn inverse(&self, field: &FieldSpec) -> Result<Matrix> {
        if !self.is_square() {
            return Err(mismatch("inverse", self, self));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, FieldElem::ONE);
        }
        let (r, pivots) = aug.rref(field);
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// `g * self * g^{-1}` given `g` and its inverse.
    pub fn conjugate(&self, g: &Matrix, g_inv: &Matrix, field: &FieldSpec) -> Result<Matrix> {
        g.mul(self, field)?.mul(g_inv, field)
    }

    pub fn determinant(&self, field: &FieldSpec) -> Result<FieldElem> {
        if !self.is_square() {
            return Err(mismatch("determinant", self, self));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = FieldElem::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(FieldElem::ZERO);
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = field.neg(det);
            }
            let pivot = m.get(c, c);
            det = field.mul(det, pivot);
            let inv = field.inv(pivot)?;
            for i in c + 1..n {
                let factor = field.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = field.sub(m.get(i, j), field.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(zI - A)` via reduction to Hessenberg form.
    pub fn char_poly(&self, field: &FieldSpec) -> Result<Poly> {
        if !self.is_square() {
            return Err(mismatch("char_poly", self, self));
        }
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    h.data.swap(j * n + i, j * n + m);
                }
            }
            let t = field.inv(h.get(m, m - 1))?;
            for i in m + 1..n {
                let u = field.mul(h.get(i, m - 1), t);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = field.sub(h.get(i, j), field.mul(u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = field.add(h.get(j, m), field.mul(u, h.get(j, i)));
                    h.set(j, m, v);
                }
            }
        }
        // p[m] = char poly of the leading m x m block
        let mut p: Vec<Poly> = vec![Poly::one()];
        for m in 1..=n {
            let lin = Poly::linear(field, h.get(m - 1, m - 1));
            let mut pm = lin.mul(&p[m - 1], field);
            let mut t = FieldElem::ONE;
            for i in 1..m {
                t = field.mul(t, h.get(m - i, m - i - 1));
                let c = field.mul(h.get(m - i - 1, m - 1), t);
                pm = pm.sub(&p[m - i - 1].scale(c, field), field);
            }
            p.push(pm);
        }
        Ok(p.pop().expect("n + 1 entries"))
    }
}

/// A subspace of F_q^n, stored by its canonical RREF basis (rows).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Matrix,
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.basis)
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            basis: Matrix::zero(0, n),
        }
    }

    pub fn whole(n: usize) -> Self {
        Subspace {
            basis: Matrix::identity(n),
        }
    }

    /// Span of the given vectors in F_q^n.
    pub fn span(n: usize, vectors: &[Vec<FieldElem>], field: &FieldSpec) -> Self {
        Subspace::row_space(&Matrix::from_rows(n, vectors), field)
    }

    pub fn row_space(m: &Matrix, field: &FieldSpec) -> Self {
        let (r, pivots) = m.rref(field);
        let k = pivots.len();
        let basis = Matrix {
            rows: k,
            cols: m.cols,
            data: r.data[..k * m.cols].to_vec(),
        };
        Subspace { basis }
    }

    /// Build from an RREF basis without re-reducing.
    fn from_rref(basis: Matrix) -> Self {
        Subspace { basis }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElem>> {
        (0..self.dim())
            .map(|i| self.basis.row(i).to_vec())
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    /// Coordinates of `v` in the RREF basis; `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[FieldElem], field: &FieldSpec) -> Option<Vec<FieldElem>> {
        let c: Vec<FieldElem> = self.pivots().iter().map(|&p| v[p]).collect();
        let mut recon = vec![FieldElem::ZERO; self.ambient()];
        for (i, &ci) in c.iter().enumerate() {
            for (j, r) in recon.iter_mut().enumerate() {
                *r = field.add(*r, field.mul(ci, self.basis.get(i, j)));
            }
        }
        (recon == v).then_some(c)
    }

    pub fn contains(&self, v: &[FieldElem], field: &FieldSpec) -> bool {
        self.coords(v, field).is_some()
    }

    /// Image `g(W)` under a square matrix acting on column vectors.
    pub fn image(&self, g: &Matrix, field: &FieldSpec) -> Self {
        let moved = self
            .basis
            .mul(&g.transpose(), field)
            .expect("g matches the ambient dimension");
        Subspace::row_space(&moved, field)
    }

    pub fn is_invariant(&self, g: &Matrix, field: &FieldSpec) -> bool {
        self.image(g, field) == *self
    }
}

/// Order of GL_n(F_q): the product of `q^n - q^i` for `i` in `0..n`.
pub fn gl_order(q: u32, n: usize) -> BigUint {
    let qb = BigUint::from(q);
    let qn = num_traits::pow(qb.clone(), n);
    (0..n).fold(BigUint::one(), |acc, i| {
        acc * (&qn - num_traits::pow(qb.clone(), i))
    })
}

/// Gaussian binomial coefficient, from the group-order quotient.
pub fn qbinomial(q: u32, n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let num = gl_order(q, n);
    let den = gl_order(q, k) * gl_order(q, n - k) * num_traits::pow(BigUint::from(q), k * (n - k));
    if !(&num % &den).is_zero() {
        return Err(Error::NotIntegral(format!("q-binomial [{n} {k}]_{q}")));
    }
    Ok(num / den)
}

fn check_budget(what: impl Into<String>, size: &BigUint, budget: u64) -> Result<()> {
    if *size > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            what: what.into(),
            size: size.to_string(),
            budget,
        });
    }
    Ok(())
}

/// Every n x n matrix (or every invertible one) exactly once.
pub fn enumerate_matrices<'a>(
    field: &'a FieldSpec,
    n: usize,
    invertible_only: bool,
    budget: &Budget,
) -> Result<impl Iterator<Item = Matrix> + 'a> {
    let space = num_traits::pow(BigUint::from(field.q()), n * n);
    check_budget(
        format!("{n}x{n} matrices over F_{}", field.q()),
        &space,
        budget.enumeration,
    )?;
    let total = space.to_u64().expect("bounded by the budget");
    let q = u64::from(field.q());
    Ok((0..total)
        .map(move |mut idx| {
            let mut data = Vec::with_capacity(n * n);
            for _ in 0..n * n {
                data.push(field.elem((idx % q) as u32).expect("digit below q"));
                idx /= q;
            }
            Matrix {
                rows: n,
                cols: n,
                data,
            }
        })
        .filter(move |m| !invertible_only || m.is_invertible(field)))
}

/// Every k-dimensional subspace of F_q^n, ordered by pivot set then free entries.
pub fn enumerate_subspaces(
    field: &FieldSpec,
    n: usize,
    k: usize,
    budget: &Budget,
) -> Result<Vec<Subspace>> {
    let count = qbinomial(field.q(), n, k)?;
    check_budget(
        format!("{k}-subspaces of F_{}^{n}", field.q()),
        &count,
        budget.enumeration,
    )?;
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut pivots: Vec<usize> = (0..k).collect();
    let elems: Vec<FieldElem> = field.elements().collect();
    loop {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                let pivots = &pivots;
                (p + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut m = Matrix::zero(k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, FieldElem::ONE);
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                m.set(r, c, elems[d]);
            }
            out.push(Subspace::from_rref(m));
            // odometer over the free entries
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if digits[pos] < elems.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
        // next k-subset of 0..n in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Ordered tuples `(V_1, ..., V_m)` with `dim V_i = dims[i]` and
/// `V_1 + ... + V_m = F_q^n` a direct sum. Zero entries yield the zero subspace.
pub fn enumerate_decompositions(
    field: &FieldSpec,
    n: usize,
    dims: &[usize],
    budget: &Budget,
) -> Result<Vec<Vec<Subspace>>> {
    let total: usize = dims.iter().sum();
    if total != n {
        return Err(Error::DimensionMismatch(format!(
            "decomposition dimensions {dims:?} do not sum to {n}"
        )));
    }
    let q = field.q();
    let count = dims
        .iter()
        .fold(gl_order(q, n), |acc, &d| acc / gl_order(q, d));
    check_budget(
        format!("decompositions of F_{q}^{n} into {dims:?}"),
        &count,
        budget.enumeration,
    )?;
    let mut by_dim: BTreeMap<usize, Vec<Subspace>> = BTreeMap::new();
    for &d in dims {
        if let std::collections::btree_map::Entry::Vacant(e) = by_dim.entry(d) {
            e.insert(enumerate_subspaces(field, n, d, budget)?);
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<Subspace> = Vec::with_capacity(dims.len());
    decompose_rec(
        field,
        n,
        dims,
        &by_dim,
        &mut current,
        &mut Vec::new(),
        &mut out,
    );
    Ok(out)
}

fn decompose_rec(
    field: &FieldSpec,
    n: usize,
    dims: &[usize],
    by_dim: &BTreeMap<usize, Vec<Subspace>>,
    current: &mut Vec<Subspace>,
    stacked: &mut Vec<Vec<FieldElem>>,
    out: &mut Vec<Vec<Subspace>>,
) {
    let Some(&d) = dims.get(current.len()) else {
        out.push(current.clone());
        return;
    };
    for w in &by_dim[&d] {
        let before = stacked.len();
        stacked.extend(w.basis_vectors());
        if Matrix::from_rows(n, stacked).rank(field) == stacked.len() {
            current.push(w.clone());
            decompose_rec(field, n, dims, by_dim, current, stacked, out);
            current.pop();
        }
        stacked.truncate(before);
    }
}

/// Primary cyclic multiplicities `e_{phi,i}` of an endomorphism of F_q^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantData {
    n: usize,
    entries: BTreeMap<(Poly, usize), usize>,
}

impl fmt::Display for InvariantData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, ((phi, i), e)) in self.entries.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({phi},{i})->{e}")?;
        }
        write!(f, "}}")
    }
}

impl InvariantData {
    /// Build from `(phi, i) -> e` entries, dropping zero multiplicities.
    pub fn new(entries: BTreeMap<(Poly, usize), usize>) -> Self {
        let entries: BTreeMap<_, _> = entries.into_iter().filter(|(_, e)| *e > 0).collect();
        let n = entries.iter().map(|((phi, i), e)| e * i * phi.deg()).sum();
        InvariantData { n, entries }
    }

    pub fn empty() -> Self {
        InvariantData {
            n: 0,
            entries: BTreeMap::new(),
        }
    }

    /// The class of the identity of F_q^n.
    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((Poly::z_minus_one(field), 1), n);
        InvariantData::new(entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<(Poly, usize), usize> {
        &self.entries
    }

    pub fn multiplicity(&self, phi: &Poly, i: usize) -> usize {
        self.entries.get(&(phi.clone(), i)).copied().unwrap_or(0)
    }

    /// Distinct irreducibles occurring, in polynomial order.
    pub fn polys(&self) -> Vec<Poly> {
        let mut v: Vec<Poly> = self.entries.keys().map(|(p, _)| p.clone()).collect();
        v.dedup();
        v
    }

    /// Partition attached to `phi`, parts in decreasing order.
    pub fn partition(&self, phi: &Poly) -> Vec<usize> {
        let mut parts = Vec::new();
        for ((p, i), e) in self.entries.iter().rev() {
            if p == phi {
                parts.extend(std::iter::repeat_n(*i, *e));
            }
        }
        parts
    }

    pub fn is_automorphism(&self) -> bool {
        let z = Poly::z();
        self.entries.keys().all(|(p, _)| *p != z)
    }

    pub fn is_identity(&self, field: &FieldSpec) -> bool {
        *self == InvariantData::identity(field, self.n)
    }

    /// Block-diagonal form with `e` copies of the companion matrix of `phi^i`,
    /// blocks ordered by `(phi, i)`.
    pub fn representative(&self, field: &FieldSpec) -> Matrix {
        let mut blocks = Vec::new();
        for ((phi, i), e) in &self.entries {
            let c = phi
                .pow(*i, field)
                .companion_matrix(field)
                .expect("phi^i is monic of positive degree");
            blocks.extend(std::iter::repeat_n(c, *e));
        }
        Matrix::block_diag(&blocks)
    }

    /// Sum of the two invariant multisets (direct sum of endomorphisms).
    pub fn direct_sum(&self, other: &InvariantData) -> InvariantData {
        let mut entries = self.entries.clone();
        for (k, e) in &other.entries {
            *entries.entry(k.clone()).or_insert(0) += e;
        }
        InvariantData::new(entries)
    }
}

/// Factor a monic polynomial into monic irreducibles with multiplicities.
pub fn factor(p: &Poly, field: &FieldSpec) -> Vec<(Poly, usize)> {
    let mut rest = p.make_monic(field);
    let mut out = Vec::new();
    let table = irreducibles_up_to(field, rest.deg() / 2);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        for phi in &table[d - 1] {
            let mut mult = 0;
            loop {
                let (qt, r) = rest.divmod(phi, field).expect("phi is nonzero");
                if !r.is_zero() {
                    break;
                }
                rest = qt;
                mult += 1;
            }
            if mult > 0 {
                out.push((phi.clone(), mult));
            }
        }
        d += 1;
    }
    if rest.deg() >= 1 {
        match out.iter_mut().find(|(phi, _)| *phi == rest) {
            Some(entry) => entry.1 += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort();
    out
}

/// Rational canonical invariants of a square matrix.
///
/// For each irreducible factor `phi` of the characteristic polynomial, the
/// kernel ladder `d_j = dim ker phi(A)^j / deg phi` gives
/// `e_{phi,i} = 2 d_i - d_{i-1} - d_{i+1}`.
pub fn invariant_data(a: &Matrix, field: &FieldSpec) -> Result<InvariantData> {
    let n = a.rows();
    let chi = a.char_poly(field)?;
    let mut entries = BTreeMap::new();
    for (phi, mult) in factor(&chi, field) {
        let deg = phi.deg();
        let m = phi.eval_matrix(a, field)?;
        let mut power = Matrix::identity(n);
        let mut ladder = vec![0usize];
        for _ in 0..=mult {
            power = power.mul(&m, field)?;
            ladder.push((n - power.rank(field)) / deg);
        }
        for i in 1..=mult {
            let e = 2 * ladder[i] - ladder[i - 1] - ladder[i + 1];
            if e > 0 {
                entries.insert((phi.clone(), i), e);
            }
        }
    }
    Ok(InvariantData::new(entries))
}
