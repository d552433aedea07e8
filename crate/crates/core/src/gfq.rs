//! Arithmetic in the finite field F_q, q = p^k.
//!
//! Elements are canonical indices in `[0, q)`. For a prime field the index is
//! the residue; for `k > 1` it is the base-p digit vector of the reduced
//! polynomial representative (constant term is the lowest digit). All
//! arithmetic is table driven.

use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on the field order.
pub const DEFAULT_MAX_Q: u64 = 64;

/// An element of F_q, stored as its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u16);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn rep(self) -> u32 {
        u32::from(self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field F_q with precomputed operation tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic `m` over F_p (coefficients lowest first).
fn rem_mod_p(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (j, &c) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomial of degree `d` over F_p whose lower coefficients are the
/// base-p digits of `index` (constant term lowest).
fn monic_from_index(index: u64, d: u32, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(d as usize + 1);
    let mut x = index;
    for _ in 0..d {
        c.push((x % u64::from(p)) as u32);
        x /= u64::from(p);
    }
    c.push(1);
    c
}

fn irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let d = (f.len() - 1) as u32;
    for e in 1..=d / 2 {
        for idx in 0..u64::from(p).pow(e) {
            let g = monic_from_index(idx, e, p);
            if rem_mod_p(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// F_{p^k} with the default order bound.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        Self::with_bound(p, k, DEFAULT_MAX_Q)
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Field of order `q`, inferring `q = p^k`.
    pub fn from_order(q: u32) -> Result<Self> {
        let p = (2..=q.max(2)).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
        if !is_prime(p) {
            return Err(Error::NotPrimePower(q));
        }
        let mut k = 0;
        let mut x = q;
        while x.is_multiple_of(p) && x > 1 {
            x /= p;
            k += 1;
        }
        if x != 1 || k == 0 {
            return Err(Error::NotPrimePower(q));
        }
        Self::new(p, k)
    }

    pub fn with_bound(p: u32, k: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::BadExtensionDegree);
        }
        let qq = u64::from(p).checked_pow(k).unwrap_or(u64::MAX);
        if qq > bound || qq > u64::from(u16::MAX) {
            return Err(Error::FieldTooLarge { q: qq, bound });
        }
        let q = qq as u32;
        let modulus = if k > 1 {
            let m = (0..u64::from(p).pow(k))
                .map(|idx| monic_from_index(idx, k, p))
                .find(|f| irreducible_mod_p(f, p))
                .expect("an irreducible polynomial of every degree exists");
            Some(m)
        } else {
            None
        };

        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut y = x;
            for _ in 0..k {
                v.push(y % p);
                y /= p;
            }
            v
        };
        let undigits = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s) as u16;
                let prod = match &modulus {
                    None => (a * b) % p,
                    Some(m) => {
                        let mut full = vec![0u32; 2 * k as usize - 1];
                        for (i, x) in da.iter().enumerate() {
                            for (j, y) in db.iter().enumerate() {
                                full[i + j] = (full[i + j] + x * y) % p;
                            }
                        }
                        let mut r = rem_mod_p(&full, m, p);
                        r.resize(k as usize, 0);
                        undigits(&r)
                    }
                };
                mul[(a * q + b) as usize] = prod as u16;
            }
        }
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b as u16;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u16;
                }
            }
        }
        Ok(FieldSpec {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial over F_p (lowest coefficient first), present iff k > 1.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn elem(&self, rep: u32) -> Result<FieldElem> {
        if rep < self.q {
            Ok(FieldElem(rep as u16))
        } else {
            Err(Error::ElementOutOfRange { rep, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(i64::from(self.p)) as u16)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(FieldElem(self.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(|r| FieldElem(r as u16))
    }

    /// The smallest-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElem {
        let order = u64::from(self.q - 1);
        self.elements()
            .skip(1)
            .find(|&a| {
                let mut x = a;
                let mut ord = 1;
                while x != FieldElem::ONE {
                    x = self.mul(x, a);
                    ord += 1;
                }
                ord == order
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }
}
