use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CoeffElem, CoeffGroup, FinSimplicialSet, SimplexRef};
use crate::error::{Error, Result};

/// A normalized cochain: values on nondegenerate simplices of one dimension,
/// zero on degenerate simplices. Zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    pub dim: usize,
    pub coeff: CoeffGroup,
    values: BTreeMap<usize, CoeffElem>,
}

impl Cochain {
    pub fn zero(dim: usize, coeff: CoeffGroup) -> Self {
        Cochain { dim, coeff, values: BTreeMap::new() }
    }

    pub fn from_values(dim: usize, coeff: CoeffGroup, values: impl IntoIterator<Item = (usize, CoeffElem)>) -> Result<Self> {
        let mut c = Self::zero(dim, coeff);
        for (k, v) in values {
            let v = c.coeff.element(v)?;
            c.set(k, v);
        }
        Ok(c)
    }

    pub fn get(&self, idx: usize) -> CoeffElem {
        self.values.get(&idx).cloned().unwrap_or_else(|| self.coeff.zero())
    }

    pub fn get_ref(&self, idx: usize) -> Option<&CoeffElem> {
        self.values.get(&idx)
    }

    pub fn set(&mut self, idx: usize, v: CoeffElem) {
        if self.coeff.is_zero(&v) {
            self.values.remove(&idx);
        } else {
            self.values.insert(idx, v);
        }
    }

    pub fn add_at(&mut self, idx: usize, v: &CoeffElem) {
        let mut cur = self.get(idx);
        self.coeff.add_assign(&mut cur, v);
        self.set(idx, cur);
    }

    /// Value on an arbitrary simplex; zero when it is degenerate.
    pub fn eval(&self, s: &SimplexRef) -> CoeffElem {
        if s.is_degenerate() || s.base_dim != self.dim {
            self.coeff.zero()
        } else {
            self.get(s.base)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CoeffElem)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.dim != other.dim || self.coeff != other.coeff {
            return Err(Error::DimensionMismatch(format!(
                "cochains of dimension {} over {} and dimension {} over {}",
                self.dim, self.coeff, other.dim, other.coeff
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_at(k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        let mut out = Cochain::zero(self.dim, self.coeff.clone());
        for (k, v) in self.iter() {
            out.set(k, self.coeff.neg(v));
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let mut out = Cochain::zero(self.dim, self.coeff.clone());
        for (i, v) in self.iter() {
            out.set(i, self.coeff.scale(k, v));
        }
        out
    }

    /// Coboundary on `x`: (δc)(τ) = Σ (−1)^i c(∂_i τ).
    pub fn coboundary(&self, x: &FinSimplicialSet) -> Cochain {
        let n = self.dim + 1;
        let mut out = Cochain::zero(n, self.coeff.clone());
        if self.is_zero() {
            return out;
        }
        for t in 0..x.count(n) {
            let mut acc = self.coeff.zero();
            for (i, f) in x.nd_faces(n, t).iter().enumerate() {
                if f.is_degenerate() {
                    continue;
                }
                if let Some(v) = self.values.get(&f.base) {
                    for (a, b) in acc.iter_mut().zip(v) {
                        if i % 2 == 0 {
                            *a += b;
                        } else {
                            *a -= b;
                        }
                    }
                }
            }
            self.coeff.reduce(&mut acc);
            out.set(t, acc);
        }
        out
    }

    /// Checks that all stored indices refer to simplices of `x`.
    pub fn check_on(&self, x: &FinSimplicialSet) -> Result<()> {
        let n = x.count(self.dim);
        if let Some((&k, _)) = self.values.iter().next_back() {
            if k >= n {
                return Err(Error::DimensionMismatch(format!(
                    "cochain refers to simplex {k} but only {n} simplices of dimension {} exist",
                    self.dim
                )));
            }
        }
        Ok(())
    }

    pub fn is_cocycle(&self, x: &FinSimplicialSet) -> bool {
        self.coboundary(x).is_zero()
    }

    /// Coordinate `j` of every value as a dense integer vector of length `n`.
    pub fn component(&self, j: usize, n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        for (k, val) in self.iter() {
            v[k] = val[j].clone();
        }
        v
    }

    /// Replaces coordinate `j` of every value by the given dense vector.
    pub fn set_component(&mut self, j: usize, data: &[BigInt]) {
        let keys: Vec<usize> = self.values.keys().copied().collect();
        for k in keys {
            let mut v = self.get(k);
            v[j] = BigInt::zero();
            self.set(k, v);
        }
        for (k, x) in data.iter().enumerate() {
            if !x.is_zero() {
                let mut v = self.get(k);
                v[j] = x.clone();
                let v = self.coeff.reduced(v);
                self.set(k, v);
            }
        }
    }
}
