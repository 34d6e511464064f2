//! Simplices of the Eilenberg–MacLane spaces K(π,n) and E(π,n): cochains on
//! standard simplices, with faces and degeneracies given by pullback.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::simplicial::{Cochain, CoeffElem, CoeffGroup, FinSimplicialSet, SimplexRef};

/// Largest simplex dimension supported by the bitmask encoding.
pub const MAX_DIM: usize = 30;

/// An `n`-cochain on Δ^m with values in π. The `n`-faces of Δ^m are encoded
/// as bitmasks of their `n+1` vertices. Zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmSimplex {
    pub m: usize,
    pub n: usize,
    values: BTreeMap<u32, CoeffElem>,
}

/// Vertices of a bitmask in increasing order.
pub fn mask_vertices(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask & (1 << i) != 0)
}

pub fn full_mask(m: usize) -> u32 {
    if m >= 31 {
        u32::MAX
    } else {
        (1u32 << (m + 1)) - 1
    }
}

/// All `(n+1)`-subsets of `{0..m}` in increasing numeric order.
pub fn faces_of_dim(m: usize, n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if n > m {
        return out;
    }
    let full = full_mask(m);
    let mut sub: u32 = (1u32 << (n + 1)) - 1;
    while sub <= full {
        out.push(sub);
        // Gosper's hack for the next subset of equal size.
        let c = sub & sub.wrapping_neg();
        let r = sub + c;
        if r == 0 || r > full {
            break;
        }
        sub = (((r ^ sub) >> 2) / c) | r;
    }
    out
}

impl EmSimplex {
    pub fn zero(m: usize, n: usize) -> Self {
        EmSimplex { m, n, values: BTreeMap::new() }
    }

    pub fn from_values(m: usize, n: usize, coeff: &CoeffGroup, values: impl IntoIterator<Item = (u32, CoeffElem)>) -> Result<Self> {
        if m > MAX_DIM {
            return Err(Error::Unsupported(format!("simplices of dimension {m}")));
        }
        let mut s = Self::zero(m, n);
        for (mask, v) in values {
            if mask.count_ones() as usize != n + 1 || mask & !full_mask(m) != 0 {
                return Err(Error::InvalidInput(format!("mask {mask:#b} is not an {n}-face of the {m}-simplex")));
            }
            s.set(coeff, mask, coeff.element(v)?);
        }
        Ok(s)
    }

    pub fn get(&self, coeff: &CoeffGroup, mask: u32) -> CoeffElem {
        self.values.get(&mask).cloned().unwrap_or_else(|| coeff.zero())
    }

    pub fn get_ref(&self, mask: u32) -> Option<&CoeffElem> {
        self.values.get(&mask)
    }

    pub fn set(&mut self, coeff: &CoeffGroup, mask: u32, v: CoeffElem) {
        if coeff.is_zero(&v) {
            self.values.remove(&mask);
        } else {
            self.values.insert(mask, v);
        }
    }

    fn add_at(&mut self, coeff: &CoeffGroup, mask: u32, v: &CoeffElem, negate: bool) {
        let mut cur = self.get(coeff, mask);
        for (a, b) in cur.iter_mut().zip(v) {
            if negate {
                *a -= b;
            } else {
                *a += b;
            }
        }
        coeff.reduce(&mut cur);
        self.set(coeff, mask, cur);
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &CoeffElem)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on the whole simplex (meaningful when `m = n`).
    pub fn top(&self, coeff: &CoeffGroup) -> CoeffElem {
        self.get(coeff, full_mask(self.m))
    }

    pub fn add(&self, coeff: &CoeffGroup, other: &EmSimplex) -> Result<EmSimplex> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_at(coeff, k, v, false);
        }
        Ok(out)
    }

    pub fn sub(&self, coeff: &CoeffGroup, other: &EmSimplex) -> Result<EmSimplex> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_at(coeff, k, v, true);
        }
        Ok(out)
    }

    pub fn neg(&self, coeff: &CoeffGroup) -> EmSimplex {
        let mut out = EmSimplex::zero(self.m, self.n);
        for (k, v) in self.iter() {
            out.set(coeff, k, coeff.neg(v));
        }
        out
    }

    fn check_same_shape(&self, other: &EmSimplex) -> Result<()> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cochains C^{}(Δ^{}) and C^{}(Δ^{})",
                self.n, self.m, other.n, other.m
            )));
        }
        Ok(())
    }

    /// Pullback along a monotone map θ: [k] → [m], given by its values.
    pub fn pullback(&self, theta: &[u8]) -> EmSimplex {
        let k = theta.len() - 1;
        let mut out = EmSimplex::zero(k, self.n);
        if self.values.is_empty() {
            return out;
        }
        // preimages of each vertex of [m]
        let mut pre: Vec<Vec<usize>> = vec![Vec::new(); self.m + 1];
        for (j, &t) in theta.iter().enumerate() {
            pre[t as usize].push(j);
        }
        for (mask, v) in self.iter() {
            let verts: Vec<usize> = mask_vertices(mask).collect();
            if verts.iter().any(|&t| pre[t].is_empty()) {
                continue;
            }
            let mut stack = vec![(0usize, 0u32)];
            while let Some((pos, acc)) = stack.pop() {
                if pos == verts.len() {
                    out.values.insert(acc, v.clone());
                    continue;
                }
                for &j in &pre[verts[pos]] {
                    stack.push((pos + 1, acc | (1 << j)));
                }
            }
        }
        out
    }

    /// Face operator ∂_i.
    pub fn face(&self, i: usize) -> Result<EmSimplex> {
        if i > self.m || self.m == 0 {
            return Err(Error::OutOfRange(format!("face index {i} on a {}-simplex", self.m)));
        }
        let theta: Vec<u8> = (0..=self.m as u8).filter(|&v| v as usize != i).collect();
        Ok(self.pullback(&theta))
    }

    /// Degeneracy operator s_i.
    pub fn degeneracy(&self, i: usize) -> Result<EmSimplex> {
        if i > self.m {
            return Err(Error::OutOfRange(format!("degeneracy index {i} on a {}-simplex", self.m)));
        }
        let mut theta: Vec<u8> = (0..=self.m as u8).collect();
        theta.insert(i, i as u8);
        Ok(self.pullback(&theta))
    }

    /// Restriction to the face spanned by the vertices of `mask`.
    pub fn restrict(&self, mask: u32) -> EmSimplex {
        let theta: Vec<u8> = mask_vertices(mask).map(|v| v as u8).collect();
        self.pullback(&theta)
    }

    /// The coboundary, a simplex of K(π, n+1).
    pub fn coboundary(&self, coeff: &CoeffGroup) -> EmSimplex {
        let mut out = EmSimplex::zero(self.m, self.n + 1);
        for (mask, v) in self.iter() {
            for w in 0..=self.m {
                if mask & (1 << w) != 0 {
                    continue;
                }
                let pos = (mask & ((1u32 << w) - 1)).count_ones();
                out.add_at(coeff, mask | (1 << w), v, pos % 2 == 1);
            }
        }
        out
    }

    pub fn is_cocycle(&self, coeff: &CoeffGroup) -> bool {
        self.coboundary(coeff).is_zero()
    }

    /// The cone contraction `h(z)(S) = z({0} ∪ S)` for `0 ∉ S`. For a cocycle
    /// `z` of positive degree, `δ h(z) = z`.
    pub fn contract(&self) -> Result<EmSimplex> {
        if self.n == 0 {
            return Err(Error::Unsupported("contraction of 0-cochains".into()));
        }
        let mut out = EmSimplex::zero(self.m, self.n - 1);
        for (mask, v) in self.iter() {
            if mask & 1 != 0 {
                out.values.insert(mask & !1, v.clone());
            }
        }
        Ok(out)
    }

    /// Whether the simplex is degenerate as a simplex of E(π,n): some
    /// degeneracy of one of its faces.
    pub fn is_degenerate(&self) -> bool {
        (0..self.m).any(|i| {
            self.face(i + 1).and_then(|f| f.degeneracy(i)).map(|d| d == *self).unwrap_or(false)
        })
    }
}

/// The simplex of Δ^m pulled back from `z` along the characteristic map of a
/// simplex of `x`: the value of a simplicial map `x → K(π,n)` or
/// `x → E(π,n)` on `s`.
pub fn cochain_at(x: &FinSimplicialSet, z: &Cochain, s: &SimplexRef) -> EmSimplex {
    let m = s.dim();
    let n = z.dim;
    let mut out = EmSimplex::zero(m, n);
    if z.is_zero() || n > m {
        return out;
    }
    if s.is_degenerate() {
        let base = cochain_at(x, z, &SimplexRef::nondegenerate(s.base_dim, s.base));
        return base.pullback(&s.surj);
    }
    for mask in faces_of_dim(m, n) {
        let verts: Vec<usize> = mask_vertices(mask).collect();
        let f = x.restrict(s, &verts);
        let v = z.eval(&f);
        if !z.coeff.is_zero(&v) {
            out.values.insert(mask, v);
        }
    }
    out
}

/// Cocycle of a simplicial map into K(π,n) given by its values on
/// nondegenerate `n`-simplices.
pub fn map_to_cocycle(
    x: &FinSimplicialSet,
    n: usize,
    coeff: &CoeffGroup,
    f: impl Fn(&SimplexRef) -> EmSimplex,
) -> Result<Cochain> {
    let mut c = Cochain::zero(n, coeff.clone());
    for j in 0..x.count(n) {
        let s = f(&SimplexRef::nondegenerate(n, j));
        if s.m != n || s.n != n {
            return Err(Error::DimensionMismatch("map value has wrong shape".into()));
        }
        c.set(j, s.top(coeff));
    }
    if !c.is_cocycle(x) {
        return Err(Error::NotCocycle("map values do not form a cocycle".into()));
    }
    Ok(c)
}

/// Inverse of [`map_to_cocycle`]: the simplicial map of a cocycle.
pub fn cocycle_to_map<'a>(x: &'a FinSimplicialSet, z: &'a Cochain) -> Result<impl Fn(&SimplexRef) -> EmSimplex + 'a> {
    if !z.is_cocycle(x) {
        return Err(Error::NotCocycle(format!("{}-cochain has nonzero coboundary", z.dim)));
    }
    Ok(move |s: &SimplexRef| cochain_at(x, z, s))
}

/// Decides homotopy of the maps `x → K(π,n)` given by two cocycles; when they
/// are homotopic returns `e` with `δe = z1 − z2`.
pub fn em_homotopic(x: &FinSimplicialSet, z1: &Cochain, z2: &Cochain) -> Result<Option<Cochain>> {
    crate::simplicial::cohomologous(x, z1, z2)
}

/// Whether an element of a coefficient group is zero.
pub fn is_zero_elem(v: &CoeffElem) -> bool {
    v.iter().all(Zero::is_zero)
}
