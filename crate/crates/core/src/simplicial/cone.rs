use super::{Cochain, FinSimplicialSet, SimplexRef, SimplicialSetBuilder};
use crate::error::{Error, Result};

/// The cone CX with the apex as the last vertex of every cone simplex.
///
/// Simplices of X keep their indices; the cone over the `j`-th
/// `k`-simplex of X follows them in dimension `k+1`, and the apex follows the
/// vertices of X.
#[derive(Clone, Debug)]
pub struct Cone {
    pub space: FinSimplicialSet,
    pub base: FinSimplicialSet,
}

fn appended(surj: &[u8], v: u8) -> Vec<u8> {
    let mut s = surj.to_vec();
    s.push(v);
    s
}

impl Cone {
    pub fn new(x: &FinSimplicialSet) -> Result<Cone> {
        let mut b = SimplicialSetBuilder::new();
        let top = x.dim();
        let counts = x.counts();
        let cone_idx = |k: usize, j: usize| counts.get(k + 1).copied().unwrap_or(0) + j;
        for d in 0..=top + 1 {
            if d <= top {
                for j in 0..x.count(d) {
                    b.add(x.name(d, j).to_string(), d, x.nd_faces(d, j).to_vec())?;
                }
            }
            if d == 0 {
                b.add("C()", 0, vec![])?;
                continue;
            }
            let k = d - 1;
            for j in 0..x.count(k) {
                let mut faces = Vec::with_capacity(d + 1);
                if k == 0 {
                    faces.push(SimplexRef::nondegenerate(0, counts[0]));
                } else {
                    for f in x.nd_faces(k, j) {
                        faces.push(SimplexRef {
                            base_dim: f.base_dim + 1,
                            base: cone_idx(f.base_dim, f.base),
                            surj: appended(&f.surj, f.base_dim as u8 + 1),
                        });
                    }
                }
                faces.push(SimplexRef::nondegenerate(k, j));
                let idx = b.add(format!("C({})", x.name(k, j)), d, faces)?;
                debug_assert_eq!(idx, cone_idx(k, j));
            }
        }
        let space = b.build(x.basepoint())?;
        Ok(Cone { space, base: x.clone() })
    }

    pub fn apex(&self) -> usize {
        self.base.count(0)
    }

    /// Index in dimension `k+1` of the cone over the `j`-th `k`-simplex.
    pub fn cone_index(&self, k: usize, j: usize) -> usize {
        self.base.count(k + 1) + j
    }

    /// Whether a nondegenerate simplex of CX lies in X.
    pub fn in_base(&self, dim: usize, idx: usize) -> bool {
        idx < self.base.count(dim)
    }

    fn check(&self, b: &Cochain) -> Result<()> {
        b.check_on(&self.space)
            .map_err(|_| Error::WrongAmbient("cochain does not live on this cone".into()))
    }

    /// Restriction of a cochain on CX to X.
    pub fn restrict(&self, b: &Cochain) -> Cochain {
        let n = self.base.count(b.dim);
        let mut c = Cochain::zero(b.dim, b.coeff.clone());
        for (k, v) in b.iter() {
            if k < n {
                c.set(k, v.clone());
            }
        }
        c
    }

    /// Splits `b ∈ C^n(CX)` into `(e, c) ∈ C^{n−1}(X) ⊕ C^n(X)` with
    /// `c = b|_X` and `e(σ) = (−1)^n b(cone σ)`, so that
    /// `δ(e, c) = (−δe + c, δc)`.
    pub fn split(&self, b: &Cochain) -> Result<(Cochain, Cochain)> {
        self.check(b)?;
        if b.dim == 0 {
            return Err(Error::Unsupported("cone split of 0-cochains".into()));
        }
        let n = b.dim;
        let offset = self.base.count(n);
        let mut e = Cochain::zero(n - 1, b.coeff.clone());
        for (k, v) in b.iter() {
            if k >= offset {
                let val = if n.is_multiple_of(2) { v.clone() } else { b.coeff.neg(v) };
                e.set(k - offset, val);
            }
        }
        Ok((e, self.restrict(b)))
    }

    /// Inverse of [`Cone::split`].
    pub fn join(&self, e: &Cochain, c: &Cochain) -> Result<Cochain> {
        if e.dim + 1 != c.dim || e.coeff != c.coeff {
            return Err(Error::DimensionMismatch("cone join of incompatible cochains".into()));
        }
        e.check_on(&self.base)?;
        c.check_on(&self.base)?;
        let n = c.dim;
        let offset = self.base.count(n);
        let mut b = c.clone();
        for (k, v) in e.iter() {
            let val = if n.is_multiple_of(2) { v.clone() } else { c.coeff.neg(v) };
            b.set(offset + k, val);
        }
        Ok(b)
    }

    /// A cochain on CX whose coboundary is the given cocycle `z` on CX
    /// (dimension at least 2), using the cone contraction.
    pub fn contract(&self, z: &Cochain) -> Result<Cochain> {
        let (e, _) = self.split(z)?;
        let zero = Cochain::zero(e.dim.saturating_sub(1), e.coeff.clone());
        if e.dim == 0 {
            return Err(Error::Unsupported("cone contraction in dimension 1".into()));
        }
        self.join(&zero, &e)
    }

    /// The simplex of CX corresponding to a simplex of X.
    pub fn embed(&self, s: &SimplexRef) -> SimplexRef {
        s.clone()
    }
}

/// The reduced suspension: CX with X and the cone over the basepoint
/// collapsed to a single vertex.
///
/// For `k ≥ 0`, every nondegenerate `k`-simplex σ of X other than the
/// basepoint gives a nondegenerate `(k+1)`-simplex Sσ.
#[derive(Clone, Debug)]
pub struct Suspension {
    pub space: FinSimplicialSet,
    pub cone: Cone,
}

impl Suspension {
    pub fn new(x: &FinSimplicialSet) -> Result<Suspension> {
        let cone = Cone::new(x)?;
        let x0 = x.basepoint();
        let susp_idx = |k: usize, j: usize| -> Option<usize> {
            if k == 0 {
                match j.cmp(&x0) {
                    std::cmp::Ordering::Less => Some(j),
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Greater => Some(j - 1),
                }
            } else {
                Some(j)
            }
        };
        let point = |m: usize| SimplexRef { base_dim: 0, base: 0, surj: vec![0; m + 1] };
        let mut b = SimplicialSetBuilder::new();
        b.add("S()", 0, vec![])?;
        for k in 0..=x.dim() {
            for j in 0..x.count(k) {
                let Some(_) = susp_idx(k, j) else { continue };
                let mut faces = Vec::with_capacity(k + 2);
                if k == 0 {
                    faces.push(point(0));
                } else {
                    for f in x.nd_faces(k, j) {
                        match susp_idx(f.base_dim, f.base) {
                            None => faces.push(point(k)),
                            Some(s) => faces.push(SimplexRef {
                                base_dim: f.base_dim + 1,
                                base: s,
                                surj: appended(&f.surj, f.base_dim as u8 + 1),
                            }),
                        }
                    }
                }
                faces.push(point(k));
                b.add(format!("S({})", x.name(k, j)), k + 1, faces)?;
            }
        }
        let space = b.build(0)?;
        Ok(Suspension { space, cone })
    }

    pub fn base(&self) -> &FinSimplicialSet {
        &self.cone.base
    }

    /// Index of Sσ in dimension `k+1`, or `None` for the basepoint.
    pub fn susp_index(&self, k: usize, j: usize) -> Option<usize> {
        let x0 = self.base().basepoint();
        if k == 0 {
            match j.cmp(&x0) {
                std::cmp::Ordering::Less => Some(j),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(j - 1),
            }
        } else {
            Some(j)
        }
    }

    /// Inverse of [`Suspension::susp_index`].
    pub fn desusp_index(&self, m: usize, idx: usize) -> (usize, usize) {
        let k = m - 1;
        let x0 = self.base().basepoint();
        if k == 0 && idx >= x0 {
            (0, idx + 1)
        } else {
            (k, idx)
        }
    }

    /// The isomorphism `D: C^{i+1}(SX) → C^i(X)`,
    /// `D(z)(σ) = (−1)^{i+1} z(Sσ)`, satisfying `δD = −Dδ`.
    pub fn shift(&self, z: &Cochain) -> Result<Cochain> {
        z.check_on(&self.space)
            .map_err(|_| Error::WrongAmbient("cochain does not live on this suspension".into()))?;
        if z.dim == 0 {
            return Err(Error::Unsupported("suspension shift of 0-cochains".into()));
        }
        let m = z.dim;
        let mut out = Cochain::zero(m - 1, z.coeff.clone());
        for (idx, v) in z.iter() {
            let (_, j) = self.desusp_index(m, idx);
            out.set(j, if m.is_multiple_of(2) { v.clone() } else { z.coeff.neg(v) });
        }
        Ok(out)
    }

    /// Inverse of [`Suspension::shift`]. Values on the basepoint are dropped.
    pub fn unshift(&self, c: &Cochain) -> Result<Cochain> {
        c.check_on(self.base())?;
        let m = c.dim + 1;
        let mut out = Cochain::zero(m, c.coeff.clone());
        for (j, v) in c.iter() {
            if let Some(idx) = self.susp_index(c.dim, j) {
                out.set(idx, if m.is_multiple_of(2) { v.clone() } else { c.coeff.neg(v) });
            }
        }
        Ok(out)
    }

    /// Pulls a cochain on SX back to CX along the quotient map.
    pub fn pull_to_cone(&self, z: &Cochain) -> Result<Cochain> {
        z.check_on(&self.space)?;
        let m = z.dim;
        let mut out = Cochain::zero(m, z.coeff.clone());
        if m == 0 {
            return Ok(out);
        }
        for (idx, v) in z.iter() {
            let (k, j) = self.desusp_index(m, idx);
            out.set(self.cone.cone_index(k, j), v.clone());
        }
        Ok(out)
    }

    /// The simplex of SX that a simplex of CX maps to under the quotient.
    pub fn quotient(&self, s: &SimplexRef) -> SimplexRef {
        let m = s.dim();
        let cone = &self.cone;
        if s.base_dim == 0 || cone.in_base(s.base_dim, s.base) {
            return SimplexRef { base_dim: 0, base: 0, surj: vec![0; m + 1] };
        }
        let k = s.base_dim - 1;
        let j = s.base - self.base().count(s.base_dim);
        match self.susp_index(k, j) {
            None => SimplexRef { base_dim: 0, base: 0, surj: vec![0; m + 1] },
            Some(idx) => SimplexRef { base_dim: s.base_dim, base: idx, surj: s.surj.clone() },
        }
    }
}
