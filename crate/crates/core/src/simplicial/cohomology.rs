use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{Cochain, CoeffGroup, FinSimplicialSet};
use crate::abelian::{presentation_to_fully_effective, ExpressFn, FullyEffectiveGroup, Presentation, SemiEffectiveGroup};
use crate::error::{Error, Result};
use crate::intlinalg::{integer_kernel, smith_normal_form, solve_with, IntMatrix, SnfDecomposition};

/// Coboundary matrices of a fixed simplicial set, with cached
/// factorizations for solving `δc = z`.
pub struct CochainSolver {
    space: FinSimplicialSet,
    preimage_cache: Mutex<HashMap<(usize, BigInt), Arc<SnfDecomposition>>>,
}

impl CochainSolver {
    pub fn new(space: FinSimplicialSet) -> Self {
        CochainSolver { space, preimage_cache: Mutex::new(HashMap::new()) }
    }

    pub fn space(&self) -> &FinSimplicialSet {
        &self.space
    }

    /// Matrix of δ: C^n → C^{n+1} over ℤ (rows indexed by (n+1)-simplices).
    pub fn coboundary_matrix(&self, n: usize) -> IntMatrix {
        let x = &self.space;
        let (rows, cols) = (x.count(n + 1), x.count(n));
        let mut m = IntMatrix::zeros(rows, cols);
        for t in 0..rows {
            for (i, f) in x.nd_faces(n + 1, t).iter().enumerate() {
                if f.is_degenerate() {
                    continue;
                }
                let cur = m.get(t, f.base).clone();
                m.set(t, f.base, if i % 2 == 0 { cur + 1 } else { cur - 1 });
            }
        }
        m
    }

    /// `[δ_n | q·I]`, the system whose solutions are preimages modulo `q`.
    fn preimage_system(&self, n: usize, q: &BigInt) -> Arc<SnfDecomposition> {
        let key = (n, q.clone());
        if let Some(s) = self.preimage_cache.lock().expect("cache lock").get(&key) {
            return s.clone();
        }
        let d = self.coboundary_matrix(n);
        let m = if q.is_zero() {
            d
        } else {
            let mut qi = IntMatrix::identity(d.rows());
            for i in 0..d.rows() {
                qi.set(i, i, q.clone());
            }
            d.hstack(&qi).expect("matching rows")
        };
        let snf = Arc::new(smith_normal_form(&m));
        self.preimage_cache.lock().expect("cache lock").insert(key, snf.clone());
        snf
    }

    /// A cochain `c` with `δc = z`, chosen deterministically, or `None` if `z`
    /// is not a coboundary.
    pub fn preimage(&self, z: &Cochain) -> Result<Option<Cochain>> {
        z.check_on(&self.space)?;
        if z.dim == 0 {
            return Ok(if z.is_zero() { Some(Cochain::zero(0, z.coeff.clone())) } else { None });
        }
        let n = z.dim - 1;
        let cols = self.space.count(n);
        let rows = self.space.count(z.dim);
        let mut out = Cochain::zero(n, z.coeff.clone());
        if z.is_zero() {
            return Ok(Some(out));
        }
        for (j, q) in z.coeff.orders().iter().enumerate() {
            let rhs = z.component(j, rows);
            if rhs.iter().all(Zero::is_zero) {
                continue;
            }
            let snf = self.preimage_system(n, q);
            let sol = solve_with(&snf, &rhs)?;
            match sol.particular {
                None => return Ok(None),
                Some(x) => {
                    let mut x = x[..cols].to_vec();
                    if !q.is_zero() {
                        for v in x.iter_mut() {
                            *v = v.mod_floor(q);
                        }
                    }
                    out.set_component(j, &x);
                }
            }
        }
        Ok(Some(out))
    }

    /// H^n(X; ℤ/q), with `q = 0` meaning ℤ, on dense integer vectors.
    fn cyclic_cohomology(&self, n: usize, q: &BigInt) -> Result<FullyEffectiveGroup<Vec<BigInt>>> {
        let nn = self.space.count(n);
        let d_n = self.coboundary_matrix(n);
        let mut cocycle_system = d_n.clone();
        if !q.is_zero() {
            let mut qi = IntMatrix::identity(d_n.rows());
            for i in 0..d_n.rows() {
                qi.set(i, i, -q);
            }
            cocycle_system = cocycle_system.hstack(&qi)?;
        }
        let gens: Vec<Vec<BigInt>> = integer_kernel(&cocycle_system)
            .into_iter()
            .map(|v| {
                let mut v = v[..nn].to_vec();
                if !q.is_zero() {
                    for x in v.iter_mut() {
                        *x = x.mod_floor(q);
                    }
                }
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let s = gens.len();
        // Rows spanning Z̃ ⊕ B̃: generators, coboundaries, multiples of q.
        let mut spanning = IntMatrix::from_rows(nn, &gens)?;
        if n > 0 {
            spanning = spanning.vstack(&self.coboundary_matrix(n - 1).transpose())?;
        }
        if !q.is_zero() {
            let mut qi = IntMatrix::identity(nn);
            for i in 0..nn {
                qi.set(i, i, q.clone());
            }
            spanning = spanning.vstack(&qi)?;
        }
        let relations: Vec<Vec<BigInt>> = integer_kernel(&spanning.transpose())
            .into_iter()
            .map(|v| v[..s].to_vec())
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let relations = IntMatrix::from_rows(s, &relations)?;
        let solver = Arc::new(smith_normal_form(&spanning.transpose()));
        let qq = q.clone();
        let reduce = move |mut v: Vec<BigInt>| {
            if !qq.is_zero() {
                for x in v.iter_mut() {
                    *x = x.mod_floor(&qq);
                }
            }
            v
        };
        let r1 = reduce.clone();
        let r2 = reduce.clone();
        let base = SemiEffectiveGroup::new(
            vec![BigInt::zero(); nn],
            move |a: &Vec<BigInt>, b: &Vec<BigInt>| Ok(r1(a.iter().zip(b).map(|(x, y)| x + y).collect())),
            move |a: &Vec<BigInt>| Ok(r2(a.iter().map(|x| -x).collect())),
        );
        let express: ExpressFn<Vec<BigInt>> = Arc::new(move |x: &Vec<BigInt>| {
            let sol = solve_with(&solver, x)?;
            match sol.particular {
                Some(p) => Ok(p[..s].to_vec()),
                None => Err(Error::NotCocycle("cochain is not a cocycle".into())),
            }
        });
        let g = presentation_to_fully_effective(Presentation { base, generators: gens, relations, express })?;
        let generators = g.generators.iter().cloned().map(reduce).collect();
        Ok(FullyEffectiveGroup::from_parts(g.base.clone(), generators, g.orders.clone(), g.express_fn()))
    }

    /// H^n(X; π) with cocycle representatives.
    pub fn cohomology(&self, n: usize, coeff: &CoeffGroup) -> Result<FullyEffectiveGroup<Cochain>> {
        let nn = self.space.count(n);
        let mut parts = Vec::new();
        for q in coeff.orders() {
            parts.push(self.cyclic_cohomology(n, &q)?);
        }
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (j, part) in parts.iter().enumerate() {
            for (g, q) in part.generators.iter().zip(&part.orders) {
                let mut c = Cochain::zero(n, coeff.clone());
                c.set_component(j, g);
                generators.push(c);
                orders.push(q.clone());
            }
        }
        let total = generators.len();
        let rows: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(i, q)| {
                let mut r = vec![BigInt::zero(); total];
                r[i] = q.clone();
                r
            })
            .collect();
        let relations = IntMatrix::from_rows(total, &rows)?;
        let zero = Cochain::zero(n, coeff.clone());
        let base = SemiEffectiveGroup::new(zero, |a: &Cochain, b: &Cochain| a.add(b), |a: &Cochain| Ok(a.neg()));
        let space = self.space.clone();
        let coeff2 = coeff.clone();
        let express: ExpressFn<Cochain> = Arc::new(move |c: &Cochain| {
            if c.dim != n || c.coeff != coeff2 {
                return Err(Error::DimensionMismatch(format!(
                    "expected a {n}-cochain over {coeff2}, got a {}-cochain over {}",
                    c.dim, c.coeff
                )));
            }
            c.check_on(&space)?;
            if !c.is_cocycle(&space) {
                return Err(Error::NotCocycle(format!("{n}-cochain has nonzero coboundary")));
            }
            let mut out = Vec::with_capacity(total);
            for (j, part) in parts.iter().enumerate() {
                out.extend(part.express(&c.component(j, nn))?);
            }
            Ok(out)
        });
        presentation_to_fully_effective(Presentation { base, generators, relations, express })
    }
}

/// H^n(X; π) as a fully effective group whose representatives are cocycles.
pub fn cohomology_group(x: &FinSimplicialSet, n: usize, coeff: &CoeffGroup) -> Result<FullyEffectiveGroup<Cochain>> {
    CochainSolver::new(x.clone()).cohomology(n, coeff)
}

/// Decides whether two cocycles are cohomologous; on success returns `e` with
/// `δe = z1 − z2`.
pub fn cohomologous(x: &FinSimplicialSet, z1: &Cochain, z2: &Cochain) -> Result<Option<Cochain>> {
    for z in [z1, z2] {
        if !z.is_cocycle(x) {
            return Err(Error::NotCocycle(format!("{}-cochain has nonzero coboundary", z.dim)));
        }
    }
    let diff = z1.sub(z2)?;
    CochainSolver::new(x.clone()).preimage(&diff)
}
