//! Semi-effective and fully effective abelian groups.
//!
//! A group is described by operations on representatives. Representatives
//! need not be unique, so semi-effective groups have no equality test; fully
//! effective groups decide equality by expressing elements in a fixed list of
//! cyclic generators.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{smith_normal_form, solve_with, IntMatrix, SnfDecomposition};

pub type AddFn<R> = Arc<dyn Fn(&R, &R) -> Result<R> + Send + Sync>;
pub type NegFn<R> = Arc<dyn Fn(&R) -> Result<R> + Send + Sync>;
pub type ExpressFn<R> = Arc<dyn Fn(&R) -> Result<Vec<BigInt>> + Send + Sync>;
pub type HomFn<R, S> = Arc<dyn Fn(&R) -> Result<S> + Send + Sync>;

/// Zero, addition and negation on a set of representatives.
pub struct SemiEffectiveGroup<R> {
    pub zero: R,
    pub add: AddFn<R>,
    pub neg: NegFn<R>,
}

impl<R: Clone> Clone for SemiEffectiveGroup<R> {
    fn clone(&self) -> Self {
        SemiEffectiveGroup { zero: self.zero.clone(), add: self.add.clone(), neg: self.neg.clone() }
    }
}

impl<R: Clone> SemiEffectiveGroup<R> {
    pub fn new(
        zero: R,
        add: impl Fn(&R, &R) -> Result<R> + Send + Sync + 'static,
        neg: impl Fn(&R) -> Result<R> + Send + Sync + 'static,
    ) -> Self {
        SemiEffectiveGroup { zero, add: Arc::new(add), neg: Arc::new(neg) }
    }

    pub fn add(&self, a: &R, b: &R) -> Result<R> {
        (self.add)(a, b)
    }

    pub fn neg(&self, a: &R) -> Result<R> {
        (self.neg)(a)
    }

    pub fn sub(&self, a: &R, b: &R) -> Result<R> {
        self.add(a, &self.neg(b)?)
    }

    /// A representative of `k·a`, by doubling.
    pub fn scalar(&self, k: &BigInt, a: &R) -> Result<R> {
        if k.is_zero() {
            return Ok(self.zero.clone());
        }
        let base = if k.is_negative() { self.neg(a)? } else { a.clone() };
        let mut n = k.abs();
        let mut acc: Option<R> = None;
        let mut pow = base;
        loop {
            if n.is_odd() {
                acc = Some(match acc {
                    None => pow.clone(),
                    Some(x) => self.add(&x, &pow)?,
                });
            }
            n >>= 1;
            if n.is_zero() {
                break;
            }
            pow = self.add(&pow, &pow)?;
        }
        Ok(acc.unwrap_or_else(|| self.zero.clone()))
    }

    /// A representative of `Σ coeffs[i]·gens[i]`.
    pub fn combination(&self, coeffs: &[BigInt], gens: &[R]) -> Result<R> {
        if coeffs.len() != gens.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                gens.len()
            )));
        }
        let mut acc: Option<R> = None;
        for (k, g) in coeffs.iter().zip(gens) {
            if k.is_zero() {
                continue;
            }
            let t = self.scalar(k, g)?;
            acc = Some(match acc {
                None => t,
                Some(x) => self.add(&x, &t)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.zero.clone()))
    }
}

/// Generators with a complete relation matrix and an express routine.
pub struct Presentation<R> {
    pub base: SemiEffectiveGroup<R>,
    pub generators: Vec<R>,
    /// Rows are relations: `Σ u_i b_i = 0`.
    pub relations: IntMatrix,
    pub express: ExpressFn<R>,
}

/// A finitely generated abelian group as an internal direct sum of cyclic
/// subgroups, with an algorithm expressing any representative.
///
/// Orders are stored as nonnegative integers with `0` standing for infinite
/// order. They are in invariant-factor form: each finite order divides the
/// next and infinite orders come last.
pub struct FullyEffectiveGroup<R> {
    pub base: SemiEffectiveGroup<R>,
    pub generators: Vec<R>,
    pub orders: Vec<BigInt>,
    express: ExpressFn<R>,
}

impl<R: Clone> Clone for FullyEffectiveGroup<R> {
    fn clone(&self) -> Self {
        FullyEffectiveGroup {
            base: self.base.clone(),
            generators: self.generators.clone(),
            orders: self.orders.clone(),
            express: self.express.clone(),
        }
    }
}

/// Isomorphism type of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupStructure {
    pub fn new(free_rank: usize, torsion: &[i64]) -> Self {
        GroupStructure { free_rank, torsion: torsion.iter().map(|&q| BigInt::from(q)).collect() }
    }

    /// Invariant factors of the group presented by `relations` on `ngens`
    /// free generators.
    pub fn from_relations(ngens: usize, relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        let diag = snf.diagonal();
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        for i in 0..ngens {
            match diag.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) if !d.is_zero() => torsion.push(d.clone()),
                _ => free_rank += 1,
            }
        }
        GroupStructure { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for q in &self.torsion {
            parts.push(format!("Z/{q}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// Reduces a coordinate vector modulo orders (0 = infinite).
pub fn reduce_coords(coords: &mut [BigInt], orders: &[BigInt]) {
    for (z, q) in coords.iter_mut().zip(orders) {
        if !q.is_zero() {
            *z = z.mod_floor(q);
        }
    }
}

impl<R: Clone + Send + Sync + 'static> FullyEffectiveGroup<R> {
    /// Assembles a group from parts that are already in canonical form.
    ///
    /// The express routine's output is reduced modulo the orders.
    pub fn from_parts(
        base: SemiEffectiveGroup<R>,
        generators: Vec<R>,
        orders: Vec<BigInt>,
        express: ExpressFn<R>,
    ) -> Self {
        FullyEffectiveGroup { base, generators, orders, express }
    }

    /// The trivial group.
    pub fn trivial(base: SemiEffectiveGroup<R>) -> Self {
        FullyEffectiveGroup {
            base,
            generators: Vec::new(),
            orders: Vec::new(),
            express: Arc::new(|_| Ok(Vec::new())),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn structure(&self) -> GroupStructure {
        GroupStructure {
            free_rank: self.orders.iter().filter(|q| q.is_zero()).count(),
            torsion: self.orders.iter().filter(|q| !q.is_zero()).cloned().collect(),
        }
    }

    /// Coordinates of `a` in the generators, reduced modulo the orders.
    pub fn express(&self, a: &R) -> Result<Vec<BigInt>> {
        let mut z = (self.express)(a)?;
        if z.len() != self.orders.len() {
            return Err(Error::Inconsistent(format!(
                "express produced {} coordinates for {} generators",
                z.len(),
                self.orders.len()
            )));
        }
        reduce_coords(&mut z, &self.orders);
        Ok(z)
    }

    pub fn is_zero(&self, a: &R) -> Result<bool> {
        Ok(self.express(a)?.iter().all(Zero::is_zero))
    }

    pub fn equal(&self, a: &R, b: &R) -> Result<bool> {
        let mut za = self.express(a)?;
        let zb = self.express(b)?;
        for (x, y) in za.iter_mut().zip(&zb) {
            *x -= y;
        }
        reduce_coords(&mut za, &self.orders);
        Ok(za.iter().all(Zero::is_zero))
    }

    /// A representative of the element with the given coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Result<R> {
        self.base.combination(coords, &self.generators)
    }

    /// Express routine as a shareable closure.
    pub fn express_fn(&self) -> ExpressFn<R> {
        let e = self.express.clone();
        let orders = self.orders.clone();
        Arc::new(move |a| {
            let mut z = e(a)?;
            reduce_coords(&mut z, &orders);
            Ok(z)
        })
    }
}

/// Converts a presentation into a fully effective group via a Smith normal
/// form of its relation matrix.
pub fn presentation_to_fully_effective<R: Clone + Send + Sync + 'static>(
    p: Presentation<R>,
) -> Result<FullyEffectiveGroup<R>> {
    let n = p.generators.len();
    if p.relations.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "relation matrix has {} columns for {} generators",
            p.relations.cols(),
            n
        )));
    }
    let snf = smith_normal_form(&p.relations);
    let diag = snf.diagonal();
    let mut keep = Vec::new();
    let mut orders = Vec::new();
    for i in 0..n {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_one() {
            continue;
        }
        keep.push(i);
        orders.push(d);
    }
    let mut generators = Vec::with_capacity(keep.len());
    for &i in &keep {
        let row = snf.t_inv.row(i).to_vec();
        generators.push(p.base.combination(&row, &p.generators)?);
    }
    let t = snf.t.clone();
    let inner = p.express.clone();
    let ords = orders.clone();
    let express: ExpressFn<R> = Arc::new(move |a| {
        let z = inner(a)?;
        if z.len() != t.rows() {
            return Err(Error::Inconsistent(format!(
                "presentation express produced {} coordinates for {} generators",
                z.len(),
                t.rows()
            )));
        }
        let w = t.vec_mul(&z)?;
        let mut out: Vec<BigInt> = keep.iter().map(|&i| w[i].clone()).collect();
        reduce_coords(&mut out, &ords);
        Ok(out)
    });
    Ok(FullyEffectiveGroup { base: p.base, generators, orders, express })
}

/// Diagonal matrix of the finite orders, one row per finite order.
fn order_relations(orders: &[BigInt]) -> IntMatrix {
    let n = orders.len();
    let rows: Vec<Vec<BigInt>> = orders
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = q.clone();
            r
        })
        .collect();
    IntMatrix::from_rows(n, &rows).expect("well-formed")
}

/// Integer row vectors `v` with `v · m = 0`.
fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    crate::intlinalg::integer_kernel(&m.transpose())
}

/// Integer vectors `v` with `Σ v_j·images[j] = 0` in `b`, as a basis of that
/// lattice.
pub fn vanishing_combinations<RB: Clone + Send + Sync + 'static>(b: &FullyEffectiveGroup<RB>, images: &[RB]) -> Result<Vec<Vec<BigInt>>> {
    let n = images.len();
    let mut zrows = Vec::with_capacity(n);
    for x in images {
        zrows.push(b.express(x)?);
    }
    let z = IntMatrix::from_rows(b.rank(), &zrows)?;
    let stacked = z.vstack(&order_relations(&b.orders))?;
    Ok(left_kernel(&stacked)
        .into_iter()
        .map(|v| v[..n].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect())
}

/// Kernel of a homomorphism between fully effective groups, with
/// representatives taken from the domain.
pub fn kernel<RA, RB>(
    a: &FullyEffectiveGroup<RA>,
    b: &FullyEffectiveGroup<RB>,
    f: &(dyn Fn(&RA) -> Result<RB> + Sync),
) -> Result<FullyEffectiveGroup<RA>>
where
    RA: Clone + Send + Sync + 'static,
    RB: Clone + Send + Sync + 'static,
{
    let k = a.rank();
    let l = b.rank();
    let mut zrows = Vec::with_capacity(k);
    for g in &a.generators {
        zrows.push(b.express(&f(g)?)?);
    }
    let z = IntMatrix::from_rows(l, &zrows)?;
    // x with x·Z ≡ 0 modulo the orders of B.
    let pb = order_relations(&b.orders);
    let stacked = z.vstack(&pb)?;
    let lattice: Vec<Vec<BigInt>> = left_kernel(&stacked)
        .into_iter()
        .map(|v| v[..k].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    subgroup(a, lattice)
}

/// The subgroup of `a` generated by the elements with the given coordinate
/// vectors, as a fully effective group over the same representatives.
///
/// Its express routine accepts only representatives of elements of the
/// subgroup and fails otherwise.
pub fn subgroup<RA: Clone + Send + Sync + 'static>(
    a: &FullyEffectiveGroup<RA>,
    gens: Vec<Vec<BigInt>>,
) -> Result<FullyEffectiveGroup<RA>> {
    let k = a.rank();
    let s = gens.len();
    let g = IntMatrix::from_rows(k, &gens)?;
    let qa = order_relations(&a.orders);
    // y with y·G ∈ rows(Q_A)
    let gq = g.vstack(&qa)?;
    let rel: Vec<Vec<BigInt>> = left_kernel(&gq)
        .into_iter()
        .map(|v| v[..s].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let relations = IntMatrix::from_rows(s, &rel)?;
    let mut generators = Vec::with_capacity(s);
    for v in &gens {
        generators.push(a.element(v)?);
    }
    let solver = Arc::new(smith_normal_form(&gq.transpose()));
    let a_express = a.express_fn();
    let express: ExpressFn<RA> = Arc::new(move |x| {
        let coords = a_express(x)?;
        let sol = solve_with(&solver, &coords)?;
        match sol.particular {
            Some(p) => Ok(p[..s].to_vec()),
            None => Err(Error::Precondition("element does not lie in the subgroup".into())),
        }
    });
    presentation_to_fully_effective(Presentation {
        base: a.base.clone(),
        generators,
        relations,
        express,
    })
}

/// Cokernel of `f: A → B` where `A` is given by a list of generators.
pub struct Cokernel<RA, RB> {
    pub group: FullyEffectiveGroup<RB>,
    a_base: SemiEffectiveGroup<RA>,
    a_generators: Vec<RA>,
    b_express: ExpressFn<RB>,
    witness_snf: SnfDecomposition,
}

impl<RA: Clone + Send + Sync + 'static, RB: Clone + Send + Sync + 'static> Cokernel<RA, RB> {
    /// If `β` lies in the image of `f`, a representative `α` with
    /// `[f(α)] = [β]`; otherwise `None`.
    pub fn zero_witness(&self, beta: &RB) -> Result<Option<RA>> {
        let y = (self.b_express)(beta)?;
        let sol = solve_with(&self.witness_snf, &y)?;
        match sol.particular {
            None => Ok(None),
            Some(x) => {
                let n = self.a_generators.len();
                Ok(Some(self.a_base.combination(&x[..n], &self.a_generators)?))
            }
        }
    }
}

/// Cokernel `B / im f`, reusing the representatives of `B`.
pub fn cokernel<RA, RB>(
    a_base: &SemiEffectiveGroup<RA>,
    a_generators: &[RA],
    b: &FullyEffectiveGroup<RB>,
    f: &(dyn Fn(&RA) -> Result<RB> + Sync),
) -> Result<Cokernel<RA, RB>>
where
    RA: Clone + Send + Sync + 'static,
    RB: Clone + Send + Sync + 'static,
{
    let l = b.rank();
    let mut zrows = Vec::with_capacity(a_generators.len());
    for g in a_generators {
        zrows.push(b.express(&f(g)?)?);
    }
    let z = IntMatrix::from_rows(l, &zrows)?;
    let relations = z.vstack(&order_relations(&b.orders))?;
    let witness_snf = smith_normal_form(&relations.transpose());
    let b_express = b.express_fn();
    let group = presentation_to_fully_effective(Presentation {
        base: b.base.clone(),
        generators: b.generators.clone(),
        relations,
        express: b_express.clone(),
    })?;
    Ok(Cokernel {
        group,
        a_base: a_base.clone(),
        a_generators: a_generators.to_vec(),
        b_express,
        witness_snf,
    })
}

/// The maps of a short exact sequence `0 → A → B → C → 0` together with a
/// retraction `r` on `ker g` and a section `ξ` on representatives.
pub struct ShortExactSequence<RA, RB, RC> {
    pub a: FullyEffectiveGroup<RA>,
    pub c: FullyEffectiveGroup<RC>,
    pub b_base: SemiEffectiveGroup<RB>,
    pub f: HomFn<RA, RB>,
    pub g: HomFn<RB, RC>,
    pub r: HomFn<RB, RA>,
    pub xi: HomFn<RC, RB>,
}

/// Fully effective structure on the middle group of a short exact sequence.
pub fn assemble_short_exact<RA, RB, RC>(
    ses: ShortExactSequence<RA, RB, RC>,
) -> Result<FullyEffectiveGroup<RB>>
where
    RA: Clone + Send + Sync + 'static,
    RB: Clone + Send + Sync + 'static,
    RC: Clone + Send + Sync + 'static,
{
    let ShortExactSequence { a, c, b_base, f, g, r, xi } = ses;
    let k = a.rank();
    let l = c.rank();
    let mut generators = Vec::with_capacity(k + l);
    for ai in &a.generators {
        generators.push(f(ai)?);
    }
    let mut lifts = Vec::with_capacity(l);
    for gj in &c.generators {
        lifts.push(xi(gj)?);
    }
    generators.extend(lifts.iter().cloned());
    let mut rows = Vec::new();
    for (i, q) in a.orders.iter().enumerate() {
        if !q.is_zero() {
            let mut row = vec![BigInt::zero(); k + l];
            row[i] = q.clone();
            rows.push(row);
        }
    }
    for (j, p) in c.orders.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let multiple = b_base.scalar(p, &lifts[j])?;
        let y = a.express(&r(&multiple)?)?;
        let mut row: Vec<BigInt> = y.into_iter().map(|v| -v).collect();
        row.resize(k + l, BigInt::zero());
        row[k + j] = p.clone();
        rows.push(row);
    }
    let relations = IntMatrix::from_rows(k + l, &rows)?;
    let a_express = a.express_fn();
    let c_express = c.express_fn();
    let c_orders = c.orders.clone();
    let base = b_base.clone();
    let express: ExpressFn<RB> = Arc::new(move |beta| {
        let z = c_express(&g(beta)?)?;
        let shift = base.combination(&z, &lifts)?;
        let rest = base.sub(beta, &shift)?;
        let mut check = c_express(&g(&rest)?)?;
        reduce_coords(&mut check, &c_orders);
        if check.iter().any(|x| !x.is_zero()) {
            return Err(Error::Inconsistent(
                "section does not split the quotient map on representatives".into(),
            ));
        }
        let mut y = a_express(&r(&rest)?)?;
        y.extend(z);
        Ok(y)
    });
    presentation_to_fully_effective(Presentation { base: b_base, generators, relations, express })
}

/// The group ℤ^r ⊕ ⊕ ℤ/q_j on integer vectors, with componentwise operations.
pub fn integer_vector_group(orders: &[BigInt]) -> FullyEffectiveGroup<Vec<BigInt>> {
    let n = orders.len();
    let ords = orders.to_vec();
    let o2 = ords.clone();
    let add_orders = ords.clone();
    let base = SemiEffectiveGroup::new(
        vec![BigInt::zero(); n],
        move |a: &Vec<BigInt>, b: &Vec<BigInt>| {
            let mut v: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            reduce_coords(&mut v, &add_orders);
            Ok(v)
        },
        move |a: &Vec<BigInt>| {
            let mut v: Vec<BigInt> = a.iter().map(|x| -x).collect();
            reduce_coords(&mut v, &o2);
            Ok(v)
        },
    );
    let relations = order_relations(&ords);
    let generators = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            v
        })
        .collect();
    presentation_to_fully_effective(Presentation {
        base,
        generators,
        relations,
        express: Arc::new(move |v: &Vec<BigInt>| {
            if v.len() != n {
                return Err(Error::DimensionMismatch("vector length".into()));
            }
            Ok(v.clone())
        }),
    })
    .expect("well-formed presentation")
}
