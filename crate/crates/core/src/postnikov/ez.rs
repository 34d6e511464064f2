//! Eilenberg–Zilber operators on normalized chains of a product P × P:
//! the Alexander–Whitney map, the Eilenberg–MacLane shuffle map and the
//! Shih chain homotopy between their composite and the identity.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::simplicial::{FinSimplicialSet, SimplexRef};

/// Face and degeneracy operators of a simplicial set whose simplices are
/// values of type `Simplex`.
pub trait SimplicialContext {
    type Simplex: Clone + Ord + Hash + Debug;

    fn dim(&self, s: &Self::Simplex) -> usize;
    fn face(&self, s: &Self::Simplex, i: usize) -> Self::Simplex;
    fn degeneracy(&self, s: &Self::Simplex, i: usize) -> Self::Simplex;

    /// Whether `s = s_j ∂_j s`.
    fn degenerate_at(&self, s: &Self::Simplex, j: usize) -> bool {
        self.degeneracy(&self.face(s, j), j) == *s
    }

    fn is_degenerate(&self, s: &Self::Simplex) -> bool {
        let m = self.dim(s);
        (0..m).any(|j| self.degenerate_at(s, j))
    }
}

impl SimplicialContext for FinSimplicialSet {
    type Simplex = SimplexRef;

    fn dim(&self, s: &SimplexRef) -> usize {
        s.dim()
    }

    fn face(&self, s: &SimplexRef, i: usize) -> SimplexRef {
        FinSimplicialSet::face(self, s, i)
    }

    fn degeneracy(&self, s: &SimplexRef, i: usize) -> SimplexRef {
        s.degeneracy(i)
    }

    fn degenerate_at(&self, s: &SimplexRef, j: usize) -> bool {
        s.surj[j] == s.surj[j + 1]
    }

    fn is_degenerate(&self, s: &SimplexRef) -> bool {
        s.is_degenerate()
    }
}

/// Integer chain on P × P: pairs of simplices of equal dimension.
pub type ProductChain<S> = BTreeMap<(S, S), i64>;

/// Integer chain on the tensor product: pairs of simplices of any dimensions.
pub type TensorChain<S> = BTreeMap<(S, S), i64>;

fn accumulate<K: Ord>(chain: &mut BTreeMap<K, i64>, key: K, coeff: i64) {
    if coeff == 0 {
        return;
    }
    *chain.entry(key).or_insert(0) += coeff;
}

fn prune<K: Ord>(mut chain: BTreeMap<K, i64>) -> BTreeMap<K, i64> {
    chain.retain(|_, v| *v != 0);
    chain
}

/// Whether the pair `(a, b)` is degenerate in P × P, that is, both
/// coordinates are degenerate at a common position.
pub fn pair_degenerate<C: SimplicialContext>(ctx: &C, a: &C::Simplex, b: &C::Simplex) -> bool {
    let m = ctx.dim(a);
    (0..m).any(|j| ctx.degenerate_at(a, j) && ctx.degenerate_at(b, j))
}

/// Applies `s_γ` for a set of positions, so that the degeneracy positions of
/// the result contain exactly the given set.
pub fn degenerate_set<C: SimplicialContext>(ctx: &C, s: &C::Simplex, gamma: &[usize]) -> C::Simplex {
    let mut sorted = gamma.to_vec();
    sorted.sort_unstable();
    let mut cur = s.clone();
    for g in sorted {
        cur = ctx.degeneracy(&cur, g);
    }
    cur
}

/// Applies `∂_lo ∂_{lo+1} … ∂_hi` (rightmost first); empty when `lo > hi`.
fn face_range<C: SimplicialContext>(ctx: &C, s: &C::Simplex, lo: usize, hi: isize) -> C::Simplex {
    let mut cur = s.clone();
    let mut k = hi;
    while k >= lo as isize {
        cur = ctx.face(&cur, k as usize);
        k -= 1;
    }
    cur
}

/// All subsets of `{0..n-1}` of size `k`, as increasing lists.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The Shih operator on a single pair of `m`-simplices.
///
/// Terms carry the sign `(−1)^{m̄ + sig(α,β)}`; with the Alexander–Whitney
/// and shuffle maps below this gives `id − EML∘AW = SHI∂ + ∂SHI`.
pub fn shi_pair<C: SimplicialContext>(ctx: &C, sigma: &C::Simplex, tau: &C::Simplex) -> ProductChain<C::Simplex> {
    let m = ctx.dim(sigma);
    let mut out = ProductChain::new();
    if m == 0 {
        return out;
    }
    for total in 0..m {
        // total = p + q, the shuffle partitions {0..total}
        for q in 0..=total {
            let p = total - q;
            let mbar = m - total;
            for alpha in subsets(total + 1, p + 1) {
                let beta: Vec<usize> = (0..=total).filter(|x| !alpha.contains(x)).collect();
                let sig: usize = alpha.iter().enumerate().map(|(i, &a)| a - i).sum();
                let eps = mbar + sig;
                let sign = if eps.is_multiple_of(2) { 1 } else { -1 };
                let mut bset = vec![mbar - 1];
                bset.extend(beta.iter().map(|&b| b + mbar));
                let aset: Vec<usize> = alpha.iter().map(|&a| a + mbar).collect();
                let s_face = face_range(ctx, sigma, m - q + 1, m as isize);
                let t_face = face_range(ctx, tau, mbar, m as isize - q as isize - 1);
                let a = degenerate_set(ctx, &s_face, &bset);
                let b = degenerate_set(ctx, &t_face, &aset);
                if pair_degenerate(ctx, &a, &b) {
                    continue;
                }
                accumulate(&mut out, (a, b), sign);
            }
        }
    }
    prune(out)
}

/// The Shih operator extended linearly.
pub fn shi<C: SimplicialContext>(ctx: &C, chain: &ProductChain<C::Simplex>) -> Result<ProductChain<C::Simplex>> {
    let mut out = ProductChain::new();
    let mut dim = None;
    for ((a, b), c) in chain {
        check_pair_dim(ctx, a, b, &mut dim)?;
        for (k, v) in shi_pair(ctx, a, b) {
            accumulate(&mut out, k, v * c);
        }
    }
    Ok(prune(out))
}

fn check_pair_dim<C: SimplicialContext>(ctx: &C, a: &C::Simplex, b: &C::Simplex, dim: &mut Option<usize>) -> Result<()> {
    let (da, db) = (ctx.dim(a), ctx.dim(b));
    if da != db || dim.is_some_and(|d| d != da) {
        return Err(Error::DimensionMismatch("product chain with pairs of unequal dimensions".into()));
    }
    *dim = Some(da);
    Ok(())
}

/// Boundary in the normalized chains of P × P.
pub fn product_boundary<C: SimplicialContext>(ctx: &C, chain: &ProductChain<C::Simplex>) -> ProductChain<C::Simplex> {
    let mut out = ProductChain::new();
    for ((a, b), c) in chain {
        let m = ctx.dim(a);
        if m == 0 {
            continue;
        }
        for i in 0..=m {
            let fa = ctx.face(a, i);
            let fb = ctx.face(b, i);
            if pair_degenerate(ctx, &fa, &fb) {
                continue;
            }
            let s = if i % 2 == 0 { *c } else { -*c };
            accumulate(&mut out, (fa, fb), s);
        }
    }
    prune(out)
}

/// Alexander–Whitney: front faces of the first factor tensored with back
/// faces of the second.
pub fn aw<C: SimplicialContext>(ctx: &C, chain: &ProductChain<C::Simplex>) -> TensorChain<C::Simplex> {
    let mut out = TensorChain::new();
    for ((a, b), c) in chain {
        let n = ctx.dim(a);
        for i in 0..=n {
            let front = face_range(ctx, a, i + 1, n as isize);
            let mut back = b.clone();
            for _ in 0..i {
                back = ctx.face(&back, 0);
            }
            if ctx.is_degenerate(&front) || ctx.is_degenerate(&back) {
                continue;
            }
            accumulate(&mut out, (front, back), *c);
        }
    }
    prune(out)
}

/// Eilenberg–MacLane shuffle map.
pub fn eml<C: SimplicialContext>(ctx: &C, chain: &TensorChain<C::Simplex>) -> ProductChain<C::Simplex> {
    let mut out = ProductChain::new();
    for ((a, b), c) in chain {
        let (p, q) = (ctx.dim(a), ctx.dim(b));
        for mu in subsets(p + q, p) {
            let nu: Vec<usize> = (0..p + q).filter(|x| !mu.contains(x)).collect();
            let sig: usize = mu.iter().enumerate().map(|(i, &x)| x - i).sum();
            let sign = if sig.is_multiple_of(2) { 1 } else { -1 };
            let x = degenerate_set(ctx, a, &nu);
            let y = degenerate_set(ctx, b, &mu);
            if pair_degenerate(ctx, &x, &y) {
                continue;
            }
            accumulate(&mut out, (x, y), sign * c);
        }
    }
    prune(out)
}

/// Boundary in the tensor product of normalized chain complexes.
pub fn tensor_boundary<C: SimplicialContext>(ctx: &C, chain: &TensorChain<C::Simplex>) -> TensorChain<C::Simplex> {
    let mut out = TensorChain::new();
    for ((a, b), c) in chain {
        let (p, q) = (ctx.dim(a), ctx.dim(b));
        if p > 0 {
            for i in 0..=p {
                let f = ctx.face(a, i);
                if ctx.is_degenerate(&f) {
                    continue;
                }
                accumulate(&mut out, (f, b.clone()), if i % 2 == 0 { *c } else { -*c });
            }
        }
        if q > 0 {
            let sgn = if p % 2 == 0 { 1 } else { -1 };
            for i in 0..=q {
                let f = ctx.face(b, i);
                if ctx.is_degenerate(&f) {
                    continue;
                }
                accumulate(&mut out, (a.clone(), f), sgn * if i % 2 == 0 { *c } else { -*c });
            }
        }
    }
    prune(out)
}

/// Adds two chains.
pub fn chain_add<K: Ord + Clone>(a: &BTreeMap<K, i64>, b: &BTreeMap<K, i64>, scale_b: i64) -> BTreeMap<K, i64> {
    let mut out = a.clone();
    for (k, v) in b {
        accumulate(&mut out, k.clone(), v * scale_b);
    }
    prune(out)
}

/// All nondegenerate pairs of `m`-simplices of a finite simplicial set:
/// the basis of the normalized chains of X × X in dimension `m`.
pub fn product_basis(x: &FinSimplicialSet, m: usize) -> Vec<(SimplexRef, SimplexRef)> {
    let all = all_simplices(x, m);
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if !pair_degenerate(x, a, b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// All `m`-simplices (degenerate or not) of a finite simplicial set.
pub fn all_simplices(x: &FinSimplicialSet, m: usize) -> Vec<SimplexRef> {
    let mut out = Vec::new();
    for k in 0..=m.min(x.dim()) {
        for j in 0..x.count(k) {
            for surj in surjections(m, k) {
                out.push(SimplexRef { base_dim: k, base: j, surj });
            }
        }
    }
    out
}

/// Monotone surjections `[m] → [k]`.
pub fn surjections(m: usize, k: usize) -> Vec<Vec<u8>> {
    // choose the k positions in 1..=m where the value steps up
    subsets(m, k)
        .into_iter()
        .map(|steps| {
            let mut v = Vec::with_capacity(m + 1);
            let mut cur = 0u8;
            v.push(0);
            for j in 1..=m {
                if steps.contains(&(j - 1)) {
                    cur += 1;
                }
                v.push(cur);
            }
            v
        })
        .collect()
}
