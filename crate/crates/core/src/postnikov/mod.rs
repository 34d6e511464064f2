//! Postnikov stages with pluggable k-invariants and their H-group structure.

pub mod ez;
mod sphere;

pub use sphere::{sphere3_data, SteenrodSquareK3};

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use crate::em::{faces_of_dim, full_mask, EmSimplex};
use crate::error::{Error, Result};
use crate::simplicial::{Cochain, CoeffElem, CoeffGroup, FinSimplicialSet};

use ez::{shi_pair, SimplicialContext};

/// An `m`-simplex of the stage P_i: cochains `σ^d, …, σ^i` on Δ^m, where
/// `comps[j]` has degree `d + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StageSimplex {
    pub m: usize,
    pub comps: Vec<EmSimplex>,
}

impl StageSimplex {
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(EmSimplex::is_zero)
    }

    /// Drops the last component.
    pub fn prefix(&self) -> StageSimplex {
        StageSimplex { m: self.m, comps: self.comps[..self.comps.len() - 1].to_vec() }
    }

    pub fn last(&self) -> &EmSimplex {
        self.comps.last().expect("stage simplices have at least one component")
    }

    pub fn pullback(&self, theta: &[u8]) -> StageSimplex {
        StageSimplex { m: theta.len() - 1, comps: self.comps.iter().map(|c| c.pullback(theta)).collect() }
    }

    pub fn restrict(&self, mask: u32) -> StageSimplex {
        StageSimplex { m: mask.count_ones() as usize - 1, comps: self.comps.iter().map(|c| c.restrict(mask)).collect() }
    }

    fn approx_bytes(&self) -> usize {
        64 + self.comps.iter().map(|c| 48 + 96 * c.iter().count()).sum::<usize>()
    }
}

/// The simplicial structure of any stage: faces and degeneracies act
/// componentwise by pullback.
pub struct StageContext;

impl SimplicialContext for StageContext {
    type Simplex = StageSimplex;

    fn dim(&self, s: &StageSimplex) -> usize {
        s.m
    }

    fn face(&self, s: &StageSimplex, i: usize) -> StageSimplex {
        let theta: Vec<u8> = (0..=s.m as u8).filter(|&v| v as usize != i).collect();
        s.pullback(&theta)
    }

    fn degeneracy(&self, s: &StageSimplex, i: usize) -> StageSimplex {
        let mut theta: Vec<u8> = (0..=s.m as u8).collect();
        theta.insert(i, i as u8);
        s.pullback(&theta)
    }
}

/// A k-invariant `k_i: P_i → K(π_{i+1}, i+2)`, given by its value on
/// `(i+2)`-simplices of P_i. It must be simplicial and vanish on degenerate
/// simplices.
pub trait KInvariant: Send + Sync {
    /// Value on an `(i+2)`-simplex of P_i.
    fn top_value(&self, s: &StageSimplex) -> Result<CoeffElem>;
}

/// The simplicial map φ from a finite model of Y into the top stage,
/// represented by its cochain components on the model.
#[derive(Clone, Debug)]
pub struct PhiModel {
    pub model: FinSimplicialSet,
    pub components: Vec<Cochain>,
}

/// A (d−1)-connected target presented by Postnikov data in the stable range.
#[derive(Clone)]
pub struct PostnikovData {
    pub name: String,
    pub d: usize,
    pub top_stage: usize,
    /// π_d, …, π_top.
    pub groups: Vec<CoeffGroup>,
    /// k_d, …, k_{top−1}.
    pub k: Vec<Arc<dyn KInvariant>>,
    pub phi: Option<PhiModel>,
}

impl fmt::Debug for PostnikovData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PostnikovData")
            .field("name", &self.name)
            .field("d", &self.d)
            .field("top_stage", &self.top_stage)
            .field("groups", &self.groups)
            .finish()
    }
}

impl PostnikovData {
    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidInput("target must be simply connected (d ≥ 2)".into()));
        }
        if self.top_stage < self.d || self.top_stage > 2 * self.d - 2 && self.top_stage != self.d {
            return Err(Error::InvalidInput(format!(
                "top stage {} outside the stable range [{}, {}]",
                self.top_stage,
                self.d,
                2 * self.d - 2
            )));
        }
        if self.groups.len() != self.top_stage - self.d + 1 || self.k.len() != self.top_stage - self.d {
            return Err(Error::InvalidInput("Postnikov data has inconsistent lengths".into()));
        }
        if let Some(phi) = &self.phi {
            if phi.components.len() != self.groups.len() {
                return Err(Error::InvalidInput("phi has the wrong number of components".into()));
            }
        }
        Ok(())
    }
}

/// Single-stage target K(π, n).
pub fn em_target_data(coeff: CoeffGroup, n: usize) -> Result<PostnikovData> {
    if n < 2 {
        return Err(Error::InvalidInput("K(π,n) targets need n ≥ 2".into()));
    }
    Ok(PostnikovData { name: format!("K({coeff},{n})"), d: n, top_stage: n, groups: vec![coeff], k: vec![], phi: None })
}

const DEFAULT_CACHE_BYTES: usize = 512 << 20;

type PairKey = (usize, StageSimplex, StageSimplex);

/// Postnikov data together with memo caches for the H-group operations.
pub struct PostnikovSystem {
    pub data: PostnikovData,
    a_cache: Mutex<HashMap<PairKey, CoeffElem>>,
    cache_bytes: AtomicUsize,
    cache_cap: usize,
}

impl fmt::Debug for PostnikovSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PostnikovSystem({:?})", self.data)
    }
}

impl PostnikovSystem {
    pub fn new(data: PostnikovData) -> Result<Arc<Self>> {
        data.validate()?;
        let cap = std::env::var("HOMCLS_CACHE_BYTES")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_CACHE_BYTES);
        Ok(Arc::new(PostnikovSystem {
            data,
            a_cache: Mutex::new(HashMap::new()),
            cache_bytes: AtomicUsize::new(0),
            cache_cap: cap,
        }))
    }

    pub fn d(&self) -> usize {
        self.data.d
    }

    pub fn top_stage(&self) -> usize {
        self.data.top_stage
    }

    /// π_i.
    pub fn pi(&self, i: usize) -> &CoeffGroup {
        &self.data.groups[i - self.data.d]
    }

    pub fn stage_of(&self, s: &StageSimplex) -> usize {
        self.data.d + s.comps.len() - 1
    }

    fn check_stage(&self, i: usize) -> Result<()> {
        if i < self.data.d || i > self.data.top_stage {
            return Err(Error::OutOfRange(format!(
                "stage {i} outside [{}, {}]",
                self.data.d, self.data.top_stage
            )));
        }
        Ok(())
    }

    pub fn zero(&self, stage: usize, m: usize) -> StageSimplex {
        StageSimplex { m, comps: (self.data.d..=stage).map(|j| EmSimplex::zero(m, j)).collect() }
    }

    /// Builds a stage simplex after checking shapes and membership.
    pub fn stage_simplex(&self, m: usize, comps: Vec<EmSimplex>) -> Result<StageSimplex> {
        if comps.is_empty() {
            return Err(Error::InvalidInput("stage simplex without components".into()));
        }
        for (j, c) in comps.iter().enumerate() {
            if c.m != m || c.n != self.data.d + j {
                return Err(Error::DimensionMismatch("stage simplex component has the wrong shape".into()));
            }
        }
        let s = StageSimplex { m, comps };
        self.check_stage(self.stage_of(&s))?;
        self.check_member(&s)?;
        Ok(s)
    }

    /// k_i evaluated on an `(i+2)`-simplex of P_i.
    pub fn k_top(&self, i: usize, s: &StageSimplex) -> Result<CoeffElem> {
        if i < self.data.d || i >= self.data.top_stage {
            return Err(Error::OutOfRange(format!("no k-invariant k_{i}")));
        }
        if s.m != i + 2 || self.stage_of(s) != i {
            return Err(Error::DimensionMismatch(format!("k_{i} needs an {}-simplex of P_{i}", i + 2)));
        }
        if s.is_zero() {
            return Ok(self.pi(i + 1).zero());
        }
        let v = self.data.k[i - self.data.d].top_value(s)?;
        self.pi(i + 1).element(v).map_err(|e| Error::Oracle(e.to_string()))
    }

    /// k_i evaluated on an `m`-simplex of P_i: an `(i+2)`-cocycle on Δ^m.
    pub fn k_eval(&self, i: usize, s: &StageSimplex) -> Result<EmSimplex> {
        let coeff = self.pi(i + 1).clone();
        let mut out = EmSimplex::zero(s.m, i + 2);
        for mask in faces_of_dim(s.m, i + 2) {
            let v = self.k_top(i, &s.restrict(mask))?;
            out.set(&coeff, mask, v);
        }
        Ok(out)
    }

    /// Checks the membership conditions δσ^d = 0 and k_{j−1}(σ^d,…,σ^{j−1}) = δσ^j.
    pub fn check_member(&self, s: &StageSimplex) -> Result<()> {
        let d = self.data.d;
        if !s.comps[0].is_cocycle(self.pi(d)) {
            return Err(Error::InvalidInput("first component of a stage simplex is not a cocycle".into()));
        }
        for j in 1..s.comps.len() {
            let lower = StageSimplex { m: s.m, comps: s.comps[..j].to_vec() };
            let k = self.k_eval(d + j - 1, &lower)?;
            if k != s.comps[j].coboundary(self.pi(d + j)) {
                return Err(Error::InvalidInput(format!("stage simplex violates the condition at degree {}", d + j)));
            }
        }
        Ok(())
    }

    pub fn is_member(&self, s: &StageSimplex) -> bool {
        self.check_member(s).is_ok()
    }

    /// p_i: drops the last component.
    pub fn project(&self, s: &StageSimplex) -> Result<StageSimplex> {
        if s.comps.len() < 2 {
            return Err(Error::OutOfRange("cannot project below the first stage".into()));
        }
        Ok(s.prefix())
    }

    /// λ_i: inserts a cocycle as the last component over the zero simplex.
    pub fn lambda(&self, i: usize, sigma: &EmSimplex) -> Result<StageSimplex> {
        self.check_stage(i)?;
        if sigma.n != i {
            return Err(Error::DimensionMismatch(format!("λ_{i} needs an {i}-cochain")));
        }
        if !sigma.is_cocycle(self.pi(i)) {
            return Err(Error::NotCocycle("λ needs a cocycle".into()));
        }
        let mut z = self.zero(i, sigma.m);
        *z.comps.last_mut().expect("nonempty") = sigma.clone();
        Ok(z)
    }

    fn check_pair(&self, s: &StageSimplex, t: &StageSimplex) -> Result<()> {
        if s.m != t.m || s.comps.len() != t.comps.len() {
            return Err(Error::DimensionMismatch("stage simplices of different stage or dimension".into()));
        }
        Ok(())
    }

    /// ⊞_i.
    pub fn add(&self, s: &StageSimplex, t: &StageSimplex) -> Result<StageSimplex> {
        self.check_pair(s, t)?;
        let i = self.stage_of(s);
        let coeff = self.pi(i);
        if s.comps.len() == 1 {
            return Ok(StageSimplex { m: s.m, comps: vec![s.comps[0].add(coeff, &t.comps[0])?] });
        }
        if t.is_zero() {
            return Ok(s.clone());
        }
        if s.is_zero() {
            return Ok(t.clone());
        }
        let (sb, tb) = (s.prefix(), t.prefix());
        let mut out = self.add(&sb, &tb)?;
        let a = self.big_a(i - 1, &sb, &tb)?;
        let omega = s.last().add(coeff, t.last())?.add(coeff, &a)?;
        out.comps.push(omega);
        Ok(out)
    }

    /// ⊟_i.
    pub fn neg(&self, s: &StageSimplex) -> Result<StageSimplex> {
        let i = self.stage_of(s);
        let coeff = self.pi(i);
        if s.comps.len() == 1 {
            return Ok(StageSimplex { m: s.m, comps: vec![s.comps[0].neg(coeff)] });
        }
        let sb = s.prefix();
        let nb = self.neg(&sb)?;
        let a = self.big_a(i - 1, &sb, &nb)?;
        let last = s.last().neg(coeff).sub(coeff, &a)?;
        let mut out = nb;
        out.comps.push(last);
        Ok(out)
    }

    /// Top value of the last component of `s ⊞_i t` for `m = i`.
    pub fn add_top(&self, s: &StageSimplex, t: &StageSimplex) -> Result<CoeffElem> {
        self.check_pair(s, t)?;
        let i = self.stage_of(s);
        let coeff = self.pi(i);
        let full = full_mask(s.m);
        let mut v = coeff.add(&s.last().get(coeff, full), &t.last().get(coeff, full));
        if s.comps.len() > 1 && s.m == i {
            let a = self.big_a_top(i - 1, &s.prefix(), &t.prefix())?;
            coeff.add_assign(&mut v, &a);
        }
        Ok(v)
    }

    /// Top value of the last component of `⊟_i s` for `m = i`.
    pub fn neg_top(&self, s: &StageSimplex) -> Result<CoeffElem> {
        let i = self.stage_of(s);
        let coeff = self.pi(i);
        let mut v = coeff.neg(&s.last().top(coeff));
        if s.comps.len() > 1 && s.m == i {
            let sb = s.prefix();
            let nb = self.neg(&sb)?;
            let a = self.big_a_top(i - 1, &sb, &nb)?;
            v = coeff.sub(&v, &a);
        }
        Ok(v)
    }

    /// The nonadditivity cocycle a_i(s, t) = k_i(s ⊞ t) − k_i(s) − k_i(t).
    pub fn a_nonadd(&self, i: usize, s: &StageSimplex, t: &StageSimplex) -> Result<EmSimplex> {
        self.check_pair(s, t)?;
        let coeff = self.pi(i + 1);
        let sum = self.add(s, t)?;
        let k = self.k_eval(i, &sum)?;
        k.sub(coeff, &self.k_eval(i, s)?)?.sub(coeff, &self.k_eval(i, t)?)
    }

    fn a_top(&self, i: usize, s: &StageSimplex, t: &StageSimplex) -> Result<CoeffElem> {
        let coeff = self.pi(i + 1);
        if s.is_zero() || t.is_zero() {
            return Ok(coeff.zero());
        }
        let sum = self.add(s, t)?;
        let v = self.k_top(i, &sum)?;
        Ok(coeff.sub(&coeff.sub(&v, &self.k_top(i, s)?), &self.k_top(i, t)?))
    }

    /// Value of A_i on a pair of `(i+1)`-simplices of P_i.
    pub fn big_a_top(&self, i: usize, s: &StageSimplex, t: &StageSimplex) -> Result<CoeffElem> {
        let coeff = self.pi(i + 1);
        if s.is_zero() || t.is_zero() {
            return Ok(coeff.zero());
        }
        let key = (i, s.clone(), t.clone());
        if let Some(v) = self.a_cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let mut acc = coeff.zero();
        for ((rho, rho2), c) in shi_pair(&StageContext, s, t) {
            let v = self.a_top(i, &rho, &rho2)?;
            if !coeff.is_zero(&v) {
                coeff.add_assign(&mut acc, &coeff.scale_i64(c, &v));
            }
        }
        self.remember(key, acc.clone());
        Ok(acc)
    }

    fn remember(&self, key: PairKey, v: CoeffElem) {
        let size = key.1.approx_bytes() + key.2.approx_bytes() + 32 * v.len();
        let mut cache = self.a_cache.lock().expect("cache lock");
        if self.cache_bytes.load(Ordering::Relaxed) + size > self.cache_cap {
            cache.clear();
            self.cache_bytes.store(0, Ordering::Relaxed);
        }
        if size <= self.cache_cap && cache.insert(key, v).is_none() {
            self.cache_bytes.fetch_add(size, Ordering::Relaxed);
        }
    }

    /// The correction A_i(s, t): an `(i+1)`-cochain on Δ^m.
    pub fn big_a(&self, i: usize, s: &StageSimplex, t: &StageSimplex) -> Result<EmSimplex> {
        self.check_pair(s, t)?;
        let coeff = self.pi(i + 1).clone();
        let mut out = EmSimplex::zero(s.m, i + 1);
        if s.is_zero() || t.is_zero() {
            return Ok(out);
        }
        for mask in faces_of_dim(s.m, i + 1) {
            let v = self.big_a_top(i, &s.restrict(mask), &t.restrict(mask))?;
            out.set(&coeff, mask, v);
        }
        Ok(out)
    }

    /// Extends a simplex of P_i to one of P_{i+1} by the contraction of Δ^m.
    pub fn extend(&self, s: &StageSimplex) -> Result<StageSimplex> {
        let i = self.stage_of(s);
        let k = self.k_eval(i, s)?;
        let mut out = s.clone();
        out.comps.push(k.contract()?);
        Ok(out)
    }

    /// Number of memoized A values.
    pub fn cache_len(&self) -> usize {
        self.a_cache.lock().expect("cache lock").len()
    }
}
