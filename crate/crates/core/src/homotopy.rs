//! Homotopy classes of maps into Postnikov stages.
//!
//! A map `X → P_i` is stored as its cochain representation: cochains
//! `c^d, …, c^i` on the nondegenerate simplices of X with `c^d` a cocycle and
//! `k_{j−1}(c^d, …, c^{j−1}) = δc^j`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::abelian::{
    assemble_short_exact, cokernel, kernel, vanishing_combinations, Cokernel, FullyEffectiveGroup, HomFn,
    SemiEffectiveGroup, ShortExactSequence,
};
use crate::em::cochain_at;
use crate::error::{Error, Result};
use crate::postnikov::{PostnikovData, PostnikovSystem, StageSimplex};
use crate::simplicial::{Cochain, CochainSolver, FinSimplicialSet, SimplexRef, SimplicialMap, Suspension};

/// Cochain representation `(c^d, …, c^i)` of a simplicial map into P_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapRep {
    pub d: usize,
    pub comps: Vec<Cochain>,
}

impl MapRep {
    pub fn stage(&self) -> usize {
        self.d + self.comps.len() - 1
    }

    pub fn last(&self) -> &Cochain {
        self.comps.last().expect("map representations have a component")
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Cochain::is_zero)
    }

    /// p_{i*}: drops the last component.
    pub fn project(&self) -> Result<MapRep> {
        if self.comps.len() < 2 {
            return Err(Error::OutOfRange("cannot project below the first stage".into()));
        }
        Ok(MapRep { d: self.d, comps: self.comps[..self.comps.len() - 1].to_vec() })
    }

    /// The first `stage − d + 1` components.
    pub fn truncate(&self, stage: usize) -> MapRep {
        MapRep { d: self.d, comps: self.comps[..stage - self.d + 1].to_vec() }
    }
}

/// A map from the cone CX, split into its base and cone parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeMapRep {
    pub map: MapRep,
}

/// Maps from one finite simplicial set into the stages of a Postnikov system.
pub struct MapSpace {
    pub sys: Arc<PostnikovSystem>,
    solver: CochainSolver,
}

impl MapSpace {
    pub fn new(sys: Arc<PostnikovSystem>, space: FinSimplicialSet) -> Self {
        MapSpace { sys, solver: CochainSolver::new(space) }
    }

    pub fn space(&self) -> &FinSimplicialSet {
        self.solver.space()
    }

    pub fn solver(&self) -> &CochainSolver {
        &self.solver
    }

    fn d(&self) -> usize {
        self.sys.d()
    }

    pub fn zero(&self, stage: usize) -> MapRep {
        let d = self.d();
        MapRep { d, comps: (d..=stage).map(|j| Cochain::zero(j, self.sys.pi(j).clone())).collect() }
    }

    /// Checks shapes and the lifting conditions.
    pub fn check(&self, m: &MapRep) -> Result<()> {
        let d = self.d();
        if m.d != d || m.comps.is_empty() || m.stage() > self.sys.top_stage() {
            return Err(Error::DimensionMismatch("map representation does not match the target".into()));
        }
        for (j, c) in m.comps.iter().enumerate() {
            if c.dim != d + j || c.coeff != *self.sys.pi(d + j) {
                return Err(Error::DimensionMismatch(format!("component {j} has the wrong degree or coefficients")));
            }
            c.check_on(self.space())?;
        }
        if !m.comps[0].is_cocycle(self.space()) {
            return Err(Error::NotCocycle("first component is not a cocycle".into()));
        }
        for j in 1..m.comps.len() {
            let lower = MapRep { d, comps: m.comps[..j].to_vec() };
            if self.k_star(&lower)? != m.comps[j].coboundary(self.space()) {
                return Err(Error::InvalidInput(format!("lifting condition fails in degree {}", d + j)));
            }
        }
        Ok(())
    }

    /// The stage simplex that the map sends `s` to, using the first `len`
    /// components.
    pub fn simplex_at(&self, m: &MapRep, len: usize, s: &SimplexRef) -> StageSimplex {
        let x = self.space();
        StageSimplex { m: s.dim(), comps: m.comps[..len].iter().map(|c| cochain_at(x, c, s)).collect() }
    }

    fn check_pair(&self, a: &MapRep, b: &MapRep) -> Result<()> {
        if a.d != b.d || a.comps.len() != b.comps.len() {
            return Err(Error::DimensionMismatch("map representations of different stages".into()));
        }
        Ok(())
    }

    /// ⊞_{i*}.
    pub fn add(&self, a: &MapRep, b: &MapRep) -> Result<MapRep> {
        self.check_pair(a, b)?;
        let x = self.space();
        let mut comps = Vec::with_capacity(a.comps.len());
        for j in 0..a.comps.len() {
            let plain = a.comps[j].add(&b.comps[j])?;
            if j == 0 || a.comps[..j].iter().all(Cochain::is_zero) || b.comps[..j].iter().all(Cochain::is_zero) {
                comps.push(plain);
                continue;
            }
            let n = a.d + j;
            let mut out = Cochain::zero(n, self.sys.pi(n).clone());
            for idx in 0..x.count(n) {
                let s = SimplexRef::nondegenerate(n, idx);
                let v = self.sys.add_top(&self.simplex_at(a, j + 1, &s), &self.simplex_at(b, j + 1, &s))?;
                out.set(idx, v);
            }
            comps.push(out);
        }
        Ok(MapRep { d: a.d, comps })
    }

    /// ⊟_{i*}.
    pub fn neg(&self, a: &MapRep) -> Result<MapRep> {
        let x = self.space();
        let mut comps = Vec::with_capacity(a.comps.len());
        for j in 0..a.comps.len() {
            if j == 0 || a.comps[..j].iter().all(Cochain::is_zero) {
                comps.push(a.comps[j].neg());
                continue;
            }
            let n = a.d + j;
            let mut out = Cochain::zero(n, self.sys.pi(n).clone());
            for idx in 0..x.count(n) {
                let s = SimplexRef::nondegenerate(n, idx);
                out.set(idx, self.sys.neg_top(&self.simplex_at(a, j + 1, &s))?);
            }
            comps.push(out);
        }
        Ok(MapRep { d: a.d, comps })
    }

    /// k_{i*}: the `(i+2)`-cochain of the composite with k_i.
    pub fn k_star(&self, c: &MapRep) -> Result<Cochain> {
        let i = c.stage();
        let coeff = self.sys.pi(i + 1).clone();
        let mut out = Cochain::zero(i + 2, coeff);
        if c.is_zero() {
            return Ok(out);
        }
        for idx in 0..self.space().count(i + 2) {
            let s = SimplexRef::nondegenerate(i + 2, idx);
            out.set(idx, self.sys.k_top(i, &self.simplex_at(c, c.comps.len(), &s))?);
        }
        Ok(out)
    }

    /// λ_{i*}: the map `(0, …, 0, z)`.
    pub fn lambda(&self, z: &Cochain) -> Result<MapRep> {
        let i = z.dim;
        if i < self.d() || i > self.sys.top_stage() || z.coeff != *self.sys.pi(i) {
            return Err(Error::DimensionMismatch("λ needs an i-cochain with coefficients in π_i".into()));
        }
        let mut m = self.zero(i);
        *m.comps.last_mut().expect("nonempty") = z.clone();
        Ok(m)
    }

    /// ξ_i: lifts a map to the next stage, choosing the last component with
    /// the deterministic solver.
    pub fn xi_lift(&self, c: &MapRep) -> Result<MapRep> {
        let k = self.k_star(c)?;
        let e = self
            .solver
            .preimage(&k)?
            .ok_or_else(|| Error::Precondition("map has a nonzero obstruction and does not lift".into()))?;
        let mut out = c.clone();
        out.comps.push(e);
        Ok(out)
    }

    /// Semi-effective group of maps into P_i.
    pub fn semi_effective(self: &Arc<Self>, stage: usize) -> SemiEffectiveGroup<MapRep> {
        let (s1, s2) = (self.clone(), self.clone());
        SemiEffectiveGroup::new(self.zero(stage), move |a, b| s1.add(a, b), move |a| s2.neg(a))
    }

    /// H^n(X; π_j) with representatives turned into maps by λ when `n = j`.
    fn cohomology_as_maps(self: &Arc<Self>, n: usize) -> Result<FullyEffectiveGroup<MapRep>> {
        let h = self.solver.cohomology(n, self.sys.pi(n))?;
        let gens = h.generators.iter().map(|g| self.lambda(g)).collect::<Result<Vec<_>>>()?;
        let express = h.express_fn();
        let d = self.d();
        let ex: crate::abelian::ExpressFn<MapRep> = Arc::new(move |m: &MapRep| {
            if m.d != d || m.comps.len() != 1 {
                return Err(Error::DimensionMismatch("expected a map into the first stage".into()));
            }
            express(&m.comps[0])
        });
        Ok(FullyEffectiveGroup::from_parts(self.semi_effective(n), gens, h.orders.clone(), ex))
    }

    /// Generators of [X, P_i], computed from generators of [X, P_{i−1}]
    /// without relations.
    pub fn generators(self: &Arc<Self>, stage: usize) -> Result<Vec<MapRep>> {
        let d = self.d();
        let h = self.solver.cohomology(stage, self.sys.pi(stage))?;
        let mut out = h.generators.iter().map(|g| self.lambda(g)).collect::<Result<Vec<_>>>()?;
        if stage == d {
            return Ok(out);
        }
        let prev = self.generators(stage - 1)?;
        let obstructions = self.solver.cohomology(stage + 1, self.sys.pi(stage))?;
        let images = prev.iter().map(|g| self.k_star(g)).collect::<Result<Vec<_>>>()?;
        let base = self.semi_effective(stage - 1);
        for v in vanishing_combinations(&obstructions, &images)? {
            out.push(self.xi_lift(&base.combination(&v, &prev)?)?);
        }
        Ok(out)
    }
}

/// Nullhomotopies over the cone, built from the zero witnesses of the
/// cokernels M_j for `d < j ≤ stage`.
#[derive(Clone)]
struct Nullhomotopy {
    x: Arc<MapSpace>,
    cx: Arc<MapSpace>,
    sx: Arc<MapSpace>,
    susp: Arc<Suspension>,
    witnesses: Vec<Arc<Cokernel<MapRep, Cochain>>>,
}

impl Nullhomotopy {
    fn restrict(&self, b: &MapRep) -> MapRep {
        MapRep { d: b.d, comps: b.comps.iter().map(|c| self.susp.cone.restrict(c)).collect() }
    }

    /// Lift of a map on CX to the next stage through the cone contraction.
    fn lift_cone(&self, b: &MapRep) -> Result<MapRep> {
        let k = self.cx.k_star(b)?;
        let mut out = b.clone();
        out.comps.push(self.susp.cone.contract(&k)?);
        Ok(out)
    }

    /// μ_i = D ∘ k_{(i−1)*} on maps SX → P_{i−1}.
    fn mu(&self, f: &MapRep) -> Result<Cochain> {
        self.susp.shift(&self.sx.k_star(f)?)
    }

    fn run(&self, m: &MapRep) -> Result<MapRep> {
        let d = m.d;
        let cone = &self.susp.cone;
        if m.comps.len() == 1 {
            let c = &m.comps[0];
            let e = self
                .x
                .solver()
                .preimage(c)?
                .ok_or_else(|| Error::Precondition("map is not nullhomotopic".into()))?;
            return Ok(MapRep { d, comps: vec![cone.join(&e, c)?] });
        }
        let i = m.stage();
        let witness = self
            .witnesses
            .get(i - d - 1)
            .ok_or_else(|| Error::OutOfRange(format!("no cokernel data for stage {i}")))?;
        let b0 = self.lift_cone(&self.run(&m.project()?)?)?;
        let z = m.last().sub(&cone.restrict(b0.last()))?;
        let f = witness
            .zero_witness(&z)?
            .ok_or_else(|| Error::Precondition("map is not nullhomotopic".into()))?;
        let zt = self.mu(&f)?;
        let e = self
            .x
            .solver()
            .preimage(&z.sub(&zt)?)?
            .ok_or_else(|| Error::Inconsistent("witness does not match the cokernel class".into()))?;
        let mut a = MapRep { d, comps: f.comps.iter().map(|c| self.susp.pull_to_cone(c)).collect::<Result<_>>()? };
        a.comps.push(cone.join(&Cochain::zero(i - 1, zt.coeff.clone()), &zt)?);
        let de = e.coboundary(self.x.space());
        let t = self.cx.lambda(&cone.join(&e, &de)?)?;
        self.cx.add(&b0, &self.cx.add(&a, &t)?)
    }

    /// ρ_i: a cocycle `z` with `[(0, z)] = [m]` for `m` with `[p(m)] = 0`.
    fn rho(&self, m: &MapRep) -> Result<Cochain> {
        let b = self.lift_cone(&self.run(&m.project()?)?)?;
        m.last().sub(&self.susp.cone.restrict(b.last()))
    }
}

/// The fully effective groups [X, P_j] for `d ≤ j ≤ stage`.
pub struct Tower {
    pub sys: Arc<PostnikovSystem>,
    x: Arc<MapSpace>,
    null: Nullhomotopy,
    groups: Vec<FullyEffectiveGroup<MapRep>>,
}

impl Tower {
    /// Computes [X, P_j] for every `j` up to `stage`.
    pub fn new(x: &FinSimplicialSet, data: &PostnikovData, stage: usize) -> Result<Tower> {
        let sys = PostnikovSystem::new(data.clone())?;
        Tower::with_system(x, sys, stage)
    }

    pub fn with_system(x: &FinSimplicialSet, sys: Arc<PostnikovSystem>, stage: usize) -> Result<Tower> {
        let d = sys.d();
        if stage < d || stage > sys.top_stage() {
            return Err(Error::OutOfRange(format!("stage {stage} outside [{d}, {}]", sys.top_stage())));
        }
        let susp = Arc::new(Suspension::new(x)?);
        let xs = Arc::new(MapSpace::new(sys.clone(), x.clone()));
        let cx = Arc::new(MapSpace::new(sys.clone(), susp.cone.space.clone()));
        let sx = Arc::new(MapSpace::new(sys.clone(), susp.space.clone()));
        let mut null = Nullhomotopy { x: xs.clone(), cx, sx: sx.clone(), susp: susp.clone(), witnesses: vec![] };
        let mut groups = vec![xs.cohomology_as_maps(d)?];
        for i in d + 1..=stage {
            let prev = groups.last().expect("base stage");
            let obstructions = xs.solver().cohomology(i + 1, sys.pi(i))?;
            let xk = xs.clone();
            let n_group = kernel(prev, &obstructions, &move |c: &MapRep| xk.k_star(c))?;
            let sgens = sx.generators(i - 1)?;
            let h = xs.solver().cohomology(i, sys.pi(i))?;
            let nm = null.clone();
            let m = Arc::new(cokernel(&sx.semi_effective(i - 1), &sgens, &h, &move |f: &MapRep| nm.mu(f))?);
            let (x1, x2, x3) = (xs.clone(), xs.clone(), null.clone());
            let f: HomFn<Cochain, MapRep> = Arc::new(move |z| x1.lambda(z));
            let g: HomFn<MapRep, MapRep> = Arc::new(|b: &MapRep| b.project());
            let r: HomFn<MapRep, Cochain> = Arc::new(move |b| x3.rho(b));
            let xi: HomFn<MapRep, MapRep> = Arc::new(move |c| x2.xi_lift(c));
            let group = assemble_short_exact(ShortExactSequence {
                a: m.group.clone(),
                c: n_group,
                b_base: xs.semi_effective(i),
                f,
                g,
                r,
                xi,
            })?;
            groups.push(group);
            null.witnesses.push(m);
        }
        Ok(Tower { sys, x: xs, null, groups })
    }

    pub fn stage(&self) -> usize {
        self.sys.d() + self.groups.len() - 1
    }

    pub fn space(&self) -> &FinSimplicialSet {
        self.x.space()
    }

    pub fn maps(&self) -> &Arc<MapSpace> {
        &self.x
    }

    pub fn cone_maps(&self) -> &Arc<MapSpace> {
        &self.null.cx
    }

    /// [X, P_i].
    pub fn group(&self, i: usize) -> Result<&FullyEffectiveGroup<MapRep>> {
        let d = self.sys.d();
        if i < d || i > self.stage() {
            return Err(Error::OutOfRange(format!("stage {i} was not computed")));
        }
        Ok(&self.groups[i - d])
    }

    /// The group at the top computed stage.
    pub fn top(&self) -> &FullyEffectiveGroup<MapRep> {
        self.groups.last().expect("at least one stage")
    }

    /// Coordinates of a map in the generators of [X, P_i], after validation.
    pub fn express(&self, m: &MapRep) -> Result<Vec<BigInt>> {
        self.x.check(m)?;
        self.group(m.stage())?.express(m)
    }

    /// A nullhomotopy of `m`: a map on CX restricting to `m`.
    pub fn nullhomotopy(&self, m: &MapRep) -> Result<ConeMapRep> {
        self.x.check(m)?;
        if m.stage() > self.stage() {
            return Err(Error::OutOfRange(format!("stage {} was not computed", m.stage())));
        }
        if !self.group(m.stage())?.is_zero(m)? {
            return Err(Error::Precondition("map is not nullhomotopic".into()));
        }
        Ok(ConeMapRep { map: self.null.run(m)? })
    }

    /// Checks that `b` is a valid map on CX restricting to `m`.
    pub fn verify_nullhomotopy(&self, m: &MapRep, b: &ConeMapRep) -> Result<()> {
        self.null.cx.check(&b.map)?;
        if self.null.restrict(&b.map) != *m {
            return Err(Error::InvalidInput("nullhomotopy does not restrict to the map".into()));
        }
        Ok(())
    }

    /// Composite of a simplicial map into the stored model of Y with φ.
    pub fn compose_with_phi(&self, f: &SimplicialMap) -> Result<MapRep> {
        let phi = self
            .sys
            .data
            .phi
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("target {} has no finite model", self.sys.data.name)))?;
        let x = self.space();
        let d = self.sys.d();
        let mut comps = Vec::new();
        for j in d..=self.stage() {
            let src = &phi.components[j - d];
            let mut c = Cochain::zero(j, src.coeff.clone());
            for idx in 0..x.count(j) {
                c.set(idx, src.eval(&f.apply(&SimplexRef::nondegenerate(j, idx))));
            }
            comps.push(c);
        }
        Ok(MapRep { d, comps })
    }

    /// Builds a simplicial map into the stored model of Y.
    pub fn simplicial_map(&self, images: Vec<Vec<SimplexRef>>) -> Result<SimplicialMap> {
        let phi = self
            .sys
            .data
            .phi
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("target {} has no finite model", self.sys.data.name)))?;
        SimplicialMap::new(self.space(), &phi.model, images)
    }

    /// Coordinates of the homotopy class of `f` in the generators of the top
    /// group.
    pub fn class_of(&self, f: &SimplicialMap) -> Result<Vec<BigInt>> {
        self.express(&self.compose_with_phi(f)?)
    }

    pub fn homotopic(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<bool> {
        self.top().equal(&self.compose_with_phi(f)?, &self.compose_with_phi(g)?)
    }

    /// A nullhomotopy certificate for `φ∘f` when `f` is nullhomotopic.
    pub fn nullhomotopic(&self, f: &SimplicialMap) -> Result<Option<ConeMapRep>> {
        let m = self.compose_with_phi(f)?;
        self.x.check(&m)?;
        if !self.top().is_zero(&m)? {
            return Ok(None);
        }
        Ok(Some(ConeMapRep { map: self.null.run(&m)? }))
    }
}

/// The stage through which [X, P_i] agrees with [X, Y].
pub fn stable_stage(x: &FinSimplicialSet, data: &PostnikovData) -> Result<usize> {
    let d = data.d;
    if x.dim() > 2 * d - 2 {
        return Err(Error::Precondition(format!(
            "dim X = {} exceeds the metastable bound 2d−2 = {}",
            x.dim(),
            2 * d - 2
        )));
    }
    Ok(x.dim().clamp(d, 2 * d - 2).min(data.top_stage))
}

/// [X, Y] for a target in the stable range.
pub fn homotopy_classes(x: &FinSimplicialSet, data: &PostnikovData) -> Result<Tower> {
    Tower::new(x, data, stable_stage(x, data)?)
}

/// [X, P_i].
pub fn compute_group(x: &FinSimplicialSet, data: &PostnikovData, stage: usize) -> Result<Tower> {
    Tower::new(x, data, stage)
}
