//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use homcls::abelian::GroupStructure;
use homcls::em::{faces_of_dim, EmSimplex};
use homcls::homotopy::{compute_group, homotopy_classes, MapRep, MapSpace, Tower};
use homcls::intlinalg::{smith_normal_form, IntMatrix};
use homcls::postnikov::ez::{aw, chain_add, eml, product_basis, product_boundary, shi, ProductChain};
use homcls::postnikov::{em_target_data, sphere3_data, PostnikovSystem, StageSimplex};
use homcls::samples;
use homcls::simplicial::{cohomology_group, Cochain, CoeffGroup, FinSimplicialSet, SimplexRef, SimplicialMap};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const HOPF_LIMIT: Duration = Duration::from_secs(10);
const STEM_LIMIT: Duration = Duration::from_secs(300);
const EM_LIMIT: Duration = Duration::from_secs(30);
const WEDGE_LIMIT: Duration = Duration::from_secs(600);
const SNF_LIMIT: Duration = Duration::from_secs(5);

const HGROUP_CASES: usize = 250;
const KEY_HIGH_CASES: usize = 60;
const LABEL_BOUND: i64 = 3;
const MAX_STAGE_DIM: usize = 4;
const CHAIN_DIM: usize = 3;
const NULL_CASES: usize = 100;
const EXTRA_NULL_CASES: usize = 25;
const SNF_CASES: usize = 1000;
const SNF_MAX_DIM: usize = 6;
const SNF_ENTRY_BOUND: i64 = 9;
const MINOR_ORACLE_CASES: usize = 150;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------------------------------------------------------------- 1

fn hopf_degree() -> Check {
    let start = Instant::now();
    let x = samples::minimal_sphere(3);
    let t = homotopy_classes(&x, &sphere3_data()).map_err(err)?;
    let g = t.top().structure();
    ensure(g == GroupStructure::new(1, &[]), || format!("group is {g}"))?;
    let y = &t.sys.data.phi.as_ref().unwrap().model;
    let id = t.class_of(&SimplicialMap::identity(&x)).map_err(err)?;
    let c = t.class_of(&SimplicialMap::constant(&x, y)).map_err(err)?;
    ensure(id.len() == 1 && id[0].abs().is_one(), || format!("identity has class {id:?}"))?;
    ensure(c.iter().all(Zero::is_zero), || format!("constant has class {c:?}"))?;
    let time = within(start, HOPF_LIMIT)?;
    Ok(format!("[S3,S3] = {g}, identity = {}, constant = 0 ({time:.2?})", id[0]))
}

// ---------------------------------------------------------------- 2

fn stable_stem() -> Check {
    let start = Instant::now();
    let t = homotopy_classes(&samples::minimal_sphere(4), &sphere3_data()).map_err(err)?;
    let g = t.top().structure();
    ensure(g == GroupStructure::new(0, &[2]), || format!("group is {g}"))?;
    let time = within(start, STEM_LIMIT)?;
    Ok(format!("[S4,S3] = {g} ({time:.2?})"))
}

// ---------------------------------------------------------------- 3

fn em_targets() -> Check {
    let start = Instant::now();
    let spaces = [("dDelta4", samples::boundary_delta4()), ("RP2", samples::rp2()), ("torus", samples::torus())];
    let targets = [(CoeffGroup::integers(), 2), (CoeffGroup::integers(), 3), (CoeffGroup::cyclic(2), 2)];
    let mut count = 0;
    for (name, x) in &spaces {
        for (pi, n) in &targets {
            let data = em_target_data(pi.clone(), *n).map_err(err)?;
            let h = cohomology_group(x, *n, pi).map_err(err)?.structure();
            let g = compute_group(x, &data, *n).map_err(err)?.top().structure();
            ensure(g == h, || format!("{name}, K({pi},{n}): group {g}, cohomology {h}"))?;
            if x.dim() <= 2 * n - 2 {
                let s = homotopy_classes(x, &data).map_err(err)?.top().structure();
                ensure(s == h, || format!("{name}, K({pi},{n}): stable group {s}, cohomology {h}"))?;
            }
            count += 1;
        }
    }
    let time = within(start, EM_LIMIT)?;
    Ok(format!("{count} space/target pairs agree with cohomology ({time:.2?})"))
}

// ---------------------------------------------------------------- 4

fn inclusion(wedge: &FinSimplicialSet, sphere: &FinSimplicialSet, name: &str) -> SimplicialMap {
    let mut images: Vec<Vec<SimplexRef>> =
        sphere.counts().iter().enumerate().map(|(n, &c)| vec![wedge.base_simplex(n); c]).collect();
    let (dim, idx) = wedge.lookup(name).unwrap();
    images[dim][0] = SimplexRef::nondegenerate(dim, idx);
    SimplicialMap::new(sphere, wedge, images).unwrap()
}

fn pull_back(m: &MapRep, f: &SimplicialMap, src: &FinSimplicialSet) -> MapRep {
    let comps = m
        .comps
        .iter()
        .map(|c| {
            let mut out = Cochain::zero(c.dim, c.coeff.clone());
            for j in 0..src.count(c.dim) {
                out.set(j, c.eval(&f.apply(&SimplexRef::nondegenerate(c.dim, j))));
            }
            out
        })
        .collect();
    MapRep { d: m.d, comps }
}

fn wedge() -> Check {
    let start = Instant::now();
    let w = samples::wedge_of_spheres(&[4, 3]);
    let s3 = samples::minimal_sphere(3);
    let s4 = samples::minimal_sphere(4);
    let tw = homotopy_classes(&w, &sphere3_data()).map_err(err)?;
    let g = tw.top().structure();
    ensure(g == GroupStructure::new(1, &[2]), || format!("group is {g}"))?;
    // Restriction oracle: [S4 ∨ S3, P] → [S3, P] ⊕ [S4, P] is a bijection.
    let t3 = Tower::new(&s3, &sphere3_data(), tw.stage()).map_err(err)?;
    let t4 = Tower::new(&s4, &sphere3_data(), tw.stage()).map_err(err)?;
    let (h3, h4) = (t3.top().structure(), t4.top().structure());
    let sum = GroupStructure { free_rank: h3.free_rank + h4.free_rank, torsion: [h3.torsion.clone(), h4.torsion.clone()].concat() };
    ensure(sum == g, || format!("summands give {h3} and {h4}"))?;
    let i3 = inclusion(&w, &s3, "s3_1");
    let i4 = inclusion(&w, &s4, "s4_0");
    let top = tw.top();
    let box_size = 4i64;
    let ranges: Vec<Vec<i64>> =
        top.orders.iter().map(|q| if q.is_zero() { (-box_size..=box_size).collect() } else { (0..q.to_i64().unwrap()).collect() }).collect();
    let mut seen = HashSet::new();
    let mut hit_s3_generator = false;
    let mut hit_s4_generator = false;
    for a in &ranges[0] {
        for b in &ranges[1] {
            let coords = [BigInt::from(*a), BigInt::from(*b)];
            let m = top.base.combination(&coords, &top.generators).map_err(err)?;
            let r3 = t3.express(&pull_back(&m, &i3, &s3)).map_err(err)?;
            let r4 = t4.express(&pull_back(&m, &i4, &s4)).map_err(err)?;
            hit_s3_generator |= r3[0].abs().is_one() && r4[0].is_zero();
            hit_s4_generator |= r3[0].is_zero() && r4[0].is_one();
            ensure(seen.insert((r3.clone(), r4.clone())), || format!("restriction not injective at {coords:?}"))?;
        }
    }
    ensure(hit_s3_generator && hit_s4_generator, || "restriction misses a summand generator".into())?;
    let time = within(start, WEDGE_LIMIT)?;
    Ok(format!("[S4vS3,S3] = {g}, restriction to summands is bijective on {} classes ({time:.2?})", seen.len()))
}

// ---------------------------------------------------------------- 5

fn em_labels(rng: &mut ChaCha8Rng, m: usize, n: usize, coeff: &CoeffGroup) -> EmSimplex {
    let vals: Vec<(u32, Vec<BigInt>)> = faces_of_dim(m, n)
        .into_iter()
        .map(|f| (f, coeff.reduced(vec![BigInt::from(rng.gen_range(-LABEL_BOUND..=LABEL_BOUND))])))
        .collect();
    EmSimplex::from_values(m, n, coeff, vals).unwrap()
}

fn labels_in_range(e: &EmSimplex) -> bool {
    e.iter().all(|(_, v)| v[0].abs() <= BigInt::from(LABEL_BOUND))
}

/// A random simplex of P₃ = K(ℤ,3): a 3-cocycle on Δ^m with labels in range.
fn random_p3(rng: &mut ChaCha8Rng, m: usize) -> StageSimplex {
    let z = CoeffGroup::integers();
    loop {
        let c = em_labels(rng, m, 2, &z).coboundary(&z);
        if labels_in_range(&c) {
            return StageSimplex { m, comps: vec![c] };
        }
    }
}

/// A random 3-cocycle on Δ^m, the coboundary of a 2-cochain with labels in
/// range; used above dimension 4 where in-range cocycles are rare.
fn random_p3_wide(rng: &mut ChaCha8Rng, m: usize) -> StageSimplex {
    let z = CoeffGroup::integers();
    StageSimplex { m, comps: vec![em_labels(rng, m, 2, &z).coboundary(&z)] }
}

/// A random simplex of P₄ over a random simplex of P₃.
fn random_p4(sys: &PostnikovSystem, rng: &mut ChaCha8Rng, m: usize) -> StageSimplex {
    let z2 = CoeffGroup::cyclic(2);
    let mut s = sys.extend(&random_p3(rng, m)).unwrap();
    let e = em_labels(rng, m, 3, &z2).coboundary(&z2);
    s.comps[1] = s.comps[1].add(&z2, &e).unwrap();
    s
}

fn random_stage(sys: &PostnikovSystem, rng: &mut ChaCha8Rng, stage: usize, m: usize) -> StageSimplex {
    if stage == 3 {
        random_p3(rng, m)
    } else {
        random_p4(sys, rng, m)
    }
}

fn key_identity(sys: &PostnikovSystem, s: &StageSimplex, t: &StageSimplex) -> Result<(), String> {
    let pi = sys.pi(4);
    let lhs = sys.k_eval(3, &sys.add(s, t).map_err(err)?).map_err(err)?;
    let ks = sys.k_eval(3, s).map_err(err)?;
    let kt = sys.k_eval(3, t).map_err(err)?;
    let da = sys.big_a(3, s, t).map_err(err)?.coboundary(pi);
    let rhs = ks.add(pi, &kt).unwrap().add(pi, &da).unwrap();
    ensure(lhs == rhs, || format!("key identity fails on a {}-simplex", s.m))
}

fn h_group() -> Check {
    let sys = PostnikovSystem::new(sphere3_data()).map_err(err)?;
    let z2 = CoeffGroup::cyclic(2);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut tallies = [0usize; 6];
    for case in 0..HGROUP_CASES {
        let m = case % (MAX_STAGE_DIM + 1);
        for stage in [3, 4] {
            let s = random_stage(&sys, &mut rng, stage, m);
            let t = random_stage(&sys, &mut rng, stage, m);
            let zero = sys.zero(stage, m);
            let sum = sys.add(&s, &t).map_err(err)?;
            let neg = sys.neg(&s).map_err(err)?;
            // Strict unit and inverse.
            ensure(sys.add(&s, &zero).map_err(err)? == s && sys.add(&zero, &s).map_err(err)? == s, || format!("unit fails, m = {m}"))?;
            ensure(sys.add(&s, &neg).map_err(err)?.is_zero(), || format!("inverse fails, m = {m}"))?;
            tallies[0] += 1;
            // Closure.
            ensure(sys.is_member(&s) && sys.is_member(&sum) && sys.is_member(&neg), || format!("closure fails, m = {m}"))?;
            tallies[1] += 1;
            if stage == 4 {
                // (a): adding a simplex of the fibre only adds top components.
                let c = em_labels(&mut rng, m, 3, &z2).coboundary(&z2);
                let fibre = sys.lambda(4, &c).map_err(err)?;
                let mut expect = s.clone();
                expect.comps[1] = expect.comps[1].add(&z2, &c).unwrap();
                ensure(sys.add(&s, &fibre).map_err(err)? == expect, || format!("(a) fails, m = {m}"))?;
                let c2 = em_labels(&mut rng, m, 3, &z2).coboundary(&z2);
                let both = sys.add(&fibre, &sys.lambda(4, &c2).map_err(err)?).map_err(err)?;
                ensure(both == sys.lambda(4, &c.add(&z2, &c2).unwrap()).map_err(err)?, || format!("(a) fails on the fibre, m = {m}"))?;
                tallies[2] += 1;
                // (b): negation on the fibre.
                ensure(sys.neg(&fibre).map_err(err)? == sys.lambda(4, &c.neg(&z2)).map_err(err)?, || format!("(b) fails, m = {m}"))?;
                tallies[3] += 1;
                // (c): projection is a strict homomorphism.
                ensure(sys.project(&sum).map_err(err)? == sys.add(&s.prefix(), &t.prefix()).map_err(err)?, || format!("(c) fails for sums, m = {m}"))?;
                ensure(sys.project(&neg).map_err(err)? == sys.neg(&s.prefix()).map_err(err)?, || format!("(c) fails for negatives, m = {m}"))?;
                tallies[4] += 1;
            } else {
                key_identity(&sys, &s, &t)?;
                tallies[5] += 1;
            }
        }
    }
    // On simplices of dimension at most 4 the identity has no faces to
    // compare, so it is also run where k₃ is nonzero.
    let mut nontrivial = 0;
    for case in 0..KEY_HIGH_CASES {
        let m = 5 + case % 2;
        let s = random_p3_wide(&mut rng, m);
        let t = random_p3_wide(&mut rng, m);
        key_identity(&sys, &s, &t)?;
        nontrivial += usize::from(!sys.big_a(3, &s, &t).map_err(err)?.is_zero());
    }
    ensure(nontrivial > 0, || "no case with a nonzero correction".into())?;
    Ok(format!(
        "unit/inverse {}, closure {}, (a) {}, (b) {}, (c) {}, key identity {} + {} in dims 5-6 ({} with A != 0)",
        tallies[0], tallies[1], tallies[2], tallies[3], tallies[4], tallies[5], KEY_HIGH_CASES, nontrivial
    ))
}

// ---------------------------------------------------------------- 6

fn chain_homotopy() -> Check {
    let x = samples::two_triangles();
    let mut count = 0;
    for n in 0..=CHAIN_DIM {
        for (a, b) in product_basis(&x, n) {
            let c: ProductChain<SimplexRef> = [((a.clone(), b.clone()), 1)].into_iter().collect();
            let lhs = chain_add(&c, &eml(&x, &aw(&x, &c)), -1);
            let h = shi(&x, &c).map_err(err)?;
            let hd = shi(&x, &product_boundary(&x, &c)).map_err(err)?;
            let rhs = chain_add(&hd, &product_boundary(&x, &h), 1);
            ensure(lhs == rhs, || format!("fails on ({a:?}, {b:?})"))?;
            count += 1;
        }
    }
    Ok(format!("{count} basis chains of (two triangles)^2 through dim {CHAIN_DIM}"))
}

// ---------------------------------------------------------------- 7

fn random_map(maps: &Arc<MapSpace>, rng: &mut ChaCha8Rng, stage: usize) -> MapRep {
    let x = maps.space().clone();
    let d = maps.sys.d();
    let mut m: Option<MapRep> = None;
    for j in d..=stage {
        let coeff = maps.sys.pi(j).clone();
        let h = maps.solver().cohomology(j, &coeff).unwrap();
        let mut z = Cochain::zero(j, coeff.clone());
        for g in &h.generators {
            z = z.add(&g.scale(&BigInt::from(rng.gen_range(-LABEL_BOUND..=LABEL_BOUND)))).unwrap();
        }
        let mut u = Cochain::zero(j - 1, coeff.clone());
        for k in 0..x.count(j - 1) {
            u.set(k, coeff.reduced(vec![BigInt::from(rng.gen_range(-LABEL_BOUND..=LABEL_BOUND))]));
        }
        z = z.add(&u.coboundary(&x)).unwrap();
        m = Some(match m {
            None => MapRep { d, comps: vec![z] },
            Some(prev) => {
                let mut lifted = maps.xi_lift(&prev).unwrap();
                let last = lifted.comps.pop().unwrap().add(&z).unwrap();
                lifted.comps.push(last);
                lifted
            }
        });
    }
    m.unwrap()
}

/// Subtracts the class of `m` so the result is nullhomotopic but generally
/// not the zero representative.
fn make_null(t: &Tower, m: &MapRep) -> Result<MapRep, String> {
    let group = t.group(m.stage()).map_err(err)?;
    let rep = group.element(&group.express(m).map_err(err)?).map_err(err)?;
    let out = t.maps().add(m, &t.maps().neg(&rep).map_err(err)?).map_err(err)?;
    ensure(group.is_zero(&out).map_err(err)?, || "constructed map is not nullhomotopic".into())?;
    Ok(out)
}

/// Independent certificate check: restriction to X by simplex index and the
/// lifting condition δb^i = k_*(b̄) on every stage of CX.
fn check_certificate(t: &Tower, m: &MapRep, b: &MapRep) -> Result<(), String> {
    let x = t.space();
    let cone = t.cone_maps();
    let cx = cone.space();
    ensure(b.stage() == m.stage(), || "certificate has the wrong stage".into())?;
    for (bc, mc) in b.comps.iter().zip(&m.comps) {
        for j in 0..x.count(bc.dim) {
            ensure(bc.get(j) == mc.get(j), || format!("certificate differs from the map on a {}-simplex", bc.dim))?;
        }
    }
    ensure(b.comps[0].is_cocycle(cx), || "bottom component is not a cocycle".into())?;
    for i in 1..b.comps.len() {
        let below = b.truncate(m.d + i - 1);
        let k = cone.k_star(&below).map_err(err)?;
        ensure(b.comps[i].coboundary(cx) == k, || format!("lifting condition fails at stage {}", m.d + i))?;
    }
    Ok(())
}

fn certify(t: &Tower, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let m = make_null(t, &random_map(t.maps(), rng, 4))?;
    let b = t.nullhomotopy(&m).map_err(err)?;
    t.verify_nullhomotopy(&m, &b).map_err(err)?;
    check_certificate(t, &m, &b.map)?;
    Ok(!m.is_zero())
}

fn nullhomotopies() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let named = [samples::boundary_delta4(), samples::minimal_sphere(4)];
    let towers: Vec<Tower> = named.iter().map(|x| Tower::new(x, &sphere3_data(), 4)).collect::<Result<_, _>>().map_err(err)?;
    let mut nonzero = [0usize; 2];
    for case in 0..NULL_CASES {
        let k = case % towers.len();
        nonzero[k] += usize::from(certify(&towers[k], &mut rng)?);
    }
    // Every nullhomotopic stage-4 map on the minimal S4 is the zero
    // representative, so larger spaces are checked as well.
    let extra = [FinSimplicialSet::simplex_boundary(4).map_err(err)?, samples::projective_space(4)];
    let mut extra_nonzero = 0;
    for x in &extra {
        let t = Tower::new(x, &sphere3_data(), 4).map_err(err)?;
        for _ in 0..EXTRA_NULL_CASES {
            extra_nonzero += usize::from(certify(&t, &mut rng)?);
        }
    }
    ensure(nonzero[0] > 0 && extra_nonzero > 0, || "no nonzero inputs".into())?;
    Ok(format!(
        "{NULL_CASES} certificates over dDelta4 ({} nonzero) and S4 ({} nonzero), plus {} over dDelta5 and RP4 ({extra_nonzero} nonzero)",
        nonzero[0],
        nonzero[1],
        2 * EXTRA_NULL_CASES
    ))
}

// ---------------------------------------------------------------- 8

fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Product of the first k invariant factors as the gcd of the k×k minors.
fn determinantal_divisors(u: &IntMatrix) -> Vec<BigInt> {
    let r = u.rows().min(u.cols());
    (1..=r)
        .map(|k| {
            let mut g = BigInt::zero();
            for rows in subsets(u.rows(), k) {
                for cols in subsets(u.cols(), k) {
                    let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| u.get(i, j).clone()).collect()).collect();
                    g = g.gcd(&IntMatrix::from_rows(k, &sub).unwrap().determinant().unwrap());
                }
            }
            g
        })
        .collect()
}

fn snf_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mats: Vec<IntMatrix> = (0..SNF_CASES)
        .map(|_| {
            let (r, c) = (rng.gen_range(1..=SNF_MAX_DIM), rng.gen_range(1..=SNF_MAX_DIM));
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-SNF_ENTRY_BOUND..=SNF_ENTRY_BOUND)).collect()).collect();
            IntMatrix::from_rows(c, &rows).unwrap()
        })
        .collect();
    let start = Instant::now();
    let mut diagonals = Vec::with_capacity(SNF_CASES);
    for (n, u) in mats.iter().enumerate() {
        let snf = smith_normal_form(u);
        ensure(snf.s.mul(u).map_err(err)?.mul(&snf.t).map_err(err)? == snf.d, || format!("D != SUT for matrix {n}"))?;
        ensure(is_unit(&snf.s.determinant().map_err(err)?) && is_unit(&snf.t.determinant().map_err(err)?), || format!("not unimodular for matrix {n}"))?;
        for r in 0..u.rows() {
            for c in 0..u.cols() {
                ensure(r == c || snf.d.get(r, c).is_zero(), || format!("D not diagonal for matrix {n}"))?;
            }
        }
        let diag = snf.diagonal();
        ensure(diag.iter().all(|x| !x.is_negative()), || format!("negative factor for matrix {n}"))?;
        for w in diag.windows(2) {
            ensure(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()), || format!("divisibility fails for matrix {n}"))?;
        }
        diagonals.push(diag);
    }
    let time = within(start, SNF_LIMIT)?;
    for (u, diag) in mats.iter().zip(&diagonals).take(MINOR_ORACLE_CASES) {
        let mut acc = BigInt::one();
        for (k, dk) in determinantal_divisors(u).iter().enumerate() {
            acc *= &diag[k];
            ensure(&acc == dk, || format!("invariant factors {diag:?} disagree with minors"))?;
        }
    }
    Ok(format!("{SNF_CASES} matrices in {time:.2?}, {MINOR_ORACLE_CASES} cross-checked against minors"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 Hopf degree", hopf_degree),
        ("2 stable stem", stable_stem),
        ("3 Eilenberg-MacLane targets", em_targets),
        ("4 wedge additivity", wedge),
        ("5 H-group properties", h_group),
        ("6 chain homotopy", chain_homotopy),
        ("7 nullhomotopy certificates", nullhomotopies),
        ("8 Smith normal form", snf_suite),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match std::panic::catch_unwind(run) {
            Ok(Ok(msg)) => println!("PASS {name}: {msg}"),
            Ok(Err(msg)) => {
                failed += 1;
                println!("FAIL {name}: {msg}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL {name}: panicked");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
