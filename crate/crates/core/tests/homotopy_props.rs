use std::sync::Arc;

use homcls::abelian::{reduce_coords, GroupStructure};
use homcls::error::Result;
use homcls::homotopy::{MapRep, MapSpace, Tower};
use homcls::postnikov::{sphere3_data, KInvariant, StageSimplex};
use homcls::samples;
use homcls::simplicial::{Cochain, CoeffElem, FinSimplicialSet, SimplexRef, SimplicialMap};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cochain(rng: &mut ChaCha8Rng, x: &FinSimplicialSet, n: usize, proto: &Cochain) -> Cochain {
    let mut c = Cochain::zero(n, proto.coeff.clone());
    for j in 0..x.count(n) {
        c.set(j, proto.coeff.reduced(vec![BigInt::from(rng.gen_range(-3i64..=3))]));
    }
    c
}

/// A random valid map X → P_stage: random cohomology classes plus random
/// coboundaries at each stage, lifted with the deterministic solver.
fn random_map(maps: &Arc<MapSpace>, rng: &mut ChaCha8Rng, stage: usize) -> MapRep {
    let x = maps.space().clone();
    let d = 3;
    let mut m: Option<MapRep> = None;
    for j in d..=stage {
        let coeff = maps.sys.pi(j).clone();
        let h = maps.solver().cohomology(j, &coeff).unwrap();
        let mut z = Cochain::zero(j, coeff.clone());
        for g in &h.generators {
            let k = BigInt::from(rng.gen_range(-3i64..=3));
            z = z.add(&g.scale(&k)).unwrap();
        }
        let u = random_cochain(rng, &x, j - 1, &z);
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
    let m = m.unwrap();
    maps.check(&m).unwrap();
    m
}

fn reduced(t: &Tower, mut v: Vec<BigInt>) -> Vec<BigInt> {
    reduce_coords(&mut v, &t.top().orders);
    v
}

/// Replaces `m` by a nullhomotopic map with the same projection, by
/// subtracting its class from the last component.
fn make_null(t: &Tower, m: MapRep) -> MapRep {
    let maps = t.maps();
    let group = t.group(m.stage()).unwrap();
    let coords = group.express(&m).unwrap();
    let rep = group.element(&coords).unwrap();
    let out = maps.add(&m, &maps.neg(&rep).unwrap()).unwrap();
    assert!(group.is_zero(&out).unwrap());
    out
}

#[test]
fn group_law_on_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for x in [samples::boundary_delta4(), FinSimplicialSet::simplex_boundary(4).unwrap(), samples::projective_space(4)] {
        let t = Tower::new(&x, &sphere3_data(), 4).unwrap();
        let maps = t.maps();
        for _ in 0..8 {
            let a = random_map(maps, &mut rng, 4);
            let b = random_map(maps, &mut rng, 4);
            let ea = t.express(&a).unwrap();
            let eb = t.express(&b).unwrap();
            let sum = maps.add(&a, &b).unwrap();
            maps.check(&sum).unwrap();
            let es = t.express(&sum).unwrap();
            let expect: Vec<BigInt> = ea.iter().zip(&eb).map(|(p, q)| p + q).collect();
            assert_eq!(es, reduced(&t, expect));
            let n = maps.neg(&a).unwrap();
            let en = t.express(&n).unwrap();
            assert_eq!(en, reduced(&t, ea.iter().map(|p| -p).collect()));
            assert!(maps.add(&a, &n).unwrap().is_zero());
        }
    }
}

#[test]
fn nullhomotopies_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for x in [FinSimplicialSet::simplex_boundary(4).unwrap(), samples::projective_space(4), samples::boundary_delta4()] {
        let t = Tower::new(&x, &sphere3_data(), 4).unwrap();
        for _ in 0..10 {
            let m = make_null(&t, random_map(t.maps(), &mut rng, 4));
            let b = t.nullhomotopy(&m).unwrap();
            t.verify_nullhomotopy(&m, &b).unwrap();
            let m3 = m.project().unwrap();
            let b3 = t.nullhomotopy(&m3).unwrap();
            t.verify_nullhomotopy(&m3, &b3).unwrap();
        }
    }
}

#[test]
fn nullhomotopy_rejects_essential_maps() {
    let x = samples::minimal_sphere(3);
    let t = Tower::new(&x, &sphere3_data(), 4).unwrap();
    let id = t.compose_with_phi(&SimplicialMap::identity(&x)).unwrap();
    assert!(t.nullhomotopy(&id).is_err());
}

#[test]
fn lifts_project_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let x = FinSimplicialSet::simplex_boundary(4).unwrap();
    let t = Tower::new(&x, &sphere3_data(), 4).unwrap();
    for _ in 0..10 {
        let c = random_map(t.maps(), &mut rng, 3);
        let l = t.maps().xi_lift(&c).unwrap();
        t.maps().check(&l).unwrap();
        assert_eq!(l.project().unwrap(), c);
    }
    let z = t.maps().zero(3);
    assert_eq!(t.maps().xi_lift(&z).unwrap(), t.maps().zero(4));
}

#[test]
fn sequence_is_exact_at_generators() {
    for x in [samples::projective_space(4), samples::wedge_of_spheres(&[4, 3]), samples::boundary_delta4()] {
        let t = Tower::new(&x, &sphere3_data(), 4).unwrap();
        let maps = t.maps();
        let g3 = t.group(3).unwrap();
        let h4 = maps.solver().cohomology(4, maps.sys.pi(4)).unwrap();
        // λ followed by p is zero.
        for g in &h4.generators {
            let l = maps.lambda(g).unwrap();
            assert!(l.project().unwrap().is_zero());
        }
        // Projections of generators of [X, P_4] are unobstructed.
        for g in &t.top().generators {
            let p = g.project().unwrap();
            let k = maps.k_star(&p).unwrap();
            assert!(maps.solver().preimage(&k).unwrap().is_some());
            g3.express(&p).unwrap();
        }
    }
}

#[test]
fn suspension_map_is_additive_up_to_coboundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let x = samples::projective_space(4);
    let s = homcls::simplicial::Suspension::new(&x).unwrap();
    let sys = homcls::postnikov::PostnikovSystem::new(sphere3_data()).unwrap();
    let sx = Arc::new(MapSpace::new(sys, s.space.clone()));
    let mu = |f: &MapRep| s.shift(&sx.k_star(f).unwrap()).unwrap();
    let gens = sx.generators(3).unwrap();
    assert!(!gens.is_empty());
    for _ in 0..5 {
        let a = random_map(&sx, &mut rng, 3);
        let b = random_map(&sx, &mut rng, 3);
        let diff = mu(&sx.add(&a, &b).unwrap()).sub(&mu(&a)).unwrap().sub(&mu(&b)).unwrap();
        let xs = MapSpace::new(sx.sys.clone(), x.clone());
        assert!(xs.solver().preimage(&diff).unwrap().is_some());
    }
}

fn inclusion(wedge: &FinSimplicialSet, sphere: &FinSimplicialSet, name: &str) -> SimplicialMap {
    let mut images: Vec<Vec<SimplexRef>> = sphere.counts().iter().enumerate().map(|(n, &c)| vec![wedge.base_simplex(n); c]).collect();
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

#[test]
fn wedge_restricts_to_summands() {
    let w = samples::wedge_of_spheres(&[4, 3]);
    let s3 = samples::minimal_sphere(3);
    let s4 = samples::minimal_sphere(4);
    let tw = Tower::new(&w, &sphere3_data(), 4).unwrap();
    let t3 = Tower::new(&s3, &sphere3_data(), 4).unwrap();
    let t4 = Tower::new(&s4, &sphere3_data(), 4).unwrap();
    let i3 = inclusion(&w, &s3, "s3_1");
    let i4 = inclusion(&w, &s4, "s4_0");
    let restrict = |m: &MapRep| -> (Vec<BigInt>, Vec<BigInt>) {
        (t3.express(&pull_back(m, &i3, &s3)).unwrap(), t4.express(&pull_back(m, &i4, &s4)).unwrap())
    };
    assert_eq!(tw.top().orders, vec![BigInt::from(2), BigInt::zero()]);
    let base = &tw.top().base;
    let mut hits = std::collections::HashSet::new();
    for a in 0..2i64 {
        for b in -3..=3i64 {
            let m = base.combination(&[BigInt::from(a), BigInt::from(b)], &tw.top().generators).unwrap();
            let (r3, r4) = restrict(&m);
            let trivial = r3.iter().all(Zero::is_zero) && r4.iter().all(Zero::is_zero);
            assert_eq!(trivial, a == 0 && b == 0);
            hits.insert((r3, r4));
        }
    }
    assert!(hits.contains(&(vec![BigInt::from(1)], vec![BigInt::zero()])) || hits.contains(&(vec![BigInt::from(-1)], vec![BigInt::zero()])));
    assert!(hits.iter().any(|(r3, r4)| r3[0].is_zero() && r4[0] == BigInt::from(1)));
}

fn collapse(x: &FinSimplicialSet, y: &FinSimplicialSet, facet: &str) -> SimplicialMap {
    let mut images: Vec<Vec<SimplexRef>> = x.counts().iter().enumerate().map(|(n, &c)| vec![y.base_simplex(n); c]).collect();
    let (dim, idx) = x.lookup(facet).unwrap();
    images[dim][idx] = SimplexRef::nondegenerate(dim, 0);
    SimplicialMap::new(x, y, images).unwrap()
}

#[test]
fn collapse_degrees_follow_orientation() {
    let x = samples::boundary_delta4();
    let y = samples::minimal_sphere(3);
    let t = Tower::new(&x, &sphere3_data(), 3).unwrap();
    let facets = ["1,2,3,4", "0,2,3,4", "0,1,3,4", "0,1,2,4", "0,1,2,3"];
    let c0 = t.class_of(&collapse(&x, &y, facets[0])).unwrap();
    assert!(c0[0] == BigInt::from(1) || c0[0] == BigInt::from(-1));
    for (j, f) in facets.iter().enumerate() {
        let c = t.class_of(&collapse(&x, &y, f)).unwrap();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        assert_eq!(c[0], &c0[0] * sign);
    }
}

#[test]
fn class_is_stable_under_nullhomotopic_perturbation() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let x = samples::boundary_delta4();
    let y = samples::minimal_sphere(3);
    let t = Tower::new(&x, &sphere3_data(), 3).unwrap();
    let f = collapse(&x, &y, "0,1,2,3");
    let m = t.compose_with_phi(&f).unwrap();
    let base = t.class_of(&f).unwrap();
    for _ in 0..5 {
        let n = make_null(&t, random_map(t.maps(), &mut rng, 3));
        let p = t.maps().add(&m, &n).unwrap();
        assert_eq!(t.express(&p).unwrap(), base);
    }
    assert!(!t.homotopic(&f, &SimplicialMap::constant(&x, &y)).unwrap());
    assert!(t.homotopic(&f, &f).unwrap());
}

struct ZeroK;

impl KInvariant for ZeroK {
    fn top_value(&self, _: &StageSimplex) -> Result<CoeffElem> {
        Ok(vec![BigInt::zero()])
    }
}

#[test]
fn trivial_k_invariant_changes_the_answer() {
    let mut data = sphere3_data();
    data.k = vec![Arc::new(ZeroK)];
    data.name = "product".into();
    let x = samples::projective_space(4);
    let t = Tower::new(&x, &data, 4).unwrap();
    assert_eq!(t.top().structure(), GroupStructure::new(0, &[2]));
}
