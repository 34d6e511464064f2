//! Small spaces used in examples and tests.

use crate::simplicial::{FinSimplicialSet, SimplexRef, SimplicialSetBuilder};

/// Six-vertex triangulation of the real projective plane.
pub fn rp2() -> FinSimplicialSet {
    let facets = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 5],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 6],
        [3, 4, 6],
        [4, 5, 6],
    ];
    FinSimplicialSet::from_facets(&facets.map(|f| f.to_vec())).expect("valid complex")
}

/// Seven-vertex triangulation of the torus.
pub fn torus() -> FinSimplicialSet {
    let mut facets = Vec::new();
    for i in 0..7 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    FinSimplicialSet::from_facets(&facets).expect("valid complex")
}

/// Boundary of Δ⁴, a model of S³.
pub fn boundary_delta4() -> FinSimplicialSet {
    FinSimplicialSet::simplex_boundary(3).expect("valid complex")
}

pub fn minimal_sphere(n: usize) -> FinSimplicialSet {
    FinSimplicialSet::minimal_sphere(n).expect("valid simplicial set")
}

/// Wedge of minimal spheres of the given dimensions (all positive) at their
/// common vertex.
pub fn wedge_of_spheres(dims: &[usize]) -> FinSimplicialSet {
    let mut b = SimplicialSetBuilder::new();
    b.add("*", 0, vec![]).expect("fresh name");
    let mut sorted: Vec<(usize, usize)> = dims.iter().copied().enumerate().collect();
    sorted.sort_by_key(|&(i, d)| (d, i));
    for (i, d) in sorted {
        let face = SimplexRef { base_dim: 0, base: 0, surj: vec![0; d] };
        b.add(format!("s{d}_{i}"), d, vec![face; d + 1]).expect("fresh name");
    }
    b.build(0).expect("valid simplicial set")
}

/// Two triangles glued along an edge: facets [0,1,2] and [1,2,3].
pub fn two_triangles() -> FinSimplicialSet {
    FinSimplicialSet::from_facets(&[vec![0, 1, 2], vec![1, 2, 3]]).expect("valid complex")
}

/// Real projective n-space as the n-skeleton of the nerve of ℤ/2: one
/// nondegenerate simplex in each dimension.
pub fn projective_space(n: usize) -> FinSimplicialSet {
    let mut b = SimplicialSetBuilder::new();
    b.add("*", 0, vec![]).expect("fresh name");
    for k in 1..=n {
        let faces = (0..=k)
            .map(|i| {
                if i == 0 || i == k {
                    SimplexRef::nondegenerate(k - 1, 0)
                } else {
                    SimplexRef::nondegenerate(k - 2, 0).degeneracy(i - 1)
                }
            })
            .collect();
        b.add(format!("g{k}"), k, faces).expect("fresh name");
    }
    b.build(0).expect("valid simplicial set")
}
