//! Finite simplicial sets, cochains and cohomology.

mod coeff;
mod cochain;
mod cohomology;
mod cone;
mod map;

pub use coeff::{CoeffElem, CoeffGroup};
pub use cochain::Cochain;
pub use cohomology::{cohomologous, cohomology_group, CochainSolver};
pub use cone::{Cone, Suspension};
pub use map::SimplicialMap;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monotone surjection `[m] → [k]`, stored as its list of values.
pub type Surjection = Vec<u8>;

pub fn identity_surjection(k: usize) -> Surjection {
    (0..=k as u8).collect()
}

pub fn is_identity(s: &[u8]) -> bool {
    s.iter().enumerate().all(|(i, &v)| v as usize == i)
}

/// Target dimension of a monotone surjection.
pub fn surjection_target(s: &[u8]) -> usize {
    s.last().map_or(0, |&v| v as usize)
}

/// Positions `j` with `s(j) = s(j+1)`, in decreasing order. These are the
/// indices of the degeneracy word in normal form.
pub fn degeneracy_word(s: &[u8]) -> Vec<usize> {
    let mut w: Vec<usize> = (0..s.len().saturating_sub(1)).filter(|&j| s[j] == s[j + 1]).collect();
    w.reverse();
    w
}

/// Monotone surjection of the degeneracy operator `s_{γ1} … s_{γr}` applied
/// to a `k`-simplex, for a strictly decreasing word.
pub fn surjection_from_word(word: &[usize], k: usize) -> Result<Surjection> {
    if word.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidInput(format!("degeneracy word {word:?} is not strictly decreasing")));
    }
    let mut s = identity_surjection(k);
    for &g in word.iter().rev() {
        if g >= s.len() {
            return Err(Error::InvalidInput(format!("degeneracy index {g} out of range")));
        }
        s.insert(g, s[g]);
    }
    Ok(s)
}

/// Surjection after applying the face operator ∂_i. Returns the new
/// surjection and, if the value `s(i)` disappeared, the index of the face to
/// apply to the base first.
pub fn surjection_face(s: &[u8], i: usize) -> (Surjection, Option<usize>) {
    let v = s[i];
    let mut t: Surjection = s.to_vec();
    t.remove(i);
    if t.contains(&v) {
        (t, None)
    } else {
        for x in t.iter_mut() {
            if *x > v {
                *x -= 1;
            }
        }
        (t, Some(v as usize))
    }
}

/// Surjection after applying the degeneracy operator s_i.
pub fn surjection_degeneracy(s: &[u8], i: usize) -> Surjection {
    let mut t = s.to_vec();
    t.insert(i, s[i]);
    t
}

/// Composite `outer ∘ inner` of monotone surjections.
pub fn compose(outer: &[u8], inner: &[u8]) -> Surjection {
    inner.iter().map(|&x| outer[x as usize]).collect()
}

/// A simplex in Eilenberg–Zilber normal form: a degeneracy of a
/// nondegenerate simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub base_dim: usize,
    pub base: usize,
    pub surj: Surjection,
}

impl SimplexRef {
    pub fn nondegenerate(dim: usize, index: usize) -> Self {
        SimplexRef { base_dim: dim, base: index, surj: identity_surjection(dim) }
    }

    pub fn dim(&self) -> usize {
        self.surj.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.surj.len() - 1 != self.base_dim
    }

    pub fn word(&self) -> Vec<usize> {
        degeneracy_word(&self.surj)
    }

    /// Applies the degeneracy operator s_i.
    pub fn degeneracy(&self, i: usize) -> SimplexRef {
        SimplexRef { base_dim: self.base_dim, base: self.base, surj: surjection_degeneracy(&self.surj, i) }
    }

    /// Pulls the simplex back along a further monotone surjection.
    pub fn degenerate_by(&self, s: &[u8]) -> SimplexRef {
        SimplexRef { base_dim: self.base_dim, base: self.base, surj: compose(&self.surj, s) }
    }
}

/// A simplicial set with finitely many nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSimplicialSet {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    basepoint: usize,
    lookup: HashMap<String, (usize, usize)>,
}

impl fmt::Display for FinSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.names.iter().map(|v| v.len().to_string()).collect();
        write!(f, "simplicial set with simplex counts [{}]", counts.join(", "))
    }
}

/// Builder for [`FinSimplicialSet`]; simplices must be added dimension by
/// dimension.
#[derive(Default)]
pub struct SimplicialSetBuilder {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    lookup: HashMap<String, (usize, usize)>,
}

impl SimplicialSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a nondegenerate simplex and returns its index within its
    /// dimension.
    pub fn add(&mut self, name: impl Into<String>, dim: usize, faces: Vec<SimplexRef>) -> Result<usize> {
        let name = name.into();
        if self.lookup.contains_key(&name) {
            return Err(Error::InvalidInput(format!("duplicate simplex name {name:?}")));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::InvalidInput(format!(
                "simplex {name:?} of dimension {dim} has {} faces",
                faces.len()
            )));
        }
        for f in &faces {
            if f.dim() + 1 != dim {
                return Err(Error::InvalidInput(format!("face of {name:?} has wrong dimension")));
            }
            if f.base_dim >= self.names.len() || f.base >= self.names[f.base_dim].len() {
                return Err(Error::InvalidInput(format!("face of {name:?} refers to an unknown simplex")));
            }
            if surjection_target(&f.surj) != f.base_dim || f.surj.windows(2).any(|w| w[1] < w[0] || w[1] > w[0] + 1) || f.surj[0] != 0 {
                return Err(Error::InvalidInput(format!("face of {name:?} is not in normal form")));
            }
        }
        while self.names.len() <= dim {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
        let idx = self.names[dim].len();
        self.names[dim].push(name.clone());
        self.faces[dim].push(faces);
        self.lookup.insert(name, (dim, idx));
        Ok(idx)
    }

    pub fn lookup(&self, name: &str) -> Option<(usize, usize)> {
        self.lookup.get(name).copied()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn build(mut self, basepoint: usize) -> Result<FinSimplicialSet> {
        while self.names.last().is_some_and(Vec::is_empty) {
            self.names.pop();
            self.faces.pop();
        }
        if self.names.is_empty() || basepoint >= self.names[0].len() {
            return Err(Error::InvalidInput("basepoint is not a vertex".into()));
        }
        let x = FinSimplicialSet { names: self.names, faces: self.faces, basepoint, lookup: self.lookup };
        x.check_identities()?;
        Ok(x)
    }
}

impl FinSimplicialSet {
    /// Simplicial set of an abstract simplicial complex: simplices are the
    /// vertex sets, ordered by the position of vertices in `vertex_order`.
    pub fn from_complex(vertex_order: &[String], facets: &[Vec<String>]) -> Result<Self> {
        let pos: HashMap<&str, usize> = vertex_order.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if pos.len() != vertex_order.len() {
            return Err(Error::InvalidInput("duplicate vertex in vertex order".into()));
        }
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<usize>>> = Vec::new();
        for (i, _) in vertex_order.iter().enumerate() {
            if by_dim.is_empty() {
                by_dim.push(Default::default());
            }
            by_dim[0].insert(vec![i]);
        }
        for f in facets {
            let mut s = Vec::with_capacity(f.len());
            for v in f {
                match pos.get(v.as_str()) {
                    Some(&p) => s.push(p),
                    None => return Err(Error::InvalidInput(format!("unknown vertex {v:?} in facet"))),
                }
            }
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::InvalidInput("empty facet".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("facet {f:?} repeats a vertex")));
            }
            if s.len() > 30 {
                return Err(Error::Unsupported("facets of dimension above 29".into()));
            }
            let n = s.len();
            for mask in 1u32..(1u32 << n) {
                let sub: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                let d = sub.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(Default::default());
                }
                by_dim[d].insert(sub);
            }
        }
        if by_dim.is_empty() {
            return Err(Error::InvalidInput("empty complex".into()));
        }
        let name = |s: &[usize]| s.iter().map(|&i| vertex_order[i].as_str()).collect::<Vec<_>>().join(",");
        let mut b = SimplicialSetBuilder::new();
        for (d, layer) in by_dim.iter().enumerate() {
            for s in layer {
                let mut faces = Vec::new();
                if d > 0 {
                    for i in 0..=d {
                        let mut t = s.clone();
                        t.remove(i);
                        let (fd, fi) = b.lookup(&name(&t)).expect("downward closed");
                        faces.push(SimplexRef::nondegenerate(fd, fi));
                    }
                }
                b.add(name(s), d, faces)?;
            }
        }
        b.build(0)
    }

    /// Convenience form of [`FinSimplicialSet::from_complex`] with integer
    /// vertices in their natural order.
    pub fn from_facets(facets: &[Vec<usize>]) -> Result<Self> {
        let mut verts: Vec<usize> = facets.iter().flatten().copied().collect();
        verts.sort_unstable();
        verts.dedup();
        let order: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
        let fs: Vec<Vec<String>> = facets.iter().map(|f| f.iter().map(|v| v.to_string()).collect()).collect();
        Self::from_complex(&order, &fs)
    }

    /// One vertex and one nondegenerate `n`-simplex whose faces are all
    /// degenerate.
    pub fn minimal_sphere(n: usize) -> Result<Self> {
        let mut b = SimplicialSetBuilder::new();
        b.add("*", 0, vec![])?;
        if n > 0 {
            let face = SimplexRef { base_dim: 0, base: 0, surj: vec![0; n] };
            b.add(format!("s{n}"), n, vec![face; n + 1])?;
        }
        b.build(0)
    }

    /// The standard simplex Δ^n.
    pub fn standard_simplex(n: usize) -> Result<Self> {
        Self::from_facets(&[(0..=n).collect()])
    }

    /// Boundary of the standard simplex Δ^{n+1}, a model of S^n.
    pub fn simplex_boundary(n: usize) -> Result<Self> {
        let facets: Vec<Vec<usize>> = (0..=n + 1).map(|skip| (0..=n + 1).filter(|&v| v != skip).collect()).collect();
        Self::from_facets(&facets)
    }

    pub fn dim(&self) -> usize {
        self.names.len() - 1
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn total_count(&self) -> usize {
        self.names.iter().map(Vec::len).sum()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn name(&self, dim: usize, idx: usize) -> &str {
        &self.names[dim][idx]
    }

    pub fn names(&self, dim: usize) -> &[String] {
        self.names.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn lookup(&self, name: &str) -> Option<(usize, usize)> {
        self.lookup.get(name).copied()
    }

    /// Stored face ∂_i of a nondegenerate simplex.
    pub fn nd_face(&self, dim: usize, idx: usize, i: usize) -> &SimplexRef {
        &self.faces[dim][idx][i]
    }

    pub fn nd_faces(&self, dim: usize, idx: usize) -> &[SimplexRef] {
        &self.faces[dim][idx]
    }

    /// Face ∂_i of an arbitrary simplex, in normal form.
    pub fn face(&self, s: &SimplexRef, i: usize) -> SimplexRef {
        let (t, hit) = surjection_face(&s.surj, i);
        match hit {
            None => SimplexRef { base_dim: s.base_dim, base: s.base, surj: t },
            Some(j) => self.nd_face(s.base_dim, s.base, j).degenerate_by(&t),
        }
    }

    /// Applies faces so that only the vertices at the given increasing
    /// positions remain.
    pub fn restrict(&self, s: &SimplexRef, keep: &[usize]) -> SimplexRef {
        let mut cur = s.clone();
        let m = s.dim();
        for i in (0..=m).rev() {
            if !keep.contains(&i) {
                cur = self.face(&cur, i);
            }
        }
        cur
    }

    /// Vertex `j` of a simplex.
    pub fn vertex(&self, s: &SimplexRef, j: usize) -> usize {
        self.restrict(s, &[j]).base
    }

    /// Checks ∂_i∂_j = ∂_{j−1}∂_i for i < j on every nondegenerate simplex.
    pub fn check_identities(&self) -> Result<()> {
        for (d, layer) in self.faces.iter().enumerate() {
            if d < 2 {
                continue;
            }
            for (idx, _) in layer.iter().enumerate() {
                let s = SimplexRef::nondegenerate(d, idx);
                for j in 1..=d {
                    for i in 0..j {
                        let a = self.face(&self.face(&s, j), i);
                        let b = self.face(&self.face(&s, i), j - 1);
                        if a != b {
                            return Err(Error::SimplicialIdentity(format!(
                                "simplex {:?}: d{}d{} differs from d{}d{}",
                                self.names[d][idx],
                                i,
                                j,
                                j - 1,
                                i
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Basepoint degenerated to dimension `m`.
    pub fn base_simplex(&self, m: usize) -> SimplexRef {
        SimplexRef { base_dim: 0, base: self.basepoint, surj: vec![0; m + 1] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_round_trip() {
        let s = surjection_from_word(&[3, 1], 2).unwrap();
        assert_eq!(s, vec![0, 1, 1, 2, 2]);
        assert_eq!(degeneracy_word(&s), vec![3, 1]);
        assert!(surjection_from_word(&[1, 3], 2).is_err());
    }

    #[test]
    fn complex_counts() {
        let b = FinSimplicialSet::simplex_boundary(3).unwrap();
        assert_eq!(b.counts(), vec![5, 10, 10, 5]);
        let p = FinSimplicialSet::from_facets(&[vec![7]]).unwrap();
        assert_eq!(p.counts(), vec![1]);
        let rp2 = crate::samples::rp2();
        assert_eq!(rp2.counts(), vec![6, 15, 10]);
    }

    #[test]
    fn minimal_sphere_faces() {
        let s = FinSimplicialSet::minimal_sphere(3).unwrap();
        assert_eq!(s.counts(), vec![1, 0, 0, 1]);
        let top = SimplexRef::nondegenerate(3, 0);
        let f = s.face(&s.face(&top, 1), 0);
        assert_eq!(f, s.base_simplex(1));
    }

    #[test]
    fn bad_identities_rejected() {
        let mut b = SimplicialSetBuilder::new();
        b.add("a", 0, vec![]).unwrap();
        b.add("b", 0, vec![]).unwrap();
        b.add("e", 1, vec![SimplexRef::nondegenerate(0, 1), SimplexRef::nondegenerate(0, 0)]).unwrap();
        let e = SimplexRef::nondegenerate(1, 0);
        let a = SimplexRef { base_dim: 0, base: 0, surj: vec![0, 0] };
        b.add("t", 2, vec![a.clone(), e.clone(), a]).unwrap();
        assert!(matches!(b.build(0), Err(Error::SimplicialIdentity(_))));
    }

    #[test]
    fn duplicate_vertex_rejected() {
        assert!(FinSimplicialSet::from_facets(&[vec![1, 1, 2]]).is_err());
    }
}
