use super::{FinSimplicialSet, SimplexRef};
use crate::error::{Error, Result};

/// A simplicial map between finite simplicial sets, given by the images of
/// the nondegenerate simplices of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    /// `images[n][j]` is the image of the `j`-th nondegenerate `n`-simplex.
    pub images: Vec<Vec<SimplexRef>>,
}

impl SimplicialMap {
    /// Checks dimensions and compatibility with faces.
    pub fn new(x: &FinSimplicialSet, y: &FinSimplicialSet, images: Vec<Vec<SimplexRef>>) -> Result<Self> {
        let counts = x.counts();
        if images.len() != counts.len() || images.iter().zip(&counts).any(|(im, &c)| im.len() != c) {
            return Err(Error::InvalidInput("map must assign every nondegenerate simplex".into()));
        }
        for (n, layer) in images.iter().enumerate() {
            for (j, t) in layer.iter().enumerate() {
                if t.dim() != n || t.base_dim >= y.counts().len() || t.base >= y.count(t.base_dim) {
                    return Err(Error::InvalidInput(format!("image of {} is not an {n}-simplex of the target", x.name(n, j))));
                }
            }
        }
        let f = SimplicialMap { images };
        for n in 1..counts.len() {
            for j in 0..counts[n] {
                let t = &f.images[n][j];
                for i in 0..=n {
                    if f.apply(x.nd_face(n, j, i)) != y.face(t, i) {
                        return Err(Error::SimplicialIdentity(format!(
                            "map does not commute with face {i} of {}",
                            x.name(n, j)
                        )));
                    }
                }
            }
        }
        Ok(f)
    }

    /// The constant map to the basepoint of `y`.
    pub fn constant(x: &FinSimplicialSet, y: &FinSimplicialSet) -> Self {
        let images = x.counts().iter().enumerate().map(|(n, &c)| vec![y.base_simplex(n); c]).collect();
        SimplicialMap { images }
    }

    /// The identity of `x`.
    pub fn identity(x: &FinSimplicialSet) -> Self {
        let images = x
            .counts()
            .iter()
            .enumerate()
            .map(|(n, &c)| (0..c).map(|j| SimplexRef::nondegenerate(n, j)).collect())
            .collect();
        SimplicialMap { images }
    }

    /// Image of an arbitrary simplex of the domain.
    pub fn apply(&self, s: &SimplexRef) -> SimplexRef {
        self.images[s.base_dim][s.base].degenerate_by(&s.surj)
    }
}
