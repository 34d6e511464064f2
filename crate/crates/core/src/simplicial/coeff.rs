use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of a coefficient group: free coordinates first, then torsion
/// coordinates reduced into `[0, q)`.
pub type CoeffElem = Vec<BigInt>;

/// A finitely generated abelian group ℤ^r ⊕ ℤ/q₁ ⊕ … ⊕ ℤ/q_t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoeffGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CoeffGroup {
    pub fn new(free_rank: usize, torsion: &[i64]) -> Result<Self> {
        let torsion: Vec<BigInt> = torsion.iter().map(|&q| BigInt::from(q)).collect();
        Self::from_parts(free_rank, torsion)
    }

    pub fn from_parts(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if torsion.iter().any(|q| *q < BigInt::from(2)) {
            return Err(Error::InvalidInput("torsion orders must be at least 2".into()));
        }
        Ok(CoeffGroup { free_rank, torsion })
    }

    pub fn integers() -> Self {
        CoeffGroup { free_rank: 1, torsion: vec![] }
    }

    pub fn cyclic(q: i64) -> Self {
        if q == 0 {
            Self::integers()
        } else {
            CoeffGroup { free_rank: 0, torsion: vec![BigInt::from(q)] }
        }
    }

    pub fn len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Order of each coordinate, with 0 for ℤ.
    pub fn orders(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.free_rank];
        v.extend(self.torsion.iter().cloned());
        v
    }

    pub fn zero(&self) -> CoeffElem {
        vec![BigInt::zero(); self.len()]
    }

    /// The `i`-th coordinate generator.
    pub fn unit(&self, i: usize) -> CoeffElem {
        let mut v = self.zero();
        v[i] = BigInt::one();
        v
    }

    pub fn reduce(&self, v: &mut CoeffElem) {
        for (x, q) in v[self.free_rank..].iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(q);
        }
    }

    pub fn reduced(&self, mut v: CoeffElem) -> CoeffElem {
        self.reduce(&mut v);
        v
    }

    pub fn is_zero(&self, v: &CoeffElem) -> bool {
        v.iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &CoeffElem, b: &CoeffElem) -> CoeffElem {
        self.reduced(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn add_assign(&self, a: &mut CoeffElem, b: &CoeffElem) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        self.reduce(a);
    }

    pub fn neg(&self, a: &CoeffElem) -> CoeffElem {
        self.reduced(a.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &CoeffElem, b: &CoeffElem) -> CoeffElem {
        self.reduced(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, k: &BigInt, a: &CoeffElem) -> CoeffElem {
        self.reduced(a.iter().map(|x| x * k).collect())
    }

    pub fn scale_i64(&self, k: i64, a: &CoeffElem) -> CoeffElem {
        self.scale(&BigInt::from(k), a)
    }

    /// Validates and reduces an element given by coordinates.
    pub fn element(&self, v: Vec<BigInt>) -> Result<CoeffElem> {
        if v.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient of length {} for a group with {} coordinates",
                v.len(),
                self.len()
            )));
        }
        Ok(self.reduced(v))
    }
}

impl fmt::Display for CoeffGroup {
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
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl FromStr for CoeffGroup {
    type Err = Error;

    /// Grammar: summands `Z`, `Z^r`, `Z/q` joined by `+`; `0` is trivial.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(CoeffGroup { free_rank: 0, torsion: vec![] });
        }
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            if part == "Z" {
                free_rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                free_rank += r.parse::<usize>().map_err(|_| Error::Parse(format!("bad rank in {part:?}")))?;
            } else if let Some(q) = part.strip_prefix("Z/") {
                let q: BigInt = q.parse().map_err(|_| Error::Parse(format!("bad order in {part:?}")))?;
                if q < BigInt::from(2) {
                    return Err(Error::Parse(format!("order in {part:?} must be at least 2")));
                }
                torsion.push(q);
            } else {
                return Err(Error::Parse(format!("unrecognised coefficient summand {part:?}")));
            }
        }
        Ok(CoeffGroup { free_rank, torsion })
    }
}
