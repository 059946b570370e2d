use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{Cyclotomic, CyclotomicField, Elem, Phase};

/// A monomial matrix: column `j` has the single entry `scal[j]` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    perm: Vec<usize>,
    scal: Vec<Phase>,
}

/// One nonzero entry of a sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub col: usize,
    pub row: usize,
    pub phase: Phase,
}

impl Monomial {
    pub fn new(perm: Vec<usize>, scal: Vec<Phase>) -> Result<Monomial> {
        let n = perm.len();
        if scal.len() != n {
            return Err(Error::Invalid("monomial matrix needs one scalar per column".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Invalid("monomial matrix rows must form a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(Monomial { perm, scal })
    }

    pub fn identity(n: usize) -> Monomial {
        Monomial {
            perm: (0..n).collect(),
            scal: vec![Phase::ONE; n],
        }
    }

    pub fn diagonal(scal: Vec<Phase>) -> Monomial {
        Monomial {
            perm: (0..scal.len()).collect(),
            scal,
        }
    }

    pub fn from_entries(n: usize, entries: &[Entry]) -> Result<Monomial> {
        if entries.len() != n {
            return Err(Error::Invalid(format!(
                "monomial matrix of size {n} needs {n} entries, got {}",
                entries.len()
            )));
        }
        let mut perm = vec![usize::MAX; n];
        let mut scal = vec![Phase::ONE; n];
        for e in entries {
            if e.col >= n || perm[e.col] != usize::MAX {
                return Err(Error::Invalid(format!("bad or repeated column {}", e.col)));
            }
            perm[e.col] = e.row;
            scal[e.col] = e.phase;
        }
        Monomial::new(perm, scal)
    }

    pub fn entries(&self) -> Vec<Entry> {
        (0..self.dim())
            .map(|j| Entry {
                col: j,
                row: self.perm[j],
                phase: self.scal[j],
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scalars(&self) -> &[Phase] {
        &self.scal
    }

    /// Image of the basis vector `e_j` as `(row, scalar)`.
    #[inline]
    pub fn image(&self, j: usize) -> (usize, Phase) {
        (self.perm[j], self.scal[j])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Monomial) -> Monomial {
        let (perm, scal) = (0..other.dim())
            .map(|j| {
                let (k, s) = other.image(j);
                (self.perm[k], self.scal[k] * s)
            })
            .unzip();
        Monomial { perm, scal }
    }

    /// Multiplies column `j` by `f(j)`.
    pub fn scale_columns(&self, f: impl Fn(usize) -> Phase) -> Monomial {
        Monomial {
            perm: self.perm.clone(),
            scal: self.scal.iter().enumerate().map(|(j, &s)| s * f(j)).collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j)
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.scal.iter().all(Phase::is_one)
    }

    /// Multiplicative order, finite since all scalars are roots of unity.
    pub fn order(&self) -> u64 {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut prod = Phase::ONE;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                prod = prod * self.scal[j];
                j = self.perm[j];
                len += 1;
            }
            ord = ord.lcm(&(len * prod.order()));
        }
        ord
    }

    pub fn pow(&self, k: u64) -> Monomial {
        let mut out = Monomial::identity(self.dim());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Least common multiple of the scalar orders.
    pub fn conductor(&self) -> u64 {
        self.scal.iter().fold(1, |a, s| a.lcm(&s.order()))
    }

    /// Applies the matrix to a coefficient vector over `field`.
    pub fn apply(&self, field: &CyclotomicField, v: &[Elem]) -> Vec<Elem> {
        let mut out = vec![field.zero(); v.len()];
        for (j, x) in v.iter().enumerate() {
            if !field.is_zero(x) {
                out[self.perm[j]] = field.mul_phase(x, self.scal[j]);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Cyclotomic>> {
        let n = self.dim();
        let mut m = vec![vec![Cyclotomic::zero(); n]; n];
        for j in 0..n {
            m[self.perm[j]][j] = Cyclotomic::from_phase(self.scal[j]);
        }
        m
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Monomial::from_entries(entries.len(), &entries).map_err(serde::de::Error::custom)
    }
}
