//! Normalized 3-cocycles on finite abelian groups: the representatives `ω_c`,
//! pullbacks, twists by coboundaries, and the 2-cocycles `Φ̃_g`.

mod associator;
mod cochain;
mod solve;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{FinAbGroup, GroupElement};
use crate::scalars::Phase;

pub use associator::{AssocTable, Associator};
pub use cochain::Cochain2;
pub use solve::solve_coboundary;

/// The representative `ω_c` attached to a parameter sequence `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocycle3 {
    group: FinAbGroup,
    c1: Vec<u64>,
    /// `c_st` for `s < t`, lexicographic.
    c2: Vec<u64>,
    /// `c_rst` for `r < s < t`, lexicographic.
    c3: Vec<u64>,
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    a.gcd(&b).gcd(&c)
}

/// Index pairs `(s, t)`, `s < t`, in lexicographic order.
pub fn pair_indices(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            out.push((s, t));
        }
    }
    out
}

/// Index triples `(r, s, t)`, `r < s < t`, in lexicographic order.
pub fn triple_indices(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for r in 0..n {
        for s in r + 1..n {
            for t in s + 1..n {
                out.push((r, s, t));
            }
        }
    }
    out
}

impl Cocycle3 {
    pub fn trivial(group: &FinAbGroup) -> Cocycle3 {
        let n = group.rank();
        Cocycle3 {
            group: group.clone(),
            c1: vec![0; n],
            c2: vec![0; pair_indices(n).len()],
            c3: vec![0; triple_indices(n).len()],
        }
    }

    /// Upper bounds of each parameter, in sequence order.
    pub fn param_ranges(group: &FinAbGroup) -> Vec<u64> {
        let m = group.factors();
        let mut r: Vec<u64> = m.to_vec();
        r.extend(pair_indices(m.len()).iter().map(|&(s, t)| m[s].gcd(&m[t])));
        r.extend(
            triple_indices(m.len())
                .iter()
                .map(|&(a, b, c)| gcd3(m[a], m[b], m[c])),
        );
        r
    }

    /// Builds `ω_c` from the full sequence `(c_1..c_n, c_12.., c_123..)`.
    pub fn from_params(group: &FinAbGroup, params: &[u64]) -> Result<Cocycle3> {
        let ranges = Cocycle3::param_ranges(group);
        if params.len() != ranges.len() {
            return Err(Error::Invalid(format!(
                "expected {} cocycle parameters, got {}",
                ranges.len(),
                params.len()
            )));
        }
        if let Some((i, (&p, &r))) = params
            .iter()
            .zip(&ranges)
            .enumerate()
            .find(|(_, (&p, &r))| p >= r)
        {
            return Err(Error::Invalid(format!(
                "cocycle parameter #{i} = {p} is out of range 0..{r}"
            )));
        }
        let n = group.rank();
        let np = pair_indices(n).len();
        Ok(Cocycle3 {
            group: group.clone(),
            c1: params[..n].to_vec(),
            c2: params[n..n + np].to_vec(),
            c3: params[n + np..].to_vec(),
        })
    }

    /// The single-parameter cocycle with `c_rst = k` (zero-based indices).
    pub fn with_c3(group: &FinAbGroup, r: usize, s: usize, t: usize, k: u64) -> Result<Cocycle3> {
        let mut c = Cocycle3::trivial(group);
        let pos = triple_indices(group.rank())
            .iter()
            .position(|&x| x == (r, s, t))
            .ok_or_else(|| Error::Invalid(format!("no triple ({r},{s},{t})")))?;
        c.c3[pos] = k;
        Cocycle3::from_params(group, &c.params())
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn params(&self) -> Vec<u64> {
        let mut p = self.c1.clone();
        p.extend(&self.c2);
        p.extend(&self.c3);
        p
    }

    pub fn c1(&self) -> &[u64] {
        &self.c1
    }

    pub fn c2(&self) -> &[u64] {
        &self.c2
    }

    pub fn c3(&self) -> &[u64] {
        &self.c3
    }

    pub fn is_trivial(&self) -> bool {
        self.params().iter().all(|&p| p == 0)
    }

    pub fn eval(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Result<Phase> {
        self.group.check(a)?;
        self.group.check(b)?;
        self.group.check(c)?;
        Ok(self.eval_exps(a.exponents(), b.exponents(), c.exponents()))
    }

    /// Evaluates the defining product on canonical exponent vectors.
    pub(crate) fn eval_exps(&self, i: &[u64], j: &[u64], k: &[u64]) -> Phase {
        let m = self.group.factors();
        let n = m.len();
        let big = self.group.exponent() as i128;
        let mut acc: i128 = 0;
        for l in 0..n {
            if self.c1[l] != 0 {
                let carry = (j[l] + k[l]) / m[l];
                acc += (self.c1[l] * i[l] * carry) as i128 * (big / m[l] as i128);
            }
        }
        for (p, &(s, t)) in pair_indices(n).iter().enumerate() {
            if self.c2[p] != 0 {
                let carry = (j[s] + k[s]) / m[s];
                acc += (self.c2[p] * i[t] * carry) as i128 * (big / m[t] as i128);
            }
        }
        for (p, &(r, s, t)) in triple_indices(n).iter().enumerate() {
            if self.c3[p] != 0 {
                let d = gcd3(m[r], m[s], m[t]) as i128;
                acc += (self.c3[p] as i128 * i[r] as i128 * j[s] as i128 * k[t] as i128)
                    % d
                    * (big / d);
            }
        }
        Phase::new(acc, big as u64)
    }
}

/// All representatives on `G`, in lexicographic order of their parameter sequences.
pub fn enumerate_cocycles(group: &FinAbGroup) -> impl Iterator<Item = Cocycle3> + '_ {
    let ranges = Cocycle3::param_ranges(group);
    let total: u64 = ranges.iter().product();
    (0..total).map(move |mut idx| {
        let mut params = vec![0; ranges.len()];
        for p in (0..ranges.len()).rev() {
            params[p] = idx % ranges[p];
            idx /= ranges[p];
        }
        Cocycle3::from_params(group, &params).expect("params within range")
    })
}

/// Serialized form: `{"group", "c", "c2": [[i,j,c]], "c3": [[r,s,t,c]]}` with 1-based indices.
#[derive(Serialize, Deserialize)]
pub(crate) struct CocycleDescriptor {
    group: FinAbGroup,
    #[serde(default)]
    c: Vec<u64>,
    #[serde(default)]
    c2: Vec<(usize, usize, u64)>,
    #[serde(default)]
    c3: Vec<(usize, usize, usize, u64)>,
}

impl TryFrom<CocycleDescriptor> for Cocycle3 {
    type Error = Error;
    fn try_from(d: CocycleDescriptor) -> Result<Cocycle3> {
        let n = d.group.rank();
        let mut params = vec![0u64; Cocycle3::param_ranges(&d.group).len()];
        if d.c.len() > n {
            return Err(Error::Invalid(format!(
                "{} values for c on a rank-{n} group",
                d.c.len()
            )));
        }
        params[..d.c.len()].copy_from_slice(&d.c);
        let pairs = pair_indices(n);
        for (s, t, v) in d.c2 {
            let pos = (s >= 1 && t >= 1)
                .then(|| pairs.iter().position(|&x| x == (s - 1, t - 1)))
                .flatten()
                .ok_or_else(|| Error::Invalid(format!("c2 index ({s},{t}) is not a pair i<j")))?;
            params[n + pos] = v;
        }
        let triples = triple_indices(n);
        for (r, s, t, v) in d.c3 {
            let pos = (r >= 1 && s >= 1 && t >= 1)
                .then(|| triples.iter().position(|&x| x == (r - 1, s - 1, t - 1)))
                .flatten()
                .ok_or_else(|| {
                    Error::Invalid(format!("c3 index ({r},{s},{t}) is not a triple r<s<t"))
                })?;
            params[n + pairs.len() + pos] = v;
        }
        Cocycle3::from_params(&d.group, &params)
    }
}

impl From<&Cocycle3> for CocycleDescriptor {
    fn from(c: &Cocycle3) -> CocycleDescriptor {
        CocycleDescriptor {
            group: c.group.clone(),
            c: c.c1.clone(),
            c2: pair_indices(c.group.rank())
                .into_iter()
                .zip(&c.c2)
                .map(|((s, t), &v)| (s + 1, t + 1, v))
                .collect(),
            c3: triple_indices(c.group.rank())
                .into_iter()
                .zip(&c.c3)
                .map(|((r, s, t), &v)| (r + 1, s + 1, t + 1, v))
                .collect(),
        }
    }
}

impl Serialize for Cocycle3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CocycleDescriptor::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cocycle3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = CocycleDescriptor::deserialize(d)?;
        Cocycle3::try_from(desc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let z2c = grp(&[2, 2, 2]);
        let phi = Cocycle3::with_c3(&z2c, 0, 1, 2, 1).unwrap();
        let g = z2c.generators();
        assert_eq!(phi.eval(&g[0], &g[1], &g[2]).unwrap(), Phase::MINUS_ONE);
        let z4 = grp(&[4]);
        let phi = Cocycle3::from_params(&z4, &[2]).unwrap();
        let t = z4.element(&[3]).unwrap();
        assert_eq!(phi.eval(&z4.generator(0), &t, &t).unwrap(), Phase::MINUS_ONE);
        for b in z4.elements() {
            for c in z4.elements() {
                assert!(phi.eval(&z4.identity(), &b, &c).unwrap().is_one());
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_cocycles(&grp(&[2])).count(), 2);
        assert_eq!(enumerate_cocycles(&grp(&[2, 2])).count(), 8);
        assert_eq!(enumerate_cocycles(&grp(&[2, 2, 2])).count(), 128);
        let ps: Vec<Vec<u64>> = enumerate_cocycles(&grp(&[2, 3])).map(|c| c.params()).collect();
        assert_eq!(ps, vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 2, 0], vec![1, 0, 0], vec![1, 1, 0], vec![1, 2, 0]]);
    }

    #[test]
    fn out_of_range_params_rejected() {
        assert!(Cocycle3::from_params(&grp(&[2, 2]), &[0, 0, 2]).is_err());
        assert!(Cocycle3::from_params(&grp(&[2]), &[0, 0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = grp(&[2, 4, 6]);
        for c in enumerate_cocycles(&g).step_by(37) {
            let s = serde_json::to_string(&c).unwrap();
            let back: Cocycle3 = serde_json::from_str(&s).unwrap();
            assert_eq!(back, c);
        }
        let sparse: Cocycle3 =
            serde_json::from_str(r#"{"group":{"factors":[2,2,2]},"c3":[[1,2,3,1]]}"#).unwrap();
        assert_eq!(sparse.params(), vec![0, 0, 0, 0, 0, 0, 1]);
        assert!(serde_json::from_str::<Cocycle3>(r#"{"group":{"factors":[2,2]},"c3":[[1,2,3,1]]}"#).is_err());
    }
}
