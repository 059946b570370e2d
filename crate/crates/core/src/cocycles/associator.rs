use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{Cochain2, Cocycle3};
use crate::error::{Error, Result};
use crate::groups::{FinAbGroup, GroupElement, GroupHom};
use crate::scalars::Phase;

/// A normalized 3-cocycle presented either as a representative `ω_c`, a pullback
/// along a homomorphism, or a product `Φ·∂J`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Associator {
    Rep(Cocycle3),
    Pullback {
        pullback: Box<Associator>,
        along: GroupHom,
    },
    Twisted {
        twisted: Box<Associator>,
        by: Cochain2,
    },
}

impl From<Cocycle3> for Associator {
    fn from(c: Cocycle3) -> Associator {
        Associator::Rep(c)
    }
}

impl Associator {
    pub fn trivial(group: &FinAbGroup) -> Associator {
        Associator::Rep(Cocycle3::trivial(group))
    }

    pub fn group(&self) -> &FinAbGroup {
        match self {
            Associator::Rep(c) => c.group(),
            Associator::Pullback { along, .. } => along.domain(),
            Associator::Twisted { by, .. } => by.group(),
        }
    }

    /// The pullback `f*Φ` along `f: H → G`.
    pub fn pullback(&self, f: &GroupHom) -> Result<Associator> {
        if f.codomain() != self.group() {
            return Err(Error::GroupMismatch(format!(
                "pullback along a map into {} of a cocycle on {}",
                f.codomain(),
                self.group()
            )));
        }
        Ok(Associator::Pullback {
            pullback: Box::new(self.clone()),
            along: f.clone(),
        })
    }

    /// The product `Φ·∂J`.
    pub fn twisted_by(&self, j: &Cochain2) -> Result<Associator> {
        if j.group() != self.group() {
            return Err(Error::GroupMismatch(format!(
                "cochain on {} for a cocycle on {}",
                j.group(),
                self.group()
            )));
        }
        Ok(Associator::Twisted {
            twisted: Box::new(self.clone()),
            by: j.clone(),
        })
    }

    pub fn eval(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Result<Phase> {
        let g = self.group();
        g.check(a)?;
        g.check(b)?;
        g.check(c)?;
        Ok(self.eval_unchecked(a, b, c))
    }

    fn eval_unchecked(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Phase {
        match self {
            Associator::Rep(w) => w.eval_exps(a.exponents(), b.exponents(), c.exponents()),
            Associator::Pullback { pullback, along } => {
                let f = |x| along.apply(x).expect("element checked against domain");
                pullback.eval_unchecked(&f(a), &f(b), &f(c))
            }
            Associator::Twisted { twisted, by } => {
                twisted.eval_unchecked(a, b, c) * by.coboundary_value(a, b, c)
            }
        }
    }

    /// `Φ̃_g(x, y) = Φ(g,x,y)Φ(x,y,g)/Φ(x,g,y)`.
    pub fn phi_tilde(&self, g: &GroupElement, x: &GroupElement, y: &GroupElement) -> Result<Phase> {
        Ok(self.eval(g, x, y)? * self.eval(x, y, g)? / self.eval(x, g, y)?)
    }

    /// `Φ̃_{g1}(g2,g3) / Φ̃_{g1}(g3,g2)`.
    pub fn antisymmetry_ratio(
        &self,
        g1: &GroupElement,
        g2: &GroupElement,
        g3: &GroupElement,
    ) -> Result<Phase> {
        Ok(self.phi_tilde(g1, g2, g3)? / self.phi_tilde(g1, g3, g2)?)
    }

    /// Exhaustive check of the 3-cocycle identities over `G⁴`.
    pub fn verify(&self) -> bool {
        self.table().verify()
    }

    /// True iff every `Φ̃_g` is symmetric on the subgroup with element set `s`.
    pub fn is_abelian(&self, s: &[GroupElement]) -> Result<bool> {
        let t = self.table();
        let g = self.group();
        let mut idx = BTreeSet::new();
        for x in s {
            g.check(x)?;
            idx.insert(g.index_of(x));
        }
        for &a in &idx {
            for &b in &idx {
                if !idx.contains(&t.mul(a, b)) {
                    return Err(Error::NotClosed);
                }
            }
        }
        let idx: Vec<usize> = idx.into_iter().collect();
        Ok(t.is_abelian_on(&idx))
    }

    pub fn is_abelian_on_group(&self) -> bool {
        let t = self.table();
        let all: Vec<usize> = (0..t.order()).collect();
        t.is_abelian_on(&all)
    }

    /// Tabulates all values with a common denominator.
    pub fn table(&self) -> AssocTable {
        let g = self.group().clone();
        let n = g.order();
        let values: Vec<Phase> = match self {
            Associator::Rep(w) => {
                let el = g.elements();
                let mut v = Vec::with_capacity(n * n * n);
                for a in &el {
                    for b in &el {
                        for c in &el {
                            v.push(w.eval_exps(a.exponents(), b.exponents(), c.exponents()));
                        }
                    }
                }
                v
            }
            Associator::Pullback { pullback, along } => {
                let base = pullback.table();
                let img: Vec<usize> = g
                    .elements()
                    .iter()
                    .map(|x| base.group().index_of(&along.apply(x).expect("domain element")))
                    .collect();
                let mut v = Vec::with_capacity(n * n * n);
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            v.push(base.phi(img[a], img[b], img[c]));
                        }
                    }
                }
                v
            }
            Associator::Twisted { twisted, by } => {
                let base = twisted.table();
                let mul = g.mul_table();
                let mut v = Vec::with_capacity(n * n * n);
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            v.push(
                                base.phi(a, b, c)
                                    * by.value_at(b, c)
                                    * by.value_at(a, mul[b * n + c])
                                    / by.value_at(mul[a * n + b], c)
                                    / by.value_at(a, b),
                            );
                        }
                    }
                }
                v
            }
        };
        AssocTable::from_values(g, values)
    }
}

/// Dense table of a 3-cochain on `G`, indexed by element positions, with all
/// values written over one denominator.
#[derive(Clone, Debug)]
pub struct AssocTable {
    group: FinAbGroup,
    n: usize,
    mul: Vec<usize>,
    den: u64,
    nums: Vec<u32>,
}

impl AssocTable {
    pub fn from_values(group: FinAbGroup, values: Vec<Phase>) -> AssocTable {
        let n = group.order();
        assert_eq!(values.len(), n * n * n);
        let den = values.iter().fold(1u64, |d, p| d.lcm(&p.denom()));
        let nums = values
            .iter()
            .map(|p| p.exponent_over(den).expect("den is a common multiple") as u32)
            .collect();
        AssocTable {
            mul: group.mul_table(),
            group,
            n,
            den,
            nums,
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Common denominator of all values.
    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn num(&self, a: usize, b: usize, c: usize) -> u64 {
        self.nums[(a * self.n + b) * self.n + c] as u64
    }

    pub fn phi(&self, a: usize, b: usize, c: usize) -> Phase {
        Phase::new(self.num(a, b, c) as i128, self.den)
    }

    fn tilde_num(&self, g: usize, x: usize, y: usize) -> u64 {
        (self.num(g, x, y) + self.num(x, y, g) + self.den - self.num(x, g, y)) % self.den
    }

    pub fn tilde(&self, g: usize, x: usize, y: usize) -> Phase {
        Phase::new(self.tilde_num(g, x, y) as i128, self.den)
    }

    /// Replaces one stored value; only meant for fault-injection tests.
    pub fn corrupt(&mut self, a: usize, b: usize, c: usize, value: Phase) {
        let den = self.den.lcm(&value.denom());
        let scale = den / self.den;
        for v in &mut self.nums {
            *v = (*v as u64 * scale) as u32;
        }
        self.den = den;
        self.nums[(a * self.n + b) * self.n + c] = value.exponent_over(den).unwrap() as u32;
    }

    /// Pentagon identity on all quadruples and `ω(f,1,g) = 1`.
    pub fn verify(&self) -> bool {
        let n = self.n;
        let d = self.den;
        for f in 0..n {
            for g in 0..n {
                if self.num(f, 0, g) != 0 {
                    return false;
                }
            }
        }
        for e in 0..n {
            for f in 0..n {
                let ef = self.mul(e, f);
                for g in 0..n {
                    let fg = self.mul(f, g);
                    let efg = self.num(e, f, g);
                    for h in 0..n {
                        let gh = self.mul(g, h);
                        let lhs = self.num(ef, g, h) + self.num(e, f, gh);
                        let rhs = efg + self.num(e, fg, h) + self.num(f, g, h);
                        if lhs % d != rhs % d {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_abelian_on(&self, s: &[usize]) -> bool {
        s.iter().all(|&g| {
            s.iter()
                .all(|&x| s.iter().all(|&y| self.tilde_num(g, x, y) == self.tilde_num(g, y, x)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::enumerate_cocycles;

    fn grp(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn enumerated_cocycles_verify_on_small_groups() {
        for g in [grp(&[2]), grp(&[4]), grp(&[2, 2]), grp(&[3, 6])] {
            for c in enumerate_cocycles(&g) {
                assert!(Associator::from(c.clone()).verify(), "{c:?}");
            }
        }
    }

    #[test]
    fn corrupted_table_fails() {
        let g = grp(&[2]);
        let mut t = Associator::trivial(&g).table();
        assert!(t.verify());
        t.corrupt(1, 1, 1, Phase::MINUS_ONE);
        assert!(t.verify());
        let mut t = Associator::trivial(&g).table();
        t.corrupt(1, 0, 1, Phase::MINUS_ONE);
        assert!(!t.verify());
        let mut t = Associator::trivial(&grp(&[3])).table();
        t.corrupt(1, 1, 2, Phase::MINUS_ONE);
        assert!(!t.verify());
    }

    #[test]
    fn phi_tilde_examples() {
        let g = grp(&[2, 2, 2]);
        let e = g.generators();
        let phi = Associator::from(Cocycle3::with_c3(&g, 0, 1, 2, 1).unwrap());
        assert_eq!(phi.phi_tilde(&e[0], &e[1], &e[2]).unwrap(), Phase::MINUS_ONE);
        assert_eq!(phi.phi_tilde(&e[0], &e[2], &e[1]).unwrap(), Phase::ONE);
        assert_eq!(phi.antisymmetry_ratio(&e[0], &e[1], &e[2]).unwrap(), Phase::MINUS_ONE);
        let triv = Associator::trivial(&g);
        for x in g.elements() {
            for y in g.elements() {
                assert!(triv.phi_tilde(&e[0], &x, &y).unwrap().is_one());
            }
        }
    }

    #[test]
    fn phi_tilde_is_multiplicative_in_g() {
        let g = grp(&[2, 2, 2]);
        for c in enumerate_cocycles(&g).step_by(5) {
            let t = Associator::from(c).table();
            let n = t.order();
            for a in 0..n {
                for b in 0..n {
                    let ab = t.mul(a, b);
                    for x in 0..n {
                        for y in 0..n {
                            assert_eq!(t.tilde(a, x, y) * t.tilde(b, x, y), t.tilde(ab, x, y));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn abelianness_examples() {
        for c in enumerate_cocycles(&grp(&[4])) {
            assert!(Associator::from(c).is_abelian_on_group());
        }
        let g = grp(&[2, 2, 2]);
        let phi = Associator::from(Cocycle3::with_c3(&g, 0, 1, 2, 1).unwrap());
        assert!(!phi.is_abelian(&g.elements()).unwrap());
        let e = g.generators();
        let sub = g.generated_subgroup(&e[..2]).unwrap();
        assert!(phi.is_abelian(sub.elements()).unwrap());
        assert!(matches!(phi.is_abelian(&e[..1]), Err(Error::NotClosed)));
    }

    #[test]
    fn pullback_along_projection() {
        let z2 = grp(&[2]);
        let hat = z2.hat_group();
        let phi = Associator::from(Cocycle3::from_params(&z2, &[1]).unwrap());
        let pb = phi.pullback(&hat.pi).unwrap();
        let h = hat.hat.generator(0);
        assert_eq!(pb.eval(&h, &h, &h).unwrap(), Phase::MINUS_ONE);
        assert!(pb.verify());
        let id = GroupHom::identity(&z2);
        let same = phi.pullback(&id).unwrap();
        for a in z2.elements() {
            for b in z2.elements() {
                for c in z2.elements() {
                    assert_eq!(same.eval(&a, &b, &c).unwrap(), phi.eval(&a, &b, &c).unwrap());
                }
            }
        }
        assert!(phi.pullback(&GroupHom::identity(&grp(&[4]))).is_err());
    }

    #[test]
    fn json_round_trip() {
        let z2 = grp(&[2]);
        let hat = z2.hat_group();
        let phi = Associator::from(Cocycle3::from_params(&z2, &[1]).unwrap());
        let pb = phi.pullback(&hat.pi).unwrap();
        let j = Cochain2::from_fn(&hat.hat, |a, b| {
            Phase::zeta(4, (a.exponents()[0] * b.exponents()[0]) as i128)
        });
        let tw = pb.twisted_by(&j).unwrap();
        for a in [phi, pb, tw] {
            let s = serde_json::to_string(&a).unwrap();
            let back: Associator = serde_json::from_str(&s).unwrap();
            assert_eq!(back, a);
        }
    }
}
