use serde::{Deserialize, Serialize};

use super::Associator;
use crate::error::{Error, Result};
use crate::groups::{FinAbGroup, GroupElement};
use crate::scalars::Phase;

/// A normalized 2-cochain `J: G × G → k*`, stored densely in lexicographic pair order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CochainDescriptor")]
pub struct Cochain2 {
    group: FinAbGroup,
    values: Vec<Phase>,
}

#[derive(Deserialize)]
struct CochainDescriptor {
    group: FinAbGroup,
    values: Vec<Phase>,
}

impl TryFrom<CochainDescriptor> for Cochain2 {
    type Error = Error;
    fn try_from(d: CochainDescriptor) -> Result<Cochain2> {
        Cochain2::new(d.group, d.values)
    }
}

impl Cochain2 {
    pub fn new(group: FinAbGroup, values: Vec<Phase>) -> Result<Cochain2> {
        let n = group.order();
        if values.len() != n * n {
            return Err(Error::Invalid(format!(
                "2-cochain on a group of order {n} needs {} values, got {}",
                n * n,
                values.len()
            )));
        }
        for x in 0..n {
            if !values[x].is_one() || !values[x * n].is_one() {
                return Err(Error::Invalid("2-cochain is not normalized".into()));
            }
        }
        Ok(Cochain2 { group, values })
    }

    pub fn trivial(group: &FinAbGroup) -> Cochain2 {
        let n = group.order();
        Cochain2 {
            group: group.clone(),
            values: vec![Phase::ONE; n * n],
        }
    }

    /// Tabulates `f`, forcing the normalization on pairs containing the identity.
    pub fn from_fn(group: &FinAbGroup, f: impl Fn(&GroupElement, &GroupElement) -> Phase) -> Cochain2 {
        let el = group.elements();
        let mut values = Vec::with_capacity(el.len() * el.len());
        for a in &el {
            for b in &el {
                values.push(if a.is_identity() || b.is_identity() {
                    Phase::ONE
                } else {
                    f(a, b)
                });
            }
        }
        Cochain2 {
            group: group.clone(),
            values,
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    pub fn get(&self, a: &GroupElement, b: &GroupElement) -> Result<Phase> {
        self.group.check(a)?;
        self.group.check(b)?;
        Ok(self.value_at(self.group.index_of(a), self.group.index_of(b)))
    }

    pub fn value_at(&self, a: usize, b: usize) -> Phase {
        self.values[a * self.group.order() + b]
    }

    pub fn inverse(&self) -> Cochain2 {
        Cochain2 {
            group: self.group.clone(),
            values: self.values.iter().map(Phase::inv).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| (0..n).all(|b| self.values[a * n + b] == self.values[b * n + a]))
    }

    /// `∂J(a,b,c) = J(b,c)J(a,bc) / (J(ab,c)J(a,b))`.
    pub fn coboundary_value(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Phase {
        let g = &self.group;
        let bc = g.mul_unchecked(b, c);
        let ab = g.mul_unchecked(a, b);
        let v = |x: &GroupElement, y: &GroupElement| self.value_at(g.index_of(x), g.index_of(y));
        v(b, c) * v(a, &bc) / v(&ab, c) / v(a, b)
    }

    /// `∂J` as an associator on the same group.
    pub fn coboundary(&self) -> Associator {
        Associator::trivial(&self.group)
            .twisted_by(self)
            .expect("same group")
    }
}
