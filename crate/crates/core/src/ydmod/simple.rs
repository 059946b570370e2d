use serde::{Deserialize, Serialize};

use super::{Monomial, YDModule};
use crate::cocycles::Associator;
use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::scalars::Phase;

/// Dimension of a simple module of degree `g` in the context `G = ⟨g, g2, g3⟩`:
/// the order of `Φ̃_g(g2,g3)/Φ̃_g(g3,g2)`.
pub fn simple_dimension(
    assoc: &Associator,
    g: &GroupElement,
    g2: &GroupElement,
    g3: &GroupElement,
) -> Result<u64> {
    Ok(assoc.antisymmetry_ratio(g, g2, g3)?.order())
}

/// How the third context generator permutes the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleConstant {
    /// `g3 ▷ X_i = X_{i+1}`, `g3 ▷ X_n = γ X_1`.
    Gamma(Phase),
    /// `g3 ▷ X_i = ε X_{i+1}` for all `i` (indices mod `n`); equivalent to `γ = ε^n`.
    Balanced(Phase),
}

/// Data of a simple module: degree `g_{c1}`, context `(g_{c1}, g_{c2}, g_{c3})` and
/// structure constants. Missing constants default to the least-exponent solution
/// of their constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecDescriptor", into = "SpecDescriptor")]
pub struct SimpleYDSpec {
    /// Zero-based indices of the distinguished generators.
    pub context: [usize; 3],
    pub alpha: Option<Phase>,
    pub beta: Option<Phase>,
    pub cycle: Option<CycleConstant>,
    pub dim: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct SpecDescriptor {
    /// One-based generator indices.
    context: [usize; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<Phase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<Phase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<Phase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epsilon: Option<Phase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<u64>,
}

impl TryFrom<SpecDescriptor> for SimpleYDSpec {
    type Error = Error;
    fn try_from(d: SpecDescriptor) -> Result<SimpleYDSpec> {
        if d.context.contains(&0) {
            return Err(Error::Invalid("context generators are numbered from 1".into()));
        }
        let cycle = match (d.gamma, d.epsilon) {
            (Some(_), Some(_)) => {
                return Err(Error::Invalid("give at most one of gamma and epsilon".into()))
            }
            (Some(g), None) => Some(CycleConstant::Gamma(g)),
            (None, Some(e)) => Some(CycleConstant::Balanced(e)),
            (None, None) => None,
        };
        Ok(SimpleYDSpec {
            context: d.context.map(|c| c - 1),
            alpha: d.alpha,
            beta: d.beta,
            cycle,
            dim: d.dim,
        })
    }
}

impl From<SimpleYDSpec> for SpecDescriptor {
    fn from(s: SimpleYDSpec) -> SpecDescriptor {
        let (gamma, epsilon) = match s.cycle {
            Some(CycleConstant::Gamma(g)) => (Some(g), None),
            Some(CycleConstant::Balanced(e)) => (None, Some(e)),
            None => (None, None),
        };
        SpecDescriptor {
            context: s.context.map(|c| c + 1),
            alpha: s.alpha,
            beta: s.beta,
            gamma,
            epsilon,
            dim: s.dim,
        }
    }
}

impl SimpleYDSpec {
    pub fn new(context: [usize; 3]) -> SimpleYDSpec {
        SimpleYDSpec {
            context,
            alpha: None,
            beta: None,
            cycle: None,
            dim: None,
        }
    }

    pub fn alpha(mut self, a: Phase) -> Self {
        self.alpha = Some(a);
        self
    }

    pub fn beta(mut self, b: Phase) -> Self {
        self.beta = Some(b);
        self
    }

    pub fn gamma(mut self, g: Phase) -> Self {
        self.cycle = Some(CycleConstant::Gamma(g));
        self
    }

    pub fn balanced(mut self, e: Phase) -> Self {
        self.cycle = Some(CycleConstant::Balanced(e));
        self
    }

    /// Builds the module: `g1 ▷ X_i = α X_i`, `g2 ▷ X_i = β r^{i-1} X_i`, and
    /// `g3` cycling the basis, with `r = Φ̃_{g1}(g2,g3)/Φ̃_{g1}(g3,g2)`.
    pub fn build(&self, assoc: &Associator) -> Result<YDModule> {
        let group = assoc.group();
        let mut sorted = self.context;
        sorted.sort();
        if group.rank() != 3 || sorted != [0, 1, 2] {
            return Err(Error::Invalid(
                "simple modules need a rank-3 group and a permutation of its generators as context"
                    .into(),
            ));
        }
        let [i1, i2, i3] = self.context;
        let (g1, g2, g3) = (group.generator(i1), group.generator(i2), group.generator(i3));
        let m = group.factors();
        let (m1, m2, m3) = (m[i1], m[i2], m[i3]);
        let r = assoc.antisymmetry_ratio(&g1, &g2, &g3)?;
        let n = r.order();
        if let Some(d) = self.dim {
            if d != n {
                return Err(Error::Invalid(format!(
                    "requested dimension {d}, but the context forces dimension {n}"
                )));
            }
        }
        let product = |h: &GroupElement, mh: u64| -> Result<Phase> {
            let mut acc = Phase::ONE;
            for i in 1..mh {
                acc = acc * assoc.phi_tilde(&g1, h, &group.pow(h, i as i64))?;
            }
            Ok(acc)
        };
        let (p1, p2, p3) = (product(&g1, m1)?, product(&g2, m2)?, product(&g3, m3)?);

        let alpha = match self.alpha {
            Some(a) if a.pow(m1 as i128) != p1 => {
                return Err(Error::ConstraintViolation(format!(
                    "alpha^{m1} = {} but must equal {p1}",
                    a.pow(m1 as i128)
                )))
            }
            Some(a) => a,
            None => p1.least_root(m1),
        };
        let beta = match self.beta {
            Some(b) if b.pow(m2 as i128) != p2 => {
                return Err(Error::ConstraintViolation(format!(
                    "beta^{m2} = {} but must equal {p2}",
                    b.pow(m2 as i128)
                )))
            }
            Some(b) => b,
            None => p2.least_root(m2),
        };
        if m3 % n != 0 {
            return Err(Error::ConstraintViolation(format!(
                "dimension {n} does not divide the order {m3} of the cycling generator"
            )));
        }
        let cycle = match self.cycle {
            Some(CycleConstant::Gamma(g)) if g.pow((m3 / n) as i128) != p3 => {
                return Err(Error::ConstraintViolation(format!(
                    "gamma^{} = {} but must equal {p3}",
                    m3 / n,
                    g.pow((m3 / n) as i128)
                )))
            }
            Some(CycleConstant::Balanced(e)) if e.pow(m3 as i128) != p3 => {
                return Err(Error::ConstraintViolation(format!(
                    "epsilon^{m3} = {} but must equal {p3}",
                    e.pow(m3 as i128)
                )))
            }
            Some(c) => c,
            None => CycleConstant::Gamma(p3.least_root(m3 / n)),
        };

        let n = n as usize;
        let mut actions = vec![Monomial::identity(n); 3];
        actions[i1] = Monomial::diagonal(vec![alpha; n]);
        actions[i2] = Monomial::diagonal((0..n).map(|i| beta * r.pow(i as i128)).collect());
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let scal: Vec<Phase> = match cycle {
            CycleConstant::Gamma(g) => (0..n).map(|i| if i + 1 == n { g } else { Phase::ONE }).collect(),
            CycleConstant::Balanced(e) => vec![e; n],
        };
        actions[i3] = Monomial::new(perm, scal)?;
        YDModule::new(group.clone(), assoc.clone(), vec![g1; n], actions)
    }
}

/// Finite-dimensionality class of a simple module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimpleType {
    Diagonal,
    #[serde(rename = "typeI")]
    TypeI,
    #[serde(rename = "typeII")]
    TypeII,
    Infinite,
}

/// Diagonal if one-dimensional; type I if the degree acts by `-1`; type II if
/// two-dimensional with the degree acting by a primitive cube root of unity;
/// otherwise the Nichols algebra is infinite dimensional.
pub fn classify_simple(v: &YDModule) -> Result<SimpleType> {
    let g = v
        .degrees()
        .first()
        .ok_or_else(|| Error::NotSimple("zero module".into()))?;
    if v.degrees().iter().any(|d| d != g) {
        return Err(Error::NotSimple("module is not homogeneous".into()));
    }
    let t = v.action(g)?;
    let c = t.scalars()[0];
    if !t.is_diagonal() || t.scalars().iter().any(|&s| s != c) {
        return Err(Error::NotSimple("degree does not act by a scalar".into()));
    }
    Ok(if v.dim() == 1 {
        SimpleType::Diagonal
    } else if c == Phase::MINUS_ONE {
        SimpleType::TypeI
    } else if v.dim() == 2 && c.order() == 3 {
        SimpleType::TypeII
    } else {
        SimpleType::Infinite
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::{enumerate_cocycles, Cocycle3};
    use crate::groups::FinAbGroup;

    fn grp(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    fn nonabelian(f: &[u64], k: u64) -> Associator {
        Associator::from(Cocycle3::with_c3(&grp(f), 0, 1, 2, k).unwrap())
    }

    #[test]
    fn dimension_examples() {
        let g = grp(&[2, 2, 2]);
        let e = g.generators();
        assert_eq!(simple_dimension(&nonabelian(&[2, 2, 2], 1), &e[0], &e[1], &e[2]).unwrap(), 2);
        assert_eq!(simple_dimension(&Associator::trivial(&g), &e[0], &e[1], &e[2]).unwrap(), 1);
        let g3 = grp(&[3, 3, 3]);
        let e = g3.generators();
        assert_eq!(simple_dimension(&nonabelian(&[3, 3, 3], 1), &e[0], &e[1], &e[2]).unwrap(), 3);
    }

    #[test]
    fn lemma_7_2_module() {
        let phi = nonabelian(&[2, 2, 2], 1);
        let u = SimpleYDSpec::new([0, 1, 2])
            .alpha(Phase::MINUS_ONE)
            .beta(Phase::ONE)
            .balanced(Phase::ONE)
            .build(&phi)
            .unwrap();
        assert_eq!(u.dim(), 2);
        let a = u.gen_actions();
        assert_eq!(a[0].scalars(), &[Phase::MINUS_ONE; 2]);
        assert_eq!(a[1].scalars(), &[Phase::ONE, Phase::MINUS_ONE]);
        assert_eq!(a[2].perm(), &[1, 0]);
        assert_eq!(classify_simple(&u).unwrap(), SimpleType::TypeI);
    }

    #[test]
    fn constraint_violations_are_reported() {
        let phi = nonabelian(&[2, 2, 2], 1);
        let r = SimpleYDSpec::new([0, 1, 2]).alpha(Phase::zeta(4, 1)).build(&phi);
        assert!(matches!(r, Err(Error::ConstraintViolation(_))));
        let mut spec = SimpleYDSpec::new([0, 1, 2]);
        spec.dim = Some(3);
        assert!(spec.build(&phi).is_err());
    }

    #[test]
    fn rank_three_cubic_simple() {
        let phi = nonabelian(&[3, 3, 3], 1);
        let v = SimpleYDSpec::new([0, 1, 2]).build(&phi).unwrap();
        assert_eq!(v.dim(), 3);
        assert!(!v.gen_actions()[2].is_diagonal());
    }

    #[test]
    fn default_simples_exist_for_all_cocycles() {
        for f in [[2u64, 2, 2], [2, 2, 4], [3, 3, 3]] {
            let g = grp(&f);
            for c in enumerate_cocycles(&g).step_by(7) {
                let phi = Associator::from(c);
                for ctx in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2]] {
                    let v = SimpleYDSpec::new(ctx).build(&phi).unwrap();
                    let e = g.generators();
                    let n = simple_dimension(&phi, &e[ctx[0]], &e[ctx[1]], &e[ctx[2]]).unwrap();
                    assert_eq!(v.dim() as u64, n);
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let g = grp(&[2, 2, 2]);
        let triv = Associator::trivial(&g);
        let one = YDModule::one_dim(&g, &triv, g.generator(0), &[Phase::MINUS_ONE; 3]).unwrap();
        assert_eq!(classify_simple(&one).unwrap(), SimpleType::Diagonal);
        let phi = nonabelian(&[4, 4, 4], 2);
        let v = SimpleYDSpec::new([0, 1, 2]).alpha(Phase::zeta(4, 1)).build(&phi).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(classify_simple(&v).unwrap(), SimpleType::Infinite);
        let phi = nonabelian(&[6, 6, 6], 3);
        let v = SimpleYDSpec::new([0, 1, 2]).alpha(Phase::zeta(3, 1)).build(&phi).unwrap();
        assert_eq!(classify_simple(&v).unwrap(), SimpleType::TypeII);
    }

    #[test]
    fn spec_json() {
        let s: SimpleYDSpec =
            serde_json::from_str(r#"{"context":[2,3,1],"alpha":"1/2","epsilon":"0"}"#).unwrap();
        assert_eq!(s.context, [1, 2, 0]);
        assert_eq!(s.cycle, Some(CycleConstant::Balanced(Phase::ONE)));
        let back: SimpleYDSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
