//! Worked modules used across tests, the CLI and the acceptance suite.

use super::{SimpleYDSpec, YDModule};
use crate::cocycles::{Associator, Cocycle3};
use crate::error::Result;
use crate::groups::FinAbGroup;
use crate::scalars::Phase;

/// Structure constants `(β_i, γ_i)` of the three two-dimensional simples `U, V, W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prop71Constants {
    pub beta1: Phase,
    pub gamma1: Phase,
    pub beta2: Phase,
    pub gamma2: Phase,
    pub beta3: Phase,
    pub gamma3: Phase,
}

impl Prop71Constants {
    /// Sign choices with `β2β3 = β1γ2 = γ1γ3 = -1`.
    pub fn normalized() -> Prop71Constants {
        let (one, m) = (Phase::ONE, Phase::MINUS_ONE);
        Prop71Constants {
            beta1: one,
            gamma1: one,
            beta2: one,
            gamma2: m,
            beta3: m,
            gamma3: m,
        }
    }
}

/// `Φ = ζ_d^{k·i1·j2·k3}` on `Z_{m1} × Z_{m2} × Z_{m3}`, `d = gcd(m1, m2, m3)`.
pub fn prop71_associator(factors: [u64; 3], k: u64) -> Result<Associator> {
    let g = FinAbGroup::new(factors.to_vec())?;
    Ok(Associator::from(Cocycle3::with_c3(&g, 0, 1, 2, k)?))
}

/// `U` of degree `e`, `V` of degree `f`, `W` of degree `g`, each with its
/// degree acting by `-1` and the cycling generator acting with equal coefficients.
pub fn prop71_simples_over(
    assoc: &Associator,
    c: &Prop71Constants,
) -> Result<(YDModule, YDModule, YDModule)> {
    let m = Phase::MINUS_ONE;
    let u = SimpleYDSpec::new([0, 1, 2])
        .alpha(m)
        .beta(c.beta1)
        .balanced(c.gamma1)
        .build(assoc)?;
    let v = SimpleYDSpec::new([1, 2, 0])
        .alpha(m)
        .beta(c.beta2)
        .balanced(c.gamma2)
        .build(assoc)?;
    let w = SimpleYDSpec::new([2, 1, 0])
        .alpha(m)
        .beta(c.beta3)
        .balanced(c.gamma3)
        .build(assoc)?;
    Ok((u, v, w))
}

/// The three simples over `Z_2^3` with `Φ = (-1)^{i1 j2 k3}`.
pub fn prop71_simples(c: &Prop71Constants) -> Result<(YDModule, YDModule, YDModule)> {
    prop71_simples_over(&prop71_associator([2, 2, 2], 1)?, c)
}

/// `U ⊕ V ⊕ W` with basis `X1, X2, Y1, Y2, Z1, Z2`.
pub fn prop71_module(c: &Prop71Constants) -> Result<YDModule> {
    let (u, v, w) = prop71_simples(c)?;
    YDModule::direct_sum(&[u, v, w])
}

/// `V ⊕ W` over `Z_4^3` with `Φ = (-1)^{i1 j2 k3}`, `β2 = ζ_4`, `β3 = 1`, `γ2 = γ3 = 1`.
pub fn prop76_module() -> Result<YDModule> {
    let assoc = prop71_associator([4, 4, 4], 2)?;
    let c = Prop71Constants {
        beta1: Phase::ONE,
        gamma1: Phase::ONE,
        beta2: Phase::zeta(4, 1),
        gamma2: Phase::ONE,
        beta3: Phase::ONE,
        gamma3: Phase::ONE,
    };
    let (_, v, w) = prop71_simples_over(&assoc, &c)?;
    YDModule::direct_sum(&[v, w])
}

/// Two one-dimensional modules over `Z_2^2` with trivial associator.
pub fn diagonal_z2_pair() -> YDModule {
    YDModule::from_bicharacter(&[
        vec![Phase::MINUS_ONE, Phase::MINUS_ONE],
        vec![Phase::ONE, Phase::MINUS_ONE],
    ])
    .expect("valid bicharacter")
}

pub fn rank_one_minus_one() -> Vec<Vec<Phase>> {
    vec![vec![Phase::MINUS_ONE]]
}

/// `q_11 = q_22 = -1`, `q_12 q_21 = -1`.
pub fn a2_minus_one() -> Vec<Vec<Phase>> {
    let (one, m) = (Phase::ONE, Phase::MINUS_ONE);
    vec![vec![m, m], vec![one, m]]
}

/// `q_11 = q_22 = ζ_5`, `q_12 q_21 = ζ_5^{-1}`.
pub fn a2_zeta5() -> Vec<Vec<Phase>> {
    let z = Phase::zeta(5, 1);
    vec![vec![z, z.inv()], vec![Phase::ONE, z]]
}

/// Chain of three vertices labelled `-1` with edges labelled `-1`.
pub fn a3_minus_one() -> Vec<Vec<Phase>> {
    let (one, m) = (Phase::ONE, Phase::MINUS_ONE);
    vec![vec![m, m, one], vec![one, m, m], vec![one, one, m]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_bases() {
        let c = Prop71Constants::normalized();
        let (u, v, w) = prop71_simples(&c).unwrap();
        let g = u.group().clone();
        let (e, f, gg) = (g.generator(0), g.generator(1), g.generator(2));
        let m = Phase::MINUS_ONE;
        assert_eq!(v.degrees()[0], f);
        assert_eq!(w.degrees()[0], gg);
        // V: g ▷ Y1 = β2 Y1, g ▷ Y2 = -β2 Y2, e ▷ Y1 = γ2 Y2
        assert_eq!(v.action(&gg).unwrap().scalars(), &[c.beta2, m * c.beta2]);
        assert_eq!(v.action(&e).unwrap().image(0), (1, c.gamma2));
        // W: f ▷ Z1 = β3 Z1, f ▷ Z2 = -β3 Z2, e ▷ Z2 = γ3 Z1
        assert_eq!(w.action(&f).unwrap().scalars(), &[c.beta3, m * c.beta3]);
        assert_eq!(w.action(&e).unwrap().image(1), (0, c.gamma3));
    }

    #[test]
    fn prop76_builds() {
        let v = prop76_module().unwrap();
        assert_eq!(v.dim(), 4);
        assert_eq!(v.group().factors(), &[4, 4, 4]);
    }
}
