use num_integer::Integer;

use super::{Monomial, YDModule};
use crate::groups::GroupElement;
use crate::scalars::{row_basis, Cyclotomic, CyclotomicField, Elem, Phase};

/// A homogeneous basis `Y_1, …, Y_n` of joint eigenvectors, with `deg Y_i ▷ Y_j = q_ij Y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    /// Conductor of the field the basis vectors are written over.
    pub conductor: u64,
    /// Coordinates of `Y_i` in the module's original basis.
    pub vectors: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<GroupElement>,
    pub q: Vec<Vec<Phase>>,
}

impl StandardBasis {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// True when the basis is the module's own basis.
    pub fn is_original_basis(&self) -> bool {
        self.vectors.iter().enumerate().all(|(i, v)| {
            v.iter()
                .enumerate()
                .all(|(j, c)| if i == j { *c == Cyclotomic::one() } else { c.is_zero() })
        })
    }
}

/// Restriction of a grading-preserving monomial to the coordinates `idx`.
fn restrict(m: &Monomial, idx: &[usize]) -> Monomial {
    let pos = |r: usize| idx.iter().position(|&i| i == r).expect("grading preserved");
    let (perm, scal) = idx
        .iter()
        .map(|&j| {
            let (r, s) = m.image(j);
            (pos(r), s)
        })
        .unzip();
    Monomial::new(perm, scal).expect("restriction of a monomial")
}

pub(super) fn standard_basis(v: &YDModule) -> Option<StandardBasis> {
    let degs = v.distinct_degrees();
    let ops: Vec<&Monomial> = degs.iter().map(|d| v.action(d).expect("valid degree")).collect();
    for a in &ops {
        for b in &ops {
            if a.compose(b) != b.compose(a) {
                return None;
            }
        }
    }
    let deg_pos: Vec<usize> = v
        .degrees()
        .iter()
        .map(|d| degs.iter().position(|e| e == d).unwrap())
        .collect();

    if ops.iter().all(|a| a.is_diagonal()) {
        let n = v.dim();
        let q = (0..n)
            .map(|i| (0..n).map(|j| ops[deg_pos[i]].scalars()[j]).collect())
            .collect();
        let vectors = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() })
                    .collect()
            })
            .collect();
        return Some(StandardBasis {
            conductor: ops.iter().fold(1u64, |acc, a| acc.lcm(&a.conductor())),
            vectors,
            degrees: v.degrees().to_vec(),
            q,
        });
    }

    let conductor = ops
        .iter()
        .fold(1u64, |acc, a| acc.lcm(&a.order()).lcm(&a.conductor()));
    let field = CyclotomicField::get(conductor);

    // Per homogeneous component, refine by the eigenspaces of each degree operator.
    let mut found: Vec<(usize, Vec<Phase>, Vec<Elem>)> = Vec::new();
    for (c, _) in degs.iter().enumerate() {
        let idx: Vec<usize> = (0..v.dim()).filter(|&j| deg_pos[j] == c).collect();
        let k = idx.len();
        let unit = |i: usize| -> Vec<Elem> {
            (0..k).map(|j| if i == j { field.one() } else { field.zero() }).collect()
        };
        let mut spaces: Vec<(Vec<Phase>, Vec<Vec<Elem>>)> = vec![(Vec::new(), (0..k).map(unit).collect())];
        for a in &ops {
            let a = restrict(a, &idx);
            let ord = a.order();
            let powers: Vec<Monomial> = (0..ord).map(|p| a.pow(p)).collect();
            let mut next = Vec::new();
            for (eigs, basis) in spaces {
                for lambda in Phase::ONE.roots(ord) {
                    let images: Vec<Vec<Elem>> = basis
                        .iter()
                        .map(|b| {
                            let mut acc = vec![field.zero(); k];
                            for (p, ap) in powers.iter().enumerate() {
                                let w = ap.apply(&field, b);
                                let s = lambda.pow(-(p as i128));
                                for (x, y) in acc.iter_mut().zip(&w) {
                                    *x = field.add(x, &field.mul_phase(y, s));
                                }
                            }
                            acc
                        })
                        .collect();
                    let sub = row_basis(&field, images);
                    if !sub.is_empty() {
                        let mut e = eigs.clone();
                        e.push(lambda);
                        next.push((e, sub));
                    }
                }
            }
            spaces = next;
        }
        for (eigs, basis) in spaces {
            for b in basis {
                let mut full = vec![field.zero(); v.dim()];
                for (j, x) in idx.iter().zip(b) {
                    full[*j] = x;
                }
                found.push((c, eigs.clone(), full));
            }
        }
    }

    let q = found
        .iter()
        .map(|(ci, _, _)| found.iter().map(|(_, ej, _)| ej[*ci]).collect())
        .collect();
    Some(StandardBasis {
        conductor,
        degrees: found.iter().map(|(c, _, _)| degs[*c].clone()).collect(),
        vectors: found
            .into_iter()
            .map(|(_, _, w)| w.into_iter().map(|e| Cyclotomic::from_elem(conductor, e)).collect())
            .collect(),
        q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::{enumerate_cocycles, Associator};
    use crate::groups::FinAbGroup;
    use crate::ydmod::{fixtures, SimpleYDSpec};

    #[test]
    fn prop71_module_has_none() {
        let v = fixtures::prop71_module(&fixtures::Prop71Constants::normalized()).unwrap();
        assert!(v.has_standard_basis().is_none());
    }

    #[test]
    fn two_summands_of_prop71_have_one() {
        let c = fixtures::Prop71Constants::normalized();
        let (u, v, _) = fixtures::prop71_simples(&c).unwrap();
        let s = YDModule::direct_sum(&[u, v]).unwrap();
        let sb = s.has_standard_basis().unwrap();
        assert_eq!(sb.rank(), 4);
        assert!(!sb.is_original_basis());
        for i in 0..4 {
            assert_eq!(sb.q[i][i], Phase::MINUS_ONE);
        }
    }

    #[test]
    fn eigenvectors_are_eigenvectors() {
        let v = fixtures::prop76_module().unwrap();
        let sb = v.has_standard_basis().unwrap();
        let field = CyclotomicField::get(sb.conductor);
        for (i, y) in sb.vectors.iter().enumerate() {
            let ye: Vec<Elem> = y.iter().map(|c| c.elem_in(&field)).collect();
            for (j, d) in sb.degrees.iter().enumerate() {
                let img = v.action(d).unwrap().apply(&field, &ye);
                let expect: Vec<Elem> = ye.iter().map(|x| field.mul_phase(x, sb.q[j][i])).collect();
                assert_eq!(img, expect);
            }
        }
    }

    #[test]
    fn exists_iff_abelian_on_small_groups() {
        for f in [vec![2, 2, 2], vec![3, 3, 3]] {
            let g = FinAbGroup::new(f).unwrap();
            for c in enumerate_cocycles(&g).step_by(5) {
                let phi = Associator::from(c);
                let abelian = phi.is_abelian_on_group();
                let parts: Vec<YDModule> = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
                    .iter()
                    .map(|ctx| SimpleYDSpec::new(*ctx).build(&phi).unwrap())
                    .collect();
                let m = YDModule::direct_sum(&parts).unwrap();
                assert_eq!(m.has_standard_basis().is_some(), abelian);
            }
        }
    }
}
