//! Twisted Yetter–Drinfeld modules over `(kG, Φ)` with monomial generator actions.

mod braiding;
pub mod fixtures;
mod monomial;
mod simple;
mod standard;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cocycles::{AssocTable, Associator, Cochain2};
use crate::error::{Error, Result};
use crate::groups::{FinAbGroup, GroupElement, GroupHom, Section, Subgroup};
use crate::scalars::Phase;

pub use braiding::{braiding_matrix, BraidGenerator};
pub use monomial::{Entry, Monomial};
pub use simple::{classify_simple, simple_dimension, CycleConstant, SimpleType, SimpleYDSpec};
pub use standard::StandardBasis;

/// A finite-dimensional module with homogeneous basis `e_0, …, e_{d-1}`.
#[derive(Clone)]
pub struct YDModule {
    group: FinAbGroup,
    assoc: Associator,
    degrees: Vec<GroupElement>,
    gen_actions: Vec<Monomial>,
    table: Arc<AssocTable>,
    deg_idx: Vec<usize>,
    /// Action of every group element, by element index.
    actions: Arc<Vec<Monomial>>,
}

impl std::fmt::Debug for YDModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("YDModule")
            .field("group", &self.group)
            .field("degrees", &self.degrees)
            .field("gen_actions", &self.gen_actions)
            .finish()
    }
}

impl PartialEq for YDModule {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.assoc == other.assoc
            && self.degrees == other.degrees
            && self.gen_actions == other.gen_actions
    }
}

impl YDModule {
    /// Validates the data and tabulates the action of every group element.
    ///
    /// The action of `x = g_l·x'` (with `x'` obtained by lowering the last
    /// nonzero exponent of `x`) is `Φ̃(g_l, x')^{-1} T(g_l) T(x')` on each
    /// homogeneous component; the projective law is then checked for all pairs.
    pub fn new(
        group: FinAbGroup,
        assoc: Associator,
        degrees: Vec<GroupElement>,
        gen_actions: Vec<Monomial>,
    ) -> Result<YDModule> {
        if assoc.group() != &group {
            return Err(Error::GroupMismatch(format!(
                "associator lives on {}, module on {group}",
                assoc.group()
            )));
        }
        if gen_actions.len() != group.rank() {
            return Err(Error::Invalid(format!(
                "{} generator actions for a rank-{} group",
                gen_actions.len(),
                group.rank()
            )));
        }
        let dim = degrees.len();
        for d in &degrees {
            group.check(d)?;
        }
        let deg_idx: Vec<usize> = degrees.iter().map(|d| group.index_of(d)).collect();
        for (l, m) in gen_actions.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::Invalid(format!(
                    "action of generator {l} has size {}, module has dimension {dim}",
                    m.dim()
                )));
            }
            if (0..dim).any(|j| deg_idx[m.perm()[j]] != deg_idx[j]) {
                return Err(Error::Invalid(format!(
                    "action of generator {l} does not preserve the grading"
                )));
            }
            if group.factors()[l] == 1 && !m.is_identity() {
                return Err(Error::Invalid(format!(
                    "generator {l} is the identity but acts nontrivially"
                )));
            }
        }
        let table = Arc::new(assoc.table());
        let n = group.order();
        let elems = group.elements();
        let mut actions: Vec<Monomial> = Vec::with_capacity(n);
        actions.push(Monomial::identity(dim));
        for x in 1..n {
            let ex = elems[x].exponents();
            let l = (0..group.rank()).rev().find(|&l| ex[l] != 0).expect("x != 1");
            let mut prev: Vec<i64> = ex.iter().map(|&e| e as i64).collect();
            prev[l] -= 1;
            let xp = group.index_of(&group.element(&prev)?);
            let g = group.index_of(&group.generator(l));
            let m = gen_actions[l]
                .compose(&actions[xp])
                .scale_columns(|j| table.tilde(deg_idx[j], g, xp).inv());
            actions.push(m);
        }
        let module = YDModule {
            group,
            assoc,
            degrees,
            gen_actions,
            table,
            deg_idx,
            actions: Arc::new(actions),
        };
        module.check_projective_law()?;
        Ok(module)
    }

    fn check_projective_law(&self) -> Result<()> {
        let n = self.group.order();
        for e in 0..n {
            for f in 0..n {
                let ef = self.table.mul(e, f);
                let lhs = self.actions[e].compose(&self.actions[f]);
                let rhs = &self.actions[ef];
                for j in 0..self.dim() {
                    let (r1, s1) = lhs.image(j);
                    let (r2, s2) = rhs.image(j);
                    if r1 != r2 || s1 != self.table.tilde(self.deg_idx[j], e, f) * s2 {
                        return Err(Error::Invalid(format!(
                            "projective law fails for e={:?}, f={:?} on basis vector {j}",
                            self.group.element_at(e),
                            self.group.element_at(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A one-dimensional module of the given degree with generator `g_l` acting by `chars[l]`.
    pub fn one_dim(
        group: &FinAbGroup,
        assoc: &Associator,
        degree: GroupElement,
        chars: &[Phase],
    ) -> Result<YDModule> {
        YDModule::new(
            group.clone(),
            assoc.clone(),
            vec![degree],
            chars.iter().map(|&c| Monomial::diagonal(vec![c])).collect(),
        )
    }

    /// Diagonal module over `Z_N^n` with trivial associator, basis `Y_j` of degree `e_j`
    /// and `e_i ▷ Y_j = q_ij Y_j`, where `N` is the least common order of the entries.
    pub fn from_bicharacter(q: &[Vec<Phase>]) -> Result<YDModule> {
        let n = q.len();
        if n == 0 || q.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("braiding matrix must be square and nonempty".into()));
        }
        let big = q
            .iter()
            .flatten()
            .fold(1u64, |a, p| num_integer::Integer::lcm(&a, &p.order()));
        let group = FinAbGroup::new(vec![big; n])?;
        let degrees = group.generators();
        let actions = (0..n).map(|i| Monomial::diagonal(q[i].clone())).collect();
        YDModule::new(group.clone(), Associator::trivial(&group), degrees, actions)
    }

    pub fn direct_sum(parts: &[YDModule]) -> Result<YDModule> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Invalid("direct sum of no modules".into()))?;
        let mut degrees = Vec::new();
        let mut perms = vec![Vec::new(); first.group.rank()];
        let mut scals = vec![Vec::new(); first.group.rank()];
        for p in parts {
            if p.group != first.group || p.assoc != first.assoc {
                return Err(Error::GroupMismatch(
                    "summands live over different groups or associators".into(),
                ));
            }
            let off = degrees.len();
            degrees.extend(p.degrees.iter().cloned());
            for (l, m) in p.gen_actions.iter().enumerate() {
                perms[l].extend(m.perm().iter().map(|&r| r + off));
                scals[l].extend_from_slice(m.scalars());
            }
        }
        let actions = perms
            .into_iter()
            .zip(scals)
            .map(|(p, s)| Monomial::new(p, s))
            .collect::<Result<Vec<_>>>()?;
        YDModule::new(first.group.clone(), first.assoc.clone(), degrees, actions)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn associator(&self) -> &Associator {
        &self.assoc
    }

    pub fn table(&self) -> &AssocTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    /// Element index of the degree of each basis vector.
    pub fn degree_indices(&self) -> &[usize] {
        &self.deg_idx
    }

    pub fn gen_actions(&self) -> &[Monomial] {
        &self.gen_actions
    }

    pub fn action(&self, g: &GroupElement) -> Result<&Monomial> {
        self.group.check(g)?;
        Ok(&self.actions[self.group.index_of(g)])
    }

    /// Action of the element with index `g`.
    pub fn action_idx(&self, g: usize) -> &Monomial {
        &self.actions[g]
    }

    /// Distinct degrees, in order of first appearance.
    pub fn distinct_degrees(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = Vec::new();
        for d in &self.degrees {
            if !out.contains(d) {
                out.push(d.clone());
            }
        }
        out
    }

    pub fn support_group(&self) -> Subgroup {
        self.group
            .generated_subgroup(&self.distinct_degrees())
            .expect("degrees are valid elements")
    }

    /// The twisted module `V^J` with `g ▷_J X = J(g,x)/J(x,g) g ▷ X`, over `Φ·∂J`.
    pub fn twist(&self, j: &Cochain2) -> Result<YDModule> {
        let assoc = self.assoc.twisted_by(j)?;
        let actions = self
            .gen_actions
            .iter()
            .enumerate()
            .map(|(l, m)| {
                let g = self.group.generator(l);
                let gi = self.group.index_of(&g);
                m.scale_columns(|c| {
                    let x = self.deg_idx[c];
                    j.value_at(gi, x) / j.value_at(x, gi)
                })
            })
            .collect();
        YDModule::new(self.group.clone(), assoc, self.degrees.clone(), actions)
    }

    /// Re-houses the module over the domain of an epimorphism `π` with section `ι`.
    pub fn change_base(&self, pi: &GroupHom, iota: &Section) -> Result<YDModule> {
        if pi.codomain() != &self.group || iota.domain() != &self.group || iota.codomain() != pi.domain() {
            return Err(Error::GroupMismatch("π and ι do not match the module's group".into()));
        }
        if !iota.is_section_of(pi) {
            return Err(Error::Invalid("ι is not a section of π".into()));
        }
        let big = pi.domain().clone();
        let degrees = self
            .degrees
            .iter()
            .map(|d| iota.apply(d))
            .collect::<Result<Vec<_>>>()?;
        let actions = big
            .generators()
            .iter()
            .map(|h| Ok(self.action(&pi.apply(h)?)?.clone()))
            .collect::<Result<Vec<_>>>()?;
        YDModule::new(big, self.assoc.pullback(pi)?, degrees, actions)
    }

    /// Change of base to `Ĝ` along the canonical projection and section.
    pub fn lift_to_hat(&self) -> Result<YDModule> {
        let hat = self.group.hat_group();
        self.change_base(&hat.pi, &hat.iota)
    }

    pub fn has_standard_basis(&self) -> Option<StandardBasis> {
        standard::standard_basis(self)
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleDescriptor {
    group: FinAbGroup,
    associator: Associator,
    degrees: Vec<GroupElement>,
    actions: Vec<Monomial>,
}

impl Serialize for YDModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModuleDescriptor {
            group: self.group.clone(),
            associator: self.assoc.clone(),
            degrees: self.degrees.clone(),
            actions: self.gen_actions.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for YDModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = ModuleDescriptor::deserialize(d)?;
        for deg in &m.degrees {
            m.group.check(deg).map_err(serde::de::Error::custom)?;
        }
        YDModule::new(m.group, m.associator, m.degrees, m.actions).map_err(serde::de::Error::custom)
    }
}
