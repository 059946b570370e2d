//! Finite abelian groups `Z_{m_1} × ⋯ × Z_{m_n}` with canonical exponent vectors.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element `g_1^{i_1}⋯g_n^{i_n}` with `0 <= i_l < m_l`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupDescriptor", into = "GroupDescriptor")]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GroupDescriptor {
    factors: Vec<u64>,
}

impl TryFrom<GroupDescriptor> for FinAbGroup {
    type Error = Error;
    fn try_from(d: GroupDescriptor) -> Result<FinAbGroup> {
        FinAbGroup::new(d.factors)
    }
}

impl From<FinAbGroup> for GroupDescriptor {
    fn from(g: FinAbGroup) -> GroupDescriptor {
        GroupDescriptor { factors: g.factors }
    }
}

impl FinAbGroup {
    pub fn new(factors: Vec<u64>) -> Result<FinAbGroup> {
        if factors.is_empty() {
            return Err(Error::Invalid("a group needs at least one factor".into()));
        }
        if factors.iter().any(|&m| m == 0) {
            return Err(Error::Invalid("cyclic factors must have order >= 1".into()));
        }
        Ok(FinAbGroup { factors })
    }

    pub fn cyclic(m: u64) -> FinAbGroup {
        FinAbGroup::new(vec![m]).expect("positive order")
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup::cyclic(1)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |a, &m| a.lcm(&m))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// The distinguished generator `g_l` (zero-based `l`).
    pub fn generator(&self, l: usize) -> GroupElement {
        let mut e = vec![0; self.rank()];
        e[l] = 1 % self.factors[l];
        GroupElement(e)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|l| self.generator(l)).collect()
    }

    /// Builds an element from arbitrary integer exponents, reducing them canonically.
    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        if exps.len() != self.rank() {
            return Err(Error::ElementMismatch {
                element: exps.iter().map(|&e| e as u64).collect(),
                factors: self.factors.clone(),
            });
        }
        Ok(GroupElement(
            exps.iter()
                .zip(&self.factors)
                .map(|(&e, &m)| e.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    /// Validates that `a` is a canonical element of this group.
    pub fn check(&self, a: &GroupElement) -> Result<()> {
        if a.0.len() != self.rank() || a.0.iter().zip(&self.factors).any(|(&e, &m)| e >= m) {
            return Err(Error::ElementMismatch {
                element: a.0.clone(),
                factors: self.factors.clone(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.check(a).is_ok()
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        )
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| ((x as i128 * k as i128).rem_euclid(m as i128)) as u64)
                .collect(),
        )
    }

    /// Multiplicative order: `lcm_l m_l / gcd(m_l, i_l)`.
    pub fn elem_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.factors)
            .fold(1, |acc, (&i, &m)| acc.lcm(&(m / m.gcd(&i))))
    }

    /// Position of `a` in the lexicographic enumeration of elements.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&e, &m)| acc * m as usize + e as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut e = vec![0; self.rank()];
        for l in (0..self.rank()).rev() {
            let m = self.factors[l] as usize;
            e[l] = (idx % m) as u64;
            idx /= m;
        }
        GroupElement(e)
    }

    /// All elements in lexicographic order of their exponent vectors.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    /// Multiplication table on element indices.
    pub fn mul_table(&self) -> Vec<usize> {
        let n = self.order();
        let elems = self.elements();
        let mut t = vec![0; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                t[i * n + j] = self.index_of(&self.mul_unchecked(a, b));
            }
        }
        t
    }

    /// Closure of `gens` under multiplication, sorted lexicographically.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        for g in gens {
            self.check(g)?;
        }
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul_unchecked(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup {
            generators: gens.to_vec(),
            elements: seen.into_iter().collect(),
        })
    }

    /// `Ĝ = Z_{m_1^2} × ⋯ × Z_{m_n^2}` with the projection `h_i ↦ g_i` and its canonical section.
    pub fn hat_group(&self) -> HatGroup {
        let hat = FinAbGroup::new(self.factors.iter().map(|&m| m * m).collect())
            .expect("squares of positive orders");
        let pi = GroupHom::new(hat.clone(), self.clone(), self.generators())
            .expect("h_i -> g_i is well defined");
        let iota = Section::from_fn(self.clone(), hat.clone(), |a| GroupElement(a.0.clone()));
        HatGroup { hat, pi, iota }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A subgroup stored as its generating list and full element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.elements.binary_search(a).is_ok()
    }
}

/// A homomorphism given by the images of the distinguished generators of its domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HomDescriptor")]
pub struct GroupHom {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    images: Vec<GroupElement>,
}

#[derive(Deserialize)]
struct HomDescriptor {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    images: Vec<GroupElement>,
}

impl TryFrom<HomDescriptor> for GroupHom {
    type Error = Error;
    fn try_from(d: HomDescriptor) -> Result<GroupHom> {
        GroupHom::new(d.domain, d.codomain, d.images)
    }
}

impl TryFrom<HomDescriptor> for Section {
    type Error = Error;
    fn try_from(d: HomDescriptor) -> Result<Section> {
        Section::new(d.domain, d.codomain, d.images)
    }
}

impl GroupHom {
    pub fn new(
        domain: FinAbGroup,
        codomain: FinAbGroup,
        images: Vec<GroupElement>,
    ) -> Result<GroupHom> {
        if images.len() != domain.rank() {
            return Err(Error::GroupMismatch(format!(
                "{} generator images for a rank-{} domain",
                images.len(),
                domain.rank()
            )));
        }
        for (img, &m) in images.iter().zip(domain.factors()) {
            codomain.check(img)?;
            if m % codomain.elem_order(img) != 0 {
                return Err(Error::Invalid(format!(
                    "image {img:?} has order not dividing {m}"
                )));
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(g: &FinAbGroup) -> GroupHom {
        GroupHom::new(g.clone(), g.clone(), g.generators()).expect("identity is well defined")
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, a: &GroupElement) -> Result<GroupElement> {
        self.domain.check(a)?;
        let mut out = self.codomain.identity();
        for (&e, img) in a.0.iter().zip(&self.images) {
            out = self
                .codomain
                .mul_unchecked(&out, &self.codomain.pow(img, e as i64));
        }
        Ok(out)
    }
}

/// A set-theoretic map `G → 𝔾`, used as a section of an epimorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HomDescriptor")]
pub struct Section {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    /// Images of the domain elements in lexicographic order.
    images: Vec<GroupElement>,
}

impl Section {
    pub fn from_fn(
        domain: FinAbGroup,
        codomain: FinAbGroup,
        f: impl Fn(&GroupElement) -> GroupElement,
    ) -> Section {
        let images = domain.elements().iter().map(f).collect();
        Section {
            domain,
            codomain,
            images,
        }
    }

    pub fn new(domain: FinAbGroup, codomain: FinAbGroup, images: Vec<GroupElement>) -> Result<Section> {
        if images.len() != domain.order() {
            return Err(Error::GroupMismatch("section needs one image per element".into()));
        }
        for img in &images {
            codomain.check(img)?;
        }
        Ok(Section {
            domain,
            codomain,
            images,
        })
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn apply(&self, a: &GroupElement) -> Result<GroupElement> {
        self.domain.check(a)?;
        Ok(self.images[self.domain.index_of(a)].clone())
    }

    /// True when `π ∘ ι = id`.
    pub fn is_section_of(&self, pi: &GroupHom) -> bool {
        pi.domain() == &self.codomain
            && pi.codomain() == &self.domain
            && self
                .domain
                .elements()
                .iter()
                .all(|a| pi.apply(&self.images[self.domain.index_of(a)]).ok().as_ref() == Some(a))
    }
}

#[derive(Clone, Debug)]
pub struct HatGroup {
    pub hat: FinAbGroup,
    pub pi: GroupHom,
    pub iota: Section,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let k = g(&[2, 2]);
        let a = k.element(&[1, 0]).unwrap();
        let b = k.element(&[1, 1]).unwrap();
        assert_eq!(k.mul(&a, &b).unwrap().exponents(), &[0, 1]);
        let z4 = g(&[4]);
        let t = z4.element(&[3]).unwrap();
        assert_eq!(z4.mul(&t, &t).unwrap().exponents(), &[2]);
        let z23 = g(&[2, 3]);
        let x = z23.element(&[1, 2]).unwrap();
        assert_eq!(z23.mul(&x, &x).unwrap().exponents(), &[0, 1]);
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let k = g(&[2, 2]);
        let bad = g(&[2]).identity();
        assert!(k.mul(&bad, &k.identity()).is_err());
        assert!(k.element(&[1]).is_err());
    }

    #[test]
    fn order_examples() {
        let z4 = g(&[4]);
        assert_eq!(z4.elem_order(&z4.element(&[2]).unwrap()), 2);
        let z23 = g(&[2, 3]);
        assert_eq!(z23.elem_order(&z23.element(&[1, 1]).unwrap()), 6);
        assert_eq!(z23.elem_order(&z23.identity()), 1);
    }

    #[test]
    fn hat_group_examples() {
        let h = g(&[2]).hat_group();
        assert_eq!(h.hat.factors(), &[4]);
        let gen = h.hat.generator(0);
        assert_eq!(h.pi.apply(&gen).unwrap().exponents(), &[1]);
        assert_eq!(h.iota.apply(&g(&[2]).generator(0)).unwrap(), gen);
        assert_eq!(g(&[2, 2]).hat_group().hat.factors(), &[4, 4]);
        assert_eq!(FinAbGroup::trivial().hat_group().hat.order(), 1);
    }

    #[test]
    fn generated_subgroups() {
        let z4 = g(&[4]);
        let s = z4.generated_subgroup(&[z4.element(&[2]).unwrap()]).unwrap();
        let e: Vec<_> = s.elements().iter().map(|x| x.exponents()[0]).collect();
        assert_eq!(e, vec![0, 2]);
        let k = g(&[2, 2]);
        assert_eq!(k.generated_subgroup(&k.generators()).unwrap().order(), 4);
        let z6 = g(&[6]);
        let s = z6
            .generated_subgroup(&[z6.element(&[2]).unwrap(), z6.element(&[3]).unwrap()])
            .unwrap();
        assert_eq!(s.order(), 6);
        assert_eq!(z6.generated_subgroup(&[]).unwrap().order(), 1);
    }

    #[test]
    fn indexing_is_lexicographic() {
        let k = g(&[2, 3]);
        let els = k.elements();
        assert_eq!(els[1].exponents(), &[0, 1]);
        assert_eq!(els[3].exponents(), &[1, 0]);
        for (i, a) in els.iter().enumerate() {
            assert_eq!(k.index_of(a), i);
        }
    }

    #[test]
    fn hom_rejects_ill_defined_images() {
        let z4 = g(&[4]);
        let z2 = g(&[2]);
        assert!(GroupHom::new(z2.clone(), z4.clone(), vec![z4.element(&[1]).unwrap()]).is_err());
        assert!(GroupHom::new(z2, z4.clone(), vec![z4.element(&[2]).unwrap()]).is_ok());
    }
}
