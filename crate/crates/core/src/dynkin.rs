//! Generalized Dynkin diagrams, Weyl-groupoid root systems and the finite-type decision
//! for modules of diagonal type.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::scalars::Phase;
use crate::ydmod::{StandardBasis, YDModule};

/// Braiding matrix `q_ij = χ(e_i, e_j)` of a braided vector space of diagonal type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BicharacterDescriptor")]
pub struct Bicharacter {
    q: Vec<Vec<Phase>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degrees: Option<Vec<GroupElement>>,
}

#[derive(Deserialize)]
struct BicharacterDescriptor {
    q: Vec<Vec<Phase>>,
    #[serde(default)]
    degrees: Option<Vec<GroupElement>>,
}

impl TryFrom<BicharacterDescriptor> for Bicharacter {
    type Error = Error;
    fn try_from(d: BicharacterDescriptor) -> Result<Bicharacter> {
        let mut b = Bicharacter::new(d.q)?;
        if let Some(deg) = d.degrees {
            if deg.len() != b.rank() {
                return Err(Error::Invalid("one degree per vertex expected".into()));
            }
            b.degrees = Some(deg);
        }
        Ok(b)
    }
}

impl Bicharacter {
    pub fn new(q: Vec<Vec<Phase>>) -> Result<Bicharacter> {
        let n = q.len();
        if n == 0 || q.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("braiding matrix must be square and nonempty".into()));
        }
        Ok(Bicharacter { q, degrees: None })
    }

    pub fn from_standard_basis(sb: &StandardBasis) -> Bicharacter {
        Bicharacter {
            q: sb.q.clone(),
            degrees: Some(sb.degrees.clone()),
        }
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[Vec<Phase>] {
        &self.q
    }

    pub fn degrees(&self) -> Option<&[GroupElement]> {
        self.degrees.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> Phase {
        self.q[i][j]
    }

    /// `q̃_ij = q_ij q_ji`.
    pub fn q_tilde(&self, i: usize, j: usize) -> Phase {
        self.q[i][j] * self.q[j][i]
    }

    /// `q_α = ∏ q_ij^{α_i α_j}`.
    pub fn q_alpha(&self, alpha: &[i64]) -> Phase {
        let n = self.rank();
        let mut acc = Phase::ONE;
        for i in 0..n {
            for j in 0..n {
                acc = acc * self.q[i][j].pow((alpha[i] * alpha[j]) as i128);
            }
        }
        acc
    }

    pub fn diagram(&self) -> DynkinDiagram {
        let n = self.rank();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let t = self.q_tilde(i, j);
                if !t.is_one() {
                    edges.push((i, j, t));
                }
            }
        }
        DynkinDiagram {
            vertices: (0..n).map(|i| self.q[i][i]).collect(),
            edges,
        }
    }

    /// Cartan entry `c_ij`, or `None` when no `m` qualifies.
    pub fn cartan_entry(&self, i: usize, j: usize) -> Option<i64> {
        if i == j {
            return Some(2);
        }
        let qii = self.q[i][i];
        let t = self.q_tilde(i, j);
        if qii.is_one() {
            return t.is_one().then_some(0);
        }
        // (m+1)_{q_ii} vanishes at m = ord(q_ii) - 1, so the search stops there.
        let ord = qii.order() as i64;
        (0..ord)
            .find(|&m| m + 1 == ord || (qii.pow(m as i128) * t).is_one())
            .map(|m| -m)
    }

    pub fn cartan_matrix(&self) -> CartanMatrix {
        let n = self.rank();
        CartanMatrix((0..n).map(|i| (0..n).map(|j| self.cartan_entry(i, j)).collect()).collect())
    }

    /// Reflection at vertex `i`: `χ'(e_j, e_k) = χ(s_i e_j, s_i e_k)` with
    /// `s_i e_j = e_j - c_ij e_i`. `None` when row `i` of the Cartan matrix is undefined.
    pub fn reflect(&self, i: usize) -> Option<Bicharacter> {
        let n = self.rank();
        let c: Vec<i64> = (0..n).map(|j| self.cartan_entry(i, j)).collect::<Option<_>>()?;
        let q = &self.q;
        let r = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        q[j][k]
                            * q[i][k].pow(-c[j] as i128)
                            * q[j][i].pow(-c[k] as i128)
                            * q[i][i].pow((c[j] * c[k]) as i128)
                    })
                    .collect()
            })
            .collect();
        Some(Bicharacter {
            q: r,
            degrees: None,
        })
    }
}

/// Cartan matrix with `None` for undefined entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix(pub Vec<Vec<Option<i64>>>);

impl CartanMatrix {
    pub fn is_defined(&self) -> bool {
        self.0.iter().flatten().all(Option::is_some)
    }
}

/// Vertices labelled by `q_ii`; an edge `i — j` labelled `q̃_ij` whenever `q̃_ij ≠ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub vertices: Vec<Phase>,
    /// `(i, j, q̃_ij)` with `i < j`, in lexicographic order.
    pub edges: Vec<(usize, usize, Phase)>,
}

impl DynkinDiagram {
    pub fn from_standard_basis(sb: &StandardBasis) -> DynkinDiagram {
        Bicharacter::from_standard_basis(sb).diagram()
    }

    fn edge_label(&self, i: usize, j: usize) -> Option<Phase> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges.iter().find(|e| e.0 == a && e.1 == b).map(|e| e.2)
    }

    /// Equality up to a relabelling of the vertices.
    pub fn is_isomorphic(&self, other: &DynkinDiagram) -> bool {
        let n = self.vertices.len();
        if n != other.vertices.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut a = self.vertices.clone();
        let mut b = other.vertices.clone();
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, 0, &mut perm, &mut used)
    }

    fn extend_iso(&self, other: &DynkinDiagram, k: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
        let n = perm.len();
        if k == n {
            return true;
        }
        for t in 0..n {
            if used[t] || self.vertices[k] != other.vertices[t] {
                continue;
            }
            if (0..k).any(|p| self.edge_label(p, k) != other.edge_label(perm[p], t)) {
                continue;
            }
            perm[k] = t;
            used[t] = true;
            if self.extend_iso(other, k + 1, perm, used) {
                return true;
            }
            used[t] = false;
        }
        false
    }

    /// Graphviz rendering with phase-string labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dynkin {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{v}\"];");
        }
        for (i, j, t) in &self.edges {
            let _ = writeln!(s, "  v{i} -- v{j} [label=\"{t}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Exploration bounds for the Weyl-groupoid search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_objects: usize,
    pub max_roots: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_objects: 1024,
            max_roots: 512,
        }
    }
}

/// Why exploration stopped without a finite root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// Row `i` of the Cartan matrix at some object is undefined.
    UndefinedCartan { i: usize, j: usize },
    /// A root with coefficients of both signs.
    MixedSignRoot { root: Vec<i64> },
    /// A closed path of reflections whose automorphism of `Z^n` has infinite order,
    /// so the Weyl groupoid is infinite.
    InfiniteOrderLoop { word: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub finite: bool,
    /// Positive roots at the starting object, sorted by height then lexicographically.
    pub positive_roots: Vec<Vec<u64>>,
    pub objects_visited: usize,
    pub cap_hit: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
}

type IntMatrix = Vec<Vec<i128>>;

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let n = a.len();
    let mut c = vec![vec![0i128; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] = c[i][j].checked_add(a[i][k].checked_mul(b[k][j])?)?;
            }
        }
    }
    Some(c)
}

/// `s_i` as a matrix acting on column vectors: `s_i(e_j) = e_j - c_ij e_i`.
fn reflection_matrix(c: &[Vec<i64>], i: usize) -> IntMatrix {
    let n = c.len();
    let mut m: IntMatrix = (0..n).map(|r| (0..n).map(|k| (r == k) as i128).collect()).collect();
    for j in 0..n {
        m[i][j] -= c[i][j] as i128;
    }
    m
}

/// Least common multiple of all `k` with `φ(k) ≤ n`: every element of finite
/// order in `GL_n(Z)` has order dividing it.
fn finite_order_bound(n: usize) -> u64 {
    let phi = |k: u64| (1..=k).filter(|j| j.gcd(&k) == 1).count();
    (1..=(2 * n * n + 2) as u64)
        .filter(|&k| phi(k) <= n)
        .fold(1, |a, k| a.lcm(&k))
}

/// `Some(true)` when `m` provably has infinite order; `None` if the entries overflow.
fn has_infinite_order(m: &IntMatrix) -> Option<bool> {
    let n = m.len();
    let id: IntMatrix = (0..n).map(|r| (0..n).map(|k| (r == k) as i128).collect()).collect();
    let mut e = finite_order_bound(n);
    let (mut acc, mut base) = (id.clone(), m.clone());
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base)?;
        }
    }
    Some(acc != id)
}

struct Explorer {
    n: usize,
    caps: Caps,
    objects: Vec<Bicharacter>,
    index: HashMap<Bicharacter, usize>,
    cartan: Vec<Vec<Vec<i64>>>,
    neighbours: Vec<Vec<Option<usize>>>,
    /// Reflection word from the start to each object along the exploration tree.
    words: Vec<Vec<usize>>,
    /// Maps coordinates at each object to coordinates at the start, and back.
    to_start: Vec<IntMatrix>,
    from_start: Vec<IntMatrix>,
    roots: Vec<HashSet<Vec<i64>>>,
    queue: VecDeque<(usize, Vec<i64>)>,
}

enum Stop {
    Cap,
    Obstruction(Obstruction),
}

impl Explorer {
    fn unit(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|k| (k == j) as i64).collect()
    }

    fn add_object(&mut self, b: Bicharacter, word: Vec<usize>, to: IntMatrix, from: IntMatrix) -> std::result::Result<usize, Stop> {
        if self.objects.len() >= self.caps.max_objects {
            return Err(Stop::Cap);
        }
        let c = b.cartan_matrix();
        if let Some((i, j)) = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| c.0[i][j].is_none())
        {
            return Err(Stop::Obstruction(Obstruction::UndefinedCartan { i, j }));
        }
        let o = self.objects.len();
        self.cartan
            .push(c.0.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect());
        self.neighbours.push(vec![None; self.n]);
        self.words.push(word);
        self.to_start.push(to);
        self.from_start.push(from);
        self.index.insert(b.clone(), o);
        self.objects.push(b);
        // every object carries its simple roots
        self.roots.push(HashSet::new());
        for j in 0..self.n {
            let e = self.unit(j);
            self.roots[o].insert(e.clone());
            self.queue.push_back((o, e));
        }
        Ok(o)
    }

    fn neighbour(&mut self, o: usize, i: usize) -> std::result::Result<usize, Stop> {
        if let Some(t) = self.neighbours[o][i] {
            return Ok(t);
        }
        let r = self.objects[o].reflect(i).expect("Cartan row is defined");
        let s = reflection_matrix(&self.cartan[o], i);
        let mut word = self.words[o].clone();
        word.push(i);
        let t = match self.index.get(&r) {
            Some(&t) => {
                // a closed path: start → o → t → start
                if t != o {
                    let to_o = mat_mul(&self.to_start[o], &s);
                    let lp = to_o.and_then(|m| mat_mul(&m, &self.from_start[t]));
                    if let Some(true) = lp.as_ref().and_then(has_infinite_order) {
                        word.extend(self.words[t].iter().rev());
                        return Err(Stop::Obstruction(Obstruction::InfiniteOrderLoop { word }));
                    }
                }
                t
            }
            None => {
                let to = mat_mul(&self.to_start[o], &s).unwrap_or_default();
                let from = mat_mul(&s, &self.from_start[o]).unwrap_or_default();
                self.add_object(r, word, to, from)?
            }
        };
        self.neighbours[o][i] = Some(t);
        Ok(t)
    }

    fn run(&mut self) -> std::result::Result<(), Stop> {
        while let Some((o, alpha)) = self.queue.pop_front() {
            for i in 0..self.n {
                let t = self.neighbour(o, i)?;
                let c = &self.cartan[o];
                let shift: i64 = (0..self.n).map(|j| c[i][j] * alpha[j]).sum();
                let mut beta = alpha.clone();
                beta[i] -= shift;
                let pos = beta.iter().all(|&x| x >= 0);
                let neg = beta.iter().all(|&x| x <= 0);
                if !pos && !neg {
                    return Err(Stop::Obstruction(Obstruction::MixedSignRoot { root: beta }));
                }
                if self.roots[t].insert(beta.clone()) {
                    if self.roots[t].len() > 2 * self.caps.max_roots {
                        return Err(Stop::Cap);
                    }
                    self.queue.push_back((t, beta));
                }
            }
        }
        Ok(())
    }
}

/// Closes the sets of real roots under all reflections of the Weyl groupoid.
///
/// Each object carries the roots known there, in its own coordinates; reflecting
/// at vertex `i` carries them to the reflected object via `s_i`. The exploration
/// closes exactly when the groupoid has finitely many objects and roots. Closed
/// paths through already visited objects are checked for automorphisms of
/// infinite order, which prove the groupoid infinite.
pub fn root_system(b: &Bicharacter, caps: Caps) -> RootSystem {
    let n = b.rank();
    let id: IntMatrix = (0..n).map(|r| (0..n).map(|k| (r == k) as i128).collect()).collect();
    let mut ex = Explorer {
        n,
        caps,
        objects: Vec::new(),
        index: HashMap::new(),
        cartan: Vec::new(),
        neighbours: Vec::new(),
        words: Vec::new(),
        to_start: Vec::new(),
        from_start: Vec::new(),
        roots: Vec::new(),
        queue: VecDeque::new(),
    };
    let start = Bicharacter::new(b.q.clone()).expect("valid");
    let outcome = ex
        .add_object(start, Vec::new(), id.clone(), id)
        .and_then(|_| ex.run());
    let (finite, cap_hit, obstruction) = match outcome {
        Ok(()) => (true, false, None),
        Err(Stop::Cap) => (false, true, None),
        Err(Stop::Obstruction(o)) => (false, false, Some(o)),
    };
    let mut pos: Vec<Vec<u64>> = ex
        .roots
        .first()
        .map(|r| {
            r.iter()
                .filter(|r| r.iter().all(|&x| x >= 0))
                .map(|r| r.iter().map(|&x| x as u64).collect())
                .collect()
        })
        .unwrap_or_default();
    pos.sort_by_key(|r: &Vec<u64>| (r.iter().sum::<u64>(), r.clone()));
    RootSystem {
        finite,
        positive_roots: pos,
        objects_visited: ex.objects.len(),
        cap_hit,
        obstruction,
    }
}

/// Heights `ord(q_α)` of the positive roots; `None` marks `q_α = 1`.
pub fn heights(rs: &RootSystem, b: &Bicharacter) -> Vec<Option<u64>> {
    rs.positive_roots
        .iter()
        .map(|r| {
            let a: Vec<i64> = r.iter().map(|&x| x as i64).collect();
            let qa = b.q_alpha(&a);
            (!qa.is_one()).then(|| qa.order())
        })
        .collect()
}

/// `∏ ht(α)`.
pub fn nichols_dimension(heights: &[u64]) -> Result<u128> {
    heights.iter().try_fold(1u128, |acc, &h| {
        acc.checked_mul(h as u128)
            .ok_or_else(|| Error::Invalid("dimension overflows u128".into()))
    })
}

/// Coefficients of `∏_α (1 + t^{|α|} + … + t^{(ht(α)-1)|α|})` in degrees `0..=max_degree`.
pub fn hilbert_prediction(roots: &[Vec<u64>], heights: &[u64], max_degree: usize) -> Vec<u128> {
    let mut series = vec![0u128; max_degree + 1];
    series[0] = 1;
    for (r, &h) in roots.iter().zip(heights) {
        let len = r.iter().sum::<u64>() as usize;
        let mut next = vec![0u128; max_degree + 1];
        for (d, &c) in series.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for k in 0..h as usize {
                let e = d + k * len;
                if e > max_degree {
                    break;
                }
                next[e] += c;
            }
        }
        series = next;
    }
    series
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Infinite,
    Inconclusive,
}

/// Evidence behind a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The associator is nonabelian on the support group, so no standard basis exists.
    NoStandardBasis,
    UndefinedCartan { i: usize, j: usize },
    MixedSignRoot { root: Vec<i64> },
    /// Reflection word of a closed path with an automorphism of infinite order.
    InfiniteWeylGroupoid { word: Vec<usize> },
    /// A positive root with `q_α = 1`.
    InfiniteHeight { root: Vec<u64> },
    CapHit { objects: usize },
    /// Finite root system with finite heights.
    RootSystem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteTypeReport {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub standard_basis: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bicharacter: Option<Bicharacter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_roots: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_b: Option<u128>,
}

/// Finite-type decision for a braided vector space of diagonal type.
pub fn bicharacter_finite_type(b: &Bicharacter, caps: Caps) -> FiniteTypeReport {
    let rs = root_system(b, caps);
    let mut report = FiniteTypeReport {
        verdict: Verdict::Infinite,
        certificate: Certificate::RootSystem,
        standard_basis: true,
        bicharacter: Some(b.clone()),
        positive_roots: None,
        heights: None,
        dim_b: None,
    };
    if rs.cap_hit {
        report.verdict = Verdict::Inconclusive;
        report.certificate = Certificate::CapHit {
            objects: rs.objects_visited,
        };
        return report;
    }
    match rs.obstruction {
        Some(Obstruction::UndefinedCartan { i, j }) => {
            report.certificate = Certificate::UndefinedCartan { i, j };
            return report;
        }
        Some(Obstruction::MixedSignRoot { root }) => {
            report.certificate = Certificate::MixedSignRoot { root };
            return report;
        }
        Some(Obstruction::InfiniteOrderLoop { word }) => {
            report.certificate = Certificate::InfiniteWeylGroupoid { word };
            return report;
        }
        None => {}
    }
    let hs = heights(&rs, b);
    if let Some(k) = hs.iter().position(Option::is_none) {
        report.certificate = Certificate::InfiniteHeight {
            root: rs.positive_roots[k].clone(),
        };
        return report;
    }
    let hs: Vec<u64> = hs.into_iter().map(Option::unwrap).collect();
    report.dim_b = nichols_dimension(&hs).ok();
    report.verdict = Verdict::Finite;
    report.positive_roots = Some(rs.positive_roots);
    report.heights = Some(hs);
    report
}

/// Finite-type decision for a module: infinite without a standard basis, otherwise
/// decided on the braiding matrix of a standard basis.
pub fn is_finite_type(v: &YDModule, caps: Caps) -> FiniteTypeReport {
    match v.has_standard_basis() {
        None => FiniteTypeReport {
            verdict: Verdict::Infinite,
            certificate: Certificate::NoStandardBasis,
            standard_basis: false,
            bicharacter: None,
            positive_roots: None,
            heights: None,
            dim_b: None,
        },
        Some(sb) => bicharacter_finite_type(&Bicharacter::from_standard_basis(&sb), caps),
    }
}

/// `dim B(V) · |G|`.
pub fn bosonization_dimension(v: &YDModule, caps: Caps) -> Result<u128> {
    let r = is_finite_type(v, caps);
    match (r.verdict, r.dim_b) {
        (Verdict::Finite, Some(d)) => d
            .checked_mul(v.group().order() as u128)
            .ok_or_else(|| Error::Invalid("dimension overflows u128".into())),
        _ => Err(Error::NotFiniteType),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ydmod::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bich(q: Vec<Vec<Phase>>) -> Bicharacter {
        Bicharacter::new(q).unwrap()
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(bich(fixtures::a2_minus_one()).cartan_entry(0, 1), Some(-1));
        assert_eq!(bich(fixtures::a2_zeta5()).cartan_entry(0, 1), Some(-1));
        let m = Phase::MINUS_ONE;
        assert_eq!(bich(vec![vec![m, Phase::ONE], vec![Phase::ONE, m]]).cartan_entry(0, 1), Some(0));
        let b = bich(vec![vec![Phase::ONE, m], vec![Phase::ONE, m]]);
        assert_eq!(b.cartan_entry(0, 1), None);
        assert!(!b.cartan_matrix().is_defined());
        // q_11 = ζ_3, q̃ = ζ_3: only (3)_{ζ_3} = 0 qualifies
        let z = Phase::zeta(3, 1);
        assert_eq!(bich(vec![vec![z, z], vec![Phase::ONE, m]]).cartan_entry(0, 1), Some(-2));
    }

    #[test]
    fn rank_one() {
        let b = bich(fixtures::rank_one_minus_one());
        let rs = root_system(&b, Caps::default());
        assert!(rs.finite);
        assert_eq!(rs.positive_roots, vec![vec![1]]);
        assert_eq!(heights(&rs, &b), vec![Some(2)]);
        let z = bich(vec![vec![Phase::zeta(5, 1)]]);
        assert_eq!(heights(&root_system(&z, Caps::default()), &z), vec![Some(5)]);
    }

    #[test]
    fn a2_examples() {
        let b = bich(fixtures::a2_minus_one());
        let rs = root_system(&b, Caps::default());
        assert!(rs.finite);
        assert_eq!(rs.positive_roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let h: Vec<u64> = heights(&rs, &b).into_iter().map(Option::unwrap).collect();
        assert_eq!(h, vec![2, 2, 2]);
        assert_eq!(nichols_dimension(&h).unwrap(), 8);
        assert_eq!(hilbert_prediction(&rs.positive_roots, &h, 4), vec![1, 2, 2, 2, 1]);

        let b = bich(fixtures::a2_zeta5());
        let r = bicharacter_finite_type(&b, Caps::default());
        assert_eq!(r.verdict, Verdict::Finite);
        assert_eq!(r.dim_b, Some(125));
        let p = hilbert_prediction(r.positive_roots.as_ref().unwrap(), r.heights.as_ref().unwrap(), 4);
        assert_eq!(p[2], 4);
    }

    #[test]
    fn a3_and_standard_super_type() {
        let b = bich(fixtures::a3_minus_one());
        let r = bicharacter_finite_type(&b, Caps::default());
        assert_eq!(r.verdict, Verdict::Finite);
        assert_eq!(r.positive_roots.unwrap().len(), 6);
        assert_eq!(r.dim_b, Some(64));
    }

    #[test]
    fn cartan_type_b2_and_g2() {
        // B2 at q = ζ_5: q_11 = q^2, q_22 = q, q̃ = q^{-2}
        let q = Phase::zeta(5, 1);
        let b = bich(vec![vec![q.pow(2), q.pow(-2)], vec![Phase::ONE, q]]);
        let r = bicharacter_finite_type(&b, Caps::default());
        assert_eq!(r.verdict, Verdict::Finite);
        assert_eq!(r.positive_roots.unwrap().len(), 4);
        // G2 at q = ζ_7: q_11 = q, q_22 = q^3, q̃ = q^{-3}
        let q = Phase::zeta(7, 1);
        let b = bich(vec![vec![q, q.pow(-3)], vec![Phase::ONE, q.pow(3)]]);
        let r = bicharacter_finite_type(&b, Caps::default());
        assert_eq!(r.verdict, Verdict::Finite);
        assert_eq!(r.positive_roots.unwrap().len(), 6);
    }

    #[test]
    fn affine_type_is_not_finite() {
        // Â1 at q = ζ_5: Cartan entries -2, so the groupoid has infinitely many roots
        let q = Phase::zeta(5, 1);
        let b = bich(vec![vec![q, q.pow(-2)], vec![Phase::ONE, q]]);
        let r = bicharacter_finite_type(&b, Caps::default());
        assert_ne!(r.verdict, Verdict::Finite);
    }

    #[test]
    fn heights_reject_trivial_q_alpha() {
        let b = bich(vec![vec![Phase::ONE]]);
        let r = bicharacter_finite_type(&b, Caps::default());
        assert_eq!(r.verdict, Verdict::Infinite);
        assert_eq!(r.certificate, Certificate::InfiniteHeight { root: vec![1] });
    }

    #[test]
    fn prop71_and_prop76_are_infinite() {
        let v = fixtures::prop71_module(&fixtures::Prop71Constants::normalized()).unwrap();
        let r = is_finite_type(&v, Caps::default());
        assert_eq!(r.verdict, Verdict::Infinite);
        assert_eq!(r.certificate, Certificate::NoStandardBasis);
        assert!(!r.standard_basis);
        let w = fixtures::prop76_module().unwrap();
        let r = is_finite_type(&w, Caps::default());
        assert_eq!(r.verdict, Verdict::Infinite);
    }

    #[test]
    fn prop76_diagram() {
        let v = fixtures::prop76_module().unwrap();
        let d = DynkinDiagram::from_standard_basis(&v.has_standard_basis().unwrap());
        assert_eq!(d.vertices, vec![Phase::MINUS_ONE; 4]);
        let i = Phase::zeta(4, 1);
        let m = Phase::MINUS_ONE;
        // Y1 — Z1 — Y2 — Z2 — Y1
        assert_eq!(d.edges, vec![(0, 2, i), (0, 3, i * m), (1, 2, i * m), (1, 3, i)]);
        assert!(d.to_dot().contains("v0 -- v2 [label=\"1/4\"]"));
    }

    #[test]
    fn diagram_trivial_cases() {
        let d = bich(fixtures::rank_one_minus_one()).diagram();
        assert_eq!(d.vertices, vec![Phase::MINUS_ONE]);
        assert!(d.edges.is_empty());
        let m = Phase::MINUS_ONE;
        let d = bich(vec![vec![m, Phase::zeta(4, 1)], vec![Phase::zeta(4, 3), m]]).diagram();
        assert!(d.edges.is_empty());
    }

    #[test]
    fn bosonization_examples() {
        let v = YDModule::from_bicharacter(&fixtures::rank_one_minus_one()).unwrap();
        assert_eq!(bosonization_dimension(&v, Caps::default()).unwrap(), 4);
        let v = YDModule::from_bicharacter(&fixtures::a2_minus_one()).unwrap();
        assert_eq!(bosonization_dimension(&v, Caps::default()).unwrap(), 32);
        let v = YDModule::from_bicharacter(&fixtures::a2_zeta5()).unwrap();
        assert_eq!(bosonization_dimension(&v, Caps::default()).unwrap(), 3125);
        let v = fixtures::prop71_module(&fixtures::Prop71Constants::normalized()).unwrap();
        assert!(matches!(bosonization_dimension(&v, Caps::default()), Err(Error::NotFiniteType)));
    }

    fn random_bicharacter(rng: &mut ChaCha8Rng, n: usize) -> Bicharacter {
        let q = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let d = rng.gen_range(1..=12u64);
                        Phase::zeta(d, rng.gen_range(0..d) as i128)
                    })
                    .collect()
            })
            .collect();
        bich(q)
    }

    #[test]
    fn reflection_is_involutive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        for _ in 0..400 {
            let n = rng.gen_range(1..=3);
            let b = random_bicharacter(&mut rng, n);
            for i in 0..n {
                if let Some(r) = b.reflect(i) {
                    assert_eq!(r.cartan_matrix().0[i], b.cartan_matrix().0[i]);
                    assert_eq!(r.reflect(i).unwrap(), b);
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn diagram_independent_of_eigenbasis_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = fixtures::Prop71Constants::normalized();
        let (u, v, _) = fixtures::prop71_simples(&c).unwrap();
        let sb = YDModule::direct_sum(&[u, v]).unwrap().has_standard_basis().unwrap();
        let d = DynkinDiagram::from_standard_basis(&sb);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..sb.rank()).collect();
            for k in (1..perm.len()).rev() {
                perm.swap(k, rng.gen_range(0..=k));
            }
            let q: Vec<Vec<Phase>> = perm
                .iter()
                .map(|&i| perm.iter().map(|&j| sb.q[i][j]).collect())
                .collect();
            assert!(bich(q).diagram().is_isomorphic(&d));
        }
    }

    #[test]
    fn json_round_trip() {
        let b = bich(fixtures::a2_zeta5());
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<Bicharacter>(&s).unwrap(), b);
        assert!(serde_json::from_str::<Bicharacter>(r#"{"q":[["0","0"]]}"#).is_err());
    }
}
