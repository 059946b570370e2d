//! Brute-force Nichols algebra computations at small tensor degree.
//!
//! `B(V)_n` is computed as the image of the quantum symmetrizer on the left-bracketed
//! tensor power `V^{⊗n}`, built from the braid-group action of [`braiding_matrix`].

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::scalars::{cyc_rank, row_basis, Cyclotomic, CyclotomicField, Elem, Phase};
use crate::ydmod::{braiding_matrix, Monomial, YDModule};

/// Largest tensor power, in basis tensors, the oracle accepts by default.
pub const DEFAULT_BUDGET: u128 = 10_000;

/// An element of `V^{⊗n}`; basis tensors are indexed lexicographically, first factor
/// most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    degree: usize,
    coeffs: BTreeMap<usize, Cyclotomic>,
}

fn decode(mut t: usize, d: usize, n: usize) -> Vec<usize> {
    let mut w = vec![0; n];
    for k in (0..n).rev() {
        w[k] = t % d;
        t /= d;
    }
    w
}

fn encode(w: &[usize], d: usize) -> usize {
    w.iter().fold(0, |acc, &b| acc * d + b)
}

fn tensor_count(d: usize, n: usize) -> Result<usize> {
    (d as u128)
        .checked_pow(n as u32)
        .filter(|&s| s <= usize::MAX as u128)
        .map(|s| s as usize)
        .ok_or(Error::BudgetExceeded {
            size: u128::MAX,
            budget: usize::MAX as u128,
        })
}

impl TensorElement {
    pub fn zero(degree: usize) -> TensorElement {
        TensorElement {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit `1 ∈ V^{⊗0}`.
    pub fn unit() -> TensorElement {
        TensorElement {
            degree: 0,
            coeffs: BTreeMap::from([(0, Cyclotomic::one())]),
        }
    }

    /// The basis tensor `v_{w_1} ⊗ … ⊗ v_{w_n}` (zero-based basis indices).
    pub fn basis(v: &YDModule, word: &[usize]) -> Result<TensorElement> {
        if let Some(&b) = word.iter().find(|&&b| b >= v.dim()) {
            return Err(Error::Invalid(format!("basis index {b} out of range")));
        }
        tensor_count(v.dim(), word.len())?;
        Ok(TensorElement {
            degree: word.len(),
            coeffs: BTreeMap::from([(encode(word, v.dim()), Cyclotomic::one())]),
        })
    }

    pub fn from_coeffs(degree: usize, coeffs: impl IntoIterator<Item = (usize, Cyclotomic)>) -> TensorElement {
        let mut t = TensorElement::zero(degree);
        for (i, c) in coeffs {
            t.add_term(i, &c);
        }
        t
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Cyclotomic> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, i: usize, c: &Cyclotomic) {
        let e = self.coeffs.entry(i).or_insert_with(Cyclotomic::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    fn check_degree(&self, other: &TensorElement) -> Result<()> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Invalid(format!(
                "cannot add tensors of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_degree(other)?;
        let mut out = self.clone();
        out.degree = if self.is_zero() { other.degree } else { self.degree };
        for (&i, c) in &other.coeffs {
            out.add_term(i, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.add(&other.scale(&Cyclotomic::from_integer(-1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> TensorElement {
        TensorElement::from_coeffs(self.degree, self.coeffs.iter().map(|(&i, x)| (i, x * c)))
    }

    /// Group degree of each basis tensor in the support.
    fn group_degrees(&self, v: &YDModule) -> Vec<usize> {
        let t = v.table();
        self.coeffs
            .keys()
            .map(|&i| {
                decode(i, v.dim(), self.degree)
                    .iter()
                    .fold(0, |acc, &b| t.mul(acc, v.degree_indices()[b]))
            })
            .collect()
    }

    /// The common group degree, if the element is homogeneous and nonzero.
    pub fn group_degree(&self, v: &YDModule) -> Option<GroupElement> {
        let ds = self.group_degrees(v);
        let first = *ds.first()?;
        ds.iter().all(|&d| d == first).then(|| v.group().element_at(first))
    }

    /// `g ▷ (A ⊗ y) = Φ̃_g(a, y) (g ▷ A) ⊗ (g ▷ y)`, applied factor by factor.
    pub fn act(&self, v: &YDModule, g: &GroupElement) -> Result<TensorElement> {
        v.group().check(g)?;
        let gi = v.group().index_of(g);
        let (d, t, deg) = (v.dim(), v.table(), v.degree_indices());
        let m = v.action_idx(gi);
        let mut out = TensorElement::zero(self.degree);
        for (&i, c) in &self.coeffs {
            let w = decode(i, d, self.degree);
            let mut img = Vec::with_capacity(w.len());
            let mut s = Phase::ONE;
            let mut prefix = 0usize;
            for (k, &b) in w.iter().enumerate() {
                let (r, p) = m.image(b);
                if k > 0 {
                    s = s * t.tilde(gi, prefix, deg[b]);
                }
                s = s * p;
                prefix = t.mul(prefix, deg[b]);
                img.push(r);
            }
            out.add_term(encode(&img, d), &c.mul_phase(s));
        }
        Ok(out)
    }

    /// Product in `T(V)`: `A ⊗ (y_1 ⋯ y_b)` re-bracketed to the left, picking up
    /// `∏_{k≥2} Φ(a, y_1⋯y_{k-1}, y_k)`.
    pub fn mul(&self, v: &YDModule, other: &TensorElement) -> Result<TensorElement> {
        let (d, t, deg) = (v.dim(), v.table(), v.degree_indices());
        let n = self.degree + other.degree;
        let shift = tensor_count(d, other.degree)?;
        tensor_count(d, n)?;
        let da = self.group_degrees(v);
        let mut out = TensorElement::zero(n);
        for ((&i, ca), &a) in self.coeffs.iter().zip(&da) {
            for (&j, cb) in &other.coeffs {
                let w = decode(j, d, other.degree);
                let mut s = Phase::ONE;
                let mut prefix = 0usize;
                for (k, &b) in w.iter().enumerate() {
                    if k > 0 {
                        s = s * t.phi(a, prefix, deg[b]);
                    }
                    prefix = t.mul(prefix, deg[b]);
                }
                out.add_term(i * shift + j, &(ca * cb).mul_phase(s));
            }
        }
        Ok(out)
    }
}

/// Braided adjoint `ad_x(y) = x·y − (g_x ▷ y)·x` for `x` of tensor degree 1 and group degree `g_x`.
pub fn braided_adjoint(v: &YDModule, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    if x.degree() != 1 {
        return Err(Error::Invalid("ad_x needs x of tensor degree 1".into()));
    }
    if x.is_zero() {
        return Ok(TensorElement::zero(1 + y.degree()));
    }
    let g = x
        .group_degree(v)
        .ok_or_else(|| Error::Invalid("ad_x needs x homogeneous".into()))?;
    x.mul(v, y)?.sub(&y.act(v, &g)?.mul(v, x)?)
}

/// Sparse square matrix over `Q(ζ_N)`, stored by columns.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    conductor: u64,
    size: usize,
    cols: Vec<Vec<(usize, Elem)>>,
}

impl SparseMatrix {
    pub fn identity(conductor: u64, size: usize) -> SparseMatrix {
        let f = CyclotomicField::get(conductor);
        SparseMatrix {
            conductor,
            size,
            cols: (0..size).map(|c| vec![(c, f.one())]).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn get(&self, row: usize, col: usize) -> Cyclotomic {
        self.cols[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, e)| Cyclotomic::from_elem(self.conductor, e.clone()))
            .unwrap_or_else(Cyclotomic::zero)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn triplets(&self) -> Vec<(usize, usize, Cyclotomic)> {
        let mut out = Vec::new();
        for (c, col) in self.cols.iter().enumerate() {
            for (r, e) in col {
                out.push((*r, c, Cyclotomic::from_elem(self.conductor, e.clone())));
            }
        }
        out.sort_by_key(|t| (t.0, t.1));
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Cyclotomic>> {
        let mut m = vec![vec![Cyclotomic::zero(); self.size]; self.size];
        for (r, c, x) in self.triplets() {
            m[r][c] = x;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Rank, computed block by block over the connected components of the
    /// row/column incidence graph.
    pub fn rank(&self) -> usize {
        let n = self.size;
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (c, col) in self.cols.iter().enumerate() {
            for (r, _) in col {
                let (a, b) = (find(&mut parent, c), find(&mut parent, n + r));
                parent[a] = b;
            }
        }
        let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
        for c in 0..n {
            if !self.cols[c].is_empty() {
                let root = find(&mut parent, c);
                blocks.entry(root).or_default().push(c);
            }
        }
        let field = CyclotomicField::get(self.conductor);
        let mut rank = 0;
        for cols in blocks.values() {
            let mut rows: Vec<usize> = cols.iter().flat_map(|&c| self.cols[c].iter().map(|(r, _)| *r)).collect();
            rows.sort_unstable();
            rows.dedup();
            let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
            let dense: Vec<Vec<Elem>> = cols
                .iter()
                .map(|&c| {
                    let mut v = vec![field.zero(); rows.len()];
                    for (r, e) in &self.cols[c] {
                        v[pos[r]] = e.clone();
                    }
                    v
                })
                .collect();
            rank += row_basis(&field, dense).len();
        }
        rank
    }

    /// `M · x` for a coefficient map `x`.
    pub fn apply(&self, x: &TensorElement) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(); self.size];
        for (&c, coeff) in x.coeffs() {
            for (r, e) in &self.cols[c] {
                let m = Cyclotomic::from_elem(self.conductor, e.clone());
                out[*r] = &out[*r] + &(&m * coeff);
            }
        }
        out
    }
}

/// Graded piece of `B(V)` as the image of the symmetrizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrizerReport {
    pub degree: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub graded_dim: usize,
}

/// Symmetrizers of `V^{⊗k}` for `k ≤ max_degree`, built by the recursion
/// `S_k = (S_{k-1} ⊗ id)(1 + σ_{k-1} + σ_{k-1}σ_{k-2} + … + σ_{k-1}⋯σ_1)`.
#[derive(Clone, Debug)]
pub struct Symmetrizers {
    dim: usize,
    mats: Vec<SparseMatrix>,
}

impl Symmetrizers {
    pub fn new(v: &YDModule, max_degree: usize, budget: u128) -> Result<Symmetrizers> {
        let d = v.dim();
        let size = (d as u128).checked_pow(max_degree as u32).unwrap_or(u128::MAX);
        if size > budget {
            return Err(Error::BudgetExceeded { size, budget });
        }
        let gens: Vec<Monomial> = (1..max_degree)
            .map(|i| braiding_matrix(v, max_degree, i))
            .collect::<Result<_>>()?;
        let conductor = gens.iter().fold(1u64, |a, m| a.lcm(&m.conductor()));
        let field = CyclotomicField::get(conductor);
        let mut mats = vec![SparseMatrix::identity(conductor, 1)];
        for k in 1..=max_degree {
            if k == 1 {
                mats.push(SparseMatrix::identity(conductor, d));
                continue;
            }
            let sigma: Vec<Monomial> = (1..k).map(|i| braiding_matrix(v, k, i)).collect::<Result<_>>()?;
            // chains[j] = σ_{k-1} σ_{k-2} ⋯ σ_{k-j}
            let mut chains = vec![Monomial::identity(d.pow(k as u32))];
            for j in 1..k {
                let next = chains[j - 1].compose(&sigma[k - 1 - j]);
                chains.push(next);
            }
            let prev = &mats[k - 1];
            let size = d.pow(k as u32);
            let cols = (0..size)
                .map(|t| {
                    let mut acc: BTreeMap<usize, Elem> = BTreeMap::new();
                    for ch in &chains {
                        let (u, s) = ch.image(t);
                        let (uc, ul) = (u / d, u % d);
                        for (r, e) in &prev.cols[uc] {
                            let x = field.mul_phase(e, s);
                            let slot = acc.entry(r * d + ul).or_insert_with(|| field.zero());
                            *slot = field.add(slot, &x);
                        }
                    }
                    acc.into_iter().filter(|(_, e)| !field.is_zero(e)).collect()
                })
                .collect();
            mats.push(SparseMatrix { conductor, size, cols });
        }
        Ok(Symmetrizers { dim: d, mats })
    }

    pub fn max_degree(&self) -> usize {
        self.mats.len() - 1
    }

    pub fn matrix(&self, n: usize) -> &SparseMatrix {
        &self.mats[n]
    }

    pub fn report(&self, n: usize) -> SymmetrizerReport {
        let m = &self.mats[n];
        let rank = m.rank();
        SymmetrizerReport {
            degree: n,
            rank,
            kernel_dim: m.size() - rank,
            graded_dim: rank,
        }
    }

    pub fn hilbert_series(&self) -> Vec<usize> {
        (0..=self.max_degree()).map(|n| self.mats[n].rank()).collect()
    }

    fn check(&self, x: &TensorElement) -> Result<()> {
        if x.degree() > self.max_degree() {
            return Err(Error::Invalid(format!(
                "tensor degree {} exceeds the computed range",
                x.degree()
            )));
        }
        if x.coeffs().keys().any(|&i| i >= self.dim.pow(x.degree() as u32)) {
            return Err(Error::Invalid("tensor index out of range".into()));
        }
        Ok(())
    }

    /// Whether `x` vanishes in `B(V)`.
    pub fn in_kernel(&self, x: &TensorElement) -> Result<bool> {
        self.check(x)?;
        Ok(self.mats[x.degree()].apply(x).iter().all(Cyclotomic::is_zero))
    }

    /// Dimension of the span of the images of `xs` in `B(V)`; all of one tensor degree.
    pub fn image_rank(&self, xs: &[TensorElement]) -> Result<usize> {
        let rows = xs
            .iter()
            .map(|x| {
                self.check(x)?;
                Ok(self.mats[x.degree()].apply(x))
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::Invalid("elements of different tensor degrees".into()));
        }
        Ok(cyc_rank(&rows))
    }
}

/// `Σ_{w ∈ S_n} lift(w)` on `V^{⊗n}`.
pub fn symmetrizer(v: &YDModule, n: usize, budget: u128) -> Result<SparseMatrix> {
    Ok(Symmetrizers::new(v, n, budget)?.mats.swap_remove(n))
}

/// `dim B(V)_n`.
pub fn graded_dim(v: &YDModule, n: usize, budget: u128) -> Result<SymmetrizerReport> {
    let m = symmetrizer(v, n, budget)?;
    let rank = m.rank();
    Ok(SymmetrizerReport {
        degree: n,
        rank,
        kernel_dim: m.size() - rank,
        graded_dim: rank,
    })
}

/// `[dim B(V)_0, …, dim B(V)_N]`.
pub fn hilbert_series_oracle(v: &YDModule, max_degree: usize, budget: u128) -> Result<Vec<usize>> {
    Ok(Symmetrizers::new(v, max_degree, budget)?.hilbert_series())
}

/// Whether `x` is zero in `B(V)`.
pub fn in_nichols_ideal(v: &YDModule, x: &TensorElement, budget: u128) -> Result<bool> {
    Symmetrizers::new(v, x.degree(), budget)?.in_kernel(x)
}

/// Product of braid generators along a word of one-based letters, leftmost applied last.
pub fn lift_word(v: &YDModule, n: usize, word: &[usize]) -> Result<Monomial> {
    let d = tensor_count(v.dim(), n)?;
    let mut m = Monomial::identity(d);
    for &i in word {
        m = m.compose(&braiding_matrix(v, n, i)?);
    }
    Ok(m)
}

/// All reduced words of every permutation of `n` letters, keyed by the permutation.
pub fn reduced_words(n: usize) -> BTreeMap<Vec<usize>, Vec<Vec<usize>>> {
    let id: Vec<usize> = (0..n).collect();
    let mut out: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    out.insert(id.clone(), vec![Vec::new()]);
    let mut layer = vec![(id, Vec::<usize>::new())];
    let inversions = |p: &[usize]| -> usize {
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    };
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (p, w) in layer {
            for i in 1..n {
                let mut q = p.clone();
                q.swap(i - 1, i);
                if inversions(&q) == w.len() + 1 {
                    let mut w2 = w.clone();
                    w2.push(i);
                    out.entry(q.clone()).or_default().push(w2.clone());
                    next.push((q, w2));
                }
            }
        }
        layer = next;
    }
    out
}

/// Lifts along different reduced words of the same permutation agree.
pub fn matsumoto_consistent(v: &YDModule, n: usize) -> Result<bool> {
    for words in reduced_words(n).values() {
        let first = lift_word(v, n, &words[0])?;
        for w in &words[1..] {
            if lift_word(v, n, w)? != first {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
