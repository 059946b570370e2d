use super::{Monomial, YDModule};
use crate::error::{Error, Result};

/// The braid generator `σ_i` acting on the left-bracketed tensor power `V^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidGenerator {
    pub n: usize,
    /// One-based position: `σ_i` braids factors `i` and `i+1`.
    pub i: usize,
    pub matrix: Monomial,
}

impl BraidGenerator {
    pub fn new(v: &YDModule, n: usize, i: usize) -> Result<BraidGenerator> {
        Ok(BraidGenerator {
            n,
            i,
            matrix: braiding_matrix(v, n, i)?,
        })
    }

    /// All generators `σ_1, …, σ_{n-1}`.
    pub fn all(v: &YDModule, n: usize) -> Result<Vec<BraidGenerator>> {
        (1..n).map(|i| BraidGenerator::new(v, n, i)).collect()
    }
}

/// Matrix of `σ_i` on `V^{⊗n}`, basis tensors indexed lexicographically with the
/// first factor most significant.
///
/// On a basis tensor `(A ⊗ X) ⊗ Y ⊗ …` with `A` the first `i-1` factors, the
/// braiding moves `X ⊗ Y` to `(x ▷ Y) ⊗ X` inside the re-bracketing
/// `(A⊗X)⊗Y → A⊗(X⊗Y) → A⊗(Y'⊗X) → (A⊗Y')⊗X`, which contributes the phase
/// `Φ(a,y,x) / Φ(a,x,y)`.
pub fn braiding_matrix(v: &YDModule, n: usize, i: usize) -> Result<Monomial> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, degree: n });
    }
    let d = v.dim();
    let total = d
        .checked_pow(n as u32)
        .ok_or_else(|| Error::BudgetExceeded { size: u128::MAX, budget: usize::MAX as u128 })?;
    let table = v.table();
    let deg = v.degree_indices();
    let stride_y = d.pow((n - i - 1) as u32);
    let stride_x = stride_y * d;
    let mut perm = Vec::with_capacity(total);
    let mut scal = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    for t in 0..total {
        let mut rest = t;
        for k in (0..n).rev() {
            digits[k] = rest % d;
            rest /= d;
        }
        let p = digits[..i - 1]
            .iter()
            .fold(0usize, |acc, &b| table.mul(acc, deg[b]));
        let (bx, by) = (digits[i - 1], digits[i]);
        let (x, y) = (deg[bx], deg[by]);
        let (by2, s) = v.action_idx(x).image(by);
        let target = t - bx * stride_x - by * stride_y + by2 * stride_x + bx * stride_y;
        perm.push(target);
        scal.push(table.phi(p, y, x) / table.phi(p, x, y) * s);
    }
    Monomial::new(perm, scal)
}
