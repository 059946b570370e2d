use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Phase;

/// Coefficient vector of an element of `Q(ζ_N)` over the power basis `1, ζ, …, ζ^{φ(N)-1}`.
pub type Elem = Vec<BigRational>;

/// Reduction data for `Q(ζ_N) = Q[x]/Φ_N(x)`.
#[derive(Debug)]
pub struct CyclotomicField {
    n: u64,
    phi: usize,
    /// `powers[k]` is `x^k mod Φ_N` for `0 <= k < N`.
    powers: Vec<Vec<i64>>,
}

fn cyclotomic_poly(n: u64) -> Vec<i128> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_poly(d);
            num = poly_div_exact(&num, &div);
        }
    }
    num
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    let qlen = num.len() - dn;
    let mut q = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn] / lead;
        q[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

impl CyclotomicField {
    fn build(n: u64) -> CyclotomicField {
        assert!(n >= 1);
        let poly = cyclotomic_poly(n);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        if phi == 0 {
            unreachable!("cyclotomic polynomials have positive degree");
        }
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce the degree-phi term with the monic relation
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= top * poly[i] as i64;
                }
            }
        }
        CyclotomicField { n, phi, powers }
    }

    /// Shared field tables for conductor `n`.
    pub fn get(n: u64) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("field cache poisoned");
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(CyclotomicField::build(n)))
            .clone()
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&self) -> Elem {
        vec![BigRational::zero(); self.phi]
    }

    pub fn one(&self) -> Elem {
        self.from_integer(1)
    }

    pub fn from_integer(&self, k: i64) -> Elem {
        let mut e = self.zero();
        e[0] = BigRational::from_integer(BigInt::from(k));
        e
    }

    /// `x^k` for any integer `k`.
    pub fn power(&self, k: i128) -> Elem {
        let k = k.rem_euclid(self.n as i128) as usize;
        self.powers[k]
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect()
    }

    /// Embeds a phase whose order divides the conductor.
    pub fn from_phase(&self, p: Phase) -> Elem {
        let k = p
            .exponent_over(self.n)
            .unwrap_or_else(|| panic!("phase {p} does not live in Q(ζ_{})", self.n));
        self.power(k as i128)
    }

    /// Adds `c·x^k` into `acc`.
    pub fn add_scaled_power(&self, acc: &mut Elem, k: i128, c: i64) {
        let k = k.rem_euclid(self.n as i128) as usize;
        for (a, &p) in acc.iter_mut().zip(&self.powers[k]) {
            if p != 0 {
                *a += BigRational::from_integer(BigInt::from(p * c));
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &Elem, c: &BigRational) -> Elem {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let phi = self.phi;
        if phi == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut acc = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let mut out: Elem = acc[..phi].to_vec();
        for (k, c) in acc.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            let row = &self.powers[k % self.n as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        out
    }

    /// Multiplies by the phase `x^k` (a signed permutation-like map on the power basis).
    pub fn mul_phase(&self, a: &Elem, p: Phase) -> Elem {
        let k = p
            .exponent_over(self.n)
            .unwrap_or_else(|| panic!("phase {p} does not live in Q(ζ_{})", self.n));
        if k == 0 {
            return a.clone();
        }
        self.mul(a, &self.power(k as i128))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        let phi = self.phi;
        if phi == 1 {
            return Some(vec![a[0].recip()]);
        }
        // columns: a * x^j
        let cols: Vec<Elem> = (0..phi)
            .map(|j| self.mul(a, &self.power(j as i128)))
            .collect();
        // augmented system M b = e_0, rows indexed by coefficient position
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..phi).map(|j| cols[j][r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for c in 0..phi {
            let p = (c..phi).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, p);
            let piv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x *= &piv;
            }
            for r in 0..phi {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=phi {
                        let t = &f * &m[c][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        Some(m.into_iter().map(|row| row[phi].clone()).collect())
    }

    /// Re-expresses an element of `Q(ζ_N)` inside `Q(ζ_M)` for `N | M`.
    pub fn lift_to(&self, a: &Elem, target: &CyclotomicField) -> Elem {
        assert!(
            target.n % self.n == 0,
            "cannot lift Q(ζ_{}) into Q(ζ_{})",
            self.n,
            target.n
        );
        let step = (target.n / self.n) as i128;
        let mut out = target.zero();
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = target.power(k as i128 * step);
            for (o, x) in out.iter_mut().zip(p) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }
}

/// An element of a cyclotomic field together with its conductor.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Elem,
}

impl Cyclotomic {
    pub fn from_elem(conductor: u64, coeffs: Elem) -> Cyclotomic {
        let f = CyclotomicField::get(conductor);
        assert_eq!(coeffs.len(), f.degree());
        Cyclotomic { conductor, coeffs }
    }

    pub fn zero() -> Cyclotomic {
        Cyclotomic::from_integer(0)
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_integer(1)
    }

    pub fn from_integer(k: i64) -> Cyclotomic {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![BigRational::from_integer(BigInt::from(k))],
        }
    }

    pub fn from_phase(p: Phase) -> Cyclotomic {
        let n = p.denom();
        let f = CyclotomicField::get(n);
        Cyclotomic {
            conductor: n,
            coeffs: f.from_phase(p),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &Elem {
        &self.coeffs
    }

    pub fn field(&self) -> Arc<CyclotomicField> {
        CyclotomicField::get(self.conductor)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn lift(&self, conductor: u64) -> Cyclotomic {
        if conductor == self.conductor {
            return self.clone();
        }
        let from = self.field();
        let to = CyclotomicField::get(conductor);
        Cyclotomic {
            conductor,
            coeffs: from.lift_to(&self.coeffs, &to),
        }
    }

    /// Coefficients in `Q(ζ_N)`; panics unless the conductor divides `N`.
    pub fn elem_in(&self, field: &CyclotomicField) -> Elem {
        if field.conductor() == self.conductor {
            self.coeffs.clone()
        } else {
            self.field().lift_to(&self.coeffs, field)
        }
    }

    fn common(&self, other: &Cyclotomic) -> (Arc<CyclotomicField>, Elem, Elem) {
        let n = self.conductor.lcm(&other.conductor);
        let f = CyclotomicField::get(n);
        let a = self.elem_in(&f);
        let b = other.elem_in(&f);
        (f, a, b)
    }

    pub fn inv(&self) -> Option<Cyclotomic> {
        let f = self.field();
        f.inv(&self.coeffs).map(|coeffs| Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn mul_phase(&self, p: Phase) -> Cyclotomic {
        self * &Cyclotomic::from_phase(p)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (f, a, b) = self.common(rhs);
        Cyclotomic {
            conductor: f.conductor(),
            coeffs: f.add(&a, &b),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (f, a, b) = self.common(rhs);
        Cyclotomic {
            conductor: f.conductor(),
            coeffs: f.sub(&a, &b),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (f, a, b) = self.common(rhs);
        Cyclotomic {
            conductor: f.conductor(),
            coeffs: f.mul(&a, &b),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z{}^{k}", self.conductor)?,
                _ => write!(f, "{a}*z{}^{k}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}
