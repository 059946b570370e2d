//! Finding `J` with `∂J = Φ` for a 3-coboundary `Φ`, as a linear system over `Z/M`.
//!
//! Unknowns are the values `J(x, g_l)` on generators. Every other value is
//! propagated from them along the canonical word of its second argument, and the
//! remaining coboundary equations with a generator in the last slot become the
//! linear constraints. Those equations suffice: if `∂J` and `Φ` agree whenever
//! the third argument is a generator, the cocycle identity extends the agreement
//! to all triples.

use std::collections::HashSet;

use num_integer::Integer;

use super::{Associator, Cochain2};
use crate::error::{Error, Result};
use crate::scalars::Phase;

/// A normalized `J` with `∂J = target`, or `NotACoboundary`.
///
/// Values are solved in exponent space modulo `M = D·exp(K)`, where `D` is the
/// common order of the target's values. If `∂J = Φ` has any solution then `J^D`
/// is a 2-cocycle whose class has order dividing `exp(K)`, so a solution with
/// values of order dividing `M` exists. Free variables are set to zero.
pub fn solve_coboundary(target: &Associator) -> Result<Cochain2> {
    let t = target.table();
    let k = t.group().clone();
    let n = k.order();
    let rank = k.rank();
    let m = t.denominator() * k.exponent();
    let scale = k.exponent();
    let tv = |a: usize, b: usize, c: usize| (t.num(a, b, c) * scale) % m;

    let gens: Vec<usize> = (0..rank)
        .filter(|&l| k.factors()[l] > 1)
        .map(|l| k.index_of(&k.generator(l)))
        .collect();
    let gen_pos = |l: usize| gens.iter().position(|&g| g == k.index_of(&k.generator(l)));

    // variable u(x, l) for x != 1
    let nvars = (n - 1) * gens.len();
    let var = |x: usize, li: usize| (x - 1) * gens.len() + li;

    #[derive(Clone)]
    struct Form {
        coef: Vec<u64>,
        c: u64,
    }
    let zero = Form {
        coef: vec![0; nvars],
        c: 0,
    };
    let add = |acc: &mut Form, f: &Form, sign: bool| {
        for (a, &b) in acc.coef.iter_mut().zip(&f.coef) {
            *a = if sign { (*a + b) % m } else { (*a + m - b) % m };
        }
        acc.c = if sign { (acc.c + f.c) % m } else { (acc.c + m - f.c) % m };
    };
    let u_form = |x: usize, li: usize| {
        let mut f = zero.clone();
        if x != 0 {
            f.coef[var(x, li)] = 1;
        }
        f
    };

    // J(a, b) as a form, filled in increasing order of b
    let elems = k.elements();
    let mut forms: Vec<Form> = vec![zero.clone(); n * n];
    for b in 1..n {
        let be = elems[b].exponents();
        let l = (0..rank).rev().find(|&l| be[l] != 0).expect("b is not the identity");
        let li = gen_pos(l).expect("nontrivial factor");
        let mut prev = be.iter().map(|&x| x as i64).collect::<Vec<_>>();
        prev[l] -= 1;
        let bp = k.index_of(&k.element(&prev).expect("valid exponents"));
        for a in 0..n {
            let f = if bp == 0 {
                u_form(a, li)
            } else {
                let mut f = u_form(t.mul(a, bp), li);
                add(&mut f, &forms[a * n + bp], true);
                add(&mut f, &u_form(bp, li), false);
                f.c = (f.c + tv(a, bp, gens[li])) % m;
                f
            };
            forms[a * n + b] = f;
        }
    }

    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut rhs: Vec<u64> = Vec::new();
    let mut seen: HashSet<(Vec<u64>, u64)> = HashSet::new();
    for a in 0..n {
        for b in 0..n {
            for (li, &g) in gens.iter().enumerate() {
                let mut f = u_form(b, li);
                add(&mut f, &forms[a * n + t.mul(b, g)], true);
                add(&mut f, &u_form(t.mul(a, b), li), false);
                add(&mut f, &forms[a * n + b], false);
                let r = (tv(a, b, g) + m - f.c) % m;
                if f.coef.iter().all(|&x| x == 0) {
                    if r != 0 {
                        return Err(Error::NotACoboundary);
                    }
                    continue;
                }
                if seen.insert((f.coef.clone(), r)) {
                    rows.push(f.coef);
                    rhs.push(r);
                }
            }
        }
    }

    let sol = solve_mod(&rows, &rhs, nvars, m).ok_or(Error::NotACoboundary)?;

    let mut values = Vec::with_capacity(n * n);
    for f in &forms {
        let mut v = f.c as u128;
        for (c, x) in f.coef.iter().zip(&sol) {
            v += *c as u128 * *x as u128;
        }
        values.push(Phase::new((v % m as u128) as i128, m));
    }
    let j = Cochain2::new(k, values)?;
    let check = j.coboundary().table();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if check.phi(a, b, c) != t.phi(a, b, c) {
                    return Err(Error::NotACoboundary);
                }
            }
        }
    }
    Ok(j)
}

fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn mod_inv(a: u64, q: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(q as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(q as i128) as u64
}

fn valuation(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Solves `A x = b` over `Z/m`, free variables zero, combining prime-power solutions by CRT.
pub(crate) fn solve_mod(rows: &[Vec<u64>], rhs: &[u64], nvars: usize, m: u64) -> Option<Vec<u64>> {
    let mut x = vec![0u64; nvars];
    let mut modulus = 1u64;
    for (p, e) in factor(m) {
        let q = p.pow(e);
        let local = solve_prime_power(rows, rhs, nvars, p, e)?;
        // combine x (mod modulus) with local (mod q)
        let inv = mod_inv(modulus % q, q);
        for (xi, li) in x.iter_mut().zip(local) {
            let t = ((li + q - *xi % q) % q) as u128 * inv as u128 % q as u128;
            *xi += (t as u64) * modulus;
        }
        modulus *= q;
    }
    Some(x)
}

fn solve_prime_power(rows: &[Vec<u64>], rhs: &[u64], nvars: usize, p: u64, e: u32) -> Option<Vec<u64>> {
    let q = p.pow(e);
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % q).collect()).collect();
    let mut b: Vec<u64> = rhs.iter().map(|&x| x % q).collect();
    let mut pivots: Vec<(usize, u32)> = Vec::new();
    let mut used = vec![false; nvars];
    let mut r = 0;
    while r < a.len() {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(r) {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 && !used[c] {
                    let val = valuation(v, p);
                    if best.is_none_or(|(_, _, bv)| val < bv) {
                        best = Some((i, c, val));
                        if val == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((i, c, v)) = best else { break };
        a.swap(r, i);
        b.swap(r, i);
        used[c] = true;
        let pv = p.pow(v);
        let unit_inv = mod_inv(a[r][c] / pv, q) as u128;
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let br = b[r] as u128;
        for (k, row) in rest.iter_mut().enumerate() {
            if row[c] == 0 {
                continue;
            }
            let f = ((row[c] / pv) as u128 * unit_inv % q as u128) as u64;
            for (x, &y) in row.iter_mut().zip(prow.iter()) {
                if y != 0 {
                    *x = (*x + q - (f as u128 * y as u128 % q as u128) as u64) % q;
                }
            }
            let bk = &mut b[r + 1 + k];
            *bk = (*bk + q - (f as u128 * br % q as u128) as u64) % q;
        }
        pivots.push((c, v));
        r += 1;
    }
    if b[r..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut x = vec![0u64; nvars];
    for (k, &(c, v)) in pivots.iter().enumerate().rev() {
        let mut s = b[k] as u128;
        for (j, &coef) in a[k].iter().enumerate() {
            if j != c && coef != 0 {
                s = (s + q as u128 - coef as u128 * x[j] as u128 % q as u128) % q as u128;
            }
        }
        let pv = p.pow(v);
        if s as u64 % pv != 0 {
            return None;
        }
        let qv = q / pv;
        let unit = (a[k][c] / pv) % qv;
        x[c] = ((s as u64 / pv) as u128 * mod_inv(unit, qv) as u128 % qv as u128) as u64;
    }
    Some(x)
}
