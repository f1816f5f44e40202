//! Univariate polynomials over a [`FieldDesc`], low-to-high coefficient vectors.

use super::field::{Felt, FieldDesc};
use super::matrix::Mat;

pub type Poly = Vec<Felt>;

pub fn trim(a: &mut Poly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn degree(a: &Poly) -> Option<usize> {
    let mut b = a.clone();
    trim(&mut b);
    b.len().checked_sub(1)
}

pub fn add(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_default();
            let y = b.get(i).copied().unwrap_or_default();
            f.add(x, y)
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Felt(0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &FieldDesc, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut b = b.clone();
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).expect("nonzero divisor");
    let mut r = a.clone();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Felt(0); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = f.mul(r[top], lead_inv);
        q[top - db] = c;
        let nc = f.neg(c);
        for (i, &bi) in b.iter().enumerate() {
            r[top - db + i] = f.add(r[top - db + i], f.mul(nc, bi));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &FieldDesc, a: &Poly) -> Poly {
    let mut a = a.clone();
    trim(&mut a);
    match a.last() {
        None => a,
        Some(&l) => {
            let li = f.inv(l).unwrap();
            a.iter().map(|&c| f.mul(c, li)).collect()
        }
    }
}

pub fn gcd(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn mulmod(f: &FieldDesc, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &FieldDesc, a: &Poly, mut k: u64, m: &Poly) -> Poly {
    let mut result = rem(f, &vec![f.one()], m);
    let mut base = rem(f, a, m);
    while k > 0 {
        if k & 1 == 1 {
            result = mulmod(f, &result, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        k >>= 1;
    }
    result
}

/// Evaluates `p(M)` for a square matrix.
pub fn eval_mat(f: &FieldDesc, p: &Poly, m: &Mat) -> Mat {
    let n = m.rows();
    let mut acc = Mat::zeros(f, n, n);
    for &c in p.iter().rev() {
        acc = acc.mul(m).add(&Mat::scalar(f, n, c));
    }
    acc
}

pub fn eval(f: &FieldDesc, p: &Poly, x: Felt) -> Felt {
    p.iter().rev().fold(Felt(0), |acc, &c| f.add(f.mul(acc, x), c))
}

/// Products of the irreducible factors of each degree (distinct-degree factorization).
/// Input must be squarefree-agnostic; returned pairs are `(d, product)`.
pub fn distinct_degree(f: &FieldDesc, a: &Poly) -> Vec<(usize, Poly)> {
    let q = f.q() as u64;
    let mut out = Vec::new();
    let mut rest = monic(f, a);
    let x: Poly = vec![Felt(0), f.one()];
    let mut xq = x.clone();
    let mut d = 0;
    while degree(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        xq = powmod(f, &xq, q, &rest);
        let g = gcd(f, &add(f, &xq, &x.iter().map(|&c| f.neg(c)).collect()), &rest);
        if degree(&g).unwrap_or(0) > 0 {
            // strip every power of the factors found at this degree
            loop {
                let g2 = gcd(f, &g, &rest);
                if degree(&g2).unwrap_or(0) == 0 {
                    break;
                }
                rest = divrem(f, &rest, &g2).0;
            }
            xq = rem(f, &xq, &rest);
            out.push((d, g));
        }
    }
    if degree(&rest).unwrap_or(0) > 0 {
        let dr = degree(&rest).unwrap();
        out.push((dr, rest));
    }
    out
}

pub fn is_irreducible(f: &FieldDesc, a: &Poly) -> bool {
    let Some(n) = degree(a) else { return false };
    if n == 0 {
        return false;
    }
    let dd = distinct_degree(f, a);
    dd.len() == 1 && dd[0].0 == n
}

/// Minimal polynomial of a square matrix (monic), via the Krylov relation on `I, M, M^2, ...`.
pub fn min_poly(f: &FieldDesc, m: &Mat) -> Poly {
    let n = m.rows();
    let mut powers: Vec<Vec<Felt>> = vec![Mat::identity(f, n).to_vec()];
    let mut cur = Mat::identity(f, n);
    loop {
        cur = cur.mul(m);
        let v = cur.to_vec();
        let k = powers.len();
        // solve sum c_i powers[i] = v
        let mut a = Mat::zeros(f, n * n, k + 1);
        for (i, p) in powers.iter().enumerate() {
            for (r, &x) in p.iter().enumerate() {
                a.set(r, i, x);
            }
        }
        for (r, &x) in v.iter().enumerate() {
            a.set(r, k, f.neg(x));
        }
        let ker = a.kernel();
        if let Some(sol) = ker.vectors().into_iter().find(|s| !s[k].is_zero()) {
            let lead = f.neg(f.inv(sol[k]).unwrap());
            let mut p: Poly = sol[..k].iter().map(|&c| f.mul(c, lead)).collect();
            p.push(f.one());
            return p;
        }
        powers.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn irreducibility_matches_root_count_in_low_degree() {
        let f = make_field(5, 1).unwrap();
        for a in 0..5u16 {
            for b in 0..5u16 {
                let p = vec![Felt(b), Felt(a), f.one()];
                let has_root = f.elements().any(|x| eval(&f, &p, x).is_zero());
                assert_eq!(is_irreducible(&f, &p), !has_root);
            }
        }
    }

    #[test]
    fn distinct_degree_splits_product() {
        let f = make_field(3, 1).unwrap();
        // (x^2 + 1)(x + 1)
        let p = mul(&f, &vec![f.one(), Felt(0), f.one()], &vec![f.one(), f.one()]);
        let dd = distinct_degree(&f, &p);
        assert_eq!(dd.iter().map(|x| x.0).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn min_poly_of_rotation() {
        let f = make_field(3, 1).unwrap();
        let m = Mat::from_ints(&f, 2, 2, &[0, 2, 1, 0]);
        assert_eq!(min_poly(&f, &m), vec![f.one(), Felt(0), f.one()]);
    }
}
