//! Realizing an absolutely irreducible representation over a smaller field.
//!
//! With `sigma = x -> x^(p^d)`, an intertwiner `A` with `A g = g^sigma A` is
//! rescaled so its norm `A^(sigma^(k-1)) ... A^sigma A` is the identity; then
//! `X = sum_i C_i Y^(sigma^i)` with `C_0 = I`, `C_i = A^-1 C_(i-1)^sigma` satisfies
//! `X^sigma = A X`, and `X^-1 g X` is fixed by `sigma` whenever `X` is invertible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::intertwiners;
use crate::error::{Error, Result};
use crate::gf::{Felt, Mat};
use crate::group::Group;

/// Smallest `d` dividing `e` with every trace of the group in `GF(p^d)`.
pub fn trace_field_degree(g: &Group) -> u32 {
    let f = g.field();
    let e = f.e();
    let traces: Vec<Felt> = {
        let mut t: Vec<Felt> = g.elements().iter().map(|x| x.trace()).collect();
        t.sort();
        t.dedup();
        t
    };
    (1..=e)
        .filter(|d| e.is_multiple_of(*d))
        .find(|&d| traces.iter().all(|&t| f.in_subfield(t, d)))
        .unwrap_or(e)
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalField {
    /// Degree over the prime field of the field generated by traces.
    pub degree: u32,
    /// Basis change `X` with `X^-1 g X` over `GF(p^degree)`, when one was found.
    #[serde(skip)]
    pub certificate: Option<Mat>,
    /// Proper subfield degrees tried, and whether a certificate was found for each.
    pub attempts: Vec<(u32, bool)>,
}

/// Trace field of an absolutely irreducible group, with a constructive realization
/// over it when it is proper, and the outcome of a certificate attempt for every
/// proper subfield.
pub fn minimal_field(g: &Group, seed: u64) -> Result<MinimalField> {
    let e = g.field().e();
    let degree = trace_field_degree(g);
    let mut attempts = Vec::new();
    let mut certificate = None;
    for d in (1..e).filter(|d| e.is_multiple_of(*d)) {
        let found = descent_certificate(g.gens(), d, seed).ok();
        attempts.push((d, found.is_some()));
        if d == degree {
            certificate = found;
        }
    }
    Ok(MinimalField {
        degree,
        certificate,
        attempts,
    })
}

/// Whether some nonzero scalar multiple of `m` has all entries in `GF(p^d)`.
pub fn scaled_over_subfield(m: &Mat, d: u32) -> bool {
    let f = m.field();
    let Some(&pivot) = m.data().iter().find(|x| !x.is_zero()) else {
        return false;
    };
    let inv = f.inv(pivot).unwrap();
    m.scale(inv).over_subfield(d)
}

/// Basis change realizing the (absolutely irreducible) generators over `GF(p^d)`.
pub fn descent_certificate(gens: &[Mat], d: u32, seed: u64) -> Result<Mat> {
    let g0 = gens.first().ok_or_else(|| Error::InvalidSpec("empty generating set".into()))?;
    let f = g0.field().clone();
    let n = g0.rows();
    let e = f.e();
    if d == 0 || e % d != 0 {
        return Err(Error::NotASubfield { p: f.p(), sub: d, ext: e });
    }
    if gens.iter().all(|g| g.over_subfield(d)) {
        return Ok(Mat::identity(&f, n));
    }
    let k = e / d;
    let sigma: Vec<Mat> = gens.iter().map(|g| g.frobenius(d)).collect();
    // A g = g^sigma A
    let sols = intertwiners(&sigma, gens, n, n);
    if sols.len() != 1 {
        return Err(Error::CertificateNotFound(format!(
            "intertwiner space has dimension {} (representation not Galois-stable or not absolutely irreducible)",
            sols.len()
        )));
    }
    let a = sols[0].clone();
    let a_inv = a.inverse().map_err(|_| Error::CertificateNotFound("intertwiner is singular".into()))?;
    let norm = (1..k).fold(a.clone(), |acc, i| a.frobenius(d * i).mul(&acc));
    let Some(mu) = norm.scalar_value() else {
        return Err(Error::CertificateNotFound("norm of the intertwiner is not scalar".into()));
    };
    let q = f.q() as u64;
    let small = (f.p() as u64).pow(d);
    let exponent = (q - 1) / (small - 1);
    let want = f.inv(mu).unwrap();
    let c = f
        .elements()
        .skip(1)
        .find(|&c| f.pow(c, exponent) == want)
        .ok_or_else(|| Error::CertificateNotFound("norm is not a norm".into()))?;
    let a_inv = a_inv.scale(f.inv(c).unwrap());
    let mut coeffs = vec![Mat::identity(&f, n)];
    for i in 1..k as usize {
        let prev = coeffs[i - 1].frobenius(d);
        coeffs.push(a_inv.mul(&prev));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let y = Mat::new(
            &f,
            n,
            n,
            (0..n * n).map(|_| Felt(rng.gen_range(0..f.q()) as u16)).collect(),
        )?;
        let x = coeffs
            .iter()
            .enumerate()
            .fold(Mat::zeros(&f, n, n), |acc, (i, ci)| acc.add(&ci.mul(&y.frobenius(d * i as u32))));
        let Ok(xi) = x.inverse() else { continue };
        if gens.iter().all(|g| xi.mul(g).mul(&x).over_subfield(d)) {
            return Ok(x);
        }
    }
    Err(Error::CertificateNotFound("no invertible averaged matrix found".into()))
}
