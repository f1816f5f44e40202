//! Finite fields GF(p^e) with packed-integer elements.
//!
//! An element `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` of `GF(p)[x]/(f)` is stored as
//! the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A packed field element. Only meaningful together with its [`FieldDesc`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Felt(pub u16);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    poly: Vec<u32>,
    primitive: Felt,
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
}

/// Handle to an immutable field presentation. Cheap to clone.
#[derive(Clone)]
pub struct FieldDesc(Arc<FieldData>);

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e
    }
}

impl Eq for FieldDesc {}

impl Hash for FieldDesc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.e.hash(state);
    }
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.e)
    }
}

/// JSON form of a field: `{"p", "e", "poly"}` with `poly` low-to-high, monic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub e: u32,
    pub poly: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over GF(p) as coefficient vectors, low to high, used only while
// building a field presentation.
fn pp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    pp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let idx = top - db + i;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * bi as u64) % p as u64) as u32;
        }
        pp_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        k >>= 1;
    }
    r as u32
}

fn pp_is_irreducible(f: &[u32], p: u32) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=e/2
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = t;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if pp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `e`, comparing the
/// constant term first.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let total = (p as u64).pow(e as u32);
    for t in 0..total {
        let mut coeffs = vec![0u32; e + 1];
        let mut x = t;
        for i in (0..e).rev() {
            coeffs[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        coeffs[e] = 1;
        if e > 1 && coeffs[0] == 0 {
            continue;
        }
        if pp_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn unpack(a: u32, p: u32, e: usize) -> Vec<u32> {
    let mut out = vec![0; e];
    let mut x = a;
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn pack(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_mul(a: u32, b: u32, p: u32, f: &[u32]) -> u32 {
    let e = f.len() - 1;
    let da = unpack(a, p, e);
    let db = unpack(b, p, e);
    let mut prod = vec![0u32; 2 * e];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = ((prod[i + j] as u64 + da[i] as u64 * db[j] as u64) % p as u64) as u32;
        }
    }
    let mut r = pp_rem(&prod, f, p);
    r.resize(e, 0);
    pack(&r, p)
}

fn build(p: u32, e: u32) -> FieldData {
    let q = p.pow(e);
    let poly = smallest_irreducible(p, e);
    let ei = e as usize;
    let order = (q - 1) as u64;
    let primes = prime_divisors(order);
    let slow_pow = |a: u32, mut k: u64| {
        let mut r = 1u32;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = slow_mul(r, b, p, &poly);
            }
            b = slow_mul(b, b, p, &poly);
            k >>= 1;
        }
        r
    };
    let primitive = if q == 2 {
        1
    } else {
        (2..q)
            .find(|&g| primes.iter().all(|&l| slow_pow(g, order / l) != 1))
            .expect("multiplicative group is cyclic")
    };
    let n = (q - 1) as usize;
    let mut exp = vec![0u16; 2 * n.max(1)];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for k in 0..n {
        exp[k] = x as u16;
        exp[k + n] = x as u16;
        log[x as usize] = k as u32;
        x = slow_mul(x, primitive, p, &poly);
    }
    let neg: Vec<u16> = (0..q)
        .map(|a| {
            let d: Vec<u32> = unpack(a, p, ei).iter().map(|&c| (p - c) % p).collect();
            pack(&d, p) as u16
        })
        .collect();
    let add = if q <= 256 && p != 2 {
        let mut t = vec![0u16; (q * q) as usize];
        for a in 0..q {
            let da = unpack(a, p, ei);
            for b in 0..q {
                let db = unpack(b, p, ei);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                t[(a * q + b) as usize] = pack(&s, p) as u16;
            }
        }
        Some(t)
    } else {
        None
    };
    FieldData {
        p,
        e,
        q,
        poly,
        primitive: Felt(primitive as u16),
        exp,
        log,
        add,
        neg,
    }
}

/// Builds (or fetches from the process-wide cache) the presentation of GF(p^e).
pub fn make_field(p: u32, e: u32) -> Result<FieldDesc> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if e == 0 {
        return Err(Error::DegreeZero);
    }
    let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
    if q > 1 << 16 {
        return Err(Error::FieldTooLarge(q));
    }
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FieldDesc>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, e)) {
        return Ok(f.clone());
    }
    let f = FieldDesc(Arc::new(build(p, e)));
    cache.lock().unwrap().insert((p, e), f.clone());
    Ok(f)
}

impl FieldDesc {
    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    /// Defining polynomial, low to high, monic.
    pub fn poly(&self) -> &[u32] {
        &self.0.poly
    }
    /// The smallest (packed) generator of the multiplicative group.
    pub fn primitive(&self) -> Felt {
        self.0.primitive
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson {
            p: self.p(),
            e: self.e(),
            poly: self.0.poly.clone(),
        }
    }

    pub fn from_json(j: &FieldJson) -> Result<FieldDesc> {
        let f = make_field(j.p, j.e)?;
        if f.0.poly != j.poly {
            return Err(Error::Parse(format!(
                "unsupported presentation {:?} for GF({}^{})",
                j.poly, j.p, j.e
            )));
        }
        Ok(f)
    }

    #[inline]
    pub fn zero(&self) -> Felt {
        Felt(0)
    }
    #[inline]
    pub fn one(&self) -> Felt {
        Felt(1)
    }

    /// Packed element from an integer `< q`.
    pub fn elem(&self, a: u32) -> Result<Felt> {
        if a >= self.0.q {
            return Err(Error::InvalidSpec(format!("{a} is not an element of {self:?}")));
        }
        Ok(Felt(a as u16))
    }

    /// Image of the integer `k` in the prime field.
    pub fn from_int(&self, k: i64) -> Felt {
        Felt(k.rem_euclid(self.0.p as i64) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.0.q).map(|a| Felt(a as u16))
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.0.p == 2 {
            return Felt(a.0 ^ b.0);
        }
        if self.0.e == 1 {
            let s = a.0 as u32 + b.0 as u32;
            return Felt(if s >= self.0.p { s - self.0.p } else { s } as u16);
        }
        if let Some(t) = &self.0.add {
            return Felt(t[a.0 as usize * self.0.q as usize + b.0 as usize]);
        }
        let p = self.0.p;
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.e {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Felt(out as u16)
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        Felt(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.0 == 0 || b.0 == 0 {
            return Felt(0);
        }
        let k = self.0.log[a.0 as usize] + self.0.log[b.0 as usize];
        Felt(self.0.exp[k as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Felt) -> Option<Felt> {
        if a.0 == 0 {
            return None;
        }
        let n = self.0.q - 1;
        let k = (n - self.0.log[a.0 as usize]) % n;
        Some(Felt(self.0.exp[k as usize]))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Option<Felt> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Felt, k: u64) -> Felt {
        if k == 0 {
            return Felt(1);
        }
        if a.0 == 0 {
            return Felt(0);
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64 * (k % n) % n;
        Felt(self.0.exp[l as usize])
    }

    /// Discrete logarithm to base [`primitive`](Self::primitive).
    pub fn log(&self, a: Felt) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    /// `primitive^k`.
    pub fn exp(&self, k: u64) -> Felt {
        let n = (self.0.q - 1) as u64;
        Felt(self.0.exp[(k % n) as usize])
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: Felt, j: u32) -> Felt {
        let j = j % self.0.e;
        self.pow(a, (self.0.p as u64).pow(j))
    }

    /// Whether `a` lies in the subfield of degree `d` (which must divide `e`).
    pub fn in_subfield(&self, a: Felt, d: u32) -> bool {
        self.frobenius(a, d) == a
    }

    pub fn subfield_elements(&self, d: u32) -> Vec<Felt> {
        self.elements().filter(|&a| self.in_subfield(a, d)).collect()
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Felt) -> u64 {
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        n / gcd(n, l)
    }

    /// Base-p digits of the packed element (coefficients of `1, x, ...`).
    pub fn digits(&self, a: Felt) -> Vec<u32> {
        unpack(a.0 as u32, self.0.p, self.0.e as usize)
    }

    pub fn from_digits(&self, d: &[u32]) -> Felt {
        Felt(pack(d, self.0.p) as u16)
    }

    /// Some square root of `a`, if one exists.
    pub fn sqrt(&self, a: Felt) -> Option<Felt> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Embedding of GF(p^d) into GF(p^e) sending `x` to the smallest root of the
/// subfield's defining polynomial.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: FieldDesc,
    target: FieldDesc,
    table: Vec<Felt>,
}

impl Embedding {
    pub fn new(sub: &FieldDesc, target: &FieldDesc) -> Result<Embedding> {
        if sub.p() != target.p() || !target.e().is_multiple_of(sub.e()) {
            return Err(Error::NotASubfield {
                p: target.p(),
                sub: sub.e(),
                ext: target.e(),
            });
        }
        let poly: Vec<Felt> = sub.poly().iter().map(|&c| Felt(c as u16)).collect();
        let eval = |x: Felt| {
            poly.iter()
                .rev()
                .fold(Felt(0), |acc, &c| target.add(target.mul(acc, x), c))
        };
        let beta = target
            .elements()
            .find(|&x| eval(x).is_zero())
            .expect("subfield polynomial splits in the extension");
        let mut powers = vec![target.one()];
        for i in 1..sub.e() as usize {
            powers.push(target.mul(powers[i - 1], beta));
        }
        let table = sub
            .elements()
            .map(|a| {
                sub.digits(a)
                    .iter()
                    .zip(&powers)
                    .fold(Felt(0), |acc, (&c, &bp)| {
                        target.add(acc, target.mul(Felt(c as u16), bp))
                    })
            })
            .collect();
        Ok(Embedding {
            sub: sub.clone(),
            target: target.clone(),
            table,
        })
    }

    pub fn sub(&self) -> &FieldDesc {
        &self.sub
    }
    pub fn target(&self) -> &FieldDesc {
        &self.target
    }

    #[inline]
    pub fn map(&self, a: Felt) -> Felt {
        self.table[a.0 as usize]
    }

    /// Preimage of an element lying in the image.
    pub fn preimage(&self, b: Felt) -> Option<Felt> {
        self.table.iter().position(|&x| x == b).map(|i| Felt(i as u16))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentations() {
        assert_eq!(make_field(3, 2).unwrap().poly(), &[1, 0, 1]);
        assert_eq!(make_field(2, 2).unwrap().poly(), &[1, 1, 1]);
        assert_eq!(make_field(5, 1).unwrap().poly(), &[0, 1]);
        assert_eq!(make_field(2, 3).unwrap().poly(), &[1, 0, 1, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::DegreeZero);
        assert!(matches!(make_field(2, 17), Err(Error::FieldTooLarge(_))));
        assert!(make_field(2, 16).is_ok());
    }

    #[test]
    fn frobenius_on_gf4() {
        let f = make_field(2, 2).unwrap();
        // omega = x packs to 2, omega + 1 packs to 3
        assert_eq!(f.frobenius(Felt(2), 1), Felt(3));
        assert_eq!(f.mul(Felt(2), Felt(2)), Felt(3));
    }

    #[test]
    fn inverse_table_matches_brute_force() {
        for (p, e) in [(2, 3), (3, 2), (5, 1), (7, 2), (3, 6)] {
            let f = make_field(p, e).unwrap();
            for a in f.elements().skip(1) {
                let brute = f.elements().find(|&b| f.mul(a, b) == f.one()).unwrap();
                assert_eq!(f.inv(a), Some(brute));
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let k = make_field(2, 2).unwrap();
        let f = make_field(2, 4).unwrap();
        let emb = Embedding::new(&k, &f).unwrap();
        for a in k.elements() {
            for b in k.elements() {
                assert_eq!(emb.map(k.mul(a, b)), f.mul(emb.map(a), emb.map(b)));
                assert_eq!(emb.map(k.add(a, b)), f.add(emb.map(a), emb.map(b)));
            }
            assert!(f.in_subfield(emb.map(a), 2));
        }
        assert!(Embedding::new(&make_field(2, 3).unwrap(), &f).is_err());
    }
}
