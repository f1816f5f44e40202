//! Parsers for command-line values: field orders, caps, classical and r-group specs.

use aschbacher::classical::{ClassicalSpec, Family};
use aschbacher::classifier::Caps;
use aschbacher::extraspecial::{RGroupSpec, Variant};
use aschbacher::forms::{FormKind, OrthType};
use aschbacher::gf::is_prime;

/// `p^e` from `"9"`, `"3^2"` or `"3,2"`.
pub fn field_order(s: &str) -> Result<(u32, u32), String> {
    let s = s.trim();
    let (p, e) = if let Some((p, e)) = s.split_once([',', '^']) {
        (num(p)?, num(e)?)
    } else {
        let q = num(s)?;
        let p = (2..=q).find(|d| q % d == 0).ok_or_else(|| format!("{q} is not a prime power"))?;
        let mut e = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            e += 1;
        }
        if r != 1 {
            return Err(format!("{q} is not a prime power"));
        }
        (p, e)
    };
    if !is_prime(p) || e == 0 {
        return Err(format!("{s} is not a prime power"));
    }
    Ok((p, e))
}

fn num(s: &str) -> Result<u32, String> {
    s.trim().parse().map_err(|_| format!("expected a number, got {s:?}"))
}

/// `closure=N,normal=N,subspace=D,subspace_q=Q`, any subset, over the defaults.
pub fn caps(s: &str) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        let v: usize = v.trim().parse().map_err(|_| format!("bad cap value {v:?}"))?;
        match k.trim() {
            "closure" => caps.closure = v,
            "normal" => caps.normal = v,
            "subspace" => caps.subspace_dim = v,
            "subspace_q" => caps.subspace_q = v as u32,
            other => return Err(format!("unknown cap {other:?}")),
        }
    }
    Ok(caps)
}

/// A named group: a classical group or a symplectic-type r-group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Named {
    Classical(ClassicalSpec),
    RGroup(RGroupSpec),
}

/// `GL(3,2)`, `GO-(2,3)`, `GO(3,5)`, `Sp(4,3)`, `GU(3,4)` or `R(r=3,m=1,+)`.
pub fn named(s: &str) -> Result<Named, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, args) = s
        .strip_suffix(')')
        .and_then(|t| t.split_once('('))
        .ok_or_else(|| format!("expected NAME(args), got {s:?}"))?;
    if head == "R" {
        return rgroup(args).map(Named::RGroup);
    }
    let (name, sign) = match head.strip_suffix(['+', '-', 'o']) {
        Some(name) => (name, head.chars().last()),
        None => (head, None),
    };
    let family = match name {
        "GL" => Family::GL,
        "SL" => Family::SL,
        "Sp" => Family::Sp,
        "GU" => Family::GU,
        "SU" => Family::SU,
        "GO" | "O" => Family::GO,
        "SO" => Family::SO,
        "Omega" => Family::Omega,
        other => return Err(format!("unknown group family {other:?}")),
    };
    let (n, q) = args.split_once(',').ok_or_else(|| format!("expected (n,q), got ({args})"))?;
    let n = num(n)? as usize;
    let (p, e) = field_order(q)?;
    let mut spec = ClassicalSpec::new(family, n, p, e);
    if let Some(c) = sign {
        spec = spec.with_sign(orth_type(&c.to_string())?);
    }
    spec.validate().map_err(|e| e.to_string())?;
    Ok(Named::Classical(spec))
}

/// `r=3,m=1,+`: the variant is `+`, `-` or `4` (central product with `C4`).
pub fn rgroup(args: &str) -> Result<RGroupSpec, String> {
    let (mut r, mut m, mut variant, mut lambda) = (None, None, None, 1);
    for part in args.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('=') {
            Some(("r", v)) => r = Some(num(v)?),
            Some(("m", v)) => m = Some(num(v)?),
            Some(("lambda", v)) => lambda = num(v)?,
            Some((k, _)) => return Err(format!("unknown r-group parameter {k:?}")),
            None => variant = Some(part.to_string()),
        }
    }
    let r = r.ok_or("missing r=")?;
    let m = m.ok_or("missing m=")?;
    let variant = variant_of(r, variant.as_deref().unwrap_or("+"))?;
    let spec = RGroupSpec { lambda_index: lambda, ..RGroupSpec::new(r, m, variant) };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

pub fn variant_of(r: u32, s: &str) -> Result<Variant, String> {
    match (r, s) {
        (2, "+" | "plus") => Ok(Variant::TwoPlus),
        (2, "-" | "minus") => Ok(Variant::TwoMinus),
        (2, "4" | "four") => Ok(Variant::FourCentral),
        (r, "+" | "plus") if r > 2 => Ok(Variant::OddPlus),
        _ => Err(format!("no r-group variant {s:?} for r={r}")),
    }
}

pub fn orth_type(s: &str) -> Result<OrthType, String> {
    match s {
        "+" | "plus" => Ok(OrthType::Plus),
        "-" | "minus" => Ok(OrthType::Minus),
        "o" | "circ" => Ok(OrthType::Circ),
        _ => Err(format!("unknown orthogonal type {s:?}")),
    }
}

pub fn form_kind(s: &str) -> Result<FormKind, String> {
    match s {
        "symplectic" | "sp" => Ok(FormKind::Symplectic),
        "unitary" | "hermitian" | "u" => Ok(FormKind::Unitary),
        "symmetric" | "orthogonal" | "o" => Ok(FormKind::SymmetricBilinear),
        "quadratic" | "q" => Ok(FormKind::Quadratic),
        _ => Err(format!("unknown form kind {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_orders() {
        assert_eq!(field_order("9"), Ok((3, 2)));
        assert_eq!(field_order("3^2"), Ok((3, 2)));
        assert_eq!(field_order("3,2"), Ok((3, 2)));
        assert_eq!(field_order("7"), Ok((7, 1)));
        assert!(field_order("6").is_err());
        assert!(field_order("1").is_err());
        assert!(field_order("4,1").is_err());
    }

    #[test]
    fn named_groups() {
        assert_eq!(named("GL(3,2)"), Ok(Named::Classical(ClassicalSpec::new(Family::GL, 3, 2, 1))));
        assert_eq!(
            named("GO-(2,3)"),
            Ok(Named::Classical(ClassicalSpec::new(Family::GO, 2, 3, 1).with_sign(OrthType::Minus)))
        );
        assert_eq!(named("R(r=3,m=1,+)"), Ok(Named::RGroup(RGroupSpec::new(3, 1, Variant::OddPlus))));
        assert_eq!(named("R(r=2, m=2, -)"), Ok(Named::RGroup(RGroupSpec::new(2, 2, Variant::TwoMinus))));
        assert!(named("GO(2,3)").is_err());
        assert!(named("Sp(3,2)").is_err());
        assert!(named("XY(2,2)").is_err());
        assert!(named("R(r=3,m=1,-)").is_err());
    }

    #[test]
    fn caps_override_defaults() {
        let c = caps("closure=10,subspace=3").unwrap();
        assert_eq!((c.closure, c.subspace_dim, c.normal), (10, 3, Caps::default().normal));
        assert!(caps("bogus=1").is_err());
        assert!(caps("closure").is_err());
    }
}
