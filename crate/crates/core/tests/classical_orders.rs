//! Closure orders of classical groups against published group orders.

use aschbacher::classical::{expected_order, generators, ClassicalSpec, Family};
use aschbacher::forms::OrthType;
use aschbacher::group::Group;

/// (family, n, p, e, sign, order from the literature)
type Row = (Family, usize, u32, u32, Option<OrthType>, u128);

const TABLE: &[Row] = &[
    (Family::GL, 2, 2, 1, None, 6),
    (Family::GL, 2, 3, 1, None, 48),
    (Family::GL, 2, 2, 2, None, 180),
    (Family::GL, 2, 5, 1, None, 480),
    (Family::GL, 3, 2, 1, None, 168),
    (Family::GL, 3, 3, 1, None, 11232),
    (Family::GL, 3, 2, 2, None, 181440),
    (Family::GL, 3, 5, 1, None, 1488000),
    (Family::SL, 2, 2, 1, None, 6),
    (Family::SL, 2, 3, 1, None, 24),
    (Family::SL, 2, 2, 2, None, 60),
    (Family::SL, 2, 5, 1, None, 120),
    (Family::SL, 3, 2, 1, None, 168),
    (Family::SL, 3, 3, 1, None, 5616),
    (Family::SL, 3, 2, 2, None, 60480),
    (Family::SL, 3, 5, 1, None, 372000),
    (Family::Sp, 2, 2, 1, None, 6),
    (Family::Sp, 2, 3, 1, None, 24),
    (Family::Sp, 4, 2, 1, None, 720),
    (Family::Sp, 4, 3, 1, None, 51840),
    (Family::GU, 2, 2, 2, None, 18),
    (Family::GU, 2, 3, 2, None, 96),
    (Family::GU, 3, 2, 2, None, 648),
    (Family::GU, 3, 3, 2, None, 24192),
    (Family::SU, 3, 2, 2, None, 216),
    (Family::GO, 2, 2, 1, Some(OrthType::Plus), 2),
    (Family::GO, 2, 2, 1, Some(OrthType::Minus), 6),
    (Family::GO, 2, 3, 1, Some(OrthType::Plus), 4),
    (Family::GO, 2, 3, 1, Some(OrthType::Minus), 8),
    (Family::GO, 4, 2, 1, Some(OrthType::Plus), 72),
    (Family::GO, 4, 2, 1, Some(OrthType::Minus), 120),
    (Family::GO, 4, 3, 1, Some(OrthType::Plus), 1152),
    (Family::GO, 4, 3, 1, Some(OrthType::Minus), 1440),
];

#[test]
fn closure_matches_literature() {
    for &(family, n, p, e, sign, want) in TABLE {
        let mut spec = ClassicalSpec::new(family, n, p, e);
        spec.sign = sign;
        let t = std::time::Instant::now();
        let g = Group::close(&generators(&spec, None).unwrap(), 2_000_000).unwrap();
        assert_eq!(g.order() as u128, want, "{}", spec.label());
        assert_eq!(expected_order(&spec).unwrap(), want, "{}", spec.label());
        assert!(t.elapsed().as_secs() < 10, "{} took {:?}", spec.label(), t.elapsed());
    }
}
