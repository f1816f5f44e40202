use aschbacher::classes::{construct, ClassWitness};
use aschbacher::classifier::{classify, verify_verdict, Caps, Tag, Verdict, VerdictWitness};
use aschbacher::corpus;
use aschbacher::gf::Subspace;

const SEED: u64 = 7;

fn run(name: &str, g: &aschbacher::group::GenSet) -> Verdict {
    let v = classify(g, Caps::default(), SEED);
    println!("{name}: {} detected {:?}", v.tag, v.detected());
    for t in &v.trace {
        println!("  [{}] {}: {}", t.step, t.name, t.outcome);
    }
    v
}

#[test]
fn golden_verdicts() {
    for g in corpus::golden().unwrap() {
        let v = run(g.name, &g.gens);
        for t in g.also {
            assert!(v.detected().iter().any(|d| d.to_string() == *t), "{} also in {t}", g.name);
        }
        assert_eq!(v.tag.to_string(), g.expected, "{}", g.name);
        assert!(verify_verdict(&g.gens, &v), "{}", g.name);
        assert!(v.clifford.iter().all(|c| c.permuted && c.transitive), "{}", g.name);
    }
}

#[test]
fn q8_lies_in_c3_and_c6() {
    let h = corpus::q8_scalars_gl2_3().unwrap();
    let v = run("Q8", &h);
    assert_eq!(v.tag, Tag::C3);
    assert!(verify_verdict(&h, &v));
    assert!(v.detected().contains(&Tag::C6));
}

#[test]
fn borel_line_and_fabricated_verdict() {
    let h = corpus::borel_gl2_3().unwrap();
    let v = classify(&h, Caps::default(), SEED);
    assert_eq!(v.tag, Tag::C1);
    let f = h.field().clone();
    match &v.witness {
        VerdictWitness::Class(ClassWitness::C1 { subspace }) => {
            assert_eq!(*subspace, Subspace::coordinate(&f, 2, &[0]))
        }
        other => panic!("unexpected witness {other:?}"),
    }
    let fake = Verdict {
        tag: Tag::C2,
        witness: VerdictWitness::Class(ClassWitness::C2 {
            summands: vec![Subspace::coordinate(&f, 2, &[0]), Subspace::coordinate(&f, 2, &[1])],
        }),
        ..v
    };
    assert!(!verify_verdict(&h, &fake));
}

#[test]
fn construction_round_trip() {
    let caps = Caps { normal: 60_000, ..Caps::default() };
    for (spec, _) in corpus::construction_matrix() {
        let m = construct(&spec).unwrap();
        let v = classify(&m.gens, caps, SEED);
        let own = Tag::class(spec.class_id());
        println!("{}: {} detected {:?}", spec.label(), v.tag, v.detected());
        for t in &v.trace {
            println!("  [{}] {}: {}", t.step, t.name, t.outcome);
        }
        assert_ne!(v.tag, Tag::Inconclusive, "{}", spec.label());
        assert!(verify_verdict(&m.gens, &v), "{}", spec.label());
        assert!(v.tag == own || v.detected().contains(&own) || v.tag <= own, "{}", spec.label());
    }
}

#[test]
fn verdicts_are_conjugation_and_scalar_invariant() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for g in corpus::golden().unwrap() {
        let base = classify(&g.gens, Caps::default(), SEED).tag;
        let f = g.gens.field().clone();
        let n = g.gens.dim();
        let scaled = g.gens.with(&[aschbacher::gf::Mat::scalar(&f, n, f.primitive())]).unwrap();
        assert_eq!(classify(&scaled, Caps::default(), SEED).tag, base, "{} with scalars", g.name);
        for i in 0..20 {
            let x = aschbacher::gf::Mat::random_invertible(&f, n, &mut rng);
            let c = g.gens.conjugate(&x).unwrap();
            let v = classify(&c, Caps::default(), SEED);
            assert_eq!(v.tag, base, "{} conjugate {i}", g.name);
            assert!(verify_verdict(&c, &v), "{} conjugate {i}", g.name);
        }
    }
}

#[test]
fn s_certificate_checks() {
    let h = corpus::sl2_5_scalars_gl2_9().unwrap();
    let v = classify(&h, Caps::default(), SEED);
    let VerdictWitness::S(cert) = &v.witness else { panic!("expected an S certificate") };
    assert!(cert.checks.all());
    let l = aschbacher::group::Group::close(&cert.l, 1000).unwrap();
    assert_eq!(l.order(), 120);
    let mf = aschbacher::module::minimal_field(&l, SEED).unwrap();
    assert_eq!(mf.degree, 2);
    assert_eq!(mf.attempts, vec![(1, false)]);
}

#[test]
fn verdict_json_round_trip() {
    for g in corpus::golden().unwrap() {
        let v = classify(&g.gens, Caps::default(), SEED);
        let j = serde_json::to_string(&v.to_json()).unwrap();
        let back = Verdict::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.tag, v.tag);
        assert!(verify_verdict(&g.gens, &back), "{}", g.name);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), j);
    }
}
