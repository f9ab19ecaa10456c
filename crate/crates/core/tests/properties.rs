use proptest::prelude::*;

use globular::algebra::eval_theta;
use globular::congruence::{canonical, eq, DEFAULT_BOUND};
use globular::contraction::contract;
use globular::globular::fixtures;
use globular::models;
use globular::monad::{flatten, map_morphism, morphism_from_pairs, restrict};
use globular::rewrite::{reduce, reduce_traced};
use globular::sample::{nest, variants, SampleConfig, TermSampler};
use globular::{DualityIndex, Magma, Side, Term};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sample(m: &Magma, seed: u64, n: usize) -> Vec<Term> {
    TermSampler::new(m, SampleConfig::new(12, 2, 2).with_contractions(), seed).sample(n)
}

fn presentations() -> Vec<Magma> {
    vec![Magma::new(fixtures::q2()), Magma::new(fixtures::qx())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn boundaries_are_globular(seed in any::<u64>()) {
        for m in presentations() {
            for t in sample(&m, seed, 40) {
                if t.dim() >= 2 {
                    let (s, tt) = t.boundaries().unwrap();
                    prop_assert_eq!(s.source().unwrap(), tt.source().unwrap());
                    prop_assert_eq!(s.target().unwrap(), tt.target().unwrap());
                }
            }
        }
    }

    #[test]
    fn reduction_is_idempotent_and_decreasing(seed in any::<u64>()) {
        for m in presentations() {
            for t in sample(&m, seed, 40) {
                let r = reduce(&t);
                prop_assert_eq!(reduce(&r), r.clone());
                let (traced, steps) = reduce_traced(&t);
                prop_assert_eq!(&traced, &r);
                prop_assert!(steps.iter().all(|s| s.decreases()));
            }
        }
    }

    #[test]
    fn reduction_commutes_with_boundaries(seed in any::<u64>()) {
        for m in presentations() {
            for t in sample(&m, seed, 40).into_iter().filter(|t| t.dim() > 0) {
                let r = reduce(&t);
                prop_assert!(r.is_well_formed(), "{}", r);
                for side in [Side::Source, Side::Target] {
                    prop_assert_eq!(reduce(&r.boundary(side).unwrap()), reduce(&t.boundary(side).unwrap()));
                }
            }
        }
    }

    #[test]
    fn duals_swap_boundaries_by_variance(seed in any::<u64>(), bits in 0u32..4) {
        let m = Magma::new(fixtures::q2());
        let alpha = DualityIndex::from_bits(bits);
        for t in sample(&m, seed, 30).into_iter().filter(|t| t.dim() > 0) {
            let d = m.dual(alpha, &t).unwrap();
            let (s, tt) = t.boundaries().unwrap();
            let (s, tt) = if alpha.contains(t.dim() - 1) { (tt, s) } else { (s, tt) };
            prop_assert_eq!(d.source().unwrap(), m.dual(alpha, &s).unwrap());
            prop_assert_eq!(d.target().unwrap(), m.dual(alpha, &tt).unwrap());
        }
    }

    #[test]
    fn composites_take_boundaries_from_their_factors(seed in any::<u64>()) {
        let m = Magma::new(fixtures::qx());
        let terms = sample(&m, seed, 40);
        for a in &terms {
            for b in &terms {
                for p in 0..a.dim() {
                    if let Ok(c) = m.comp(p, a, b) {
                        prop_assert_eq!(c.iterated(p, Side::Source).unwrap(), b.iterated(p, Side::Source).unwrap());
                        prop_assert_eq!(c.iterated(p, Side::Target).unwrap(), a.iterated(p, Side::Target).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_forms_are_stable(seed in any::<u64>()) {
        for m in presentations() {
            for t in sample(&m, seed, 20) {
                let c = canonical(&t, DEFAULT_BOUND);
                prop_assert!(c.exhausted);
                prop_assert_eq!(canonical(&c.rep, DEFAULT_BOUND).rep, c.rep.clone());
            }
        }
    }

    #[test]
    fn contraction_cells_obey_their_laws(seed in any::<u64>()) {
        let m = Magma::new(fixtures::q2());
        for x in sample(&m, seed, 30).into_iter().filter(|t| t.dim() == 1) {
            for y in variants(&m, &x) {
                let c = contract(&x, &y, 2, DEFAULT_BOUND).unwrap();
                prop_assert_eq!(c.source().unwrap(), x.clone());
                prop_assert_eq!(c.target().unwrap(), y.clone());
                let id = m.id(&x).unwrap();
                if x == y {
                    prop_assert_eq!(&c, &id);
                }
                prop_assert_eq!(eq(&c, &id, DEFAULT_BOUND), Ok(true));
            }
        }
    }

    #[test]
    fn printing_then_parsing_is_the_identity(seed in any::<u64>()) {
        for m in presentations() {
            for t in sample(&m, seed, 40) {
                prop_assert_eq!(m.parse(&t.serialize()).unwrap(), t);
            }
        }
    }

    #[test]
    fn evaluation_is_constant_on_classes(seed in any::<u64>()) {
        let inst = models::cyclic_instance(4).unwrap();
        let base = Magma::new(inst.base.clone());
        let terms = TermSampler::new(&base, SampleConfig::new(10, 1, 2), seed).sample(40);
        for t in &terms {
            let v = eval_theta(&inst.category, &inst.assignment, t).unwrap();
            for w in variants(&base, t) {
                prop_assert_eq!(eval_theta(&inst.category, &inst.assignment, &w).unwrap(), v);
            }
            prop_assert_eq!(eval_theta(&inst.category, &inst.assignment, &reduce(t)).unwrap(), v);
        }
    }
}

#[test]
fn unit_and_flattening_are_natural() {
    let q2 = fixtures::q2();
    let dom = restrict(&q2, &["u"]);
    let sigma = morphism_from_pairs(&dom, &q2, &[("f", "h"), ("h", "f")]).unwrap();
    let src = Magma::new(dom.clone());
    let tgt = Magma::new(q2.clone());
    for cell in dom.all_cells() {
        let x = src.generator(cell);
        assert_eq!(map_morphism(&sigma, &dom, &tgt, &x).unwrap(), tgt.generator(sigma.apply(cell)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let terms = TermSampler::new(&src, SampleConfig::new(10, 1, 2).with_contractions(), 5).sample(200);
    for t in terms {
        let nt = nest(&t, &mut rng);
        let lhs = flatten(&map_morphism(&sigma, &dom, &tgt, &nt).unwrap(), 2).unwrap();
        let rhs = map_morphism(&sigma, &dom, &tgt, &flatten(&nt, 2).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "{nt}");
    }
}

#[test]
fn relabelling_preserves_duals_and_contractions() {
    let q2 = fixtures::q2();
    let dom = restrict(&q2, &["u"]);
    let sigma = morphism_from_pairs(&dom, &q2, &[("f", "h"), ("h", "f")]).unwrap();
    let src = Magma::new(dom.clone());
    let tgt = Magma::new(q2.clone());
    let t = src.parse("(dual {0} f)").unwrap();
    assert_eq!(map_morphism(&sigma, &dom, &tgt, &t).unwrap().serialize(), "(dual {0} h)");
    let c = src.parse("(ctr (comp 0 f (id A)) f)").unwrap();
    assert_eq!(map_morphism(&sigma, &dom, &tgt, &c).unwrap().serialize(), "(ctr (comp 0 h (id A)) h)");
}
