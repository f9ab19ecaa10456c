use std::cmp::Ordering;
use std::collections::HashMap;

use globular::congruence::{axiom_pairs, canonical_all, eq, DEFAULT_BOUND};
use globular::globular::fixtures;
use globular::oracle::oracle_closure;
use globular::term::term_order;
use globular::{Execution, Magma, Term};

// Fixed by running the closure itself once.
const Q2_DIM1_SIZE3_GAMMA1_CLASSES: usize = 85;

#[test]
fn golden_class_count() {
    let m = Magma::new(fixtures::q2());
    let p = oracle_closure(&m.universe(1, 3, 1));
    assert_eq!(p.len(), Q2_DIM1_SIZE3_GAMMA1_CLASSES);
    let f = m.gen("f").unwrap();
    assert!(p.same_class(&f, &m.parse("(comp 0 f (id A))").unwrap()));
    assert!(p.same_class(&f, &m.parse("(comp 0 (id B) f)").unwrap()));
    assert!(!p.same_class(&f, &m.gen("h").unwrap()));
}

/// Classes of eq, computed through canonical representatives.
fn eq_classes(universe: &[Term]) -> HashMap<Term, Term> {
    let forms = canonical_all(universe, DEFAULT_BOUND, Execution::default());
    assert!(forms.iter().all(|c| c.exhausted));
    universe.iter().cloned().zip(forms.into_iter().map(|c| c.rep)).collect()
}

#[test]
fn eq_agrees_with_the_oracle_on_qx() {
    let m = Magma::new(fixtures::qx());
    let universe = m.universe(2, 3, 1);
    let p = oracle_closure(&universe);
    let reps = eq_classes(&universe);
    let mut class_of_rep: HashMap<&Term, usize> = HashMap::new();
    for t in &universe {
        let k = p.class_of(t).unwrap();
        assert_eq!(*class_of_rep.entry(&reps[t]).or_insert(k), k, "{t}");
    }
    assert_eq!(class_of_rep.len(), p.len());
}

#[test]
fn axiom_pairs_are_equal() {
    let m = Magma::new(fixtures::qx());
    for pair in axiom_pairs(&m.universe(2, 3, 1)) {
        assert_eq!(eq(&pair.lhs, &pair.rhs, DEFAULT_BOUND), Ok(true), "{} {} {}", pair.tag, pair.lhs, pair.rhs);
    }
}

#[test]
fn rendering_is_sorted_and_stable() {
    let m = Magma::new(fixtures::q2());
    let p = oracle_closure(&m.universe(1, 2, 1));
    let text = p.render();
    assert_eq!(text, oracle_closure(&m.universe(1, 2, 1)).render());
    assert_eq!(text.lines().count(), p.len());
    let classes = p.classes();
    for w in classes.windows(2) {
        assert_eq!(term_order(&w[0][0], &w[1][0]), Ordering::Less);
    }
}
