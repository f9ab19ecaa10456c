use globular::algebra::{check_algebra, check_involutive_category};
use globular::congruence::DEFAULT_BOUND;
use globular::models::{self, edge_path_groupoid, fixtures, Graph};
use globular::Magma;

#[test]
fn cyclic_group_passes_both_checks() {
    let inst = models::cyclic_instance(4).unwrap();
    assert!(check_involutive_category(&inst.category).is_clean());
    let base = Magma::new(inst.base.clone());
    let r = check_algebra(&inst.category, &base, &inst.assignment, 200, 1, DEFAULT_BOUND);
    assert!(r.is_clean(), "{r}");
    assert_eq!(r.law("multiplication").unwrap().samples, 200);
}

#[test]
fn two_cycle_groupoid_is_an_algebra() {
    let inst = models::edge_path_instance(&fixtures::two_cycle(), 6).unwrap();
    let base = Magma::new(inst.base.clone());
    let r = check_algebra(&inst.category, &base, &inst.assignment, 200, 3, DEFAULT_BOUND);
    assert!(r.is_clean(), "{r}");
    assert_eq!(r.notes, vec!["WINDOW 6".to_string()]);
}

#[test]
fn small_windows_pass_the_axiom_check() {
    for g in [fixtures::triangle(), fixtures::two_cycle()] {
        for window in 0..=4 {
            let r = check_involutive_category(&edge_path_groupoid(&g, window).unwrap());
            assert!(r.is_clean(), "window {window}\n{r}");
        }
    }
}

#[test]
fn reduced_path_counts() {
    // A vertex of a cycle graph has two reduced paths of each positive length.
    for window in 0..=6 {
        let a = edge_path_groupoid(&fixtures::triangle(), window).unwrap();
        assert_eq!(a.cell_count(1), 3 * (1 + 2 * window));
    }
    let a = edge_path_groupoid(&fixtures::two_cycle(), 3).unwrap();
    assert_eq!(a.cell_count(1), 2 * (1 + 2 * 3));
}

#[test]
fn edge_missing_from_a_zero_window_is_reported() {
    let g = Graph::parse(r#"{"vertices":["v"],"edges":[{"name":"l","src":"v","tgt":"v"}]}"#).unwrap();
    assert!(models::edge_path_instance(&g, 0).is_err());
    assert!(models::edge_path_instance(&g, 1).is_ok());
}
