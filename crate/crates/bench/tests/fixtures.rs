use hyperjac_bench::{bpf_system, random_sparse};

#[test]
fn fixtures_are_deterministic() {
    assert_eq!(random_sparse(20, 30, 0.2, 1), random_sparse(20, 30, 0.2, 1));
    assert_ne!(random_sparse(20, 30, 0.2, 1), random_sparse(20, 30, 0.2, 2));
    let w = bpf_system(3, 2, 1, 5);
    assert_eq!(w.codim(), 1);
    assert_eq!(w, bpf_system(3, 2, 1, 5));
}
