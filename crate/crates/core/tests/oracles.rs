use orichrome::fixtures;
use orichrome::graph::generate::{directed_cycle, tournaments, transitive_tournament};
use orichrome::graph::{is_oriented_clique, OrientedGraph};
use orichrome::oracles::{
    exact_oriented_chromatic, exact_two_dipath, min_arc_oriented_clique, validate_homomorphism, OracleError,
    Witness,
};

fn chi_o(g: &OrientedGraph) -> usize {
    exact_oriented_chromatic(g, 7).unwrap().expect("at most 7 colours").value
}

#[test]
fn directed_five_cycle_is_a_clique() {
    let c5 = directed_cycle(5);
    assert!(is_oriented_clique(&c5));
    assert_eq!(chi_o(&c5), 5);
    assert_eq!(exact_two_dipath(&c5).unwrap().value, 5);
}

#[test]
fn short_cycles_and_paths() {
    assert_eq!(chi_o(&directed_cycle(3)), 3);
    // C4 maps onto the directed triangle only if 3 divides 4
    assert_eq!(chi_o(&directed_cycle(4)), 4);
    assert_eq!(chi_o(&directed_cycle(6)), 3);
    let p = OrientedGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
    assert_eq!(exact_two_dipath(&p).unwrap().value, 3);
    assert_eq!(chi_o(&p), 3);
}

#[test]
fn transitive_tournaments_need_n_colours() {
    for n in 1..=6 {
        assert_eq!(chi_o(&transitive_tournament(n)), n);
    }
}

#[test]
fn sink_wheel_map_and_oracle() {
    let g = fixtures::sink_wheel();
    let h = fixtures::sink_triangle();
    assert!(validate_homomorphism(&g, &h, &fixtures::sink_wheel_map()));
    let r = exact_oriented_chromatic(&g, 7).unwrap().unwrap();
    assert!(r.value <= 4);
    let Witness::Homomorphism { target, map } = &r.witness else { panic!("homomorphism witness") };
    assert!(validate_homomorphism(&g, target, map));
}

#[test]
fn tournament_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| tournaments(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 2, 4, 12, 56, 456]);
}

#[test]
fn fewest_arcs_in_small_cliques() {
    let f: Vec<usize> = (1..=5).map(|n| min_arc_oriented_clique(n).unwrap().value).collect();
    assert_eq!(f, [0, 1, 2, 4, 5]);
}

#[test]
fn caps_are_enforced() {
    let g = transitive_tournament(3);
    assert!(matches!(exact_oriented_chromatic(&g, 8), Err(OracleError::CapExceeded { .. })));
    assert!(exact_two_dipath(&OrientedGraph::new(21)).is_err());
    assert_eq!(exact_oriented_chromatic(&transitive_tournament(4), 3).unwrap(), None);
}
