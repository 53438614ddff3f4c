use fault_atlas::{
    classify, counting_feasible, decode, encode, expand, fault_free_exists_oracle, find_tiling, verify, witness,
    BoardSpec, ExpandAxis, SearchBudget, Topology,
};
use proptest::prelude::*;

fn topology() -> impl Strategy<Value = Topology> {
    prop::sample::select(Topology::ALL.to_vec())
}

fn board(max: usize) -> impl Strategy<Value = BoardSpec> {
    (topology(), 1..=max, 1..=max).prop_map(|(t, a, b)| BoardSpec::new(t, a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encode_decode_round_trip(b in board(10)) {
        if let Some(t) = find_tiling(&b, SearchBudget::unlimited()).witness {
            let text = encode(&t);
            let back = decode(&text).unwrap();
            prop_assert_eq!(&back, &t);
            prop_assert_eq!(encode(&back), text);
        }
    }

    #[test]
    fn decode_never_panics(text in ".{0,200}") {
        let _ = decode(&text);
    }

    #[test]
    fn counting_infeasible_means_no_tiling(b in board(12)) {
        prop_assume!(b.area() <= 36);
        if !counting_feasible(&b).feasible {
            prop_assert_eq!(fault_free_exists_oracle(&b), Ok(false));
        }
    }

    #[test]
    fn expansion_keeps_verdict(b in board(14), rows in any::<bool>()) {
        let v = classify(&b);
        prop_assume!(v.tileable && b.area() > 2);
        let w = witness(&b, SearchBudget::default()).unwrap();
        let axis = if rows { ExpandAxis::Rows } else { ExpandAxis::Cols };
        let grown = expand(&w.tiling, axis).unwrap();
        prop_assert!(verify(&grown.board, &grown).unwrap().fault_free);
        let bigger = classify(&grown.board);
        prop_assert!(bigger.tileable);
        prop_assert_eq!(bigger.family.map(|f| f.tileable), Some(true));
    }

    #[test]
    fn transposable_surfaces_are_symmetric(t in prop::sample::select(vec![Topology::Rectangle, Topology::Torus]), a in 1..=40usize, b in 1..=40usize) {
        let x = classify(&BoardSpec::new(t, a, b).unwrap()).tileable;
        let y = classify(&BoardSpec::new(t, b, a).unwrap()).tileable;
        prop_assert_eq!(x, y);
    }
}
