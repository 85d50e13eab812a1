use proptest::prelude::*;
use trigrad_core::braid::*;

fn braid_strategy() -> impl Strategy<Value = BraidWord> {
    (2usize..5).prop_flat_map(|n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(l, s)| if s { l } else { -l });
        prop::collection::vec(letter, 0..8).prop_map(move |w| BraidWord::new(n, w).unwrap())
    })
}

#[test]
fn parsing_examples() {
    let t = parse_braid("1 1 1", None).unwrap();
    assert_eq!((t.strands(), t.letters()), (2, &[1, 1, 1][..]));
    let f = parse_braid("1 -2 1 -2", None).unwrap();
    assert_eq!((f.strands(), f.letters()), (3, &[1, -2, 1, -2][..]));
    let u = parse_braid("", Some(1)).unwrap();
    assert_eq!((u.strands(), u.len()), (1, 0));
    assert_eq!(parse_braid("n=4 1", None).unwrap().strands(), 4);
}

#[test]
fn component_counts() {
    let c = |s: &str| closure_components(&parse_braid(s, None).unwrap());
    assert_eq!(c("1 1 1"), 1);
    assert_eq!(c("1 1"), 2);
    assert_eq!(c("1 -2 1 -2"), 1);
}

#[test]
fn move_examples() {
    let t = parse_braid("1 1 1", None).unwrap();
    let s = apply_markov(&t, &MarkovMove::StabilizePositive).unwrap();
    assert_eq!((s.strands(), s.letters()), (3, &[1, 1, 1, 2][..]));
    assert_eq!(
        apply_markov(&t, &MarkovMove::Conjugate { shift: 1 }).unwrap(),
        t
    );
    let r = parse_braid("1 2 1", None).unwrap();
    assert_eq!(
        apply_markov(&r, &MarkovMove::BraidRelation { pos: 0 })
            .unwrap()
            .letters(),
        &[2, 1, 2]
    );
}

#[test]
fn marked_diagram_counts() {
    let u = build_marked_diagram(&parse_braid("", Some(1)).unwrap(), 1).unwrap();
    assert_eq!((u.num_vars, u.crossings.len(), u.arcs.len()), (1, 0, 1));
    let one = build_marked_diagram(&parse_braid("1", None).unwrap(), 1).unwrap();
    assert_eq!((one.num_vars, one.crossings.len()), (4, 1));
    assert!(build_marked_diagram(&parse_braid("1", None).unwrap(), 0).is_err());
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(b in braid_strategy()) {
        prop_assert_eq!(parse_braid(&b.to_string(), None).unwrap(), b);
    }

    #[test]
    fn moves_preserve_component_count(b in braid_strategy(), shift in 0usize..8, pos in 0usize..8) {
        let k = closure_components(&b);
        let moves = [
            MarkovMove::Conjugate { shift },
            MarkovMove::FarCommute { pos },
            MarkovMove::CancelPair { pos },
            MarkovMove::InsertPair { pos: pos.min(b.len()), letter: 1 },
            MarkovMove::BraidRelation { pos },
            MarkovMove::StabilizePositive,
            MarkovMove::StabilizeNegative,
            MarkovMove::Destabilize,
        ];
        for mv in &moves {
            if let Ok(c) = apply_markov(&b, mv) {
                prop_assert_eq!(closure_components(&c), k, "{:?}", mv);
            }
        }
    }

    #[test]
    fn every_mark_has_one_incoming_and_one_outgoing_end(b in braid_strategy(), marks in 1usize..3) {
        let d = build_marked_diagram(&b, marks).unwrap();
        let mut ins = vec![0; d.num_vars];
        let mut outs = vec![0; d.num_vars];
        for c in &d.crossings {
            outs[c.x1] += 1;
            outs[c.x2] += 1;
            ins[c.x3] += 1;
            ins[c.x4] += 1;
        }
        for a in &d.arcs {
            outs[a.head] += 1;
            ins[a.tail] += 1;
        }
        prop_assert!(ins.iter().all(|&v| v == 1) && outs.iter().all(|&v| v == 1));
    }
}
