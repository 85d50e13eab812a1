use proptest::prelude::*;
use trigrad_core::algebra::{rat, Bidegree, Polynomial, Rational, Ring};
use trigrad_core::braid::parse_braid;
use trigrad_core::factor_complex::{multiplication_map, realize, FactorComplex, PolyMatrix};
use trigrad_core::homology::linalg::{apply, columns_of, kernel, rank};
use trigrad_core::homology::*;
use trigrad_core::koszul::*;
use trigrad_core::{Error, RunConfig};

fn unknot_dims(qmax: i32) -> TriGradedDims {
    let mut t = TriGradedDims::new(qmax);
    for l in (1..=qmax).step_by(2) {
        t.add(0, -1, l, 1);
    }
    t
}

fn free_rank_one_over_x() -> FactorComplex {
    let mut ring = Ring::new();
    ring.push("x1", Bidegree::new(0, 2));
    FactorComplex::unit(ring).shifted(Bidegree::new(-1, 1), 0)
}

#[test]
fn slices_of_a_free_module() {
    let c = free_rank_one_over_x();
    for i in 0..6u16 {
        let s = slice(&c, Bidegree::new(-1, 1 + 2 * i as i32));
        assert_eq!(s.len(), 1);
        assert_eq!(s.elems[0].1 .0, vec![i]);
    }
    assert!(slice(&c, Bidegree::new(-1, -1)).is_empty());
    assert!(slice(&c, Bidegree::new(-1, 2)).is_empty());
    assert!(slice(&c, Bidegree::new(0, 1)).is_empty());
}

#[test]
fn smoothing_slice_dimensions_count_monomials() {
    let mut g = ResolutionGraph::with_vars(4);
    g.pieces = vec![
        Piece::Arc { tail: 3, head: 0 },
        Piece::Arc { tail: 2, head: 1 },
    ];
    let c = realize(&koszul_of_graph(&g).unwrap());
    // Monomials in a, x1..x4 of bidegree (2p, 2m): C(m+3, 3) choices of x-part.
    let count = |k: i32, l: i32| -> usize {
        if k < 0 || l < 0 || k % 2 != 0 || l % 2 != 0 {
            return 0;
        }
        let m = (l / 2) as usize;
        (m + 1) * (m + 2) * (m + 3) / 6
    };
    for k in -2..3 {
        for l in -2..8 {
            let want = count(k, l) + 2 * count(k + 1, l - 1) + count(k + 2, l - 2);
            assert_eq!(slice(&c, Bidegree::new(k, l)).len(), want, "({k},{l})");
        }
    }
}

fn rational_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-2i64..3, c), r).prop_map(|rows| {
            rows.into_iter()
                .map(|row| row.into_iter().map(rat).collect())
                .collect()
        })
    })
}

fn transpose(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

proptest! {
    #[test]
    fn rank_nullity(rows in rational_matrix()) {
        let (nr, nc) = (rows.len(), rows[0].len());
        let cols = columns_of(&rows);
        let (ker, rk) = kernel(&cols, nr);
        prop_assert_eq!(rk + ker.len(), nc);
        prop_assert_eq!(rank(&cols, nr), rk);
        prop_assert_eq!(rank(&columns_of(&transpose(&rows)), nc), rk);
        for v in &ker {
            prop_assert!(apply(&cols, v).is_empty());
        }
    }
}

#[test]
fn circle_homology() {
    let h = graph_homology(
        &{
            let mut g = ResolutionGraph::with_vars(1);
            g.pieces.push(Piece::Arc { tail: 0, head: 0 });
            g
        },
        21,
    )
    .unwrap();
    assert_eq!(h, unknot_dims(21));
    let named = matrix_homology(&named_closed_matrix("circle").unwrap(), 21).unwrap();
    assert_eq!(named, h);
}

#[test]
fn theta_homology_is_two_free_modules_in_two_variables() {
    let qmax = 12;
    let h = graph_homology(&theta_graph(), qmax).unwrap();
    // The stripped `a` row contributes the same {-1,1} as for the circle.
    let mut want = TriGradedDims::new(qmax);
    for m in 0..=qmax / 2 {
        want.add(0, -1, 1 + 2 * m, (m + 1) as usize);
        want.add(0, -2, 4 + 2 * m, (m + 1) as usize);
    }
    assert_eq!(h, want);
}

#[test]
fn preprocessing_agrees_with_raw_homology() {
    for name in ["circle", "theta", "upsilon-closure"] {
        let m = named_closed_matrix(name).unwrap();
        let h = matrix_homology(&m, 6).unwrap();
        let raw = raw_matrix_homology(&m.aggregate_a().unwrap(), 0, 6).unwrap();
        let mut t = TriGradedDims::new(6);
        for (bd, d) in raw {
            t.add(0, bd.k, bd.l, d);
        }
        assert_eq!(t, h, "{name}");
    }
}

#[test]
fn a_acts_trivially_on_homology() {
    for name in ["circle", "theta"] {
        let m = named_closed_matrix(name).unwrap();
        let c = realize(&m);
        let a = Polynomial::var(c.nvars(), m.a.unwrap());
        let f = multiplication_map(&c, &a);
        let mut nonzero_sources = 0;
        for k in -2..1 {
            for l in 0..7 {
                let src = slice_homology(&c, Bidegree::new(k, l)).unwrap();
                let tgt = slice_homology(&c, Bidegree::new(k + 2, l)).unwrap();
                nonzero_sources += src.dim();
                let cols = induced_map(&f.matrix, &src, &tgt).unwrap();
                assert!(cols.iter().all(|v| v.is_empty()), "{name} ({k},{l})");
            }
        }
        assert!(nonzero_sources > 0, "{name}");
    }
}

#[test]
fn identity_and_zero_maps_on_homology() {
    let m = named_closed_matrix("theta").unwrap();
    let c = realize(&m);
    let n = c.rank();
    for l in 0..6 {
        let h = slice_homology(&c, Bidegree::new(0, l)).unwrap();
        let zero = induced_map(&PolyMatrix::zero(n, n), &h, &h).unwrap();
        assert!(zero.iter().all(|v| v.is_empty()));
        let id = induced_map(&PolyMatrix::identity(n, c.nvars()), &h, &h).unwrap();
        for (i, col) in id.iter().enumerate() {
            assert_eq!(col, &vec![(i, rat(1))]);
        }
    }
}

#[test]
fn euler_characteristic_of_nothing_is_zero() {
    let e = euler_characteristic(&TriGradedDims::new(8));
    assert!(e.coeffs.values().all(|c| c.is_zero()));
}

#[test]
fn crossing_relation_on_euler_characteristics() {
    let qmax = 10;
    let cfg = RunConfig {
        qmax,
        ..RunConfig::default()
    };
    let h = braid_homology(&parse_braid("1", None).unwrap(), &cfg).unwrap();
    let theta = graph_homology(&theta_graph(), qmax).unwrap();
    let mut two = ResolutionGraph::with_vars(2);
    two.pieces = vec![
        Piece::Arc { tail: 0, head: 0 },
        Piece::Arc { tail: 1, head: 1 },
    ];
    let circles = graph_homology(&two, qmax).unwrap();
    for l in -4..=qmax {
        let want = &euler_coefficient(&theta, l) - &euler_coefficient(&circles, l - 2);
        assert_eq!(euler_coefficient(&h, l), want, "l = {l}");
    }
}

#[test]
fn shifts_are_recovered() {
    let h = unknot_dims(12);
    assert_eq!(
        compare_up_to_shift(&h, &h.shifted(1, 1, 0)).unwrap(),
        Some((1, 1, 0))
    );
    assert_eq!(
        compare_up_to_shift(&h, &h.shifted(0, 2, -2)).unwrap(),
        Some((0, 2, -2))
    );
    assert_eq!(compare_up_to_shift(&h, &h).unwrap(), Some((0, 0, 0)));
}

#[test]
fn unknot_and_hopf_link_differ() {
    let cfg = RunConfig {
        qmax: 10,
        ..RunConfig::default()
    };
    let u = braid_homology(&parse_braid("", Some(1)).unwrap(), &cfg).unwrap();
    let hopf = braid_homology(&parse_braid("1 1", None).unwrap(), &cfg).unwrap();
    assert_eq!(u, unknot_dims(10));
    assert_eq!(compare_up_to_shift(&u, &hopf).unwrap(), None);
}

#[test]
fn a_narrow_window_is_inconclusive() {
    let h = unknot_dims(3);
    let far = unknot_dims(3).shifted(0, 0, 10);
    assert!(matches!(
        compare_up_to_shift(&h, &far.truncated(9)),
        Err(Error::Inconclusive(_))
    ));
    assert!(matches!(
        compare_up_to_shift(&h, &TriGradedDims::new(5)),
        Err(Error::Inconclusive(_))
    ));
}

#[test]
fn hom_space_dimensions() {
    let m = |s: &str| named_open_matrix(s).unwrap();
    let zero = Bidegree::ZERO;
    assert_eq!(
        hom_space_dim(&m("gamma110"), &m("gamma100"), zero).unwrap(),
        1
    );
    assert_eq!(
        hom_space_dim(&m("gamma100"), &m("gamma110"), zero).unwrap(),
        0
    );
    assert_eq!(hom_space_dim(&m("S2"), &m("S2"), zero).unwrap(), 1);
    assert!(matches!(
        hom_space_dim(&m("S2"), &m("S3"), zero),
        Err(Error::PotentialMismatch(_))
    ));
}

#[test]
fn gamma1_closure_splits_into_gamma4_and_upsilon() {
    let qmax = 10;
    let h = |s: &str| matrix_homology(&named_closed_matrix(s).unwrap(), qmax).unwrap();
    let (g1, g4, up) = (
        h("gamma1-closure"),
        h("gamma4-closure"),
        h("upsilon-closure"),
    );
    let shifted = g4.shifted(0, 0, 2);
    let mut keys: Vec<_> = g1
        .dims
        .keys()
        .chain(shifted.dims.keys())
        .chain(up.dims.keys())
        .copied()
        .collect();
    keys.sort_unstable();
    keys.dedup();
    assert!(!g1.is_empty());
    for (j, k, l) in keys.into_iter().filter(|key| key.2 <= qmax) {
        assert_eq!(
            g1.get(j, k, l),
            shifted.get(j, k, l) + up.get(j, k, l),
            "({j},{k},{l})"
        );
    }
}
