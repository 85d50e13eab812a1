use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trigrad_core::algebra::{rat, Bidegree, Polynomial, Ring};
use trigrad_core::braid::{build_marked_diagram, BraidWord};
use trigrad_core::cube::resolve;
use trigrad_core::factor_complex::*;
use trigrad_core::homology::{bigraded_dims, SliceRange};
use trigrad_core::koszul::*;

fn ring4() -> Ring {
    Ring::standard(4)
}

fn x(i: usize) -> Polynomial {
    Polynomial::var(5, i)
}

fn c(v: i64) -> Polynomial {
    Polynomial::constant(5, rat(v))
}

fn smoothing() -> KoszulMatrix {
    let mut g = ResolutionGraph::with_vars(4);
    g.pieces = vec![
        Piece::Arc { tail: 3, head: 0 },
        Piece::Arc { tail: 2, head: 1 },
    ];
    koszul_of_graph(&g).unwrap()
}

fn wide() -> KoszulMatrix {
    let mut g = ResolutionGraph::with_vars(4);
    g.pieces = vec![Piece::Wide {
        x1: 0,
        x2: 1,
        x3: 2,
        x4: 3,
    }];
    koszul_of_graph(&g).unwrap()
}

// Generators of a two-row realization: e_{} = 0, e_{0} = 1, e_{1} = 2, e_{01} = 3.
const EVEN: [usize; 2] = [0, 3];
const ODD: [usize; 2] = [1, 2];

/// A 4x4 map given by its even and odd 2x2 blocks.
fn blocks(even: [[Polynomial; 2]; 2], odd: [[Polynomial; 2]; 2]) -> PolyMatrix {
    let mut rows = vec![vec![Polynomial::zero(5); 4]; 4];
    for (idx, block) in [(EVEN, even), (ODD, odd)] {
        for r in 0..2 {
            for col in 0..2 {
                rows[idx[r]][idx[col]] = block[r][col].clone();
            }
        }
    }
    PolyMatrix::from_rows(rows)
}

fn chi0() -> ChainMap {
    let m = blocks(
        [[&x(4) - &x(2), c(0)], [c(0), c(1)]],
        [[x(4), -x(2)], [c(-1), c(1)]],
    );
    ChainMap {
        matrix: m,
        degree: Bidegree::new(0, 2),
    }
}

fn chi1() -> ChainMap {
    let m = blocks(
        [[c(1), c(0)], [c(0), &x(4) - &x(2)]],
        [[c(1), x(2)], [c(1), x(4)]],
    );
    ChainMap {
        matrix: m,
        degree: Bidegree::ZERO,
    }
}

fn rows2(m: &PolyMatrix) -> Vec<Vec<Polynomial>> {
    m.to_rows(5)
}

#[test]
fn smoothing_presentation() {
    let cx = realize(&smoothing());
    let p0 = cx.d.submatrix(&ODD, &EVEN);
    let p1 = cx.d.submatrix(&EVEN, &ODD);
    assert_eq!(
        rows2(&p0),
        vec![vec![x(0), &x(3) - &x(2)], vec![x(0), &x(1) - &x(4)]]
    );
    assert_eq!(
        rows2(&p1),
        vec![vec![&x(1) - &x(4), &x(2) - &x(3)], vec![-x(0), x(0)]]
    );
    let degs: Vec<Bidegree> = cx.module.gens.iter().map(|g| g.degree).collect();
    assert_eq!(
        degs,
        vec![
            Bidegree::ZERO,
            Bidegree::new(-1, 1),
            Bidegree::new(-1, 1),
            Bidegree::new(-2, 2)
        ]
    );
    assert!(cx.check_d_squared() && cx.check_gradings());
}

#[test]
fn wide_edge_presentation() {
    let cx = realize(&wide());
    let lin = &(&x(1) + &x(2)) - &(&x(3) + &x(4));
    let quad = &(&x(1) * &x(2)) - &(&x(3) * &x(4));
    let q0 = cx.d.submatrix(&ODD, &EVEN);
    let q1 = cx.d.submatrix(&EVEN, &ODD);
    assert_eq!(
        rows2(&q0),
        vec![vec![x(0), -&quad], vec![c(0), lin.clone()]]
    );
    assert_eq!(rows2(&q1), vec![vec![lin, quad], vec![c(0), x(0)]]);
    let degs: Vec<Bidegree> = cx.module.gens.iter().map(|g| g.degree).collect();
    assert_eq!(
        degs,
        vec![
            Bidegree::ZERO,
            Bidegree::new(-1, 1),
            Bidegree::new(-1, 3),
            Bidegree::new(-2, 4)
        ]
    );
    assert!(cx.check_d_squared() && cx.check_gradings());
}

#[test]
fn single_arc_realization() {
    let mut g = ResolutionGraph::with_vars(2);
    g.pieces.push(Piece::Arc { tail: 1, head: 0 });
    let cx = realize(&koszul_of_graph(&g).unwrap());
    let n = cx.nvars();
    assert_eq!(cx.rank(), 2);
    assert_eq!(cx.d.entry(1, 0), Some(&Polynomial::var(n, 0)));
    assert_eq!(
        cx.d.entry(0, 1),
        Some(&Polynomial::linear(n, &[(1, 1), (2, -1)]))
    );
    assert_eq!(cx.module.gens[1].degree, Bidegree::new(-1, 1));
    assert!(cx.check_d_squared());
}

#[test]
fn crossing_maps_are_chain_maps_of_the_right_degree() {
    let (s, w) = (realize(&smoothing()), realize(&wide()));
    let (c0, c1) = (chi0(), chi1());
    assert!(c0.commutes(&s, &w) && c0.is_homogeneous(&s, &w));
    assert!(c1.commutes(&w, &s) && c1.is_homogeneous(&w, &s));
    let y = &x(4) - &x(2);
    assert_eq!(c1.compose(&c0), multiplication_map(&s, &y));
    assert_eq!(c0.compose(&c1), multiplication_map(&w, &y));
}

#[test]
fn crossing_maps_are_flips_after_row_operations() {
    let (s, w) = (smoothing(), wide());
    let one = c(1);
    let lam = -x(2);
    let (s2, w2) = (s.row_op(0, 1, &one).unwrap(), w.row_op(1, 0, &lam).unwrap());
    let y = &x(4) - &x(2);
    let psi_p = flip_map(FlipKind::PsiPrime, &s2, &w2, 1, &y).unwrap();
    let psi = flip_map(FlipKind::Psi, &w2, &s2, 1, &y).unwrap();
    let (rs2, rw2) = (realize(&s2), realize(&w2));
    assert!(psi_p.commutes(&rs2, &rw2) && psi_p.is_homogeneous(&rs2, &rw2));
    assert!(psi.commutes(&rw2, &rs2) && psi.is_homogeneous(&rw2, &rs2));
    assert_eq!(psi_p.degree, Bidegree::new(0, 2));
    assert_eq!(psi.degree, Bidegree::ZERO);

    // Pull the flips back to the original bases.
    let to_s2 = row_op_iso(&s, 0, 1, &one).unwrap();
    let from_w2 = row_op_iso(&w2, 1, 0, &-&lam).unwrap();
    let to_w2 = row_op_iso(&w, 1, 0, &lam).unwrap();
    let from_s2 = row_op_iso(&s2, 0, 1, &-&one).unwrap();
    let pulled0 = from_w2.compose(&psi_p).compose(&to_s2);
    let pulled1 = from_s2.compose(&psi).compose(&to_w2);
    let (rs, rw) = (realize(&s), realize(&w));
    assert!(pulled0.commutes(&rs, &rw) && pulled1.commutes(&rw, &rs));
    assert_eq!(pulled0.matrix, chi0().matrix);
    assert_eq!(pulled1.matrix, chi1().matrix);
}

#[test]
fn flip_needs_a_factorization() {
    let (s, w) = (smoothing(), wide());
    let s2 = s.row_op(0, 1, &c(1)).unwrap();
    let w2 = w.row_op(1, 0, &-x(2)).unwrap();
    assert!(flip_map(FlipKind::PsiPrime, &s2, &w2, 1, &(&x(3) - &x(2))).is_err());
}

#[test]
fn row_operation_isomorphisms_commute_with_d() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in OPEN_NAMES.iter().chain(["upsilon"].iter()) {
        let m = named_open_matrix(name).unwrap();
        let n = m.rows.len();
        if n < 2 {
            continue;
        }
        for _ in 0..3 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                continue;
            }
            let di = m.rows[i].right.bidegree(&m.ring).unwrap();
            let dj = m.rows[j].right.bidegree(&m.ring).unwrap();
            let nv = m.nvars();
            let lambda = match (di - dj).l {
                0 => Polynomial::constant(nv, rat(rng.gen_range(1..4))),
                2 => Polynomial::var(nv, rng.gen_range(1..nv)),
                _ => continue,
            };
            let iso = row_op_iso(&m, i, j, &lambda).unwrap();
            let (src, tgt) = (realize(&m), realize(&m.row_op(i, j, &lambda).unwrap()));
            assert!(iso.commutes(&src, &tgt), "{name} [{i}{j}]");
            assert!(iso.is_homogeneous(&src, &tgt), "{name} [{i}{j}]");
        }
    }
}

/// Generator count polynomial: `(parity, k, l) ↦ Σ (-1)^j`.
fn gen_char(c: &FactorComplex) -> BTreeMap<(u8, i32, i32), i64> {
    let mut m = BTreeMap::new();
    for g in &c.module.gens {
        *m.entry((g.parity, g.degree.k, g.degree.l)).or_insert(0) +=
            if g.cube % 2 == 0 { 1 } else { -1 };
    }
    m.retain(|_, v| *v != 0);
    m
}

fn char_combine(terms: &[(i64, i32, &FactorComplex)]) -> BTreeMap<(u8, i32, i32), i64> {
    let mut m = BTreeMap::new();
    for (coef, dl, c) in terms {
        for ((p, k, l), v) in gen_char(c) {
            *m.entry((p, k, l + dl)).or_insert(0) += coef * v;
        }
    }
    m.retain(|_, v| *v != 0);
    m
}

#[test]
fn cone_euler_contributions() {
    let (s, w) = (realize(&smoothing()), realize(&wide()));
    let pos = cone(&s, &w, &chi0(), 1).unwrap();
    assert_eq!(gen_char(&pos), char_combine(&[(1, 0, &w), (-1, 2, &s)]));
    let neg = cone(&w, &s, &chi1(), -1).unwrap();
    assert_eq!(gen_char(&neg), char_combine(&[(1, -2, &w), (-1, -2, &s)]));
    for k in [&pos, &neg] {
        assert!(k.check_d_squared() && k.check_cube() && k.check_gradings());
    }
    assert!(
        cone(&s, &w, &chi0(), -1).is_err(),
        "degree (0,2) map cannot build a negative crossing"
    );
}

#[test]
fn kink_complex_is_a_cone_of_the_second_crossing_map() {
    // Closing the right strands of both graphs gives a one-strand kink.
    let close = |m: &KoszulMatrix| {
        let mut c = m.clone();
        let n = c.nvars();
        c.rows.push(KoszulRow {
            left: Polynomial::var(n, 0),
            right: &Polynomial::var(n, 3) - &Polynomial::var(n, 2),
            shift: Bidegree::new(-1, 1),
        });
        c.boundary[2] = 0;
        c.boundary[3] = 0;
        c
    };
    let (s, w) = (close(&smoothing()), close(&wide()));
    let (rs, rw) = (realize(&s), realize(&w));
    let ext = |m: &PolyMatrix| {
        let mut rows = m.to_rows(5);
        for r in rows.iter_mut() {
            r.extend(vec![Polynomial::zero(5); 4]);
        }
        for i in 0..4 {
            let mut r = vec![Polynomial::zero(5); 8];
            r[4..].clone_from_slice(&m.to_rows(5)[i]);
            rows.push(r);
        }
        PolyMatrix::from_rows(rows)
    };
    let f = ChainMap {
        matrix: ext(&chi1().matrix),
        degree: Bidegree::ZERO,
    };
    assert!(f.commutes(&rw, &rs));
    let k = cone(&rw, &rs, &f, -1).unwrap();
    assert!(k.check_d_squared() && k.check_cube() && k.check_gradings());
}

#[test]
fn tensor_with_the_unit() {
    let s = realize(&smoothing());
    let u = FactorComplex::unit(ring4());
    assert_eq!(tensor(&u, &s).unwrap(), s);
    assert_eq!(tensor(&s, &u).unwrap(), s);
}

#[test]
fn tensor_is_multiplicative_on_generator_counts() {
    let (s, w) = (realize(&smoothing()), realize(&wide()));
    let pos = cone(&s, &w, &chi0(), 1).unwrap();
    let neg = cone(&w, &s, &chi1(), -1).unwrap();
    let t = tensor(&pos, &neg).unwrap();
    let (a, b) = (gen_char(&pos), gen_char(&neg));
    let mut want = BTreeMap::new();
    for ((p1, k1, l1), v1) in &a {
        for ((p2, k2, l2), v2) in &b {
            *want.entry((p1 ^ p2, k1 + k2, l1 + l2)).or_insert(0) += v1 * v2;
        }
    }
    want.retain(|_, v| *v != 0);
    assert_eq!(gen_char(&t), want);
    assert!(t.check_d_squared() && t.check_cube() && t.check_gradings());
}

/// A closed resolution with some contractible rows `(0, unit)` mixed in.
fn random_contractible_padding(rng: &mut ChaCha8Rng) -> FactorComplex {
    let n = rng.gen_range(2..=3);
    let len = rng.gen_range(1..=2);
    let w: Vec<i32> = (0..len)
        .map(|_| rng.gen_range(1..n as i32) * if rng.gen_bool(0.5) { 1 } else { -1 })
        .collect();
    let d = build_marked_diagram(&BraidWord::new(n, w.clone()).unwrap(), 1).unwrap();
    let mask = rng.gen_range(0..1u64 << w.len());
    let m = koszul_of_graph(&resolve(&d, mask))
        .unwrap()
        .aggregate_a()
        .unwrap()
        .strip_a()
        .unwrap();
    let (mut m, _) = m.exclude_greedy(None).unwrap();
    let nv = m.nvars();
    for _ in 0..rng.gen_range(1..=2) {
        let u = Polynomial::constant(nv, rat(rng.gen_range(1..4)));
        let row = KoszulRow::new(&m.ring, Polynomial::zero(nv), u).unwrap();
        let at = rng.gen_range(0..=m.rows.len());
        m.rows.insert(at, row);
    }
    // Mix the unit rows into the others with linear multipliers.
    for _ in 0..3 {
        let r = m.rows.len();
        let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
        if i == j || nv == 0 {
            continue;
        }
        // Row shifts track the degree of the right entry, which may be zero.
        let (di, dj) = (m.rows[i].shift, m.rows[j].shift);
        let lambda = match (di - dj).l {
            0 => Polynomial::constant(nv, rat(rng.gen_range(1..3))),
            2 => Polynomial::var(nv, rng.gen_range(0..nv)),
            _ => continue,
        };
        m = m.row_op(i, j, &lambda).unwrap();
    }
    realize(&m)
}

#[test]
fn simplification_preserves_homology_and_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let qmax = 6;
    for case in 0..30 {
        let c = random_contractible_padding(&mut rng);
        let s = simplify(&c);
        assert!(s.cancelled >= 1, "case {case}");
        assert_eq!(s.complex.rank() + 2 * s.cancelled, c.rank());
        assert!(s.complex.check_d_squared() && s.complex.check_gradings());
        let mut range = SliceRange::natural(&c, qmax);
        range.kmax = range.kmax.max(0);
        let before = bigraded_dims(&c, range).unwrap();
        let after = bigraded_dims(&s.complex, range).unwrap();
        assert_eq!(before, after, "case {case}");
        // π ι = Id, and ι, π are chain maps.
        let n = s.complex.rank();
        assert_eq!(
            s.projection.compose(&s.inclusion),
            PolyMatrix::identity(n, c.nvars())
        );
        assert_eq!(c.d.compose(&s.inclusion), s.inclusion.compose(&s.complex.d));
        assert_eq!(
            s.projection.compose(&c.d),
            s.complex.d.compose(&s.projection)
        );
        let again = simplify(&s.complex);
        assert_eq!(again.cancelled, 0);
        assert_eq!(again.complex, s.complex);
    }
}

#[test]
fn simplification_of_a_complex_without_units_is_trivial() {
    let c = realize(
        &named_closed_matrix("theta")
            .unwrap()
            .aggregate_a()
            .unwrap()
            .strip_a()
            .unwrap(),
    );
    let s = simplify(&c);
    assert_eq!(s.cancelled, 0);
    assert_eq!(s.complex, c);
}
