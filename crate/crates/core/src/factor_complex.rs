//! Explicit matrix factorizations over a polynomial ring: realization of
//! Koszul matrices, flip morphisms, cones, tensor products and Gaussian
//! cancellation of unit entries.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::{Bidegree, Polynomial, Rational, Ring};
use crate::error::{Error, Result};
use crate::koszul::KoszulMatrix;

/// A basis element of a graded free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub parity: u8,
    pub degree: Bidegree,
    /// Cohomological (cube) degree `j`.
    pub cube: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedFreeModule {
    pub gens: Vec<Generator>,
}

impl GradedFreeModule {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

/// A sparse matrix of polynomials stored by columns. Column `c` lists the
/// nonzero entries `(row, value)` in increasing row order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub nrows: usize,
    pub cols: Vec<Vec<(usize, Polynomial)>>,
}

impl PolyMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        PolyMatrix {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        PolyMatrix {
            nrows: n,
            cols: (0..n).map(|i| vec![(i, Polynomial::one(nvars))]).collect(),
        }
    }

    pub fn diagonal(entries: Vec<Polynomial>) -> Self {
        let n = entries.len();
        PolyMatrix {
            nrows: n,
            cols: entries
                .into_iter()
                .enumerate()
                .map(|(i, p)| if p.is_zero() { vec![] } else { vec![(i, p)] })
                .collect(),
        }
    }

    /// Builds from a dense row-major table.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = PolyMatrix::zero(nrows, ncols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, p) in row.into_iter().enumerate() {
                if !p.is_zero() {
                    m.cols[c].push((r, p));
                }
            }
        }
        m
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&Polynomial> {
        self.cols[c].iter().find(|(i, _)| *i == r).map(|(_, p)| p)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    fn add_column(
        acc: &mut BTreeMap<usize, Polynomial>,
        col: &[(usize, Polynomial)],
        factor: &Polynomial,
    ) {
        for (r, p) in col {
            let v = p * factor;
            match acc.get_mut(r) {
                Some(e) => {
                    *e += &v;
                    if e.is_zero() {
                        acc.remove(r);
                    }
                }
                None => {
                    if !v.is_zero() {
                        acc.insert(*r, v);
                    }
                }
            }
        }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.ncols(), rhs.nrows, "dimension mismatch in composition");
        // Columns are independent; large products dominate the symbolic checks.
        let cols = crate::par::map(
            rhs.cols.iter().collect(),
            |col: &Vec<(usize, Polynomial)>| {
                let mut acc = BTreeMap::new();
                for (t, b) in col {
                    Self::add_column(&mut acc, &self.cols[*t], b);
                }
                acc.into_iter().collect()
            },
        );
        PolyMatrix {
            nrows: self.nrows,
            cols,
        }
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.nrows, self.ncols()), (o.nrows, o.ncols()));
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Polynomial> = a.iter().cloned().collect();
                Self::add_column(&mut acc, b, &Polynomial::one(Self::nvars_hint(a, b)));
                acc.into_iter().collect()
            })
            .collect();
        PolyMatrix {
            nrows: self.nrows,
            cols,
        }
    }

    fn nvars_hint(a: &[(usize, Polynomial)], b: &[(usize, Polynomial)]) -> usize {
        a.first().or(b.first()).map_or(0, |(_, p)| p.nvars())
    }

    pub fn scale(&self, p: &Polynomial) -> PolyMatrix {
        PolyMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(r, v)| (*r, v * p))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, -v)).collect())
                .collect(),
        }
    }

    /// Applies `f` to every entry, dropping zeros.
    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(r, v)| (*r, f(v)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    /// Dense row-major copy, for display and small comparisons.
    pub fn to_rows(&self, nvars: usize) -> Vec<Vec<Polynomial>> {
        let mut rows = vec![vec![Polynomial::zero(nvars); self.ncols()]; self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, p) in col {
                rows[*r][c] = p.clone();
            }
        }
        rows
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        PolyMatrix {
            nrows: rows.len(),
            cols: cols
                .iter()
                .map(|&c| {
                    let mut v: Vec<(usize, Polynomial)> = self.cols[c]
                        .iter()
                        .filter_map(|(r, p)| pos.get(r).map(|&i| (i, p.clone())))
                        .collect();
                    v.sort_by_key(|e| e.0);
                    v
                })
                .collect(),
        }
    }
}

/// A 2-periodic complex of graded free modules with an additional cube
/// differential. `d` has bidegree (1,1) and flips parity; `cube_d` raises the
/// cube degree by one and preserves the bigrading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorComplex {
    pub ring: Ring,
    pub module: GradedFreeModule,
    pub d: PolyMatrix,
    pub cube_d: PolyMatrix,
    pub potential: Polynomial,
}

impl FactorComplex {
    pub fn rank(&self) -> usize {
        self.module.len()
    }

    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    /// The rank-one complex with zero differential in degree zero.
    pub fn unit(ring: Ring) -> Self {
        let n = ring.len();
        FactorComplex {
            module: GradedFreeModule {
                gens: vec![Generator {
                    parity: 0,
                    degree: Bidegree::ZERO,
                    cube: 0,
                }],
            },
            d: PolyMatrix::zero(1, 1),
            cube_d: PolyMatrix::zero(1, 1),
            potential: Polynomial::zero(n),
            ring,
        }
    }

    /// `d² = w·Id`.
    pub fn check_d_squared(&self) -> bool {
        let d2 = self.d.compose(&self.d);
        let w = PolyMatrix::identity(self.rank(), self.nvars()).scale(&self.potential);
        d2 == w
    }

    /// `∂² = 0` and `∂d + d∂ = 0`.
    pub fn check_cube(&self) -> bool {
        self.cube_d.compose(&self.cube_d).is_zero()
            && self
                .cube_d
                .compose(&self.d)
                .add(&self.d.compose(&self.cube_d))
                .is_zero()
    }

    /// Every nonzero entry of `d` has bidegree (1,1) and flips parity; every
    /// entry of `∂` has bidegree (0,0) and raises the cube degree by one.
    pub fn check_gradings(&self) -> bool {
        let gens = &self.module.gens;
        let ok = |m: &PolyMatrix, deg: Bidegree, parity_flip: u8, dj: i32| {
            m.cols.iter().enumerate().all(|(c, col)| {
                col.iter().all(|(r, p)| {
                    let want = gens[c].degree + deg - gens[*r].degree;
                    gens[*r].parity == gens[c].parity ^ parity_flip
                        && gens[*r].cube == gens[c].cube + dj
                        && p.bidegree(&self.ring) == Some(want)
                })
            })
        };
        ok(&self.d, Bidegree::new(1, 1), 1, 0) && ok(&self.cube_d, Bidegree::ZERO, 0, 1)
    }

    /// Shifts every generator by `s` and moves it to cube degree `cube`.
    pub fn shifted(&self, s: Bidegree, cube: i32) -> FactorComplex {
        let mut c = self.clone();
        for g in &mut c.module.gens {
            g.degree += s;
            g.cube = cube;
        }
        c
    }

    /// Human-readable generator table and sparse differential.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, g) in self.module.gens.iter().enumerate() {
            let _ = writeln!(
                s,
                "g{i}: parity {} degree {} cube {}",
                g.parity, g.degree, g.cube
            );
        }
        for (c, col) in self.d.cols.iter().enumerate() {
            for (r, p) in col {
                let _ = writeln!(s, "d[{r},{c}] = {}", p.display(&self.ring));
            }
        }
        for (c, col) in self.cube_d.cols.iter().enumerate() {
            for (r, p) in col {
                let _ = writeln!(s, "cube_d[{r},{c}] = {}", p.display(&self.ring));
            }
        }
        s
    }
}

/// A module map between two factorizations over the same ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub matrix: PolyMatrix,
    pub degree: Bidegree,
}

impl ChainMap {
    /// `f ∘ d_src = d_tgt ∘ f`.
    pub fn commutes(&self, src: &FactorComplex, tgt: &FactorComplex) -> bool {
        self.matrix.compose(&src.d) == tgt.d.compose(&self.matrix)
    }

    /// Checks that every entry has the declared bidegree and keeps parity.
    pub fn is_homogeneous(&self, src: &FactorComplex, tgt: &FactorComplex) -> bool {
        self.matrix.cols.iter().enumerate().all(|(c, col)| {
            col.iter().all(|(r, p)| {
                let (gs, gt) = (&src.module.gens[c], &tgt.module.gens[*r]);
                gs.parity == gt.parity
                    && p.bidegree(&src.ring) == Some(gs.degree + self.degree - gt.degree)
            })
        })
    }

    pub fn compose(&self, rhs: &ChainMap) -> ChainMap {
        ChainMap {
            matrix: self.matrix.compose(&rhs.matrix),
            degree: self.degree + rhs.degree,
        }
    }
}

fn koszul_sign(mask: u64, i: usize) -> i64 {
    if (mask & ((1u64 << i) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Realizes a Koszul matrix over the exterior basis `e_S`, `S` a subset of
/// rows. Generator `S` sits at index `S` read as a bitmask (row `i` = bit `i`).
pub fn realize(m: &KoszulMatrix) -> FactorComplex {
    let r = m.rows.len();
    assert!(r < 31, "too many rows to realize");
    let n = 1usize << r;
    let nv = m.nvars();
    let mut gens = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    for s in 0..n as u64 {
        let mut deg = m.shift;
        for (i, row) in m.rows.iter().enumerate() {
            if s >> i & 1 == 1 {
                deg += row.shift;
            }
        }
        gens.push(Generator {
            parity: (s.count_ones() % 2) as u8,
            degree: deg,
            cube: 0,
        });
        let mut col = Vec::new();
        for (i, row) in m.rows.iter().enumerate() {
            let sign = Polynomial::constant(nv, crate::algebra::rat(koszul_sign(s, i)));
            if s >> i & 1 == 0 {
                if !row.left.is_zero() {
                    col.push(((s | 1 << i) as usize, &row.left * &sign));
                }
            } else if !row.right.is_zero() {
                col.push(((s & !(1 << i)) as usize, &row.right * &sign));
            }
        }
        col.sort_by_key(|e| e.0);
        cols.push(col);
    }
    FactorComplex {
        ring: m.ring.clone(),
        module: GradedFreeModule { gens },
        d: PolyMatrix { nrows: n, cols },
        cube_d: PolyMatrix::zero(n, n),
        potential: m.potential(),
    }
}

/// Which flip morphism to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipKind {
    /// `ψ(y)`: from `(x, y z)` to `(x y, z)`, components 1 on `e_S` without the
    /// row and `y` on `e_S` with it.
    Psi,
    /// `ψ'(y)`: from `(x y, z)` to `(x, y z)`, components `y` and 1.
    PsiPrime,
}

/// The flip morphism on row `row`, identity on all other rows.
pub fn flip_map(
    kind: FlipKind,
    src: &KoszulMatrix,
    tgt: &KoszulMatrix,
    row: usize,
    y: &Polynomial,
) -> Result<ChainMap> {
    if src.rows.len() != tgt.rows.len() || src.ring != tgt.ring || row >= src.rows.len() {
        return Err(Error::Invalid(
            "flip map needs matrices of the same shape".into(),
        ));
    }
    for (i, (a, b)) in src.rows.iter().zip(&tgt.rows).enumerate() {
        if i != row && (a.left != b.left || a.right != b.right) {
            return Err(Error::Invalid(format!(
                "row {i} differs between source and target"
            )));
        }
    }
    let (s, t) = (&src.rows[row], &tgt.rows[row]);
    let ok = match kind {
        FlipKind::Psi => s.right == y * &t.right && t.left == &s.left * y,
        FlipKind::PsiPrime => t.right == y * &s.right && s.left == &t.left * y,
    };
    if !ok {
        return Err(Error::Invalid(
            "row entries do not factor through the flip factor".into(),
        ));
    }
    let nv = src.nvars();
    let n = 1usize << src.rows.len();
    let one = Polynomial::one(nv);
    let diag = (0..n)
        .map(|m| {
            let has = m >> row & 1 == 1;
            match (kind, has) {
                (FlipKind::Psi, false) | (FlipKind::PsiPrime, true) => one.clone(),
                _ => y.clone(),
            }
        })
        .collect();
    let yd = y.bidegree(&src.ring).unwrap_or(Bidegree::ZERO);
    let degree = match kind {
        FlipKind::Psi => tgt.shift - src.shift,
        FlipKind::PsiPrime => yd + tgt.shift - src.shift,
    };
    Ok(ChainMap {
        matrix: PolyMatrix::diagonal(diag),
        degree,
    })
}

/// The isomorphism `realize(m) -> realize(m.row_op(i, j, λ))`.
///
/// In exterior-algebra terms the old basis vector `θ_i` becomes
/// `θ'_i - λ θ'_j`; the returned map rewrites every `e_S` accordingly.
pub fn row_op_iso(m: &KoszulMatrix, i: usize, j: usize, lambda: &Polynomial) -> Result<ChainMap> {
    m.row_op(i, j, lambda)?;
    let nv = m.nvars();
    let n = 1usize << m.rows.len();
    let mut cols = Vec::with_capacity(n);
    for s in 0..n as u64 {
        let mut col = vec![(s as usize, Polynomial::one(nv))];
        if s >> i & 1 == 1 && s >> j & 1 == 0 {
            let t = (s & !(1 << i)) | 1 << j;
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            let between = (s & ((1u64 << hi) - 1) & !((1u64 << (lo + 1)) - 1)).count_ones();
            let sign = if between % 2 == 0 { -1 } else { 1 };
            col.push((t as usize, lambda.scale(&crate::algebra::rat(sign))));
            col.sort_by_key(|e| e.0);
        }
        cols.push(col);
    }
    Ok(ChainMap {
        matrix: PolyMatrix { nrows: n, cols },
        degree: Bidegree::ZERO,
    })
}

/// Cone of the crossing map `f: src -> tgt`.
///
/// For a positive crossing `src` (the smoothing) is shifted by {0,2} and
/// placed in cube degree -1, `tgt` in degree 0. For a negative crossing both
/// are shifted by {0,-2}, `src` (the wide edge) in degree 0 and `tgt` in 1.
/// The inner differential of the piece in cube degree `j` is multiplied by
/// `(-1)^j`, which turns the chain map into an anticommuting `∂`.
pub fn cone(
    src: &FactorComplex,
    tgt: &FactorComplex,
    f: &ChainMap,
    sign: i8,
) -> Result<FactorComplex> {
    if !src.cube_d.is_zero() || !tgt.cube_d.is_zero() {
        return Err(Error::Invalid(
            "cone inputs must have no cube differential".into(),
        ));
    }
    if src.ring != tgt.ring || f.matrix.nrows != tgt.rank() || f.matrix.ncols() != src.rank() {
        return Err(Error::Invalid(
            "chain map does not match the complexes".into(),
        ));
    }
    let (s_shift, t_shift, j0) = match sign {
        1 => (Bidegree::new(0, 2), Bidegree::ZERO, -1),
        -1 => (Bidegree::new(0, -2), Bidegree::new(0, -2), 0),
        _ => return Err(Error::Invalid("crossing sign must be ±1".into())),
    };
    let expected = if sign == 1 {
        Bidegree::new(0, 2)
    } else {
        Bidegree::ZERO
    };
    if f.degree != expected {
        return Err(Error::Invalid(format!(
            "crossing map has degree {} but the cone needs {expected}",
            f.degree
        )));
    }
    let a = src.shifted(s_shift, j0);
    let b = tgt.shifted(t_shift, j0 + 1);
    let (na, nb) = (a.rank(), b.rank());
    let mut gens = a.module.gens.clone();
    gens.extend(b.module.gens.iter().copied());
    let sgn = |m: &PolyMatrix, j: i32| if j % 2 == 0 { m.clone() } else { m.neg() };
    let da = sgn(&a.d, j0);
    let db = sgn(&b.d, j0 + 1);
    let mut dcols = Vec::with_capacity(na + nb);
    for c in da.cols {
        dcols.push(c);
    }
    for c in db.cols {
        dcols.push(c.into_iter().map(|(r, p)| (r + na, p)).collect());
    }
    let mut ccols: Vec<Vec<(usize, Polynomial)>> = Vec::with_capacity(na + nb);
    for c in &f.matrix.cols {
        ccols.push(c.iter().map(|(r, p)| (r + na, p.clone())).collect());
    }
    ccols.extend((0..nb).map(|_| Vec::new()));
    Ok(FactorComplex {
        ring: src.ring.clone(),
        module: GradedFreeModule { gens },
        d: PolyMatrix {
            nrows: na + nb,
            cols: dcols,
        },
        cube_d: PolyMatrix {
            nrows: na + nb,
            cols: ccols,
        },
        potential: src.potential.clone(),
    })
}

/// Tensor product over the common ring. Generator `(g1, g2)` has index
/// `g1 * rank(c2) + g2`; the second factor's differentials carry the sign
/// `(-1)^(parity(g1) + cube(g1))`.
pub fn tensor(c1: &FactorComplex, c2: &FactorComplex) -> Result<FactorComplex> {
    if c1.ring != c2.ring {
        return Err(Error::Invalid("tensor product needs a common ring".into()));
    }
    let (n1, n2) = (c1.rank(), c2.rank());
    let mut gens = Vec::with_capacity(n1 * n2);
    for g1 in &c1.module.gens {
        for g2 in &c2.module.gens {
            gens.push(Generator {
                parity: g1.parity ^ g2.parity,
                degree: g1.degree + g2.degree,
                cube: g1.cube + g2.cube,
            });
        }
    }
    let combine = |m1: &PolyMatrix, m2: &PolyMatrix| -> PolyMatrix {
        let mut cols = Vec::with_capacity(n1 * n2);
        for (i1, g1) in c1.module.gens.iter().enumerate() {
            let odd = (g1.parity as i32 + g1.cube).rem_euclid(2) == 1;
            for i2 in 0..n2 {
                let mut col: Vec<(usize, Polynomial)> = m1.cols[i1]
                    .iter()
                    .map(|(r, p)| (r * n2 + i2, p.clone()))
                    .collect();
                for (r, p) in &m2.cols[i2] {
                    col.push((i1 * n2 + r, if odd { -p } else { p.clone() }));
                }
                col.sort_by_key(|e| e.0);
                cols.push(col);
            }
        }
        PolyMatrix {
            nrows: n1 * n2,
            cols,
        }
    };
    Ok(FactorComplex {
        ring: c1.ring.clone(),
        module: GradedFreeModule { gens },
        d: combine(&c1.d, &c2.d),
        cube_d: combine(&c1.cube_d, &c2.cube_d),
        potential: &c1.potential + &c2.potential,
    })
}

/// Result of Gaussian cancellation: the smaller complex, the inclusion
/// `ι: C' -> C` and the projection `π: C -> C'` (with `π ι = Id`).
#[derive(Clone, Debug)]
pub struct Simplified {
    pub complex: FactorComplex,
    pub inclusion: PolyMatrix,
    pub projection: PolyMatrix,
    /// Number of cancelled generator pairs.
    pub cancelled: usize,
}

impl Simplified {
    /// Transports a map `f: A -> B` to `π_B f ι_A`.
    pub fn transport(f: &PolyMatrix, src: &Simplified, tgt: &Simplified) -> PolyMatrix {
        if src.cancelled == 0 && tgt.cancelled == 0 {
            return f.clone();
        }
        tgt.projection.compose(&f.compose(&src.inclusion))
    }
}

type SparseCols = Vec<BTreeMap<usize, Polynomial>>;

fn transpose_support(cols: &SparseCols, nrows: usize) -> Vec<BTreeSet<usize>> {
    let mut rows = vec![BTreeSet::new(); nrows];
    for (c, col) in cols.iter().enumerate() {
        for r in col.keys() {
            rows[*r].insert(c);
        }
    }
    rows
}

/// Cancels unit entries of `d` one at a time until none remain. Requires a
/// complex with zero potential. `∂` is transported as `π ∂ ι`.
pub fn simplify(c: &FactorComplex) -> Simplified {
    let n = c.rank();
    let nv = c.nvars();
    assert!(
        c.potential.is_zero(),
        "Gaussian cancellation needs potential zero"
    );
    let mut d: SparseCols =
        c.d.cols
            .iter()
            .map(|col| col.iter().cloned().collect())
            .collect();
    let mut rows = transpose_support(&d, n);
    let mut alive = vec![true; n];
    // ι columns as sparse vectors over the original basis; π rows likewise.
    let mut incl: SparseCols = (0..n)
        .map(|i| BTreeMap::from([(i, Polynomial::one(nv))]))
        .collect();
    let mut proj: SparseCols = (0..n)
        .map(|i| BTreeMap::from([(i, Polynomial::one(nv))]))
        .collect();
    let mut cancelled = 0;
    loop {
        let mut pick = None;
        'search: for a in 0..n {
            if !alive[a] {
                continue;
            }
            for (b, p) in &d[a] {
                if *b != a && alive[*b] && p.as_unit().is_some() {
                    pick = Some((a, *b));
                    break 'search;
                }
            }
        }
        let Some((a, b)) = pick else { break };
        cancelled += 1;
        let u_inv: Rational = d[a][&b].as_unit().unwrap().recip();
        let u_inv_p = Polynomial::constant(nv, u_inv);
        // entries d[y][a] for y != b and d[b][x] for x != a
        let col_a: Vec<(usize, Polynomial)> = d[a]
            .iter()
            .filter(|(y, _)| **y != b)
            .map(|(y, p)| (*y, p.clone()))
            .collect();
        let row_b: Vec<(usize, Polynomial)> = rows[b]
            .iter()
            .filter(|x| **x != a)
            .map(|x| (*x, d[*x][&b].clone()))
            .collect();
        // ι(x) -= u⁻¹ d_bx ι(a)
        let incl_a = incl[a].clone();
        for (x, dbx) in &row_b {
            let f = -(dbx * &u_inv_p);
            for (k, v) in &incl_a {
                let e = incl[*x].entry(*k).or_insert_with(|| Polynomial::zero(nv));
                *e += &(v * &f);
                if e.is_zero() {
                    incl[*x].remove(k);
                }
            }
        }
        // π(y) -= d_ya u⁻¹ π(b)
        let proj_b = proj[b].clone();
        for (y, dya) in &col_a {
            let f = -(dya * &u_inv_p);
            for (k, v) in &proj_b {
                let e = proj[*y].entry(*k).or_insert_with(|| Polynomial::zero(nv));
                *e += &(v * &f);
                if e.is_zero() {
                    proj[*y].remove(k);
                }
            }
        }
        // d_yx -= d_ya u⁻¹ d_bx
        for (x, dbx) in &row_b {
            let f = dbx * &u_inv_p;
            for (y, dya) in &col_a {
                let v = -(dya * &f);
                let e = d[*x].entry(*y).or_insert_with(|| Polynomial::zero(nv));
                *e += &v;
                if e.is_zero() {
                    d[*x].remove(y);
                    rows[*y].remove(x);
                } else {
                    rows[*y].insert(*x);
                }
            }
        }
        for g in [a, b] {
            alive[g] = false;
            let col: Vec<usize> = d[g].keys().copied().collect();
            for r in col {
                rows[r].remove(&g);
            }
            d[g].clear();
            let row: Vec<usize> = rows[g].iter().copied().collect();
            for x in row {
                d[x].remove(&g);
            }
            rows[g].clear();
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let m = keep.len();
    let dcols = keep
        .iter()
        .map(|&x| d[x].iter().map(|(y, p)| (pos[y], p.clone())).collect())
        .collect();
    let inclusion = PolyMatrix {
        nrows: n,
        cols: keep
            .iter()
            .map(|&x| incl[x].clone().into_iter().collect())
            .collect(),
    };
    // π as a matrix C -> C': column k lists the kept y with proj[y][k] != 0.
    let mut pcols: Vec<Vec<(usize, Polynomial)>> = vec![Vec::new(); n];
    for (i, &y) in keep.iter().enumerate() {
        for (k, v) in &proj[y] {
            pcols[*k].push((i, v.clone()));
        }
    }
    let projection = PolyMatrix {
        nrows: m,
        cols: pcols,
    };
    let d_new = PolyMatrix {
        nrows: m,
        cols: dcols,
    };
    let cube_d = if cancelled == 0 {
        c.cube_d.clone()
    } else {
        projection.compose(&c.cube_d.compose(&inclusion))
    };
    let gens = keep.iter().map(|&g| c.module.gens[g]).collect();
    Simplified {
        complex: FactorComplex {
            ring: c.ring.clone(),
            module: GradedFreeModule { gens },
            d: d_new,
            cube_d,
            potential: c.potential.clone(),
        },
        inclusion,
        projection,
        cancelled,
    }
}

/// Multiplication by a polynomial as an endomorphism of `c`.
pub fn multiplication_map(c: &FactorComplex, p: &Polynomial) -> ChainMap {
    let degree = p.bidegree(&c.ring).unwrap_or(Bidegree::ZERO);
    ChainMap {
        matrix: PolyMatrix::identity(c.rank(), c.nvars()).scale(p),
        degree,
    }
}
