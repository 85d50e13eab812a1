//! Slice-by-slice homology of factorizations and of the cube complex.
//!
//! A factorization over a positively graded polynomial ring splits into
//! finite-dimensional rational vector spaces, one per bidegree `(k,l)`,
//! spanned by pairs (generator, monomial). The differential raises the
//! bidegree by (1,1), so homology is computed one slice at a time.

pub mod linalg;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{qt_expand, Bidegree, LaurentQT, Monomial, QSeries, Rational, Ring};
use crate::braid::BraidWord;
use crate::cube::{build_cube, CubeComplex};
use crate::error::{Error, Result};
use crate::factor_complex::{realize, FactorComplex, PolyMatrix};
use crate::koszul::{koszul_of_graph, KoszulMatrix, ResolutionGraph};
use crate::RunConfig;

use linalg::{Echelon, SparseVec};

/// The pairs (generator, monomial) of total bidegree `bidegree`, ordered by
/// generator and then monomial.
#[derive(Clone, Debug, Default)]
pub struct SliceBasis {
    pub bidegree: Bidegree,
    pub elems: Vec<(usize, Monomial)>,
    index: BTreeMap<(usize, Monomial), usize>,
}

impl SliceBasis {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, gen: usize, m: &Monomial) -> Option<usize> {
        self.index.get(&(gen, m.clone())).copied()
    }
}

pub fn slice(c: &FactorComplex, bidegree: Bidegree) -> SliceBasis {
    let mut elems = Vec::new();
    for (g, gen) in c.module.gens.iter().enumerate() {
        for m in c.ring.monomials_of_degree(bidegree - gen.degree) {
            elems.push((g, m));
        }
    }
    let index = elems
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    SliceBasis {
        bidegree,
        elems,
        index,
    }
}

/// Columns of the rational matrix of `m` from slice `src` to slice `tgt`.
pub fn slice_matrix(m: &PolyMatrix, src: &SliceBasis, tgt: &SliceBasis) -> Result<Vec<SparseVec>> {
    let mut cols = Vec::with_capacity(src.len());
    for (g, mono) in &src.elems {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (r, p) in &m.cols[*g] {
            for (pm, c) in p.terms() {
                let key = pm.mul(mono);
                let i = tgt.index_of(*r, &key).ok_or_else(|| {
                    Error::Invalid(format!(
                        "map is not homogeneous between slices {} and {}",
                        src.bidegree, tgt.bidegree
                    ))
                })?;
                let e = acc.entry(i).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    acc.remove(&i);
                }
            }
        }
        cols.push(acc.into_iter().collect());
    }
    Ok(cols)
}

/// Homology of one slice with explicit cycle representatives.
#[derive(Clone, Debug)]
pub struct SliceHomology {
    pub basis: SliceBasis,
    /// Cycle representatives, one per homology basis vector.
    pub reps: Vec<SparseVec>,
    /// Boundaries (zero labels) and representatives (unit labels).
    solver: Echelon,
}

impl SliceHomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn coordinates(&self, cycle: &[(usize, Rational)]) -> Result<SparseVec> {
        let r = self.solver.reduce(cycle);
        if !r.remainder.is_empty() {
            return Err(Error::Invalid("vector is not a cycle".into()));
        }
        Ok(r.label)
    }
}

/// Homology of `c` at one bidegree, with representatives.
pub fn slice_homology(c: &FactorComplex, bd: Bidegree) -> Result<SliceHomology> {
    let one = Bidegree::new(1, 1);
    let here = slice(c, bd);
    let below = slice(c, bd - one);
    let above = slice(c, bd + one);
    let d_in = slice_matrix(&c.d, &below, &here)?;
    let d_out = slice_matrix(&c.d, &here, &above)?;
    let (cycles, _) = linalg::kernel(&d_out, above.len());
    let mut solver = Echelon::new(here.len());
    for b in &d_in {
        solver.add(b);
    }
    let mut reps = Vec::new();
    for z in cycles {
        let r = solver.reduce(&z);
        if r.remainder.is_empty() {
            continue;
        }
        let lead = r.remainder[0].1.clone();
        let t = reps.len();
        // The solver stores remainder/lead with label e_t; that stored row is
        // the representative of class t.
        let rep: SparseVec = r.remainder.iter().map(|(i, x)| (*i, x / &lead)).collect();
        solver.insert(r.remainder, alloc::vec![(t, lead)]);
        reps.push(rep);
    }
    Ok(SliceHomology {
        basis: here,
        reps,
        solver,
    })
}

/// Dimension only: `dim − rank(d_out) − rank(d_in)`.
pub fn slice_homology_dim(c: &FactorComplex, bd: Bidegree) -> Result<usize> {
    let one = Bidegree::new(1, 1);
    let here = slice(c, bd);
    if here.is_empty() {
        return Ok(0);
    }
    let below = slice(c, bd - one);
    let above = slice(c, bd + one);
    let r_in = linalg::rank(&slice_matrix(&c.d, &below, &here)?, here.len());
    let r_out = linalg::rank(&slice_matrix(&c.d, &here, &above)?, above.len());
    Ok(here.len() - r_out - r_in)
}

/// The map induced on homology by a chain map, as columns in target
/// representative coordinates.
pub fn induced_map(
    f: &PolyMatrix,
    src: &SliceHomology,
    tgt: &SliceHomology,
) -> Result<Vec<SparseVec>> {
    let m = slice_matrix(f, &src.basis, &tgt.basis)?;
    src.reps
        .iter()
        .map(|z| tgt.coordinates(&linalg::apply(&m, z)))
        .collect()
}

/// Bounds of the slices to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceRange {
    pub kmin: i32,
    pub kmax: i32,
    pub lmin: i32,
    pub lmax: i32,
}

impl SliceRange {
    /// For rings without k-graded variables: k spans the generator degrees,
    /// l runs from the lowest generator degree to `qmax`.
    pub fn natural(c: &FactorComplex, qmax: i32) -> SliceRange {
        let g = &c.module.gens;
        SliceRange {
            kmin: g.iter().map(|g| g.degree.k).min().unwrap_or(0),
            kmax: g.iter().map(|g| g.degree.k).max().unwrap_or(-1),
            lmin: g.iter().map(|g| g.degree.l).min().unwrap_or(0),
            lmax: qmax,
        }
    }

    fn points(&self) -> Vec<Bidegree> {
        let mut v = Vec::new();
        for k in self.kmin..=self.kmax {
            for l in self.lmin..=self.lmax {
                v.push(Bidegree::new(k, l));
            }
        }
        v
    }
}

/// Nonzero homology dimensions of `c` over a range of slices.
pub fn bigraded_dims(c: &FactorComplex, range: SliceRange) -> Result<BTreeMap<Bidegree, usize>> {
    let pts = range.points();
    let dims = crate::par::map(pts.clone(), |bd| slice_homology_dim(c, bd));
    let mut out = BTreeMap::new();
    for (bd, d) in pts.into_iter().zip(dims) {
        let d = d?;
        if d > 0 {
            out.insert(bd, d);
        }
    }
    Ok(out)
}

/// Dimensions `(j,k,l) ↦ dim` for `l ≤ qmax`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriGradedDims {
    pub dims: BTreeMap<(i32, i32, i32), usize>,
    pub qmax: i32,
    /// Shift applied to raw gradings (zero unless explicitly normalized).
    pub shift: (i32, i32, i32),
}

impl TriGradedDims {
    pub fn new(qmax: i32) -> Self {
        TriGradedDims {
            dims: BTreeMap::new(),
            qmax,
            shift: (0, 0, 0),
        }
    }

    pub fn get(&self, j: i32, k: i32, l: i32) -> usize {
        self.dims.get(&(j, k, l)).copied().unwrap_or(0)
    }

    /// Adds to an entry, ignoring zeros and anything above `qmax`.
    pub fn add(&mut self, j: i32, k: i32, l: i32, d: usize) {
        if d > 0 && l <= self.qmax {
            *self.dims.entry((j, k, l)).or_insert(0) += d;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn min_l(&self) -> Option<i32> {
        self.dims.keys().map(|k| k.2).min()
    }

    /// Moves every entry by `(dj, dk, dl)`; `qmax` moves with it.
    pub fn shifted(&self, dj: i32, dk: i32, dl: i32) -> TriGradedDims {
        TriGradedDims {
            dims: self
                .dims
                .iter()
                .map(|(&(j, k, l), &d)| ((j + dj, k + dk, l + dl), d))
                .collect(),
            qmax: self.qmax + dl,
            shift: (self.shift.0 + dj, self.shift.1 + dk, self.shift.2 + dl),
        }
    }

    /// Entries with `l ≤ lmax`.
    pub fn truncated(&self, lmax: i32) -> TriGradedDims {
        TriGradedDims {
            dims: self
                .dims
                .iter()
                .filter(|(k, _)| k.2 <= lmax)
                .map(|(k, v)| (*k, *v))
                .collect(),
            qmax: lmax.min(self.qmax),
            shift: self.shift,
        }
    }

    fn from_bigraded(dims: &BTreeMap<Bidegree, usize>, qmax: i32) -> TriGradedDims {
        let mut t = TriGradedDims::new(qmax);
        for (bd, d) in dims {
            t.add(0, bd.k, bd.l, *d);
        }
        t
    }
}

/// Homology of a closed Koszul matrix: aggregate `a`, strip it, exclude
/// internal variables, realize and compute every slice with `l ≤ qmax`.
pub fn matrix_homology(m: &KoszulMatrix, qmax: i32) -> Result<TriGradedDims> {
    if m.boundary.iter().any(|&s| s != 0) {
        return Err(Error::NotClosed("matrix has boundary variables".into()));
    }
    let stripped = m.aggregate_a()?.strip_a()?;
    let (reduced, _) = stripped.exclude_greedy(None)?;
    let c = realize(&reduced);
    let dims = bigraded_dims(&c, SliceRange::natural(&c, qmax))?;
    Ok(TriGradedDims::from_bigraded(&dims, qmax))
}

/// Homology of a closed graph; cube degree is always 0.
pub fn graph_homology(g: &ResolutionGraph, qmax: i32) -> Result<TriGradedDims> {
    if !g.is_closed()? {
        return Err(Error::NotClosed("graph has boundary marks".into()));
    }
    matrix_homology(&koszul_of_graph(g)?, qmax)
}

/// Homology of a Koszul matrix realized as is, over its full ring (which may
/// contain `a`), for `k ≤ kmax` and `l ≤ qmax`. No preprocessing; used to
/// validate the preprocessed paths.
pub fn raw_matrix_homology(
    m: &KoszulMatrix,
    kmax: i32,
    qmax: i32,
) -> Result<BTreeMap<Bidegree, usize>> {
    let c = realize(m);
    let mut range = SliceRange::natural(&c, qmax);
    range.kmax = kmax;
    bigraded_dims(&c, range)
}

/// Per-slice data of one cube computation.
fn cube_slice(cube: &CubeComplex, bd: Bidegree) -> Result<Vec<(i32, usize)>> {
    let homs: Vec<SliceHomology> = cube
        .vertices
        .iter()
        .map(|v| slice_homology(&v.complex, bd))
        .collect::<Result<_>>()?;
    let mut by_j: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for v in &cube.vertices {
        by_j.entry(v.cube_degree).or_default().push(v.mask as usize);
    }
    // offset of each vertex inside its CH^j
    let mut offset = alloc::vec![0usize; cube.vertices.len()];
    let mut ch_dim: BTreeMap<i32, usize> = BTreeMap::new();
    for (j, vs) in &by_j {
        let mut o = 0;
        for &v in vs {
            offset[v] = o;
            o += homs[v].dim();
        }
        ch_dim.insert(*j, o);
    }
    let mut cols: BTreeMap<i32, Vec<BTreeMap<usize, Rational>>> = ch_dim
        .iter()
        .map(|(j, d)| (*j, alloc::vec![BTreeMap::new(); *d]))
        .collect();
    for e in &cube.edges {
        let (s, t) = (e.from as usize, e.to as usize);
        if homs[s].dim() == 0 || homs[t].dim() == 0 {
            continue;
        }
        let m = induced_map(&e.map, &homs[s], &homs[t])?;
        let j = cube.vertices[s].cube_degree;
        let target = &mut cols.get_mut(&j).unwrap();
        for (c, col) in m.into_iter().enumerate() {
            let dst = &mut target[offset[s] + c];
            for (r, x) in col {
                let v = if e.sign < 0 { -x } else { x };
                let entry = dst.entry(offset[t] + r).or_insert_with(Rational::zero);
                *entry += v;
                if entry.is_zero() {
                    dst.remove(&(offset[t] + r));
                }
            }
        }
    }
    let mut rank: BTreeMap<i32, usize> = BTreeMap::new();
    for (j, cs) in &cols {
        let sparse: Vec<SparseVec> = cs
            .iter()
            .map(|c| c.iter().map(|(i, x)| (*i, x.clone())).collect())
            .collect();
        let rows = ch_dim.get(&(j + 1)).copied().unwrap_or(0);
        rank.insert(*j, linalg::rank(&sparse, rows));
    }
    let mut out = Vec::new();
    for (j, d) in &ch_dim {
        let h = d - rank[j] - rank.get(&(j - 1)).copied().unwrap_or(0);
        if h > 0 {
            out.push((*j, h));
        }
    }
    Ok(out)
}

/// Cohomology of the cube complex built from vertex homologies, for every
/// slice with `l ≤ qmax`.
pub fn link_homology(cube: &CubeComplex, qmax: i32) -> Result<TriGradedDims> {
    let gens = cube
        .vertices
        .iter()
        .flat_map(|v| v.complex.module.gens.iter());
    let mut ks: Vec<i32> = gens.clone().map(|g| g.degree.k).collect();
    ks.sort_unstable();
    ks.dedup();
    let lmin = gens.map(|g| g.degree.l).min().unwrap_or(0);
    let mut pts = Vec::new();
    for &k in &ks {
        for l in lmin..=qmax {
            pts.push(Bidegree::new(k, l));
        }
    }
    let res = crate::par::map(pts.clone(), |bd| cube_slice(cube, bd));
    let mut t = TriGradedDims::new(qmax);
    for (bd, r) in pts.into_iter().zip(res) {
        for (j, d) in r? {
            t.add(j, bd.k, bd.l, d);
        }
    }
    Ok(t)
}

/// Triply-graded homology of the closure of a braid.
pub fn braid_homology(b: &BraidWord, cfg: &RunConfig) -> Result<TriGradedDims> {
    let cube = build_cube(b, cfg)?;
    link_homology(&cube, cfg.qmax)
}

/// `Σ (-1)^j t^k q^l dim`, as a q-series with Laurent coefficients in t.
pub fn euler_characteristic(h: &TriGradedDims) -> QSeries {
    let mut s = QSeries::new(h.qmax);
    for (&(j, k, l), &d) in &h.dims {
        let c = Rational::from_integer((d as i64).into());
        s.add_term(l, k, if j.rem_euclid(2) == 0 { c } else { -c });
    }
    s
}

/// Outcome of comparing the Euler characteristic with the HOMFLYPT oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerComparison {
    pub homology: QSeries,
    pub oracle: QSeries,
    /// Lowest q-exponent where the two series differ.
    pub first_mismatch: Option<i32>,
}

impl EulerComparison {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares the two series coefficientwise for every `l ≤ qmax`.
pub fn compare_series(homology: QSeries, oracle: QSeries) -> EulerComparison {
    let mut ls: Vec<i32> = homology
        .coeffs
        .keys()
        .chain(oracle.coeffs.keys())
        .copied()
        .collect();
    ls.sort_unstable();
    let first_mismatch = ls
        .into_iter()
        .find(|&l| homology.coeff(l) != oracle.coeff(l));
    EulerComparison {
        homology,
        oracle,
        first_mismatch,
    }
}

/// Euler characteristic of the unreduced homology against `F` expanded to `qmax`.
pub fn euler_check(b: &BraidWord, cfg: &RunConfig) -> Result<EulerComparison> {
    let mut cfg = cfg.clone();
    cfg.reduced = false;
    let h = braid_homology(b, &cfg)?;
    let f = crate::homfly::homfly_f(b)?;
    let oracle = qt_expand(&f, cfg.qmax)?;
    Ok(compare_series(euler_characteristic(&h), oracle))
}

/// Checks `dim H^j_{k,l} = Σ_{i≥0} dim H̄^j_{k,l-2i}` for `l ≤ qmax - 2`.
pub fn reduce_mode_check(b: &BraidWord, cfg: &RunConfig) -> Result<bool> {
    let mut un = cfg.clone();
    un.reduced = false;
    let mut re = cfg.clone();
    re.reduced = true;
    let h = braid_homology(b, &un)?;
    let hr = braid_homology(b, &re)?;
    reduce_mode_compare(&h, &hr, cfg.qmax - 2)
}

/// The comparison behind [`reduce_mode_check`], up to `lmax`.
pub fn reduce_mode_compare(h: &TriGradedDims, hr: &TriGradedDims, lmax: i32) -> Result<bool> {
    let lowest = h.min_l().into_iter().chain(hr.min_l()).min();
    match lowest {
        None => {
            return Err(Error::Inconclusive(
                "both homologies are empty below the cutoff".into(),
            ))
        }
        Some(l0) if l0 > lmax => {
            return Err(Error::Inconclusive(format!(
                "cutoff {lmax} is below the lowest degree {l0}"
            )));
        }
        _ => {}
    }
    let mut keys: Vec<(i32, i32, i32)> = h
        .dims
        .keys()
        .chain(hr.dims.keys())
        .copied()
        .filter(|k| k.2 <= lmax)
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let lmin = lowest.unwrap();
    for (j, k, l) in keys {
        let expected: usize = (0..)
            .map(|i| l - 2 * i)
            .take_while(|&x| x >= lmin)
            .map(|x| hr.get(j, k, x))
            .sum();
        if h.get(j, k, l) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finds the shift `(Δj,Δk,Δl)` with `h2 = h1` shifted, comparing only where
/// both are exact. `Ok(None)` means no shift works; an `Inconclusive` error
/// means the common window is too small to decide.
pub fn compare_up_to_shift(
    h1: &TriGradedDims,
    h2: &TriGradedDims,
) -> Result<Option<(i32, i32, i32)>> {
    let (Some(l1), Some(l2)) = (h1.min_l(), h2.min_l()) else {
        return Err(Error::Inconclusive(
            "one of the homologies is empty below its cutoff".into(),
        ));
    };
    let dl = l2 - l1;
    let window = h1.qmax.min(h2.qmax - dl);
    if window < l1 {
        return Err(Error::Inconclusive(format!(
            "common window ends at {window}, below the lowest degree {l1}"
        )));
    }
    let first = |h: &TriGradedDims, l: i32| {
        h.dims
            .keys()
            .filter(|k| k.2 == l)
            .map(|k| (k.0, k.1))
            .min()
            .unwrap()
    };
    let (a, b) = (first(h1, l1), first(h2, l2));
    let (dj, dk) = (b.0 - a.0, b.1 - a.1);
    let lhs: BTreeMap<_, _> = h1
        .dims
        .iter()
        .filter(|(k, _)| k.2 <= window)
        .map(|(&(j, k, l), &d)| ((j + dj, k + dk, l + dl), d))
        .collect();
    let rhs: BTreeMap<_, _> = h2
        .dims
        .iter()
        .filter(|(k, _)| k.2 - dl <= window)
        .map(|(k, v)| (*k, *v))
        .collect();
    Ok((lhs == rhs).then_some((dj, dk, dl)))
}

/// Dimension of the hom space `Hom(M, N)` in the homotopy category at the
/// given bidegree: the homology of `N ⊗ M•` at that slice.
pub fn hom_space_dim(m: &KoszulMatrix, n: &KoszulMatrix, bidegree: Bidegree) -> Result<usize> {
    let (ring, mm, nn) = common_ring(m, n)?;
    let wm = mm.boundary_potential();
    let wn = nn.boundary_potential();
    if wm != wn || mm.potential() != wm || nn.potential() != wn {
        return Err(Error::PotentialMismatch(format!(
            "{} versus {}",
            mm.potential().display(&ring),
            nn.potential().display(&ring)
        )));
    }
    let hom = nn.tensor(&mm.dualize())?;
    let c = realize(&hom);
    slice_homology_dim(&c, bidegree)
}

/// Preprocesses both matrices and moves them to one ring: `a`, the shared
/// boundary variables, then the leftover internal variables of each.
fn common_ring(m: &KoszulMatrix, n: &KoszulMatrix) -> Result<(Ring, KoszulMatrix, KoszulMatrix)> {
    let prep =
        |x: &KoszulMatrix| -> Result<KoszulMatrix> { Ok(x.aggregate_a()?.exclude_greedy(None)?.0) };
    let (pm, pn) = (prep(m)?, prep(n)?);
    let external = |x: &KoszulMatrix| -> Vec<String> {
        (0..x.nvars())
            .filter(|&v| x.is_external(v))
            .map(|v| String::from(x.ring.name(v)))
            .collect()
    };
    let (em, en) = (external(&pm), external(&pn));
    if em != en {
        return Err(Error::PotentialMismatch(format!(
            "boundary variables {em:?} and {en:?} differ"
        )));
    }
    let mut ring = Ring::new();
    ring.push("a", Bidegree::new(2, 0));
    for name in &em {
        let v = pm.ring.index_of(name).unwrap();
        ring.push(name, pm.ring.degree_of(v));
    }
    let moves = |x: &KoszulMatrix, tag: &str, ring: &mut Ring| -> Result<Vec<usize>> {
        let a =
            x.a.ok_or_else(|| Error::Invalid("hom spaces need the variable a".into()))?;
        let mut map = alloc::vec![0; x.nvars()];
        for v in 0..x.nvars() {
            map[v] = if v == a {
                0
            } else if x.is_external(v) {
                ring.index_of(x.ring.name(v)).unwrap()
            } else {
                ring.push(&format!("{tag}{}", x.ring.name(v)), x.ring.degree_of(v))
            };
        }
        Ok(map)
    };
    let map_m = moves(&pm, "m.", &mut ring)?;
    let map_n = moves(&pn, "n.", &mut ring)?;
    let transport = |x: &KoszulMatrix, map: &[usize]| -> KoszulMatrix {
        let nv = ring.len();
        let mut y = x.clone();
        for r in &mut y.rows {
            r.left = r.left.remap(nv, map);
            r.right = r.right.remap(nv, map);
        }
        let mut boundary = alloc::vec![0i8; nv];
        for (v, &s) in x.boundary.iter().enumerate() {
            boundary[map[v]] = s;
        }
        y.boundary = boundary;
        y.ring = ring.clone();
        y.a = Some(0);
        y
    };
    let (tm, tn) = (transport(&pm, &map_m), transport(&pn, &map_n));
    Ok((ring, tm, tn))
}

/// `Σ (-1)^j t^k` at fixed `l`, for display and tests.
pub fn euler_coefficient(h: &TriGradedDims, l: i32) -> LaurentQT {
    euler_characteristic(h).coeff(l)
}
