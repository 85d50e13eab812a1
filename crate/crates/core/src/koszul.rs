//! Koszul matrices: the symbolic form of the factorizations attached to
//! resolution graphs, and the row calculus used to shrink them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::One;

use crate::algebra::{Bidegree, Polynomial, Rational, Ring};
use crate::error::{Error, Result};

/// A single Koszul factorization `R --left--> R{shift} --right--> R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulRow {
    pub left: Polynomial,
    pub right: Polynomial,
    /// Bidegree of the second generator.
    pub shift: Bidegree,
}

/// The middle shift that gives the differential bidegree (1,1).
pub fn middle_shift(ring: &Ring, left: &Polynomial, right: &Polynomial) -> Result<Bidegree> {
    let one = Bidegree::new(1, 1);
    if let Some(d) = right.bidegree(ring) {
        Ok(d - one)
    } else if let Some(d) = left.bidegree(ring) {
        Ok(one - d)
    } else if left.is_zero() && right.is_zero() {
        Err(Error::BadRow("a (0,0) row has no defined shift".into()))
    } else {
        Err(Error::BadRow("row entries are not homogeneous".into()))
    }
}

impl KoszulRow {
    pub fn new(ring: &Ring, left: Polynomial, right: Polynomial) -> Result<Self> {
        let shift = middle_shift(ring, &left, &right)?;
        Ok(KoszulRow { left, right, shift })
    }
}

/// A tensor product of Koszul factorizations over a common graded ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulMatrix {
    pub ring: Ring,
    /// Index of the variable `a`, if still present.
    pub a: Option<usize>,
    pub rows: Vec<KoszulRow>,
    /// Orientation sign of each variable at the boundary; 0 for internal variables.
    pub boundary: Vec<i8>,
    /// Overall bidegree shift of the whole factorization.
    pub shift: Bidegree,
}

/// A recorded substitution `x_var := value` followed by dropping `x_var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub var: usize,
    pub value: Polynomial,
}

impl Substitution {
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        p.substitute(self.var, &self.value).drop_var(self.var)
    }
}

/// One step of an exclusion plan: use row `row` to eliminate variable `var`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExclusionStep {
    pub row: usize,
    pub var: usize,
}

impl KoszulMatrix {
    pub fn new(ring: Ring, a: Option<usize>, rows: Vec<KoszulRow>) -> Self {
        let n = ring.len();
        KoszulMatrix {
            ring,
            a,
            rows,
            boundary: vec![0; n],
            shift: Bidegree::ZERO,
        }
    }

    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    pub fn is_external(&self, v: usize) -> bool {
        self.boundary[v] != 0
    }

    pub fn potential(&self) -> Polynomial {
        let mut w = Polynomial::zero(self.nvars());
        for r in &self.rows {
            w += &(&r.left * &r.right);
        }
        w
    }

    /// `a * sum(sign_i * x_i)` over boundary variables.
    pub fn boundary_potential(&self) -> Polynomial {
        let n = self.nvars();
        let Some(a) = self.a else {
            return Polynomial::zero(n);
        };
        let mut lin = Polynomial::zero(n);
        for (v, &s) in self.boundary.iter().enumerate() {
            if s != 0 {
                lin += &Polynomial::linear(n, &[(v, s as i64)]);
            }
        }
        &Polynomial::var(n, a) * &lin
    }

    /// Elementary transformation `[ij]_λ`:
    /// `(a_i, b_i; a_j, b_j) -> (a_i, b_i + λ b_j; a_j - λ a_i, b_j)`.
    pub fn row_op(&self, i: usize, j: usize, lambda: &Polynomial) -> Result<KoszulMatrix> {
        if i == j || i >= self.rows.len() || j >= self.rows.len() {
            return Err(Error::Invalid(format!("bad row pair ({i},{j})")));
        }
        if lambda.is_zero() {
            return Ok(self.clone());
        }
        let ld = lambda
            .bidegree(&self.ring)
            .ok_or_else(|| Error::BadRow("row operation factor is not homogeneous".into()))?;
        let (ri, rj) = (&self.rows[i], &self.rows[j]);
        let bi = &ri.right + &(lambda * &rj.right);
        let aj = &rj.left - &(lambda * &ri.left);
        for (p, want) in [
            (&bi, ri.shift + Bidegree::new(1, 1)),
            (&aj, Bidegree::new(1, 1) - rj.shift),
        ] {
            if let Some(d) = p.bidegree(&self.ring) {
                if d != want {
                    return Err(Error::BadRow(format!(
                        "row operation with factor of degree {ld} breaks the grading"
                    )));
                }
            } else if !p.is_zero() {
                return Err(Error::BadRow(
                    "row operation produced an inhomogeneous entry".into(),
                ));
            }
        }
        let mut m = self.clone();
        m.rows[i].right = bi;
        m.rows[j].left = aj;
        Ok(m)
    }

    /// `(a_i, b_i) -> (c a_i, b_i / c)` for a nonzero rational `c`.
    pub fn scale_row(&self, i: usize, c: &Rational) -> KoszulMatrix {
        let mut m = self.clone();
        m.rows[i].left = m.rows[i].left.scale(c);
        m.rows[i].right = m.rows[i].right.scale(&c.recip());
        m
    }

    fn a_coefficient(&self, row: &KoszulRow) -> Result<Option<Rational>> {
        let Some(a) = self.a else {
            return Ok(None);
        };
        if row.left.is_zero() {
            return Ok(None);
        }
        match row.left.linear_coefficient(a) {
            Some(c) if row.left.len() == 1 => Ok(Some(c)),
            _ => Err(Error::BadRow(
                "left entry is neither 0 nor a multiple of a".into(),
            )),
        }
    }

    /// Collects every occurrence of `a` into the first row, which becomes
    /// `(a, sum(sign_i x_i))`. Other rows keep their order.
    pub fn aggregate_a(&self) -> Result<KoszulMatrix> {
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            coeffs.push(self.a_coefficient(r)?);
        }
        let Some(p) = coeffs.iter().position(|c| c.is_some()) else {
            return Ok(self.clone());
        };
        let cp = coeffs[p].clone().unwrap();
        let mut m = self.clone();
        for (j, c) in coeffs.iter().enumerate() {
            if j == p {
                continue;
            }
            if let Some(cj) = c {
                let lambda = Polynomial::constant(self.nvars(), cj / &cp);
                m = m.row_op(p, j, &lambda)?;
            }
        }
        if !cp.is_one() {
            m = m.scale_row(p, &cp.recip());
        }
        let row = m.rows.remove(p);
        m.rows.insert(0, row);
        Ok(m)
    }

    /// Removes the row `(a, 0)` together with the variable `a`.
    pub fn strip_a(&self) -> Result<KoszulMatrix> {
        let a = self
            .a
            .ok_or_else(|| Error::Invalid("no variable a to strip".into()))?;
        let first = self
            .rows
            .first()
            .ok_or_else(|| Error::BadRow("empty matrix".into()))?;
        if first.left != Polynomial::var(self.nvars(), a) {
            return Err(Error::BadRow("first row does not have left entry a".into()));
        }
        if !first.right.is_zero() {
            return Err(Error::NotClosed(
                "the a-row has a nonzero right entry; the graph is not closed".into(),
            ));
        }
        if self.rows[1..]
            .iter()
            .any(|r| r.left.involves(a) || r.right.involves(a))
        {
            return Err(Error::BadRow("a occurs outside the first row".into()));
        }
        let mut m = self.clone();
        let row = m.rows.remove(0);
        m.shift += row.shift;
        for r in &mut m.rows {
            r.left = r.left.drop_var(a);
            r.right = r.right.drop_var(a);
        }
        m.ring.remove(a);
        m.boundary.remove(a);
        m.a = None;
        Ok(m)
    }

    fn drop_variable(&mut self, v: usize) {
        for r in &mut self.rows {
            r.left = r.left.drop_var(v);
            r.right = r.right.drop_var(v);
        }
        self.ring.remove(v);
        self.boundary.remove(v);
        if let Some(a) = self.a {
            debug_assert_ne!(a, v);
            if a > v {
                self.a = Some(a - 1);
            }
        }
    }

    fn apply_substitution(&mut self, s: &Substitution) {
        for r in &mut self.rows {
            r.left = r.left.substitute(s.var, &s.value);
            r.right = r.right.substitute(s.var, &s.value);
        }
        self.drop_variable(s.var);
    }

    /// Uses row `r = (0, c*y - rest)` to eliminate the internal variable `y`:
    /// the row is removed and `y := rest / c` is substituted everywhere.
    pub fn exclude_variable(&self, r: usize, y: usize) -> Result<(KoszulMatrix, Substitution)> {
        if y >= self.nvars() || Some(y) == self.a {
            return Err(Error::Invalid(format!(
                "variable index {y} cannot be excluded"
            )));
        }
        if self.is_external(y) {
            return Err(Error::ExternalVariable(String::from(self.ring.name(y))));
        }
        let row = self
            .rows
            .get(r)
            .ok_or_else(|| Error::Invalid(format!("no row {r}")))?;
        if !row.left.is_zero() {
            return Err(Error::BadRow(format!("row {r} has a nonzero left entry")));
        }
        let c = row.right.linear_coefficient(y).ok_or_else(|| {
            Error::BadRow(format!(
                "row {r} is not of the form y - mu in {}",
                self.ring.name(y)
            ))
        })?;
        let n = self.nvars();
        let mu = &Polynomial::var(n, y) - &row.right.scale(&c.recip());
        let s = Substitution { var: y, value: mu };
        let mut m = self.clone();
        m.rows.remove(r);
        m.apply_substitution(&s);
        Ok((m, s))
    }

    /// Sets variable `v` to zero everywhere and drops it.
    pub fn substitute_zero(&self, v: usize) -> (KoszulMatrix, Substitution) {
        let s = Substitution {
            var: v,
            value: Polynomial::zero(self.nvars()),
        };
        let mut m = self.clone();
        m.apply_substitution(&s);
        (m, s)
    }

    /// A row `(0, b)` with `b` linear in some internal variable, together with
    /// the variable to eliminate. The highest-index such variable is chosen.
    fn find_exclusion(&self, candidate: &[bool]) -> Option<ExclusionStep> {
        for (r, row) in self.rows.iter().enumerate() {
            if !candidate[r] || !row.left.is_zero() || row.right.is_zero() {
                continue;
            }
            for v in (0..self.nvars()).rev() {
                if Some(v) == self.a || self.is_external(v) {
                    continue;
                }
                if row.right.linear_coefficient(v).is_some() {
                    return Some(ExclusionStep { row: r, var: v });
                }
            }
        }
        None
    }

    /// Greedily excludes internal variables using rows flagged in `candidate`
    /// (all rows when `None`). Returns the reduced matrix and the plan, which
    /// can be replayed on matrices with the same candidate rows.
    pub fn exclude_greedy(
        &self,
        candidate: Option<&[bool]>,
    ) -> Result<(KoszulMatrix, Vec<ExclusionStep>)> {
        let mut flags: Vec<bool> = match candidate {
            Some(c) => c.to_vec(),
            None => vec![true; self.rows.len()],
        };
        let mut m = self.clone();
        let mut plan = Vec::new();
        while let Some(step) = m.find_exclusion(&flags) {
            m = m.exclude_variable(step.row, step.var)?.0;
            flags.remove(step.row);
            plan.push(step);
        }
        Ok((m, plan))
    }

    /// Replays an exclusion plan, returning the substitutions performed.
    pub fn apply_plan(&self, plan: &[ExclusionStep]) -> Result<(KoszulMatrix, Vec<Substitution>)> {
        let mut m = self.clone();
        let mut subs = Vec::with_capacity(plan.len());
        for step in plan {
            let (next, s) = m.exclude_variable(step.row, step.var)?;
            m = next;
            subs.push(s);
        }
        Ok((m, subs))
    }

    /// The dual factorization: rows `(b_i, -a_i)` with negated shifts.
    pub fn dualize(&self) -> KoszulMatrix {
        let mut m = self.clone();
        for r in &mut m.rows {
            let (a, b) = (r.left.clone(), r.right.clone());
            r.left = b;
            r.right = -a;
            r.shift = -r.shift;
        }
        m.shift = -m.shift;
        for s in &mut m.boundary {
            *s = -*s;
        }
        m
    }

    /// Concatenates rows of two matrices over the same ring.
    pub fn tensor(&self, other: &KoszulMatrix) -> Result<KoszulMatrix> {
        if self.ring != other.ring || self.a != other.a {
            return Err(Error::Invalid("tensor product needs a common ring".into()));
        }
        let mut m = self.clone();
        m.rows.extend(other.rows.iter().cloned());
        m.shift += other.shift;
        for (s, o) in m.boundary.iter_mut().zip(&other.boundary) {
            *s += *o;
        }
        Ok(m)
    }

    /// One row per line: `left | right | shift`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{} | {} | {}",
                r.left.display(&self.ring),
                r.right.display(&self.ring),
                r.shift
            );
        }
        s
    }
}

/// A piece of a planar marked graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// Oriented arc from the mark `tail` to the mark `head`.
    Arc { tail: usize, head: usize },
    /// Wide edge with outgoing ends `x1`, `x2` and incoming ends `x3`, `x4`.
    Wide {
        x1: usize,
        x2: usize,
        x3: usize,
        x4: usize,
    },
}

/// A planar marked graph: arcs and wide edges glued at marks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    pub names: Vec<String>,
    pub pieces: Vec<Piece>,
}

impl ResolutionGraph {
    pub fn with_vars(n: usize) -> Self {
        ResolutionGraph {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
            pieces: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    /// Boundary sign of every mark (+1 outgoing end, -1 incoming end, 0 internal).
    pub fn boundary_signs(&self) -> Result<Vec<i8>> {
        let n = self.num_vars();
        let mut outs = vec![0u8; n];
        let mut ins = vec![0u8; n];
        let mut bump = |v: usize, out: bool| -> Result<()> {
            if v >= n {
                return Err(Error::Invalid(format!("mark {v} out of range")));
            }
            if out {
                outs[v] += 1;
            } else {
                ins[v] += 1;
            }
            Ok(())
        };
        for p in &self.pieces {
            match *p {
                Piece::Arc { tail, head } => {
                    bump(head, true)?;
                    bump(tail, false)?;
                }
                Piece::Wide { x1, x2, x3, x4 } => {
                    bump(x1, true)?;
                    bump(x2, true)?;
                    bump(x3, false)?;
                    bump(x4, false)?;
                }
            }
        }
        let mut signs = vec![0i8; n];
        for v in 0..n {
            if outs[v] > 1 || ins[v] > 1 || outs[v] + ins[v] == 0 {
                return Err(Error::Invalid(format!(
                    "mark {} has malformed incidence",
                    self.names[v]
                )));
            }
            signs[v] = outs[v] as i8 - ins[v] as i8;
        }
        Ok(signs)
    }

    pub fn is_closed(&self) -> Result<bool> {
        Ok(self.boundary_signs()?.iter().all(|&s| s == 0))
    }
}

/// The Koszul matrix of a graph over `Q[a, x...]`. Linear rows of all pieces
/// come first (in piece order), followed by the quadratic wide-edge rows.
pub fn koszul_of_graph(g: &ResolutionGraph) -> Result<KoszulMatrix> {
    let boundary = g.boundary_signs()?;
    let mut ring = Ring::new();
    let a = ring.push("a", Bidegree::new(2, 0));
    for name in &g.names {
        ring.push(name, Bidegree::new(0, 2));
    }
    let n = ring.len();
    let x = |i: usize| Polynomial::var(n, i + 1);
    let av = Polynomial::var(n, a);
    let mut linear = Vec::new();
    let mut quadratic = Vec::new();
    for p in &g.pieces {
        match *p {
            Piece::Arc { tail, head } => {
                linear.push(KoszulRow {
                    left: av.clone(),
                    right: &x(head) - &x(tail),
                    shift: Bidegree::new(-1, 1),
                });
            }
            Piece::Wide { x1, x2, x3, x4 } => {
                let l = &(&x(x1) + &x(x2)) - &(&x(x3) + &x(x4));
                linear.push(KoszulRow {
                    left: av.clone(),
                    right: l,
                    shift: Bidegree::new(-1, 1),
                });
                let q = &(&x(x1) * &x(x2)) - &(&x(x3) * &x(x4));
                quadratic.push(KoszulRow {
                    left: Polynomial::zero(n),
                    right: q,
                    shift: Bidegree::new(-1, 3),
                });
            }
        }
    }
    linear.extend(quadratic);
    let mut m = KoszulMatrix::new(ring, Some(a), linear);
    m.boundary[0] = 0;
    m.boundary[1..].copy_from_slice(&boundary);
    Ok(m)
}

/// The factorization Υ over `Q[a, x1..x6]`.
pub fn build_upsilon() -> KoszulMatrix {
    let ring = Ring::standard(6);
    let n = ring.len();
    let x = |i: usize| Polynomial::var(n, i);
    let e1 = |v: [usize; 3]| &(&x(v[0]) + &x(v[1])) + &x(v[2]);
    let e2 =
        |v: [usize; 3]| &(&(&x(v[0]) * &x(v[1])) + &(&x(v[0]) * &x(v[2]))) + &(&x(v[1]) * &x(v[2]));
    let e3 = |v: [usize; 3]| &(&x(v[0]) * &x(v[1])) * &x(v[2]);
    let (top, bot) = ([1, 2, 3], [4, 5, 6]);
    let zero = Polynomial::zero(n);
    let rows = vec![
        KoszulRow {
            left: x(0),
            right: &e1(top) - &e1(bot),
            shift: Bidegree::new(-1, 1),
        },
        KoszulRow {
            left: zero.clone(),
            right: &e2(top) - &e2(bot),
            shift: Bidegree::new(-1, 3),
        },
        KoszulRow {
            left: zero,
            right: &e3(top) - &e3(bot),
            shift: Bidegree::new(-1, 5),
        },
    ];
    let mut m = KoszulMatrix::new(ring, Some(0), rows);
    for v in 1..=3 {
        m.boundary[v] = 1;
        m.boundary[v + 3] = -1;
    }
    m
}

/// An open braid-like tangle on `n` strands.
///
/// Marks are numbered tops `x1..xn`, bottoms `x(n+1)..x(2n)` (left to right),
/// then internal marks in creation order. `levels` lists `(position, wide)`
/// from the bottom up; a non-wide level is the oriented smoothing.
pub fn braid_tangle(n: usize, levels: &[(usize, bool)]) -> Result<ResolutionGraph> {
    let mut g = ResolutionGraph::with_vars(2 * n);
    let mut last = vec![None; n];
    for (idx, &(p, _)) in levels.iter().enumerate() {
        if p == 0 || p >= n {
            return Err(Error::LetterOutOfRange {
                letter: p as i32,
                strands: n,
            });
        }
        last[p - 1] = Some(idx);
        last[p] = Some(idx);
    }
    let mut cur: Vec<usize> = (n..2 * n).collect();
    for (idx, &(p, wide)) in levels.iter().enumerate() {
        let (l, r) = (p - 1, p);
        let out = |pos: usize, g: &mut ResolutionGraph| -> usize {
            if last[pos] == Some(idx) {
                pos
            } else {
                g.names.push(format!("x{}", g.names.len() + 1));
                g.names.len() - 1
            }
        };
        let x1 = out(l, &mut g);
        let x2 = out(r, &mut g);
        let (x4, x3) = (cur[l], cur[r]);
        if wide {
            g.pieces.push(Piece::Wide { x1, x2, x3, x4 });
        } else {
            g.pieces.push(Piece::Arc { tail: x4, head: x1 });
            g.pieces.push(Piece::Arc { tail: x3, head: x2 });
        }
        cur[l] = x1;
        cur[r] = x2;
    }
    for p in 0..n {
        if last[p].is_none() {
            g.pieces.push(Piece::Arc {
                tail: n + p,
                head: p,
            });
        }
    }
    Ok(g)
}

/// Closes an open tangle on `n` strands by arcs from each top mark to the
/// bottom mark below it.
pub fn close_tangle(g: &ResolutionGraph, n: usize) -> ResolutionGraph {
    let mut c = g.clone();
    for p in 0..n {
        c.pieces.push(Piece::Arc {
            tail: p,
            head: n + p,
        });
    }
    c
}

/// Closes an open Koszul matrix whose first `n` non-`a` variables are tops and
/// the next `n` are bottoms by adding rows `(a, x_bottom - x_top)`.
pub fn close_matrix(m: &KoszulMatrix, n: usize) -> Result<KoszulMatrix> {
    let a =
        m.a.ok_or_else(|| Error::Invalid("closing needs the variable a".into()))?;
    let nv = m.nvars();
    let xs: Vec<usize> = (0..nv).filter(|&v| v != a).collect();
    if xs.len() < 2 * n {
        return Err(Error::Invalid("not enough boundary variables".into()));
    }
    let mut c = m.clone();
    for p in 0..n {
        let (top, bot) = (xs[p], xs[n + p]);
        c.rows.push(KoszulRow {
            left: Polynomial::var(nv, a),
            right: &Polynomial::var(nv, bot) - &Polynomial::var(nv, top),
            shift: Bidegree::new(-1, 1),
        });
        c.boundary[top] = 0;
        c.boundary[bot] = 0;
    }
    Ok(c)
}

fn parse_bits(s: &str, len: usize) -> Option<Vec<bool>> {
    (s.len() == len && s.chars().all(|c| c == '0' || c == '1'))
        .then(|| s.chars().map(|c| c == '1').collect())
}

/// Names accepted by [`named_open_matrix`].
pub const OPEN_NAMES: &[&str] = &[
    "S1", "S2", "S3", "upsilon", "gamma00", "gamma01", "gamma10", "gamma11", "gamma000",
    "gamma001", "gamma010", "gamma011", "gamma100", "gamma101", "gamma110", "gamma111", "gamma1",
    "gamma2", "gamma3", "gamma4",
];

/// Open graphs used in hom-space computations.
///
/// * `S1`, `S2`, `S3`: identity tangles.
/// * `gammaAB`: resolutions of the two-crossing tangle `σ1 σ1^-1`; `A` is the
///   upper crossing (1 = wide edge), `B = 1` smooths the lower crossing.
/// * `gammaABC`: resolutions of `σ1 σ2 σ1`; `A` top, `B` middle, `C` bottom.
/// * `gamma1..4`: the graphs of the Υ decomposition (`gamma1` = three wide
///   edges on `σ1σ2σ1`, `gamma4` = one wide edge at (1,2), `gamma3` = three
///   wide edges on `σ2σ1σ2`, `gamma2` = one wide edge at (2,3)).
/// * `upsilon`: Υ itself.
pub fn named_open_matrix(name: &str) -> Result<KoszulMatrix> {
    let (g, _) = named_open_graph(name)?;
    match g {
        Some(g) => koszul_of_graph(&g),
        None => Ok(build_upsilon()),
    }
}

/// The tangle behind a named open matrix and its strand count. Υ has no graph.
pub fn named_open_graph(name: &str) -> Result<(Option<ResolutionGraph>, usize)> {
    let unknown = || Error::Invalid(format!("unknown graph name {name:?}"));
    let g = match name {
        "upsilon" => return Ok((None, 3)),
        "S1" => (braid_tangle(1, &[])?, 1),
        "S2" => (braid_tangle(2, &[])?, 2),
        "S3" => (braid_tangle(3, &[])?, 3),
        "gamma1" => (braid_tangle(3, &[(1, true), (2, true), (1, true)])?, 3),
        "gamma3" => (braid_tangle(3, &[(2, true), (1, true), (2, true)])?, 3),
        "gamma4" => (braid_tangle(3, &[(1, true)])?, 3),
        "gamma2" => (braid_tangle(3, &[(2, true)])?, 3),
        _ => {
            let bits = name.strip_prefix("gamma").ok_or_else(unknown)?;
            if let Some(b) = parse_bits(bits, 2) {
                (braid_tangle(2, &[(1, !b[1]), (1, b[0])])?, 2)
            } else if let Some(b) = parse_bits(bits, 3) {
                (braid_tangle(3, &[(1, b[2]), (2, b[1]), (1, b[0])])?, 3)
            } else {
                return Err(unknown());
            }
        }
    };
    Ok((Some(g.0), g.1))
}

/// Names accepted by [`named_closed_matrix`].
pub const CLOSED_NAMES: &[&str] = &[
    "circle",
    "theta",
    "upsilon-closure",
    "gamma1-closure",
    "gamma2-closure",
    "gamma3-closure",
    "gamma4-closure",
];

/// Closed graphs (and the closure of Υ) as Koszul matrices over `Q[a, x...]`.
pub fn named_closed_matrix(name: &str) -> Result<KoszulMatrix> {
    match name {
        "circle" => {
            let mut g = ResolutionGraph::with_vars(1);
            g.pieces.push(Piece::Arc { tail: 0, head: 0 });
            koszul_of_graph(&g)
        }
        "theta" => koszul_of_graph(&theta_graph()),
        "upsilon-closure" => close_matrix(&build_upsilon(), 3),
        _ => {
            let base = name
                .strip_suffix("-closure")
                .filter(|b| matches!(*b, "gamma1" | "gamma2" | "gamma3" | "gamma4"))
                .ok_or_else(|| Error::Invalid(format!("unknown closed graph {name:?}")))?;
            let (g, n) = named_open_graph(base)?;
            koszul_of_graph(&close_tangle(&g.unwrap(), n))
        }
    }
}

/// A wide edge `(x1,x2 | x3,x4)` closed by arcs `x1 -> x3` and `x2 -> x4`.
pub fn theta_graph() -> ResolutionGraph {
    let mut g = ResolutionGraph::with_vars(4);
    g.pieces = vec![
        Piece::Wide {
            x1: 0,
            x2: 1,
            x3: 2,
            x4: 3,
        },
        Piece::Arc { tail: 0, head: 2 },
        Piece::Arc { tail: 1, head: 3 },
    ];
    g
}

/// `true` if every row satisfies the middle-shift law.
pub fn shifts_consistent(m: &KoszulMatrix) -> bool {
    m.rows
        .iter()
        .all(|r| match middle_shift(&m.ring, &r.left, &r.right) {
            Ok(s) => s == r.shift,
            Err(_) => r.left.is_zero() && r.right.is_zero(),
        })
}
