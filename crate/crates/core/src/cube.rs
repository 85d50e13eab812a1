//! The cube of resolutions of a braid closure.
//!
//! Every vertex uses the same row layout. Each crossing contributes the row
//! `(a, x1+x2-x3-x4)` plus one crossing-specific row: `(0, x2-x3)` for the
//! oriented smoothing and `(0, (x2-x3)(x4-x2))` for the wide edge. These are
//! the two arcs and the wide edge after one elementary row transformation
//! each. Arcs of the closure give `(a, x_head - x_tail)`. With this layout
//! the crossing maps are `ψ'(x4-x2)` and `ψ(x4-x2)` on a single row, so they
//! are diagonal in the exterior basis.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::{Bidegree, Polynomial, Ring};
use crate::braid::{build_marked_diagram, BraidWord, MarkedDiagram};
use crate::error::{Error, Result};
use crate::factor_complex::{
    flip_map, realize, simplify, FactorComplex, FlipKind, GradedFreeModule, PolyMatrix, Simplified,
};
use crate::koszul::{ExclusionStep, KoszulMatrix, KoszulRow, Piece, ResolutionGraph, Substitution};
use crate::RunConfig;

/// The resolution graph of a marked diagram at a vertex of the cube.
/// Bit `c` of `mask` is 0 for the oriented smoothing of crossing `c` and 1
/// for the wide edge.
pub fn resolve(d: &MarkedDiagram, mask: u64) -> ResolutionGraph {
    let mut g = ResolutionGraph::with_vars(d.num_vars);
    for (c, x) in d.crossings.iter().enumerate() {
        if mask >> c & 1 == 1 {
            g.pieces.push(Piece::Wide {
                x1: x.x1,
                x2: x.x2,
                x3: x.x3,
                x4: x.x4,
            });
        } else {
            g.pieces.push(Piece::Arc {
                tail: x.x4,
                head: x.x1,
            });
            g.pieces.push(Piece::Arc {
                tail: x.x3,
                head: x.x2,
            });
        }
    }
    for a in &d.arcs {
        g.pieces.push(Piece::Arc {
            tail: a.tail,
            head: a.head,
        });
    }
    g
}

/// Cube degree of a vertex: a positive crossing sits in degree `ε - 1`, a
/// negative one in degree `1 - ε`.
pub fn cube_degree(d: &MarkedDiagram, mask: u64) -> i32 {
    d.crossings
        .iter()
        .enumerate()
        .map(|(c, x)| crossing_degree(x.positive, mask >> c & 1 == 1))
        .sum()
}

fn crossing_degree(positive: bool, wide: bool) -> i32 {
    match (positive, wide) {
        (true, false) => -1,
        (true, true) | (false, true) => 0,
        (false, false) => 1,
    }
}

/// Bigrading shift of a vertex: `{0,2}` for every smoothed positive crossing
/// and `{0,-2}` for every negative crossing.
pub fn vertex_shift(d: &MarkedDiagram, mask: u64) -> Bidegree {
    let mut s = Bidegree::ZERO;
    for (c, x) in d.crossings.iter().enumerate() {
        let wide = mask >> c & 1 == 1;
        s += match (x.positive, wide) {
            (true, false) => Bidegree::new(0, 2),
            (true, true) => Bidegree::ZERO,
            (false, _) => Bidegree::new(0, -2),
        };
    }
    s
}

/// The vertex factorization over `Q[a, x1..]` in the uniform layout: all
/// linear rows (crossings, then arcs) followed by one crossing-specific row
/// per crossing.
pub fn vertex_matrix(d: &MarkedDiagram, mask: u64) -> KoszulMatrix {
    let mut ring = Ring::new();
    let a = ring.push("a", Bidegree::new(2, 0));
    for i in 0..d.num_vars {
        ring.push(&MarkedDiagram::var_name(i), Bidegree::new(0, 2));
    }
    let n = ring.len();
    let x = |i: usize| Polynomial::var(n, i + 1);
    let av = Polynomial::var(n, a);
    let zero = Polynomial::zero(n);
    let mut rows = Vec::new();
    for c in &d.crossings {
        let l = &(&x(c.x1) + &x(c.x2)) - &(&x(c.x3) + &x(c.x4));
        rows.push(KoszulRow {
            left: av.clone(),
            right: l,
            shift: Bidegree::new(-1, 1),
        });
    }
    for arc in &d.arcs {
        rows.push(KoszulRow {
            left: av.clone(),
            right: &x(arc.head) - &x(arc.tail),
            shift: Bidegree::new(-1, 1),
        });
    }
    for (i, c) in d.crossings.iter().enumerate() {
        let z = &x(c.x2) - &x(c.x3);
        if mask >> i & 1 == 1 {
            let y = &x(c.x4) - &x(c.x2);
            rows.push(KoszulRow {
                left: zero.clone(),
                right: &z * &y,
                shift: Bidegree::new(-1, 3),
            });
        } else {
            rows.push(KoszulRow {
                left: zero.clone(),
                right: z,
                shift: Bidegree::new(-1, 1),
            });
        }
    }
    KoszulMatrix::new(ring, Some(a), rows)
}

/// One vertex of the cube.
#[derive(Clone, Debug)]
pub struct CubeVertex {
    pub mask: u64,
    pub cube_degree: i32,
    pub shift: Bidegree,
    /// The vertex matrix after stripping `a`, the basepoint substitution and
    /// variable exclusion.
    pub matrix: KoszulMatrix,
    /// Realized, simplified and shifted factorization (potential zero).
    pub complex: FactorComplex,
    simplified: Simplified,
}

/// An edge of the cube: the crossing map between two adjacent vertices.
#[derive(Clone, Debug)]
pub struct CubeEdge {
    pub from: u64,
    pub to: u64,
    pub crossing: usize,
    pub sign: i8,
    /// Bigrading-preserving map between the shifted vertex complexes,
    /// without the sign.
    pub map: PolyMatrix,
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    pub diagram: MarkedDiagram,
    /// Vertices indexed by mask.
    pub vertices: Vec<CubeVertex>,
    /// Edges ordered by source mask, then crossing.
    pub edges: Vec<CubeEdge>,
    pub reduced: bool,
    /// Mark used as basepoint in reduced mode.
    pub basepoint: Option<usize>,
    /// Ring of every vertex complex.
    pub ring: Ring,
}

struct Preprocessed {
    matrix: KoszulMatrix,
    subs: Vec<Substitution>,
}

fn preprocess(
    m: &KoszulMatrix,
    basepoint: Option<usize>,
    plan: &[ExclusionStep],
) -> Result<Preprocessed> {
    let mut m = m.aggregate_a()?.strip_a()?;
    let mut subs = Vec::new();
    if let Some(v) = basepoint {
        let (next, s) = m.substitute_zero(v);
        m = next;
        subs.push(s);
    }
    let (matrix, s) = m.apply_plan(plan)?;
    subs.extend(s);
    Ok(Preprocessed { matrix, subs })
}

fn apply_subs(p: &Polynomial, subs: &[Substitution]) -> Polynomial {
    subs.iter().fold(p.clone(), |acc, s| s.apply(&acc))
}

/// Sign of the edge along crossing `c` leaving vertex `mask`:
/// `(-1)^(sum of cube degrees of the earlier crossings)`.
fn edge_sign(d: &MarkedDiagram, mask: u64, c: usize) -> i8 {
    let s: i32 = d.crossings[..c]
        .iter()
        .enumerate()
        .map(|(i, x)| crossing_degree(x.positive, mask >> i & 1 == 1))
        .sum();
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Builds the cube of resolutions of the closure of `b`.
pub fn build_cube(b: &BraidWord, cfg: &RunConfig) -> Result<CubeComplex> {
    let d = build_marked_diagram(b, cfg.marks_per_segment)?;
    let ncross = d.crossings.len();
    if ncross >= 20 {
        return Err(Error::Invalid(format!(
            "{ncross} crossings is too many for the full cube"
        )));
    }
    let basepoint = if cfg.reduced {
        if cfg.basepoint == 0 || cfg.basepoint > d.strands {
            return Err(Error::Invalid(format!(
                "basepoint {} is not a strand position",
                cfg.basepoint
            )));
        }
        Some(d.bottom[cfg.basepoint - 1])
    } else {
        None
    };
    // After stripping a, mark v has ring index v.
    let template = vertex_matrix(&d, 0);
    let nlinear = ncross + d.arcs.len();
    // Exclusion may only use the linear rows, which agree at every vertex.
    let plan = {
        let mut m = template.aggregate_a()?.strip_a()?;
        if let Some(v) = basepoint {
            m = m.substitute_zero(v).0;
        }
        let flags: Vec<bool> = (0..m.rows.len()).map(|i| i < nlinear - 1).collect();
        m.exclude_greedy(Some(&flags))?.1
    };
    let masks: Vec<u64> = (0..1u64 << ncross).collect();
    let built = crate::par::map(masks, |mask| -> Result<CubeVertex> {
        let pre = preprocess(&vertex_matrix(&d, mask), basepoint, &plan)?;
        let raw = realize(&pre.matrix);
        let simplified = simplify(&raw);
        let cube_degree = cube_degree(&d, mask);
        let shift = vertex_shift(&d, mask);
        let complex = simplified.complex.shifted(shift, cube_degree);
        Ok(CubeVertex {
            mask,
            cube_degree,
            shift,
            matrix: pre.matrix,
            complex,
            simplified,
        })
    });
    let vertices: Vec<CubeVertex> = built.into_iter().collect::<Result<_>>()?;
    // The same substitutions turn x4 - x2 into its image in the vertex ring.
    let subs = preprocess(&template, basepoint, &plan)?.subs;
    let n0 = template.nvars();
    let ring = vertices[0].matrix.ring.clone();
    let mut jobs = Vec::new();
    for mask in 0..1u64 << ncross {
        for (c, x) in d.crossings.iter().enumerate() {
            let wide = mask >> c & 1 == 1;
            if x.positive != wide {
                jobs.push((mask, c));
            }
        }
    }
    let edges = crate::par::map(jobs, |(mask, c)| -> Result<CubeEdge> {
        let x = &d.crossings[c];
        // x4 - x2 in Q[a, x..], then through strip, basepoint and exclusion.
        let y0 = &Polynomial::var(n0, x.x4 + 1) - &Polynomial::var(n0, x.x2 + 1);
        let y = apply_subs(&y0.drop_var(0), &subs);
        let to = mask ^ (1 << c);
        let (src, tgt) = (&vertices[mask as usize], &vertices[to as usize]);
        let row = src.matrix.rows.len() - ncross + c;
        let kind = if x.positive {
            FlipKind::PsiPrime
        } else {
            FlipKind::Psi
        };
        let f = flip_map(kind, &src.matrix, &tgt.matrix, row, &y)?;
        let map = Simplified::transport(&f.matrix, &src.simplified, &tgt.simplified);
        Ok(CubeEdge {
            from: mask,
            to,
            crossing: c,
            sign: edge_sign(&d, mask, c),
            map,
        })
    });
    let edges = edges.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(CubeComplex {
        diagram: d,
        vertices,
        edges,
        reduced: cfg.reduced,
        basepoint,
        ring,
    })
}

impl CubeComplex {
    /// The assembled object: vertex complexes in mask order, `d` twisted by
    /// `(-1)^j` and `∂` given by the signed edge maps.
    pub fn total(&self) -> FactorComplex {
        let offsets: Vec<usize> = self
            .vertices
            .iter()
            .scan(0, |acc, v| {
                let o = *acc;
                *acc += v.complex.rank();
                Some(o)
            })
            .collect();
        let n = offsets
            .last()
            .map_or(0, |o| o + self.vertices.last().unwrap().complex.rank());
        let mut gens = Vec::with_capacity(n);
        let mut dcols = Vec::with_capacity(n);
        for (v, &o) in self.vertices.iter().zip(&offsets) {
            gens.extend(v.complex.module.gens.iter().copied());
            let odd = v.cube_degree.rem_euclid(2) == 1;
            for col in &v.complex.d.cols {
                dcols.push(
                    col.iter()
                        .map(|(r, p)| (r + o, if odd { -p } else { p.clone() }))
                        .collect::<Vec<_>>(),
                );
            }
        }
        let mut ccols: Vec<Vec<(usize, Polynomial)>> = alloc::vec![Vec::new(); n];
        for e in &self.edges {
            let (fo, to) = (offsets[e.from as usize], offsets[e.to as usize]);
            for (c, col) in e.map.cols.iter().enumerate() {
                for (r, p) in col {
                    ccols[fo + c].push((to + r, if e.sign < 0 { -p } else { p.clone() }));
                }
            }
        }
        for col in &mut ccols {
            col.sort_by_key(|e| e.0);
        }
        FactorComplex {
            ring: self.ring.clone(),
            module: GradedFreeModule { gens },
            d: PolyMatrix {
                nrows: n,
                cols: dcols,
            },
            cube_d: PolyMatrix {
                nrows: n,
                cols: ccols,
            },
            potential: Polynomial::zero(self.ring.len()),
        }
    }

    /// Deterministic text dump of every vertex and edge.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "ring: {}",
            self.ring
                .vars()
                .iter()
                .map(|v| v.name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        );
        for v in &self.vertices {
            let _ = writeln!(
                s,
                "vertex {:b} j={} shift={}",
                v.mask, v.cube_degree, v.shift
            );
            s.push_str(&v.matrix.dump());
            s.push_str(&v.complex.dump());
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "edge {:b} -> {:b} crossing {} sign {}",
                e.from, e.to, e.crossing, e.sign
            );
            for (c, col) in e.map.cols.iter().enumerate() {
                for (r, p) in col {
                    let _ = writeln!(s, "  [{r},{c}] = {}", p.display(&self.ring));
                }
            }
        }
        s
    }
}
