//! The fundamental polytope `FP_n = conv{e_i - e_j}`, its regular central
//! subdivisions, and the combinatorial description of volume coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::cohomology::VolumePolynomial;
use crate::error::{Error, Result};
use crate::groebner::maximal_vertex_count;
use crate::poly::{monomials_of_degree, rat, render_monomial, Monomial, VarSet};
use crate::tropical::{check_kleene, WeightMatrix};

/// Vertices `e_i - e_j` in pair order, written in the first `n - 1`
/// coordinates (the hyperplane `sum x = 0` projects isomorphically onto them).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalPolytope {
    n: usize,
    vertices: Vec<Vec<i64>>,
}

/// A square facet of `FP_4`: vertices `e_a - e_b` for `a` in `A`, `b` in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub from: [usize; 2],
    pub to: [usize; 2],
}

impl Square {
    /// The two diagonals as pairs of vertex indices.
    pub fn diagonals(&self, vars: VarSet) -> [(usize, usize); 2] {
        let [a1, a2] = self.from;
        let [b1, b2] = self.to;
        let v = |i, j| vars.index(i, j).unwrap();
        [(v(a1, b1), v(a2, b2)), (v(a1, b2), v(a2, b1))]
    }

    pub fn vertices(&self, vars: VarSet) -> [usize; 4] {
        let [(p, q), (r, s)] = self.diagonals(vars);
        [p, q, r, s]
    }
}

impl FundamentalPolytope {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidMatrix(format!(
                "fundamental polytope needs n >= 3, got {n}"
            )));
        }
        let vars = VarSet::x(n);
        let vertices = vars
            .pairs()
            .map(|(i, j)| {
                let mut v = vec![0i64; n];
                v[i] += 1;
                v[j] -= 1;
                v.truncate(n - 1);
                v
            })
            .collect();
        Ok(Self { n, vertices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - 1
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Edges of the polytope: `e_i - e_j` is adjacent to `e_i - e_k` and `e_k - e_j`.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let vars = VarSet::x(self.n);
        let mut out = BTreeSet::new();
        for (u, (i, j)) in vars.pairs().enumerate() {
            for (v, (k, l)) in vars.pairs().enumerate() {
                if u < v && ((i == k) != (j == l)) && i != l && j != k {
                    out.insert((u, v));
                }
            }
        }
        out
    }

    /// Square facets `(A, B)` for `n = 4`, with `A < B` unordered pairs
    /// ranging over all ordered splits of `{0,1,2,3}` into two pairs.
    pub fn squares(&self) -> Vec<Square> {
        if self.n != 4 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for a1 in 0..4 {
            for a2 in a1 + 1..4 {
                let rest: Vec<usize> = (0..4).filter(|&x| x != a1 && x != a2).collect();
                out.push(Square {
                    from: [a1, a2],
                    to: [rest[0], rest[1]],
                });
            }
        }
        out
    }

    /// Triangular facets for `n = 4`: all roots leaving one vertex, or all entering one.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        if self.n != 4 {
            return Vec::new();
        }
        let vars = VarSet::x(4);
        let mut out = Vec::new();
        for i in 0..4 {
            let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
            let outs: Vec<usize> = others.iter().map(|&j| vars.index(i, j).unwrap()).collect();
            let ins: Vec<usize> = others.iter().map(|&j| vars.index(j, i).unwrap()).collect();
            out.push([outs[0], outs[1], outs[2]]);
            out.push([ins[0], ins[1], ins[2]]);
        }
        out
    }
}

/// Determinant by Bareiss elimination over `i128`.
fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let size = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..size {
        if m[k][k] == 0 {
            match (k + 1..size).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[size - 1][size - 1]
}

/// Regular subdivision of `FP_n` plus the origin, lifted by `c_ij` and `0`.
#[derive(Clone, Debug)]
pub struct CentralSubdivision {
    n: usize,
    /// Points of the configuration: the roots in pair order, then the origin.
    points: Vec<Vec<i64>>,
    lifts: Vec<i64>,
    /// Maximal lower-hull cells as sorted point-index lists, sorted.
    cells: Vec<Vec<usize>>,
}

impl CentralSubdivision {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn lifts(&self) -> &[i64] {
        &self.lifts
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Every cell is a simplex.
    pub fn is_triangulation(&self) -> bool {
        self.cells.iter().all(|c| c.len() == self.n)
    }

    pub fn every_cell_contains_origin(&self) -> bool {
        let o = self.origin();
        self.cells.iter().all(|c| c.contains(&o))
    }

    /// Faces of the cells on the boundary of `FP_n` (cells minus the origin),
    /// as sorted root-index lists. Only meaningful for triangulations.
    pub fn boundary_faces(&self) -> BTreeSet<Vec<usize>> {
        let o = self.origin();
        self.cells
            .iter()
            .map(|c| c.iter().copied().filter(|&p| p != o).collect())
            .collect()
    }

    /// Edges of the triangulation between roots or to the origin.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for c in &self.cells {
            for (a, &p) in c.iter().enumerate() {
                for &q in &c[a + 1..] {
                    out.insert((p.min(q), p.max(q)));
                }
            }
        }
        out
    }

    /// Number of triangulation edges at the root with index `u`.
    pub fn degree(&self, u: usize) -> usize {
        self.edges()
            .iter()
            .filter(|&&(p, q)| p == u || q == u)
            .count()
    }

    /// Sum of normalized volumes of the cells.
    pub fn total_normalized_volume(&self) -> i128 {
        self.cells
            .iter()
            .map(|c| {
                if c.len() != self.n {
                    return 0;
                }
                let base = &self.points[c[0]];
                let rows: Vec<Vec<i128>> = c[1..]
                    .iter()
                    .map(|&p| {
                        self.points[p]
                            .iter()
                            .zip(base)
                            .map(|(a, b)| (a - b) as i128)
                            .collect()
                    })
                    .collect();
                determinant(rows).abs()
            })
            .sum()
    }

    /// For each square of `FP_4`: the diagonal with the smaller lift sum, or
    /// `None` when the two sums tie.
    pub fn square_diagonals(&self) -> Vec<(Square, Option<(usize, usize)>)> {
        let fp = FundamentalPolytope::new(self.n).expect("n >= 3");
        let vars = VarSet::x(self.n);
        fp.squares()
            .into_iter()
            .map(|s| {
                let [d1, d2] = s.diagonals(vars);
                let lift = |(p, q): (usize, usize)| self.lifts[p] + self.lifts[q];
                let chosen = match lift(d1).cmp(&lift(d2)) {
                    std::cmp::Ordering::Less => Some(d1),
                    std::cmp::Ordering::Greater => Some(d2),
                    std::cmp::Ordering::Equal => None,
                };
                (s, chosen)
            })
            .collect()
    }
}

/// Lower hull of the lifted configuration by exhaustive search over
/// affinely spanning `n`-point subsets.
pub fn central_subdivision(w: &WeightMatrix) -> Result<CentralSubdivision> {
    check_kleene(w)?;
    let n = w.n();
    let fp = FundamentalPolytope::new(n)?;
    let d = fp.dim();
    let mut points = fp.vertices().to_vec();
    points.push(vec![0; d]);
    let mut lifts = w.to_vector();
    lifts.push(0);
    let m = points.len();

    let subsets = index_subsets(m, d + 1);
    let found: BTreeSet<Vec<usize>> = subsets
        .par_iter()
        .filter_map(|s| lower_cell(&points, &lifts, s))
        .collect();
    // a cell found from several of its spanning subsets appears once; drop
    // any set contained in a larger one
    let cells: Vec<Vec<usize>> = found
        .iter()
        .filter(|c| {
            !found
                .iter()
                .any(|o| o.len() > c.len() && c.iter().all(|p| o.contains(p)))
        })
        .cloned()
        .collect();
    Ok(CentralSubdivision {
        n,
        points,
        lifts,
        cells,
    })
}

fn index_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// If the affine function interpolating the lifts on `subset` is a lower
/// supporting function, returns every point on it.
fn lower_cell(points: &[Vec<i64>], lifts: &[i64], subset: &[usize]) -> Option<Vec<usize>> {
    let d = points[0].len();
    let base = subset[0];
    let rows: Vec<Vec<i128>> = subset[1..]
        .iter()
        .map(|&p| (0..d).map(|k| (points[p][k] - points[base][k]) as i128).collect())
        .collect();
    let det = determinant(rows.clone());
    if det == 0 {
        return None;
    }
    // height above the hyperplane, scaled by det: the (d+1) x (d+1)
    // determinant of [q - base | lift(q) - lift(base)] against the rows
    let height = |q: usize| -> i128 {
        let mut m = rows.clone();
        for (r, &p) in m.iter_mut().zip(&subset[1..]) {
            r.push((lifts[p] - lifts[base]) as i128);
        }
        let mut last: Vec<i128> = (0..d).map(|k| (points[q][k] - points[base][k]) as i128).collect();
        last.push((lifts[q] - lifts[base]) as i128);
        m.push(last);
        determinant(m) * det.signum()
    };
    let mut on = Vec::new();
    for q in 0..points.len() {
        let h = height(q);
        if h < 0 {
            return None;
        }
        if h == 0 {
            on.push(q);
        }
    }
    Some(on)
}

/// One named check inside a coefficient report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of comparing a volume polynomial with the subdivision rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoefficientReport {
    pub checks: Vec<Check>,
    /// Coefficient sum per exponent partition (largest part first).
    pub class_sums: BTreeMap<Vec<u16>, BigRational>,
}

impl CoefficientReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for CoefficientReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

fn class_sums(v: &VolumePolynomial) -> BTreeMap<Vec<u16>, BigRational> {
    let mut sums: BTreeMap<Vec<u16>, BigRational> = BTreeMap::new();
    for (m, c) in v.normalized.terms() {
        *sums.entry(m.exponent_partition()).or_insert_with(BigRational::zero) += c;
    }
    sums
}

fn sum_check(report: &mut CoefficientReport, expected: &[(&[u16], i64)]) {
    for (part, want) in expected {
        let got = report
            .class_sums
            .get(*part)
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let name = format!("sum over partition {}", partition_name(part));
        report.push(&name, got == rat(*want), format!("got {got}, expected {want}"));
    }
}

fn partition_name(p: &[u16]) -> String {
    p.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("+")
}

/// Expected coefficient of each cubic monomial for `n = 4`.
pub fn predicted_coefficients_3d(s: &CentralSubdivision) -> Result<BTreeMap<Monomial, i64>> {
    if s.n != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: s.n,
        });
    }
    if !s.is_triangulation() {
        return Err(Error::Consistency(
            "subdivision is not a triangulation; the weight is not of maximal type".into(),
        ));
    }
    let vars = VarSet::a(4);
    let nv = vars.len();
    let diagonals = s.square_diagonals();
    let mut squares = Vec::new();
    for (sq, chosen) in &diagonals {
        let chosen = chosen.ok_or_else(|| {
            Error::Consistency("a square facet has tied diagonals".into())
        })?;
        squares.push((sq.vertices(vars), chosen));
    }
    let faces = s.boundary_faces();
    let mut out = BTreeMap::new();
    for m in monomials_of_degree(nv, 3) {
        let support: Vec<(usize, u16)> = m.support().collect();
        let value = match support.as_slice() {
            [(u, 3)] => 7 - s.degree(*u) as i64,
            [(p, e), (q, _)] => {
                let (u, w) = if *e == 2 { (*p, *q) } else { (*q, *p) };
                let mut v = 0;
                for (verts, (d1, d2)) in &squares {
                    if verts.contains(&u) && verts.contains(&w) {
                        let opposite = {
                            let [(a, b), (c, d)] = [(verts[0], verts[1]), (verts[2], verts[3])];
                            (u, w) == (a, b) || (u, w) == (b, a) || (u, w) == (c, d) || (u, w) == (d, c)
                        };
                        let is_chosen = (u == *d1 && w == *d2) || (u == *d2 && w == *d1);
                        if (!opposite || is_chosen) && (w == *d1 || w == *d2) {
                            v = -3;
                        }
                    }
                }
                v
            }
            [(a, 1), (b, 1), (c, 1)] => {
                if faces.contains(&vec![*a, *b, *c]) {
                    6
                } else {
                    0
                }
            }
            _ => unreachable!("cubic monomials have these supports"),
        };
        out.insert(m, value);
    }
    Ok(out)
}

/// Checks every cubic coefficient of an `n = 4` volume polynomial against
/// the triangulation: `a_u^3` has `7 - deg(u)`; `a_u^2 a_w` has `-3` when `u`
/// and `w` are joined within a square (by an edge or its triangulating
/// diagonal) and `w` lies on that diagonal, else `0`; `a_u a_v a_w` has `6`
/// exactly for boundary triangles.
pub fn verify_coefficients_3d(v: &VolumePolynomial, s: &CentralSubdivision) -> Result<CoefficientReport> {
    let predicted = predicted_coefficients_3d(s)?;
    let mut report = CoefficientReport {
        checks: Vec::new(),
        class_sums: class_sums(v),
    };
    let vars = v.normalized.vars();
    let mut mismatch = None;
    for (m, want) in &predicted {
        let got = v.normalized.coefficient_or_zero(m);
        if got != rat(*want) {
            mismatch = Some(format!(
                "{} has coefficient {got}, expected {want}",
                render_monomial(vars, m)
            ));
            break;
        }
    }
    let extra = v.normalized.terms().find(|(m, _)| !predicted.contains_key(m));
    if mismatch.is_none() {
        if let Some((m, c)) = extra {
            mismatch = Some(format!("unexpected term {c}*{}", render_monomial(vars, m)));
        }
    }
    report.push(
        "coefficient correspondence",
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| format!("all {} cubic coefficients match", predicted.len())),
    );
    sum_check(&mut report, &[(&[3], 12), (&[2, 1], -108), (&[1, 1, 1], 120)]);
    let degrees: Vec<usize> = (0..12).map(|u| s.degree(u)).collect();
    report.push(
        "vertex degrees",
        degrees.iter().all(|d| (5..=7).contains(d)),
        format!("{degrees:?}"),
    );
    Ok(report)
}

/// Checks the coefficient statistics of an `n = 5` volume polynomial.
///
/// With a triangulation at hand, also checks that a squarefree monomial has
/// coefficient 24 exactly when its four roots span a boundary tetrahedron.
pub fn verify_coefficients_4d(
    v: &VolumePolynomial,
    s: Option<&CentralSubdivision>,
) -> Result<CoefficientReport> {
    let vars = v.normalized.vars();
    if vars.n() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: vars.n(),
        });
    }
    let allowed: [(&[u16], &[i64]); 5] = [
        (&[4], &[-6, -3, -2, -1, 0, 1, 2, 3]),
        (&[3, 1], &[-4, 0, 4, 8]),
        (&[2, 2], &[0, 6]),
        (&[2, 1, 1], &[-12, 0, 12]),
        (&[1, 1, 1, 1], &[0, 24]),
    ];
    let mut report = CoefficientReport {
        checks: Vec::new(),
        class_sums: class_sums(v),
    };

    let mut bad = None;
    for (m, c) in v.normalized.terms() {
        let part = m.exponent_partition();
        let ok = allowed
            .iter()
            .find(|(p, _)| *p == part.as_slice())
            .is_some_and(|(_, set)| set.iter().any(|&x| rat(x) == *c));
        if !ok {
            bad = Some(format!("{} has coefficient {c}", render_monomial(vars, m)));
            break;
        }
    }
    report.push(
        "coefficients in allowed sets",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{} terms checked", v.normalized.len())),
    );
    sum_check(
        &mut report,
        &[
            (&[4], -20),
            (&[3, 1], 320),
            (&[2, 2], 300),
            (&[2, 1, 1], -2160),
            (&[1, 1, 1, 1], 1680),
        ],
    );

    let nv = vars.len();
    let mut orbit_bad = None;
    for i in 0..5 {
        for outgoing in [true, false] {
            let pairs: Vec<(usize, u16)> = (0..5)
                .filter(|&j| j != i)
                .map(|j| {
                    let idx = if outgoing { vars.index(i, j) } else { vars.index(j, i) };
                    (idx.unwrap(), 1)
                })
                .collect();
            let m = Monomial::from_pairs(nv, &pairs);
            let c = v.normalized.coefficient_or_zero(&m);
            if c != rat(24) && orbit_bad.is_none() {
                orbit_bad = Some(format!("{} has coefficient {c}", render_monomial(vars, &m)));
            }
        }
    }
    report.push(
        "star monomials have coefficient 24",
        orbit_bad.is_none(),
        orbit_bad.unwrap_or_else(|| "all 10 match".into()),
    );

    let count = |x: i64| v.normalized.terms().filter(|(_, c)| **c == rat(x)).count();
    let (minus4, twelve) = (count(-4), count(12));
    report.push(
        "#(-4) = 2 #(12)",
        minus4 == 2 * twelve,
        format!("{minus4} vs {twelve}"),
    );

    if let Some(s) = s {
        if s.is_triangulation() {
            let faces = s.boundary_faces();
            let mut face_bad = None;
            for m in monomials_of_degree(nv, 4).into_iter().filter(|m| m.is_squarefree()) {
                let support: Vec<usize> = m.support().map(|(v, _)| v).collect();
                let want = if faces.contains(&support) { 24 } else { 0 };
                let got = v.normalized.coefficient_or_zero(&m);
                if got != rat(want) {
                    face_bad = Some(format!(
                        "{} has coefficient {got}, expected {want}",
                        render_monomial(vars, &m)
                    ));
                    break;
                }
            }
            report.push(
                "squarefree coefficient 24 iff boundary tetrahedron",
                face_bad.is_none(),
                face_bad.unwrap_or_else(|| format!("{} tetrahedra", faces.len())),
            );
        } else {
            report.push(
                "squarefree coefficient 24 iff boundary tetrahedron",
                false,
                "subdivision is not a triangulation".into(),
            );
        }
    }
    Ok(report)
}

/// Number of maximal cells of a unimodular central triangulation of `FP_n`.
pub fn expected_cell_count(n: usize) -> usize {
    maximal_vertex_count(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::volume_polynomial;

    fn example_3d() -> WeightMatrix {
        WeightMatrix::from_rows(&[
            vec![0, 11, 20, 29],
            vec![21, 0, 19, 20],
            vec![20, 29, 0, 11],
            vec![19, 20, 21, 0],
        ])
        .unwrap()
    }

    #[test]
    fn fundamental_polytopes() {
        let fp3 = FundamentalPolytope::new(3).unwrap();
        assert_eq!(fp3.vertices().len(), 6);
        assert_eq!(fp3.edges().len(), 6);
        let fp4 = FundamentalPolytope::new(4).unwrap();
        assert_eq!(fp4.vertices().len(), 12);
        assert_eq!(fp4.edges().len(), 24);
        assert_eq!(fp4.squares().len(), 6);
        assert_eq!(fp4.triangles().len(), 8);
        // every square edge is a polytope edge
        let vars = VarSet::x(4);
        let edges = fp4.edges();
        for s in fp4.squares() {
            let [(a, b), (c, d)] = s.diagonals(vars);
            for (p, q) in [(a, c), (a, d), (b, c), (b, d)] {
                assert!(edges.contains(&(p.min(q), p.max(q))));
            }
            assert!(!edges.contains(&(a.min(b), a.max(b))));
        }
        assert_eq!(FundamentalPolytope::new(5).unwrap().vertices().len(), 20);
        assert!(FundamentalPolytope::new(2).is_err());
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(determinant(vec![vec![2, 0], vec![0, 3]]), 6);
        assert_eq!(determinant(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
    }

    #[test]
    fn hexagon_subdivision() {
        let w = WeightMatrix::from_vector(3, &[3, 2, 3, 4, 5, 6]).unwrap();
        let s = central_subdivision(&w).unwrap();
        assert!(s.is_triangulation());
        assert!(s.every_cell_contains_origin());
        assert_eq!(s.cells().len(), 6);
        assert_eq!(s.total_normalized_volume(), 6);
    }

    #[test]
    fn example_3d_triangulation() {
        let s = central_subdivision(&example_3d()).unwrap();
        assert!(s.is_triangulation());
        assert!(s.every_cell_contains_origin());
        assert_eq!(s.cells().len(), 20);
        assert_eq!(s.total_normalized_volume(), 20);
        // the chosen diagonals are exactly the triangulation's interior square edges
        let edges = s.edges();
        for (sq, chosen) in s.square_diagonals() {
            let (p, q) = chosen.unwrap();
            assert!(edges.contains(&(p.min(q), p.max(q))));
            let [d1, d2] = sq.diagonals(VarSet::x(4));
            let other = if d1 == (p, q) { d2 } else { d1 };
            assert!(!edges.contains(&(other.0.min(other.1), other.0.max(other.1))));
        }
        let degrees: usize = (0..12).map(|u| s.degree(u)).sum();
        assert_eq!(degrees, 12 * 5 + 12);
    }

    #[test]
    fn example_3d_coefficients_follow_the_triangulation() {
        let w = example_3d();
        let v = volume_polynomial(&w).unwrap();
        let s = central_subdivision(&w).unwrap();
        let report = verify_coefficients_3d(&v, &s).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.class_sums[&vec![3]], rat(12));
        assert_eq!(report.class_sums[&vec![2, 1]], rat(-108));
        assert_eq!(report.class_sums[&vec![1, 1, 1]], rat(120));
    }

    #[test]
    fn corrupted_coefficient_is_named() {
        let w = example_3d();
        let mut v = volume_polynomial(&w).unwrap();
        let m = Monomial::var(12, 0, 3);
        v.normalized.add_term(m, rat(1));
        let report = verify_coefficients_3d(&v, &central_subdivision(&w).unwrap()).unwrap();
        assert!(!report.passed());
        let fail = report.first_failure().unwrap();
        assert!(fail.detail.contains("a_12^3"), "{}", fail.detail);
    }

    #[test]
    fn uniform_weights_tie_everywhere() {
        let w = WeightMatrix::from_rows(&[
            vec![0, 1, 1, 1],
            vec![1, 0, 1, 1],
            vec![1, 1, 0, 1],
            vec![1, 1, 1, 0],
        ])
        .unwrap();
        let s = central_subdivision(&w).unwrap();
        assert!(!s.is_triangulation());
        assert!(s.square_diagonals().iter().all(|(_, d)| d.is_none()));
        assert!(predicted_coefficients_3d(&s).is_err());
        assert!(s.every_cell_contains_origin());
    }
}
