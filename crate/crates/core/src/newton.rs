//! Newton polyhedra of polynomial phases: facets, compact faces, distance,
//! remoteness and its multiplicity, principal part, and a sampling check for
//! nondegeneracy of the principal part.
//!
//! All geometry is done in exact rational arithmetic. Facets are found by
//! enumerating hyperplanes spanned by `n`-element subsets of the generators
//! (dominance-minimal support points together with the unit rays `e_j`),
//! which is exhaustive for a full-dimensional polyhedron.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::phase::{refine_minimum, MultiIndex, PolynomialPhase};
use crate::Rational;

/// Maximum number of generator subsets examined during facet enumeration.
pub const DEFAULT_FACET_BUDGET: u64 = 5_000_000;

/// Reduced support: exponents of the non-constant monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSet {
    pub dim: usize,
    pub points: Vec<MultiIndex>,
}

impl SupportSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = MultiIndex>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if !p.is_zero() {
                set.insert(p);
            }
        }
        if set.is_empty() {
            return Err(Error::ConstantPhase);
        }
        Ok(SupportSet {
            dim,
            points: set.into_iter().collect(),
        })
    }

    pub fn from_exponents(dim: usize, points: &[&[u32]]) -> Result<Self> {
        Self::new(dim, points.iter().map(|p| MultiIndex(p.to_vec())))
    }

    /// Points not dominated componentwise by another support point.
    pub fn minimal_points(&self) -> Vec<MultiIndex> {
        self.points
            .iter()
            .filter(|p| !self.points.iter().any(|q| q != *p && q.dominated_by(p)))
            .cloned()
            .collect()
    }
}

/// Exponents of all non-constant monomials of `phase`.
pub fn reduced_support(phase: &PolynomialPhase) -> Result<SupportSet> {
    SupportSet::new(phase.dim(), phase.terms().map(|(k, _)| k.clone()))
}

/// A facet inequality `⟨w, k⟩ ≥ level` with `w ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub weight: Vec<Rational>,
    pub level: Rational,
}

impl Facet {
    fn value(&self, p: &[i64]) -> Rational {
        self.weight
            .iter()
            .zip(p)
            .map(|(w, &x)| *w * Rational::from_integer(x))
            .sum()
    }

    fn is_tight(&self, p: &[i64]) -> bool {
        self.value(p) == self.level
    }
}

/// `conv(support) + ℝ^n_{≥0}` given by its minimal points and facets.
#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    pub dim: usize,
    pub minimal: Vec<MultiIndex>,
    pub facets: Vec<Facet>,
}

/// A bounded face with a strictly positive supporting weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactFace {
    pub dim: usize,
    /// Extreme points of the face.
    pub vertices: Vec<MultiIndex>,
    /// Every minimal support point on the face (vertices included).
    pub points: Vec<MultiIndex>,
    pub weight: Vec<Rational>,
    pub level: Rational,
}

/// Newton diagram data for a phase in the given coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramInfo {
    pub dim: usize,
    pub faces: Vec<CompactFace>,
    pub distance: Rational,
    pub remoteness: Rational,
    pub multiplicity: usize,
    pub is_remote: bool,
    /// Index into `faces` of the open face containing the center, when that
    /// face is compact.
    pub center_face: Option<usize>,
}

fn rat_str<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Serialize)]
struct FaceJson<'a> {
    dim: usize,
    vertices: Vec<&'a [u32]>,
    weight: Vec<String>,
    #[serde(serialize_with = "rat_str")]
    level: Rational,
}

#[derive(Serialize)]
struct DiagramJson<'a> {
    #[serde(serialize_with = "rat_str")]
    c: Rational,
    #[serde(serialize_with = "rat_str")]
    beta: Rational,
    multiplicity: usize,
    remote: bool,
    center_face: Option<usize>,
    faces: Vec<FaceJson<'a>>,
}

impl Serialize for DiagramInfo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            c: self.distance,
            beta: self.remoteness,
            multiplicity: self.multiplicity,
            remote: self.is_remote,
            center_face: self.center_face,
            faces: self
                .faces
                .iter()
                .map(|f| FaceJson {
                    dim: f.dim,
                    vertices: f.vertices.iter().map(MultiIndex::as_slice).collect(),
                    weight: f.weight.iter().map(|w| w.to_string()).collect(),
                    level: f.level,
                })
                .collect(),
        }
        .serialize(s)
    }
}

fn to_i64(k: &MultiIndex) -> Vec<i64> {
    k.0.iter().map(|&e| e as i64).collect()
}

/// Rank of a rational matrix given by rows.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let p = m[r][col];
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col] / p;
                for j in col..ncols {
                    let v = m[r][j];
                    m[i][j] -= f * v;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// A spanning vector of the null space when it is one-dimensional.
fn null_vector(rows: &[Vec<Rational>], n: usize) -> Option<Vec<Rational>> {
    if rows.is_empty() {
        return (n == 1).then(|| vec![Rational::one()]);
    }
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let p = m[r][col];
        for j in 0..n {
            m[r][j] /= p;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col];
                for j in 0..n {
                    let v = m[r][j];
                    m[i][j] -= f * v;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    if pivots.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); n];
    v[free] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row][free];
    }
    Some(v)
}

/// Scales a facet so the level is 1, or the largest weight is 1 when the
/// level is 0.
fn normalize(mut w: Vec<Rational>, level: Rational) -> Facet {
    let scale = if level.is_positive() {
        level
    } else {
        w.iter().copied().fold(Rational::zero(), |a, b| a.max(b))
    };
    for x in &mut w {
        *x /= scale;
    }
    Facet {
        weight: w,
        level: level / scale,
    }
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| {
        acc.saturating_mul((n - i) as u64) / (i as u64 + 1)
    })
}

/// Builds the polyhedron and its facets with the default enumeration budget.
pub fn newton_polyhedron(support: &SupportSet) -> Result<NewtonPolyhedron> {
    newton_polyhedron_with_budget(support, DEFAULT_FACET_BUDGET)
}

pub fn newton_polyhedron_with_budget(
    support: &SupportSet,
    budget: u64,
) -> Result<NewtonPolyhedron> {
    let n = support.dim;
    let minimal = support.minimal_points();
    if minimal.is_empty() {
        return Err(Error::ConstantPhase);
    }
    let pts: Vec<Vec<i64>> = minimal.iter().map(to_i64).collect();
    let m = pts.len();

    let work: u64 = (1..=n.min(m))
        .map(|k| binomial(m, k).saturating_mul(binomial(n, n - k)))
        .fold(0u64, u64::saturating_add);
    if work > budget {
        return Err(Error::BudgetExceeded(format!(
            "facet enumeration needs {work} subsets (budget {budget})"
        )));
    }

    let mut facets: Vec<Facet> = Vec::new();
    let mut seen: HashSet<Facet> = HashSet::new();
    for k in 1..=n.min(m) {
        combinations(m, k, |pi| {
            combinations(n, n - k, |ri| {
                let p0 = &pts[pi[0]];
                let mut rows: Vec<Vec<Rational>> = pi[1..]
                    .iter()
                    .map(|&i| {
                        pts[i]
                            .iter()
                            .zip(p0)
                            .map(|(a, b)| Rational::from_integer(a - b))
                            .collect()
                    })
                    .collect();
                for &axis in ri {
                    let mut e = vec![Rational::zero(); n];
                    e[axis] = Rational::one();
                    rows.push(e);
                }
                if let Some(mut w) = null_vector(&rows, n) {
                    if w.iter().all(|x| !x.is_positive()) {
                        for x in &mut w {
                            *x = -*x;
                        }
                    }
                    if w.iter().all(|x| !x.is_negative()) {
                        let level: Rational = w
                            .iter()
                            .zip(p0)
                            .map(|(a, &b)| *a * Rational::from_integer(b))
                            .sum();
                        let f = normalize(w, level);
                        if pts.iter().all(|p| f.value(p) >= f.level) && seen.insert(f.clone()) {
                            facets.push(f);
                        }
                    }
                }
                true
            });
            true
        });
    }
    facets.sort_by(|a, b| b.level.cmp(&a.level).then(a.weight.cmp(&b.weight)));
    Ok(NewtonPolyhedron {
        dim: n,
        minimal,
        facets,
    })
}

impl NewtonPolyhedron {
    /// Whether `x` satisfies every facet inequality.
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| {
            let v: Rational = f.weight.iter().zip(x).map(|(a, b)| *a * *b).sum();
            v >= f.level
        })
    }

    fn point_sets(&self) -> Vec<BTreeSet<usize>> {
        let pts: Vec<Vec<i64>> = self.minimal.iter().map(to_i64).collect();
        self.facets
            .iter()
            .map(|f| (0..pts.len()).filter(|&i| f.is_tight(&pts[i])).collect())
            .collect()
    }
}

/// All compact faces: vertices, edges and so on, each with a strictly
/// positive supporting weight (the sum of the normals of its facets).
pub fn compact_faces(poly: &NewtonPolyhedron) -> Vec<CompactFace> {
    let n = poly.dim;
    let sets = poly.point_sets();
    let pts: Vec<Vec<i64>> = poly.minimal.iter().map(to_i64).collect();

    // every face is an intersection of facets; collect the distinct point sets
    let mut all: BTreeSet<BTreeSet<usize>> =
        sets.iter().filter(|s| !s.is_empty()).cloned().collect();
    let mut frontier: Vec<BTreeSet<usize>> = all.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for t in &sets {
            let inter: BTreeSet<usize> = s.intersection(t).copied().collect();
            if !inter.is_empty() && all.insert(inter.clone()) {
                frontier.push(inter);
            }
        }
    }

    let mut faces = Vec::new();
    for s in all {
        let containing: Vec<&Facet> = poly
            .facets
            .iter()
            .zip(&sets)
            .filter(|(_, t)| s.is_subset(t))
            .map(|(f, _)| f)
            .collect();
        let mut w = vec![Rational::zero(); n];
        for f in &containing {
            for (a, b) in w.iter_mut().zip(&f.weight) {
                *a += *b;
            }
        }
        if !w.iter().all(|x| x.is_positive()) {
            continue;
        }
        let first = &pts[*s.iter().next().unwrap()];
        let level: Rational = w
            .iter()
            .zip(first)
            .map(|(a, &b)| *a * Rational::from_integer(b))
            .sum();
        let f = normalize(w, level);
        let diffs: Vec<Vec<Rational>> = s
            .iter()
            .map(|&i| {
                pts[i]
                    .iter()
                    .zip(first)
                    .map(|(a, b)| Rational::from_integer(a - b))
                    .collect()
            })
            .collect();
        let dim = rank(&diffs);
        let members: Vec<usize> = s.iter().copied().collect();
        let vertices = members
            .iter()
            .filter(|&&i| is_extreme(i, &members, &pts))
            .map(|&i| poly.minimal[i].clone())
            .collect();
        faces.push(CompactFace {
            dim,
            vertices,
            points: members.iter().map(|&i| poly.minimal[i].clone()).collect(),
            weight: f.weight,
            level: f.level,
        });
    }
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then(a.points.cmp(&b.points)));
    faces
}

/// A point of a face is a vertex unless it lies in the hull of the others.
fn is_extreme(i: usize, members: &[usize], pts: &[Vec<i64>]) -> bool {
    let others: Vec<&Vec<i64>> = members
        .iter()
        .filter(|&&j| j != i)
        .map(|&j| &pts[j])
        .collect();
    if others.is_empty() {
        return true;
    }
    !in_convex_hull(&pts[i], &others)
}

/// Exact convex-hull membership for small point sets via barycentric
/// feasibility on every affinely independent subset.
fn in_convex_hull(p: &[i64], others: &[&Vec<i64>]) -> bool {
    let n = p.len();
    let m = others.len();
    for k in 1..=m.min(n + 1) {
        let mut found = false;
        combinations(m, k, |idx| {
            // Σ λ_j q_j = p, Σ λ_j = 1
            let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
            for d in 0..n {
                let mut row: Vec<Rational> = idx
                    .iter()
                    .map(|&j| Rational::from_integer(others[j][d]))
                    .collect();
                row.push(Rational::from_integer(p[d]));
                rows.push(row);
            }
            let mut ones = vec![Rational::one(); k];
            ones.push(Rational::one());
            rows.push(ones);
            if let Some(lambda) = solve_unique(&rows, k) {
                if lambda.iter().all(|l| !l.is_negative()) {
                    found = true;
                    return false;
                }
            }
            true
        });
        if found {
            return true;
        }
    }
    false
}

/// Solves an augmented system with `k` unknowns when the solution exists and
/// is unique.
fn solve_unique(aug: &[Vec<Rational>], k: usize) -> Option<Vec<Rational>> {
    let mut m = aug.to_vec();
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let piv = (r..m.len()).find(|&i| !m[i][col].is_zero())?;
        m.swap(r, piv);
        let p = m[r][col];
        for j in 0..=k {
            m[r][j] /= p;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col];
                for j in 0..=k {
                    let v = m[r][j];
                    m[i][j] -= f * v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k]).collect())
}

/// `c = min{t > 0 : t·(1,…,1) ∈ P}` and `β = −1/c`.
pub fn distance_and_remoteness(poly: &NewtonPolyhedron) -> (Rational, Rational) {
    let c = poly
        .facets
        .iter()
        .map(|f| f.level / f.weight.iter().copied().sum::<Rational>())
        .fold(Rational::zero(), |a, b| a.max(b));
    (c, -c.recip())
}

/// Codimension, less one, of the open face containing `(c,…,c)`.
pub fn multiplicity_of_remoteness(poly: &NewtonPolyhedron, c: Rational) -> usize {
    let center = vec![c; poly.dim];
    let tight: Vec<Vec<Rational>> = poly
        .facets
        .iter()
        .filter(|f| f.weight.iter().map(|w| *w * c).sum::<Rational>() == f.level)
        .map(|f| f.weight.clone())
        .collect();
    debug_assert!(poly.contains(&center));
    rank(&tight).saturating_sub(1)
}

/// Full diagram analysis with the default budget.
pub fn analyze(phase: &PolynomialPhase) -> Result<DiagramInfo> {
    let support = reduced_support(phase)?;
    let poly = newton_polyhedron(&support)?;
    Ok(diagram_info(&poly))
}

pub fn diagram_info(poly: &NewtonPolyhedron) -> DiagramInfo {
    let (c, beta) = distance_and_remoteness(poly);
    let multiplicity = multiplicity_of_remoteness(poly, c);
    let faces = if poly.dim <= 3 {
        compact_faces(poly)
    } else {
        Vec::new()
    };
    let center: Vec<Rational> = vec![c; poly.dim];
    // the open face containing the center is the smallest compact face whose
    // supporting hyperplane passes through it
    let center_face = faces
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            f.weight
                .iter()
                .zip(&center)
                .map(|(a, b)| *a * *b)
                .sum::<Rational>()
                == f.level
        })
        .filter(|(_, f)| poly.dim - f.dim == multiplicity + 1)
        .map(|(i, _)| i)
        .next();
    DiagramInfo {
        dim: poly.dim,
        faces,
        distance: c,
        remoteness: beta,
        multiplicity,
        is_remote: c > Rational::one(),
        center_face,
    }
}

/// Sum of the monomials whose exponent lies on a compact face.
pub fn principal_part(phase: &PolynomialPhase, faces: &[CompactFace]) -> PolynomialPhase {
    let on_face: HashSet<&MultiIndex> = faces.iter().flat_map(|f| f.points.iter()).collect();
    phase.filter_terms(|k| on_face.contains(k))
}

/// Restriction of `phase` to the monomials of one face.
pub fn face_polynomial(phase: &PolynomialPhase, face: &CompactFace) -> PolynomialPhase {
    let on_face: HashSet<&MultiIndex> = face.points.iter().collect();
    phase.filter_terms(|k| on_face.contains(k))
}

/// Result of the nondegeneracy sampler.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum NondegeneracyReport {
    /// No common zero of the face partials found at sampling step `h`.
    Pass { h: f64 },
    Fail {
        face: usize,
        witness: Vec<f64>,
        residual: f64,
    },
}

impl NondegeneracyReport {
    pub fn passed(&self) -> bool {
        matches!(self, NondegeneracyReport::Pass { .. })
    }
}

/// Looks for common zeros in `(ℝ∖0)^n` of the partials of each face
/// polynomial. Face polynomials are quasi-homogeneous, so sampling each
/// orthant on `[1/2, 2]^n` in absolute value covers a fundamental domain.
pub fn r_nondegeneracy_check(
    phase: &PolynomialPhase,
    faces: &[CompactFace],
    samples: usize,
) -> Result<NondegeneracyReport> {
    let n = phase.dim();
    if n > 3 {
        return Err(Error::invalid("nondegeneracy sampling supports n ≤ 3"));
    }
    let samples = samples.max(2);
    let h = 1.5 / (samples - 1) as f64;
    for (fi, face) in faces.iter().enumerate() {
        let fg = face_polynomial(phase, face);
        let grad = fg.gradient();
        let g2 = |x: &[f64]| -> f64 { grad.iter().map(|g| g.eval_unchecked(x).powi(2)).sum() };
        let total = samples.pow(n as u32);
        for signs in 0..(1usize << n) {
            let sign = |axis: usize| if signs >> axis & 1 == 1 { -1.0 } else { 1.0 };
            let mut best = (f64::INFINITY, Vec::new());
            let mut scale = 0.0_f64;
            for idx in 0..total {
                let mut rest = idx;
                let x: Vec<f64> = (0..n)
                    .map(|axis| {
                        let i = rest % samples;
                        rest /= samples;
                        sign(axis) * (0.5 + i as f64 * h)
                    })
                    .collect();
                let v = g2(&x);
                scale = scale.max(v);
                if v < best.0 {
                    best = (v, x);
                }
            }
            // refine inside the orthant box around the best sample
            let (x, v) = refine_orthant(&g2, best.1, h, &sign);
            let residual = v.sqrt() / scale.sqrt().max(f64::MIN_POSITIVE);
            if residual <= 1e-8 {
                return Ok(NondegeneracyReport::Fail {
                    face: fi,
                    witness: x,
                    residual,
                });
            }
        }
    }
    Ok(NondegeneracyReport::Pass { h })
}

fn refine_orthant(
    g: &impl Fn(&[f64]) -> f64,
    start: Vec<f64>,
    h: f64,
    sign: &impl Fn(usize) -> f64,
) -> (Vec<f64>, f64) {
    // map to the positive box [1/2, 2]^n, search there, map back
    let n = start.len();
    let to_pos = |x: &[f64]| -> Vec<f64> { (0..n).map(|a| x[a] * sign(a)).collect() };
    let wrapped = |y: &[f64]| -> f64 {
        if y.iter().any(|&v| !(0.5..=2.0).contains(&v)) {
            return f64::INFINITY;
        }
        g(&to_pos(y))
    };
    let (y, v) = refine_minimum(&wrapped, to_pos(&start), h, 2.0);
    (to_pos(&y), v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn phase2(terms: &[([u32; 2], f64)]) -> PolynomialPhase {
        PolynomialPhase::from_terms(2, terms.iter().map(|&(k, c)| (k.to_vec(), c))).unwrap()
    }

    fn support(dim: usize, pts: &[&[u32]]) -> SupportSet {
        SupportSet::from_exponents(dim, pts).unwrap()
    }

    #[test]
    fn reduced_support_drops_constant() {
        let f = phase2(&[([2, 1], 1.0), ([4, 0], 1.0), ([0, 0], 1.0)]);
        let s = reduced_support(&f).unwrap();
        assert_eq!(
            s.points,
            vec![MultiIndex(vec![2, 1]), MultiIndex(vec![4, 0])]
        );
        let c = PolynomialPhase::from_terms(1, [(vec![0], 1.0)]).unwrap();
        assert!(matches!(reduced_support(&c), Err(Error::ConstantPhase)));
    }

    #[test]
    fn two_point_edge() {
        for (p, q) in [(2u32, 3u32), (3, 5), (4, 4)] {
            let poly = newton_polyhedron(&support(2, &[&[p, 0], &[0, q]])).unwrap();
            let faces = compact_faces(&poly);
            assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 2);
            let edges: Vec<_> = faces.iter().filter(|f| f.dim == 1).collect();
            assert_eq!(edges.len(), 1);
            assert_eq!(edges[0].weight, vec![r(1, p as i64), r(1, q as i64)]);
            assert_eq!(edges[0].level, Rational::one());
            let (c, beta) = distance_and_remoteness(&poly);
            assert_eq!(c, r((p * q) as i64, (p + q) as i64));
            assert_eq!(beta, -r(1, p as i64) - r(1, q as i64));
            assert_eq!(multiplicity_of_remoteness(&poly, c), 0);
        }
    }

    #[test]
    fn one_dimensional() {
        let poly = newton_polyhedron(&support(1, &[&[2], &[5]])).unwrap();
        assert_eq!(poly.minimal, vec![MultiIndex(vec![2])]);
        let faces = compact_faces(&poly);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].vertices, vec![MultiIndex(vec![2])]);
        let (c, beta) = distance_and_remoteness(&poly);
        assert_eq!((c, beta), (r(2, 1), r(-1, 2)));
        assert_eq!(multiplicity_of_remoteness(&poly, c), 0);
    }

    #[test]
    fn staircase_with_three_vertices() {
        let poly = newton_polyhedron(&support(2, &[&[2, 1], &[4, 0], &[1, 3]])).unwrap();
        let faces = compact_faces(&poly);
        let verts: Vec<_> = faces
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| f.vertices[0].clone())
            .collect();
        assert_eq!(
            verts,
            vec![
                MultiIndex(vec![1, 3]),
                MultiIndex(vec![2, 1]),
                MultiIndex(vec![4, 0])
            ]
        );
        assert_eq!(faces.iter().filter(|f| f.dim == 1).count(), 2);

        let poly = newton_polyhedron(&support(2, &[&[2, 1], &[4, 0], &[0, 4]])).unwrap();
        let faces = compact_faces(&poly);
        assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 3);
        assert_eq!(faces.iter().filter(|f| f.dim == 1).count(), 2);
    }

    #[test]
    fn nondegenerate_quadratic_is_not_remote() {
        let poly = newton_polyhedron(&support(2, &[&[2, 0], &[0, 2]])).unwrap();
        let info = diagram_info(&poly);
        assert_eq!(info.distance, Rational::one());
        assert_eq!(info.remoteness, -Rational::one());
        assert!(!info.is_remote);
    }

    #[test]
    fn vertex_centered_diagram_has_multiplicity_one() {
        let poly = newton_polyhedron(&support(2, &[&[2, 2]])).unwrap();
        let info = diagram_info(&poly);
        assert_eq!(info.distance, r(2, 1));
        assert_eq!(info.multiplicity, 1);
        assert_eq!(info.center_face.map(|i| info.faces[i].dim), Some(0));

        // x^4 + x^2 y^2 + y^4: center (2,2) is a vertex shared by two edges
        let poly = newton_polyhedron(&support(2, &[&[4, 0], &[2, 2], &[0, 4]])).unwrap();
        let info = diagram_info(&poly);
        assert_eq!(info.distance, r(2, 1));
        assert_eq!(info.multiplicity, 0, "(2,2) lies inside the single edge");
    }

    #[test]
    fn three_dimensional_simplex() {
        let poly = newton_polyhedron(&support(3, &[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4]])).unwrap();
        let info = diagram_info(&poly);
        assert_eq!(info.distance, r(4, 3));
        assert_eq!(info.remoteness, r(-3, 4));
        assert_eq!(info.multiplicity, 0);
        assert_eq!(info.faces.iter().filter(|f| f.dim == 2).count(), 1);
        assert_eq!(info.faces.iter().filter(|f| f.dim == 1).count(), 3);
        assert_eq!(info.faces.iter().filter(|f| f.dim == 0).count(), 3);

        let poly = newton_polyhedron(&support(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(distance_and_remoteness(&poly), (r(2, 3), r(-3, 2)));
    }

    #[test]
    fn principal_part_drops_interior_monomials() {
        let f = phase2(&[
            ([2, 1], 1.0),
            ([4, 0], 1.0),
            ([0, 4], 1.0),
            ([3, 3], 1.0),
            ([0, 0], 1.0),
        ]);
        let info = analyze(&f).unwrap();
        let pp = principal_part(&f, &info.faces);
        assert_eq!(pp, phase2(&[([2, 1], 1.0), ([4, 0], 1.0), ([0, 4], 1.0)]));
        assert_eq!(principal_part(&pp, &info.faces), pp);

        let g = PolynomialPhase::from_terms(1, [(vec![2], 1.0), (vec![5], 1.0)]).unwrap();
        let info = analyze(&g).unwrap();
        assert_eq!(
            principal_part(&g, &info.faces),
            PolynomialPhase::from_terms(1, [(vec![2], 1.0)]).unwrap()
        );
    }

    #[test]
    fn collinear_point_is_on_face_but_not_a_vertex() {
        let f = phase2(&[([2, 0], 1.0), ([1, 1], -2.0), ([0, 2], 1.0)]);
        let info = analyze(&f).unwrap();
        let edge = info.faces.iter().find(|f| f.dim == 1).unwrap();
        assert_eq!(edge.points.len(), 3);
        assert_eq!(edge.vertices.len(), 2);
    }

    #[test]
    fn nondegeneracy_sampler() {
        let f = phase2(&[([3, 0], 1.0), ([0, 5], 1.0)]);
        let info = analyze(&f).unwrap();
        assert!(r_nondegeneracy_check(&f, &info.faces, 40).unwrap().passed());

        let g = phase2(&[([2, 0], 1.0), ([1, 1], -2.0), ([0, 2], 1.0)]);
        let info = analyze(&g).unwrap();
        match r_nondegeneracy_check(&g, &info.faces, 40).unwrap() {
            NondegeneracyReport::Fail { witness, .. } => {
                assert!((witness[0] - witness[1]).abs() < 1e-6)
            }
            other => panic!("{other:?}"),
        }

        let h = PolynomialPhase::from_terms(1, [(vec![2], 1.0)]).unwrap();
        let info = analyze(&h).unwrap();
        assert!(r_nondegeneracy_check(&h, &info.faces, 40).unwrap().passed());
    }

    #[test]
    fn json_uses_rational_strings() {
        let f = phase2(&[([2, 0], 1.0), ([0, 3], 1.0), ([0, 0], 1.0)]);
        let info = analyze(&f).unwrap();
        let v: serde_json::Value = serde_json::to_value(&info).unwrap();
        assert_eq!(v["c"], "6/5");
        assert_eq!(v["beta"], "-5/6");
        assert_eq!(v["multiplicity"], 0);
        assert_eq!(v["remote"], true);
        assert!(v["faces"].as_array().unwrap().len() == 3);
    }

    #[test]
    fn budget_is_enforced() {
        let pts: Vec<Vec<u32>> = (0..30).map(|i| vec![i, 29 - i, 1, 1]).collect();
        let refs: Vec<&[u32]> = pts.iter().map(Vec::as_slice).collect();
        let s = support(4, &refs);
        assert!(matches!(
            newton_polyhedron_with_budget(&s, 100),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
