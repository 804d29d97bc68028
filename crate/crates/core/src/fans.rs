//! Rational strongly convex polyhedral cones and τ-stable fans.
//!
//! A cone is stored by its primitive, irredundant generators in
//! lexicographic order; this list is its identity. Facets are found by
//! enumerating hyperplanes through generators inside the linear span, which
//! is exact and cheap at desk scale (ambient rank ≤ 8).

use crate::matrix::{
    self, is_zero, primitive, saturated_span, smith_normal_form, vec_add, CoordinateSystem, Int,
    Matrix, Vector,
};
use crate::zlattice::{InvolutiveLattice, LatticeError};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("generator {generator:?} has length {got}, expected ambient rank {expected}")]
    DimensionMismatch { generator: Vector, expected: usize, got: usize },
    #[error("cone generated by {generators:?} contains a line")]
    NotStronglyConvex { generators: Vec<Vector> },
    #[error("vector {0:?} is not in the support of the fan")]
    NotInSupport(Vector),
    #[error("not a fan: {0}")]
    NotAFan(FanViolation),
    #[error("sublattice is not stable under tau")]
    NotStable,
    #[error("projection does not commute with the involutions")]
    NotEquivariant,
    #[error("projection is not surjective onto a lattice")]
    NotSurjective,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A failed fan axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanViolation {
    DimensionMismatch { cone: Vec<Vector> },
    NotStronglyConvex { cone: Vec<Vector> },
    IntersectionNotFace { first: Vec<Vector>, second: Vec<Vector>, intersection: Vec<Vector> },
    NotTauStable { cone: Vec<Vector> },
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::DimensionMismatch { cone } => write!(f, "cone {cone:?} has generators of the wrong length"),
            FanViolation::NotStronglyConvex { cone } => write!(f, "cone {cone:?} is not strongly convex"),
            FanViolation::IntersectionNotFace { first, second, intersection } => write!(
                f,
                "cones {first:?} and {second:?} meet in {intersection:?}, which is not a common face"
            ),
            FanViolation::NotTauStable { cone } => write!(f, "tau maps cone {cone:?} outside the fan"),
        }
    }
}

/// Inequality description of a cone: `equations · x = 0`, `inequalities · x ≥ 0`.
#[derive(Clone, Debug)]
struct HRep {
    equations: Vec<Vector>,
    inequalities: Vec<Vector>,
}

#[derive(Clone)]
pub struct Cone {
    ambient: usize,
    generators: Vec<Vector>,
    dim: usize,
    hrep: HRep,
    /// For each facet, the indices of the generators lying on it.
    facet_sets: Vec<Vec<usize>>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.generators == other.generators
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.generators.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    /// Dimension first, then the generator list.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim, &self.generators).cmp(&(other.ambient, other.dim, &other.generators))
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.generators)
    }
}

/// Normal to the hyperplane spanned by d−1 vectors of ℤ^d (generalized cross product).
fn cross(rows: &[Vector], d: usize) -> Vector {
    let mut normal = Vec::with_capacity(d);
    for i in 0..d {
        let det = if d <= 4 {
            small_minor(rows, i)
        } else {
            let minor: Vec<Vector> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| *x).collect())
                .collect();
            Matrix::from_rows_with_width(&minor, d - 1).det()
        };
        normal.push(if i % 2 == 0 { det } else { -det });
    }
    primitive(&normal)
}

/// Determinant of `rows` with column `skip` removed, for at most three rows.
fn small_minor(rows: &[Vector], skip: usize) -> Int {
    let mut m = [[0 as Int; 3]; 3];
    for (r, row) in rows.iter().enumerate() {
        let mut c = 0;
        for (j, &x) in row.iter().enumerate() {
            if j != skip {
                m[r][c] = x;
                c += 1;
            }
        }
    }
    let det = match rows.len() {
        0 => 1,
        1 => m[0][0] as i128,
        2 => m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128,
        _ => {
            let e = |r: usize, c: usize| m[r][c] as i128;
            e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
        }
    };
    Int::try_from(det).expect("minor fits in an i64")
}

/// Calls `f` on every k-subset of 0..n in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Extreme rays of the pointed cone {x ∈ ℝⁿ : E x = 0, A x ≥ 0}.
fn extreme_rays(n: usize, equations: &[Vector], inequalities: &[Vector]) -> Vec<Vector> {
    let lin = matrix::kernel(&Matrix::from_rows_with_width(equations, n));
    let k = lin.cols();
    if k == 0 {
        return Vec::new();
    }
    let mut rows: BTreeSet<Vector> = BTreeSet::new();
    for a in inequalities {
        let r = primitive(&Matrix::from_rows_with_width(std::slice::from_ref(a), n).mul(&lin).row(0));
        if !is_zero(&r) {
            rows.insert(r);
        }
    }
    let rows: Vec<Vector> = rows.into_iter().collect();
    let mut rays: BTreeSet<Vector> = BTreeSet::new();
    for_each_subset(rows.len(), k - 1, |subset| {
        let chosen: Vec<Vector> = subset.iter().map(|&i| rows[i].clone()).collect();
        let y = cross(&chosen, k);
        if is_zero(&y) {
            return;
        }
        let values: Vec<Int> = rows.iter().map(|r| matrix::dot(r, &y)).collect();
        if values.iter().all(|&v| v >= 0) {
            rays.insert(primitive(&lin.mul_vec(&y)));
        }
        if values.iter().all(|&v| v <= 0) {
            let neg: Vector = y.iter().map(|x| -x).collect();
            rays.insert(primitive(&lin.mul_vec(&neg)));
        }
    });
    rays.into_iter().collect()
}

impl Cone {
    /// The cone spanned by `generators` in ℤ^ambient; generators are made
    /// primitive, zero vectors and redundant generators are dropped.
    pub fn new(ambient: usize, generators: Vec<Vector>) -> Result<Cone, FanError> {
        let mut gens: BTreeSet<Vector> = BTreeSet::new();
        for g in generators {
            if g.len() != ambient {
                return Err(FanError::DimensionMismatch { expected: ambient, got: g.len(), generator: g });
            }
            if !is_zero(&g) {
                gens.insert(primitive(&g));
            }
        }
        let gens: Vec<Vector> = gens.into_iter().collect();
        let (dim, span, facets) = Self::facet_data(ambient, &gens);
        if dim == gens.len() {
            // Independent generators: pointed, and every generator is extreme.
            return Ok(Self::assemble(ambient, gens, dim, span, facets));
        }
        let pointed = match dim {
            0 => true,
            _ => {
                let normals: Vec<Vector> = facets.iter().map(|(n, _)| n.clone()).collect();
                !normals.is_empty() && Matrix::from_rows_with_width(&normals, dim).rank() == dim
            }
        };
        if !pointed {
            return Err(FanError::NotStronglyConvex { generators: gens });
        }
        // Keep only extreme rays: generators on dim−1 independent facets.
        let extreme: Vec<Vector> = if dim <= 1 {
            gens.iter().take(1.min(gens.len())).cloned().collect()
        } else {
            gens.iter()
                .enumerate()
                .filter(|(i, _)| {
                    let tight: Vec<Vector> =
                        facets.iter().filter(|(_, on)| on.contains(i)).map(|(n, _)| n.clone()).collect();
                    Matrix::from_rows_with_width(&tight, dim).rank() == dim - 1
                })
                .map(|(_, g)| g.clone())
                .collect()
        };
        if extreme.len() == gens.len() {
            Ok(Self::assemble(ambient, gens, dim, span, facets))
        } else {
            let (dim, span, facets) = Self::facet_data(ambient, &extreme);
            Ok(Self::assemble(ambient, extreme, dim, span, facets))
        }
    }

    pub fn zero(ambient: usize) -> Cone {
        Cone::new(ambient, Vec::new()).expect("the origin is a cone")
    }

    /// Dimension, span coordinate map, and facets (normal in span coordinates, generator indices).
    #[allow(clippy::type_complexity)]
    fn facet_data(ambient: usize, gens: &[Vector]) -> (usize, Smith2, Vec<(Vector, Vec<usize>)>) {
        let g = Matrix::from_columns(ambient, gens);
        let s = smith_normal_form(&g);
        let dim = s.rank;
        // Span coordinates of a vector x in the span: the first dim entries of U x.
        let coords: Vec<Vector> = gens.iter().map(|x| s.u.mul_vec(x)[..dim].to_vec()).collect();
        let mut facets: BTreeMap<Vec<usize>, Vector> = BTreeMap::new();
        if dim >= 1 {
            for_each_subset(gens.len(), dim - 1, |subset| {
                let rows: Vec<Vector> = subset.iter().map(|&i| coords[i].clone()).collect();
                let normal = cross(&rows, dim);
                if is_zero(&normal) {
                    return;
                }
                let values: Vec<Int> = coords.iter().map(|c| matrix::dot(c, &normal)).collect();
                let sign = if values.iter().all(|&v| v >= 0) {
                    1
                } else if values.iter().all(|&v| v <= 0) {
                    -1
                } else {
                    return;
                };
                let on: Vec<usize> = (0..gens.len()).filter(|&i| values[i] == 0).collect();
                facets.entry(on).or_insert_with(|| normal.iter().map(|x| sign * x).collect());
            });
        }
        let facets = facets.into_iter().map(|(on, n)| (n, on)).collect();
        (dim, Smith2 { u: s.u }, facets)
    }

    fn assemble(
        ambient: usize,
        generators: Vec<Vector>,
        dim: usize,
        span: Smith2,
        facets: Vec<(Vector, Vec<usize>)>,
    ) -> Cone {
        let u = span.u;
        let equations: Vec<Vector> = (dim..ambient).map(|i| u.row(i)).collect();
        let head = u.row_range(0, dim);
        let inequalities: Vec<Vector> = facets
            .iter()
            .map(|(n, _)| Matrix::from_rows_with_width(std::slice::from_ref(n), dim).mul(&head).row(0))
            .collect();
        let facet_sets = facets.into_iter().map(|(_, on)| on).collect();
        Cone { ambient, generators, dim, hrep: HRep { equations, inequalities }, facet_sets }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.generators.len() == self.dim
    }

    /// Generators extend to a basis of the lattice.
    pub fn is_smooth(&self) -> bool {
        self.is_simplicial() && matrix::is_saturated_basis(&self.generator_matrix())
    }

    pub fn generator_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.generators)
    }

    /// Basis (columns) of N_c, the saturated lattice of the linear span.
    pub fn span_lattice(&self) -> Matrix {
        saturated_span(&self.generator_matrix())
    }

    /// Sum of the primitive generators.
    pub fn barycenter(&self) -> Vector {
        self.generators.iter().fold(vec![0; self.ambient], |acc, g| vec_add(&acc, g))
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.hrep.equations.iter().all(|e| matrix::dot(e, x) == 0)
            && self.hrep.inequalities.iter().all(|a| matrix::dot(a, x) >= 0)
    }

    pub fn relative_interior_contains(&self, x: &[Int]) -> bool {
        self.hrep.equations.iter().all(|e| matrix::dot(e, x) == 0)
            && self.hrep.inequalities.iter().all(|a| matrix::dot(a, x) > 0)
    }

    pub fn facets(&self) -> Vec<Cone> {
        self.facet_sets
            .iter()
            .map(|on| self.sub_cone(on))
            .collect()
    }

    fn sub_cone(&self, indices: &[usize]) -> Cone {
        Cone::new(self.ambient, indices.iter().map(|&i| self.generators[i].clone()).collect())
            .expect("faces of a strongly convex cone are strongly convex")
    }

    /// All faces, including the cone itself and the origin, in canonical order.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if seen.contains(&c) {
                continue;
            }
            for f in c.facets() {
                if !seen.contains(&f) {
                    stack.push(f);
                }
            }
            seen.insert(c);
        }
        seen.insert(Cone::zero(self.ambient));
        seen.into_iter().collect()
    }

    /// Image under a linear map given by a matrix with `ambient` columns.
    pub fn image(&self, map: &Matrix) -> Result<Cone, FanError> {
        Cone::new(map.rows(), self.generators.iter().map(|g| map.mul_vec(g)).collect())
    }

    /// c ∩ c′. When a facet hyperplane H of one cone weakly separates the
    /// other, c ∩ c′ = (facet on H) ∩ (face on H) and the problem shrinks;
    /// otherwise it is solved from the combined inequality descriptions.
    pub fn intersection(&self, other: &Cone) -> Cone {
        if self.is_zero() || other.is_zero() {
            return Cone::zero(self.ambient);
        }
        if other.generators.iter().all(|g| self.contains(g)) {
            return other.clone();
        }
        if self.generators.iter().all(|g| other.contains(g)) {
            return self.clone();
        }
        for (a, b) in [(self, other), (other, self)] {
            for (f, on) in a.hrep.inequalities.iter().zip(&a.facet_sets) {
                let values: Vec<Int> = b.generators.iter().map(|g| matrix::dot(f, g)).collect();
                if values.iter().any(|&v| v > 0) {
                    continue;
                }
                let face: Vec<Vector> =
                    b.generators.iter().zip(&values).filter(|(_, &v)| v == 0).map(|(g, _)| g.clone()).collect();
                let face = Cone::new(a.ambient, face).expect("faces of pointed cones are pointed");
                return a.sub_cone(on).intersection(&face);
            }
        }
        self.intersection_by_inequalities(other)
    }

    fn intersection_by_inequalities(&self, other: &Cone) -> Cone {
        let mut equations = self.hrep.equations.clone();
        equations.extend(other.hrep.equations.iter().cloned());
        let mut inequalities = self.hrep.inequalities.clone();
        inequalities.extend(other.hrep.inequalities.iter().cloned());
        let rays = extreme_rays(self.ambient, &equations, &inequalities);
        Cone::new(self.ambient, rays).expect("intersection of pointed cones is pointed")
    }

    /// c ∩ (S ⊗ ℝ) for the span of the columns of `s`.
    pub fn intersect_subspace(&self, s: &Matrix) -> Cone {
        let mut equations = self.hrep.equations.clone();
        let cs = smith_normal_form(s);
        equations.extend((cs.rank..s.rows()).map(|i| cs.u.row(i)));
        let rays = extreme_rays(self.ambient, &equations, &self.hrep.inequalities);
        Cone::new(self.ambient, rays).expect("subcone of a pointed cone is pointed")
    }

    /// τ(v) = v for every generator.
    pub fn pointwise_fixed(&self, tau: &Matrix) -> bool {
        self.generators.iter().all(|g| tau.mul_vec(g) == *g)
    }
}

/// Keeps the left transform of a Smith normal form (span coordinates).
#[derive(Clone)]
struct Smith2 {
    u: Matrix,
}

/// A fan of cones in a lattice with involution, closed under faces and τ.
#[derive(Clone)]
pub struct EquivariantFan {
    lattice: InvolutiveLattice,
    /// Every cone of the fan, sorted by dimension then generators.
    cones: Vec<Cone>,
    index: BTreeMap<Vec<Vector>, usize>,
    /// Indices of the faces of each cone.
    faces: Vec<Vec<usize>>,
    maximal: Vec<usize>,
    tau_image: Vec<usize>,
}

impl PartialEq for EquivariantFan {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.cones == other.cones
    }
}

impl Eq for EquivariantFan {}

impl fmt::Debug for EquivariantFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EquivariantFan")
            .field("tau", self.lattice.tau())
            .field("maximal_cones", &self.maximal_cones())
            .finish()
    }
}

/// Outcome of [`validate_fan`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub violations: Vec<FanViolation>,
}

impl FanReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Closure {
    cones: Vec<Cone>,
    index: BTreeMap<Vec<Vector>, usize>,
    faces: Vec<Vec<usize>>,
}

fn closure(n: usize, cones: &[Cone]) -> Closure {
    // Keyed by generators; a facet is only built the first time it is met.
    let mut found: BTreeMap<Vec<Vector>, Cone> = BTreeMap::new();
    let mut facet_keys: BTreeMap<Vec<Vector>, Vec<Vec<Vector>>> = BTreeMap::new();
    let mut stack: Vec<Cone> = cones.to_vec();
    stack.push(Cone::zero(n));
    while let Some(c) = stack.pop() {
        if found.contains_key(&c.generators) {
            continue;
        }
        let keys: Vec<Vec<Vector>> =
            c.facet_sets.iter().map(|on| on.iter().map(|&i| c.generators[i].clone()).collect()).collect();
        for (key, on) in keys.iter().zip(&c.facet_sets) {
            if !found.contains_key(key) {
                stack.push(c.sub_cone(on));
            }
        }
        facet_keys.insert(c.generators.clone(), keys);
        found.insert(c.generators.clone(), c);
    }
    // Sorted by dimension, so facets come before the cones they bound.
    let mut cones: Vec<Cone> = found.into_values().collect();
    cones.sort();
    let index: BTreeMap<Vec<Vector>, usize> =
        cones.iter().enumerate().map(|(i, c)| (c.generators.clone(), i)).collect();
    let mut faces: Vec<Vec<usize>> = Vec::with_capacity(cones.len());
    for (i, c) in cones.iter().enumerate() {
        let mut set = BTreeSet::from([i]);
        for key in &facet_keys[&c.generators] {
            set.extend(faces[index[key]].iter().copied());
        }
        faces.push(set.into_iter().collect());
    }
    Closure { cones, index, faces }
}

fn maximal_indices(cl: &Closure) -> Vec<usize> {
    let mut is_max = vec![true; cl.cones.len()];
    for (i, fs) in cl.faces.iter().enumerate() {
        for &f in fs {
            if f != i {
                is_max[f] = false;
            }
        }
    }
    (0..cl.cones.len()).filter(|&i| is_max[i]).collect()
}

fn check_fan(lattice: &InvolutiveLattice, cl: &Closure, maximal: &[usize], all: bool) -> (Vec<FanViolation>, Vec<usize>) {
    let mut violations = Vec::new();
    let mut tau_image = Vec::with_capacity(cl.cones.len());
    for c in &cl.cones {
        // τ is unimodular: it maps extreme rays to primitive extreme rays.
        let mut image: Vec<Vector> = c.generators.iter().map(|g| lattice.apply(g)).collect();
        image.sort();
        match cl.index.get(&image) {
            Some(&j) => tau_image.push(j),
            None => {
                violations.push(FanViolation::NotTauStable { cone: c.generators.clone() });
                tau_image.push(usize::MAX);
                if !all {
                    return (violations, tau_image);
                }
            }
        }
    }
    for (a, &i) in maximal.iter().enumerate() {
        for &j in &maximal[a + 1..] {
            let (ci, cj) = (&cl.cones[i], &cl.cones[j]);
            let ok = meet_in_closure(cl, i, j).is_some_and(|k| cl.faces[i].contains(&k) && cl.faces[j].contains(&k));
            if !ok {
                let meet = ci.intersection(cj);
                violations.push(FanViolation::IntersectionNotFace {
                    first: ci.generators.clone(),
                    second: cj.generators.clone(),
                    intersection: meet.generators.clone(),
                });
                if !all {
                    return (violations, tau_image);
                }
            }
        }
    }
    (violations, tau_image)
}

/// Index of c_i ∩ c_j when it is a cone of the closure. Same reduction as
/// `Cone::intersection`, but faces are looked up instead of rebuilt.
fn meet_in_closure(cl: &Closure, i: usize, j: usize) -> Option<usize> {
    let (a, b) = (&cl.cones[i], &cl.cones[j]);
    if a.is_zero() || b.is_zero() {
        return cl.index.get(&Vec::new()).copied();
    }
    if b.generators.iter().all(|g| a.contains(g)) {
        return Some(j);
    }
    if a.generators.iter().all(|g| b.contains(g)) {
        return Some(i);
    }
    for (ia, ib) in [(i, j), (j, i)] {
        let (a, b) = (&cl.cones[ia], &cl.cones[ib]);
        for (f, on) in a.hrep.inequalities.iter().zip(&a.facet_sets) {
            let values: Vec<Int> = b.generators.iter().map(|g| matrix::dot(f, g)).collect();
            if values.iter().any(|&v| v > 0) {
                continue;
            }
            let face: Vec<Vector> =
                b.generators.iter().zip(&values).filter(|(_, &v)| v == 0).map(|(g, _)| g.clone()).collect();
            let facet: Vec<Vector> = on.iter().map(|&k| a.generators[k].clone()).collect();
            let (Some(&fa), Some(&fb)) = (cl.index.get(&facet), cl.index.get(&face)) else {
                break;
            };
            return meet_in_closure(cl, fa, fb);
        }
    }
    cl.index.get(&a.intersection_by_inequalities(b).generators).copied()
}

/// Checks strong convexity, the face-intersection property and τ-stability.
/// Every violation found is listed; nothing is raised.
pub fn validate_fan(lattice: &InvolutiveLattice, cones: &[Vec<Vector>]) -> FanReport {
    let n = lattice.rank();
    let mut violations = Vec::new();
    let mut built = Vec::new();
    for gens in cones {
        if gens.iter().any(|g| g.len() != n) {
            violations.push(FanViolation::DimensionMismatch { cone: gens.clone() });
            continue;
        }
        match Cone::new(n, gens.clone()) {
            Ok(c) => built.push(c),
            Err(_) => violations.push(FanViolation::NotStronglyConvex { cone: gens.clone() }),
        }
    }
    let cl = closure(n, &built);
    let maximal = maximal_indices(&cl);
    violations.extend(check_fan(lattice, &cl, &maximal, true).0);
    FanReport { violations }
}

impl EquivariantFan {
    /// The fan generated by `cones` and their faces. Fails with the first
    /// violated fan axiom.
    pub fn new(lattice: InvolutiveLattice, cones: Vec<Cone>) -> Result<Self, FanError> {
        Self::build(lattice, cones, true)
    }

    /// For outputs that are fans by construction: skips the pairwise intersection test.
    fn trusted(lattice: InvolutiveLattice, cones: Vec<Cone>) -> Self {
        let fan = Self::build(lattice, cones, false).expect("construction preserves the fan axioms");
        debug_assert!(fan.tau_image.iter().all(|&j| j != usize::MAX));
        fan
    }

    fn build(lattice: InvolutiveLattice, cones: Vec<Cone>, check_intersections: bool) -> Result<Self, FanError> {
        let n = lattice.rank();
        if let Some(c) = cones.iter().find(|c| c.ambient != n) {
            return Err(FanError::NotAFan(FanViolation::DimensionMismatch { cone: c.generators.clone() }));
        }
        let cl = closure(n, &cones);
        let maximal = maximal_indices(&cl);
        let pairs: &[usize] = if check_intersections { &maximal } else { &[] };
        let (violations, tau_image) = check_fan(&lattice, &cl, pairs, false);
        if let Some(v) = violations.into_iter().next() {
            return Err(FanError::NotAFan(v));
        }
        Ok(EquivariantFan { lattice, cones: cl.cones, index: cl.index, faces: cl.faces, maximal, tau_image })
    }

    /// Builds the cones from generator lists first.
    pub fn from_generators(lattice: InvolutiveLattice, cones: Vec<Vec<Vector>>) -> Result<Self, FanError> {
        let n = lattice.rank();
        let cones = cones.into_iter().map(|g| Cone::new(n, g)).collect::<Result<Vec<_>, _>>()?;
        Self::new(lattice, cones)
    }

    /// The fan {0} alone.
    pub fn trivial(lattice: InvolutiveLattice) -> Self {
        Self::new(lattice, Vec::new()).expect("the origin is a fan")
    }

    pub fn lattice(&self) -> &InvolutiveLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// All cones, sorted by dimension and then lexicographically.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.maximal.iter().map(|&i| &self.cones[i]).collect()
    }

    /// Rays in lexicographic order of their primitive generators.
    pub fn rays(&self) -> Vec<&Cone> {
        self.cones.iter().filter(|c| c.dim == 1).collect()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.index.contains_key(&c.generators)
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.index.get(&c.generators).copied()
    }

    /// Indices (into [`EquivariantFan::cones`]) of the faces of cone `i`.
    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn tau_image(&self, i: usize) -> usize {
        self.tau_image[i]
    }

    pub fn is_invariant(&self, i: usize) -> bool {
        self.tau_image[i] == i
    }

    /// Cones with τ(c) = c, in canonical order.
    pub fn invariant_cones(&self) -> Vec<&Cone> {
        (0..self.cones.len()).filter(|&i| self.is_invariant(i)).map(|i| &self.cones[i]).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| c.is_smooth())
    }

    /// Pure of full dimension and every wall lies on exactly two maximal cones.
    pub fn is_complete(&self) -> bool {
        let n = self.rank();
        if self.maximal.iter().any(|&i| self.cones[i].dim != n) {
            return false;
        }
        let mut walls: BTreeMap<&[Vector], usize> = BTreeMap::new();
        for &i in &self.maximal {
            for &f in &self.faces[i] {
                let w = &self.cones[f];
                if w.dim + 1 == n {
                    *walls.entry(&w.generators).or_default() += 1;
                }
            }
        }
        walls.values().all(|&count| count == 2)
    }

    pub fn support_contains(&self, v: &[Int]) -> bool {
        self.maximal.iter().any(|&i| self.cones[i].contains(v))
    }

    /// The cone whose relative interior contains `v`.
    pub fn minimal_cone_containing(&self, v: &[Int]) -> Option<&Cone> {
        self.cones.iter().find(|c| c.relative_interior_contains(v))
    }

    /// Stellar subdivision at a primitive vector of the support.
    pub fn stellar_subdivision(&self, v: &[Int]) -> Result<EquivariantFan, FanError> {
        let cones = stellar_cones(self.rank(), &self.cones, v)?;
        EquivariantFan::new(self.lattice.clone(), cones)
    }

    /// Subdivides at v and then at τv. The result is τ-stable when no cone contains both v and τv;
    /// otherwise the two subdivisions do not commute and the τ-stability violation is returned.
    pub fn stellar_subdivision_orbit(&self, v: &[Int]) -> Result<EquivariantFan, FanError> {
        let v = primitive(v);
        let tv = self.lattice.apply(&v);
        let mut cones = stellar_cones(self.rank(), &self.cones, &v)?;
        if tv != v {
            let mut all: BTreeSet<Cone> = BTreeSet::new();
            for c in &cones {
                all.extend(c.faces());
            }
            let all: Vec<Cone> = all.into_iter().collect();
            cones = stellar_cones(self.rank(), &all, &tv)?;
        }
        EquivariantFan::new(self.lattice.clone(), cones)
    }

    /// Cones spanned by the barycenters along each flag of nonzero cones.
    pub fn barycentric_subdivision(&self) -> EquivariantFan {
        let mut out: Vec<Cone> = Vec::new();
        let mut flag: Vec<Vector> = Vec::new();
        for &m in &self.maximal {
            self.flags_below(m, &mut flag, &mut out);
        }
        EquivariantFan::trusted(self.lattice.clone(), out)
    }

    fn flags_below(&self, i: usize, flag: &mut Vec<Vector>, out: &mut Vec<Cone>) {
        let c = &self.cones[i];
        if c.is_zero() {
            out.push(Cone::new(self.rank(), flag.clone()).expect("flag cones are pointed"));
            return;
        }
        flag.push(c.barycenter());
        let facets: Vec<usize> =
            self.faces[i].iter().copied().filter(|&f| self.cones[f].dim + 1 == c.dim).collect();
        for f in facets {
            self.flags_below(f, flag, out);
        }
        flag.pop();
    }

    /// The fan {c ∩ S⊗ℝ} on a τ-stable saturated sublattice S (columns of `s`).
    pub fn restrict(&self, s: &Matrix) -> Result<EquivariantFan, FanError> {
        let n = self.rank();
        if s.rows() != n {
            return Err(FanError::Lattice(LatticeError::DimensionMismatch { expected: n, got: s.rows() }));
        }
        if !matrix::is_saturated_basis(s) {
            return Err(FanError::Lattice(LatticeError::NotPrimitive));
        }
        if !self.lattice.is_stable(s) {
            return Err(FanError::NotStable);
        }
        let cs = CoordinateSystem::new(s.clone());
        let tau_cols: Vec<Vector> = (0..s.cols())
            .map(|j| cs.coordinates(&self.lattice.apply(&s.column(j))).expect("stable sublattice"))
            .collect();
        let sub = InvolutiveLattice::new(Matrix::from_columns(s.cols(), &tau_cols))?;
        let mut cones = Vec::new();
        for c in &self.cones {
            let meet = c.intersect_subspace(s);
            let gens: Vec<Vector> =
                meet.generators.iter().map(|g| cs.coordinates(g).expect("ray lies in S")).collect();
            cones.push(Cone::new(s.cols(), gens)?);
        }
        EquivariantFan::new(sub, cones)
    }

    /// Images of all cones under an equivariant lattice surjection.
    pub fn image(&self, projection: &Matrix) -> Result<EquivariantFan, FanError> {
        let n = self.rank();
        if projection.cols() != n {
            return Err(FanError::Lattice(LatticeError::DimensionMismatch { expected: n, got: projection.cols() }));
        }
        let m = projection.rows();
        let s = smith_normal_form(projection);
        if s.rank != m || s.factors().iter().any(|&d| d != 1) {
            return Err(FanError::NotSurjective);
        }
        // Section σ with π σ = I: σ = V [I; 0] U.
        let section = s.v.column_range(0, m).mul(&s.u);
        let tau = projection.mul(self.lattice.tau()).mul(&section);
        if tau.mul(projection) != projection.mul(self.lattice.tau()) {
            return Err(FanError::NotEquivariant);
        }
        let lattice = InvolutiveLattice::new(tau)?;
        let cones = self.cones.iter().map(|c| c.image(projection)).collect::<Result<Vec<_>, _>>()?;
        EquivariantFan::new(lattice, cones)
    }

    /// Cones re-expressed in a finer or coarser lattice with the same real span.
    pub(crate) fn rebase(&self, lattice: InvolutiveLattice, coords: &CoordinateSystem) -> Result<EquivariantFan, FanError> {
        let n = lattice.rank();
        let cones = self
            .cones
            .iter()
            .map(|c| {
                let gens = c.generators.iter().map(|g| coords.ray_coordinates(g).expect("same real span")).collect();
                Cone::new(n, gens)
            })
            .collect::<Result<Vec<_>, _>>()?;
        EquivariantFan::new(lattice, cones)
    }
}

/// The two-clause stellar subdivision applied to a face-closed list of cones.
fn stellar_cones(n: usize, cones: &[Cone], v: &[Int]) -> Result<Vec<Cone>, FanError> {
    if v.len() != n {
        return Err(FanError::DimensionMismatch { generator: v.to_vec(), expected: n, got: v.len() });
    }
    let v = primitive(v);
    if is_zero(&v) || !cones.iter().any(|c| c.contains(&v)) {
        return Err(FanError::NotInSupport(v));
    }
    let mut out = Vec::new();
    for c in cones {
        if !c.contains(&v) {
            out.push(c.clone());
            continue;
        }
        for d in c.faces() {
            if !d.contains(&v) {
                let mut gens = d.generators.clone();
                gens.push(v.clone());
                out.push(Cone::new(n, gens)?);
            }
        }
    }
    Ok(out)
}

/// Convenience wrappers with the operation names used throughout the crate.
pub fn cone_faces(c: &Cone) -> Vec<Cone> {
    c.faces()
}

pub fn is_smooth(c: &Cone) -> bool {
    c.is_smooth()
}

pub fn is_simplicial(c: &Cone) -> bool {
    c.is_simplicial()
}

pub fn invariant_cones(f: &EquivariantFan) -> Vec<&Cone> {
    f.invariant_cones()
}

pub fn pointwise_fixed(c: &Cone, tau: &Matrix) -> bool {
    c.pointwise_fixed(tau)
}

pub fn is_complete(f: &EquivariantFan) -> bool {
    f.is_complete()
}

pub fn stellar_subdivision(f: &EquivariantFan, v: &[Int]) -> Result<EquivariantFan, FanError> {
    f.stellar_subdivision(v)
}

pub fn barycentric_subdivision(f: &EquivariantFan) -> EquivariantFan {
    f.barycentric_subdivision()
}

pub fn restrict_fan(f: &EquivariantFan, s: &Matrix) -> Result<EquivariantFan, FanError> {
    f.restrict(s)
}

pub fn image_fan(f: &EquivariantFan, projection: &Matrix) -> Result<EquivariantFan, FanError> {
    f.image(projection)
}
