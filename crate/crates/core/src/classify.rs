//! Topological types of compact real loci in dimensions one to three.

use crate::fans::Cone;
use crate::invariants::{self, require, InvariantError, Predicate};
use crate::matrix::{self, Int, Matrix, Vector};
use crate::poly::CountPolynomial;
use crate::variety::RealToricVariety;
use crate::zlattice::TypeSignature;
use num_integer::Integer;
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum TopologicalType {
    Empty,
    Circle,
    /// (S¹)^k.
    Torus(u32),
    /// Connected sum of h projective planes.
    NonOrientableSurface(u32),
    Sphere(u32),
    ProjectivePlane,
    KleinBottle,
    ProductWithCircle(Box<TopologicalType>),
    /// L(p; q) with p even and q normalized.
    LensSpace { p: Int, q: Int },
    /// h·(S²×S¹) # k·(ℝP²×S¹) # l·ℝP³.
    ConnectedSum3 { h: u32, k: u32, l: u32 },
    KleinFiberProduct,
    MappingTorusOverCircle { fibre: Box<TopologicalType>, descriptor: String },
    Unsupported(String),
}

impl TopologicalType {
    pub fn product_with_circle(inner: TopologicalType) -> TopologicalType {
        TopologicalType::ProductWithCircle(Box::new(inner))
    }

    /// A single representative per homeomorphism class among the names
    /// this crate produces.
    pub fn canonical(&self) -> TopologicalType {
        use TopologicalType::*;
        match self {
            Torus(1) => Circle,
            Sphere(1) => Circle,
            NonOrientableSurface(1) => ProjectivePlane,
            NonOrientableSurface(2) => KleinBottle,
            ConnectedSum3 { h: 1, k: 0, l: 0 } => Self::product_with_circle(Sphere(2)),
            ConnectedSum3 { h: 0, k: 1, l: 0 } => Self::product_with_circle(ProjectivePlane),
            ConnectedSum3 { h: 0, k: 0, l: 1 } => LensSpace { p: 2, q: 1 },
            ProductWithCircle(inner) => match inner.canonical() {
                Circle => Torus(2),
                Torus(k) => Torus(k + 1),
                other => Self::product_with_circle(other),
            },
            MappingTorusOverCircle { fibre, descriptor } => {
                MappingTorusOverCircle { fibre: Box::new(fibre.canonical()), descriptor: descriptor.clone() }
            }
            other => other.clone(),
        }
    }

    /// Euler characteristic, `None` for unsupported results.
    pub fn euler_characteristic(&self) -> Option<Int> {
        use TopologicalType::*;
        Some(match self {
            Empty | Circle | Torus(_) | KleinBottle => 0,
            NonOrientableSurface(h) => 2 - Int::from(*h),
            Sphere(d) => 1 + if d % 2 == 0 { 1 } else { -1 },
            ProjectivePlane => 1,
            ProductWithCircle(_) | LensSpace { .. } | ConnectedSum3 { .. } | KleinFiberProduct => 0,
            MappingTorusOverCircle { .. } => 0,
            Unsupported(_) => return None,
        })
    }

    pub fn is_unsupported(&self) -> bool {
        matches!(self, TopologicalType::Unsupported(_))
    }
}

impl fmt::Display for TopologicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TopologicalType::*;
        match self {
            Empty => write!(f, "empty"),
            Circle => write!(f, "circle"),
            Torus(k) => write!(f, "torus T^{k}"),
            NonOrientableSurface(h) => write!(f, "non-orientable surface #{h} RP^2"),
            Sphere(d) => write!(f, "sphere S^{d}"),
            ProjectivePlane => write!(f, "real projective plane"),
            KleinBottle => write!(f, "Klein bottle"),
            ProductWithCircle(inner) => write!(f, "({inner}) x S^1"),
            LensSpace { p, q } => write!(f, "lens space L({p};{q})"),
            ConnectedSum3 { h, k, l } => write!(f, "{h}(S^2 x S^1) # {k}(RP^2 x S^1) # {l}RP^3"),
            KleinFiberProduct => write!(f, "fibre product of two Klein bottles"),
            MappingTorusOverCircle { fibre, descriptor } => {
                write!(f, "fibration over S^1 with fibre {fibre}, e* = {descriptor}")
            }
            Unsupported(reason) => write!(f, "unsupported: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(Predicate),
    #[error("expected type {expected}, got {got}")]
    WrongType { expected: TypeSignature, got: TypeSignature },
}

impl From<InvariantError> for ClassifyError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::NotSmooth => ClassifyError::PreconditionFailed(Predicate::SmoothTopologicalCore),
            InvariantError::PreconditionFailed(p) => ClassifyError::PreconditionFailed(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LensError {
    #[error("{p} is not a positive even integer")]
    InvalidModulus { p: Int },
    #[error("{q} is not coprime to {p}")]
    NotCoprime { p: Int, q: Int },
}

/// Minimal representative of {±q^{±1} mod p}.
pub fn lens_normalize(p: Int, q: Int) -> Result<(Int, Int), LensError> {
    if p <= 0 || p % 2 != 0 {
        return Err(LensError::InvalidModulus { p });
    }
    let q = q.rem_euclid(p);
    if q.gcd(&p) != 1 {
        return Err(LensError::NotCoprime { p, q });
    }
    let inverse = (1..=p).find(|x| (x * q).rem_euclid(p) == 1).expect("units are invertible");
    let best = [q, inverse].iter().map(|&c| c.min(p - c)).min().expect("nonempty");
    Ok((p, best))
}

fn poly(s: &str) -> CountPolynomial {
    s.parse().expect("valid literal")
}

/// Homeomorphism type of the real locus.
pub fn classify(x: &RealToricVariety) -> Result<TopologicalType, ClassifyError> {
    require(x, &[Predicate::CompactRealLocus, Predicate::SmoothTopologicalCore])?;
    if !x.has_real_point() {
        return Ok(TopologicalType::Empty);
    }
    let sig = x.signature();
    let a = invariants::a_polynomial(x)?;
    use TopologicalType::*;
    let sig_tuple = (sig.p, sig.q, sig.r);
    Ok(match x.dim() {
        1 => Circle,
        2 => match sig_tuple {
            (2, 0, 0) => split_surface(x)?,
            (1, 1, 0) | (0, 2, 0) => Torus(2),
            (1, 1, 1) => {
                if a == poly("1 + 2y") {
                    Sphere(2)
                } else if a == poly("1 + x + y") {
                    ProjectivePlane
                } else if a == poly("1 + 2x") {
                    KleinBottle
                } else {
                    Unsupported(format!("surface of type (1;1)_1 with a = {a}"))
                }
            }
            _ => unreachable!("rank-2 signatures"),
        },
        3 => match sig_tuple {
            (1, 2, 1) => {
                if a == poly("1 + 2x") {
                    TopologicalType::product_with_circle(NonOrientableSurface(2))
                } else if a == poly("1 + x + y") {
                    TopologicalType::product_with_circle(ProjectivePlane)
                } else if a == poly("1 + 2y") {
                    lens_space(x)
                } else {
                    Unsupported(format!("threefold of type (1;2)_1 with a = {a}"))
                }
            }
            (2, 1, 1) => threefold_211(x)?,
            (2, 1, 0) => {
                let fibre = split_surface(&x.canonical_fibre())?;
                TopologicalType::product_with_circle(fibre).canonical()
            }
            (1, 2, 0) | (0, 3, 0) => Torus(3),
            (3, 0, 0) => Unsupported("split threefolds are not classified".into()),
            _ => unreachable!("rank-3 signatures"),
        },
        d => Unsupported(format!("dimension {d}")),
    })
}

/// Split surface: torus if orientable, else a connected sum of d − 2 projective planes.
fn split_surface(x: &RealToricVariety) -> Result<TopologicalType, ClassifyError> {
    if invariants::orientable(x)? {
        Ok(TopologicalType::Torus(2))
    } else {
        Ok(TopologicalType::NonOrientableSurface(x.fan().rays().len() as u32 - 2))
    }
}

/// The two invariant 2-cones with exchanged rays of a (1;2)₁ threefold glue to L(2p; q).
fn lens_space(x: &RealToricVariety) -> TopologicalType {
    let l = x.lattice();
    let cones: Vec<&Cone> = x.fan().invariant_cones().into_iter().filter(|c| c.dim() == 2).collect();
    let [c1, c2] = cones.as_slice() else {
        return TopologicalType::Unsupported("expected two exchanged-pair cones".into());
    };
    let a = &c1.generators()[0];
    let b = &c2.generators()[0];
    let (ta, tb) = (l.apply(a), l.apply(b));
    let p = Matrix::from_columns(3, &[a.clone(), ta.clone(), b.clone()]).det().abs();
    if p == 0 {
        return TopologicalType::product_with_circle(TopologicalType::Sphere(2));
    }
    let da = matrix::vec_sub(a, &ta);
    let db = matrix::vec_sub(b, &tb);
    let modulus = 2 * p;
    let Some(q) = (0..modulus).find(|q| {
        da.iter().zip(&db).all(|(x, y)| (y - q * x).rem_euclid(modulus) == 0)
    }) else {
        return TopologicalType::Unsupported("exchanged-pair cones are not in lens position".into());
    };
    match lens_normalize(modulus, q) {
        Ok((p, q)) => TopologicalType::LensSpace { p, q },
        Err(e) => TopologicalType::Unsupported(e.to_string()),
    }
}

/// Orbits of the real circle action on a (2;1)₁ threefold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircleCensus {
    /// Special exceptional surfaces.
    pub t: u32,
    /// Fixed circles.
    pub h: u32,
    /// Exceptional orbits.
    pub u: u32,
}

fn census_of(e: &CountPolynomial) -> CircleCensus {
    let t = e.coefficient([1, 1, 0, 0]);
    let h = e.coefficient([1, 0, 0, 0]);
    let u = e.coefficient([0, 0, 1, 0]) - t - h;
    assert!(u >= 0, "exceptional orbit count is non-negative");
    CircleCensus { t: t as u32, h: h as u32, u: u as u32 }
}

pub fn circle_action_census(x: &RealToricVariety) -> Result<CircleCensus, ClassifyError> {
    require(x, &[Predicate::CompactRealLocus, Predicate::SmoothTopologicalCore, Predicate::HasRealPoint])?;
    let sig = x.signature();
    let expected = TypeSignature::new(2, 1, 1);
    if sig != expected {
        return Err(ClassifyError::WrongType { expected, got: sig });
    }
    Ok(census_of(&invariants::e_star_polynomial(x)))
}

fn threefold_211(x: &RealToricVariety) -> Result<TopologicalType, ClassifyError> {
    use TopologicalType::*;
    let e = invariants::e_star_polynomial(x);
    let CircleCensus { t, h, u } = census_of(&e);
    Ok(if h > 0 {
        ConnectedSum3 { h: h - 1, k: t, l: u }
    } else if t == 0 {
        if e == poly("xz + 4z + 4y") {
            KleinFiberProduct
        } else {
            Unsupported(format!("type (2;1)_1 without special orbits and e* = {e}"))
        }
    } else if e == poly("xz + 2z + xy + 3y") {
        TopologicalType::product_with_circle(ProjectivePlane)
    } else if e == poly("xz + 2z + 2xy + 4y") {
        TopologicalType::product_with_circle(KleinBottle)
    } else if e == poly("xz + z + xy + 2y") {
        Unsupported(format!("e* = {e} does not occur"))
    } else {
        let fibre = split_surface(&x.canonical_fibre())?;
        MappingTorusOverCircle { fibre: Box::new(fibre), descriptor: e.to_string() }
    })
}

/// Coefficients e^r_{p,q} of an e*-polynomial of type (2;1)₁, named by orbit type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EStarCoefficients {
    /// xz
    pub e1_21: Int,
    /// xy
    pub e0_11: Int,
    /// x
    pub e0_10: Int,
    /// z
    pub e1_11: Int,
    /// y
    pub e0_01: Int,
    /// 1
    pub e0_00: Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizationConstraint {
    /// e¹₂,₁ = 1
    OpenOrbit,
    /// e⁰₀,₀ = 2e⁰₁,₀
    FixedPoints,
    /// e¹₁,₁ + e⁰₁,₁ + e⁰₁,₀ = e⁰₀,₁ + e⁰₀,₀
    RayCount,
    /// e¹₁,₁ ≥ e⁰₁,₁ + e⁰₁,₀
    ExceptionalOrbits,
    /// e⁰₀,₁ + e⁰₀,₀ ≥ 3
    Completeness,
    /// e⁰₁,₁ + e⁰₁,₀ = 0 ⇒ e¹₁,₁ = 4
    PillowCase,
    /// Only the six monomials above may appear, with non-negative coefficients.
    Shape,
}

impl fmt::Display for RealizationConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealizationConstraint::OpenOrbit => "e1_21 = 1",
            RealizationConstraint::FixedPoints => "e0_00 = 2 e0_10",
            RealizationConstraint::RayCount => "e1_11 + e0_11 + e0_10 = e0_01 + e0_00",
            RealizationConstraint::ExceptionalOrbits => "e1_11 >= e0_11 + e0_10",
            RealizationConstraint::Completeness => "e0_01 + e0_00 >= 3",
            RealizationConstraint::PillowCase => "e0_11 + e0_10 = 0 implies e1_11 = 4",
            RealizationConstraint::Shape => "only xz, xy, x, z, y, 1 with non-negative coefficients",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("constraint violated: {0}")]
    ConstraintViolated(RealizationConstraint),
}

const MONOMIALS: [[u32; 4]; 6] = [[1, 0, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 0]];

impl EStarCoefficients {
    pub fn to_polynomial(&self) -> CountPolynomial {
        let mut p = CountPolynomial::zero();
        for (m, c) in MONOMIALS.iter().zip(self.as_array()) {
            p.add_term(*m, c);
        }
        p
    }

    pub fn from_polynomial(p: &CountPolynomial) -> Result<Self, RealizeError> {
        let known = p.terms().all(|(e, &c)| MONOMIALS.contains(e) && c >= 0);
        if !known {
            return Err(RealizeError::ConstraintViolated(RealizationConstraint::Shape));
        }
        let c: Vec<Int> = MONOMIALS.iter().map(|m| p.coefficient(*m)).collect();
        Ok(Self::from_array([c[0], c[1], c[2], c[3], c[4], c[5]]))
    }

    pub fn as_array(&self) -> [Int; 6] {
        [self.e1_21, self.e0_11, self.e0_10, self.e1_11, self.e0_01, self.e0_00]
    }

    pub fn from_array(a: [Int; 6]) -> Self {
        EStarCoefficients { e1_21: a[0], e0_11: a[1], e0_10: a[2], e1_11: a[3], e0_01: a[4], e0_00: a[5] }
    }

    /// The first violated realizability constraint, in a fixed order.
    pub fn violated_constraint(&self) -> Option<RealizationConstraint> {
        use RealizationConstraint::*;
        let s = self.e0_11 + self.e0_10;
        if self.as_array().iter().any(|&c| c < 0) {
            Some(Shape)
        } else if self.e1_21 != 1 {
            Some(OpenOrbit)
        } else if self.e0_00 != 2 * self.e0_10 {
            Some(FixedPoints)
        } else if self.e1_11 + s != self.e0_01 + self.e0_00 {
            Some(RayCount)
        } else if self.e1_11 < s {
            Some(ExceptionalOrbits)
        } else if self.e0_01 + self.e0_00 < 3 {
            Some(Completeness)
        } else if s == 0 && self.e1_11 != 4 {
            Some(PillowCase)
        } else {
            None
        }
    }
}

/// Total order on primitive plane vectors by angle in [0, 2π).
fn angle_cmp(a: &[Int; 2], b: &[Int; 2]) -> Ordering {
    let half = |v: &[Int; 2]| if v[1] > 0 || (v[1] == 0 && v[0] > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| (b[0] * a[1]).cmp(&(a[0] * b[1])))
}

/// A smooth (2;1)₁ threefold with the given e*-polynomial.
pub fn realize_e_star(e: &EStarCoefficients) -> Result<RealToricVariety, RealizeError> {
    if let Some(c) = e.violated_constraint() {
        return Err(RealizeError::ConstraintViolated(c));
    }
    let s = e.e0_11 + e.e0_10;
    // Rays of the canonical fibre in coordinates (a, b) ↦ (a, a, b).
    let (rays, vanishing): (Vec<[Int; 2]>, Vec<[Int; 2]>) = if s == 0 {
        (vec![[1, 1], [0, 1], [-1, 1], [0, -1]], vec![])
    } else {
        let mut rays = vec![[0, 1], [1, 0], [-1, -1]];
        rays.extend((1..=e.e1_11 - 2).map(|i| [i, 1]));
        let mut vanishing = vec![[1, 0]];
        if s >= 2 {
            vanishing.push([-1, 0]);
            vanishing.extend((1..=s - 2).map(|i| [2 * i - 1, 2]));
        }
        rays.extend(vanishing[1..].iter().copied());
        (rays, vanishing)
    };
    let mut rays = rays;
    rays.sort_by(angle_cmp);
    let replaced: Vec<[Int; 2]> = vanishing.into_iter().take(e.e0_10 as usize).collect();
    let lift = |w: &[Int; 2]| -> Vec<Vector> {
        if !replaced.contains(w) {
            return vec![vec![w[0], w[0], w[1]]];
        }
        match *w {
            [1, 0] => vec![vec![1, 0, 0], vec![0, 1, 0]],
            [-1, 0] => vec![vec![-1, 0, 0], vec![0, -1, 0]],
            [a, 2] => {
                let i = (a + 1) / 2;
                vec![vec![i, i - 1, 1], vec![i - 1, i, 1]]
            }
            _ => unreachable!("only vanishing rays are replaced"),
        }
    };
    let cones: Vec<Vec<Vector>> = (0..rays.len())
        .map(|i| {
            let mut c = lift(&rays[i]);
            c.extend(lift(&rays[(i + 1) % rays.len()]));
            c
        })
        .collect();
    let tau: Vec<Vector> = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]];
    Ok(RealToricVariety::from_parts(&tau, cones, None).expect("the construction yields a fan"))
}
