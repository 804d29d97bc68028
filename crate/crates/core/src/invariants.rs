//! Orbit-counting polynomials and cohomological invariants of the real locus.

use crate::matrix::{F2Matrix, Int};
use crate::poly::CountPolynomial;
use crate::variety::RealToricVariety;
use crate::zlattice::{fixed_sublattice, winding_group, TypeSignature};
use crate::matrix::CoordinateSystem;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// A predicate some invariant needs but the input fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    CompactRealLocus,
    SmoothTopologicalCore,
    HasRealPoint,
    Untwisted,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::CompactRealLocus => "compact_real_locus",
            Predicate::SmoothTopologicalCore => "smooth_topological_core",
            Predicate::HasRealPoint => "has_real_point",
            Predicate::Untwisted => "untwisted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("the topological core is not smooth")]
    NotSmooth,
    #[error("precondition failed: {0}")]
    PreconditionFailed(Predicate),
}

/// Fails with the first predicate of `required` that `x` does not satisfy.
pub(crate) fn require(x: &RealToricVariety, required: &[Predicate]) -> Result<(), InvariantError> {
    for &p in required {
        let ok = match p {
            Predicate::CompactRealLocus => x.compact_real_locus(),
            Predicate::SmoothTopologicalCore => x.smooth_topological_core(),
            Predicate::HasRealPoint => x.has_real_point(),
            Predicate::Untwisted => x.twist().is_zero(),
        };
        if !ok {
            return Err(InvariantError::PreconditionFailed(p));
        }
    }
    Ok(())
}

const TOPOLOGICAL: [Predicate; 3] =
    [Predicate::CompactRealLocus, Predicate::SmoothTopologicalCore, Predicate::HasRealPoint];

/// Real orbits by full type (p;q)_r.
pub fn orbit_census(x: &RealToricVariety) -> Vec<TypeSignature> {
    x.real_orbit_cones().into_iter().map(|c| x.orbit_type(c)).collect()
}

/// Σ over real orbits of type (p;q)_r of x^p y^q.
pub fn e_polynomial(x: &RealToricVariety) -> CountPolynomial {
    let mut e = CountPolynomial::zero();
    for t in orbit_census(x) {
        e.add_term([t.p as u32, t.q as u32, 0, 0], 1);
    }
    e
}

/// Σ over real orbits of type (p;q)_r of x^{p−r} y^{q−r} z^r.
pub fn e_star_polynomial(x: &RealToricVariety) -> CountPolynomial {
    let mut e = CountPolynomial::zero();
    for t in orbit_census(x) {
        e.add_term([(t.p - t.r) as u32, (t.q - t.r) as u32, t.r as u32, 0], 1);
    }
    e
}

/// Σ over invariant cones of x^k y^l, with k invariant rays and l exchanged pairs.
pub fn a_polynomial(x: &RealToricVariety) -> Result<CountPolynomial, InvariantError> {
    if !x.smooth_topological_core() {
        return Err(InvariantError::NotSmooth);
    }
    let l = x.lattice();
    let mut a = CountPolynomial::zero();
    for c in x.fan().invariant_cones() {
        let k = c.generators().iter().filter(|g| l.is_invariant(g)).count();
        let pairs = (c.generators().len() - k) / 2;
        a.add_term([k as u32, pairs as u32, 0, 0], 1);
    }
    Ok(a)
}

/// x^p (y/x)^q e(1/x; x/y) for an e-polynomial of a lattice of type `sig`.
/// `None` if a term would get a negative exponent.
pub fn a_from_e(e: &CountPolynomial, sig: TypeSignature) -> Option<CountPolynomial> {
    let (p, q) = (sig.p as i64, sig.q as i64);
    let mut a = CountPolynomial::zero();
    for (exps, &c) in e.terms() {
        let (i, j) = (exps[0] as i64, exps[1] as i64);
        let (ex, ey) = (p - q - i + j, q - j);
        if ex < 0 || ey < 0 || exps[2] != 0 || exps[3] != 0 {
            return None;
        }
        a.add_term([ex as u32, ey as u32, 0, 0], c);
    }
    Some(a)
}

/// β = e(t−1; t+1).
pub fn virtual_poincare(x: &RealToricVariety) -> CountPolynomial {
    beta_of(&e_polynomial(x))
}

pub fn beta_of(e: &CountPolynomial) -> CountPolynomial {
    let one = CountPolynomial::constant(1);
    let t = CountPolynomial::t();
    e.substitute(&[&t - &one, &t + &one, CountPolynomial::z(), t.clone()])
}

/// Whether some j ∈ Hom(ker(1−τ), F₂) is 1 on every invariant ray and vanishes on Γ.
pub fn orientable(x: &RealToricVariety) -> Result<bool, InvariantError> {
    require(x, &TOPOLOGICAL)?;
    let l = x.lattice();
    let plus = fixed_sublattice(l, 1);
    let p = plus.cols();
    let coords = CoordinateSystem::new(plus);
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut rhs: Vec<bool> = Vec::new();
    for ray in x.fan().rays() {
        let v = &ray.generators()[0];
        if l.is_invariant(v) {
            let c = coords.coordinates(v).expect("invariant vectors lie in ker(1-tau)");
            rows.push(c.iter().map(|a| a.rem_euclid(2) as u8).collect());
            rhs.push(true);
        }
    }
    let gamma = winding_group(l);
    for row in gamma.d1.to_rows() {
        rows.push(row);
        rhs.push(false);
    }
    Ok(F2Matrix::from_rows(&rows, p).solve(&rhs).is_some())
}

/// dim H¹_tor and its codimension in H¹ of the real locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorsionDimension {
    pub dim: Int,
    pub codim: Int,
}

pub fn h1_tor_dimension(x: &RealToricVariety) -> Result<TorsionDimension, InvariantError> {
    require(x, &TOPOLOGICAL)?;
    let a = a_polynomial(x)?;
    let sig = x.signature();
    Ok(TorsionDimension {
        dim: a.coeff_xy(1, 0) - sig.p as Int + sig.r as Int,
        codim: (sig.q - sig.r) as Int,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DehnSommervilleReport {
    /// e(−1; 1), expected 1.
    pub euler_value: Int,
    /// (p−r)·e_{0,q−r} and 2·e_{1,q−r}, when the core is smooth.
    pub fixed_point_relation: Option<(Int, Int)>,
    pub passed: bool,
}

pub fn dehn_sommerville_check(x: &RealToricVariety) -> Result<DehnSommervilleReport, InvariantError> {
    require(x, &[Predicate::CompactRealLocus, Predicate::Untwisted])?;
    let e = e_polynomial(x);
    let euler_value = e.eval([-1, 1, 0, 0]);
    let fixed_point_relation = x.smooth_topological_core().then(|| {
        let sig = x.signature();
        let j = (sig.q - sig.r) as u32;
        ((sig.p - sig.r) as Int * e.coeff_xy(0, j), 2 * e.coeff_xy(1, j))
    });
    let passed = euler_value == 1 && fixed_point_relation.is_none_or(|(a, b)| a == b);
    Ok(DehnSommervilleReport { euler_value, fixed_point_relation, passed })
}
