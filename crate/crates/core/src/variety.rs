//! A real toric variety as a τ-stable fan together with a twist class.

use crate::fans::{Cone, EquivariantFan, FanError};
use crate::matrix::{self, CoordinateSystem, F2Matrix, Int, Matrix, Vector};
use crate::zlattice::{
    self, cohomology, fixed_sublattice, in_image_test, sub_quotient, InvolutiveLattice, LatticeError,
    TypeSignature,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("the fan is not smooth")]
    NotSmooth,
    #[error("cone {0:?} is not an invariant cone of the fan")]
    NotInvariant(Vec<Vector>),
    #[error("cone {0:?} has dimension below 2")]
    ConeTooSmall(Vec<Vector>),
    #[error("the fan is not generated by a single invariant cone")]
    NotAffine,
    #[error("the twist class is nonzero")]
    Twisted,
}

/// A class in H¹(ℤ/2; N), kept as its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistClass {
    representative: Vector,
    coordinates: Vec<bool>,
}

impl TwistClass {
    pub fn new(lattice: &InvolutiveLattice, v: &[Int]) -> Result<Self, LatticeError> {
        lattice.check_len(v)?;
        if !lattice.is_anti_invariant(v) {
            return Err(LatticeError::NotAntiInvariant);
        }
        let h1 = cohomology(lattice, 1)?;
        Ok(TwistClass { representative: h1.canonical_representative(v)?, coordinates: h1.class_of(v)? })
    }

    pub fn zero(lattice: &InvolutiveLattice) -> Self {
        Self::new(lattice, &vec![0; lattice.rank()]).expect("zero is anti-invariant")
    }

    pub fn representative(&self) -> &[Int] {
        &self.representative
    }

    /// Coordinates in the basis of H¹ fixed by [`zlattice::cohomology`].
    pub fn coordinates(&self) -> &[bool] {
        &self.coordinates
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|c| !c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealToricVariety {
    fan: EquivariantFan,
    twist: TwistClass,
}

/// A component Z of the codimension-two winding locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingComponent {
    pub cone: Cone,
    /// v_Z, the sum of the two exchanged generators.
    pub barycenter: Vector,
}

/// Local model of a smooth affine real toric variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineNormalForm {
    /// Exchanged pairs of rays.
    pub l: usize,
    /// Invariant rays.
    pub k: usize,
    /// Type of N(c) = N / N_c.
    pub base_type: TypeSignature,
    /// Rows: invariant rays in fan order; columns: the H¹(N(c)) basis.
    pub mu: Vec<Vec<u8>>,
}

impl AffineNormalForm {
    pub fn mu_rank(&self) -> usize {
        let cols = self.mu.first().map_or(0, |r| r.len());
        F2Matrix::from_rows(&self.mu, cols).rank()
    }
}

impl RealToricVariety {
    pub fn new(fan: EquivariantFan, twist: &[Int]) -> Result<Self, VarietyError> {
        let twist = TwistClass::new(fan.lattice(), twist)?;
        Ok(RealToricVariety { fan, twist })
    }

    pub fn untwisted(fan: EquivariantFan) -> Self {
        let twist = TwistClass::zero(fan.lattice());
        RealToricVariety { fan, twist }
    }

    /// Builds lattice, fan and twist in one step.
    pub fn from_parts(tau: &[Vector], cones: Vec<Vec<Vector>>, twist: Option<&[Int]>) -> Result<Self, VarietyError> {
        let lattice = InvolutiveLattice::new(Matrix::from_rows_with_width(tau, tau.len()))?;
        let n = lattice.rank();
        let fan = EquivariantFan::from_generators(lattice, cones)?;
        match twist {
            Some(t) => Self::new(fan, t),
            None => Self::new(fan, &vec![0; n]),
        }
    }

    pub fn lattice(&self) -> &InvolutiveLattice {
        self.fan.lattice()
    }

    pub fn fan(&self) -> &EquivariantFan {
        &self.fan
    }

    pub fn twist(&self) -> &TwistClass {
        &self.twist
    }

    pub fn dim(&self) -> usize {
        self.fan.rank()
    }

    pub fn signature(&self) -> TypeSignature {
        zlattice::signature(self.lattice())
    }

    pub fn is_smooth(&self) -> bool {
        self.fan.is_smooth()
    }

    /// Whether the orbit of the invariant cone `c` has a real point.
    pub fn orbit_has_real_point(&self, c: &Cone) -> bool {
        if self.twist.is_zero() {
            return true;
        }
        let span = c.span_lattice();
        in_image_test(self.lattice(), &span, &self.twist.representative).expect("invariant cones have stable spans")
    }

    /// Invariant cones whose orbit has a real point, smallest first.
    pub fn real_orbit_cones(&self) -> Vec<&Cone> {
        self.fan.invariant_cones().into_iter().filter(|c| self.orbit_has_real_point(c)).collect()
    }

    pub fn has_real_point(&self) -> bool {
        self.twist.is_zero() || !self.real_orbit_cones().is_empty()
    }

    /// Dimension of the largest real orbit, or `None` when there are no real points.
    pub fn cellular_dimension(&self) -> Option<usize> {
        self.real_orbit_cones().first().map(|c| self.dim() - c.dim())
    }

    /// The canonical fibre's fan is complete in ker(1−τ).
    pub fn compact_real_locus(&self) -> bool {
        self.canonical_fibre().fan.is_complete()
    }

    /// All faces of invariant cones, with the same lattice and twist.
    pub fn topological_core(&self) -> RealToricVariety {
        let cones: Vec<Cone> = self.fan.invariant_cones().into_iter().cloned().collect();
        let fan = EquivariantFan::new(self.lattice().clone(), cones).expect("subfan of a fan");
        RealToricVariety { fan, twist: self.twist.clone() }
    }

    pub fn smooth_topological_core(&self) -> bool {
        self.fan.invariant_cones().iter().all(|c| c.is_smooth())
    }

    pub fn properly_wound(&self) -> bool {
        let tau = self.lattice().tau();
        self.fan.invariant_cones().iter().all(|c| c.pointwise_fixed(tau))
    }

    /// Split variety on ker(1−τ) with fan {c ∩ ker(1−τ)}.
    pub fn canonical_fibre(&self) -> RealToricVariety {
        let plus = fixed_sublattice(self.lattice(), 1);
        let fan = if plus.cols() == 0 {
            EquivariantFan::trivial(InvolutiveLattice::split(0))
        } else {
            self.fan.restrict(&plus).expect("restriction to the fixed lattice is a fan")
        };
        RealToricVariety::untwisted(fan)
    }

    /// Base change to Ñ = ker(1−τ) ⊕ ker(1+τ); also returns the inclusion Ñ → N (columns).
    pub fn unwinding(&self) -> (RealToricVariety, Matrix) {
        let l = self.lattice();
        let plus = fixed_sublattice(l, 1);
        let minus = fixed_sublattice(l, -1);
        let (p, q) = (plus.cols(), minus.cols());
        let inclusion = plus.hstack(&minus);
        let mut diag = vec![1; p];
        diag.extend(vec![-1; q]);
        let lattice = InvolutiveLattice::new(Matrix::diagonal(&diag)).expect("diagonal signs");
        let n = l.rank();
        if n == 0 {
            return (self.clone(), inclusion);
        }
        let coords = CoordinateSystem::new(inclusion.clone());
        let fan = self.fan.rebase(lattice, &coords).expect("same real fan");
        let twist = coords.coordinates(&self.twist.representative).expect("anti-invariant vectors lie in ker(1+tau)");
        let unwound = RealToricVariety::new(fan, &twist).expect("twist stays anti-invariant");
        (unwound, inclusion)
    }

    /// Invariant 2-cones whose two rays are exchanged, ordered by barycenter.
    pub fn codim2_winding_locus(&self) -> Result<Vec<WindingComponent>, VarietyError> {
        if !self.is_smooth() {
            return Err(VarietyError::NotSmooth);
        }
        let l = self.lattice();
        let mut out: Vec<WindingComponent> = self
            .fan
            .invariant_cones()
            .into_iter()
            .filter(|c| c.dim() == 2 && l.apply(&c.generators()[0]) == c.generators()[1])
            .map(|c| WindingComponent { cone: c.clone(), barycenter: c.barycenter() })
            .collect();
        out.sort_by(|a, b| a.barycenter.cmp(&b.barycenter));
        Ok(out)
    }

    /// Bl_W: stellar subdivisions at every v_Z.
    pub fn resolve_winding_blowup(&self) -> Result<RealToricVariety, VarietyError> {
        let mut fan = self.fan.clone();
        for z in self.codim2_winding_locus()? {
            fan = fan.stellar_subdivision(&z.barycenter)?;
        }
        Ok(RealToricVariety { fan, twist: self.twist.clone() })
    }

    pub fn resolve_winding_barycentric(&self) -> RealToricVariety {
        RealToricVariety { fan: self.fan.barycentric_subdivision(), twist: self.twist.clone() }
    }

    /// Stellar subdivision at the barycenter of an invariant cone of dimension ≥ 2.
    pub fn toric_blow_up(&self, c: &Cone) -> Result<RealToricVariety, VarietyError> {
        if !self.is_smooth() {
            return Err(VarietyError::NotSmooth);
        }
        match self.fan.index_of(c) {
            Some(i) if self.fan.is_invariant(i) => {}
            _ => return Err(VarietyError::NotInvariant(c.generators().to_vec())),
        }
        if c.dim() < 2 {
            return Err(VarietyError::ConeTooSmall(c.generators().to_vec()));
        }
        let fan = self.fan.stellar_subdivision(&c.barycenter())?;
        Ok(RealToricVariety { fan, twist: self.twist.clone() })
    }

    /// X/G for the kernel G of an equivariant lattice surjection.
    pub fn quotient_by_subgroup(&self, projection: &Matrix) -> Result<RealToricVariety, VarietyError> {
        let fan = self.fan.image(projection)?;
        let twist = projection.mul_vec(&self.twist.representative);
        RealToricVariety::new(fan, &twist)
    }

    pub fn affine_normal_form(&self) -> Result<AffineNormalForm, VarietyError> {
        let maximal = self.fan.maximal_cones();
        let [c] = maximal.as_slice() else { return Err(VarietyError::NotAffine) };
        let c = *c;
        if !self.fan.is_invariant(self.fan.index_of(c).expect("maximal cone")) {
            return Err(VarietyError::NotAffine);
        }
        if !c.is_smooth() {
            return Err(VarietyError::NotSmooth);
        }
        if !self.twist.is_zero() {
            return Err(VarietyError::Twisted);
        }
        let l = self.lattice();
        let gens = c.generators();
        let invariant: Vec<usize> = (0..gens.len()).filter(|&i| l.is_invariant(&gens[i])).collect();
        let k = invariant.len();
        let pairs = (gens.len() - k) / 2;
        let quotient = sub_quotient(l, &c.generator_matrix())?;
        let base_type = zlattice::signature(&quotient.lattice);
        let h1 = cohomology(&quotient.lattice, 1)?;
        let coords = CoordinateSystem::new(c.generator_matrix());
        let mut mu = vec![vec![0u8; h1.dim]; k];
        for (j, b) in h1.representatives.iter().enumerate() {
            let s = quotient.section.mul_vec(b);
            let w = matrix::vec_add(&s, &l.apply(&s));
            let a = coords.coordinates(&w).expect("s + tau s lies in N_c");
            for (row, &i) in invariant.iter().enumerate() {
                mu[row][j] = a[i].rem_euclid(2) as u8;
            }
        }
        Ok(AffineNormalForm { l: pairs, k, base_type, mu })
    }

    /// The type of N(c) for each invariant cone c.
    pub fn orbit_types(&self) -> Vec<(Cone, TypeSignature)> {
        self.fan
            .invariant_cones()
            .into_iter()
            .map(|c| (c.clone(), self.orbit_type(c)))
            .collect()
    }

    pub fn orbit_type(&self, c: &Cone) -> TypeSignature {
        if c.is_zero() {
            return self.signature();
        }
        let q = sub_quotient(self.lattice(), &c.span_lattice()).expect("invariant cones have stable saturated spans");
        zlattice::signature(&q.lattice)
    }

    /// Same variety with another twist representative.
    pub fn with_twist(&self, twist: &[Int]) -> Result<RealToricVariety, VarietyError> {
        RealToricVariety::new(self.fan.clone(), twist)
    }

    pub fn with_fan(&self, fan: EquivariantFan) -> Result<RealToricVariety, VarietyError> {
        if fan.lattice() != self.lattice() {
            return Err(VarietyError::Lattice(LatticeError::DimensionMismatch {
                expected: self.dim(),
                got: fan.rank(),
            }));
        }
        Ok(RealToricVariety { fan, twist: self.twist.clone() })
    }
}
