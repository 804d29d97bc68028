//! Free ℤ-modules with an involution: normal forms, the structure
//! decomposition into ℤ[1], ℤ[−1] and ℤ[τ] summands, group cohomology of
//! ℤ/2 and the winding group.

use crate::matrix::{
    self, is_saturated_basis, kernel, smith_normal_form, unimodular_lift, vec_add, vec_sub,
    CoordinateSystem, F2Matrix, Int, Matrix, Vector,
};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub use crate::matrix::{smith_normal_form as snf, Smith};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("tau must be a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("tau does not square to the identity")]
    InvalidInvolution,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not in the kernel required for degree {degree}")]
    NotInKernel { degree: usize },
    #[error("sublattice is not stable under tau")]
    NotStable,
    #[error("sublattice is not primitive (the quotient has torsion) or not injectively included")]
    NotPrimitive,
    #[error("vector is not anti-invariant: (1+tau)v != 0")]
    NotAntiInvariant,
    #[error("cohomology degree must be at least 1")]
    InvalidDegree,
}

/// A lattice ℤⁿ with an involution τ, given by its matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InvolutiveLattice {
    tau: Matrix,
}

impl InvolutiveLattice {
    pub fn new(tau: Matrix) -> Result<Self, LatticeError> {
        if !tau.is_square() {
            return Err(LatticeError::NotSquare { rows: tau.rows(), cols: tau.cols() });
        }
        if !tau.mul(&tau).is_identity() {
            return Err(LatticeError::InvalidInvolution);
        }
        Ok(InvolutiveLattice { tau })
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Self, LatticeError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            let cols = rows.iter().map(|r| r.len()).find(|&l| l != n).unwrap_or(n);
            return Err(LatticeError::NotSquare { rows: n, cols });
        }
        Self::new(Matrix::from_rows_with_width(rows, n))
    }

    /// τ = identity on ℤⁿ (the split lattice ℤ[1]ⁿ).
    pub fn split(n: usize) -> Self {
        InvolutiveLattice { tau: Matrix::identity(n) }
    }

    /// The lattice with the canonical block involution of the given type.
    pub fn of_type(sig: TypeSignature) -> Self {
        InvolutiveLattice { tau: canonical_block(sig) }
    }

    pub fn rank(&self) -> usize {
        self.tau.rows()
    }

    pub fn tau(&self) -> &Matrix {
        &self.tau
    }

    pub fn apply(&self, v: &[Int]) -> Vector {
        self.tau.mul_vec(v)
    }

    /// 1 + sign·τ as a matrix.
    fn one_plus(&self, sign: Int) -> Matrix {
        Matrix::identity(self.rank()).add(&self.tau.scale(sign))
    }

    pub(crate) fn check_len(&self, v: &[Int]) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch { expected: self.rank(), got: v.len() });
        }
        Ok(())
    }

    pub fn is_anti_invariant(&self, v: &[Int]) -> bool {
        matrix::is_zero(&vec_add(v, &self.apply(v)))
    }

    pub fn is_invariant(&self, v: &[Int]) -> bool {
        self.apply(v) == v
    }

    /// True iff the ℤ-span of the columns of `s` is mapped into itself by τ.
    pub fn is_stable(&self, s: &Matrix) -> bool {
        let image = self.tau.mul(s);
        (0..s.cols()).all(|j| matrix::solve(s, &image.column(j)).is_some())
    }
}

/// The type (p;q)_r of an involutive lattice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeSignature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl TypeSignature {
    pub const fn new(p: usize, q: usize, r: usize) -> Self {
        TypeSignature { p, q, r }
    }

    pub fn rank(&self) -> usize {
        self.p + self.q
    }
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})_{}", self.p, self.q, self.r)
    }
}

/// I_{p−r} ⊕ (−I)_{q−r} ⊕ r copies of [[0,1],[1,0]].
pub fn canonical_block(sig: TypeSignature) -> Matrix {
    let n = sig.p + sig.q;
    let mut m = Matrix::zeros(n, n);
    let mut i = 0;
    for _ in 0..sig.p - sig.r {
        m[(i, i)] = 1;
        i += 1;
    }
    for _ in 0..sig.q - sig.r {
        m[(i, i)] = -1;
        i += 1;
    }
    for _ in 0..sig.r {
        m[(i, i + 1)] = 1;
        m[(i + 1, i)] = 1;
        i += 2;
    }
    m
}

/// A unimodular change of basis bringing τ to canonical block form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Columns are the new basis vectors: U⁻¹ τ U = canonical block.
    pub basis_change: Matrix,
    pub signature: TypeSignature,
}

/// Basis (as columns) of the saturated sublattice ker(1 − sign·τ).
pub fn fixed_sublattice(l: &InvolutiveLattice, sign: Int) -> Matrix {
    kernel(&l.one_plus(-sign))
}

/// Coordinates of every column of `m` in the basis `cs`; panics if a column is outside.
fn coordinates_of_columns(cs: &CoordinateSystem, m: &Matrix) -> Matrix {
    let cols: Vec<Vector> = (0..m.cols())
        .map(|j| cs.coordinates(&m.column(j)).expect("column lies in the sublattice"))
        .collect();
    Matrix::from_columns(cs.dim(), &cols)
}

/// Splits N into ℤ[1], ℤ[−1] and ℤ[τ] summands.
pub fn decompose(l: &InvolutiveLattice) -> Decomposition {
    let n = l.rank();
    let plus = fixed_sublattice(l, 1);
    let minus = fixed_sublattice(l, -1);
    let (p, q) = (plus.cols(), minus.cols());
    let plus_cs = CoordinateSystem::new(plus.clone());
    let minus_cs = CoordinateSystem::new(minus.clone());

    // im(1+τ) inside ker(1−τ): index 2^{p−r}, and it contains 2·ker(1−τ).
    let m = coordinates_of_columns(&plus_cs, &l.one_plus(1));
    let s = smith_normal_form(&m);
    let factors = s.factors();
    debug_assert_eq!(factors.len(), p);
    debug_assert!(factors.iter().all(|&d| d == 1 || d == 2));
    let r = factors.iter().filter(|&&d| d == 1).count();
    let plus_basis = plus.mul(&s.u_inv);

    // u_i with (1+τ)u_i = e_i for the first r basis vectors of ker(1−τ).
    let mut lifts: Vec<Vector> = (0..r).map(|i| s.v.column(i)).collect();

    // Adjust each u_i by an anti-invariant vector so that the u_i − τu_i
    // extend to a basis of ker(1+τ).
    let diffs: Vec<Vector> = lifts
        .iter()
        .map(|u| minus_cs.coordinates(&vec_sub(u, &l.apply(u))).expect("u - tau u is anti-invariant"))
        .collect();
    let residues: Vec<Vec<bool>> =
        diffs.iter().map(|d| d.iter().map(|x| x.rem_euclid(2) == 1).collect()).collect();
    let g = unimodular_lift(q, &residues);
    for (i, u) in lifts.iter_mut().enumerate() {
        let target = g.column(i);
        let half: Vector = target.iter().zip(&diffs[i]).map(|(t, d)| (t - d) / 2).collect();
        *u = vec_add(u, &minus.mul_vec(&half));
    }
    let minus_basis = minus.mul(&g);

    let mut columns: Vec<Vector> = Vec::with_capacity(n);
    for i in r..p {
        columns.push(plus_basis.column(i));
    }
    for j in r..q {
        columns.push(minus_basis.column(j));
    }
    for u in &lifts {
        columns.push(u.clone());
        columns.push(l.apply(u));
    }
    let basis_change = Matrix::from_columns(n, &columns);
    let signature = TypeSignature { p, q, r };
    debug_assert_eq!(basis_change.det().abs(), 1);
    debug_assert_eq!(l.tau().mul(&basis_change), basis_change.mul(&canonical_block(signature)));
    Decomposition { basis_change, signature }
}

pub fn signature(l: &InvolutiveLattice) -> TypeSignature {
    // Cheaper than a full decomposition: r is the number of unit invariant factors.
    let plus = fixed_sublattice(l, 1);
    let q = l.rank() - plus.cols();
    let m = coordinates_of_columns(&CoordinateSystem::new(plus.clone()), &l.one_plus(1));
    let r = smith_normal_form(&m).factors().iter().filter(|&&d| d == 1).count();
    TypeSignature { p: plus.cols(), q, r }
}

/// Γ = N / (ker(1−τ) ⊕ ker(1+τ)) through its two embeddings into the mod-2 reductions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindingGroup {
    pub dim: usize,
    /// Lifts to N of an F₂-basis of Γ.
    pub representatives: Vec<Vector>,
    /// Basis of ker(1−τ) used for the coordinates of `d1`.
    pub fixed_basis: Matrix,
    /// Basis of ker(1+τ) used for the coordinates of `d0`.
    pub anti_basis: Matrix,
    /// Row γ: class of v − τv in ker(1+τ) ⊗ F₂.
    pub d0: F2Matrix,
    /// Row γ: class of v + τv in ker(1−τ) ⊗ F₂.
    pub d1: F2Matrix,
}

pub fn winding_group(l: &InvolutiveLattice) -> WindingGroup {
    let plus = fixed_sublattice(l, 1);
    let minus = fixed_sublattice(l, -1);
    let unwound = plus.hstack(&minus);
    let s = smith_normal_form(&unwound);
    let representatives: Vec<Vector> =
        (0..s.rank).filter(|&i| s.d[(i, i)] == 2).map(|i| s.u_inv.column(i)).collect();
    let plus_cs = CoordinateSystem::new(plus.clone());
    let minus_cs = CoordinateSystem::new(minus.clone());
    let dim = representatives.len();
    let mut d0 = F2Matrix::zeros(dim, minus.cols());
    let mut d1 = F2Matrix::zeros(dim, plus.cols());
    for (g, v) in representatives.iter().enumerate() {
        let tv = l.apply(v);
        let sum = plus_cs.coordinates(&vec_add(v, &tv)).expect("v + tau v is invariant");
        let diff = minus_cs.coordinates(&vec_sub(v, &tv)).expect("v - tau v is anti-invariant");
        for (j, x) in sum.iter().enumerate() {
            d1.set(g, j, x.rem_euclid(2) == 1);
        }
        for (j, x) in diff.iter().enumerate() {
            d0.set(g, j, x.rem_euclid(2) == 1);
        }
    }
    WindingGroup { dim, representatives, fixed_basis: plus, anti_basis: minus, d0, d1 }
}

/// H^k(ℤ/2; N) with a fixed basis of representatives.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub degree: usize,
    pub dim: usize,
    /// Representatives in N of an F₂-basis.
    pub representatives: Vec<Vector>,
    kernel: CoordinateSystem,
    reduction: Matrix,
    quotient_rows: Vec<usize>,
}

impl CohomologySpace {
    /// F₂-coordinates of the class of `v`.
    pub fn class_of(&self, v: &[Int]) -> Result<Vec<bool>, LatticeError> {
        let y = self
            .kernel
            .coordinates(v)
            .ok_or(LatticeError::NotInKernel { degree: self.degree })?;
        let z = self.reduction.mul_vec(&y);
        Ok(self.quotient_rows.iter().map(|&i| z[i].rem_euclid(2) == 1).collect())
    }

    /// The canonical representative Σ cᵢ repᵢ (cᵢ ∈ {0,1}) of the class of `v`.
    pub fn canonical_representative(&self, v: &[Int]) -> Result<Vector, LatticeError> {
        let coords = self.class_of(v)?;
        let mut out = vec![0; v.len()];
        for (c, rep) in coords.iter().zip(&self.representatives) {
            if *c {
                out = vec_add(&out, rep);
            }
        }
        Ok(out)
    }
}

/// H^odd = ker(1+τ)/im(1−τ), H^even = ker(1−τ)/im(1+τ).
pub fn cohomology(l: &InvolutiveLattice, k: usize) -> Result<CohomologySpace, LatticeError> {
    if k == 0 {
        return Err(LatticeError::InvalidDegree);
    }
    let (kernel_sign, image_sign) = if k % 2 == 1 { (-1, -1) } else { (1, 1) };
    let ker = fixed_sublattice(l, kernel_sign);
    let cs = CoordinateSystem::new(ker.clone());
    let image = coordinates_of_columns(&cs, &l.one_plus(image_sign));
    let s = smith_normal_form(&image);
    debug_assert_eq!(s.rank, ker.cols());
    let quotient_rows: Vec<usize> = (0..s.rank).filter(|&i| s.d[(i, i)] == 2).collect();
    let representatives = quotient_rows.iter().map(|&i| ker.mul_vec(&s.u_inv.column(i))).collect();
    Ok(CohomologySpace {
        degree: k,
        dim: quotient_rows.len(),
        representatives,
        kernel: cs,
        reduction: s.u,
        quotient_rows,
    })
}

pub fn class_of(l: &InvolutiveLattice, v: &[Int], k: usize) -> Result<Vec<bool>, LatticeError> {
    l.check_len(v)?;
    cohomology(l, k)?.class_of(v)
}

/// N/S with its induced involution and the maps relating it to N.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub lattice: InvolutiveLattice,
    /// (n−s) × n matrix of the projection N → N/S.
    pub projection: Matrix,
    /// n × (n−s) matrix of a section, projection · section = I.
    pub section: Matrix,
    /// Basis of S (n × s).
    pub sub_basis: Matrix,
}

/// The quotient by a τ-stable primitive sublattice spanned by the columns of `s`.
pub fn sub_quotient(l: &InvolutiveLattice, s: &Matrix) -> Result<Quotient, LatticeError> {
    let n = l.rank();
    if s.rows() != n {
        return Err(LatticeError::DimensionMismatch { expected: n, got: s.rows() });
    }
    let smith = smith_normal_form(s);
    if smith.factors().iter().any(|&d| d != 1) {
        return Err(LatticeError::NotPrimitive);
    }
    if !l.is_stable(s) {
        return Err(LatticeError::NotStable);
    }
    let k = smith.rank;
    let projection = smith.u.row_range(k, n);
    let section = smith.u_inv.column_range(k, n);
    let sub_basis = smith.u_inv.column_range(0, k);
    let tau = projection.mul(l.tau()).mul(&section);
    let lattice = InvolutiveLattice::new(tau).expect("induced map of an involution is an involution");
    Ok(Quotient { lattice, projection, section, sub_basis })
}

/// Whether the class of the anti-invariant `v` lies in the image of
/// H¹(ℤ/2; S) → H¹(ℤ/2; N).
pub fn in_image_test(l: &InvolutiveLattice, s: &Matrix, v: &[Int]) -> Result<bool, LatticeError> {
    l.check_len(v)?;
    if !l.is_anti_invariant(v) {
        return Err(LatticeError::NotAntiInvariant);
    }
    if s.rows() != l.rank() {
        return Err(LatticeError::DimensionMismatch { expected: l.rank(), got: s.rows() });
    }
    if !l.is_stable(s) {
        return Err(LatticeError::NotStable);
    }
    // w ∈ S ∩ ker(1+τ) and v − w ∈ (1−τ)N.
    let n = l.rank();
    let coeffs = kernel(&l.one_plus(1).mul(s));
    let anti_in_s = s.mul(&coeffs);
    let system = anti_in_s.hstack(&l.one_plus(-1));
    debug_assert_eq!(system.rows(), n);
    Ok(matrix::solve(&system, v).is_some())
}

/// Connecting morphisms of an extension 0 → A → N → B → 0.
#[derive(Clone, Debug)]
pub struct ExtensionInvariants {
    /// H¹(B) → H²(A), columns indexed by the H¹(B) basis.
    pub d1: F2Matrix,
    /// H²(B) → H³(A) ≅ H¹(A), columns indexed by the H²(B) basis.
    pub d2: F2Matrix,
    pub rank_d1: usize,
    pub rank_d2: usize,
}

pub fn extension_invariants(
    sub: &InvolutiveLattice,
    total: &InvolutiveLattice,
    inclusion: &Matrix,
) -> Result<ExtensionInvariants, LatticeError> {
    if inclusion.rows() != total.rank() || inclusion.cols() != sub.rank() {
        return Err(LatticeError::DimensionMismatch { expected: total.rank(), got: inclusion.rows() });
    }
    if total.tau().mul(inclusion) != inclusion.mul(sub.tau()) {
        return Err(LatticeError::NotStable);
    }
    if !is_saturated_basis(inclusion) {
        return Err(LatticeError::NotPrimitive);
    }
    let quotient = sub_quotient(total, inclusion)?;
    let incl = CoordinateSystem::new(inclusion.clone());
    let connecting = |from_degree: usize, sign: Int| -> Result<F2Matrix, LatticeError> {
        let source = cohomology(&quotient.lattice, from_degree)?;
        let target = cohomology(sub, from_degree + 1)?;
        let mut m = F2Matrix::zeros(target.dim, source.dim);
        for (j, b) in source.representatives.iter().enumerate() {
            let lift = quotient.section.mul_vec(b);
            let image = vec_add(&lift, &vec_scale_sign(sign, &total.apply(&lift)));
            let a = incl.coordinates(&image).expect("boundary of a lift lies in the subobject");
            for (i, c) in target.class_of(&a)?.iter().enumerate() {
                m.set(i, j, *c);
            }
        }
        Ok(m)
    };
    let d1 = connecting(1, 1)?;
    let d2 = connecting(2, -1)?;
    Ok(ExtensionInvariants { rank_d1: d1.rank(), rank_d2: d2.rank(), d1, d2 })
}

fn vec_scale_sign(sign: Int, v: &[Int]) -> Vector {
    v.iter().map(|x| sign * x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> InvolutiveLattice {
        InvolutiveLattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn minus_one() -> InvolutiveLattice {
        InvolutiveLattice::from_rows(&[vec![-1]]).unwrap()
    }

    #[test]
    fn rejects_non_involutions() {
        assert_eq!(
            InvolutiveLattice::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap_err(),
            LatticeError::InvalidInvolution
        );
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose(&InvolutiveLattice::split(3)).signature, TypeSignature::new(3, 0, 0));
        assert_eq!(decompose(&swap()).signature, TypeSignature::new(1, 1, 1));
        let l = InvolutiveLattice::from_rows(&[vec![1, 0], vec![2, -1]]).unwrap();
        let d = decompose(&l);
        assert_eq!(d.signature, TypeSignature::new(1, 1, 0));
        let u = &d.basis_change;
        assert_eq!(u.det().abs(), 1);
        assert_eq!(l.tau().mul(u), u.mul(&canonical_block(d.signature)));
    }

    #[test]
    fn fixed_sublattices_of_swap() {
        let plus = fixed_sublattice(&swap(), 1);
        assert_eq!(plus.cols(), 1);
        let v = plus.column(0);
        assert_eq!(v[0], v[1]);
        assert_eq!(v[0].abs(), 1);
        let minus = fixed_sublattice(&swap(), -1).column(0);
        assert_eq!(minus[0], -minus[1]);
        assert_eq!(fixed_sublattice(&InvolutiveLattice::split(2), 1).cols(), 2);
    }

    #[test]
    fn winding_of_swap() {
        let w = winding_group(&swap());
        assert_eq!(w.dim, 1);
        assert_eq!(w.d0.rank(), 1);
        assert_eq!(w.d1.rank(), 1);
        assert_eq!(winding_group(&InvolutiveLattice::split(2)).dim, 0);
        let block = InvolutiveLattice::from_rows(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(winding_group(&block).dim, 1);
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(cohomology(&swap(), 1).unwrap().dim, 0);
        assert_eq!(cohomology(&swap(), 2).unwrap().dim, 0);
        assert_eq!(cohomology(&minus_one(), 1).unwrap().dim, 1);
        let one = InvolutiveLattice::split(1);
        assert_eq!(cohomology(&one, 1).unwrap().dim, 0);
        assert_eq!(cohomology(&one, 2).unwrap().dim, 1);
        assert_eq!(cohomology(&one, 4).unwrap().dim, 1);
    }

    #[test]
    fn classes() {
        let l = minus_one();
        assert_eq!(class_of(&l, &[0], 1).unwrap(), vec![false]);
        assert_eq!(class_of(&l, &[1], 1).unwrap(), vec![true]);
        assert_eq!(class_of(&l, &[2], 1).unwrap(), vec![false]);
        assert_eq!(class_of(&l, &[-3], 1).unwrap(), vec![true]);
        assert_eq!(class_of(&InvolutiveLattice::split(1), &[1], 1), Err(LatticeError::NotInKernel { degree: 1 }));
    }

    #[test]
    fn quotients() {
        let q = sub_quotient(&swap(), &Matrix::from_columns(2, &[vec![1, 1]])).unwrap();
        assert_eq!(q.lattice.tau(), &Matrix::from_rows(&[vec![-1]]));
        let full = sub_quotient(&swap(), &Matrix::identity(2)).unwrap();
        assert_eq!(full.lattice.rank(), 0);
        let none = sub_quotient(&swap(), &Matrix::zeros(2, 0)).unwrap();
        assert_eq!(none.lattice.rank(), 2);
        assert_eq!(
            sub_quotient(&swap(), &Matrix::from_columns(2, &[vec![1, 0]])).unwrap_err(),
            LatticeError::NotStable
        );
        assert_eq!(
            sub_quotient(&swap(), &Matrix::from_columns(2, &[vec![2, 2]])).unwrap_err(),
            LatticeError::NotPrimitive
        );
    }

    #[test]
    fn image_tests() {
        let l = minus_one();
        assert!(in_image_test(&l, &Matrix::zeros(1, 0), &[0]).unwrap());
        assert!(!in_image_test(&l, &Matrix::zeros(1, 0), &[1]).unwrap());
        let diag = InvolutiveLattice::from_rows(&[vec![1, 0], vec![0, -1]]).unwrap();
        assert!(in_image_test(&diag, &Matrix::identity(2), &[0, 1]).unwrap());
        assert_eq!(in_image_test(&diag, &Matrix::identity(2), &[1, 0]), Err(LatticeError::NotAntiInvariant));
    }

    #[test]
    fn extensions() {
        let split = InvolutiveLattice::from_rows(&[vec![1, 0], vec![0, -1]]).unwrap();
        let e = extension_invariants(&InvolutiveLattice::split(1), &split, &Matrix::from_columns(2, &[vec![1, 0]])).unwrap();
        assert_eq!((e.rank_d1, e.rank_d2), (0, 0));
        let e = extension_invariants(&InvolutiveLattice::split(1), &swap(), &Matrix::from_columns(2, &[vec![1, 1]])).unwrap();
        assert_eq!(e.rank_d1, 1);
        let e = extension_invariants(&minus_one(), &swap(), &Matrix::from_columns(2, &[vec![1, -1]])).unwrap();
        assert_eq!(e.rank_d2, 1);
    }
}
