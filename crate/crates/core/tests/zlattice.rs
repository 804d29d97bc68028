mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use retoric::matrix::{smith_normal_form, Matrix, Vector};
use retoric::zlattice::{
    canonical_block, class_of, cohomology, decompose, extension_invariants, fixed_sublattice, in_image_test,
    signature, sub_quotient, winding_group, InvolutiveLattice, LatticeError, TypeSignature,
};

fn lattice(rows: &[Vector]) -> InvolutiveLattice {
    InvolutiveLattice::from_rows(rows).unwrap()
}

fn swap() -> InvolutiveLattice {
    lattice(&[vec![0, 1], vec![1, 0]])
}

fn column(v: &[i64]) -> Matrix {
    Matrix::from_columns(v.len(), &[v.to_vec()])
}

#[test]
fn smith_forms_of_small_matrices() {
    let s = smith_normal_form(&Matrix::from_rows(&[vec![0]]));
    assert_eq!(s.factors(), Vec::<i64>::new());
    let a = Matrix::from_rows(&[vec![2, 0], vec![0, 3]]);
    let s = smith_normal_form(&a);
    assert_eq!(s.factors(), vec![1, 6]);
    assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    let s = smith_normal_form(&Matrix::identity(3));
    assert_eq!(s.d, Matrix::identity(3));
}

#[test]
fn signatures_of_basic_involutions() {
    assert_eq!(signature(&InvolutiveLattice::split(3)), TypeSignature::new(3, 0, 0));
    assert_eq!(signature(&swap()), TypeSignature::new(1, 1, 1));
    assert_eq!(signature(&lattice(&[vec![1, 0], vec![2, -1]])), TypeSignature::new(1, 1, 0));
    assert!(matches!(
        InvolutiveLattice::from_rows(&[vec![1, 1], vec![0, 1]]),
        Err(LatticeError::InvalidInvolution)
    ));
}

#[test]
fn fixed_sublattices_of_swap() {
    assert_eq!(fixed_sublattice(&InvolutiveLattice::split(2), 1).cols(), 2);
    let plus = fixed_sublattice(&swap(), 1);
    assert_eq!(plus.column(0).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1]);
    let minus = fixed_sublattice(&swap(), -1);
    let m = minus.column(0);
    assert_eq!(m[0], -m[1]);
    assert_eq!(m[0].abs(), 1);
}

#[test]
fn winding_groups() {
    let w = winding_group(&InvolutiveLattice::split(2));
    assert_eq!(w.dim, 0);
    let w = winding_group(&swap());
    assert_eq!(w.dim, 1);
    assert_eq!(w.d0.rank(), 1);
    assert_eq!(w.d1.rank(), 1);
    let w = winding_group(&lattice(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]));
    assert_eq!(w.dim, 1);
}

#[test]
fn cohomology_of_rank_one_and_two() {
    assert_eq!(cohomology(&swap(), 1).unwrap().dim, 0);
    assert_eq!(cohomology(&swap(), 2).unwrap().dim, 0);
    let minus = lattice(&[vec![-1]]);
    assert_eq!(cohomology(&minus, 1).unwrap().dim, 1);
    let plus = lattice(&[vec![1]]);
    assert_eq!(cohomology(&plus, 1).unwrap().dim, 0);
    assert_eq!(cohomology(&plus, 2).unwrap().dim, 1);
    assert_eq!(class_of(&minus, &[0], 1).unwrap(), vec![false]);
    assert_eq!(class_of(&minus, &[1], 1).unwrap(), vec![true]);
    assert_eq!(class_of(&minus, &[2], 1).unwrap(), vec![false]);
    assert!(matches!(class_of(&plus, &[1], 1), Err(LatticeError::NotInKernel { .. })));
}

#[test]
fn quotients() {
    let full = sub_quotient(&swap(), &Matrix::identity(2)).unwrap();
    assert_eq!(full.lattice.rank(), 0);
    let q = sub_quotient(&swap(), &column(&[1, 1])).unwrap();
    assert_eq!(q.lattice.tau(), &Matrix::from_rows(&[vec![-1]]));
    let q = sub_quotient(&swap(), &Matrix::zeros(2, 0)).unwrap();
    assert_eq!(signature(&q.lattice), TypeSignature::new(1, 1, 1));
    assert!(matches!(sub_quotient(&swap(), &column(&[1, 0])), Err(LatticeError::NotStable)));
    assert!(matches!(sub_quotient(&swap(), &column(&[2, 2])), Err(LatticeError::NotPrimitive)));
}

#[test]
fn image_tests() {
    let minus = lattice(&[vec![-1]]);
    assert!(in_image_test(&minus, &Matrix::zeros(1, 0), &[0]).unwrap());
    assert!(!in_image_test(&minus, &Matrix::zeros(1, 0), &[1]).unwrap());
    let diag = lattice(&[vec![1, 0], vec![0, -1]]);
    assert!(in_image_test(&diag, &Matrix::identity(2), &[0, 1]).unwrap());
    assert!(matches!(in_image_test(&diag, &Matrix::identity(2), &[1, 0]), Err(LatticeError::NotAntiInvariant)));
}

#[test]
fn extensions() {
    let plus = lattice(&[vec![1]]);
    let minus = lattice(&[vec![-1]]);
    let split = lattice(&[vec![1, 0], vec![0, -1]]);
    let e = extension_invariants(&plus, &split, &column(&[1, 0])).unwrap();
    assert_eq!((e.rank_d1, e.rank_d2), (0, 0));
    let e = extension_invariants(&plus, &swap(), &column(&[1, 1])).unwrap();
    assert_eq!(e.rank_d1, 1);
    let e = extension_invariants(&minus, &swap(), &column(&[1, -1])).unwrap();
    assert_eq!(e.rank_d2, 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decomposition_is_unimodular_block_form(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (l, sig) = common::random_involution(&mut rng, 6);
        prop_assert_eq!(l.tau().mul(l.tau()), Matrix::identity(sig.rank()));
        let d = decompose(&l);
        prop_assert_eq!(d.signature, sig);
        prop_assert_eq!(d.basis_change.det().abs(), 1);
        prop_assert_eq!(l.tau().mul(&d.basis_change), d.basis_change.mul(&canonical_block(sig)));
    }

    #[test]
    fn cohomology_dimensions_match_signature(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (l, sig) = common::random_involution(&mut rng, 6);
        prop_assert_eq!(cohomology(&l, 1).unwrap().dim, sig.q - sig.r);
        prop_assert_eq!(cohomology(&l, 2).unwrap().dim, sig.p - sig.r);
        prop_assert_eq!(cohomology(&l, 3).unwrap().dim, sig.q - sig.r);
    }

    #[test]
    fn winding_embeddings_are_injective(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (l, sig) = common::random_involution(&mut rng, 6);
        let w = winding_group(&l);
        prop_assert_eq!(w.dim, sig.r);
        prop_assert_eq!(w.d0.rank(), sig.r);
        prop_assert_eq!(w.d1.rank(), sig.r);
    }

    #[test]
    fn classes_are_linear_and_vanish_on_the_image(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (l, _) = common::random_involution(&mut rng, 6);
        let h1 = cohomology(&l, 1).unwrap();
        let n = l.rank();
        let minus = fixed_sublattice(&l, -1);
        let pick = |rng: &mut StdRng| -> Vector {
            let c: Vector = (0..minus.cols()).map(|_| rng.gen_range(-3..=3)).collect();
            minus.mul_vec(&c)
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let sum: Vector = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let ca = h1.class_of(&a).unwrap();
        let cb = h1.class_of(&b).unwrap();
        let expected: Vec<bool> = ca.iter().zip(&cb).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(h1.class_of(&sum).unwrap(), expected);
        let w: Vector = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let image: Vector = w.iter().zip(l.apply(&w)).map(|(x, y)| x - y).collect();
        prop_assert!(h1.class_of(&image).unwrap().iter().all(|&c| !c));
    }

    #[test]
    fn full_sublattice_hits_every_class(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(7 ^ seed);
        let (l, _) = common::random_involution(&mut rng, 5);
        for v in cohomology(&l, 1).unwrap().representatives {
            prop_assert!(in_image_test(&l, &Matrix::identity(l.rank()), &v).unwrap());
        }
    }
}
