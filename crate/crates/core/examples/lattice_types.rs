//! Normal form of a lattice involution and its group cohomology.

use retoric::matrix::Matrix;
use retoric::zlattice::{canonical_block, cohomology, decompose, winding_group, InvolutiveLattice};

fn main() {
    // An involution of ℤ³ written in a skewed basis.
    let tau = Matrix::from_rows(&[vec![1, 0, 0], vec![2, -1, 0], vec![1, 0, -1]]);
    let l = InvolutiveLattice::new(tau).expect("tau squares to the identity");
    let d = decompose(&l);
    println!("type {}", d.signature);
    println!("basis change U: {:?}", d.basis_change.to_rows());
    println!("U^-1 tau U: {:?}", canonical_block(d.signature).to_rows());
    for k in 1..=2 {
        let h = cohomology(&l, k).expect("degree at least one");
        println!("H^{k}(Z/2; N) has dimension {} with representatives {:?}", h.dim, h.representatives);
    }
    println!("winding group dimension {}", winding_group(&l).dim);
}
