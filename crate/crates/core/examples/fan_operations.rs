//! Building, checking and refining equivariant fans.

use retoric::fans::validate_fan;
use retoric::matrix::Vector;
use retoric::zlattice::{fixed_sublattice, InvolutiveLattice};
use retoric::EquivariantFan;

fn main() {
    let swap = InvolutiveLattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
    let quadrants: Vec<Vec<Vector>> = vec![
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![-1, 0], vec![0, 1]],
        vec![vec![-1, 0], vec![0, -1]],
        vec![vec![1, 0], vec![0, -1]],
    ];
    let report = validate_fan(&swap, &quadrants);
    println!("quadrant fan valid: {}", report.is_ok());

    let overlapping: Vec<Vec<Vector>> = vec![vec![vec![1, 0], vec![1, 2]], vec![vec![1, 1], vec![0, 1]]];
    for v in validate_fan(&InvolutiveLattice::split(2), &overlapping).violations {
        println!("violation: {v}");
    }

    let fan = EquivariantFan::from_generators(swap, quadrants).unwrap();
    println!("{} cones, {} invariant, complete: {}", fan.cones().len(), fan.invariant_cones().len(), fan.is_complete());

    let refined = fan.stellar_subdivision(&[1, 1]).unwrap();
    println!("after subdividing at (1,1): {} rays", refined.rays().len());
    let bary = fan.barycentric_subdivision();
    println!("barycentric subdivision: {} maximal cones", bary.maximal_cones().len());

    let fixed = fixed_sublattice(fan.lattice(), 1);
    let fibre = fan.restrict(&fixed).unwrap();
    println!("restriction to the fixed line: rank {}, {} rays", fibre.rank(), fibre.rays().len());
}
