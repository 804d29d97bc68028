//! Seeded random corpora shared by the integration tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use retoric::matrix::{Int, Matrix, Vector};
use retoric::zlattice::{canonical_block, cohomology, InvolutiveLattice, TypeSignature};
use retoric::{EquivariantFan, RealToricVariety};

/// Product of random elementary matrices; determinant ±1 by construction.
pub fn random_unimodular(rng: &mut StdRng, n: usize, steps: usize) -> Matrix {
    let mut u = Matrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            u[(0, 0)] = -1;
        }
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: Int = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = Matrix::identity(n);
        e[(i, j)] = c;
        u = e.mul(&u);
    }
    u
}

pub fn random_signature(rng: &mut StdRng, max_rank: usize) -> TypeSignature {
    loop {
        let r = rng.gen_range(0..=max_rank / 2);
        let p = rng.gen_range(r..=max_rank);
        let q = rng.gen_range(r..=max_rank);
        if p + q <= max_rank {
            return TypeSignature::new(p, q, r);
        }
    }
}

/// U B U⁻¹ for a canonical block B of known type.
pub fn random_involution(rng: &mut StdRng, max_rank: usize) -> (InvolutiveLattice, TypeSignature) {
    let sig = random_signature(rng, max_rank);
    let n = sig.rank();
    let u = random_unimodular(rng, n, 2 * n);
    let tau = u.mul(&canonical_block(sig)).mul(&u.unimodular_inverse().unwrap());
    (InvolutiveLattice::new(tau).unwrap(), sig)
}

struct Factor {
    tau: Vec<Vector>,
    cones: Vec<Vec<Vector>>,
}

fn circular(rays: &[[Int; 2]]) -> Vec<Vec<Vector>> {
    (0..rays.len()).map(|i| vec![rays[i].to_vec(), rays[(i + 1) % rays.len()].to_vec()]).collect()
}

fn factors() -> Vec<Factor> {
    let swap = vec![vec![0, 1], vec![1, 0]];
    let id2 = vec![vec![1, 0], vec![0, 1]];
    vec![
        Factor { tau: vec![vec![1]], cones: vec![vec![vec![1]], vec![vec![-1]]] },
        Factor { tau: vec![vec![-1]], cones: vec![vec![vec![1]], vec![vec![-1]]] },
        Factor { tau: swap.clone(), cones: circular(&[[1, 0], [0, 1], [-1, 0], [0, -1]]) },
        Factor { tau: id2.clone(), cones: circular(&[[1, 0], [0, 1], [-1, -1]]) },
        Factor { tau: swap.clone(), cones: circular(&[[1, 0], [0, 1], [-1, -1]]) },
        Factor { tau: id2, cones: circular(&[[1, 0], [0, 1], [-1, 1], [0, -1]]) },
        Factor {
            tau: swap,
            cones: circular(&[[1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1]]),
        },
    ]
}

/// Product of factors: block-diagonal τ, cones are products of maximal cones.
fn product(parts: &[&Factor]) -> (Matrix, Vec<Vec<Vector>>) {
    let n: usize = parts.iter().map(|f| f.tau.len()).sum();
    let mut tau = Matrix::zeros(n, n);
    let mut offset = 0;
    let mut cones: Vec<Vec<Vector>> = vec![vec![]];
    for f in parts {
        let k = f.tau.len();
        for i in 0..k {
            for j in 0..k {
                tau[(offset + i, offset + j)] = f.tau[i][j];
            }
        }
        let mut next = Vec::new();
        for c in &cones {
            for d in &f.cones {
                let mut g = c.clone();
                for v in d {
                    let mut w = vec![0; n];
                    w[offset..offset + k].copy_from_slice(v);
                    g.push(w);
                }
                next.push(g);
            }
        }
        cones = next;
        offset += k;
    }
    (tau, cones)
}

/// A complete smooth τ-stable fan of rank ≤ `max_rank`, untwisted.
pub fn random_smooth_variety(rng: &mut StdRng, max_rank: usize) -> RealToricVariety {
    let all = factors();
    let target = rng.gen_range(1..=max_rank);
    let mut parts: Vec<&Factor> = Vec::new();
    let mut rank = 0;
    let mut count = 1;
    while rank < target {
        let f = &all[rng.gen_range(0..all.len())];
        if rank + f.tau.len() > target || count * f.cones.len() > 32 {
            if rank > 0 && rng.gen_bool(0.3) {
                break;
            }
            continue;
        }
        rank += f.tau.len();
        count *= f.cones.len();
        parts.push(f);
    }
    let (tau, cones) = product(&parts);
    let u = random_unimodular(rng, rank, rank + 1);
    let u_inv = u.unimodular_inverse().unwrap();
    let tau = u.mul(&tau).mul(&u_inv);
    let cones: Vec<Vec<Vector>> = cones.iter().map(|c| c.iter().map(|g| u.mul_vec(g)).collect()).collect();
    let lattice = InvolutiveLattice::new(tau).unwrap();
    let mut fan = EquivariantFan::from_generators(lattice, cones).unwrap();
    for _ in 0..rng.gen_range(0..=2) {
        let candidates: Vec<Vector> =
            fan.cones().iter().filter(|c| c.dim() >= 2).map(|c| c.barycenter()).collect();
        if candidates.is_empty() || fan.maximal_cones().len() > 40 {
            break;
        }
        let v = &candidates[rng.gen_range(0..candidates.len())];
        if let Ok(f) = fan.stellar_subdivision_orbit(v) {
            if f.is_smooth() {
                fan = f;
            }
        }
    }
    RealToricVariety::untwisted(fan)
}

/// The same variety with a random twist class (possibly zero).
pub fn random_twist(rng: &mut StdRng, x: &RealToricVariety) -> RealToricVariety {
    let h1 = cohomology(x.lattice(), 1).unwrap();
    let mut t = vec![0; x.dim()];
    for rep in &h1.representatives {
        if rng.gen_bool(0.5) {
            t = t.iter().zip(rep).map(|(a, b)| a + b).collect();
        }
    }
    x.with_twist(&t).unwrap()
}
