//! Named real toric varieties used throughout tests and examples.

use crate::matrix::{Int, Vector};
use crate::variety::RealToricVariety;

fn build(tau: &[Vector], cones: Vec<Vec<Vector>>, twist: Option<&[Int]>) -> RealToricVariety {
    RealToricVariety::from_parts(tau, cones, twist).expect("catalog entries are valid")
}

fn identity(n: usize) -> Vec<Vector> {
    (0..n).map(|i| (0..n).map(|j| Int::from(i == j)).collect()).collect()
}

fn swap() -> Vec<Vector> {
    vec![vec![0, 1], vec![1, 0]]
}

/// Consecutive pairs of a circular list of plane rays.
fn circular(rays: &[[Int; 2]]) -> Vec<Vec<Vector>> {
    (0..rays.len())
        .map(|i| {
            let (a, b) = (rays[i], rays[(i + 1) % rays.len()]);
            vec![a.to_vec(), b.to_vec()]
        })
        .collect()
}

const QUADRANTS: [[Int; 2]; 4] = [[1, 0], [0, 1], [-1, 0], [0, -1]];

/// ℙ¹ over ℝ: real locus a circle.
pub fn p1_split() -> RealToricVariety {
    build(&[vec![1]], vec![vec![vec![1]], vec![vec![-1]]], None)
}

/// The conic x² + y² = z²: τ = −1, untwisted.
pub fn conic() -> RealToricVariety {
    build(&[vec![-1]], vec![vec![vec![1]], vec![vec![-1]]], None)
}

/// The conic x² + y² + z² = 0: τ = −1, twisted, no real points.
pub fn twisted_conic() -> RealToricVariety {
    build(&[vec![-1]], vec![vec![vec![1]], vec![vec![-1]]], Some(&[1]))
}

/// The split torus 𝔾ₘ of rank `n` (fan {0}).
pub fn split_torus(n: usize) -> RealToricVariety {
    build(&identity(n), vec![], None)
}

/// A point (rank-0 lattice).
pub fn point() -> RealToricVariety {
    build(&[], vec![], None)
}

pub fn split_p2() -> RealToricVariety {
    build(&identity(2), circular(&[[1, 0], [0, 1], [-1, -1]]), None)
}

pub fn split_p1xp1() -> RealToricVariety {
    build(&identity(2), circular(&QUADRANTS), None)
}

/// Hirzebruch surface F_a, split.
pub fn hirzebruch(a: Int) -> RealToricVariety {
    build(&identity(2), circular(&[[1, 0], [0, 1], [-1, a], [0, -1]]), None)
}

/// Split ℙ² blown up at `k` ≤ 3 torus-fixed points: real locus (k+1)·ℝP².
pub fn blown_up_p2(k: usize) -> RealToricVariety {
    let rays: Vec<[Int; 2]> = match k {
        0 => vec![[1, 0], [0, 1], [-1, -1]],
        1 => vec![[1, 0], [1, 1], [0, 1], [-1, -1]],
        2 => vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1]],
        3 => vec![[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        _ => panic!("at most three torus-fixed points"),
    };
    build(&identity(2), circular(&rays), None)
}

/// Res ℙ¹: quadrant fan with τ exchanging the axes; real locus S².
pub fn res_p1() -> RealToricVariety {
    build(&swap(), circular(&QUADRANTS), None)
}

/// ℙ² with τ exchanging two rays; real locus ℝP².
pub fn real_projective_plane() -> RealToricVariety {
    build(&swap(), circular(&[[1, 0], [0, 1], [-1, -1]]), None)
}

/// Res ℙ¹ blown up at its four torus-fixed points; real locus the Klein bottle.
pub fn klein_surface() -> RealToricVariety {
    build(&swap(), circular(&[[1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1]]), None)
}

/// ℙ¹ × conic, type (1;1)₀; real locus a torus, or empty when twisted.
pub fn p1_times_conic(twisted: bool) -> RealToricVariety {
    let t: Option<&[Int]> = twisted.then_some(&[0, 1]);
    build(&[vec![1, 0], vec![0, -1]], circular(&QUADRANTS), t)
}

/// conic × conic, type (0;2)₀; real locus a torus, or empty when twisted.
pub fn conic_times_conic(twisted: bool) -> RealToricVariety {
    let t: Option<&[Int]> = twisted.then_some(&[1, 0]);
    build(&[vec![-1, 0], vec![0, -1]], circular(&QUADRANTS), t)
}

/// A complete twisted surface whose real locus is two points.
pub fn fake_p1xp1() -> RealToricVariety {
    build(
        &[vec![1, 0], vec![0, -1]],
        vec![
            vec![vec![1, 1], vec![1, -1]],
            vec![vec![-1, 1], vec![-1, -1]],
            vec![vec![1, 1], vec![-1, 1]],
            vec![vec![-1, -1], vec![1, -1]],
        ],
        Some(&[0, 1]),
    )
}

/// The torus Res 𝔾ₘ (fan {0} on ℤ[τ]).
pub fn res_torus() -> RealToricVariety {
    build(&swap(), vec![], None)
}

/// Ray (1,1) in ℤ[τ]; real locus a Möbius strip.
pub fn mobius() -> RealToricVariety {
    build(&swap(), vec![vec![vec![1, 1]]], None)
}

/// Res 𝔸¹: the positive quadrant in ℤ[τ].
pub fn weil_affine_line() -> RealToricVariety {
    build(&swap(), vec![vec![vec![1, 0], vec![0, 1]]], None)
}

/// τ on ℤ[τ] ⊕ ℤ[−1]: exchange the first two coordinates, negate the third.
pub fn tau_122() -> Vec<Vector> {
    vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]]
}

/// τ on ℤ[τ] ⊕ ℤ[1].
pub fn tau_211() -> Vec<Vector> {
    vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]
}

/// Threefold of type (1;2)₁ with invariant cones ⟨∂x,∂y⟩ and ⟨∂x′,∂y′⟩,
/// ∂x′ = (q₁, q₂, p), ∂y′ = (q₂, q₁, −p). Requires q₁ + q₂ < 0.
pub fn lens_fan(p: Int, q1: Int, q2: Int) -> Result<RealToricVariety, crate::variety::VarietyError> {
    RealToricVariety::from_parts(
        &tau_122(),
        vec![vec![vec![1, 0, 0], vec![0, 1, 0]], vec![vec![q1, q2, p], vec![q2, q1, -p]]],
        None,
    )
}

/// A surface fan of ℤ[τ] placed in the first two coordinates of ℤ[τ] ⊕ ℤ[−1].
pub fn embed_122(surface: &RealToricVariety) -> RealToricVariety {
    let cones = surface
        .fan()
        .maximal_cones()
        .iter()
        .map(|c| c.generators().iter().map(|g| vec![g[0], g[1], 0]).collect())
        .collect();
    build(&tau_122(), cones, None)
}

/// A split surface fan placed in ℤ² ⊕ ℤ[−1] (type (2;1)₀).
pub fn embed_210(surface: &RealToricVariety, twisted: bool) -> RealToricVariety {
    let cones = surface
        .fan()
        .maximal_cones()
        .iter()
        .map(|c| c.generators().iter().map(|g| vec![g[0], g[1], 0]).collect())
        .collect();
    let t: Option<&[Int]> = twisted.then_some(&[0, 0, 1]);
    build(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]], cones, t)
}

/// Res ℙ¹ × ℙ¹ over ℝ, type (2;1)₁; real locus S² × S¹.
pub fn res_p1_times_p1() -> RealToricVariety {
    let mut cones = Vec::new();
    for pair in circular(&QUADRANTS) {
        for s in [1, -1] {
            let mut c: Vec<Vector> = pair.iter().map(|g| vec![g[0], g[1], 0]).collect();
            c.push(vec![0, 0, s]);
            cones.push(c);
        }
    }
    build(&tau_211(), cones, None)
}

/// Every complete smooth curve and surface in this catalog with its expected name.
pub fn low_dimensional_golden_set() -> Vec<(&'static str, RealToricVariety)> {
    vec![
        ("P1 split", p1_split()),
        ("conic", conic()),
        ("twisted conic", twisted_conic()),
        ("split P2", split_p2()),
        ("split P1xP1", split_p1xp1()),
        ("Hirzebruch F1", hirzebruch(1)),
        ("Hirzebruch F2", hirzebruch(2)),
        ("P2 blown up once", blown_up_p2(1)),
        ("P2 blown up twice", blown_up_p2(2)),
        ("P2 blown up three times", blown_up_p2(3)),
        ("P1 x conic", p1_times_conic(false)),
        ("P1 x twisted conic", p1_times_conic(true)),
        ("conic x conic", conic_times_conic(false)),
        ("twisted conic x conic", conic_times_conic(true)),
        ("Res P1", res_p1()),
        ("real projective plane", real_projective_plane()),
        ("Klein surface", klein_surface()),
    ]
}
