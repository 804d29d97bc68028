//! Acceptance criteria, one status line each.
//!
//! Run with `cargo test --test acceptance`. Criteria marked `known red`
//! cannot hold as stated; for those the harness checks that they fail in
//! the documented way and that the weaker statement which does hold is true.

mod common;

use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;
use retoric::catalog;
use retoric::classify::{
    circle_action_census, classify, lens_normalize, realize_e_star, ClassifyError, EStarCoefficients, LensError,
    RealizationConstraint, RealizeError, TopologicalType,
};
use retoric::invariants::{
    a_from_e, a_polynomial, dehn_sommerville_check, e_polynomial, e_star_polynomial, orientable, virtual_poincare,
    Predicate,
};
use retoric::zlattice::{canonical_block, cohomology, decompose, signature};
use retoric::{CountPolynomial, Int, RealToricVariety};

fn poly(s: &str) -> CountPolynomial {
    s.parse().unwrap()
}

#[derive(PartialEq)]
enum Expect {
    Pass,
    KnownRed,
}

enum Status {
    Pass,
    Fail(String),
    /// Failing as documented; the string says how.
    Red(String),
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn classified(x: &RealToricVariety) -> Result<TopologicalType, String> {
    classify(x).map(|t| t.canonical()).map_err(|e| e.to_string())
}

fn golden_set() -> Check {
    use TopologicalType::*;
    let expected = [
        ("P1 split", Circle),
        ("conic", Circle),
        ("twisted conic", Empty),
        ("split P2", ProjectivePlane),
        ("split P1xP1", Torus(2)),
        ("Hirzebruch F1", KleinBottle),
        ("Hirzebruch F2", Torus(2)),
        ("P2 blown up once", KleinBottle),
        ("P2 blown up twice", NonOrientableSurface(3)),
        ("P2 blown up three times", NonOrientableSurface(4)),
        ("P1 x conic", Torus(2)),
        ("P1 x twisted conic", Empty),
        ("conic x conic", Torus(2)),
        ("twisted conic x conic", Empty),
        ("Res P1", Sphere(2)),
        ("real projective plane", ProjectivePlane),
        ("Klein surface", KleinBottle),
    ];
    let set = catalog::low_dimensional_golden_set();
    ensure_eq("golden set size", set.len(), expected.len())?;
    for ((name, x), (want_name, want)) in set.iter().zip(expected) {
        ensure_eq("entry", *name, want_name)?;
        ensure_eq(name, classified(x)?, want)?;
    }
    let fake = catalog::fake_p1xp1();
    ensure_eq("fake P1xP1 cellular dimension", fake.cellular_dimension(), Some(0))?;
    let fixed = fake.real_orbit_cones().iter().filter(|c| c.dim() == 2).count();
    ensure_eq("fake P1xP1 real fixed-point orbits", fixed, 2)?;
    ensure_eq("fake P1xP1 e", e_polynomial(&fake), poly("2"))
}

fn betti_numbers() -> Check {
    ensure_eq("P1", virtual_poincare(&catalog::p1_split()), poly("t + 1"))?;
    ensure_eq("Res P1", virtual_poincare(&catalog::res_p1()), poly("t^2 + 1"))?;
    ensure_eq("split P2", virtual_poincare(&catalog::split_p2()), poly("t^2 + t + 1"))?;
    ensure_eq("Klein surface", virtual_poincare(&catalog::klein_surface()), poly("t^2 + 2t + 1"))
}

/// The pillow case: four rays of the fibre plane lifted along (a, b) ↦ (a, a, b).
fn pillow_case() -> RealToricVariety {
    let tau = catalog::tau_211();
    let rays: [[Int; 3]; 4] = [[1, 1, 1], [0, 0, 1], [-1, -1, 1], [0, 0, -1]];
    let cones = (0..4).map(|i| vec![rays[i].to_vec(), rays[(i + 1) % 4].to_vec()]).collect();
    RealToricVariety::from_parts(&tau, cones, None).unwrap()
}

fn e_star_census() -> Check {
    let x = pillow_case();
    ensure_eq("e*", e_star_polynomial(&x), poly("xz + 4z + 4y"))?;
    ensure_eq("classification", classify(&x), Ok(TopologicalType::KleinFiberProduct))
}

fn lens_spaces() -> Result<Status, String> {
    ensure_eq("L(2;1)", classify(&catalog::lens_fan(1, 0, -1).unwrap()), Ok(TopologicalType::LensSpace { p: 2, q: 1 }))?;
    ensure_eq("L(4;1)", classify(&catalog::lens_fan(2, 0, -1).unwrap()), Ok(TopologicalType::LensSpace { p: 4, q: 1 }))?;
    ensure_eq("lens_normalize(4,3)", lens_normalize(4, 3), Ok((4, 1)))?;
    // (3, 1, −2): q₁ − q₂ = 3 shares a factor with 6 and the second cone is not smooth.
    let x = catalog::lens_fan(3, 1, -2).unwrap();
    let got = classify(&x);
    let documented = got == Err(ClassifyError::PreconditionFailed(Predicate::SmoothTopologicalCore))
        && lens_normalize(6, 3) == Err(LensError::NotCoprime { p: 6, q: 3 });
    Ok(if documented {
        Status::Red("(3,1,-2): the cone is not smooth and gcd(6,3) = 3, no lens space L(6;3) exists".into())
    } else {
        Status::Fail(format!("(3,1,-2): unexpected outcome {got:?}"))
    })
}

fn cohomology_dimensions() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..250 {
        let (l, sig) = common::random_involution(&mut rng, 6);
        ensure_eq("signature", signature(&l), sig)?;
        ensure_eq("dim H1", cohomology(&l, 1).unwrap().dim, sig.q - sig.r)?;
        ensure_eq("dim H2", cohomology(&l, 2).unwrap().dim, sig.p - sig.r)?;
        let d = decompose(&l);
        let u = &d.basis_change;
        ensure(u.det().abs() == 1, || format!("sample {i}: basis change not unimodular"))?;
        ensure(l.tau().mul(u) == u.mul(&canonical_block(sig)), || format!("sample {i}: not in block form"))?;
    }
    Ok(())
}

fn winding_resolution() -> Result<Status, String> {
    let mut rng = StdRng::seed_from_u64(6);
    let (mut total, mut singular) = (0, 0);
    for i in 0..120 {
        let x = common::random_smooth_variety(&mut rng, 4);
        let b = x.resolve_winding_barycentric();
        ensure(b.properly_wound(), || format!("sample {i}: barycentric output not properly wound"))?;
        let w = x.resolve_winding_blowup().map_err(|e| format!("sample {i}: {e}"))?;
        ensure(w.properly_wound(), || format!("sample {i}: Bl_W output not properly wound"))?;
        ensure(
            w.canonical_fibre().fan().cones() == x.canonical_fibre().fan().cones(),
            || format!("sample {i}: Bl_W changed the canonical fibre"),
        )?;
        let unwound = w.unwinding().0;
        ensure(unwound.smooth_topological_core(), || format!("sample {i}: unwinding of Bl_W has singular core"))?;
        total += 1;
        if !unwound.is_smooth() {
            singular += 1;
        }
    }
    // Bl_W leaves cones without invariant faces alone. When two of their rays
    // lie outside ker(1−τ) ⊕ ker(1+τ), they are singular in the unwound lattice.
    Ok(if singular == 0 {
        Status::Pass
    } else {
        Status::Red(format!(
            "unwinding of Bl_W is singular away from the topological core in {singular} of {total} samples; \
             properly wound, fibre preserved and smooth core hold for all"
        ))
    })
}

fn polynomial_identities() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    for i in 0..120 {
        let x = common::random_smooth_variety(&mut rng, 4);
        let sig = x.signature();
        let e = e_polynomial(&x);
        let a = a_polynomial(&x).map_err(|e| e.to_string())?;
        ensure_eq(&format!("sample {i}: a from e"), a_from_e(&e, sig), Some(a))?;
        let f = e_polynomial(&x.canonical_fibre());
        let one = CountPolynomial::constant(1);
        let e_x1 = e.substitute(&[CountPolynomial::x(), one.clone(), CountPolynomial::z(), CountPolynomial::t()]);
        ensure_eq(&format!("sample {i}: fibre e"), f, e_x1)?;
        let ds = dehn_sommerville_check(&x).map_err(|e| e.to_string())?;
        ensure(ds.passed, || format!("sample {i}: Dehn-Sommerville {ds:?}"))?;
        let beta = virtual_poincare(&x);
        ensure_eq(&format!("sample {i}: beta(0)"), beta.eval([0, 0, 0, 0]), 1)?;
        let bound = (1 << (sig.q - sig.r)) * (sig.p as Int + 1);
        ensure(beta.total() >= bound, || format!("sample {i}: total Betti {} < {bound}", beta.total()))?;
    }
    Ok(())
}

fn orientability() -> Check {
    ensure_eq("split P2", orientable(&catalog::split_p2()), Ok(false))?;
    ensure_eq("split P1xP1", orientable(&catalog::split_p1xp1()), Ok(true))?;
    ensure_eq("Res P1", orientable(&catalog::res_p1()), Ok(true))?;
    ensure_eq("Klein surface", orientable(&catalog::klein_surface()), Ok(false))?;
    let mut rng = StdRng::seed_from_u64(8);
    let mut surfaces: Vec<RealToricVariety> =
        catalog::low_dimensional_golden_set().into_iter().map(|(_, x)| x).filter(|x| x.dim() == 2).collect();
    while surfaces.len() < 80 {
        let x = common::random_smooth_variety(&mut rng, 2);
        if x.dim() == 2 {
            surfaces.push(x);
        }
    }
    for x in surfaces.iter().filter(|x| x.has_real_point()) {
        use TopologicalType::*;
        let o = orientable(x).map_err(|e| e.to_string())?;
        let t = classified(x)?;
        let consistent = match t {
            Torus(2) | Sphere(2) => o,
            ProjectivePlane | KleinBottle | NonOrientableSurface(_) => !o,
            _ => false,
        };
        ensure(consistent, || format!("orientable = {o} but classified as {t}"))?;
    }
    Ok(())
}

/// The realizability constraints, restated independently of the library.
fn oracle_violations(c: [Int; 6]) -> Vec<RealizationConstraint> {
    use RealizationConstraint::*;
    let [xz, xy, x, z, y, one] = c;
    let mut v = Vec::new();
    if xz != 1 {
        v.push(OpenOrbit);
    }
    if one != 2 * x {
        v.push(FixedPoints);
    }
    if z + xy + x != y + one {
        v.push(RayCount);
    }
    if z < xy + x {
        v.push(ExceptionalOrbits);
    }
    if y + one < 3 {
        v.push(Completeness);
    }
    if xy + x == 0 && z != 4 {
        v.push(PillowCase);
    }
    v
}

fn realizability() -> Check {
    let mut valid = 0;
    for n in 0..5usize.pow(6) {
        let mut c = [0 as Int; 6];
        let mut k = n;
        for slot in c.iter_mut() {
            *slot = (k % 5) as Int;
            k /= 5;
        }
        let e = EStarCoefficients::from_array(c);
        let violated = oracle_violations(c);
        match realize_e_star(&e) {
            Ok(x) => {
                ensure(violated.is_empty(), || format!("{c:?} realized despite {violated:?}"))?;
                ensure_eq(&format!("{c:?} round trip"), e_star_polynomial(&x), e.to_polynomial())?;
                ensure(x.is_smooth() && x.compact_real_locus(), || format!("{c:?}: output not smooth and compact"))?;
                valid += 1;
            }
            Err(RealizeError::ConstraintViolated(k)) => {
                ensure(violated.contains(&k), || format!("{c:?} rejected for {k:?}, violations {violated:?}"))?;
            }
        }
    }
    ensure(valid > 0, || "no valid tuples".into())
}

fn corpus_211() -> Vec<RealToricVariety> {
    let mut out = vec![pillow_case(), catalog::res_p1_times_p1()];
    for n in 0..5usize.pow(6) {
        let mut c = [0 as Int; 6];
        let mut k = n;
        for slot in c.iter_mut() {
            *slot = (k % 5) as Int;
            k /= 5;
        }
        if let Ok(x) = realize_e_star(&EStarCoefficients::from_array(c)) {
            out.push(x);
        }
    }
    out
}

fn classification_invariance() -> Result<Status, String> {
    let mut changed = Vec::new();
    let corpus = corpus_211();
    for x in &corpus {
        let before = classified(x)?;
        let e = e_star_polynomial(x);
        for (name, y) in [("barycentric", x.resolve_winding_barycentric()), ("Bl_W", x.resolve_winding_blowup().unwrap())]
        {
            let after = classified(&y)?;
            let same_e = e_star_polynomial(&y) == e;
            if same_e && after != before {
                return Ok(Status::Fail(format!("{name} kept e* = {e} but changed {before} to {after}")));
            }
            if after != before {
                changed.push(format!("{name}: {e} ({before}) -> {}", e_star_polynomial(&y)));
            }
        }
    }
    if changed.is_empty() {
        return Ok(Status::Pass);
    }
    // Census sanity on the same corpus.
    for x in &corpus {
        let c = circle_action_census(x).map_err(|e| e.to_string())?;
        ensure(c.u as Int >= 0, || "negative exceptional count".into())?;
    }
    Ok(Status::Red(format!(
        "{} of {} resolutions change the real locus, e.g. {}; classification is unchanged whenever e* is",
        changed.len(),
        2 * corpus.len(),
        changed[0]
    )))
}

fn checked(f: fn() -> Check) -> impl Fn() -> Status {
    move || match f() {
        Ok(()) => Status::Pass,
        Err(e) => Status::Fail(e),
    }
}

fn graded(f: fn() -> Result<Status, String>) -> impl Fn() -> Status {
    move || f().unwrap_or_else(Status::Fail)
}

type Criterion = (u32, &'static str, Expect, Box<dyn Fn() -> Status>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "curve and surface golden set", Expect::Pass, Box::new(checked(golden_set))),
        (2, "Betti numbers", Expect::Pass, Box::new(checked(betti_numbers))),
        (3, "e* census of the pillow case", Expect::Pass, Box::new(checked(e_star_census))),
        (4, "lens spaces", Expect::KnownRed, Box::new(graded(lens_spaces))),
        (5, "cohomology dimensions", Expect::Pass, Box::new(checked(cohomology_dimensions))),
        (6, "winding resolution", Expect::KnownRed, Box::new(graded(winding_resolution))),
        (7, "polynomial identities", Expect::Pass, Box::new(checked(polynomial_identities))),
        (8, "orientability", Expect::Pass, Box::new(checked(orientability))),
        (9, "realizability round trip", Expect::Pass, Box::new(checked(realizability))),
        (10, "classification invariance", Expect::KnownRed, Box::new(graded(classification_invariance))),
    ];
    let mut unexpected = 0;
    for (n, title, expect, run) in criteria {
        let start = Instant::now();
        let status = run();
        let ms = start.elapsed().as_millis();
        let line = match (&status, &expect) {
            (Status::Pass, _) => format!("PASS  {title} ({ms} ms)"),
            (Status::Red(why), Expect::KnownRed) => format!("FAIL  {title} [known red: {why}] ({ms} ms)"),
            (Status::Red(why), Expect::Pass) | (Status::Fail(why), _) => {
                unexpected += 1;
                format!("FAIL  {title}: {why} ({ms} ms)")
            }
        };
        println!("criterion {n:>2}: {line}");
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
