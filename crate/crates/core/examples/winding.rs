//! Winding locus, its two resolutions, and the unwinding.

use retoric::catalog;

fn main() {
    let x = catalog::res_p1_times_p1();
    println!("type {}, properly wound: {}", x.signature(), x.properly_wound());
    for z in x.codim2_winding_locus().unwrap() {
        println!("winding component {:?} with centre {:?}", z.cone.generators(), z.barycenter);
    }
    let blown = x.resolve_winding_blowup().unwrap();
    let bary = x.resolve_winding_barycentric();
    for (name, y) in [("Bl_W", &blown), ("barycentric", &bary)] {
        println!(
            "{name}: {} maximal cones, properly wound: {}, same fibre: {}",
            y.fan().maximal_cones().len(),
            y.properly_wound(),
            y.canonical_fibre() == x.canonical_fibre()
        );
    }
    let (unwound, inclusion) = blown.unwinding();
    println!("unwound type {}, index of the inclusion {}", unwound.signature(), inclusion.det().abs());
    println!("unwinding has a smooth topological core: {}", unwound.smooth_topological_core());
}
