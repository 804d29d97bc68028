//! Names of the real loci of the catalog, with orientability.

use retoric::catalog;
use retoric::classify;
use retoric::invariants::orientable;

fn main() {
    for (name, x) in catalog::low_dimensional_golden_set() {
        let t = classify(&x).expect("catalog entries are compact and smooth");
        let o = orientable(&x).map_or("n/a".to_string(), |o| o.to_string());
        println!("{name:<26} {:<36} orientable: {o}", t.canonical().to_string());
    }
}
