//! Lens spaces glued from two exchanged-pair cones.

use retoric::catalog;
use retoric::classify::lens_normalize;
use retoric::classify;

fn main() {
    for (p, q1, q2) in [(1, 0, -1), (2, 0, -1), (3, 0, -1), (4, 1, -2), (5, 1, -2), (3, 1, -2)] {
        let x = catalog::lens_fan(p, q1, q2).unwrap();
        match classify(&x) {
            Ok(t) => println!("({p}, {q1}, {q2}) -> {t}"),
            Err(e) => println!("({p}, {q1}, {q2}) -> {e}"),
        }
    }
    for (p, q) in [(8, 5), (10, 7), (6, 3)] {
        println!("normal form of L({p};{q}): {:?}", lens_normalize(p, q));
    }
}
