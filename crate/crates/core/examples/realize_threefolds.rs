//! Every realizable e*-polynomial of type (2;1)_1 with small coefficients, realized and named.

use retoric::classify::{circle_action_census, realize_e_star, EStarCoefficients};
use retoric::classify;

fn main() {
    let mut count = 0;
    for c in 0..5 {
        for b in 0..5 {
            for d in 0..=6 {
                for y in 0..=6 {
                    let e = EStarCoefficients::from_array([1, c, b, d, y, 2 * b]);
                    if e.violated_constraint().is_some() {
                        continue;
                    }
                    let x = realize_e_star(&e).expect("constraints hold");
                    let census = circle_action_census(&x).unwrap();
                    let t = classify(&x).unwrap();
                    println!("{:<28} t={} h={} u={}  {}", e.to_polynomial().to_string(), census.t, census.h, census.u, t.canonical());
                    count += 1;
                }
            }
        }
    }
    println!("{count} realizable polynomials");
}
