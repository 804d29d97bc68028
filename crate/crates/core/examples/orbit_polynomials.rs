//! Orbit-counting polynomials for the catalog of curves and surfaces.

use retoric::catalog;
use retoric::invariants::{a_polynomial, dehn_sommerville_check, e_polynomial, e_star_polynomial, virtual_poincare};

fn main() {
    for (name, x) in catalog::low_dimensional_golden_set() {
        let a = a_polynomial(&x).map_or("n/a".to_string(), |a| a.to_string());
        let ds = dehn_sommerville_check(&x).map_or("n/a".to_string(), |r| r.passed.to_string());
        println!(
            "{name:<26} {:<10} e = {:<16} e* = {:<14} a = {:<14} beta = {:<14} dehn-sommerville: {ds}",
            x.signature().to_string(),
            e_polynomial(&x).to_string(),
            e_star_polynomial(&x).to_string(),
            a,
            virtual_poincare(&x).to_string(),
        );
    }
}
