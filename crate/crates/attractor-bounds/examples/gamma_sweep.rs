//! Sweep the gain γ and print d* next to the Melas-free baseline as CSV.
//! Redirect to a file for plotting.
//!
//! ```bash
//! cargo run --release -p attractor-bounds --example gamma_sweep > sweep.csv
//! ```

use attractor_bounds::bounds::{build_report, CGLParams, Regime};
use attractor_bounds::geometry::Domain;
use attractor_bounds::spectrum::MethodConstants;

fn main() {
    let domain = Domain::box_domain(vec![1.0, 1.0]).unwrap();
    let consts = MethodConstants::new(domain.dim(), 1.0 / 24.0, 1.0).unwrap();

    println!("gamma,regime,d_star,d_star_baseline,gap");
    for step in 0..=40 {
        let gamma = 15.0 + step as f64;
        let params = CGLParams {
            lambda: 1.0,
            alpha: 0.0,
            kappa: 1.0,
            beta: 0.0,
            gamma,
        };
        let report = build_report(&domain, &params, 0.0, &consts, None).unwrap();
        let regime = match report.regime {
            Regime::Trivial => "trivial",
            Regime::Nontrivial => "nontrivial",
        };
        println!(
            "{gamma},{regime},{},{},{}",
            report.d_star,
            report.d_star_baseline,
            report.d_star_baseline - report.d_star
        );
    }
}
