//! Compute the attractor dimension bound for one parameter point and print
//! the full report, including the Melas-free baseline it improves on.
//!
//! ```bash
//! cargo run --release -p attractor-bounds --example dimension_report
//! ```

use attractor_bounds::bounds::{build_report, melas_gamma_threshold, CGLParams};
use attractor_bounds::geometry::Domain;
use attractor_bounds::spectrum::MethodConstants;

fn main() {
    let domain = Domain::box_domain(vec![1.0, 1.0]).unwrap();
    let params = CGLParams {
        lambda: 1.0,
        alpha: 0.0,
        kappa: 1.0,
        beta: 0.0,
        gamma: 25.0,
    };
    let consts = MethodConstants::new(domain.dim(), 1.0 / 24.0, 1.0).unwrap();

    println!(
        "gamma threshold for guaranteed-trivial dynamics: {:.6}",
        melas_gamma_threshold(&params, &domain, &consts)
    );

    let report = build_report(&domain, &params, 0.0, &consts, None).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    println!(
        "\nimprovement over the baseline: {:.6} dimensions",
        report.d_star_baseline - report.d_star
    );

    // The same inputs with a sub-critical gain: the attractor is {0}.
    let mut trivial = params;
    trivial.gamma = 10.0;
    let report = build_report(&domain, &trivial, 0.0, &consts, None).unwrap();
    println!("\ngamma = 10 (below lambda*Lambda1):");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
