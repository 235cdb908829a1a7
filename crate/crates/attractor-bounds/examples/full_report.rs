//! End-to-end pipeline: simulate to estimate δ, then feed it into the
//! dimension bound and cross-check the empirical q_m against the majorant.
//! This mirrors what `attractor-bounds report --config ...` produces.
//!
//! ```bash
//! cargo run --release -p attractor-bounds --example full_report
//! ```

use attractor_bounds::bounds::{build_report, CGLParams};
use attractor_bounds::geometry::Domain;
use attractor_bounds::sim::{InitialCondition, SimConfig, Simulation};
use attractor_bounds::spectrum::MethodConstants;

fn main() {
    let domain = Domain::box_domain(vec![1.0]).unwrap();
    let params = CGLParams {
        lambda: 1.0,
        alpha: 0.5,
        kappa: 1.0,
        beta: 1.0,
        gamma: 25.0,
    };
    let consts = MethodConstants::new(domain.dim(), 1.0 / 24.0, 1.0).unwrap();

    let cfg = SimConfig {
        domain: domain.clone(),
        modes_per_axis: vec![24],
        dt: 2.5e-3,
        t_end: 30.0,
        burn_in: 5.0,
        initial_condition: InitialCondition::RandomSmooth {
            seed: 7,
            decay_rate: 0.5,
        },
        tangent_count: 8,
        reorth_interval: 10,
        overflow_guard: 1e8,
    };
    eprintln!("simulating to t = {} ...", cfg.t_end);
    let mut sim = Simulation::new(cfg, params).unwrap();
    let out = sim.run().unwrap();

    let report = build_report(&domain, &params, out.summary.delta, &consts, None).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let n = domain.dim() as f64;
    let ok = out.summary.qm.iter().all(|entry| {
        entry.q_m <= -report.a * (entry.m as f64).powf((n + 2.0) / n) + report.b
    });
    println!(
        "\nempirical q_m <= -A m^{{(n+2)/n}} + B for all m = 1..{}: {}",
        out.summary.qm.len(),
        ok
    );
    println!(
        "dimension bound d* = {:.4} (baseline {:.4})",
        report.d_star, report.d_star_baseline
    );
}
