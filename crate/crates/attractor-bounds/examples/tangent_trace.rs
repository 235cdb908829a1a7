//! Propagate tangent frames along a chaotic-regime trajectory and compare
//! the time-averaged trace q_m against the analytic majorant
//! −A m^{(n+2)/n} + B for every frame count m.
//!
//! ```bash
//! cargo run --release -p attractor-bounds --example tangent_trace
//! ```

use attractor_bounds::bounds::{constant_a, constant_b, CGLParams};
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
        t_end: 20.0,
        burn_in: 4.0,
        initial_condition: InitialCondition::RandomSmooth {
            seed: 7,
            decay_rate: 0.5,
        },
        tangent_count: 8,
        reorth_interval: 10,
        overflow_guard: 1e8,
    };
    let mut sim = Simulation::new(cfg, params).unwrap();
    let out = sim.run().unwrap();

    let (v, inertia) = (domain.volume(), domain.moment_of_inertia());
    let a = constant_a(&consts, v, params.lambda);
    let b_emp = constant_b(&consts, v, inertia, &params, out.summary.delta).unwrap();
    let n = domain.dim() as f64;

    println!("measured delta = {:.6}", out.summary.delta);
    println!(
        "Lieb-Thirring witness = {:.6} (configured C_* = {})",
        out.summary.lieb_thirring_witness.unwrap(),
        consts.c_star
    );
    println!("\n{:>4} {:>14} {:>14} {:>14}", "m", "q_m", "-A m^p + B", "lyap_rate");
    for entry in &out.summary.qm {
        let bound = -a * (entry.m as f64).powf((n + 2.0) / n) + b_emp;
        println!(
            "{:>4} {:>14.4} {:>14.4} {:>14.4}",
            entry.m, entry.q_m, bound, entry.log_volume_rate
        );
    }
    let x_star = (b_emp / a).powf(n / (n + 2.0));
    println!("\nmajorant crosses zero at x* = {x_star:.3}");
}
