//! Enumerate Dirichlet eigenvalues of a box and compare the partial sums
//! against the Li-Yau, Melas, and doubled-spectrum lower bounds.
//!
//! ```bash
//! cargo run --release -p attractor-bounds --example eigenvalue_bounds
//! ```

use attractor_bounds::geometry::Domain;
use attractor_bounds::spectrum::{
    doubled_sum_lower_bound, enumerate_eigenvalues, li_yau_lower_bound, melas_lower_bound,
    melas_window_bound, verify_bounds, MethodConstants,
};

fn main() {
    let domain = Domain::box_domain(vec![1.0, 1.0]).unwrap();
    let n = domain.dim();
    println!(
        "unit square: admissible Melas window is (0, {:.6})",
        melas_window_bound(n).unwrap()
    );
    let consts = MethodConstants::new(n, 1.0 / 24.0, 1.0).unwrap();
    println!(
        "using c = {:.6} (M_n = {:.6}), Weyl constant C_n = {:.6}\n",
        consts.c, consts.m_n, consts.c_n
    );

    let m_max = 1000;
    let spectrum = enumerate_eigenvalues(&domain, m_max).unwrap();
    let sums = spectrum.partial_sums();
    let doubled_sums = spectrum.doubled().partial_sums();
    let (v, inertia) = (domain.volume(), domain.moment_of_inertia());

    println!(
        "{:>6} {:>16} {:>16} {:>16} {:>16} {:>16}",
        "m", "sum", "melas", "li_yau", "doubled_sum", "doubled_bound"
    );
    for m in [1, 2, 4, 8, 16, 64, 256, 1000] {
        println!(
            "{:>6} {:>16.6} {:>16.6} {:>16.6} {:>16.6} {:>16.6}",
            m,
            sums[m - 1],
            melas_lower_bound(&consts, v, inertia, m),
            li_yau_lower_bound(&consts, v, m),
            doubled_sums[m - 1],
            doubled_sum_lower_bound(&consts, v, inertia, m),
        );
    }

    let report = verify_bounds(&domain, m_max, &consts).unwrap();
    println!(
        "\nverification over m = 1..{m_max}: {}",
        if report.all_pass { "all rows pass" } else { "FAILURES PRESENT" }
    );
}
