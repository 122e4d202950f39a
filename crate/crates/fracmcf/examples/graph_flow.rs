//! Fractional mean curvature flow of a periodic graph: convergence to a
//! flat line at the rate of the mode-1 eigenvalue of the periodic-line
//! Riesz operator.
//!
//! cargo run --release --example graph_flow

use fracmcf::field::{Domain, HeightField};
use fracmcf::kernel::riesz_apply;
use fracmcf::run::{run_graph_flow, FlowConfig, FlowKind};
use fracmcf::FractionalOrder;
use std::f64::consts::PI;

fn main() {
    let config = FlowConfig {
        t_end: 0.045,
        cadence: 8,
        ..FlowConfig::defaults(FlowKind::GraphMcf)
    };
    println!(
        "running graph flow: N = {}, s = {}, u0 = 0.01 cos 2 pi x",
        config.n, config.s
    );
    let out = run_graph_flow(&config).unwrap();

    println!("\n{:>9} {:>13} {:>13} {:>11}", "t", "||u-mean||", "sup|u'|", "deficit");
    for r in out.records.iter().step_by(out.records.len() / 10) {
        println!(
            "{:>9.5} {:>13.5e} {:>13.5e} {:>11.3e}",
            r.t,
            r.l2_sq.sqrt(),
            r.sup_grad,
            r.per_s_deficit
        );
    }

    let s = FractionalOrder::new(config.s).unwrap();
    let u = HeightField::from_fn(Domain::PeriodicLine, config.n, |x| (2.0 * PI * x).cos()).unwrap();
    let v = riesz_apply(&u, s).unwrap();
    let mu = u.dot(&v) / u.dot(&u);
    let fit = out
        .rate_fits
        .iter()
        .find(|(n, _)| n == "l2_deviation")
        .map(|(_, f)| *f)
        .unwrap();
    println!("\nfitted L2 decay rate: {:.3} (r^2 = {:.6})", fit.rate, fit.r_squared);
    println!("mode-1 eigenvalue:    {mu:.3}");
    println!("final mean (the flat limit level): {:.6e}", out.records.last().unwrap().mean.unwrap());
}
