//! Endpoint asymptotics of the nonlocal quantities: s H_B^s approaches
//! 2 pi as s -> 0, and the (1-s)-scaled seminorm approaches a multiple of
//! the Dirichlet energy as s -> 1.
//!
//! cargo run --release --example asymptotics

use fracmcf::diagnostics::asymptotic_scan;
use fracmcf::field::{Domain, HeightField};

fn main() {
    let u = HeightField::from_fn(Domain::Circle, 256, |t| t.cos()).unwrap();
    let grid = [
        1e-3, 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.999,
    ];
    let rows = asymptotic_scan(&u, &grid).unwrap();
    println!(
        "{:>7} {:>13} {:>13} {:>13} {:>15}",
        "s", "s*H_B", "(1-s)*H_B", "s*[u]^2/L2", "(1-s)*[u]^2/D"
    );
    for r in &rows {
        println!(
            "{:>7.3} {:>13.6} {:>13.6} {:>13.6} {:>15.6}",
            r.s,
            r.s_ball_curvature,
            r.one_minus_s_ball_curvature,
            r.s_seminorm_over_l2,
            r.one_minus_s_seminorm_over_grad
        );
    }
    println!("\n(2 pi = {:.6}; the last column tends to the u -> cos limit 2)", 2.0 * std::f64::consts::PI);
}
