//! Periodic perimeter deficit of a graph and its two-sided comparison with
//! the Gagliardo seminorm (the rigidity sandwich).
//!
//! cargo run --release --example graph_deficit

use fracmcf::field::{Domain, HeightField};
use fracmcf::graph::{periodic_perimeter_deficit, GraphFlowState};
use fracmcf::kernel::seminorm_sq;
use fracmcf::FractionalOrder;
use std::f64::consts::PI;

fn main() {
    let s = FractionalOrder::new(0.5).unwrap();
    let u = HeightField::from_fn(Domain::PeriodicLine, 256, |x| 0.05 * (2.0 * PI * x).sin()).unwrap();
    let state = GraphFlowState::new(u.clone(), s, 0.0).unwrap();

    let d = periodic_perimeter_deficit(&state, 0.0).unwrap();
    let sem = seminorm_sq(&u, s).unwrap();
    let g = u.l2_stats().unwrap().sup_grad;
    let lo = sem / (2.0 * (1.0 + 4.0 * g * g).powf((2.0 + 0.5) / 2.0));
    let hi = sem / 2.0;

    println!("u = 0.05 sin 2 pi x, s = 0.5, sup|u'| = {g:.4}");
    println!("lower bound  [u]^2 / (2 (1+4|u'|^2)^{{(2+s)/2}}) = {lo:.10}");
    println!("deficit      Per_s^p(E) - Per_s^p(half-space)  = {d:.10}");
    println!("upper bound  [u]^2 / 2                         = {hi:.10}");
    println!("inside the sandwich: {}", lo <= d && d <= hi);

    // the reference level of the half-space does not enter
    let d2 = periodic_perimeter_deficit(&state, 123.0).unwrap();
    println!("independent of the drawn reference level: {}", d == d2);
}
