//! Stability inequalities for nearly spherical sets: the Alexandrov-type
//! estimate, the Lojasiewicz-type perimeter bound and the rigidity
//! comparison, measured on a normalized random state and on an ensemble.
//!
//! cargo run --release --example inequalities

use fracmcf::diagnostics::{alexandrov_check, fuglede_check, lojasiewicz_check, normalize};
use fracmcf::field::Domain;
use fracmcf::run::random_band_limited;
use fracmcf::sphere::{DeficitOptions, SphereFlowState};
use fracmcf::FractionalOrder;

fn main() {
    let s = FractionalOrder::new(0.5).unwrap();
    let opts = DeficitOptions::default();

    let u = random_band_limited(Domain::Circle, 256, 6, 0.03, 42);
    let state = normalize(&SphereFlowState::new(u, s, 0.0).unwrap()).unwrap();
    println!("single normalized state (N = 256, eps = 0.03, seed 42):");
    let a = alexandrov_check(&state).unwrap();
    println!(
        "  alexandrov:  [u]^2+||u||^2 = {:.6e} <= C * {:.6e}  (ratio {:.4}, flat-measure rhs {:.6e})",
        a.lhs,
        a.rhs,
        a.ratio,
        a.rhs_flat.unwrap()
    );
    let l = lojasiewicz_check(&state, &opts).unwrap();
    println!(
        "  lojasiewicz: deficit = {:.6e} <= K * {:.6e}  (ratio {:.4})",
        l.lhs, l.rhs, l.ratio
    );
    let f = fuglede_check(&state, &opts).unwrap();
    println!(
        "  rigidity:    deficit = {:.6e} <= c * [u]^2 = {:.6e}  (ratio {:.4})",
        f.lhs, f.rhs, f.ratio
    );

    println!("\nensemble of 20 normalized random states:");
    let mut min_a = f64::INFINITY;
    let mut min_l = f64::INFINITY;
    for seed in 0..20 {
        let u = random_band_limited(Domain::Circle, 128, 6, 0.03, 500 + seed);
        let st = normalize(&SphereFlowState::new(u, s, 0.0).unwrap()).unwrap();
        min_a = min_a.min(alexandrov_check(&st).unwrap().ratio);
        min_l = min_l.min(lojasiewicz_check(&st, &opts).unwrap().ratio);
    }
    println!("  min alexandrov ratio:  {min_a:.4}  (1/C empirical)");
    println!("  min lojasiewicz ratio: {min_l:.4}  (1/K empirical)");
}
