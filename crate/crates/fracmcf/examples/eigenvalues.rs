//! Eigenvalues of the hypersingular Riesz operator on the circle and the
//! two spectral identities they satisfy.
//!
//! cargo run --release --example eigenvalues

use fracmcf::spectral::eigenvalue;
use fracmcf::sphere::ball_curvature;
use fracmcf::FractionalOrder;

fn main() {
    for s in [0.3, 0.5, 0.7] {
        let s = FractionalOrder::new(s).unwrap();
        let hb = ball_curvature(s);
        println!("s = {}: H_B^s = {hb:.10}", s.get());
        for k in 0..=6 {
            println!("  lambda_{k} = {:.10}", eigenvalue(k, s).unwrap());
        }
        let l1 = eigenvalue(1, s).unwrap();
        let l2 = eigenvalue(2, s).unwrap();
        println!(
            "  identity lambda_1 = s H_B: relative gap {:.2e}",
            (l1 / (s.get() * hb) - 1.0).abs()
        );
        println!(
            "  identity lambda_2/lambda_1 = 4/(2-s): relative gap {:.2e}\n",
            (l2 / l1 / (4.0 / (2.0 - s.get())) - 1.0).abs()
        );
    }
}
