//! Degree-(0,1,rest) splitting of a circle field and the Parseval-type
//! decomposition of the Gagliardo seminorm it induces.
//!
//! cargo run --release --example spectral_split

use fracmcf::field::{Domain, HeightField};
use fracmcf::kernel::seminorm_sq;
use fracmcf::spectral::{decompose, eigenvalue};
use fracmcf::FractionalOrder;

fn main() {
    let s = FractionalOrder::new(0.5).unwrap();
    let u = HeightField::from_fn(Domain::Circle, 256, |t| {
        0.1 + 0.3 * t.cos() - 0.2 * t.sin() + 0.15 * (3.0 * t).cos()
    })
    .unwrap();
    let sp = decompose(&u).unwrap();
    println!("a  (degree 0)  = {:.8}", sp.a);
    println!("b  (degree 1)  = [{:.8}, {:.8}]", sp.b[0], sp.b[1]);
    println!("remainder sup  = {:.4e}", sp.remainder.sup_norm());

    let total = seminorm_sq(&u, s).unwrap();
    let rem = seminorm_sq(&sp.remainder, s).unwrap();
    let l1 = eigenvalue(1, s).unwrap();
    let bsq = sp.b[0] * sp.b[0] + sp.b[1] * sp.b[1];
    println!("\n[u]^2                    = {total:.10}");
    println!("lambda_1 |b|^2 + [R]^2   = {:.10}", l1 * bsq + rem);
    println!("relative gap             = {:.2e}", (total - l1 * bsq - rem).abs() / total);
}
