//! Eigenvalues of a glued family converging to those of its conic limit.
//!
//! ```text
//! cargo run --release --example spectral_convergence -- 0.6
//! ```

use conic_spectra::torsion::spectral_convergence_demo;

fn main() -> conic_spectra::Result<()> {
    let a: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.8);
    let eps = [0.2, 0.1, 0.05, 0.025];
    let t = spectral_convergence_demo(a, &eps, 5, 200)?;
    println!("a = {a}, modified Witt: {}", t.modified_witt);
    for tr in &t.tracked {
        let d: Vec<String> = tr.distances.iter().map(|d| format!("{d:.2e}")).collect();
        println!(
            "l = {} k = {}: lambda0 = {:.8} (+- {:.1e}), |lambda_eps - lambda0| = [{}] {}",
            tr.l,
            tr.index,
            tr.limit.value,
            tr.limit.discretization_error,
            d.join(", "),
            if tr.monotone {
                "decreasing"
            } else {
                "NOT decreasing"
            }
        );
    }
    Ok(())
}
