//! Zeta-regularised determinant of the circle Laplacian.

use std::f64::consts::PI;

use conic_spectra::torsion::{circle_fixture, zeta_from_eigenvalues};

fn main() -> conic_spectra::Result<()> {
    for length in [2.0 * PI, 1.0, 10.0] {
        let count = 64;
        let eigs = circle_fixture(length, count);
        let complete = (2.0 * PI * (count + 1) as f64 / length).powi(2);
        // heat trace ~ L/√(4πt), one zero mode
        let heat = [length / (4.0 * PI).sqrt(), 0.0];
        let z = zeta_from_eigenvalues(&eigs, complete, &heat, 1, 1, 1e-6)?;
        println!(
            "L = {length:.4}: zeta(0) = {}, zeta'(0) = {:.12} +- {:.1e}, exact {:.12}",
            z.zeta0,
            z.zeta_prime0,
            z.zeta_prime0_error,
            -2.0 * length.ln() + 0.0
        );
    }
    Ok(())
}
