//! Indicial roots of the Hodge Laplacian on a cone over a round sphere.
//!
//! ```text
//! cargo run --example indicial_sphere -- 5 2
//! ```

use conic_spectra::indicial::{indicial_set, nu0, Family};
use conic_spectra::sphere_preset;

fn main() -> conic_spectra::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let q: i64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);

    let cs = sphere_preset(n, 16)?;
    let radius = n as f64 / 2.0 + 3.0;
    let set = indicial_set(&cs, q, radius)?;
    println!("S^{} cone, q = {q}, roots with |nu| <= {radius}", n - 1);
    for f in Family::ALL {
        let roots: Vec<String> = set.family_values(f).iter().map(|v| v.to_string()).collect();
        println!("  {f}: {{{}}}", roots.join(", "));
    }
    println!("nu0 = {}", nu0(&cs, q)?);
    Ok(())
}
