//! Mode sum of the model resolvent kernel on the cone over S³,
//! with the checks each mode must pass.

use conic_spectra::cone_kernels::{
    ktilde_moment, model_kernel, verify_mode_ode, wronskian_jump, zf_limit_check,
};
use conic_spectra::sphere_preset;

fn main() -> conic_spectra::Result<()> {
    let cs = sphere_preset(4, 16)?;
    let k = model_kernel(&cs, 2, 0.5, 1.0, 6.0, 1.0)?;
    println!("q = 2, kappa = 0.5, kappa' = 1, modes up to nu = 6");
    for m in &k.modes {
        println!(
            "  nu = {:<4} rank {:>4}  g = {:.6e}",
            m.nu_exact, m.rank, m.g
        );
    }
    println!("sum {:.12}, tail bound {:.2e}", k.value, k.tail());

    // a tighter tolerance needs more modes
    match model_kernel(&cs, 2, 0.5, 1.0, 6.0, 1e-6) {
        Ok(k) => println!("tolerance 1e-6 met with tail {:.1e}", k.tail()),
        Err(e) => println!("tolerance 1e-6: {e}"),
    }

    let ode = verify_mode_ode(1.5, 2.0, 1e-2, &[0.5, 1.0, 3.0])?;
    println!("ODE residuals {:?}, orders {:?}", ode.residuals, ode.orders);
    println!(
        "jump at kappa0 = 2: {:.12} (expect -0.5)",
        wronskian_jump(1.5, 2.0)?
    );

    let zf = zf_limit_check(1.0, 2.0, &[1e-1, 1e-2, 1e-3])?;
    println!("zf limit {}: deviations {:?}", zf.limit, zf.deviations);

    for nu in [0.5, 2.0, 6.0] {
        let m = ktilde_moment(nu)?;
        println!(
            "moment nu = {nu}: {:.14} vs {:.14}",
            m.quadrature, m.closed_form
        );
    }
    Ok(())
}
