//! Log-space modified Bessel functions: values far outside f64 range,
//! the Wronskian, and the half-integer closed forms.

use conic_spectra::bessel::{bessel_i, bessel_k, k_half_integer, log_bessel_ik};

fn main() -> conic_spectra::Result<()> {
    for (nu, x) in [
        (0.0, 1.0),
        (2.5, 0.1),
        (40.0, 3.0),
        (500.0, 1e3),
        (1.0, 5e4),
    ] {
        let l = log_bessel_ik(nu, x)?;
        let w = l.wronskian() * x + 1.0;
        println!(
            "nu = {nu:>6}, x = {x:>8}: ln I = {:>14.6e}, ln K = {:>14.6e}, x*W + 1 = {w:.1e}",
            l.ln_i, l.ln_k
        );
    }

    let i = bessel_i(1.0, 2.0)?;
    let k = bessel_k(1.0, 2.0)?;
    println!("I_1(2) = {:.15} (+- {:.1e})", i.value, i.abs_error_bound);
    println!("K_1(2) = {:.15} (+- {:.1e})", k.value, k.abs_error_bound);

    let x = 0.7;
    let k52 = log_bessel_ik(2.5, x)?.ln_k.exp();
    println!(
        "K_5/2({x}) = {k52:.15}, closed form {:.15}",
        k_half_integer(2, x)
    );
    Ok(())
}
