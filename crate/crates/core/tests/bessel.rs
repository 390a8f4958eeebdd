use conic_spectra::bessel::{bessel_i, bessel_k, log_bessel_ik};

struct Row {
    nu: f64,
    x: f64,
    ln_i: f64,
    ln_k: f64,
}

fn oracle() -> Vec<Row> {
    include_str!("data/bessel_oracle.csv")
        .lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            Row {
                nu: v[0],
                x: v[1],
                ln_i: v[2],
                ln_k: v[3],
            }
        })
        .collect()
}

#[test]
fn logarithms_match_reference() {
    let mut worst = (0.0f64, 0.0, 0.0, "");
    for r in oracle() {
        let l = log_bessel_ik(r.nu, r.x).unwrap();
        // absolute error of the logarithm is the relative error of the value
        for (got, want, which) in [(l.ln_i, r.ln_i, "I"), (l.ln_k, r.ln_k, "K")] {
            let err = (got - want).abs();
            if err > worst.0 {
                worst = (err, r.nu, r.x, which);
            }
        }
    }
    println!(
        "worst log error {:e} at {} nu={} x={}",
        worst.0, worst.3, worst.1, worst.2
    );
    assert!(worst.0 < 1e-12, "{worst:?}");
}

#[test]
fn error_bounds_are_honest() {
    for r in oracle() {
        for (eval, want) in [(bessel_i(r.nu, r.x), r.ln_i), (bessel_k(r.nu, r.x), r.ln_k)] {
            let Ok(e) = eval else { continue };
            let exact = want.exp();
            assert!(
                (e.value - exact).abs() <= e.abs_error_bound,
                "nu={} x={} value={} exact={} bound={}",
                r.nu,
                r.x,
                e.value,
                exact,
                e.abs_error_bound
            );
            assert!(e.abs_error_bound <= 1e-10 * e.value.abs().max(1.0));
        }
    }
}
