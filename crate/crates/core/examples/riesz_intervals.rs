//! Sharp L^p intervals for the Riesz transform on forms, Euclidean ends.

use conic_spectra::riesz::{riesz_interval, Injectivity, SharpInterval, TopologyInput};
use conic_spectra::sphere_preset;

fn main() -> conic_spectra::Result<()> {
    let n = 4;
    let cs = sphere_preset(n, 16)?;
    let injective = TopologyInput {
        e_injective_low: Injectivity::Yes,
        e_injective_high: Injectivity::Yes,
        ..TopologyInput::default()
    };

    for q in 0..=n as i64 {
        let r = riesz_interval(&cs, q, &injective)?;
        let sharp = r.sharp_interval.certified().map(|i| i.to_string());
        println!(
            "q = {q}: nu0 = {}, case {:?}, interval {}",
            r.nu0,
            r.case,
            sharp.unwrap_or("-".into())
        );
    }

    // an L² harmonic 1-form decaying like r^{-n+1}
    for decay in [1.0, 2.0] {
        let topo = TopologyInput {
            kernel_dim: 1,
            kernel_decay: Some(decay),
            ..injective.clone()
        };
        let r = riesz_interval(&cs, 1, &topo)?;
        let k = r.nu_ker.as_ref().expect("kernel present");
        println!(
            "kernel decay {decay}: nu_ker = {}, interval {}, no-resonance consistent: {}",
            k.value,
            r.sharp_interval
                .certified()
                .map_or("-".into(), |i| i.to_string()),
            k.no_resonance_consistent
        );
    }

    // without injectivity only the sufficient interval is available
    let r = riesz_interval(&cs, 0, &TopologyInput::default())?;
    if let SharpInterval::NotCertified { reason, candidates } = &r.sharp_interval {
        println!("q = 0: {reason}");
        for (label, i) in candidates {
            println!("  {label}: {i}");
        }
    }
    Ok(())
}
