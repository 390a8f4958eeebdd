//! A cross-section supplied as JSON: the flat torus T² = ℝ²/2πℤ², so the
//! cone is three-dimensional with b1(N) = 2.

use conic_spectra::indicial::check_hypothesis_0notindroot;
use conic_spectra::load_cross_section;
use conic_spectra::riesz::{riesz_interval, sobolev_report, Injectivity, TopologyInput};

// |m|² for m ∈ ℤ² \ 0, below 10
const TORUS: &str = r#"{
  "dim": 2,
  "betti": [1, 2, 1],
  "spectra": {
    "0": {"harmonic_dim": 1, "truncation": 10,
          "coexact": [[1, 4], [2, 4], [4, 4], [5, 8], [8, 4], [9, 4]]},
    "1": {"harmonic_dim": 2, "truncation": 10,
          "exact": [[1, 4], [2, 4], [4, 4], [5, 8], [8, 4], [9, 4]],
          "coexact": [[1, 4], [2, 4], [4, 4], [5, 8], [8, 4], [9, 4]]},
    "2": {"harmonic_dim": 1, "truncation": 10,
          "exact": [[1, 4], [2, 4], [4, 4], [5, 8], [8, 4], [9, 4]]}
  }
}"#;

fn main() -> conic_spectra::Result<()> {
    let cs = load_cross_section(TORUS)?;
    let topo = TopologyInput {
        e_injective_low: Injectivity::Yes,
        e_injective_high: Injectivity::Yes,
        ..TopologyInput::default()
    };
    for q in 0..=3 {
        let h = check_hypothesis_0notindroot(&cs, q)?;
        if !h.pass() {
            println!("q = {q}: 0 is an indicial root (bullets {:?})", h.failing());
            continue;
        }
        let r = riesz_interval(&cs, q, &topo)?;
        println!(
            "q = {q}: nu0 = {}, {:?}",
            r.nu0,
            r.sharp_interval.certified().map(|i| i.to_string())
        );
    }
    let s = sobolev_report(3, Some((&cs, 1, &topo)))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&s.to_json()).expect("serializable")
    );
    Ok(())
}
