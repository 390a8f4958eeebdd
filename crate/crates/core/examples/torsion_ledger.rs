//! Torsion of a conically degenerating family from its ledger.

use conic_spectra::sphere_preset;
use conic_spectra::torsion::{
    assemble_log_det_expansion, check_lemma_conditions, check_modified_witt, DegenerationLedger,
};

const LEDGER: &str = r#"{
  "n": 3,
  "degrees": [
    {"q": 0, "zeta_m_at_0": 0.0, "log_det_omega0": 1.25, "log_det_m": -0.5, "kernel_dims": [1, 0, 1]},
    {"q": 1, "zeta_m_at_0": 0.0, "small_eigs": [0.004], "log_det_omega0": 2.0, "log_det_m": 0.75, "kernel_dims": [0, 1, 0]},
    {"q": 2, "zeta_m_at_0": 0.5, "log_det_omega0": -1.0, "log_det_m": 0.25, "kernel_dims": [0, 0, 0]},
    {"q": 3, "zeta_m_at_0": 0.0, "log_det_omega0": 0.5, "log_det_m": 0.0, "kernel_dims": [1, 0, 1]}
  ]
}"#;

fn main() -> conic_spectra::Result<()> {
    let ledger = DegenerationLedger::from_json(LEDGER)?;
    for eps in [0.1, 0.01] {
        let t = assemble_log_det_expansion(&ledger, eps)?;
        println!(
            "eps = {eps}: log T = {:.6} = {:.4} log eps + {:.4} (small) + {:.4} + {:.4}",
            t.log_t, t.log_epsilon_coefficient, t.small_eig_contribution, t.log_t_omega0, t.log_t_m
        );
    }

    for n in [3, 5, 7] {
        let cs = sphere_preset(n, 8)?;
        let witt = check_modified_witt(&cs)?;
        let lemma = check_lemma_conditions(&cs)?;
        println!(
            "S^{}: Witt {} ({}), lemma a {} b {}",
            n - 1,
            witt.holds,
            witt.detail,
            lemma.condition_a(),
            lemma.condition_b()
        );
    }
    Ok(())
}
