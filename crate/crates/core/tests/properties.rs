mod common;

use std::f64::consts::PI;

use conic_spectra::cone_kernels::{wronskian_jump, ModeKernel};
use conic_spectra::indicial::{indicial_set, nu0, nu0_min_formula, Family};
use conic_spectra::riesz::{lower_endpoint, upper_endpoint};
use conic_spectra::surd::{int, rational};
use conic_spectra::torsion::{
    assemble_log_det_expansion, circle_fixture, radial_eigenvalues, zeta_from_eigenvalues,
    DegenerationLedger, DegreeData, Profile, RadialProblem,
};
use conic_spectra::{CrossSection, Surd};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cross_section(seed: u64) -> CrossSection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 2 + (seed % 6) as usize;
    common::random_cross_section(&mut rng, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_come_in_opposite_pairs(seed in any::<u64>(), q_frac in 0.0..1.0f64) {
        let cs = cross_section(seed);
        let n = cs.manifold_dim();
        let q = (q_frac * (n + 1) as f64) as i64;
        let set = indicial_set(&cs, q, 6.0).unwrap();
        for f in Family::ALL {
            let values = set.family_values(f);
            for v in &values {
                prop_assert!(values.contains(&v.neg()), "{f}: {v} without its negative");
            }
        }
    }

    #[test]
    fn hodge_star_swaps_the_first_two_families(seed in any::<u64>(), q_frac in 0.0..1.0f64) {
        let cs = cross_section(seed);
        let n = cs.manifold_dim() as i64;
        let q = (q_frac * (n + 1) as f64) as i64;
        let a = indicial_set(&cs, q, 6.0).unwrap();
        let b = indicial_set(&cs, n - q, 6.0).unwrap();
        prop_assert_eq!(a.family_values(Family::I1), b.family_values(Family::I2));
        prop_assert_eq!(a.family_values(Family::I2), b.family_values(Family::I1));
        prop_assert_eq!(a.family_values(Family::I3), b.family_values(Family::I3));
        prop_assert_eq!(a.family_values(Family::I4), b.family_values(Family::I4));
    }

    #[test]
    fn min_formula_under_the_guard(seed in any::<u64>(), q_frac in 0.0..1.0f64) {
        let cs = cross_section(seed);
        let n = cs.manifold_dim() as i64;
        let q = (q_frac * (n + 1) as f64) as i64;
        let c = rational(n - 2 * q, 2);
        let guard = int(1) - &c * &c;
        let lambda = cs.min_eigenvalues(q).unwrap().lambda;
        prop_assume!(lambda.as_ref().is_none_or(|l| l > &guard));
        prop_assert_eq!(nu0(&cs, q).unwrap(), nu0_min_formula(&cs, q).unwrap());
    }

    #[test]
    fn endpoints_move_the_right_way(n in 3usize..12, a in 0i64..40, b in 0i64..40) {
        let (lo, hi) = (a.min(b), a.max(b));
        let x = Surd::from_rational(rational(lo, 4));
        let y = Surd::from_rational(rational(hi, 4));
        // larger kernel decay widens the interval at both ends
        prop_assert!(lower_endpoint(n, &y) <= lower_endpoint(n, &x));
        prop_assert!(upper_endpoint(n, &x) <= upper_endpoint(n, &y));
        prop_assert!(lower_endpoint(n, &x).to_f64() >= 1.0);
    }

    #[test]
    fn mode_kernel_is_symmetric(nu in 0.0..30.0f64, a in 1e-3..50.0f64, b in 1e-3..50.0f64) {
        prop_assume!((a - b).abs() > 1e-6);
        let g = ModeKernel::new(nu, 1).unwrap();
        let ab = g.value(a, b).unwrap();
        prop_assert_eq!(ab, g.value(b, a).unwrap());
        prop_assert!(ab > 0.0);
        let jump = wronskian_jump(nu, a).unwrap();
        prop_assert!((jump * a + 1.0).abs() < 1e-9);
    }

    #[test]
    fn torsion_is_linear_in_the_ledger(seed in any::<u64>(), scale in 0.1..10.0f64, eps in 1e-6..0.5f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let degrees: Vec<DegreeData> = (0..=5)
            .map(|q| DegreeData {
                q,
                zeta_m_at_0: rng.gen_range(-2.0..2.0),
                small_eigs: Vec::new(),
                log_det_omega0: rng.gen_range(-5.0..5.0),
                log_det_m: rng.gen_range(-5.0..5.0),
                kernel_dims: [0, 0, 0],
            })
            .collect();
        let ledger = DegenerationLedger { n: 5, degrees };
        let mut scaled = ledger.clone();
        for d in &mut scaled.degrees {
            d.zeta_m_at_0 *= scale;
            d.log_det_omega0 *= scale;
            d.log_det_m *= scale;
        }
        let t = assemble_log_det_expansion(&ledger, eps).unwrap();
        let s = assemble_log_det_expansion(&scaled, eps).unwrap();
        prop_assert!((s.log_t - scale * t.log_t).abs() <= 1e-12 * (1.0 + s.log_t.abs()));
        // the ε dependence is exactly the log ε coefficient
        let t2 = assemble_log_det_expansion(&ledger, eps / 7.0).unwrap();
        let predicted = t.log_epsilon_coefficient * (eps.ln() - (eps / 7.0).ln());
        prop_assert!((t.log_t - t2.log_t - predicted).abs() <= 1e-11 * (1.0 + predicted.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn zeta_scaling_law(c in 0.2..5.0f64) {
        let eigs = |s: f64| -> Vec<(f64, u64)> {
            circle_fixture(2.0 * PI, 64).into_iter().map(|(l, m)| (s * s * l, m)).collect()
        };
        let base = zeta_from_eigenvalues(&eigs(1.0), 65.0 * 65.0, &[PI.sqrt(), 0.0], 1, 1, 1e-6).unwrap();
        let z = zeta_from_eigenvalues(&eigs(c), c * c * 65.0 * 65.0, &[PI.sqrt() / c, 0.0], 1, 1, 1e-6).unwrap();
        prop_assert_eq!(z.zeta0, base.zeta0);
        prop_assert!((z.zeta_prime0 - base.zeta_prime0 + 2.0 * base.zeta0 * c.ln()).abs() < 1e-9);
    }

    #[test]
    fn radial_eigenvalues_grow_with_the_mode(mu in 0.0..20.0f64, extra in 0.1..10.0f64) {
        let solve = |mu: f64| {
            let p = RadialProblem { profile: Profile::round_sphere(), dim: 3, mu, cells: 40 };
            radial_eigenvalues(&p, 3).unwrap()
        };
        let a = solve(mu);
        let b = solve(mu + extra);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(y.value > x.value);
        }
        prop_assert!(a.windows(2).all(|w| w[0].value < w[1].value));
    }
}
