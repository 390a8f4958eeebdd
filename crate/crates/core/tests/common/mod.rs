//! Random cross-sections shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use conic_spectra::spectral_data::{Eigenvalue, FormSpectrum};
use conic_spectra::surd::rational;
use conic_spectra::CrossSection;
use rand::Rng;

/// Coexact lists for degrees `0..m`, symmetric under `p ↔ m-1-p` so that
/// Hodge duality holds; eigenvalues are multiples of 1/4 up to 12.
pub fn random_cross_section<R: Rng>(rng: &mut R, m: usize) -> CrossSection {
    let mut coexact: Vec<Vec<(i64, u64)>> = vec![Vec::new(); m];
    for p in 0..m {
        let mirror = m - 1 - p;
        if mirror < p {
            coexact[p] = coexact[mirror].clone();
            continue;
        }
        let len = rng.gen_range(1..=4);
        coexact[p] = (0..len)
            .map(|_| (rng.gen_range(1..=48), rng.gen_range(1..=4)))
            .collect();
    }
    let mut betti = vec![0u64; m + 1];
    betti[0] = 1;
    betti[m] = 1;
    for p in 1..m {
        let mirror = m - p;
        betti[p] = if mirror < p {
            betti[mirror]
        } else {
            rng.gen_range(0..=2)
        };
    }
    let list = |v: &[(i64, u64)]| -> Vec<Eigenvalue> {
        v.iter()
            .map(|&(k, mult)| Eigenvalue::new(rational(k, 4), mult))
            .collect()
    };
    let spectra: BTreeMap<usize, FormSpectrum> = (0..=m)
        .map(|p| {
            let fs = FormSpectrum {
                exact: if p == 0 {
                    Vec::new()
                } else {
                    list(&coexact[p - 1])
                },
                coexact: if p == m {
                    Vec::new()
                } else {
                    list(&coexact[p])
                },
                harmonic_dim: betti[p],
                truncation: Some(rational(100, 1)),
            };
            (p, fs)
        })
        .collect();
    CrossSection::new(m, betti, spectra).expect("generated cross-section is valid")
}
