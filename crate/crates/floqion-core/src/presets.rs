//! The three published interaction configurations, as constants plus
//! convenience constructors for the trap spectra and bare bond matrices.
//!
//! Config 1: N = 15 chain, L = 12 crystal, detuned 99 kHz below the zig-zag
//! mode (short range, sign-staggered). Config 2: same chain, detuned 29 kHz
//! above the COM mode (long range, uniform sign). Config 3: N = 27 chain,
//! L = 22 crystal, detuned 45 kHz below the zig-zag mode.

use alloc::vec;
use alloc::vec::Vec;

use crate::constants::{khz_to_rad_s, mhz_to_rad_s, LAMB_DICKE_SCALE, YB171_MASS};
use crate::coupling::{ising_matrix, CouplingMatrix, RamanConfig};
use crate::trap::{equilibrium_positions, radial_modes, ModeSpectrum, TrapConfig};
use crate::Result;

/// Radial COM frequency shared by both chains, cyclic MHz.
pub const COM_RADIAL_FREQ_MHZ: f64 = 3.08;

/// Beat-note detuning below the zig-zag mode for config 1, cyclic kHz.
pub const CONFIG1_DETUNING_KHZ: f64 = -99.0;
/// Beat-note detuning above the COM mode for config 2, cyclic kHz.
pub const CONFIG2_DETUNING_OFFSET_KHZ: f64 = 29.0;
/// Beat-note detuning below the zig-zag mode for config 3, cyclic kHz.
pub const CONFIG3_DETUNING_KHZ: f64 = -45.0;

/// Mean nearest-neighbor bond for configs 1 and 2, cyclic kHz.
pub const CONFIG12_MEAN_NN_KHZ: f64 = 0.25;
/// Mean nearest-neighbor bond for config 3, cyclic kHz.
pub const CONFIG3_MEAN_NN_KHZ: f64 = 0.20;

/// Published relative beam amplitudes Omega_j/Omega_1 for config 1.
pub const CONFIG1_RABI_PROFILE: [f64; 12] =
    [1.0, 1.0, 0.65, 0.87, 0.69, 0.97, 0.74, 0.97, 0.68, 0.86, 0.65, 0.99];

/// Published relative beam amplitudes for config 2.
pub const CONFIG2_RABI_PROFILE: [f64; 12] =
    [1.0, 1.0, 1.10, 1.07, 1.16, 1.10, 1.17, 1.10, 1.16, 1.07, 1.10, 1.0];

/// Published relative beam amplitudes for config 3.
pub const CONFIG3_RABI_PROFILE: [f64; 22] = [
    1.0, 0.59, 0.59, 0.4, 0.47, 0.37, 0.50, 0.44, 0.60, 0.51, 0.68, 0.54, 0.68, 0.52, 0.62, 0.45,
    0.53, 0.39, 0.49, 0.42, 0.61, 0.60,
];

/// Published radial mode frequencies for the N = 15 chain, cyclic MHz.
pub const N15_MODE_FREQS_MHZ: [f64; 15] = [
    3.08, 3.07, 3.05, 3.03, 3.01, 2.98, 2.96, 2.93, 2.90, 2.88, 2.85, 2.83, 2.80, 2.78, 2.78,
];

/// Published radial mode frequencies for the N = 27 chain, cyclic MHz.
pub const N27_MODE_FREQS_MHZ: [f64; 27] = [
    3.08, 3.07, 3.07, 3.06, 3.05, 3.04, 3.03, 3.02, 3.00, 2.99, 2.98, 2.96, 2.95, 2.93, 2.92,
    2.90, 2.89, 2.87, 2.86, 2.84, 2.83, 2.82, 2.81, 2.80, 2.79, 2.77, 2.77,
];

/// N = 15 trap: c2 = 0.11 eV/mm^2, c4 = 1.6e3 eV/mm^4.
pub fn n15_trap() -> TrapConfig {
    TrapConfig {
        n_ions: 15,
        com_radial_freq: mhz_to_rad_s(COM_RADIAL_FREQ_MHZ),
        axial_c2: 0.11,
        axial_c4: 1.6e3,
        ion_mass: YB171_MASS,
    }
}

/// N = 27 trap: c2 = -0.1 eV/mm^2, c4 = 235 eV/mm^4.
pub fn n27_trap() -> TrapConfig {
    TrapConfig {
        n_ions: 27,
        com_radial_freq: mhz_to_rad_s(COM_RADIAL_FREQ_MHZ),
        axial_c2: -0.1,
        axial_c4: 235.0,
        ion_mass: YB171_MASS,
    }
}

pub fn n15_spectrum() -> Result<ModeSpectrum> {
    let cfg = n15_trap();
    let x = equilibrium_positions(&cfg)?;
    radial_modes(&cfg, &x)
}

pub fn n27_spectrum() -> Result<ModeSpectrum> {
    let cfg = n27_trap();
    let x = equilibrium_positions(&cfg)?;
    radial_modes(&cfg, &x)
}

/// Ion indices (0-based) of the L = 12 crystal in the N = 15 chain: one
/// auxiliary ion on the left, two on the right.
pub fn config1_active_sites() -> Vec<usize> {
    (1..13).collect()
}

/// Ion indices of the L = 22 crystal in the N = 27 chain: two auxiliary ions
/// on the left, three on the right.
pub fn config3_active_sites() -> Vec<usize> {
    (2..24).collect()
}

/// Absolute detuning for config 1 given the spectrum, rad/s.
pub fn config1_detuning(_spec: &ModeSpectrum) -> f64 {
    khz_to_rad_s(CONFIG1_DETUNING_KHZ)
}

/// Absolute detuning for config 2: 29 kHz above the COM transition.
pub fn config2_detuning(spec: &ModeSpectrum) -> f64 {
    khz_to_rad_s(CONFIG2_DETUNING_OFFSET_KHZ) + spec.frequencies[0]
        - spec.frequencies[spec.n_ions() - 1]
}

/// Absolute detuning for config 3, rad/s.
pub fn config3_detuning(_spec: &ModeSpectrum) -> f64 {
    khz_to_rad_s(CONFIG3_DETUNING_KHZ)
}

fn raman_from_profile(
    n_ions: usize,
    detuning: f64,
    profile: &[f64],
    active: &[usize],
) -> RamanConfig {
    let mut rabi = vec![0.0; n_ions];
    for (p, &site) in profile.iter().zip(active) {
        rabi[site] = *p;
    }
    RamanConfig {
        detuning,
        rabi,
        lamb_dicke_scale: LAMB_DICKE_SCALE,
        active_sites: active.to_vec(),
    }
}

/// Config-1 Raman parameters with the published amplitude profile at unit
/// Omega_1 (the absolute scale is fixed by the target mean NN bond).
pub fn config1_raman() -> RamanConfig {
    raman_from_profile(
        15,
        khz_to_rad_s(CONFIG1_DETUNING_KHZ),
        &CONFIG1_RABI_PROFILE,
        &config1_active_sites(),
    )
}

pub fn config2_raman(spec: &ModeSpectrum) -> RamanConfig {
    raman_from_profile(15, config2_detuning(spec), &CONFIG2_RABI_PROFILE, &config1_active_sites())
}

pub fn config3_raman() -> RamanConfig {
    raman_from_profile(
        27,
        khz_to_rad_s(CONFIG3_DETUNING_KHZ),
        &CONFIG3_RABI_PROFILE,
        &config3_active_sites(),
    )
}

fn scaled_to_mean_nn(cm: CouplingMatrix, mean_nn_khz: f64, label: &str) -> Result<CouplingMatrix> {
    let target = khz_to_rad_s(mean_nn_khz);
    cm.scaled(target / cm.mean_nn(), alloc::string::String::from(label))
}

/// Bare config-1 bond matrix (sign-staggered short-range), mean NN bond
/// pinned to the published 0.25 x 2 pi kHz.
pub fn config1_matrix() -> Result<CouplingMatrix> {
    let spec = n15_spectrum()?;
    let cm = ising_matrix(&spec, &config1_raman())?;
    scaled_to_mean_nn(cm, CONFIG12_MEAN_NN_KHZ, "config1")
}

/// Bare config-2 bond matrix (uniform-sign long-range).
pub fn config2_matrix() -> Result<CouplingMatrix> {
    let spec = n15_spectrum()?;
    let cm = ising_matrix(&spec, &config2_raman(&spec))?;
    scaled_to_mean_nn(cm, CONFIG12_MEAN_NN_KHZ, "config2")
}

/// Bare config-3 bond matrix (sign-staggered, L = 22).
pub fn config3_matrix() -> Result<CouplingMatrix> {
    let spec = n27_spectrum()?;
    let cm = ising_matrix(&spec, &config3_raman())?;
    scaled_to_mean_nn(cm, CONFIG3_MEAN_NN_KHZ, "config3")
}
