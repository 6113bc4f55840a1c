//! Bare Ising coupling matrices J_ij from the mode spectrum and Raman drive
//! parameters: synthesis, auxiliary-ion masking, amplitude calibration,
//! staggered-sign correction, and model profiles.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::constants::LAMB_DICKE_SCALE;
use crate::linalg::Mat;
use crate::trap::ModeSpectrum;
use crate::{Error, Result};

/// Minimum tolerated |Delta + omega_N - omega_k| before the coupling formula
/// is considered resonant with mode k, rad/s.
pub const MIN_MODE_DENOMINATOR: f64 = 1e3;

/// Real symmetric bond matrix with zero diagonal, in angular rad/s.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    values: Mat,
    mean_nn: f64,
    pub label: String,
}

impl CouplingMatrix {
    /// Wrap a bond matrix, enforcing symmetry (1e-12 relative), zero diagonal,
    /// and a nonvanishing nearest-neighbor band.
    pub fn new(values: Mat, label: String) -> Result<Self> {
        let l = values.rows();
        if l != values.cols() || l < 2 {
            return Err(Error::DimensionMismatch { expected: values.rows(), got: values.cols() });
        }
        if values.asymmetry() > 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "coupling matrix asymmetric by {:.3e} relative",
                values.asymmetry()
            )));
        }
        for i in 0..l {
            if values[(i, i)] != 0.0 {
                return Err(Error::InvalidConfig(String::from(
                    "coupling matrix must have a zero diagonal",
                )));
            }
        }
        let mean_nn = (0..l - 1).map(|i| values[(i, i + 1)].abs()).sum::<f64>() / (l as f64 - 1.0);
        if !(mean_nn > 0.0) {
            return Err(Error::AllBeamsDark);
        }
        Ok(CouplingMatrix { values, mean_nn, label })
    }

    pub fn size(&self) -> usize {
        self.values.rows()
    }

    /// Bond J_ij, rad/s (0-based site indices).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }

    pub fn values(&self) -> &Mat {
        &self.values
    }

    /// Mean |J_{i,i+1}| over the L-1 nearest-neighbor bonds, rad/s. This is
    /// the coupling scale J used for the dimensionless time axis tau = Jt/pi
    /// and for drive parameters quoted in units of J.
    pub fn mean_nn(&self) -> f64 {
        self.mean_nn
    }

    /// Uniform rescale of every bond.
    pub fn scaled(&self, factor: f64, label: String) -> Result<Self> {
        let l = self.size();
        let mut values = Mat::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                values[(i, j)] = self.values[(i, j)] * factor;
            }
        }
        CouplingMatrix::new(values, label)
    }

    /// Spatial reflection j -> L-1-j of the bond matrix.
    pub fn reflected(&self) -> Self {
        let l = self.size();
        let mut values = Mat::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                values[(i, j)] = self.values[(l - 1 - i, l - 1 - j)];
            }
        }
        CouplingMatrix::new(values, self.label.clone()).expect("reflection preserves structure")
    }
}

/// Raman drive parameters for the coupling formula.
#[derive(Debug, Clone, PartialEq)]
pub struct RamanConfig {
    /// Beat-note detuning relative to the lowest (zig-zag) radial mode, rad/s;
    /// the coupling denominator is Delta + omega_N - omega_k.
    pub detuning: f64,
    /// Carrier Rabi frequency per ion, rad/s; auxiliary ions carry zero.
    pub rabi: Vec<f64>,
    /// Lamb-Dicke scale: eta_ik = lamb_dicke_scale * b_ik.
    pub lamb_dicke_scale: f64,
    /// 0-based ion indices of the L illuminated ions, ascending.
    pub active_sites: Vec<usize>,
}

impl RamanConfig {
    pub fn validate(&self, n_ions: usize) -> Result<()> {
        if self.rabi.len() != n_ions {
            return Err(Error::DimensionMismatch { expected: n_ions, got: self.rabi.len() });
        }
        if !(self.lamb_dicke_scale > 0.0) {
            return Err(Error::InvalidConfig(String::from("lamb_dicke_scale must be positive")));
        }
        if self.rabi.iter().any(|&o| o < 0.0) {
            return Err(Error::InvalidConfig(String::from("Rabi amplitudes must be >= 0")));
        }
        let nonzero: Vec<usize> = (0..n_ions).filter(|&i| self.rabi[i] != 0.0).collect();
        if nonzero.is_empty() {
            return Err(Error::AllBeamsDark);
        }
        if nonzero != self.active_sites {
            return Err(Error::InvalidConfig(format!(
                "active_sites {:?} disagree with nonzero Rabi entries {:?}",
                self.active_sites, nonzero
            )));
        }
        Ok(())
    }
}

/// Geometric part of the coupling formula: G_ab = sum_k eta_ak eta_bk /
/// (2 (Delta + omega_N - omega_k)), restricted to the active sites.
fn geometric_matrix(spec: &ModeSpectrum, detuning: f64, active: &[usize], scale: f64) -> Result<Mat> {
    let n = spec.n_ions();
    let omega_n = spec.frequencies[n - 1];
    for k in 0..n {
        let den = detuning + omega_n - spec.frequencies[k];
        if den.abs() < MIN_MODE_DENOMINATOR {
            return Err(Error::NearResonantMode { mode: k + 1, denominator: den });
        }
    }
    let l = active.len();
    let mut g = Mat::zeros(l, l);
    for (a, &i) in active.iter().enumerate() {
        for (b, &j) in active.iter().enumerate() {
            if a == b {
                continue;
            }
            let mut s = 0.0;
            for k in 0..n {
                let den = detuning + omega_n - spec.frequencies[k];
                s += spec.participation[(i, k)] * spec.participation[(j, k)] / (2.0 * den);
            }
            g[(a, b)] = scale * scale * s;
        }
    }
    Ok(g)
}

/// Phonon-mediated Ising couplings
/// J_ij = sum_k eta_ik eta_jk Omega_i Omega_j / (2 (Delta + omega_N - omega_k)),
/// re-indexed to the L active sites. Dark ions are dropped entirely, which is
/// the masking form of "zero row and column".
pub fn ising_matrix(spec: &ModeSpectrum, rc: &RamanConfig) -> Result<CouplingMatrix> {
    rc.validate(spec.n_ions())?;
    let g = geometric_matrix(spec, rc.detuning, &rc.active_sites, rc.lamb_dicke_scale)?;
    let l = rc.active_sites.len();
    let mut values = Mat::zeros(l, l);
    for a in 0..l {
        for b in 0..l {
            if a == b {
                continue;
            }
            values[(a, b)] = rc.rabi[rc.active_sites[a]] * rc.rabi[rc.active_sites[b]] * g[(a, b)];
        }
    }
    CouplingMatrix::new(
        values,
        format!("ising(N={}, Delta={:.4e} rad/s)", spec.n_ions(), rc.detuning),
    )
}

/// Average absolute bond strength at distance d:
/// Jbar(d) = (1/(L-d)) sum_n |J_{n,n+d}|.
pub fn average_bond_strength(cm: &CouplingMatrix, d: usize) -> Result<f64> {
    let l = cm.size();
    if d == 0 || d >= l {
        return Err(Error::BandOutOfRange { d, size: l });
    }
    Ok((0..l - d).map(|n| cm.get(n, n + d).abs()).sum::<f64>() / (l - d) as f64)
}

/// Staggered optical-phase correction: J_ij -> (-1)^(i+j) J_ij. Applying it
/// twice is the identity, and |J_ij| is preserved elementwise.
pub fn stagger_correct(cm: &CouplingMatrix) -> CouplingMatrix {
    let l = cm.size();
    let mut values = Mat::zeros(l, l);
    for i in 0..l {
        for j in 0..l {
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            values[(i, j)] = sign * cm.get(i, j);
        }
    }
    CouplingMatrix::new(values, cm.label.clone()).expect("stagger preserves magnitudes")
}

/// Exponentially decaying model profile J_ij = J exp(-|i-j|/xi), zero diagonal.
pub fn exponential_profile(j: f64, xi: f64, l: usize) -> Result<CouplingMatrix> {
    if !(j > 0.0) || !(xi > 0.0) {
        return Err(Error::InvalidConfig(String::from("exponential profile needs J > 0, xi > 0")));
    }
    if l < 2 {
        return Err(Error::InvalidConfig(String::from("profile needs at least 2 sites")));
    }
    let mut values = Mat::zeros(l, l);
    for a in 0..l {
        for b in 0..l {
            if a != b {
                values[(a, b)] = j * (-((a as f64 - b as f64).abs()) / xi).exp();
            }
        }
    }
    CouplingMatrix::new(values, format!("exp(J={j:.4e}, xi={xi})"))
}

/// Result of the nearest-neighbor amplitude calibration.
#[derive(Debug, Clone)]
pub struct Calibration {
    pub raman: RamanConfig,
    /// Worst relative deviation of the NN bonds from the target.
    pub residual: f64,
    pub iterations: usize,
}

/// Tune per-ion Rabi amplitudes so the L-1 nearest-neighbor bonds match
/// `target` (absolute values, rad/s), by the fixed-point iteration
/// Omega <- Omega * (target/actual)^(1/2) applied site-wise with the
/// geometric mean over the adjacent bonds. Succeeds at 2% relative.
///
/// The returned amplitudes are absolute; Omega_1 anchors the conventional
/// Omega_j/Omega_1 tabulation. Uniform NN bonds fix the amplitudes only up to
/// an alternating odd/even factor, which the fixed point inherits from the
/// uniform initial guess.
pub fn calibrate_rabi(
    spec: &ModeSpectrum,
    detuning: f64,
    target: &[f64],
    active_sites: &[usize],
) -> Result<Calibration> {
    let l = active_sites.len();
    if l < 2 {
        return Err(Error::InvalidConfig(String::from("calibration needs at least 2 sites")));
    }
    if target.len() != l - 1 {
        return Err(Error::DimensionMismatch { expected: l - 1, got: target.len() });
    }
    if target.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::InvalidConfig(String::from("calibration target must be positive")));
    }
    let g = geometric_matrix(spec, detuning, active_sites, LAMB_DICKE_SCALE)?;
    for a in 0..l - 1 {
        if g[(a, a + 1)] == 0.0 {
            return Err(Error::InvalidConfig(format!("NN bond {a} has zero geometric coupling")));
        }
    }

    // uniform initial guess on the mean scale
    let g_mean = (0..l - 1).map(|a| g[(a, a + 1)].abs()).sum::<f64>() / (l as f64 - 1.0);
    let t_mean = target.iter().sum::<f64>() / target.len() as f64;
    let mut omega = vec![(t_mean / g_mean).sqrt(); l];

    let tol = 0.02;
    let max_iter = 100;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    for it in 1..=max_iter {
        iterations = it;
        let bonds: Vec<f64> =
            (0..l - 1).map(|a| (omega[a] * omega[a + 1] * g[(a, a + 1)]).abs()).collect();
        residual =
            bonds.iter().zip(target).map(|(b, t)| (b / t - 1.0).abs()).fold(0.0f64, f64::max);
        if residual < tol {
            break;
        }
        let ratios: Vec<f64> = bonds.iter().zip(target).map(|(b, t)| t / b).collect();
        let mut next = omega.clone();
        for (a, site_omega) in next.iter_mut().enumerate() {
            let mut log_sum = 0.0;
            let mut count = 0.0;
            if a > 0 {
                log_sum += ratios[a - 1].ln();
                count += 1.0;
            }
            if a < l - 1 {
                log_sum += ratios[a].ln();
                count += 1.0;
            }
            *site_omega *= (0.5 * log_sum / count).exp();
        }
        omega = next;
    }
    if residual >= tol {
        return Err(Error::CalibrationDiverged { residual });
    }

    let mut rabi = vec![0.0; spec.n_ions()];
    for (a, &i) in active_sites.iter().enumerate() {
        rabi[i] = omega[a];
    }
    Ok(Calibration {
        raman: RamanConfig {
            detuning,
            rabi,
            lamb_dicke_scale: LAMB_DICKE_SCALE,
            active_sites: active_sites.to_vec(),
        },
        residual,
        iterations,
    })
}

/// Weighted least-squares exponential fit of the band profile:
/// ln Jbar(d) ~ ln(amplitude) - decay * d over 1 <= d <= min(d_max, L-1),
/// with weights Jbar(d)^2 so that interference near-zeros in the tail cannot
/// dominate the fit. Returns (decay, amplitude).
pub fn band_decay_fit(cm: &CouplingMatrix, d_max: usize) -> Result<(f64, f64)> {
    let l = cm.size();
    let dm = d_max.min(l - 1);
    if dm < 2 {
        return Err(Error::BandOutOfRange { d: dm, size: l });
    }
    let mut sw = 0.0;
    let mut sx = 0.0;
    let mut sy = 0.0;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for d in 1..=dm {
        let jbar = average_bond_strength(cm, d)?;
        if jbar <= 0.0 {
            continue;
        }
        let w = jbar * jbar;
        let x = d as f64;
        let y = jbar.ln();
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    let det = sw * sxx - sx * sx;
    if det.abs() < 1e-300 {
        return Err(Error::SingularMatrix);
    }
    let slope = (sw * sxy - sx * sy) / det;
    let intercept = (sxx * sy - sx * sxy) / det;
    Ok((-slope, intercept.exp()))
}
