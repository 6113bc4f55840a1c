use alloc::string::String;
use core::fmt;

/// Errors produced by the simulation core.
///
/// Diagnostic payloads carry the quantity that tripped the check so callers
/// can report actionable messages without re-deriving state.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Configuration field failed a domain invariant.
    InvalidConfig(String),
    /// Equilibrium Newton iteration did not reach the gradient tolerance.
    NewtonDiverged { residual: f64, iterations: usize },
    /// Ion ordering could not be preserved during the position solve.
    IonOrderCrossing,
    /// Radial Hessian has a non-positive eigenvalue (zig-zag instability).
    UnstableMode { mode: usize, omega_sq: f64 },
    /// A mode denominator in the coupling formula is near resonance.
    NearResonantMode { mode: usize, denominator: f64 },
    /// Array or matrix dimensions disagree.
    DimensionMismatch { expected: usize, got: usize },
    /// All Rabi amplitudes vanish; the coupling matrix would be identically zero.
    AllBeamsDark,
    /// Rabi calibration failed to converge within the iteration budget.
    CalibrationDiverged { residual: f64 },
    /// Operation requires an even number of sites.
    OddChainLength { len: usize },
    /// Band index is outside 1..=L-1.
    BandOutOfRange { d: usize, size: usize },
    /// Bloch gap closes on the sampling grid; the Zak phase is undefined.
    GaplessSpectrum { min_gap: f64 },
    /// Requested sector Hamiltonian exceeds the sparse nonzero budget.
    SectorTooLarge { estimated_nnz: usize, cap: usize },
    /// Full-space drive evolution is guarded to small chains.
    FullSpaceTooLarge { sites: usize, max: usize },
    /// Adaptive integrator step size underflowed.
    StepUnderflow { t: f64, step: f64 },
    /// State norm drifted beyond the allowed multiple of the tolerance.
    NormDrift { drift: f64, limit: f64 },
    /// Trajectory does not cover the requested time window.
    InsufficientWindow { need_lo: f64, need_hi: f64, have_lo: f64, have_hi: f64 },
    /// Excitation never crossed the spreading threshold on enough sites.
    LocalizedExcitation { crossings: usize },
    /// Nonlinear fit did not reach the residual tolerance.
    FitDiverged { residual: f64 },
    /// Symmetric eigensolver failed to converge.
    EigensolverFailed { iterations: usize },
    /// Linear solve hit a singular pivot.
    SingularMatrix,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::NewtonDiverged { residual, iterations } => write!(
                f,
                "equilibrium solve did not converge: residual {residual:.3e} after {iterations} iterations"
            ),
            Error::IonOrderCrossing => write!(
                f,
                "ion ordering lost during equilibrium solve; initial guess or potential is unphysical"
            ),
            Error::UnstableMode { mode, omega_sq } => write!(
                f,
                "radial mode {mode} is unstable (omega^2 = {omega_sq:.3e}); chain is past the zig-zag transition"
            ),
            Error::NearResonantMode { mode, denominator } => write!(
                f,
                "detuning nearly resonant with mode {mode}: denominator {denominator:.3e} rad/s"
            ),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::AllBeamsDark => write!(f, "all Rabi amplitudes are zero"),
            Error::CalibrationDiverged { residual } => write!(
                f,
                "Rabi calibration did not converge: bond residual {residual:.3e}"
            ),
            Error::OddChainLength { len } => {
                write!(f, "operation requires an even chain length, got {len}")
            }
            Error::BandOutOfRange { d, size } => {
                write!(f, "band distance {d} out of range for {size} sites")
            }
            Error::GaplessSpectrum { min_gap } => write!(
                f,
                "gapless: |Delta(k)| reaches {min_gap:.3e}, Zak phase undefined"
            ),
            Error::SectorTooLarge { estimated_nnz, cap } => write!(
                f,
                "sector Hamiltonian needs ~{estimated_nnz} nonzeros (cap {cap}); restrict the magnetization sector"
            ),
            Error::FullSpaceTooLarge { sites, max } => write!(
                f,
                "full-space drive evolution limited to {max} sites, got {sites}; see the sector policy"
            ),
            Error::StepUnderflow { t, step } => {
                write!(f, "integrator step underflow at t = {t:.6e} (h = {step:.3e})")
            }
            Error::NormDrift { drift, limit } => {
                write!(f, "state norm drifted by {drift:.3e} (limit {limit:.3e})")
            }
            Error::InsufficientWindow { need_lo, need_hi, have_lo, have_hi } => write!(
                f,
                "trajectory covers [{have_lo}, {have_hi}] but [{need_lo}, {need_hi}] is required"
            ),
            Error::LocalizedExcitation { crossings } => write!(
                f,
                "excitation localized: only {crossings} sites crossed the threshold, no spreading front"
            ),
            Error::FitDiverged { residual } => {
                write!(f, "fit residual {residual:.3e} above tolerance")
            }
            Error::EigensolverFailed { iterations } => {
                write!(f, "symmetric eigensolver did not converge within {iterations} iterations")
            }
            Error::SingularMatrix => write!(f, "singular matrix in linear solve"),
        }
    }
}

impl core::error::Error for Error {}
