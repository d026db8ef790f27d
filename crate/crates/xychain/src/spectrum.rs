//! Free-fermion solution of the XY chain: dispersion, Bogoliubov angles,
//! and assembly of the exact many-body spectrum.
//!
//! Momenta live on the grid k ∈ {−n/2+1, …, n/2}. Every energy in the model
//! is a sum over independently occupied modes,
//!
//! ```text
//! E(n₁…) = E₀ + Σ_k n_k · ω_k,      n_k ∈ {0, 1},
//! ω_k = sqrt((λ − cos(2πk/n))² + γ² sin²(2πk/n)),
//! E₀  = −(1/2) Σ_k ω_k,
//! ```
//!
//! with the normal-ordering constant E₀ fixed by tracelessness of the spin
//! Hamiltonian (the Pauli-string form has zero trace, so the assembled
//! spectrum must be centered). The Bogoliubov angle
//! θ_k = arccos((cos(2πk/n) − λ)/ω_k) parameterizes the quasiparticle
//! rotation; at points where ω_k vanishes the angle is set to zero (any
//! rotation diagonalizes a zero-energy mode, and zero keeps the gates
//! continuous in λ near the singular point).

use serde::{Deserialize, Serialize};

use crate::pauli::ModelParams;
use crate::Error;

/// ω_k below this is treated as an exact zero mode when choosing angles.
pub const ZERO_MODE_EPS: f64 = 1e-14;

/// Momentum grid {−n/2+1, …, n/2} in ascending order.
pub fn k_grid(n: usize) -> Vec<i64> {
    let half = (n / 2) as i64;
    (-half + 1..=half).collect()
}

/// One-particle energy ω_k = sqrt((λ − cos(2πk/n))² + γ² sin²(2πk/n)).
pub fn dispersion(k: i64, params: &ModelParams) -> f64 {
    let phi = 2.0 * std::f64::consts::PI * (k as f64) / (params.n as f64);
    let a = params.lambda - phi.cos();
    let b = params.gamma * phi.sin();
    (a * a + b * b).sqrt()
}

/// Bogoliubov angle θ_k = arccos((cos(2πk/n) − λ)/ω_k) ∈ [0, π];
/// defined as 0 when ω_k ≤ 1e−14 (zero-energy modes need no rotation).
pub fn bogoliubov_angle(k: i64, params: &ModelParams) -> f64 {
    let omega = dispersion(k, params);
    if omega <= ZERO_MODE_EPS {
        return 0.0;
    }
    let phi = 2.0 * std::f64::consts::PI * (k as f64) / (params.n as f64);
    let cos_theta = (phi.cos() - params.lambda) / omega;
    cos_theta.clamp(-1.0, 1.0).acos()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub k: i64,
    pub theta: f64,
    pub omega: f64,
}

/// Per-momentum solution data in ascending-k order, plus the
/// normal-ordering constant e0 = −(1/2)Σω_k.
///
/// Throughout the crate, "occupation" vectors are indexed like `modes`:
/// occupation[i] is the quasiparticle count of `modes[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeTable {
    pub modes: Vec<Mode>,
    pub e0: f64,
}

impl ModeTable {
    pub fn n(&self) -> usize {
        self.modes.len()
    }

    /// Index into `modes` for a given momentum k.
    pub fn index_of(&self, k: i64) -> Option<usize> {
        self.modes.iter().position(|m| m.k == k)
    }
}

/// Solves the chain at the given parameters: one mode per grid momentum.
pub fn mode_table(params: &ModelParams) -> Result<ModeTable, Error> {
    params.validate()?;
    let modes: Vec<Mode> = k_grid(params.n)
        .into_iter()
        .map(|k| Mode { k, theta: bogoliubov_angle(k, params), omega: dispersion(k, params) })
        .collect();
    let e0 = -0.5 * modes.iter().map(|m| m.omega).sum::<f64>();
    Ok(ModeTable { modes, e0 })
}

/// All 2^n energies {e0 + Σ n_k ω_k}, sorted ascending with multiplicity.
pub fn many_body_spectrum(params: &ModelParams) -> Result<Vec<f64>, Error> {
    const MAX_N: usize = 24;
    params.validate()?;
    if params.n > MAX_N {
        return Err(Error::TooLarge { n: params.n, max: MAX_N, what: "many-body spectrum enumeration" });
    }
    let table = mode_table(params)?;
    let mut energies = Vec::with_capacity(1usize << params.n);
    for occ in 0..(1usize << params.n) {
        let mut e = table.e0;
        for (i, m) in table.modes.iter().enumerate() {
            if (occ >> i) & 1 == 1 {
                e += m.omega;
            }
        }
        energies.push(e);
    }
    energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(energies)
}

/// Ground-state occupation pattern (indexed like [`ModeTable::modes`]) and
/// energy. With all ω_k ≥ 0 the ground state leaves every mode empty; modes
/// with ω_k ≤ 1e−12 cost nothing to occupy and are listed as free bits
/// (the ground level is 2^(free count)-fold degenerate).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundOccupation {
    pub occupation: Vec<u8>,
    pub energy: f64,
    pub free_modes: Vec<usize>,
}

pub fn ground_occupation(params: &ModelParams) -> Result<GroundOccupation, Error> {
    let table = mode_table(params)?;
    let free_modes = table
        .modes
        .iter()
        .enumerate()
        .filter(|(_, m)| m.omega <= 1e-12)
        .map(|(i, _)| i)
        .collect();
    Ok(GroundOccupation {
        occupation: vec![0; params.n],
        energy: table.e0,
        free_modes,
    })
}
