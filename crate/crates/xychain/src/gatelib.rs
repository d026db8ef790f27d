//! The gate families the disentangling circuit is built from.
//!
//! All two-qubit gates act on *adjacent* fermionic lines, where the
//! Jordan–Wigner string cancels and the fermionic operation becomes a plain
//! 4×4 unitary on amplitudes:
//!
//! * **fSWAP** exchanges two fermionic modes: SWAP with a −1 on |11⟩.
//! * **F_k** is one butterfly of the fermionic fast Fourier transform, mixing
//!   an even-sublattice mode with an odd-sublattice mode using the twiddle
//!   phase α = e^{i2πk/n}.
//! * **B_k** is the Bogoliubov rotation mixing |00⟩ ↔ |11⟩ on the pair of
//!   lines carrying momenta (k, −k) — the particle-number-violating step.
//! * **phase gates** implement e^{−itH̃} mode-by-mode once the chain is
//!   disentangled.
//!
//! Gates remember their constructor parameters; serialization writes the
//! parameters (plus a `dagger` flag) and reconstructs the matrix on read, so
//! round-trips are exact without shipping complex matrices around.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::Matrix;
use crate::pauli::ModelParams;
use crate::spectrum::{bogoliubov_angle, k_grid};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GateLabel {
    Fswap,
    Fourier,
    Bogoliubov,
    Phase,
    Custom,
}

impl std::fmt::Display for GateLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GateLabel::Fswap => "FSWAP",
            GateLabel::Fourier => "FOURIER",
            GateLabel::Bogoliubov => "BOGOLIUBOV",
            GateLabel::Phase => "PHASE",
            GateLabel::Custom => "CUSTOM",
        };
        f.write_str(s)
    }
}

/// Which angle enters the B gate: the literature writes both the full
/// Bogoliubov angle θ_k and θ_k/2 depending on whether the rotation is
/// expressed on operators or on states. Resolved numerically once
/// (see [`crate::builder::resolve_conventions`]); never assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AngleConvention {
    Full,
    Half,
}

/// Constructor parameters, recorded for exact serialization round-trips.
/// Only the fields a given gate family uses are present in JSON.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GateParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GateParams {
    fn is_empty(&self) -> bool {
        self == &GateParams::default()
    }
}

/// A 1- or 2-qubit unitary with enough metadata to rebuild it exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "GateData", into = "GateData")]
pub struct Gate {
    label: GateLabel,
    params: GateParams,
    dagger: bool,
    matrix: Matrix,
}

impl PartialEq for Gate {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.params == other.params && self.dagger == other.dagger
    }
}

impl Gate {
    pub fn label(&self) -> GateLabel {
        self.label
    }

    pub fn params(&self) -> &GateParams {
        &self.params
    }

    pub fn is_daggered(&self) -> bool {
        self.dagger
    }

    /// 1 or 2.
    pub fn arity(&self) -> usize {
        if self.matrix.dim() == 2 {
            1
        } else {
            2
        }
    }

    /// The realized unitary, side 2^arity, row-major, amplitude convention
    /// A' = U·A.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Conjugate transpose (label and params kept, `dagger` flag toggled).
    pub fn dagger(&self) -> Gate {
        Gate {
            label: self.label,
            params: self.params.clone(),
            dagger: !self.dagger,
            matrix: self.matrix.dagger(),
        }
    }

    /// ‖U†U − 1‖_max; every constructor keeps this below 1e−12.
    pub fn unitarity_defect(&self) -> f64 {
        self.matrix.dagger().mul(&self.matrix).max_deviation_from_identity()
    }
}

/// Serialized face of a [`Gate`].
#[derive(Debug, Clone, Serialize, Deserialize)]
struct GateData {
    label: GateLabel,
    #[serde(default, skip_serializing_if = "GateParams::is_empty")]
    params: GateParams,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    dagger: bool,
}

impl From<Gate> for GateData {
    fn from(g: Gate) -> Self {
        GateData { label: g.label, params: g.params, dagger: g.dagger }
    }
}

impl TryFrom<GateData> for Gate {
    type Error = String;

    fn try_from(d: GateData) -> Result<Self, String> {
        let matrix = rebuild_matrix(d.label, &d.params).map_err(|e| e.to_string())?;
        let matrix = if d.dagger { matrix.dagger() } else { matrix };
        Ok(Gate { label: d.label, params: d.params, dagger: d.dagger, matrix })
    }
}

fn missing(label: GateLabel, field: &str) -> String {
    format!("{label} gate is missing required parameter '{field}'")
}

fn rebuild_matrix(label: GateLabel, p: &GateParams) -> Result<Matrix, String> {
    match label {
        GateLabel::Fswap => Ok(fswap_matrix()),
        GateLabel::Fourier => {
            let k = p.k.ok_or_else(|| missing(label, "k"))?;
            let ring = p.ring.ok_or_else(|| missing(label, "ring"))?;
            crate::require_power_of_two(ring).map_err(|e| e.to_string())?;
            Ok(fourier_matrix(k, ring))
        }
        GateLabel::Bogoliubov => {
            let theta = p.theta.ok_or_else(|| missing(label, "theta"))?;
            Ok(bogoliubov_matrix(theta))
        }
        GateLabel::Phase => {
            let omega_t = p.omega_t.ok_or_else(|| missing(label, "omega_t"))?;
            Ok(phase_matrix(omega_t))
        }
        GateLabel::Custom => {
            let name = p.name.as_deref().ok_or_else(|| missing(label, "name"))?;
            match name {
                "X" => Ok(x_matrix()),
                "BF" => {
                    let k = p.k.ok_or_else(|| missing(label, "k"))?;
                    let ring = p.ring.ok_or_else(|| missing(label, "ring"))?;
                    let theta = p.theta.ok_or_else(|| missing(label, "theta"))?;
                    Ok(fourier_matrix(k, ring).mul(&bogoliubov_matrix(theta)))
                }
                other => Err(format!("unknown custom gate '{other}'")),
            }
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fswap_matrix() -> Matrix {
    Matrix::from_rows(&[
        vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
    ])
}

fn fourier_matrix(k: i64, ring: usize) -> Matrix {
    let alpha = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k as f64) / (ring as f64));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    Matrix::from_rows(&[
        vec![c(1.0, 0.0), z, z, z],
        vec![z, c(r, 0.0), alpha * r, z],
        vec![z, c(r, 0.0), -alpha * r, z],
        vec![z, z, z, -alpha],
    ])
}

fn bogoliubov_matrix(phi: f64) -> Matrix {
    let (s, co) = phi.sin_cos();
    let z = c(0.0, 0.0);
    Matrix::from_rows(&[
        vec![c(co, 0.0), z, z, c(0.0, s)],
        vec![z, c(1.0, 0.0), z, z],
        vec![z, z, c(1.0, 0.0), z],
        vec![c(0.0, s), z, z, c(co, 0.0)],
    ])
}

fn phase_matrix(omega_t: f64) -> Matrix {
    let z = c(0.0, 0.0);
    Matrix::from_rows(&[
        vec![Complex64::from_polar(1.0, 0.5 * omega_t), z],
        vec![z, Complex64::from_polar(1.0, -0.5 * omega_t)],
    ])
}

fn x_matrix() -> Matrix {
    Matrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
}

/// Fermionic SWAP: |01⟩ ↔ |10⟩, |11⟩ → −|11⟩. Self-adjoint.
pub fn fswap() -> Gate {
    Gate { label: GateLabel::Fswap, params: GateParams::default(), dagger: false, matrix: fswap_matrix() }
}

/// One Fourier butterfly with twiddle α = e^{i2πk/ring}; k is reduced mod
/// ring, so `fourier_gate(k)` and `fourier_gate(k + ring)` are identical.
pub fn fourier_gate(k: i64, ring: usize) -> Result<Gate, Error> {
    crate::require_power_of_two(ring)?;
    let k = k.rem_euclid(ring as i64);
    Ok(Gate {
        label: GateLabel::Fourier,
        params: GateParams { k: Some(k), ring: Some(ring), ..Default::default() },
        dagger: false,
        matrix: fourier_matrix(k, ring),
    })
}

/// Bogoliubov rotation for the (k, −k) pair: mixes |00⟩ and |11⟩ with
/// cos φ / i·sin φ, where φ is θ_k (FULL) or θ_k/2 (HALF).
pub fn bogoliubov_gate(
    k: i64,
    params: &ModelParams,
    convention: AngleConvention,
) -> Result<Gate, Error> {
    params.validate()?;
    if !k_grid(params.n).contains(&k) {
        return Err(Error::BadMomentum { k, n: params.n });
    }
    let theta = bogoliubov_angle(k, params);
    let phi = match convention {
        AngleConvention::Full => theta,
        AngleConvention::Half => theta / 2.0,
    };
    Ok(Gate {
        label: GateLabel::Bogoliubov,
        params: GateParams { k: Some(k), theta: Some(phi), ..Default::default() },
        dagger: false,
        matrix: bogoliubov_matrix(phi),
    })
}

/// Single-line evolution phase: diag(e^{+iωt/2}, e^{−iωt/2}) = e^{−itω(n̂−½)}
/// with n̂ the occupation of the line. ω may be signed (see the builder's
/// per-line energies).
pub fn phase_evolution_gate(omega: f64, t: f64) -> Gate {
    assert!(omega.is_finite() && t.is_finite(), "phase gate needs finite ω and t");
    let omega_t = omega * t;
    Gate {
        label: GateLabel::Phase,
        params: GateParams { omega_t: Some(omega_t), ..Default::default() },
        dagger: false,
        matrix: phase_matrix(omega_t),
    }
}

/// Single-qubit occupation flip (used on self-paired momentum lines).
pub fn x_gate() -> Gate {
    Gate {
        label: GateLabel::Custom,
        params: GateParams { name: Some("X".into()), ..Default::default() },
        dagger: false,
        matrix: x_matrix(),
    }
}

/// Product F_k · B(φ) as a single two-qubit gate (the fusion that brings the
/// reduced n=4 circuit down to six two-qubit gates).
pub fn fused_fourier_bogoliubov(k: i64, ring: usize, phi: f64) -> Result<Gate, Error> {
    crate::require_power_of_two(ring)?;
    let k = k.rem_euclid(ring as i64);
    Ok(Gate {
        label: GateLabel::Custom,
        params: GateParams {
            name: Some("BF".into()),
            k: Some(k),
            ring: Some(ring),
            theta: Some(phi),
            ..Default::default()
        },
        dagger: false,
        matrix: fourier_matrix(k, ring).mul(&bogoliubov_matrix(phi)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, lambda: f64, gamma: f64) -> ModelParams {
        ModelParams::new(n, lambda, gamma).unwrap()
    }

    #[test]
    fn fswap_matrix_entries_and_involution() {
        let g = fswap();
        let m = g.matrix();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 2)], c(1.0, 0.0));
        assert_eq!(m[(2, 1)], c(1.0, 0.0));
        assert_eq!(m[(3, 3)], c(-1.0, 0.0));
        assert!(m.mul(m).max_deviation_from_identity() < 1e-15);
    }

    #[test]
    fn fourier_k0_is_the_plain_butterfly() {
        let g = fourier_gate(0, 4).unwrap();
        let m = g.matrix();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m[(1, 1)].re - r).abs() < 1e-15);
        assert!((m[(1, 2)].re - r).abs() < 1e-15);
        assert!((m[(2, 1)].re - r).abs() < 1e-15);
        assert!((m[(2, 2)].re + r).abs() < 1e-15);
        assert_eq!(m[(3, 3)], c(-1.0, 0.0));
    }

    #[test]
    fn fourier_half_ring_flips_corner_sign() {
        // α(n/2) = −1, so the |11⟩ entry −α becomes +1.
        let g = fourier_gate(2, 4).unwrap();
        assert!((g.matrix()[(3, 3)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fourier_is_periodic_in_k() {
        assert_eq!(fourier_gate(1, 8).unwrap(), fourier_gate(9, 8).unwrap());
        assert_eq!(fourier_gate(-3, 8).unwrap(), fourier_gate(5, 8).unwrap());
    }

    #[test]
    fn all_families_are_unitary() {
        let params = p(8, 0.7, 0.6);
        let mut gates = vec![fswap(), x_gate()];
        for k in -3..=4i64 {
            gates.push(fourier_gate(k, 8).unwrap());
            gates.push(bogoliubov_gate(k, &params, AngleConvention::Half).unwrap());
            gates.push(bogoliubov_gate(k, &params, AngleConvention::Full).unwrap());
        }
        for &t in &[0.0, 0.1, 1.0, 10.0] {
            gates.push(phase_evolution_gate(1.3, t));
        }
        gates.push(fused_fourier_bogoliubov(1, 4, 0.37).unwrap());
        for g in &gates {
            assert!(g.unitarity_defect() < 1e-12, "{:?} not unitary", g.label());
            assert!(g.dagger().unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn bogoliubov_degenerates_to_identity_at_zero_angle() {
        // k=0 has θ = 0 for λ < 1.
        let g = bogoliubov_gate(0, &p(4, 0.5, 1.0), AngleConvention::Half).unwrap();
        assert!(g.matrix().max_deviation_from_identity() < 1e-15);
    }

    #[test]
    fn bogoliubov_mixes_only_even_parity_states() {
        let g = bogoliubov_gate(1, &p(4, 0.3, 0.8), AngleConvention::Full).unwrap();
        let m = g.matrix();
        for (r, col) in [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)] {
            assert_eq!(m[(r, col)], c(0.0, 0.0));
        }
        assert_eq!(m[(1, 1)], c(1.0, 0.0));
        assert_eq!(m[(2, 2)], c(1.0, 0.0));
    }

    #[test]
    fn bogoliubov_angle_conventions_differ_by_half() {
        let params = p(4, 0.0, 1.0);
        let full = bogoliubov_gate(1, &params, AngleConvention::Full).unwrap();
        let half = bogoliubov_gate(1, &params, AngleConvention::Half).unwrap();
        // θ₁ = π/2 at λ=0, γ=1.
        assert!((full.params().theta.unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((half.params().theta.unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn bogoliubov_rejects_momenta_off_grid() {
        assert!(matches!(
            bogoliubov_gate(3, &p(4, 0.5, 1.0), AngleConvention::Half),
            Err(Error::BadMomentum { .. })
        ));
        assert!(bogoliubov_gate(-1, &p(4, 0.5, 1.0), AngleConvention::Half).is_ok());
    }

    #[test]
    fn phase_gate_identity_and_composition() {
        assert!(phase_evolution_gate(1.7, 0.0).matrix().max_deviation_from_identity() < 1e-15);
        assert!(phase_evolution_gate(0.0, 5.0).matrix().max_deviation_from_identity() < 1e-15);
        let a = phase_evolution_gate(0.9, 0.4);
        let b = phase_evolution_gate(0.9, 1.1);
        let ab = phase_evolution_gate(0.9, 1.5);
        assert!(a.matrix().mul(b.matrix()).sub(ab.matrix()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn serde_roundtrips_reproduce_entries() {
        let params = p(8, 0.45, 0.8);
        let gates = vec![
            fswap(),
            fourier_gate(3, 8).unwrap(),
            bogoliubov_gate(2, &params, AngleConvention::Half).unwrap(),
            phase_evolution_gate(1.25, 0.7),
            x_gate(),
            fused_fourier_bogoliubov(1, 4, 0.3).unwrap(),
            fourier_gate(3, 8).unwrap().dagger(),
        ];
        for g in gates {
            let json = serde_json::to_string(&g).unwrap();
            let back: Gate = serde_json::from_str(&json).unwrap();
            assert_eq!(back, g);
            assert!(back.matrix().sub(g.matrix()).frobenius_norm() < 1e-15);
            assert_eq!(back.is_daggered(), g.is_daggered());
        }
    }

    #[test]
    fn serde_shape_is_compact() {
        let json = serde_json::to_string(&fswap()).unwrap();
        assert_eq!(json, r#"{"label":"FSWAP"}"#);
        let json = serde_json::to_string(&fourier_gate(1, 4).unwrap()).unwrap();
        assert_eq!(json, r#"{"label":"FOURIER","params":{"k":1,"ring":4}}"#);
    }

    #[test]
    fn unknown_custom_gate_is_rejected() {
        let bad = r#"{"label":"CUSTOM","params":{"name":"WAT"}}"#;
        assert!(serde_json::from_str::<Gate>(bad).is_err());
        let incomplete = r#"{"label":"FOURIER","params":{"k":1}}"#;
        assert!(serde_json::from_str::<Gate>(incomplete).is_err());
    }

    #[test]
    fn dagger_is_an_involution() {
        let g = fourier_gate(1, 4).unwrap();
        let gdd = g.dagger().dagger();
        assert_eq!(g, gdd);
        assert!(g.matrix().sub(gdd.matrix()).frobenius_norm() < 1e-15);
        // F is genuinely non-self-adjoint: dagger changes the matrix.
        assert!(g.matrix().sub(g.dagger().matrix()).frobenius_norm() > 0.1);
    }
}
