//! Dense statevector and density-matrix simulation substrate.
//!
//! A state over n qubits is a complex vector of length 2^n indexed so that
//! **qubit 0 is the most significant bit**: the amplitude of |q₀q₁…⟩ sits at
//! index Σ q_j·2^(n−1−j). Gates act on amplitudes as A' = U·A; applying a
//! two-qubit gate to targets (a, b) uses the local basis |bit_a bit_b⟩ with
//! the first target as the more significant local bit.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dense::Matrix;
use crate::gatelib::Gate;
use crate::pauli::{apply_pauli_sum, PauliSum};
use crate::Error;

/// Applies a 1- or 2-qubit unitary (given as a dense 2×2 or 4×4 matrix) to
/// the amplitude buffer in place. Targets are assumed validated.
pub(crate) fn apply_matrix_to_amps(
    amps: &mut [Complex64],
    n: usize,
    m: &Matrix,
    targets: &[usize],
) {
    match targets.len() {
        1 => {
            let s = 1usize << (n - 1 - targets[0]);
            let (m00, m01) = (m[(0, 0)], m[(0, 1)]);
            let (m10, m11) = (m[(1, 0)], m[(1, 1)]);
            for i in 0..amps.len() {
                if i & s == 0 {
                    let a0 = amps[i];
                    let a1 = amps[i | s];
                    amps[i] = m00 * a0 + m01 * a1;
                    amps[i | s] = m10 * a0 + m11 * a1;
                }
            }
        }
        2 => {
            let sa = 1usize << (n - 1 - targets[0]);
            let sb = 1usize << (n - 1 - targets[1]);
            for i in 0..amps.len() {
                if i & sa == 0 && i & sb == 0 {
                    let idx = [i, i | sb, i | sa, i | sa | sb];
                    let a: Vec<Complex64> = idx.iter().map(|&j| amps[j]).collect();
                    for (r, &j) in idx.iter().enumerate() {
                        amps[j] = m[(r, 0)] * a[0]
                            + m[(r, 1)] * a[1]
                            + m[(r, 2)] * a[2]
                            + m[(r, 3)] * a[3];
                    }
                }
            }
        }
        _ => unreachable!("gates are 1- or 2-qubit"),
    }
}

pub(crate) fn check_targets(n: usize, arity: usize, targets: &[usize]) -> Result<(), Error> {
    if targets.len() != arity {
        return Err(Error::ArityMismatch { expected: arity, got: targets.len() });
    }
    for &t in targets {
        if t >= n {
            return Err(Error::TargetOutOfRange { target: t, n });
        }
    }
    if targets.len() == 2 && targets[0] == targets[1] {
        return Err(Error::DuplicateTargets(targets.to_vec()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps raw amplitudes; length must be 2^n and the norm must already be
    /// 1 within 1e−8 (catching forgotten normalization without tripping on
    /// accumulated roundoff).
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self, Error> {
        if n == 0 || amps.len() != 1usize << n {
            return Err(Error::DimensionMismatch(format!(
                "expected 2^{n} amplitudes, got {}",
                amps.len()
            )));
        }
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > 1e-8 {
            return Err(Error::NotNormalized((norm2 - 1.0).abs()));
        }
        Ok(StateVector { n, amps })
    }

    pub fn basis_state(n: usize, index: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::DimensionMismatch("qubit count must be ≥ 1".into()));
        }
        if index >= 1usize << n {
            return Err(Error::BadBasisIndex { index, n });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Haar-ish random state: i.i.d. complex Gaussian amplitudes (Box–Muller
    /// from a seeded ChaCha stream), normalized. Deterministic in the seed.
    pub fn random_state(n: usize, seed: u64) -> Self {
        assert!(n >= 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gauss = || {
            let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
            let u2: f64 = rng.gen();
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        };
        let mut amps: Vec<Complex64> =
            (0..1usize << n).map(|_| Complex64::new(gauss(), gauss())).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "inner product between {} and {} qubits",
                self.n, other.n
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Functional gate application; the input is left untouched.
    pub fn apply(&self, gate: &Gate, targets: &[usize]) -> Result<StateVector, Error> {
        check_targets(self.n, gate.arity(), targets)?;
        let mut out = self.clone();
        apply_matrix_to_amps(&mut out.amps, self.n, gate.matrix(), targets);
        Ok(out)
    }

    /// In-place variant used by hot loops (circuit runs).
    pub(crate) fn apply_inplace(&mut self, gate: &Gate, targets: &[usize]) -> Result<(), Error> {
        check_targets(self.n, gate.arity(), targets)?;
        apply_matrix_to_amps(&mut self.amps, self.n, gate.matrix(), targets);
        Ok(())
    }

    /// ⟨ψ|O|ψ⟩ for a real-weighted Pauli sum; the imaginary residue is
    /// asserted below 1e−10 and discarded.
    pub fn expectation(&self, observable: &PauliSum) -> Result<f64, Error> {
        if observable.n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "observable on {} qubits, state on {}",
                observable.n, self.n
            )));
        }
        let h_psi = apply_pauli_sum(observable, &self.amps)?;
        let val: Complex64 =
            self.amps.iter().zip(h_psi.iter()).map(|(a, b)| a.conj() * b).sum();
        assert!(
            val.im.abs() < 1e-10,
            "expectation of a real Pauli sum has imaginary residue {:.3e}",
            val.im
        );
        Ok(val.re)
    }
}

/// Free-function faces for the main kernel ops.
pub fn apply_gate(state: &StateVector, gate: &Gate, targets: &[usize]) -> Result<StateVector, Error> {
    state.apply(gate, targets)
}

pub fn expectation(state: &StateVector, observable: &PauliSum) -> Result<f64, Error> {
    state.expectation(observable)
}

/// |⟨a|b⟩|².
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64, Error> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Dense density matrix (n ≤ ~10; 4^n entries).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    entries: Matrix,
}

impl DensityMatrix {
    pub fn from_pure(state: &StateVector) -> Self {
        let dim = state.amps.len();
        let mut entries = Matrix::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                entries[(r, c)] = state.amps[r] * state.amps[c].conj();
            }
        }
        DensityMatrix { n: state.n, entries }
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let dim = 1usize << n;
        let mut entries = Matrix::zeros(dim);
        let p = Complex64::new(1.0 / dim as f64, 0.0);
        for i in 0..dim {
            entries[(i, i)] = p;
        }
        DensityMatrix { n, entries }
    }

    /// Builds directly from a matrix; trace is normalized to 1, Hermiticity
    /// is checked.
    pub fn from_matrix(n: usize, m: Matrix) -> Result<Self, Error> {
        if m.dim() != 1usize << n {
            return Err(Error::DimensionMismatch(format!(
                "density matrix side {} != 2^{n}",
                m.dim()
            )));
        }
        let defect = m.hermiticity_defect();
        if defect > 1e-12 {
            return Err(Error::NotHermitian(defect));
        }
        let tr = m.trace();
        if tr.norm() < 1e-300 {
            return Err(Error::DimensionMismatch("density matrix has zero trace".into()));
        }
        let mut entries = m;
        let scale = Complex64::new(1.0, 0.0) / tr;
        for r in 0..entries.dim() {
            for c in 0..entries.dim() {
                let v = entries[(r, c)] * scale;
                entries[(r, c)] = v;
            }
        }
        Ok(DensityMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// ρ ↦ G ρ G† on the target qubits.
    pub fn conjugate_by(&self, gate: &Gate, targets: &[usize]) -> Result<DensityMatrix, Error> {
        check_targets(self.n, gate.arity(), targets)?;
        let dim = self.entries.dim();
        let mut out = self.entries.clone();
        // Left multiply: each column transforms as a state.
        for c in 0..dim {
            let mut col = out.column(c);
            apply_matrix_to_amps(&mut col, self.n, gate.matrix(), targets);
            out.set_column(c, &col);
        }
        // Right multiply by G†: each row transforms with the conjugate matrix.
        let conj = gate.matrix().conj();
        for r in 0..dim {
            apply_matrix_to_amps(out.row_mut(r), self.n, &conj, targets);
        }
        Ok(DensityMatrix { n: self.n, entries: out })
    }

    /// tr(ρ·O), asserted real within 1e−10.
    pub fn expectation_mixed(&self, observable: &PauliSum) -> Result<f64, Error> {
        if observable.n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "observable on {} qubits, density matrix on {}",
                observable.n, self.n
            )));
        }
        let dim = self.entries.dim();
        let mut val = Complex64::new(0.0, 0.0);
        for term in &observable.terms {
            let mut tr = Complex64::new(0.0, 0.0);
            for i in 0..dim {
                let (j, phase) = term.ops.apply_basis(i);
                tr += self.entries[(i, j)] * phase;
            }
            val += Complex64::new(term.coeff, 0.0) * tr;
        }
        assert!(
            val.im.abs() < 1e-10,
            "mixed expectation has imaginary residue {:.3e}",
            val.im
        );
        Ok(val.re)
    }
}

pub fn expectation_mixed(rho: &DensityMatrix, observable: &PauliSum) -> Result<f64, Error> {
    rho.expectation_mixed(observable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gatelib::{fourier_gate, fswap, phase_evolution_gate, x_gate};
    use crate::pauli::{Pauli, PauliString, PauliSum};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z_on(n: usize, q: usize) -> PauliSum {
        let mut s = PauliSum::new(n);
        s.push(1.0, PauliString::from_sites(n, &[(q, Pauli::Z)]));
        s
    }

    #[test]
    fn bit_ordering_is_msb_first() {
        // X on qubit 0 of |01⟩ (index 1) must give |11⟩ (index 3).
        let s = StateVector::basis_state(2, 0b01).unwrap();
        let out = s.apply(&x_gate(), &[0]).unwrap();
        assert!((out.amplitudes()[0b11] - c(1.0, 0.0)).norm() < 1e-15);
        // X on qubit 1 of |01⟩ gives |00⟩.
        let out = s.apply(&x_gate(), &[1]).unwrap();
        assert!((out.amplitudes()[0b00] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_gate_leaves_state_alone() {
        let s = StateVector::random_state(3, 7);
        let id = phase_evolution_gate(0.0, 0.0);
        for q in 0..3 {
            let out = s.apply(&id, &[q]).unwrap();
            assert_eq!(out, s);
        }
    }

    #[test]
    fn fswap_pinned_action() {
        let s01 = StateVector::basis_state(2, 0b01).unwrap();
        let out = s01.apply(&fswap(), &[0, 1]).unwrap();
        assert!((out.amplitudes()[0b10] - c(1.0, 0.0)).norm() < 1e-15);

        let s11 = StateVector::basis_state(2, 0b11).unwrap();
        let out = s11.apply(&fswap(), &[0, 1]).unwrap();
        assert!((out.amplitudes()[0b11] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_qubit_gate_targets_embed_in_larger_register() {
        // fSWAP on qubits (1, 2) of |010⟩ swaps the pair bits → |001⟩.
        let s = StateVector::basis_state(3, 0b010).unwrap();
        let out = s.apply(&fswap(), &[1, 2]).unwrap();
        assert!((out.amplitudes()[0b001] - c(1.0, 0.0)).norm() < 1e-15);
        // Both pair bits set picks up the fermionic minus sign in place.
        let s = StateVector::basis_state(3, 0b011).unwrap();
        let out = s.apply(&fswap(), &[1, 2]).unwrap();
        assert!((out.amplitudes()[0b011] - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn reversed_targets_swap_local_bit_roles() {
        // ⟨j|U_(b,a)|i⟩ = ⟨swap(j)|U_(a,b)|swap(i)⟩ where swap exchanges the
        // two target bits of the index.
        let g = fourier_gate(1, 4).unwrap();
        let n = 2;
        let swap = |i: usize| ((i & 1) << 1) | ((i >> 1) & 1);
        for i in 0..4 {
            let a = StateVector::basis_state(n, i).unwrap().apply(&g, &[0, 1]).unwrap();
            let b = StateVector::basis_state(n, swap(i)).unwrap().apply(&g, &[1, 0]).unwrap();
            for j in 0..4 {
                assert!(
                    (a.amplitudes()[j] - b.amplitudes()[swap(j)]).norm() < 1e-15,
                    "mismatch at column {i}, row {j}"
                );
            }
        }
    }

    #[test]
    fn gates_preserve_norm_and_invert() {
        let gates = vec![fswap(), fourier_gate(3, 8).unwrap()];
        for seed in 0..20u64 {
            let s = StateVector::random_state(4, seed);
            for g in &gates {
                let out = s.apply(g, &[1, 2]).unwrap();
                assert!((out.norm() - 1.0).abs() < 1e-12);
                let back = out.apply(&g.dagger(), &[1, 2]).unwrap();
                let err: f64 = back
                    .amplitudes()
                    .iter()
                    .zip(s.amplitudes())
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max);
                assert!(err < 1e-12);
            }
        }
    }

    #[test]
    fn target_validation_errors() {
        let s = StateVector::basis_state(2, 0).unwrap();
        assert!(matches!(s.apply(&fswap(), &[0, 2]), Err(Error::TargetOutOfRange { .. })));
        assert!(matches!(s.apply(&fswap(), &[1, 1]), Err(Error::DuplicateTargets(_))));
        assert!(matches!(s.apply(&fswap(), &[0]), Err(Error::ArityMismatch { .. })));
        assert!(matches!(s.apply(&x_gate(), &[0, 1]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn expectation_pinned_values() {
        let zero = StateVector::basis_state(1, 0).unwrap();
        assert!((zero.expectation(&z_on(1, 0)).unwrap() - 1.0).abs() < 1e-14);

        let r = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVector::new(1, vec![c(r, 0.0), c(r, 0.0)]).unwrap();
        assert!(plus.expectation(&z_on(1, 0)).unwrap().abs() < 1e-14);
    }

    #[test]
    fn random_state_is_deterministic_and_normalized() {
        let a = StateVector::random_state(5, 42);
        let b = StateVector::random_state(5, 42);
        assert_eq!(a, b);
        assert!((a.norm() - 1.0).abs() < 1e-12);
        let d = StateVector::random_state(5, 43);
        assert_ne!(a, d);
    }

    #[test]
    fn construction_guards() {
        assert!(matches!(
            StateVector::new(2, vec![c(1.0, 0.0); 3]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            StateVector::new(1, vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            StateVector::basis_state(2, 4),
            Err(Error::BadBasisIndex { .. })
        ));
    }

    #[test]
    fn fidelity_edges() {
        let a = StateVector::random_state(3, 1);
        assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let z = StateVector::basis_state(2, 0).unwrap();
        let o = StateVector::basis_state(2, 3).unwrap();
        assert!(fidelity(&z, &o).unwrap() < 1e-15);
    }

    #[test]
    fn density_matrix_pure_state_consistency() {
        let s = StateVector::random_state(3, 9);
        let rho = DensityMatrix::from_pure(&s);
        assert!((rho.entries().trace().re - 1.0).abs() < 1e-12);
        assert!(rho.entries().hermiticity_defect() < 1e-12);
        let obs = z_on(3, 1);
        let pure = s.expectation(&obs).unwrap();
        let mixed = rho.expectation_mixed(&obs).unwrap();
        assert!((pure - mixed).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_kills_traceless_observables() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(rho.expectation_mixed(&z_on(3, 0)).unwrap().abs() < 1e-14);
        let mut xx = PauliSum::new(3);
        xx.push(0.7, PauliString::from_sites(3, &[(0, Pauli::X), (2, Pauli::X)]));
        assert!(rho.expectation_mixed(&xx).unwrap().abs() < 1e-14);
    }

    #[test]
    fn conjugation_preserves_trace_and_matches_pure_path() {
        let s = StateVector::random_state(3, 21);
        let g = fourier_gate(1, 8).unwrap();
        let targets = [0usize, 2];
        let via_state = DensityMatrix::from_pure(&s.apply(&g, &targets).unwrap());
        let via_rho = DensityMatrix::from_pure(&s).conjugate_by(&g, &targets).unwrap();
        let diff = via_state.entries().sub(via_rho.entries()).frobenius_norm();
        assert!(diff < 1e-12);
        assert!((via_rho.entries().trace().re - 1.0).abs() < 1e-12);
    }
}
