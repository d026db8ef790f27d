//! Construction of the disentangling circuit: the fermionic fast Fourier
//! network, the Bogoliubov layer, the reduced six-gate n=4 Ising circuit,
//! and the one-time numerical resolution of sign/angle conventions.
//!
//! The circuit acts on kets as U = U_FT · U_B: first the Bogoliubov layer
//! rotates each (k, −k) pair of momentum lines (plus single-line occupation
//! flips for the self-paired momenta), then the butterfly network maps
//! momentum-occupation basis states to their site-space images. Conjugating
//! the chain Hamiltonian through U therefore leaves a free-fermion diagonal
//! D = U†HU = Σ_ℓ g_ℓ (n̂_ℓ − ½), with one signed energy g_ℓ per qubit line.
//!
//! The network is built recursively: a block of m adjacent lines synthesizes
//! an m-point transform from two m/2-point children (odd sublattice on the
//! top half, even on the bottom), interleaved by a perfect shuffle of
//! fermionic SWAPs, combined by one Fourier butterfly per pair, and
//! un-shuffled afterwards. Because every gate is particle-number conserving,
//! the whole network is characterized by its single-particle action; the
//! constructor checks numerically that each input line carries exactly one
//! discrete momentum and returns that assignment as the [`ModeLabeling`].

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::gatelib::{
    bogoliubov_gate, fourier_gate, fswap, fused_fourier_bogoliubov, x_gate, AngleConvention,
    GateLabel,
};
use crate::pauli::{build_xy_hamiltonian, pauli_sum_to_matrix, BoundarySign, ModelParams};
use crate::spectrum::{bogoliubov_angle, dispersion, mode_table, ModeTable};
use crate::Error;

/// Whether computational |1⟩ on a mode line denotes an occupied quasiparticle
/// contributing +ω_k (PLUS) or −ω_k (MINUS) to the energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OccupationSign {
    Plus,
    Minus,
}

/// The three convention bits the construction cannot know a priori; resolved
/// once by [`resolve_conventions`] (exhaustive 2×2×2 search against dense
/// conjugation) and frozen for all chain lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConventionChoice {
    pub bogoliubov_angle: AngleConvention,
    pub boundary_sign: BoundarySign,
    pub occupation_sign: OccupationSign,
}

impl ConventionChoice {
    /// All 8 candidates, in a fixed enumeration order.
    pub fn all() -> Vec<ConventionChoice> {
        let mut out = Vec::with_capacity(8);
        for &bogoliubov_angle in &[AngleConvention::Full, AngleConvention::Half] {
            for &boundary_sign in &[BoundarySign::AsWritten, BoundarySign::Flipped] {
                for &occupation_sign in &[OccupationSign::Plus, OccupationSign::Minus] {
                    out.push(ConventionChoice { bogoliubov_angle, boundary_sign, occupation_sign });
                }
            }
        }
        out
    }
}

impl fmt::Display for ConventionChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "angle={:?} boundary={:?} occupation={:?}",
            self.bogoliubov_angle, self.boundary_sign, self.occupation_sign
        )
    }
}

/// Which momentum each qubit line carries after the Fourier network:
/// `mapping[line] = k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeLabeling {
    pub mapping: Vec<i64>,
}

impl ModeLabeling {
    /// Line index carrying momentum k, if present.
    pub fn line_of(&self, k: i64) -> Option<usize> {
        self.mapping.iter().position(|&m| m == k)
    }
}

/// Adjacent-transposition realization of the perfect shuffle on `m` lines:
/// contents [a_0..a_{m/2-1}, b_0..b_{m/2-1}] → [a_0, b_0, a_1, b_1, ...].
/// Returns the left positions p of the swaps (p, p+1), offset by `base`.
fn shuffle_swaps(base: usize, m: usize) -> Vec<usize> {
    let mut arr: Vec<usize> = (0..m).collect();
    let desired: Vec<usize> =
        (0..m).map(|p| if p % 2 == 0 { p / 2 } else { m / 2 + p / 2 }).collect();
    let mut swaps = Vec::new();
    for (p, &want) in desired.iter().enumerate() {
        let q = arr.iter().position(|&c| c == want).expect("content present");
        for r in (p..q).rev() {
            arr.swap(r, r + 1);
            swaps.push(base + r);
        }
    }
    swaps
}

fn emit_network(n: usize, base: usize, m: usize, circuit: &mut Circuit) -> Result<(), Error> {
    if m < 2 {
        return Ok(());
    }
    emit_network(n, base, m / 2, circuit)?;
    emit_network(n, base + m / 2, m / 2, circuit)?;
    let riffle = shuffle_swaps(base, m);
    for &p in &riffle {
        circuit.push(fswap(), vec![p, p + 1])?;
    }
    let step = (n / m) as i64;
    for j in 0..m / 2 {
        let k = ((n as i64) / 2 - (j as i64) * step).rem_euclid(n as i64);
        circuit.push(fourier_gate(k, n)?, vec![base + 2 * j, base + 2 * j + 1])?;
    }
    for &p in riffle.iter().rev() {
        circuit.push(fswap(), vec![p, p + 1])?;
    }
    Ok(())
}

/// Forwards the single-particle amplitude column of input line `l` through a
/// circuit of number-conserving two-qubit gates on adjacent lines.
fn single_particle_column(circuit: &Circuit, l: usize) -> Result<Vec<Complex64>, Error> {
    let n = circuit.n;
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    col[l] = Complex64::new(1.0, 0.0);
    for op in &circuit.ops {
        if op.targets.len() != 2 {
            return Err(Error::Internal("network contains a non-two-qubit gate".into()));
        }
        let (a, b) = (op.targets[0], op.targets[1]);
        let m = op.gate.matrix();
        // Basis |bit_a bit_b⟩: a-occupied is row/col 2, b-occupied is 1.
        let (pa, pb) = (col[a], col[b]);
        col[a] = m[(2, 2)] * pa + m[(2, 1)] * pb;
        col[b] = m[(1, 2)] * pa + m[(1, 1)] * pb;
    }
    Ok(col)
}

/// Identifies the momentum carried by each input line by matching its
/// single-particle image against the discrete Fourier columns
/// e^{−i2πjκ/n}/√n. Fails loudly if any line is not a pure momentum.
fn network_labeling(circuit: &Circuit) -> Result<ModeLabeling, Error> {
    let n = circuit.n;
    let root = 1.0 / (n as f64).sqrt();
    let mut mapping = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for l in 0..n {
        let col = single_particle_column(circuit, l)?;
        let mut found = None;
        for kappa in 0..n {
            let mut overlap = Complex64::new(0.0, 0.0);
            for (j, amp) in col.iter().enumerate() {
                let phase =
                    Complex64::from_polar(root, 2.0 * PI * (j as f64) * (kappa as f64) / n as f64);
                overlap += phase * amp;
            }
            if (overlap.norm() - 1.0).abs() <= 1e-9 {
                if found.is_some() {
                    return Err(Error::Internal(format!(
                        "line {l} matches more than one momentum"
                    )));
                }
                found = Some(kappa);
            }
        }
        let kappa = found.ok_or_else(|| {
            Error::Internal(format!("line {l} of the Fourier network is not a pure momentum"))
        })?;
        if seen[kappa] {
            return Err(Error::Internal(format!("momentum {kappa} appears on two lines")));
        }
        seen[kappa] = true;
        mapping.push(if kappa <= n / 2 { kappa as i64 } else { kappa as i64 - n as i64 });
    }
    Ok(ModeLabeling { mapping })
}

/// Builds the butterfly network realizing the fermionic fast Fourier
/// transform on adjacent qubit lines, together with the momentum each input
/// line carries.
pub fn build_fourier_network(n: usize) -> Result<(Circuit, ModeLabeling), Error> {
    crate::require_power_of_two(n)?;
    let mut circuit = Circuit::new(n);
    emit_network(n, 0, n, &mut circuit)?;
    let labeling = network_labeling(&circuit)?;
    Ok((circuit, labeling))
}

/// Orientation convention for the pair rotation: the un-daggered B(φ) is
/// emitted when the line carrying +k sits on top (the smaller line index);
/// with −k on top the dagger B(−φ) is emitted instead, which is the same
/// operation conjugated by the fermionic SWAP of the two lines.
const B_POSITIVE_TOP: bool = true;

/// Signed single-line energy g_ℓ for the momentum k carried by a line, such
/// that D = U†HU = Σ_ℓ g_ℓ (n̂_ℓ − ½). Paired momenta and k = n/2 contribute
/// +ω_k; the k = 0 line carries no gate, so its sign 1 − λ is exposed rather
/// than folded into the circuit. MINUS negates every line.
pub fn line_energy(k: i64, params: &ModelParams, convention: ConventionChoice) -> f64 {
    let g = if k == 0 { 1.0 - params.lambda } else { dispersion(k, params) };
    match convention.occupation_sign {
        OccupationSign::Plus => g,
        OccupationSign::Minus => -g,
    }
}

/// Bogoliubov layer: one pair rotation per (k, −k) with k = 1..n/2−1, routed
/// to adjacency by fermionic SWAPs and routed back, plus the single-line
/// occupation handling of the self-paired momenta (an X on the k = n/2 line;
/// under MINUS, an X on every other line instead).
pub fn build_bogoliubov_layer(
    params: &ModelParams,
    labeling: &ModeLabeling,
    convention: ConventionChoice,
) -> Result<Circuit, Error> {
    params.validate()?;
    let n = params.n;
    if labeling.mapping.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "labeling covers {} lines, chain has {}",
            labeling.mapping.len(),
            n
        )));
    }
    let mut circuit = Circuit::new(n);
    let half_line = labeling
        .line_of((n / 2) as i64)
        .ok_or_else(|| Error::Internal("labeling lacks the k = n/2 line".into()))?;
    match convention.occupation_sign {
        OccupationSign::Plus => circuit.push(x_gate(), vec![half_line])?,
        OccupationSign::Minus => {
            for l in 0..n {
                if l != half_line {
                    circuit.push(x_gate(), vec![l])?;
                }
            }
        }
    }

    let mut content = labeling.mapping.clone();
    for kappa in 1..n / 2 {
        let k_pos = kappa as i64;
        let k_neg = -k_pos;
        let theta = bogoliubov_angle(k_pos, params);
        let phi = match convention.bogoliubov_angle {
            AngleConvention::Full => theta,
            AngleConvention::Half => theta / 2.0,
        };
        if phi.abs() < 1e-15 {
            continue;
        }
        let a = content.iter().position(|&c| c == k_pos).expect("momentum present");
        let b = content.iter().position(|&c| c == k_neg).expect("momentum present");
        let (lo, hi) = (a.min(b), a.max(b));
        let mut route = Vec::new();
        for p in ((lo + 1)..hi).rev() {
            circuit.push(fswap(), vec![p, p + 1])?;
            content.swap(p, p + 1);
            route.push(p);
        }
        let top_is_positive = content[lo] == k_pos;
        let gate = bogoliubov_gate(k_pos, params, convention.bogoliubov_angle)?;
        let gate = if top_is_positive == B_POSITIVE_TOP { gate } else { gate.dagger() };
        circuit.push(gate, vec![lo, lo + 1])?;
        for &p in route.iter().rev() {
            circuit.push(fswap(), vec![p, p + 1])?;
            content.swap(p, p + 1);
        }
        debug_assert_eq!(content, labeling.mapping);
    }
    Ok(circuit)
}

/// The full disentangler plus the bookkeeping needed to use it: the mode
/// table, the line ↔ momentum assignment, and the conventions it was built
/// under.
#[derive(Debug, Clone)]
pub struct Disentangler {
    pub circuit: Circuit,
    pub table: ModeTable,
    pub labeling: ModeLabeling,
    pub convention: ConventionChoice,
    pub params: ModelParams,
}

impl Disentangler {
    /// Signed energy of the given qubit line (see [`line_energy`]).
    pub fn line_energy(&self, line: usize) -> f64 {
        line_energy(self.labeling.mapping[line], &self.params, self.convention)
    }

    /// Basis index whose image under the circuit is the ground state: set
    /// bits exactly on lines with negative signed energy.
    pub fn prep_mask(&self) -> usize {
        let n = self.params.n;
        let mut mask = 0usize;
        for line in 0..n {
            if self.line_energy(line) < 0.0 {
                mask |= 1 << (n - 1 - line);
            }
        }
        mask
    }

    /// Basis index preparing the eigenstate with the given quasiparticle
    /// occupations, indexed like `table.modes` (ascending k).
    pub fn basis_index_for_occupation(&self, occupation: &[u8]) -> Result<usize, Error> {
        let n = self.params.n;
        if occupation.len() != n || occupation.iter().any(|&b| b > 1) {
            return Err(Error::BadOccupation { got: occupation.len(), expected: n });
        }
        let mask = self.prep_mask();
        let mut index = 0usize;
        for line in 0..n {
            let k = self.labeling.mapping[line];
            let mode_idx = self
                .table
                .index_of(k)
                .ok_or_else(|| Error::Internal(format!("momentum {k} missing from table")))?;
            let bit = occupation[mode_idx] as usize ^ ((mask >> (n - 1 - line)) & 1);
            index |= bit << (n - 1 - line);
        }
        Ok(index)
    }
}

/// Builds the complete disentangler U = U_FT · U_B for the given parameters
/// and conventions.
pub fn build_disentangler(
    params: &ModelParams,
    convention: ConventionChoice,
) -> Result<Disentangler, Error> {
    let (network, labeling) = build_fourier_network(params.n)?;
    let bogoliubov = build_bogoliubov_layer(params, &labeling, convention)?;
    let mut circuit = Circuit::new(params.n);
    circuit.ops.extend(bogoliubov.ops);
    circuit.ops.extend(network.ops);
    let table = mode_table(params)?;
    Ok(Disentangler { circuit, table, labeling, convention, params: *params })
}

/// Reduced transverse-field Ising (γ = 1) disentangler on four qubits: the
/// full construction with the pair rotation fused into the Fourier butterfly
/// that follows it on the same two lines. The result is unitary-identical to
/// [`build_disentangler`] and uses at most six two-qubit gates.
pub fn build_ising4(lambda: f64, convention: ConventionChoice) -> Result<Circuit, Error> {
    let params = ModelParams::new(4, lambda, 1.0)?;
    let dis = build_disentangler(&params, convention)?;
    let ops = dis.circuit.ops;

    let mut fuse_with: Option<usize> = None;
    let mut bog_at: Option<usize> = None;
    'outer: for (i, op) in ops.iter().enumerate() {
        if op.gate.label() != GateLabel::Bogoliubov {
            continue;
        }
        for (j, later) in ops.iter().enumerate().skip(i + 1) {
            if later.gate.label() == GateLabel::Fourier && later.targets == op.targets {
                bog_at = Some(i);
                fuse_with = Some(j);
                break 'outer;
            }
            if later.targets.iter().any(|t| op.targets.contains(t)) {
                break;
            }
        }
    }

    let mut circuit = Circuit::new(4);
    if let (Some(i), Some(j)) = (bog_at, fuse_with) {
        let b = &ops[i];
        let phi = b.gate.params().theta.ok_or_else(|| {
            Error::Internal("pair rotation lacks an angle".into())
        })?;
        // daggered B(φ) is B(−φ)
        let signed_phi = if b.gate.is_daggered() { -phi } else { phi };
        for (idx, op) in ops.into_iter().enumerate() {
            if idx == i {
                continue;
            }
            if idx == j {
                let k = op.gate.params().k.ok_or_else(|| {
                    Error::Internal("fusion partner lacks a momentum".into())
                })?;
                let ring = op.gate.params().ring.unwrap_or(4);
                circuit.push(fused_fourier_bogoliubov(k, ring, signed_phi)?, op.targets)?;
            } else {
                circuit.push(op.gate, op.targets)?;
            }
        }
    } else {
        for op in ops {
            circuit.push(op.gate, op.targets)?;
        }
    }

    let stats = circuit.stats();
    if stats.two_qubit_gates > 6 {
        return Err(Error::Internal(format!(
            "reduced Ising circuit uses {} two-qubit gates",
            stats.two_qubit_gates
        )));
    }
    Ok(circuit)
}

/// Residuals of one convention candidate, worst case over the probe grid.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateScore {
    pub choice: ConventionChoice,
    /// Largest |off-diagonal| of U†HU.
    pub max_offdiag: f64,
    /// Sorted diag(U†HU) vs the sorted assembled free-fermion spectrum.
    pub spectral_error: f64,
    /// Elementwise check diag[b] = E₀ + Σ_ℓ occ_ℓ(b)·ω under one fixed
    /// occupation accounting; this is what separates the two gauge-related
    /// occupation signs, which an off-diagonal test alone cannot.
    pub energy_map_error: f64,
    pub residual: f64,
    pub pass: bool,
}

/// Outcome of the convention search: the unique surviving choice plus the
/// residual landscape of all eight candidates.
#[derive(Debug, Clone, Serialize)]
pub struct Resolution {
    pub choice: ConventionChoice,
    pub landscape: Vec<CandidateScore>,
}

const RESOLVE_TOL: f64 = 1e-10;

fn score_candidate(n: usize, choice: ConventionChoice) -> Result<CandidateScore, Error> {
    let mut worst = CandidateScore {
        choice,
        max_offdiag: 0.0,
        spectral_error: 0.0,
        energy_map_error: 0.0,
        residual: 0.0,
        pass: false,
    };
    for &lambda in &[0.0, 0.5, 1.5] {
        for &gamma in &[1.0, 0.5] {
            let params = ModelParams::new(n, lambda, gamma)?;
            let h = build_xy_hamiltonian(&params, choice.boundary_sign)?;
            let dis = build_disentangler(&params, choice)?;
            let u = dis.circuit.unitary_of()?;
            let m = u.dagger().mul(&pauli_sum_to_matrix(&h)?).mul(&u);
            worst.max_offdiag = worst.max_offdiag.max(m.max_offdiag());

            let table = &dis.table;
            let dim = 1usize << n;
            let mut diag: Vec<f64> = m.diagonal().iter().map(|z| z.re).collect();
            // Fixed occupation accounting: bit 1 on a line counts +ω of its
            // momentum, except that for λ > 1 the k = 0 line is inverted
            // (its gateless quasi-vacuum is the occupied bare mode there).
            let mut map_err = 0.0f64;
            for (b, &d) in diag.iter().enumerate() {
                let mut e = table.e0;
                for line in 0..n {
                    let k = dis.labeling.mapping[line];
                    let mode = &table.modes[table.index_of(k).expect("momentum in table")];
                    let bit = (b >> (n - 1 - line)) & 1;
                    let occ = if k == 0 && lambda > 1.0 { 1 - bit } else { bit };
                    e += occ as f64 * mode.omega;
                }
                map_err = map_err.max((d - e).abs());
            }
            worst.energy_map_error = worst.energy_map_error.max(map_err);

            let mut assembled = Vec::with_capacity(dim);
            for occ in 0..dim {
                let mut e = table.e0;
                for (i, mode) in table.modes.iter().enumerate() {
                    if (occ >> i) & 1 == 1 {
                        e += mode.omega;
                    }
                }
                assembled.push(e);
            }
            assembled.sort_by(|a, b| a.partial_cmp(b).unwrap());
            diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let spec = diag
                .iter()
                .zip(assembled.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            worst.spectral_error = worst.spectral_error.max(spec);
        }
    }
    worst.residual = worst.max_offdiag.max(worst.spectral_error).max(worst.energy_map_error);
    worst.pass = worst.residual <= RESOLVE_TOL;
    Ok(worst)
}

/// Exhaustive search over the eight convention candidates on a probe grid of
/// couplings (λ ∈ {0, 0.5, 1.5} × γ ∈ {1, 0.5}) at the given chain length.
/// Succeeds only when exactly one candidate diagonalizes the Hamiltonian
/// with the correct per-occupation energies.
pub fn resolve_conventions(n: usize) -> Result<Resolution, Error> {
    crate::require_power_of_two(n)?;
    let mut landscape = Vec::with_capacity(8);
    for choice in ConventionChoice::all() {
        landscape.push(score_candidate(n, choice)?);
    }
    let survivors: Vec<&CandidateScore> = landscape.iter().filter(|s| s.pass).collect();
    match survivors.len() {
        1 => Ok(Resolution { choice: survivors[0].choice, landscape: landscape.clone() }),
        0 => {
            let best = landscape.iter().map(|s| s.residual).fold(f64::INFINITY, f64::min);
            Err(Error::NoConvention { best })
        }
        k => Err(Error::AmbiguousConvention(k)),
    }
}

/// Basis index (or indices, when a zero mode leaves one line free) whose
/// image under the disentangler is the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InitialState {
    pub index: usize,
    /// Present when the ground state is degenerate within 1e−12: flipping
    /// the zero-energy line's bit gives a second, equally valid index.
    pub degenerate_partner: Option<usize>,
}

/// Computes the ground-state preparation index for the given parameters:
/// bit 1 exactly on lines whose signed energy is negative (for the
/// transverse-field chain this is |00…0⟩ for λ < 1 and |00…01⟩ for λ > 1).
pub fn initial_basis_state(
    params: &ModelParams,
    convention: ConventionChoice,
) -> Result<InitialState, Error> {
    let (_, labeling) = build_fourier_network(params.n)?;
    let n = params.n;
    let mut index = 0usize;
    let mut free_bit = None;
    for line in 0..n {
        let k = labeling.mapping[line];
        let g = line_energy(k, params, convention);
        if g < 0.0 {
            index |= 1 << (n - 1 - line);
        }
        if g.abs() <= 1e-12 && free_bit.is_none() {
            free_bit = Some(1usize << (n - 1 - line));
        }
    }
    Ok(InitialState { index, degenerate_partner: free_bit.map(|b| index ^ b) })
}
