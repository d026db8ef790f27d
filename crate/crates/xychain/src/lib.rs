//! Exact disentangling circuits for the XY / transverse-field Ising chain.
//!
//! The XY chain with string boundary terms is solvable by a chain of three
//! transformations: a Jordan–Wigner relabeling (which acts as the identity on
//! wavefunction amplitudes), a fermionic fast Fourier transform into momentum
//! modes, and a Bogoliubov rotation pairing momenta (k, −k). This crate builds
//! the corresponding quantum circuit U = U_FT · U_Bog out of three 2-qubit
//! gate families (fSWAP, F_k, B_k) plus single-qubit occupation flips, runs it
//! on dense statevectors, and verifies everything against a self-contained
//! brute-force eigensolver:
//!
//! * conjugating the Hamiltonian through the circuit yields a diagonal matrix
//!   whose entries follow the free-fermion energy map E₀ + Σ_k n_k ω_k,
//! * any eigenstate is prepared by running the circuit on one basis state,
//! * e^{−itH} costs n single-qubit phase gates between U† and U,
//! * Gibbs states are conjugated product states.
//!
//! # Project-wide conventions
//!
//! * **Bit ordering**: qubit 0 is the *most significant* bit of a basis
//!   index: bit(q) of index i is `(i >> (n-1-q)) & 1`. All modules inherit
//!   this.
//! * **Pauli Z sign**: Z|0⟩ = +|0⟩.
//! * **Occupation**: computational |1⟩ on a line denotes an occupied
//!   fermionic mode; gate matrices act on amplitude vectors (A' = U·A).
//! * A handful of sign/angle conventions are genuinely ambiguous on paper;
//!   they are enumerated in [`builder::ConventionChoice`] and fixed once by
//!   the numerical search [`builder::resolve_conventions`].

pub mod builder;
pub mod circuit;
pub mod dense;
pub mod dynamics;
pub mod gatelib;
pub mod oracle;
pub mod pauli;
pub mod spectrum;
pub mod statevector;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("chain length must be a power of two and at least 2, got {0}")]
    BadChainLength(usize),
    #[error("system size {n} exceeds the supported maximum {max} for {what}")]
    TooLarge { n: usize, max: usize, what: &'static str },
    #[error("target qubit {target} out of range for {n} qubits")]
    TargetOutOfRange { target: usize, n: usize },
    #[error("duplicate target qubits {0:?}")]
    DuplicateTargets(Vec<usize>),
    #[error("gate expects {expected} targets, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("momentum index {k} outside the mode grid for n = {n}")]
    BadMomentum { k: i64, n: usize },
    #[error("state is not normalized: |‖ψ‖² − 1| = {0:.3e}")]
    NotNormalized(f64),
    #[error("basis index {index} out of range for {n} qubits")]
    BadBasisIndex { index: usize, n: usize },
    #[error("invalid cut position {cut} for {n} qubits (valid: 1..={})", n - 1)]
    BadCut { cut: usize, n: usize },
    #[error("inverse temperature must be finite and non-negative, got {0}")]
    BadTemperature(f64),
    #[error("occupation pattern has length {got}, expected {expected}")]
    BadOccupation { got: usize, expected: usize },
    #[error("matrix is not Hermitian: max |M - M†| = {0:.3e}")]
    NotHermitian(f64),
    #[error("eigensolver did not converge after {sweeps} sweeps (off-norm {offnorm:.3e})")]
    NoConvergence { sweeps: usize, offnorm: f64 },
    #[error(
        "convention search found no valid choice (best residual {best:.3e}); \
         this signals an implementation bug"
    )]
    NoConvention { best: f64 },
    #[error("convention search found {0} surviving choices; expected exactly one")]
    AmbiguousConvention(usize),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub(crate) fn require_power_of_two(n: usize) -> Result<(), Error> {
    if n >= 2 && n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::BadChainLength(n))
    }
}
