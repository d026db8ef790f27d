//! Brute-force ground truth, independent of the circuit machinery.
//!
//! Everything the rest of the crate claims is checked against dense linear
//! algebra built here from scratch: a cyclic Jacobi eigensolver for complex
//! Hermitian matrices (no external linear-algebra dependency), the matrix
//! exponential and Gibbs state derived from it, and the conjugation test
//! U†HU ≈ diagonal that certifies a disentangling circuit.
//!
//! The Jacobi iteration zeroes one off-diagonal pair per rotation. For a
//! Hermitian pivot `m[p][q] = r·e^{iφ}` the unitary is a phase factor times a
//! real Givens rotation, with the angle chosen from the stable small-root
//! formula t = sign(τ)/(|τ| + √(1+τ²)), τ = (m[q][q] − m[p][p])/(2r).
//! Sweeps run cyclically over all pairs until the off-diagonal Frobenius
//! norm falls below 1e−13·‖M‖_F, with a hard limit of 100 sweeps.

use num_complex::Complex64;
use serde::Serialize;

use crate::builder::ConventionChoice;
use crate::circuit::Circuit;
use crate::dense::Matrix;
use crate::pauli::{pauli_sum_to_matrix, ModelParams, PauliSum};
use crate::spectrum::ModeTable;
use crate::statevector::DensityMatrix;
use crate::Error;

const MAX_SWEEPS: usize = 100;
const CONVERGENCE_FACTOR: f64 = 1e-13;

fn off_frobenius(m: &Matrix) -> f64 {
    let d = m.dim();
    let mut s = 0.0;
    for r in 0..d {
        for c in 0..d {
            if r != c {
                s += m[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix: eigenvalues ascending plus the
/// matching orthonormal eigenvector columns, M = V·diag(E)·V†.
pub fn eigh(m: &Matrix) -> Result<(Vec<f64>, Matrix), Error> {
    let defect = m.hermiticity_defect();
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    let d = m.dim();
    // Symmetrize to scrub roundoff-level asymmetry before iterating.
    let mut a = Matrix::zeros(d);
    for r in 0..d {
        for c in 0..d {
            a[(r, c)] = 0.5 * (m[(r, c)] + m[(c, r)].conj());
        }
    }
    // The XY Hamiltonians built in this crate are exactly real (every term
    // carries an even number of Y factors), so a real Jacobi with a quarter
    // of the arithmetic handles the hot path. Only exactly-real input takes
    // it; anything with a nonzero imaginary part runs the complex iteration.
    if (0..d).all(|r| (0..d).all(|c| a[(r, c)].im == 0.0)) {
        return eigh_real(&a);
    }
    let mut v = Matrix::identity(d);
    let scale = a.frobenius_norm();
    let target = CONVERGENCE_FACTOR * scale;

    let mut converged = scale == 0.0 || off_frobenius(&a) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..d - 1 {
            for q in p + 1..d {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < 1e-280 {
                    continue;
                }
                let u = apq / r; // e^{iφ}
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let su = s * u;
                let suc = s * u.conj();

                // M ← M·J  (rows: columns p and q mix)
                for i in 0..d {
                    let mip = a[(i, p)];
                    let miq = a[(i, q)];
                    a[(i, p)] = c * mip - suc * miq;
                    a[(i, q)] = s * mip + (c * u.conj()) * miq;
                }
                // M ← J†·M  (columns: rows p and q mix)
                for j in 0..d {
                    let mpj = a[(p, j)];
                    let mqj = a[(q, j)];
                    a[(p, j)] = c * mpj - su * mqj;
                    a[(q, j)] = s * mpj + (c * u) * mqj;
                }
                // V ← V·J
                for i in 0..d {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip - suc * viq;
                    v[(i, q)] = s * vip + (c * u.conj()) * viq;
                }
            }
        }
        converged = off_frobenius(&a) <= target;
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps, offnorm: off_frobenius(&a) });
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = Matrix::zeros(d);
    for (new_c, &old_c) in order.iter().enumerate() {
        vectors.set_column(new_c, &v.column(old_c));
    }
    Ok((eigenvalues, vectors))
}

/// Cyclic Jacobi for a real symmetric matrix: same pivot policy, angle
/// formula, convergence target, and sweep limit as the complex path, with
/// the phase factor reduced to the sign of the pivot.
fn eigh_real(sym: &Matrix) -> Result<(Vec<f64>, Matrix), Error> {
    let d = sym.dim();
    let mut a = vec![0.0f64; d * d];
    for r in 0..d {
        for c in 0..d {
            a[r * d + c] = sym[(r, c)].re;
        }
    }
    let mut v = vec![0.0f64; d * d];
    for i in 0..d {
        v[i * d + i] = 1.0;
    }
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for r in 0..d {
            for c in 0..d {
                if r != c {
                    s += a[r * d + c] * a[r * d + c];
                }
            }
        }
        s.sqrt()
    };
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = CONVERGENCE_FACTOR * scale;

    let mut converged = scale == 0.0 || off(&a) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..d - 1 {
            for q in p + 1..d {
                let apq = a[p * d + q];
                let r = apq.abs();
                if r < 1e-280 {
                    continue;
                }
                let u = apq / r; // ±1
                let tau = (a[q * d + q] - a[p * d + p]) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let su = s * u;
                let cu = c * u;

                for row in a.chunks_exact_mut(d) {
                    let aip = row[p];
                    let aiq = row[q];
                    row[p] = c * aip - su * aiq;
                    row[q] = s * aip + cu * aiq;
                }
                {
                    let (head, tail) = a.split_at_mut(q * d);
                    let rp = &mut head[p * d..p * d + d];
                    let rq = &mut tail[..d];
                    for (x, y) in rp.iter_mut().zip(rq.iter_mut()) {
                        let apj = *x;
                        let aqj = *y;
                        *x = c * apj - su * aqj;
                        *y = s * apj + cu * aqj;
                    }
                }
                for row in v.chunks_exact_mut(d) {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = c * vip - su * viq;
                    row[q] = s * vip + cu * viq;
                }
            }
        }
        converged = off(&a) <= target;
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps, offnorm: off(&a) });
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[i * d + i].partial_cmp(&a[j * d + j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * d + i]).collect();
    let mut vectors = Matrix::zeros(d);
    for (new_c, &old_c) in order.iter().enumerate() {
        for r in 0..d {
            vectors[(r, new_c)] = v[r * d + old_c].into();
        }
    }
    Ok((eigenvalues, vectors))
}

/// V·diag(exp(scale·E))·V† for Hermitian m; with imaginary `scale` the result
/// is unitary.
pub fn expm_hermitian(m: &Matrix, scale: Complex64) -> Result<Matrix, Error> {
    let (evals, v) = eigh(m)?;
    let d = m.dim();
    let mut out = Matrix::zeros(d);
    // Σ_k exp(scale·E_k) |v_k⟩⟨v_k|
    for (k, &e) in evals.iter().enumerate() {
        let w = (scale * e).exp();
        let col = v.column(k);
        for r in 0..d {
            let wr = w * col[r];
            for c in 0..d {
                out[(r, c)] += wr * col[c].conj();
            }
        }
    }
    Ok(out)
}

/// Thermal state e^{−βM} / tr(e^{−βM}), computed with the max-shift
/// e^{−β(E−E_min)} so large β cannot overflow.
pub fn gibbs_oracle(m: &Matrix, beta: f64) -> Result<DensityMatrix, Error> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::BadTemperature(beta));
    }
    let (evals, v) = eigh(m)?;
    let d = m.dim();
    let n = d.trailing_zeros() as usize;
    if d != 1usize << n {
        return Err(Error::DimensionMismatch(format!("matrix side {d} is not a power of two")));
    }
    let emin = evals.iter().cloned().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = evals.iter().map(|&e| (-beta * (e - emin)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let mut out = Matrix::zeros(d);
    for (k, weight) in weights.iter().enumerate() {
        let w = weight / z;
        let col = v.column(k);
        for r in 0..d {
            let wr = w * col[r];
            for c in 0..d {
                out[(r, c)] += wr * col[c].conj();
            }
        }
    }
    DensityMatrix::from_matrix(n, out)
}

/// ½‖ρ − σ‖₁ via the eigenvalues of the (Hermitian) difference.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, Error> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "trace distance between {} and {} qubits",
            a.n(),
            b.n()
        )));
    }
    let diff = a.entries().sub(b.entries());
    let (evals, _) = eigh(&diff)?;
    Ok(0.5 * evals.iter().map(|e| e.abs()).sum::<f64>())
}

/// Ground energy and an orthonormal basis of the eigenspace within
/// `degeneracy_tol` of it. Degenerate points (e.g. the critical chain) make
/// single eigenvectors non-unique, so comparisons should go through this
/// subspace rather than vector-by-vector.
pub fn ground_subspace(m: &Matrix, degeneracy_tol: f64) -> Result<(f64, Vec<Vec<Complex64>>), Error> {
    let (evals, v) = eigh(m)?;
    let e0 = evals[0];
    let basis = evals
        .iter()
        .enumerate()
        .take_while(|(_, &e)| e - e0 <= degeneracy_tol)
        .map(|(i, _)| v.column(i))
        .collect();
    Ok((e0, basis))
}

/// Quantitative outcome of conjugating H through a candidate disentangler.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Largest |off-diagonal| entry of U†HU.
    pub max_offdiag: f64,
    /// Max elementwise gap between sorted diag(U†HU) and the sorted
    /// free-fermion spectrum assembled from the mode table.
    pub spectral_error: f64,
    pub pass: bool,
    pub convention: ConventionChoice,
    pub params: ModelParams,
}

/// Conjugates the dense Hamiltonian through the circuit and scores how
/// diagonal the result is; passes iff both error measures are ≤ tol.
pub fn verify_diagonalization(
    circuit: &Circuit,
    h: &PauliSum,
    table: &ModeTable,
    convention: ConventionChoice,
    params: &ModelParams,
    tol: f64,
) -> Result<VerificationReport, Error> {
    const MAX_N: usize = 10;
    if circuit.n > MAX_N {
        return Err(Error::TooLarge { n: circuit.n, max: MAX_N, what: "dense conjugation" });
    }
    if h.n != circuit.n || table.n() != circuit.n {
        return Err(Error::DimensionMismatch(format!(
            "circuit on {} qubits, Hamiltonian on {}, mode table on {}",
            circuit.n,
            h.n,
            table.n()
        )));
    }
    let u = circuit.unitary_of()?;
    let hd = pauli_sum_to_matrix(h)?;
    let m = u.dagger().mul(&hd).mul(&u);
    let max_offdiag = m.max_offdiag();

    let mut diag: Vec<f64> = m.diagonal().iter().map(|z| z.re).collect();
    diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut assembled = Vec::with_capacity(1usize << table.n());
    for occ in 0..(1usize << table.n()) {
        let mut e = table.e0;
        for (i, mode) in table.modes.iter().enumerate() {
            if (occ >> i) & 1 == 1 {
                e += mode.omega;
            }
        }
        assembled.push(e);
    }
    assembled.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let spectral_error = diag
        .iter()
        .zip(assembled.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let pass = max_offdiag <= tol && spectral_error <= tol;
    Ok(VerificationReport { max_offdiag, spectral_error, pass, convention, params: *params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{build_xy_hamiltonian, BoundarySign, Pauli, PauliString};
    use crate::spectrum::{many_body_spectrum, mode_table, Mode};
    use crate::statevector::StateVector;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(d: usize, seed: u64) -> Matrix {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = Matrix::zeros(d);
        for r in 0..d {
            for col in 0..d {
                m[(r, col)] = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
        }
        let md = m.dagger();
        for r in 0..d {
            for col in 0..d {
                let v = m[(r, col)] + md[(r, col)];
                m[(r, col)] = v;
            }
        }
        m
    }

    #[test]
    fn real_symmetric_fast_path_is_a_valid_eigendecomposition() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let d = 24;
        let mut m = Matrix::zeros(d);
        for r in 0..d {
            for col in r..d {
                let x = rng.gen::<f64>() - 0.5;
                m[(r, col)] = c(x, 0.0);
                m[(col, r)] = c(x, 0.0);
            }
        }
        let (evals, v) = eigh(&m).unwrap();
        assert!(evals.windows(2).all(|w| w[0] <= w[1]));
        // V orthonormal and V·D·V† = M
        let vdv = {
            let mut dvd = Matrix::zeros(d);
            for k in 0..d {
                for r in 0..d {
                    dvd[(r, k)] = evals[k] * v[(r, k)];
                }
            }
            dvd.mul(&v.dagger())
        };
        assert!(v.dagger().mul(&v).max_deviation_from_identity() <= 1e-12);
        assert!(vdv.sub(&m).frobenius_norm() <= 1e-11 * m.frobenius_norm().max(1.0));
        // eigenvectors of a real matrix come out real
        for r in 0..d {
            for col in 0..d {
                assert_eq!(v[(r, col)].im, 0.0);
            }
        }
    }

    #[test]
    fn eigh_diagonal_matrix() {
        let m = Matrix::from_rows(&[
            vec![c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)],
        ]);
        let (evals, v) = eigh(&m).unwrap();
        assert_eq!(evals, vec![1.0, 2.0, 3.0]);
        assert!(v.dagger().mul(&v).max_deviation_from_identity() < 1e-12);
    }

    #[test]
    fn eigh_pauli_x() {
        let x = Matrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]);
        let (evals, v) = eigh(&x).unwrap();
        assert!((evals[0] + 1.0).abs() < 1e-14);
        assert!((evals[1] - 1.0).abs() < 1e-14);
        // Residual ‖Xv − λv‖ per eigenpair.
        for (k, &e) in evals.iter().enumerate() {
            let col = v.column(k);
            let xv = x.matvec(&col);
            let err: f64 = xv.iter().zip(col.iter()).map(|(a, b)| (a - e * b).norm()).sum();
            assert!(err < 1e-13);
        }
    }

    #[test]
    fn eigh_random_matrices_up_to_256() {
        for &(d, seed) in &[(8usize, 1u64), (32, 2), (128, 3), (256, 4)] {
            let m = random_hermitian(d, seed);
            let (evals, v) = eigh(&m).unwrap();
            assert!(v.dagger().mul(&v).max_deviation_from_identity() < 1e-10, "V not unitary at d={d}");
            // ‖MV − V·diag(E)‖_F ≤ 1e−9·‖M‖_F
            let mv = m.mul(&v);
            let mut res = 0.0f64;
            for col in 0..d {
                for r in 0..d {
                    res += (mv[(r, col)] - evals[col] * v[(r, col)]).norm_sqr();
                }
            }
            let res = res.sqrt();
            assert!(res <= 1e-9 * m.frobenius_norm(), "residual {res:.3e} at d={d}");
            // Ascending order.
            for w in evals.windows(2) {
                assert!(w[0] <= w[1] + 1e-14);
            }
        }
    }

    #[test]
    fn eigh_matches_free_fermion_spectrum() {
        let params = ModelParams::new(4, 0.0, 1.0).unwrap();
        let h = build_xy_hamiltonian(&params, BoundarySign::AsWritten).unwrap();
        let (evals, _) = eigh(&pauli_sum_to_matrix(&h).unwrap()).unwrap();
        let expected = many_body_spectrum(&params).unwrap();
        for (a, b) in evals.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let m = Matrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]);
        assert!(matches!(eigh(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn expm_scale_zero_and_pauli_z() {
        let z = Matrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]);
        let id = expm_hermitian(&z, c(0.0, 0.0)).unwrap();
        assert!(id.max_deviation_from_identity() < 1e-12);

        let t = 0.83;
        let u = expm_hermitian(&z, c(0.0, -t)).unwrap();
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, -t)).norm() < 1e-12);
        assert!((u[(1, 1)] - Complex64::from_polar(1.0, t)).norm() < 1e-12);
        assert!(u[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn expm_forward_backward_is_identity() {
        let m = random_hermitian(16, 9);
        let f = expm_hermitian(&m, c(0.0, -0.7)).unwrap();
        let b = expm_hermitian(&m, c(0.0, 0.7)).unwrap();
        assert!(f.mul(&b).max_deviation_from_identity() < 1e-9);
        assert!(f.dagger().mul(&f).max_deviation_from_identity() < 1e-9);
    }

    #[test]
    fn gibbs_oracle_limits() {
        let params = ModelParams::new(2, 0.5, 1.0).unwrap();
        let h = pauli_sum_to_matrix(&build_xy_hamiltonian(&params, BoundarySign::AsWritten).unwrap())
            .unwrap();

        let rho0 = gibbs_oracle(&h, 0.0).unwrap();
        assert!(
            rho0.entries().sub(DensityMatrix::maximally_mixed(2).entries()).frobenius_norm()
                < 1e-12
        );

        // β large → ground projector (the n=2, λ=0.5 chain is gapped).
        let rho = gibbs_oracle(&h, 200.0).unwrap();
        let (_, basis) = ground_subspace(&h, 1e-9).unwrap();
        assert_eq!(basis.len(), 1);
        let g = &basis[0];
        let mut proj = Matrix::zeros(4);
        for r in 0..4 {
            for col in 0..4 {
                proj[(r, col)] = g[r] * g[col].conj();
            }
        }
        assert!(rho.entries().sub(&proj).frobenius_norm() < 1e-8);

        assert!(matches!(gibbs_oracle(&h, -1.0), Err(Error::BadTemperature(_))));
    }

    #[test]
    fn trace_distance_extremes() {
        let a = DensityMatrix::from_pure(&StateVector::basis_state(2, 0).unwrap());
        let b = DensityMatrix::from_pure(&StateVector::basis_state(2, 3).unwrap());
        assert!(trace_distance(&a, &a).unwrap() < 1e-14);
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-12);
        let m = DensityMatrix::maximally_mixed(2);
        // d(|0⟩⟨0|, I/4) = ½(¾ + 3·¼) = ¾.
        assert!((trace_distance(&a, &m).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn verify_identity_circuit_on_diagonal_hamiltonian() {
        // H = Σ w_i Z_i is already diagonal; an empty circuit must verify
        // perfectly against the matching mode table (line energies 2w_i).
        let n = 3;
        let w = [0.7, 0.4, 0.2];
        let mut h = PauliSum::new(n);
        for (i, &wi) in w.iter().enumerate() {
            h.push(wi, PauliString::from_sites(n, &[(i, Pauli::Z)]));
        }
        let modes: Vec<Mode> =
            (0..n).map(|i| Mode { k: i as i64, theta: 0.0, omega: 2.0 * w[i] }).collect();
        let e0 = -0.5 * modes.iter().map(|m| m.omega).sum::<f64>();
        let table = ModeTable { modes, e0 };
        let circuit = Circuit::new(n);
        let convention = ConventionChoice::all()[0];
        let params = ModelParams { n, lambda: 0.0, gamma: 1.0 };
        let report =
            verify_diagonalization(&circuit, &h, &table, convention, &params, 1e-12).unwrap();
        assert!(report.pass);
        assert_eq!(report.max_offdiag, 0.0);
        assert!(report.spectral_error < 1e-14);
    }

    #[test]
    fn verify_report_ignores_global_phase() {
        // U†HU is invariant under U → e^{iα}U; check at the dense level.
        let params = ModelParams::new(2, 0.5, 1.0).unwrap();
        let h = pauli_sum_to_matrix(&build_xy_hamiltonian(&params, BoundarySign::AsWritten).unwrap())
            .unwrap();
        let u = random_unitary_4(11);
        let alpha = Complex64::from_polar(1.0, 1.234);
        let m1 = u.dagger().mul(&h).mul(&u);
        let up = u.scaled(alpha);
        let m2 = up.dagger().mul(&h).mul(&up);
        assert!(m1.sub(&m2).frobenius_norm() < 1e-12);
    }

    fn random_unitary_4(seed: u64) -> Matrix {
        // Exponential of a random Hermitian generator is unitary.
        expm_hermitian(&random_hermitian(4, seed), c(0.0, -1.0)).unwrap()
    }

    #[test]
    fn verify_rejects_oversize_and_mismatch() {
        let params = ModelParams::new(4, 0.5, 1.0).unwrap();
        let h = build_xy_hamiltonian(&params, BoundarySign::AsWritten).unwrap();
        let table = mode_table(&params).unwrap();
        let convention = ConventionChoice::all()[0];
        let wrong = Circuit::new(2);
        assert!(matches!(
            verify_diagonalization(&wrong, &h, &table, convention, &params, 1e-10),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
