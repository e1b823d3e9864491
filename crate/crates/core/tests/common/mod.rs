use nalgebra::DMatrix;
use trapset::ets::build_system_matrix;
use trapset::Graph;

/// Dense spectral radius of the ETS system matrix. A fixed random orthogonal
/// similarity is applied first: the raw 0/1 matrices can stall the Schur
/// iteration indefinitely.
pub fn dense_rho(g: &Graph) -> f64 {
    let m = build_system_matrix(g).unwrap();
    let d = m.dim();
    let dense = m.to_dense();
    let a = DMatrix::from_fn(d, d, |i, j| f64::from(dense[i][j]));
    let mut s: u64 = 12345;
    let r = DMatrix::from_fn(d, d, |_, _| {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    });
    let q = r.qr().q();
    let schur = (q.transpose() * a * &q).try_schur(1e-14, 100_000).expect("schur did not converge");
    schur.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}
