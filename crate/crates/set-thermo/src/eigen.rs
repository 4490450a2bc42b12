//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! The general-purpose tridiagonalization solvers available to us lose five
//! digits of eigenvector accuracy on complex input, which is not good enough
//! for the reconstruction identities this crate guarantees. Jacobi rotations
//! converge quadratically and keep the residual at the machine-precision
//! floor; the matrices handled here are small (d of a few up to a few
//! dozen), where Jacobi is also plenty fast.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Diagonalizes a Hermitian matrix in place: returns `(eigenvalues, V)` with
/// `m = V diag(eigenvalues) V^H`, unsorted. Only the Hermitian part of the
/// input is read.
pub(crate) fn hermitian_jacobi(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v: DMatrix<Complex64> = DMatrix::identity(n, n);
    let scale = m.norm().max(f64::MIN_POSITIVE);
    let floor = scale * 1e-15 * n as f64;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= floor {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    (values, v)
}

/// One Jacobi rotation zeroing `a[(p, q)]`, accumulated into `v`.
fn rotate(a: &mut DMatrix<Complex64>, v: &mut DMatrix<Complex64>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= f64::MIN_POSITIVE {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / r;
    // angle from t^2 + 2ut - 1 = 0 with u = (app - aqq)/(2r); the small root
    // keeps |rotation| <= pi/4
    let u = (app - aqq) / (2.0 * r);
    let t = u.signum() / (u.abs() + (u * u + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.nrows();
    let cs = Complex64::new(c, 0.0);
    let s_conj_phase = phase.conj() * s;
    let s_phase = phase * s;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_p = cs * akp + s_conj_phase * akq;
        let new_q = -s_phase * akp + cs * akq;
        a[(k, p)] = new_p;
        a[(p, k)] = new_p.conj();
        a[(k, q)] = new_q;
        a[(q, k)] = new_q.conj();
    }
    let shift = 2.0 * c * s * r;
    a[(p, p)] = Complex64::new(c * c * app + s * s * aqq + shift, 0.0);
    a[(q, q)] = Complex64::new(s * s * app + c * c * aqq - shift, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = cs * vkp + s_conj_phase * vkq;
        v[(k, q)] = -s_phase * vkp + cs * vkq;
    }
}
