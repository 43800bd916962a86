//! Small dense linear algebra, generic over the AD scalar.
//!
//! Matrices here are at most 6×6. Pivoting branches on value parts only, so
//! the routines stay differentiable wherever the pivots are bounded away from
//! zero (which the callers' chart guards ensure).

use crate::scalar::{Cx, Real, DMAX};

pub type CMat<S> = [[Cx<S>; DMAX]; DMAX];

pub fn cmat_zero<S: Real>() -> CMat<S> {
    [[Cx::zero(); DMAX]; DMAX]
}

/// In-place Gauss–Jordan inverse of the leading `n`×`n` block.
/// Returns `None` if a pivot's value part is smaller than `tiny`.
pub fn cinvert<S: Real>(m: &CMat<S>, n: usize, tiny: f64) -> Option<CMat<S>> {
    let mut a = *m;
    let mut inv = cmat_zero::<S>();
    for (i, row) in inv.iter_mut().enumerate().take(n) {
        row[i] = Cx::one();
    }
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col][col].val().abs2();
        for r in col + 1..n {
            let cand = a[r][col].val().abs2();
            if cand > best {
                best = cand;
                piv = r;
            }
        }
        if best.sqrt() < tiny {
            return None;
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col].inv();
        for k in 0..n {
            a[col][k] = a[col][k] * d;
            inv[col][k] = inv[col][k] * d;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            // no zero-value shortcut here: an entry with zero value can
            // still carry jet derivatives that must propagate
            let f = a[r][col];
            for k in 0..n {
                a[r][k] = a[r][k] - f * a[col][k];
                inv[r][k] = inv[r][k] - f * inv[col][k];
            }
        }
    }
    Some(inv)
}

/// Determinant of the leading `n`×`n` block of a real matrix by LU with
/// partial pivoting.
pub fn rdet<S: Real>(m: &[[S; DMAX]; DMAX], n: usize) -> S {
    let mut a = *m;
    let mut det = S::one();
    let mut sign = 1.0;
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col][col].val().abs();
        for r in col + 1..n {
            let cand = a[r][col].val().abs();
            if cand > best {
                best = cand;
                piv = r;
            }
        }
        if piv != col {
            a.swap(col, piv);
            sign = -sign;
        }
        let p = a[col][col];
        if p.val() == 0.0 {
            return S::zero();
        }
        det = det * p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            for k in col..n {
                a[r][k] = a[r][k] - f * a[col][k];
            }
        }
    }
    det * S::from_f64(sign)
}

/// Eigenvalues and eigenvectors of a real symmetric `n`×`n` matrix by cyclic
/// Jacobi rotations. Returns (eigenvalues, column eigenvectors), unsorted.
pub fn sym_eigen(m: &[[f64; DMAX]; DMAX], n: usize) -> ([f64; DMAX], [[f64; DMAX]; DMAX]) {
    let mut a = *m;
    let mut v = [[0.0; DMAX]; DMAX];
    for (i, row) in v.iter_mut().enumerate().take(n) {
        row[i] = 1.0;
    }
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k][p], v[k][q]);
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut w = [0.0; DMAX];
    for i in 0..n {
        w[i] = a[i][i];
    }
    (w, v)
}

/// Eigenvalues of a Hermitian `n`×`n` complex matrix, ascending. Uses the
/// real embedding [[Re, -Im],[Im, Re]], whose spectrum is each eigenvalue
/// doubled.
pub fn herm_eigenvalues(m: &CMat<f64>, n: usize) -> Vec<f64> {
    assert!(2 * n <= DMAX, "hermitian eigensolver limited to n <= 3");
    let mut em = [[0.0; DMAX]; DMAX];
    for i in 0..n {
        for j in 0..n {
            em[i][j] = m[i][j].re;
            em[i][j + n] = -m[i][j].im;
            em[i + n][j] = m[i][j].im;
            em[i + n][j + n] = m[i][j].re;
        }
    }
    let (w, _) = sym_eigen(&em, 2 * n);
    let mut all: Vec<f64> = w[..2 * n].to_vec();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // embedded spectrum comes in pairs; keep every other entry
    all.into_iter().step_by(2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_hermitian_matrix() {
        let mut m = cmat_zero::<f64>();
        m[0][0] = Cx::new(2.0, 0.0);
        m[0][1] = Cx::new(0.3, 0.4);
        m[1][0] = Cx::new(0.3, -0.4);
        m[1][1] = Cx::new(1.5, 0.0);
        let inv = cinvert(&m, 2, 1e-12).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Cx::zero();
                for k in 0..2 {
                    s = s + m[i][k] * inv[k][j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s.re - want).abs() < 1e-14 && s.im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m3 = [
            [2.0, -1.0, 0.5],
            [0.3, 1.2, -0.7],
            [-0.2, 0.9, 1.8],
        ];
        let mut m = [[0.0; DMAX]; DMAX];
        for i in 0..3 {
            m[i][..3].copy_from_slice(&m3[i]);
        }
        let want = 2.0 * (1.2 * 1.8 - -0.7 * 0.9) - -1.0 * (0.3 * 1.8 - -0.7 * -0.2)
            + 0.5 * (0.3 * 0.9 - 1.2 * -0.2);
        assert!((rdet(&m, 3) - want).abs() < 1e-14);
    }

    #[test]
    fn jacobi_recovers_known_spectrum() {
        // diag(1,2,5) conjugated by a rotation in the (0,2) plane
        let (c, s) = (0.6, 0.8);
        let d = [1.0, 2.0, 5.0];
        let mut m = [[0.0; DMAX]; DMAX];
        m[0][0] = c * c * d[0] + s * s * d[2];
        m[0][2] = c * s * (d[2] - d[0]);
        m[2][0] = m[0][2];
        m[1][1] = d[1];
        m[2][2] = s * s * d[0] + c * c * d[2];
        let (w, v) = sym_eigen(&m, 3);
        let mut got: Vec<f64> = w[..3].to_vec();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, want) in got.iter().zip(d) {
            assert!((g - want).abs() < 1e-12);
        }
        // eigenvector residual
        for col in 0..3 {
            for row in 0..3 {
                let mut mv = 0.0;
                for k in 0..3 {
                    mv += m[row][k] * v[k][col];
                }
                assert!((mv - w[col] * v[row][col]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_like_matrix() {
        let mut m = cmat_zero::<f64>();
        m[0][1] = Cx::new(0.0, -1.0);
        m[1][0] = Cx::new(0.0, 1.0);
        let w = herm_eigenvalues(&m, 2);
        assert!((w[0] + 1.0).abs() < 1e-12 && (w[1] - 1.0).abs() < 1e-12);
    }
}
