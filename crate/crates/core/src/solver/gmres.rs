//! Unrestarted GMRES with modified Gram–Schmidt and Givens rotations.

/// Outcome of a GMRES solve.
#[derive(Debug, Clone)]
pub struct GmresOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Relative residual estimates ‖b − Ax_k‖/‖b‖, one per iteration (k = 0 first).
    pub residuals: Vec<f64>,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solve `A x = b` to relative residual `tol`, starting from `x0`.
pub fn gmres<F>(mut apply: F, b: &[f64], x0: &[f64], tol: f64, max_iter: usize) -> GmresOutcome
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    let n = b.len();
    let bnorm = norm(b);
    if bnorm == 0.0 {
        return GmresOutcome { x: vec![0.0; n], iterations: 0, residuals: vec![0.0], converged: true };
    }
    let ax0 = apply(x0);
    let r0: Vec<f64> = b.iter().zip(&ax0).map(|(p, q)| p - q).collect();
    let beta = norm(&r0);
    let mut residuals = vec![beta / bnorm];
    if beta / bnorm <= tol {
        return GmresOutcome { x: x0.to_vec(), iterations: 0, residuals, converged: true };
    }

    let mut v: Vec<Vec<f64>> = vec![r0.iter().map(|x| x / beta).collect()];
    let mut hcols: Vec<Vec<f64>> = Vec::new();
    let (mut cs, mut sn): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    let mut g = vec![beta];
    let mut converged = false;
    let mut k = 0;
    while k < max_iter.min(n) {
        let mut w = apply(&v[k]);
        let mut h = vec![0.0; k + 2];
        for (j, vj) in v.iter().enumerate() {
            h[j] = dot(&w, vj);
            w.iter_mut().zip(vj).for_each(|(wi, vi)| *wi -= h[j] * vi);
        }
        h[k + 1] = norm(&w);
        for j in 0..k {
            let t = cs[j] * h[j] + sn[j] * h[j + 1];
            h[j + 1] = -sn[j] * h[j] + cs[j] * h[j + 1];
            h[j] = t;
        }
        let d = h[k].hypot(h[k + 1]);
        let (c, s) = if d == 0.0 { (1.0, 0.0) } else { (h[k] / d, h[k + 1] / d) };
        cs.push(c);
        sn.push(s);
        let hk1 = h[k + 1];
        h[k] = c * h[k] + s * hk1;
        h[k + 1] = 0.0;
        g.push(-s * g[k]);
        g[k] *= c;
        hcols.push(h);
        k += 1;
        let rel = g[k].abs() / bnorm;
        residuals.push(rel);
        if rel <= tol {
            converged = true;
            break;
        }
        if hk1 == 0.0 {
            converged = true;
            break;
        }
        v.push(w.iter().map(|x| x / hk1).collect());
    }

    // Back substitution for the upper-triangular system.
    let mut y = vec![0.0; k];
    for i in (0..k).rev() {
        let mut s = g[i];
        for j in i + 1..k {
            s -= hcols[j][i] * y[j];
        }
        y[i] = s / hcols[i][i];
    }
    let mut x = x0.to_vec();
    for (j, yj) in y.iter().enumerate() {
        x.iter_mut().zip(&v[j]).for_each(|(xi, vi)| *xi += yj * vi);
    }
    GmresOutcome { x, iterations: k, residuals, converged }
}
