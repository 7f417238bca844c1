//! Leading-order closed forms for the innermost slice `[t−ε, t]`.

use std::f64::consts::PI;

use crate::geometry::BoundarySnapshot;
use crate::linalg::{Tensor2, Vec2};

/// `√(ε/π) (t̂⊗t̂) φ` at every node.
pub fn slp_asym(snap: &BoundarySnapshot, phi: &[Vec2], eps: f64) -> Vec<Vec2> {
    let c = (eps / PI).sqrt();
    snap.tangents.iter().zip(phi).map(|(t, p)| *t * (c * t.dot(*p))).collect()
}

/// Per-node tensors `(A, B)` with `D_ε[φ] ≈ Aφ + Bφ_s`:
/// `A = √(ε/π){(v·n/6 + κ/2) I + (v·n/3) t̂⊗t̂ − (v·n/6 + 3κ/2) n̂⊗n̂}`,
/// `B = √(ε/π){n̂⊗t̂ + 2 t̂⊗n̂}`.
pub fn dlp_asym_tensors(snap: &BoundarySnapshot, eps: f64) -> (Vec<Tensor2>, Vec<Tensor2>) {
    let c = (eps / PI).sqrt();
    let mut a = Vec::with_capacity(snap.len());
    let mut b = Vec::with_capacity(snap.len());
    for i in 0..snap.len() {
        let (t, n) = (snap.tangents[i], snap.normals[i]);
        let (vn, k) = (snap.normal_velocity[i], snap.curvature[i]);
        let mut ai = Tensor2::scaled_identity(vn / 6.0 + 0.5 * k);
        ai.add_scaled(&Tensor2::outer(t, t), vn / 3.0);
        ai.add_scaled(&Tensor2::outer(n, n), -(vn / 6.0 + 1.5 * k));
        a.push(ai * c);
        let mut bi = Tensor2::outer(n, t);
        bi.add_scaled(&Tensor2::outer(t, n), 2.0);
        b.push(bi * c);
    }
    (a, b)
}

pub fn dlp_asym(snap: &BoundarySnapshot, phi: &[Vec2], phi_s: &[Vec2], eps: f64) -> Vec<Vec2> {
    let (a, b) = dlp_asym_tensors(snap, eps);
    (0..snap.len()).map(|i| a[i].apply(phi[i]) + b[i].apply(phi_s[i])).collect()
}
