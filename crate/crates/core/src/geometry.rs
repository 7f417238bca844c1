//! Smooth closed boundaries moving in time, their local frames, and
//! equispaced discretizations.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Vec2;
use crate::quadrature::gl_unit;
use crate::spectral::Spectral;

/// Parametrizations with |y_θ| below this are rejected as degenerate.
pub const SPEED_FLOOR: f64 = 1e-12;

/// A closed curve `y(θ, t)`, 2π-periodic in θ, with analytic derivatives.
///
/// Built-in curves are parametrized counterclockwise so that
/// `n = (t_y, −t_x)` points outward and κ > 0 on convex curves.
pub trait MovingBoundary: Send + Sync {
    fn position(&self, theta: f64, t: f64) -> Vec2;
    /// ∂y/∂θ.
    fn d_theta(&self, theta: f64, t: f64) -> Vec2;
    /// ∂²y/∂θ².
    fn d_theta2(&self, theta: f64, t: f64) -> Vec2;
    /// ∂y/∂t.
    fn velocity(&self, theta: f64, t: f64) -> Vec2;

    /// Position and θ-derivative together; override when they share work.
    fn position_and_tangent(&self, theta: f64, t: f64) -> (Vec2, Vec2) {
        (self.position(theta, t), self.d_theta(theta, t))
    }

    /// `position_and_tangent` at one parameter for several times.
    fn trajectory(&self, theta: f64, times: &[f64], out: &mut Vec<(Vec2, Vec2)>) {
        out.clear();
        out.extend(times.iter().map(|&t| self.position_and_tangent(theta, t)));
    }

    /// Upper bound on |y_t| over `[t0, t1]`. The default samples a grid and
    /// pads by 10%.
    fn max_speed(&self, t0: f64, t1: f64) -> f64 {
        let mut vmax: f64 = 0.0;
        for j in 0..=8 {
            let t = t0 + (t1 - t0) * j as f64 / 8.0;
            for i in 0..64 {
                let th = 2.0 * PI * i as f64 / 64.0;
                vmax = vmax.max(self.velocity(th, t).norm());
            }
        }
        1.1 * vmax
    }

    /// Lower bound on |y_θ| over `[t0, t1]` (sampled, padded by 10%).
    fn min_param_speed(&self, t0: f64, t1: f64) -> f64 {
        let mut smin = f64::INFINITY;
        for j in 0..=8 {
            let t = t0 + (t1 - t0) * j as f64 / 8.0;
            for i in 0..256 {
                let th = 2.0 * PI * i as f64 / 256.0;
                smin = smin.min(self.d_theta(th, t).norm());
            }
        }
        smin / 1.1
    }

    /// Upper bound on |y_θ| over `[t0, t1]` (sampled, padded by 10%).
    fn max_param_speed(&self, t0: f64, t1: f64) -> f64 {
        let mut smax: f64 = 0.0;
        for j in 0..=8 {
            let t = t0 + (t1 - t0) * j as f64 / 8.0;
            for i in 0..256 {
                let th = 2.0 * PI * i as f64 / 256.0;
                smax = smax.max(self.d_theta(th, t).norm());
            }
        }
        1.1 * smax
    }
}

/// `a(t) = a0 + a1·t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linear {
    pub a0: f64,
    pub a1: f64,
}

impl Linear {
    pub const fn new(a0: f64, a1: f64) -> Self {
        Linear { a0, a1 }
    }

    pub const fn constant(a0: f64) -> Self {
        Linear { a0, a1: 0.0 }
    }

    #[inline]
    pub fn at(&self, t: f64) -> f64 {
        self.a0 + self.a1 * t
    }
}

/// Ellipse with semi-axes and centre varying linearly in time:
/// `y = (c_x(t) + a(t) cos θ, c_y(t) + b(t) sin θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearEllipse {
    pub semi_x: Linear,
    pub semi_y: Linear,
    pub center_x: Linear,
    pub center_y: Linear,
}

impl LinearEllipse {
    /// `(0.8 cos θ + 0.4 t, 0.2 sin θ)`: a rigidly translating ellipse.
    pub const fn ellipse_translate() -> Self {
        LinearEllipse {
            semi_x: Linear::constant(0.8),
            semi_y: Linear::constant(0.2),
            center_x: Linear::new(0.0, 0.4),
            center_y: Linear::constant(0.0),
        }
    }

    /// `((0.5 + 0.2t) cos θ, (0.5 − 0.2t) sin θ)`: a circle deforming to an ellipse.
    pub const fn circle_to_ellipse() -> Self {
        LinearEllipse {
            semi_x: Linear::new(0.5, 0.2),
            semi_y: Linear::new(0.5, -0.2),
            center_x: Linear::constant(0.0),
            center_y: Linear::constant(0.0),
        }
    }

    pub const fn circle(radius: f64) -> Self {
        Self::ellipse(radius, radius)
    }

    pub const fn ellipse(a: f64, b: f64) -> Self {
        LinearEllipse {
            semi_x: Linear::constant(a),
            semi_y: Linear::constant(b),
            center_x: Linear::constant(0.0),
            center_y: Linear::constant(0.0),
        }
    }
}

impl MovingBoundary for LinearEllipse {
    #[inline]
    fn position(&self, theta: f64, t: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(self.center_x.at(t) + self.semi_x.at(t) * c, self.center_y.at(t) + self.semi_y.at(t) * s)
    }

    #[inline]
    fn d_theta(&self, theta: f64, t: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(-self.semi_x.at(t) * s, self.semi_y.at(t) * c)
    }

    #[inline]
    fn d_theta2(&self, theta: f64, t: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(-self.semi_x.at(t) * c, -self.semi_y.at(t) * s)
    }

    #[inline]
    fn velocity(&self, theta: f64, _t: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(self.center_x.a1 + self.semi_x.a1 * c, self.center_y.a1 + self.semi_y.a1 * s)
    }

    #[inline]
    fn position_and_tangent(&self, theta: f64, t: f64) -> (Vec2, Vec2) {
        let (s, c) = theta.sin_cos();
        let (a, b) = (self.semi_x.at(t), self.semi_y.at(t));
        (
            Vec2::new(self.center_x.at(t) + a * c, self.center_y.at(t) + b * s),
            Vec2::new(-a * s, b * c),
        )
    }

    fn trajectory(&self, theta: f64, times: &[f64], out: &mut Vec<(Vec2, Vec2)>) {
        let (s, c) = theta.sin_cos();
        out.clear();
        out.extend(times.iter().map(|&t| {
            let (a, b) = (self.semi_x.at(t), self.semi_y.at(t));
            (Vec2::new(self.center_x.at(t) + a * c, self.center_y.at(t) + b * s), Vec2::new(-a * s, b * c))
        }));
    }

    fn max_speed(&self, _t0: f64, _t1: f64) -> f64 {
        let (cx, cy) = (self.center_x.a1, self.center_y.a1);
        (cx.abs() + self.semi_x.a1.abs()).hypot(cy.abs() + self.semi_y.a1.abs())
    }
}

/// Boundaries selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinBoundary {
    EllipseTranslate,
    CircleToEllipse,
    Circle,
    StaticEllipse,
}

impl BuiltinBoundary {
    pub const ALL: [BuiltinBoundary; 4] = [
        BuiltinBoundary::EllipseTranslate,
        BuiltinBoundary::CircleToEllipse,
        BuiltinBoundary::Circle,
        BuiltinBoundary::StaticEllipse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinBoundary::EllipseTranslate => "ellipse-translate",
            BuiltinBoundary::CircleToEllipse => "circle-to-ellipse",
            BuiltinBoundary::Circle => "circle",
            BuiltinBoundary::StaticEllipse => "static-ellipse",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|b| b.name() == name).ok_or_else(|| {
            let known: Vec<_> = Self::ALL.iter().map(|b| b.name()).collect();
            Error::Config(format!("unknown boundary '{name}' (known: {})", known.join(", ")))
        })
    }

    pub fn curve(self) -> LinearEllipse {
        match self {
            BuiltinBoundary::EllipseTranslate => LinearEllipse::ellipse_translate(),
            BuiltinBoundary::CircleToEllipse => LinearEllipse::circle_to_ellipse(),
            BuiltinBoundary::Circle => LinearEllipse::circle(1.0),
            BuiltinBoundary::StaticEllipse => LinearEllipse::ellipse(1.0, 0.6),
        }
    }

    pub fn boundary(self) -> Arc<dyn MovingBoundary> {
        Arc::new(self.curve())
    }
}

impl fmt::Display for BuiltinBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Local differential geometry at one boundary point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub point: Vec2,
    pub tangent: Vec2,
    pub normal: Vec2,
    pub curvature: f64,
    pub normal_velocity: f64,
    /// |y_θ|.
    pub speed: f64,
}

pub fn eval_frame(b: &dyn MovingBoundary, theta: f64, t: f64) -> Result<Frame> {
    let y1 = b.d_theta(theta, t);
    let speed = y1.norm();
    if !(speed >= SPEED_FLOOR) {
        return Err(Error::InvalidGeometry { theta, t, speed });
    }
    let y2 = b.d_theta2(theta, t);
    let tangent = y1 * (1.0 / speed);
    let normal = tangent.rot_cw();
    Ok(Frame {
        point: b.position(theta, t),
        tangent,
        normal,
        curvature: y1.cross(y2) / (speed * speed * speed),
        normal_velocity: b.velocity(theta, t).dot(normal),
        speed,
    })
}

/// The boundary sampled at `θ_i = 2πi/M` at one instant.
#[derive(Debug, Clone)]
pub struct BoundarySnapshot {
    pub t: f64,
    pub theta: Vec<f64>,
    pub points: Vec<Vec2>,
    pub tangents: Vec<Vec2>,
    pub normals: Vec<Vec2>,
    pub curvature: Vec<f64>,
    pub normal_velocity: Vec<f64>,
    pub speed: Vec<f64>,
    /// Trapezoidal arclength weights |y_θ|·2π/M.
    pub weights: Vec<f64>,
}

impl BoundarySnapshot {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn perimeter(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Largest node spacing in arclength.
    pub fn max_spacing(&self) -> f64 {
        self.weights.iter().cloned().fold(0.0, f64::max)
    }

    /// Shoelace area of the node polygon; positive for counterclockwise curves.
    pub fn signed_area(&self) -> f64 {
        let n = self.len();
        0.5 * (0..n).map(|i| self.points[i].cross(self.points[(i + 1) % n])).sum::<f64>()
    }
}

pub fn snapshot(b: &dyn MovingBoundary, m: usize, t: f64) -> Result<BoundarySnapshot> {
    if m < 16 || m % 2 == 1 {
        return Err(Error::Config(format!("snapshots need an even M ≥ 16, got {m}")));
    }
    let h = 2.0 * PI / m as f64;
    let mut s = BoundarySnapshot {
        t,
        theta: Vec::with_capacity(m),
        points: Vec::with_capacity(m),
        tangents: Vec::with_capacity(m),
        normals: Vec::with_capacity(m),
        curvature: Vec::with_capacity(m),
        normal_velocity: Vec::with_capacity(m),
        speed: Vec::with_capacity(m),
        weights: Vec::with_capacity(m),
    };
    for i in 0..m {
        let th = h * i as f64;
        let f = eval_frame(b, th, t)?;
        s.theta.push(th);
        s.points.push(f.point);
        s.tangents.push(f.tangent);
        s.normals.push(f.normal);
        s.curvature.push(f.curvature);
        s.normal_velocity.push(f.normal_velocity);
        s.speed.push(f.speed);
        s.weights.push(f.speed * h);
    }
    Ok(s)
}

/// Arclength derivative `(df/dθ)/|y_θ|` of a grid function by periodic
/// spectral differentiation.
pub fn spectral_arclength_derivative(snap: &BoundarySnapshot, f: &[Vec2]) -> Result<Vec<Vec2>> {
    let m = snap.len();
    if m % 2 == 1 {
        return Err(Error::Config(format!("spectral differentiation needs even M, got {m}")));
    }
    if f.len() != m {
        return Err(Error::Config(format!("grid function has {} samples, snapshot has {m}", f.len())));
    }
    let d = Spectral::new(m)?.derivative(f);
    Ok(d.into_iter().zip(&snap.speed).map(|(v, s)| v * (1.0 / s)).collect())
}

/// Arclength from θ0 to θ at time t (20-point Gauss–Legendre).
fn arclength(b: &dyn MovingBoundary, theta0: f64, theta: f64, t: f64) -> f64 {
    let g = gl_unit(20);
    let (c, h) = (0.5 * (theta + theta0), 0.5 * (theta - theta0));
    g.nodes.iter().zip(&g.weights).map(|(x, w)| w * h * b.d_theta(c + h * x, t).norm()).sum()
}

/// Residual of the local space-time expansion
/// `y(s, τ) ≈ x + t̂ s − ½ n̂ κ s² − (v·n) n̂ τd` about `x = y(θ0, t)`.
///
/// The source is the point at signed arclength `s` from `x` at time `t`,
/// followed normally back to time `t − τd` (its parameter is shifted by
/// `(v·t̂) τd/|y_θ|`, cancelling tangential drift of the parametrization).
pub fn taylor_defect(b: &dyn MovingBoundary, theta0: f64, t: f64, s: f64, tau_d: f64) -> Result<f64> {
    let f = eval_frame(b, theta0, t)?;
    let mut th = theta0 + s / f.speed;
    for _ in 0..50 {
        let step = (arclength(b, theta0, th, t) - s) / b.d_theta(th, t).norm();
        th -= step;
        if step.abs() < 1e-16 {
            break;
        }
    }
    let fs = eval_frame(b, th, t)?;
    let drift = b.velocity(th, t).dot(fs.tangent) * tau_d / fs.speed;
    let y = b.position(th + drift, t - tau_d);
    let model = f.point + f.tangent * s - f.normal * (0.5 * f.curvature * s * s) - f.normal * (f.normal_velocity * tau_d);
    Ok((y - model).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_translate_frame() {
        let b = LinearEllipse::ellipse_translate();
        let f = eval_frame(&b, 0.0, 0.0).unwrap();
        assert!((f.point - Vec2::new(0.8, 0.0)).norm() < 1e-15);
        assert!((f.curvature - 20.0).abs() < 1e-12);
        assert!((f.normal - Vec2::new(1.0, 0.0)).norm() < 1e-15);
        assert!((f.normal_velocity - 0.4).abs() < 1e-15);
    }

    #[test]
    fn names_round_trip() {
        for b in BuiltinBoundary::ALL {
            assert_eq!(BuiltinBoundary::from_name(b.name()).unwrap(), b);
        }
        assert!(BuiltinBoundary::from_name("square").is_err());
    }

    #[test]
    fn degenerate_rejected() {
        let b = LinearEllipse::ellipse(1.0, 0.0);
        assert!(matches!(eval_frame(&b, 0.0, 0.0), Err(Error::InvalidGeometry { .. })));
    }

    #[test]
    fn snapshot_size_checks() {
        let b = LinearEllipse::circle(1.0);
        assert!(snapshot(&b, 15, 0.0).is_err());
        assert!(snapshot(&b, 8, 0.0).is_err());
    }
}
