//! Extreme points of the interior and boundary convergence sets, the model
//! category, the decay vector τ, the convergence-domain membership test and
//! boundary curves for plotting.
//!
//! Everything is computed for axis 1; axis 2 is obtained by running the same
//! code on the coordinate-swapped model and transposing the result.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Axis, Branch, Kernel};
use crate::model::{check_stability, drifts, Face, ValidatedModel};
use crate::numfmt::ser;

const BISECTION_STEPS: usize = 200;
const GOLDEN_STEPS: usize = 200;
/// Equality tolerance for the category and case tables.
pub const TIE_TOL: f64 = 1e-9;

/// Extreme points attached to one axis, in the model's own coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxisPoints {
    /// Maximizer of coordinate k over the closed intersection of the interior and face-k sets.
    #[serde(serialize_with = "ser::pair")]
    pub u_r: [f64; 2],
    /// Maximizer of coordinate k over the closed interior set.
    #[serde(serialize_with = "ser::pair")]
    pub u_max_pt: [f64; 2],
    /// `u_r` when the face generating function exceeds 1 at `u_max_pt`, otherwise `u_max_pt`.
    #[serde(serialize_with = "ser::pair")]
    pub u_gamma: [f64; 2],
    #[serde(serialize_with = "ser::f64")]
    pub gamma_k_at_max: f64,
}

impl AxisPoints {
    fn transposed(&self) -> AxisPoints {
        let t = |p: [f64; 2]| [p[1], p[0]];
        AxisPoints {
            u_r: t(self.u_r),
            u_max_pt: t(self.u_max_pt),
            u_gamma: t(self.u_gamma),
            gamma_k_at_max: self.gamma_k_at_max,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremePoints {
    pub axis1: AxisPoints,
    pub axis2: AxisPoints,
}

impl ExtremePoints {
    pub fn axis(&self, k: Axis) -> &AxisPoints {
        match k {
            Axis::One => &self.axis1,
            Axis::Two => &self.axis2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Category {
    I,
    II,
    III,
}

impl Category {
    /// Label after exchanging the coordinates.
    pub fn swapped(self) -> Category {
        match self {
            Category::I => Category::I,
            Category::II => Category::III,
            Category::III => Category::II,
        }
    }
}

/// Curves that can be sampled for plotting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Curve {
    #[serde(rename = "gamma_plus")]
    GammaPlus,
    #[serde(rename = "gamma_1")]
    Gamma1,
    #[serde(rename = "gamma_2")]
    Gamma2,
    #[serde(rename = "domain")]
    Domain,
}

impl Curve {
    pub const ALL: [Curve; 4] = [Curve::GammaPlus, Curve::Gamma1, Curve::Gamma2, Curve::Domain];

    pub fn name(self) -> &'static str {
        match self {
            Curve::GammaPlus => "gamma_plus",
            Curve::Gamma1 => "gamma_1",
            Curve::Gamma2 => "gamma_2",
            Curve::Domain => "domain",
        }
    }
}

/// Points along one curve, in θ-space and in u-space (u = exp θ).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DomainSample {
    pub curve: Curve,
    pub theta: Vec<[f64; 2]>,
    pub u: Vec<[f64; 2]>,
}

impl DomainSample {
    fn from_theta(curve: Curve, theta: Vec<[f64; 2]>) -> DomainSample {
        let u = theta.iter().map(|t| [t[0].exp(), t[1].exp()]).collect();
        DomainSample { curve, theta, u }
    }

    fn from_u(curve: Curve, u: Vec<[f64; 2]>) -> DomainSample {
        let theta = u.iter().map(|p| [p[0].ln(), p[1].ln()]).collect();
        DomainSample { curve, theta, u }
    }

    /// CSV rows `curve,theta1,theta2,u1,u2` without a header.
    pub fn csv_rows(&self) -> String {
        use crate::numfmt::sig;
        let mut out = String::new();
        for (t, u) in self.theta.iter().zip(&self.u) {
            out.push_str(&format!("{},{},{},{},{}\n", self.curve.name(), sig(t[0]), sig(t[1]), sig(u[0]), sig(u[1])));
        }
        out
    }
}

pub const CSV_HEADER: &str = "curve,theta1,theta2,u1,u2";

/// Geometry of a stable model, computed once.
#[derive(Clone, Debug)]
pub struct Geometry {
    model: ValidatedModel,
    swapped: ValidatedModel,
    kernel: Kernel,
    swapped_kernel: Kernel,
    pub extreme: ExtremePoints,
    pub category: Category,
    /// (τ̃1, τ̃2) in u-space.
    pub tau: [f64; 2],
}

impl Geometry {
    pub fn new(model: &ValidatedModel) -> Result<Geometry> {
        if !check_stability(&drifts(model)).stable {
            return Err(Error::Unstable);
        }
        let swapped = model.swap_coordinates();
        let kernel = Kernel::new(model)?;
        let swapped_kernel = Kernel::new(&swapped)?;
        let axis1 = axis_one_points(model, &kernel)?;
        let axis2 = axis_one_points(&swapped, &swapped_kernel)?.transposed();
        let extreme = ExtremePoints { axis1, axis2 };
        let category = classify(&extreme)?;
        let mut g = Geometry { model: model.clone(), swapped, kernel, swapped_kernel, extreme, category, tau: [0.0; 2] };
        g.tau = g.compute_tau()?;
        Ok(g)
    }

    pub fn model(&self) -> &ValidatedModel {
        &self.model
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn extreme_r(&self, k: Axis) -> [f64; 2] {
        self.extreme.axis(k).u_r
    }

    pub fn extreme_max(&self, k: Axis) -> [f64; 2] {
        self.extreme.axis(k).u_max_pt
    }

    pub fn gamma_point(&self, k: Axis) -> [f64; 2] {
        self.extreme.axis(k).u_gamma
    }

    fn compute_tau(&self) -> Result<[f64; 2]> {
        let e = &self.extreme;
        Ok(match self.category {
            Category::I => [e.axis1.u_gamma[0], e.axis2.u_gamma[1]],
            Category::II => {
                let v = e.axis2.u_r[1];
                [self.kernel.zeta_real(Axis::One, v, Branch::Upper)?, v]
            }
            Category::III => {
                let v = e.axis1.u_r[0];
                [v, self.kernel.zeta_real(Axis::Two, v, Branch::Upper)?]
            }
        })
    }

    /// θ-range of coordinate k over the closed interior set.
    fn theta_range(&self, k: Axis) -> (f64, f64) {
        let b = self.kernel.branch_points(k);
        (b.u_min.ln(), b.u_max.ln())
    }

    /// log of the upper branch ζ̄2 at u1 = e^t.
    fn upper_envelope(&self, t: f64) -> f64 {
        let b = self.kernel.branch_points(Axis::One);
        let u = t.exp().clamp(b.u_min, b.u_max);
        self.kernel.zeta_real(Axis::Two, u, Branch::Upper).map(f64::ln).unwrap_or(f64::NEG_INFINITY)
    }

    /// Supremum of θ2 over the interior set restricted to θ1' > θ1.
    fn envelope_beyond(&self, theta1: f64) -> f64 {
        let (lo, hi) = self.theta_range(Axis::One);
        if theta1 >= hi {
            // At the branch point itself the closure value is the limit.
            return if theta1 - hi < 1e-12 { self.upper_envelope(hi) } else { f64::NEG_INFINITY };
        }
        let a = theta1.max(lo);
        golden_max(|t| self.upper_envelope(t), a, hi)
    }

    /// Membership of θ in the convergence domain.
    pub fn domain_contains(&self, theta: [f64; 2]) -> bool {
        if !(theta[0] < self.tau[0].ln() && theta[1] < self.tau[1].ln()) {
            return false;
        }
        self.envelope_beyond(theta[0]) > theta[1]
    }

    /// Decay rate e^α along direction `c`, α = sup{x ≥ 0 : x c in the domain}.
    pub fn directional_decay(&self, c: [f64; 2]) -> Result<f64> {
        if c[0] < 0.0 || c[1] < 0.0 || c[0] + c[1] == 0.0 {
            return Err(Error::Geometry("direction must be nonnegative and nonzero".into()));
        }
        let mut hi = f64::INFINITY;
        for (ck, tk) in c.iter().zip(self.tau) {
            if *ck > 0.0 {
                hi = hi.min(tk.ln() / ck);
            }
        }
        let mut lo = 0.0;
        if !self.domain_contains([0.0, 0.0]) {
            return Err(Error::Geometry("origin outside the convergence domain".into()));
        }
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if self.domain_contains([mid * c[0], mid * c[1]]) {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        Ok((0.5 * (lo + hi)).exp())
    }

    /// `n` points along a boundary curve.
    pub fn sample_boundary(&self, curve: Curve, n: usize) -> Result<DomainSample> {
        if n < 2 {
            return Err(Error::Geometry("need at least two sample points".into()));
        }
        match curve {
            Curve::GammaPlus => self.sample_gamma_plus(n),
            Curve::Gamma1 => sample_face_curve(&self.model, &self.kernel, n, Curve::Gamma1),
            Curve::Gamma2 => {
                let s = sample_face_curve(&self.swapped, &self.swapped_kernel, n, Curve::Gamma2)?;
                Ok(DomainSample::from_theta(Curve::Gamma2, s.theta.iter().map(|t| [t[1], t[0]]).collect()))
            }
            Curve::Domain => Ok(self.sample_domain(n)),
        }
    }

    fn sample_gamma_plus(&self, n: usize) -> Result<DomainSample> {
        let (lo, hi) = self.theta_range(Axis::One);
        let mut pts = Vec::with_capacity(n);
        for i in 0..n {
            let s = 2.0 * i as f64 / n as f64;
            let (t, branch) = if s <= 1.0 {
                (lo + s * (hi - lo), Branch::Lower)
            } else {
                (hi - (s - 1.0) * (hi - lo), Branch::Upper)
            };
            // Endpoints are the branch points themselves.
            let u1 = if i == 0 { self.kernel.branch_points(Axis::One).u_min } else { t.exp() };
            let u1 = if s == 1.0 { self.kernel.branch_points(Axis::One).u_max } else { u1 };
            let u2 = self.kernel.zeta_real(Axis::Two, u1, branch)?;
            pts.push([u1, u2]);
        }
        Ok(DomainSample::from_u(Curve::GammaPlus, pts))
    }

    fn sample_domain(&self, n: usize) -> DomainSample {
        let (lo1, hi1) = self.theta_range(Axis::One);
        let (lo2, hi2) = self.theta_range(Axis::Two);
        let left = lo1.min(0.0) - 0.5 * (hi1 - lo1);
        let bottom = lo2.min(0.0) - 0.5 * (hi2 - lo2);
        let (t1, t2) = (self.tau[0].ln(), self.tau[1].ln());
        let top = |x: f64| t2.min(self.envelope_beyond(x));
        let corner = top(t1);
        let mut pts = Vec::with_capacity(n);
        for i in 0..n {
            let s = i as f64 / (n - 1) as f64;
            if s <= 0.5 {
                let x = left + 2.0 * s * (t1 - left);
                pts.push([x, top(x)]);
            } else {
                pts.push([t1, corner + (2.0 * s - 1.0) * (bottom - corner)]);
            }
        }
        DomainSample::from_theta(Curve::Domain, pts)
    }

    /// Upper envelope value used by the domain boundary at θ1 (for checks).
    pub fn domain_top(&self, theta1: f64) -> f64 {
        self.tau[1].ln().min(self.envelope_beyond(theta1))
    }
}

/// Axis-1 extreme points of a model.
fn axis_one_points(model: &ValidatedModel, kernel: &Kernel) -> Result<AxisPoints> {
    let bp = kernel.branch_points(Axis::One);
    let umax = bp.u_max;
    let max_pt = [umax, kernel.zeta_real(Axis::Two, umax, Branch::Lower)?];
    let face = model.kernel(Face::Boundary1);
    let gamma_at_max = face.gf_real(max_pt[0], max_pt[1]);
    let u_r = match curve_crossing(model, kernel)? {
        Some(p) => p,
        None => max_pt,
    };
    let u_gamma = if gamma_at_max > 1.0 { u_r } else { max_pt };
    Ok(AxisPoints { u_r, u_max_pt: max_pt, u_gamma, gamma_k_at_max: gamma_at_max })
}

const SCAN_POINTS: usize = 4000;

/// Crossing of the interior curve and the face-1 curve with u1 > 1, taking
/// the largest abscissa and the lower branch on ties. `None` when the face-1
/// curve leaves the interior curve only at u1 <= 1.
fn curve_crossing(model: &ValidatedModel, kernel: &Kernel) -> Result<Option<[f64; 2]>> {
    let face = model.kernel(Face::Boundary1);
    let bp = kernel.branch_points(Axis::One);
    let hi = bp.u_max.ln();
    let on = |t: f64, b: Branch| -> Result<f64> {
        let u1 = t.min(hi).exp();
        let u1 = if t >= hi { bp.u_max } else { u1 };
        let u2 = kernel.zeta_real(Axis::Two, u1, b)?;
        Ok(face.gf_real(u1, u2) - 1.0)
    };
    if (on(hi, Branch::Lower)?).abs() < 1e-12 {
        return Ok(Some([bp.u_max, kernel.zeta_real(Axis::Two, bp.u_max, Branch::Lower)?]));
    }
    let origin_lower = (kernel.zeta_real(Axis::Two, 1.0, Branch::Lower)? - 1.0).abs() < 1e-9;
    let mut best: Option<(f64, Branch)> = None;
    for branch in [Branch::Lower, Branch::Upper] {
        let skip_first = (branch == Branch::Lower) == origin_lower;
        let step = hi / SCAN_POINTS as f64;
        let mut prev = on(0.0, branch)?;
        for i in 1..=SCAN_POINTS {
            let t = i as f64 * step;
            let cur = on(t, branch)?;
            if (prev < 0.0) != (cur < 0.0) && !(i == 1 && skip_first) {
                let (mut a, mut b) = (t - step, t);
                let sa = prev < 0.0;
                for _ in 0..BISECTION_STEPS {
                    let m = 0.5 * (a + b);
                    if (on(m, branch)? < 0.0) == sa {
                        a = m;
                    } else {
                        b = m;
                    }
                    if b - a < 1e-16 {
                        break;
                    }
                }
                let root = 0.5 * (a + b);
                if best.is_none_or(|(r, _)| root > r + 1e-12) {
                    best = Some((root, branch));
                }
            }
            prev = cur;
        }
    }
    match best {
        Some((t, b)) => {
            let u1 = t.exp();
            Ok(Some([u1, kernel.zeta_real(Axis::Two, u1, b)?]))
        }
        None => Ok(None),
    }
}

/// Category from the ordering of the two Γ-points.
pub fn classify(e: &ExtremePoints) -> Result<Category> {
    let first = e.axis2.u_gamma[0] < e.axis1.u_gamma[0] - TIE_TOL;
    let second = e.axis1.u_gamma[1] < e.axis2.u_gamma[1] - TIE_TOL;
    match (first, second) {
        (true, true) => Ok(Category::I),
        (true, false) => Ok(Category::II),
        (false, true) => Ok(Category::III),
        (false, false) => Err(Error::ImpossibleCategory),
    }
}

/// Maximum of a unimodal function on [a, b] by golden-section search.
fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a, b);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut best = f(a).max(f(b)).max(fc).max(fd);
    for _ in 0..GOLDEN_STEPS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
            best = best.max(fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
            best = best.max(fd);
        }
        if b - a < 1e-15 {
            break;
        }
    }
    best
}

/// Curve γ_1(u) = 1 of the boundary-1 face of `model`, labelled `curve`.
fn sample_face_curve(model: &ValidatedModel, kernel: &Kernel, n: usize, curve: Curve) -> Result<DomainSample> {
    let face = model.kernel(Face::Boundary1);
    let b = face.table();
    // γ_1(u1, u2) = q0(u1) + q1(u1) u2
    let q0 = move |u: f64| b[0][1] / u + b[1][1] + b[2][1] * u;
    let q1 = move |u: f64| b[0][2] / u + b[1][2] + b[2][2] * u;
    let bp1 = kernel.branch_points(Axis::One);
    let bp2 = kernel.branch_points(Axis::Two);
    let (lo1, hi1) = (bp1.u_min.ln(), bp1.u_max.ln());
    let (lo2, hi2) = (bp2.u_min.ln(), bp2.u_max.ln());
    // Interval of u1 where q0 < 1; it contains 1.
    let (a, z) = unit_level_interval(b[0][1], b[1][1], b[2][1]);
    let has_up = b.iter().any(|row| row[2] > 0.0);
    let mut pts = Vec::with_capacity(n);
    if has_up {
        let w = hi1 - lo1;
        let margin = 1e-6 * w;
        let start = (lo1 - 0.5 * w).max(a.ln() + margin);
        let end = (hi1 + 0.5 * w).min(z.ln() - margin);
        for i in 0..n {
            let t = start + (end - start) * i as f64 / (n - 1) as f64;
            let u1 = t.exp();
            pts.push([u1, (1.0 - q0(u1)) / q1(u1)]);
        }
    } else {
        // Vertical lines at the finite roots of q0 = 1.
        let lines: Vec<f64> = [a, z].into_iter().filter(|x| x.is_finite() && *x > 0.0).collect();
        let w = hi2 - lo2;
        for i in 0..n {
            let line = lines[i * lines.len() / n];
            let k = i % n.div_ceil(lines.len());
            let m = n.div_ceil(lines.len());
            let t = lo2 - 0.5 * w + 2.0 * w * k as f64 / (m.max(2) - 1) as f64;
            pts.push([line, t.exp()]);
        }
    }
    Ok(DomainSample::from_u(curve, pts))
}

/// Roots of `c_{-1}/u + c_0 + c_1 u = 1` around u = 1; infinite ends when absent.
fn unit_level_interval(cm: f64, c0: f64, cp: f64) -> (f64, f64) {
    let f = |u: f64| cm / u + c0 + cp * u - 1.0;
    let solve = |mut lo: f64, mut hi: f64| {
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if (f(mid) < 0.0) == (f(lo) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let left = if cm > 0.0 {
        let mut lo = 0.5;
        while f(lo) < 0.0 {
            lo *= 0.5;
        }
        if f(1.0) < 0.0 { solve(lo, 1.0) } else { 1.0 }
    } else {
        0.0
    };
    let right = if cp > 0.0 {
        let mut hi = 2.0;
        while f(hi) < 0.0 {
            hi *= 2.0;
        }
        if f(1.0) < 0.0 { solve(1.0, hi) } else { 1.0 }
    } else {
        f64::INFINITY
    };
    (left, right)
}
