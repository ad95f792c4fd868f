//! The kernel quadratic of the interior generating function, its
//! discriminant, the two branch functions and their branch points.
//!
//! For the section solved in `u2` (axis two) the quadratic at abscissa `u1` is
//! `p_{*1}(u1) u2^2 - (1 - p_{*0}(u1)) u2 + p_{*-1}(u1) = 0`, where
//! `p_{*k}(u) = E(u^{X1}; X2 = k)`. Axis one is the mirror image.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Face, Model, ValidatedModel};

/// A coordinate direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    One,
    Two,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::One => Axis::Two,
            Axis::Two => Axis::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Axis::One => 0,
            Axis::Two => 1,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }
}

/// Coefficients of the kernel quadratic at one abscissa.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectionCoefficients {
    pub p_star1: Complex64,
    pub p_star0: Complex64,
    pub p_star_minus1: Complex64,
}

impl SectionCoefficients {
    /// `p1 z^2 + p0 z + p-1`, i.e. the generating function times `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.p_star1 * z + self.p_star0) * z + self.p_star_minus1
    }
}

/// Zeros of a discriminant, bracketing the interval of real branch values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchPoints {
    pub u_min: f64,
    pub u_max: f64,
    pub all_quartic_roots: Vec<f64>,
    pub is_even: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Lower,
    Upper,
}

/// A root of the kernel quadratic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchValue {
    pub value: Complex64,
    pub branch: Branch,
    pub abscissa: Complex64,
}

const NEWTON_STEPS: usize = 60;
const REAL_TOL: f64 = 1e-8;

/// Evaluates an ascending-coefficient polynomial.
fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn horner_real(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect()
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Roots of an ascending-coefficient polynomial, all required to be real.
/// Companion-matrix eigenvalues are polished by Newton steps on the original
/// polynomial.
pub fn real_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Err(Error::BranchPoints("zero polynomial".into()));
    }
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().abs() <= 1e-15 * scale {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = c[deg];
    let companion = DMatrix::from_fn(deg, deg, |r, k| {
        if k == deg - 1 {
            -c[r] / lead
        } else if r == k + 1 {
            1.0
        } else {
            0.0
        }
    });
    let dc = derivative(&c);
    let mut roots = Vec::with_capacity(deg);
    for z0 in companion.complex_eigenvalues().iter() {
        let mut z = Complex64::new(z0.re, z0.im);
        let mut best = (horner(&c, z).norm(), z);
        for _ in 0..NEWTON_STEPS {
            let d = horner(&dc, z);
            if d.norm() == 0.0 {
                break;
            }
            z -= horner(&c, z) / d;
            let r = horner(&c, z).norm();
            if r < best.0 {
                best = (r, z);
            }
        }
        let z = best.1;
        if z.im.abs() >= REAL_TOL * (1.0 + z.re.abs()) {
            return Err(Error::BranchPoints(format!("non-real root {z} of the discriminant")));
        }
        roots.push(z.re);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}

/// One quadratic section, solved for a fixed target axis.
#[derive(Clone, Debug)]
struct Section {
    /// `coef[k + 1][i + 1]`: mass of target step `k` with abscissa step `i`.
    coef: [[f64; 3]; 3],
    /// `u^2 D(u)`, ascending.
    poly: Vec<f64>,
    points: BranchPoints,
    sqrt_scale: f64,
    below: Vec<f64>,
    above: Vec<f64>,
}

impl Section {
    fn new(table: &[[f64; 3]; 3], target: Axis) -> Result<Section> {
        let mut coef = [[0.0; 3]; 3];
        for k in 0..3 {
            for i in 0..3 {
                coef[k][i] = match target {
                    Axis::Two => table[i][k],
                    Axis::One => table[k][i],
                };
            }
        }
        // u * p_k(u) as ascending quadratics
        let up = |k: usize| coef[k].to_vec();
        let q = vec![-coef[1][0], 1.0 - coef[1][1], -coef[1][2]];
        let mut poly = convolve(&q, &q);
        let cross = convolve(&up(2), &up(0));
        for (p, c) in poly.iter_mut().zip(cross) {
            *p -= 4.0 * c;
        }
        let is_even = table[2][1] == 0.0 && table[1][2] == 0.0 && table[1][0] == 0.0 && table[0][1] == 0.0;
        let roots = real_roots(&poly)?;
        let mut s = Section {
            coef,
            poly,
            points: BranchPoints { u_min: 0.0, u_max: 0.0, all_quartic_roots: roots.clone(), is_even },
            sqrt_scale: 0.0,
            below: Vec::new(),
            above: Vec::new(),
        };
        let positive: Vec<f64> = roots.iter().copied().filter(|&r| r > 0.0).collect();
        let candidates: Vec<(f64, f64)> = positive
            .windows(2)
            .map(|w| (w[0], w[1]))
            .filter(|&(a, b)| {
                let mid = 0.5 * (a + b);
                b - a > 1e-12 * b && s.disc_real(mid) > 0.0 && 1.0 - s.p_real(1, mid) > 0.0
            })
            .collect();
        let (u_min, u_max) = match candidates.len() {
            0 => return Err(Error::BranchPoints("no interval of positive real branch values".into())),
            1 => candidates[0],
            _ => *candidates
                .iter()
                .find(|&&(a, b)| a <= 1.0 + 1e-9 && b >= 1.0 - 1e-9)
                .ok_or_else(|| Error::BranchPoints("ambiguous branch interval".into()))?,
        };
        s.points.u_min = u_min;
        s.points.u_max = u_max;
        let tol = 1e-9 * u_max;
        if roots.iter().any(|&r| r > u_min + tol && r < u_max - tol) {
            return Err(Error::BranchPoints("discriminant vanishes inside the branch interval (multiple contact)".into()));
        }
        let scale = s.poly.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let lead = *s.poly.iter().rev().find(|c| c.abs() > 1e-15 * scale).unwrap();
        // Roots pair up with the linear factors: (z - r) below, (r - z) above.
        s.below = roots.iter().copied().filter(|&r| r <= u_min + tol).collect();
        s.above = roots.iter().copied().filter(|&r| r >= u_max - tol).collect();
        let sign = if s.above.len().is_multiple_of(2) { 1.0 } else { -1.0 };
        let k = lead * sign;
        if k <= 0.0 {
            return Err(Error::BranchPoints("discriminant is not positive on the branch interval".into()));
        }
        s.sqrt_scale = k.sqrt();
        Ok(s)
    }

    fn p_real(&self, k: usize, u: f64) -> f64 {
        let c = &self.coef[k];
        c[0] / u + c[1] + c[2] * u
    }

    fn p(&self, k: usize, z: Complex64) -> Complex64 {
        let c = &self.coef[k];
        z.inv() * c[0] + c[1] + z * c[2]
    }

    fn coefficients(&self, z: Complex64) -> SectionCoefficients {
        SectionCoefficients { p_star1: self.p(2, z), p_star0: self.p(1, z), p_star_minus1: self.p(0, z) }
    }

    fn disc(&self, z: Complex64) -> Complex64 {
        let b = Complex64::new(1.0, 0.0) - self.p(1, z);
        b * b - self.p(2, z) * self.p(0, z) * 4.0
    }

    fn disc_real(&self, u: f64) -> f64 {
        horner_real(&self.poly, u) / (u * u)
    }

    /// Square root of the discriminant, analytic off the two cuts and positive on the interval.
    fn sqrt_disc(&self, z: Complex64) -> Complex64 {
        let mut s = Complex64::new(self.sqrt_scale, 0.0);
        for &r in &self.below {
            s *= (z - r).sqrt();
        }
        for &r in &self.above {
            s *= (Complex64::new(r, 0.0) - z).sqrt();
        }
        s / z
    }

    fn sqrt_disc_real(&self, u: f64) -> f64 {
        let mut s = self.sqrt_scale;
        for &r in &self.below {
            s *= (u - r).max(0.0).sqrt();
        }
        for &r in &self.above {
            s *= (r - u).max(0.0).sqrt();
        }
        s / u
    }

    fn in_interval(&self, u: f64) -> bool {
        let slack = 1e-12 * self.points.u_max;
        u >= self.points.u_min - slack && u <= self.points.u_max + slack
    }

    fn zeta(&self, z: Complex64, branch: Branch) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroArgument);
        }
        if z.im == 0.0 {
            if !self.in_interval(z.re) {
                return Err(Error::OnCut(format!("{}", z.re)));
            }
            return self.zeta_real(z.re, branch).map(|v| Complex64::new(v, 0.0));
        }
        let c = self.coefficients(z);
        let b = Complex64::new(1.0, 0.0) - c.p_star0;
        let s = self.sqrt_disc(z);
        Ok(pick_root(c.p_star1, b, c.p_star_minus1, s, branch))
    }

    fn zeta_real(&self, u: f64, branch: Branch) -> Result<f64> {
        if u == 0.0 {
            return Err(Error::ZeroArgument);
        }
        if !self.in_interval(u) {
            return Err(Error::OnCut(format!("{u}")));
        }
        let p1 = self.p_real(2, u);
        let b = 1.0 - self.p_real(1, u);
        let pm1 = self.p_real(0, u);
        if p1 == 0.0 {
            return Ok(match branch {
                Branch::Lower => pm1 / b,
                Branch::Upper => f64::INFINITY,
            });
        }
        let s = self.sqrt_disc_real(u);
        let plus = b + s;
        let minus = b - s;
        Ok(match branch {
            Branch::Lower if plus.abs() >= minus.abs() => 2.0 * pm1 / plus,
            Branch::Lower => minus / (2.0 * p1),
            Branch::Upper if plus.abs() >= minus.abs() => plus / (2.0 * p1),
            Branch::Upper => 2.0 * pm1 / minus,
        })
    }
}

fn pick_root(p1: Complex64, b: Complex64, pm1: Complex64, s: Complex64, branch: Branch) -> Complex64 {
    if p1 == Complex64::new(0.0, 0.0) {
        return match branch {
            Branch::Lower => pm1 / b,
            Branch::Upper => Complex64::new(f64::INFINITY, 0.0),
        };
    }
    let plus = b + s;
    let minus = b - s;
    let big_plus = plus.norm() >= minus.norm();
    match branch {
        Branch::Lower if big_plus => pm1 * 2.0 / plus,
        Branch::Lower => minus / (p1 * 2.0),
        Branch::Upper if big_plus => plus / (p1 * 2.0),
        Branch::Upper => pm1 * 2.0 / minus,
    }
}

/// Generating function of a face at `(u1, u2)`.
pub fn gamma(model: &Model, face: Face, u1: Complex64, u2: Complex64) -> Result<Complex64> {
    if u1 == Complex64::new(0.0, 0.0) || u2 == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument);
    }
    Ok(model.kernel(face).generating_function(u1, u2))
}

/// Both quadratic sections of the interior kernel.
#[derive(Clone, Debug)]
pub struct Kernel {
    /// Indexed by the solved axis.
    sections: [Section; 2],
}

impl Kernel {
    pub fn new(model: &ValidatedModel) -> Result<Kernel> {
        let table = model.interior.table();
        Ok(Kernel { sections: [Section::new(&table, Axis::One)?, Section::new(&table, Axis::Two)?] })
    }

    fn section(&self, solved: Axis) -> &Section {
        &self.sections[solved.index()]
    }

    /// Coefficients of the quadratic in `u_axis` at abscissa `u` (the other coordinate).
    pub fn section_coefficients(&self, axis: Axis, u: Complex64) -> Result<SectionCoefficients> {
        if u == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroArgument);
        }
        Ok(self.section(axis).coefficients(u))
    }

    /// Discriminant of the quadratic in `u_axis` at abscissa `u`.
    pub fn discriminant(&self, axis: Axis, u: Complex64) -> Result<Complex64> {
        if u == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroArgument);
        }
        Ok(self.section(axis).disc(u))
    }

    /// Real discriminant evaluated through the factored polynomial.
    pub fn discriminant_real(&self, axis: Axis, u: f64) -> f64 {
        self.section(axis).disc_real(u)
    }

    /// Range of coordinate `axis` over the closure of the interior set:
    /// zeros of the discriminant of the other section.
    pub fn branch_points(&self, axis: Axis) -> &BranchPoints {
        &self.section(axis.other()).points
    }

    /// `u^2 D(u)` for the section solved in `axis`, ascending coefficients.
    pub fn discriminant_polynomial(&self, axis: Axis) -> &[f64] {
        &self.section(axis).poly
    }

    pub fn zeta_lower(&self, axis: Axis, u: Complex64) -> Result<BranchValue> {
        let value = self.section(axis).zeta(u, Branch::Lower)?;
        Ok(BranchValue { value, branch: Branch::Lower, abscissa: u })
    }

    pub fn zeta_upper(&self, axis: Axis, u: Complex64) -> Result<BranchValue> {
        let value = self.section(axis).zeta(u, Branch::Upper)?;
        Ok(BranchValue { value, branch: Branch::Upper, abscissa: u })
    }

    /// Real branch value of the quadratic in `u_axis` at real abscissa `u`.
    pub fn zeta_real(&self, axis: Axis, u: f64, branch: Branch) -> Result<f64> {
        self.section(axis).zeta_real(u, branch)
    }

    /// Whether `u^2 D(u)` is an even polynomial.
    pub fn is_even_discriminant(&self, axis: Axis) -> bool {
        self.section(axis).points.is_even
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::model::{parse_model, validate};

    pub(crate) fn product() -> ValidatedModel {
        validate(
            parse_model(
                r#"{
            "interior": [[1,0,0.1],[-1,0,0.3],[0,1,0.15],[0,-1,0.45]],
            "boundary1": [[1,0,0.1],[-1,0,0.3],[0,1,0.15],[0,0,0.45]],
            "boundary2": [[1,0,0.1],[0,0,0.3],[0,1,0.15],[0,-1,0.45]],
            "origin": [[1,0,0.1],[0,1,0.15],[0,0,0.75]]
        }"#,
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn x_shaped() -> ValidatedModel {
        validate(crate::netgen::x_shaped_example()).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn gamma_values() {
        let m = product();
        for face in Face::ALL {
            assert!((gamma(&m, face, c(1.0), c(1.0)).unwrap() - 1.0).norm() < 1e-15);
        }
        assert!((gamma(&m, Face::Interior, c(3.0), c(1.0)).unwrap() - 1.0).norm() < 1e-15);
        assert_eq!(gamma(&m, Face::Interior, c(0.0), c(1.0)), Err(Error::ZeroArgument));
    }

    #[test]
    fn section_and_discriminant_of_product_model() {
        let k = Kernel::new(&product()).unwrap();
        let s = k.section_coefficients(Axis::Two, c(3.0)).unwrap();
        assert!((s.p_star1 - 0.15).norm() < 1e-15);
        assert!((s.p_star0 - 0.4).norm() < 1e-15);
        assert!((s.p_star_minus1 - 0.45).norm() < 1e-15);
        assert!((k.discriminant(Axis::Two, c(3.0)).unwrap() - 0.09).norm() < 1e-14);
    }

    #[test]
    fn branch_points_of_product_model() {
        let k = Kernel::new(&product()).unwrap();
        let b1 = k.branch_points(Axis::One);
        // 0.1 u^2 - (1 - sqrt(0.27)) u + 0.3 = 0 on the side where 1 - p0 > 0
        let beta = 1.0 - 0.27f64.sqrt();
        let disc = (beta * beta - 0.12).sqrt();
        assert!((b1.u_min - (beta - disc) / 0.2).abs() < 1e-10);
        assert!((b1.u_max - (beta + disc) / 0.2).abs() < 1e-10);
        assert!((b1.u_min - 0.737821).abs() < 1e-6 && (b1.u_max - 4.0660265).abs() < 1e-6);
        assert_eq!(b1.all_quartic_roots.len(), 4);
        let b2 = k.branch_points(Axis::Two);
        // 0.15 u^2 - (1 - sqrt(0.12)) u + 0.45 = 0
        let beta2 = 1.0 - 0.12f64.sqrt();
        assert!((b2.u_max - (beta2 + (beta2 * beta2 - 0.27).sqrt()) / 0.3).abs() < 1e-10);
        for u in [b1.u_min, b1.u_max] {
            assert!(k.discriminant(Axis::Two, c(u)).unwrap().norm() < 1e-10);
        }
        assert!(!b1.is_even && !k.is_even_discriminant(Axis::Two));
    }

    #[test]
    fn branch_values_of_product_model() {
        let k = Kernel::new(&product()).unwrap();
        assert!((k.zeta_real(Axis::Two, 3.0, Branch::Lower).unwrap() - 1.0).abs() < 1e-14);
        assert!((k.zeta_real(Axis::Two, 3.0, Branch::Upper).unwrap() - 3.0).abs() < 1e-14);
        let umax = k.branch_points(Axis::One).u_max;
        let lo = k.zeta_real(Axis::Two, umax, Branch::Lower).unwrap();
        let hi = k.zeta_real(Axis::Two, umax, Branch::Upper).unwrap();
        let s = k.section_coefficients(Axis::Two, c(umax)).unwrap();
        let double = (1.0 - s.p_star0.re) / (2.0 * s.p_star1.re);
        assert!((lo - double).abs() < 1e-7 && (hi - double).abs() < 1e-7);
        // double root of p1 z^2 - b z + p-1 with b^2 = 4 p1 p-1 is sqrt(p-1 / p1)
        assert!((double - 3f64.sqrt()).abs() < 1e-9);
        let z = Complex64::new(2.0, 1.0);
        let v = k.zeta_lower(Axis::Two, z).unwrap().value;
        assert!(v.norm() <= k.zeta_real(Axis::Two, z.norm(), Branch::Lower).unwrap() + 1e-10);
        assert!(matches!(k.zeta_lower(Axis::Two, c(5.0)), Err(Error::OnCut(_))));
    }

    #[test]
    fn x_shaped_discriminant_is_even() {
        let k = Kernel::new(&x_shaped()).unwrap();
        let b = k.branch_points(Axis::One);
        assert!(b.is_even);
        let r = &b.all_quartic_roots;
        assert_eq!(r.len(), 4);
        for (a, z) in r.iter().zip(r.iter().rev()) {
            assert!((a + z).abs() < 1e-9, "{r:?}");
        }
        assert_eq!(b.u_max, *r.last().unwrap());
        let p = k.section_coefficients(Axis::Two, Complex64::new(0.7, 0.3)).unwrap();
        assert!((p.p_star0 - 0.1).norm() < 1e-15);
        for u in [0.5, 1.3, 2.2] {
            let d1 = k.discriminant(Axis::Two, c(u)).unwrap();
            let d2 = k.discriminant(Axis::Two, c(-u)).unwrap();
            assert!((d1 - d2).norm() < 1e-14);
        }
    }

    #[test]
    fn even_test_is_structural() {
        let m = validate(
            parse_model(
                r#"{
            "interior": [[1,1,0.2],[-1,-1,0.3],[1,-1,0.2],[-1,1,0.1],[0,1,0.1],[0,0,0.1]],
            "boundary1": [[1,1,0.2],[-1,1,0.2],[0,0,0.6]],
            "boundary2": [[1,1,0.2],[1,-1,0.2],[0,0,0.6]],
            "origin": [[1,0,0.25],[0,1,0.25],[0,0,0.5]]
        }"#,
            )
            .unwrap(),
        )
        .unwrap();
        let k = Kernel::new(&m).unwrap();
        assert!(!k.is_even_discriminant(Axis::One));
        assert!(!k.is_even_discriminant(Axis::Two));
    }

    #[test]
    fn polynomial_roots() {
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        let r = real_roots(&[6.0, -7.0, 0.0, 1.0]).unwrap();
        assert!((r[0] + 3.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12 && (r[2] - 2.0).abs() < 1e-12);
        assert!(real_roots(&[1.0, 0.0, 1.0]).is_err());
    }
}
