//! Exact tail-asymptotic classes for the boundary sequences, the two
//! marginals and the diagonal marginal.
//!
//! Each class is `(1 + b(-1)^n) n^κ a^{-n}` up to a constant. Case tables are
//! written for axis 1; axis 2 reuses them through a swapped [`View`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{Category, ExtremePoints, Geometry, TIE_TOL};
use crate::kernel::{real_roots, Axis, Branch};
use crate::model::{arithmetic_profile, check_stability, drifts, ArithmeticProfile, BCase, CCase, DriftSet, StabilityVerdict, ValidatedModel};
use crate::numfmt::ser;

/// Polynomial exponent of an asymptotic class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kappa {
    MinusThreeHalves,
    MinusHalf,
    Zero,
    One,
}

impl Kappa {
    pub fn value(self) -> f64 {
        match self {
            Kappa::MinusThreeHalves => -1.5,
            Kappa::MinusHalf => -0.5,
            Kappa::Zero => 0.0,
            Kappa::One => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Kappa::MinusThreeHalves => "-3/2",
            Kappa::MinusHalf => "-1/2",
            Kappa::Zero => "0",
            Kappa::One => "1",
        }
    }

    pub const ALL: [Kappa; 4] = [Kappa::MinusThreeHalves, Kappa::MinusHalf, Kappa::Zero, Kappa::One];
}

impl Serialize for Kappa {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `(1 + b(-1)^n) n^κ rate^{-n}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticClass {
    #[serde(serialize_with = "ser::f64")]
    pub rate: f64,
    pub kappa: Kappa,
    pub periodic: bool,
    /// Always empty: the oscillation amplitude is only known to lie in [-1, 1].
    pub b_known: Option<f64>,
    pub provenance: String,
    pub rendering: String,
    /// Gaps of the near-equalities that selected the case.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub gaps: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AsymptoticClass {
    fn new(rate: f64, kappa: Kappa, periodic: bool, provenance: impl Into<String>) -> AsymptoticClass {
        AsymptoticClass {
            rate,
            kappa,
            periodic,
            b_known: None,
            provenance: provenance.into(),
            rendering: render(rate, kappa, periodic),
            gaps: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    fn gap(mut self, name: &str, value: f64) -> Self {
        self.gaps.insert(name.into(), crate::numfmt::round12(value));
        self
    }
}

/// Human-readable form, e.g. `n^{-3/2} (2.3295)^{-n}`.
pub fn render(rate: f64, kappa: Kappa, periodic: bool) -> String {
    let mut s = String::new();
    if periodic {
        s.push_str("(1 + b(-1)^n) ");
    }
    match kappa {
        Kappa::Zero => {}
        Kappa::One => s.push_str("n "),
        k => s.push_str(&format!("n^{{{}}} ", k.label())),
    }
    let r = format!("{rate:.4}");
    let r = r.trim_end_matches('0').trim_end_matches('.');
    s.push_str(&format!("({r})^{{-n}}"));
    s
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < TIE_TOL
}

/// Everything the case tables need, seen from one axis.
#[derive(Clone, Debug)]
struct View {
    /// Category as seen with this axis playing the role of axis 1.
    category: Category,
    /// (τ̃ of this axis, τ̃ of the other axis).
    tau: [f64; 2],
    gamma: f64,
    max: f64,
    r: f64,
    va: bool,
    b_case: BCase,
    c_case: CCase,
    /// Upper and lower branch of the other coordinate at the Γ-point abscissa.
    zeta_upper: f64,
    zeta_lower: f64,
    sigma_plus: Option<f64>,
    tag: &'static str,
}

fn view(g: &Geometry, profile: &ArithmeticProfile, sigma_plus: Option<f64>, k: Axis) -> Result<View> {
    let e: &ExtremePoints = &g.extreme;
    let own = e.axis(k);
    let i = k.index();
    let (category, profile) = match k {
        Axis::One => (g.category, profile.clone()),
        Axis::Two => (g.category.swapped(), profile.swapped()),
    };
    let x = own.u_gamma[i];
    let solved = k.other();
    Ok(View {
        category,
        tau: [g.tau[i], g.tau[1 - i]],
        gamma: x,
        max: own.u_max_pt[i],
        r: own.u_r[i],
        va: profile.va,
        b_case: profile.b_case,
        c_case: profile.c_case,
        zeta_upper: g.kernel().zeta_real(solved, x, Branch::Upper)?,
        zeta_lower: g.kernel().zeta_real(solved, x, Branch::Lower)?,
        sigma_plus,
        tag: if k == Axis::One { "1" } else { "2" },
    })
}

/// Root above 1 of γ₊ restricted to the axis-k line through (1,1):
/// `P(X_k = -1) / P(X_k = 1)`.
pub fn sigma_plus(model: &ValidatedModel, k: Axis) -> Result<f64> {
    let t = model.interior.table();
    let (mut down, mut up) = (0.0, 0.0);
    for (a, row) in t.iter().enumerate() {
        for (b, &p) in row.iter().enumerate() {
            let step = if k == Axis::One { a } else { b };
            match step {
                0 => down += p,
                2 => up += p,
                _ => {}
            }
        }
    }
    if up == 0.0 || down <= up * (1.0 + 1e-12) {
        return Err(Error::NoRootAboveOne(format!("sigma_plus along axis {}", k.number())));
    }
    Ok(down / up)
}

/// Root above 1 of γ₊(u, u) = 1, kept only when it lies on the arc of the
/// interior curve between the two max points. Elsewhere the diagonal point
/// is dominated by another point of the curve and does not bound the domain.
pub fn sigma_diag(g: &Geometry) -> Result<f64> {
    let s = diagonal_root(g)?;
    let corner = [g.extreme.axis2.u_max_pt[0], g.extreme.axis1.u_max_pt[1]];
    if s < corner[0] * (1.0 - TIE_TOL) || s < corner[1] * (1.0 - TIE_TOL) {
        return Err(Error::NoRootAboveOne(format!("sigma_d: the diagonal root {s} is dominated by the interior curve")));
    }
    Ok(s)
}

fn diagonal_root(g: &Geometry) -> Result<f64> {
    let t = g.model().interior.table();
    // u^2 (γ₊(u,u) - 1) as coefficients of u^0..u^4
    let mut c = [0.0f64; 5];
    for (a, row) in t.iter().enumerate() {
        for (b, p) in row.iter().enumerate() {
            c[a + b] += p;
        }
    }
    c[2] -= 1.0;
    // Deflate the root at 1.
    let mut q = [0.0f64; 4];
    q[3] = c[4];
    for d in (0..3).rev() {
        q[d] = c[d + 1] + q[d + 1];
    }
    let drift = q[0] + q[1] + q[2] + q[3];
    if drift >= -1e-12 {
        return Err(Error::NoRootAboveOne("sigma_d: diagonal drift is not negative".into()));
    }
    let eval = |u: f64| ((q[3] * u + q[2]) * u + q[1]) * u + q[0];
    let hi_bound = g.extreme.axis1.u_max_pt[0].max(g.extreme.axis2.u_max_pt[1]);
    if eval(hi_bound) < 0.0 {
        // Fall back to the polynomial roots when the bound does not bracket.
        return real_roots(&q)?
            .into_iter()
            .filter(|r| *r > 1.0 + 1e-12)
            .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.min(r))))
            .ok_or_else(|| Error::NoRootAboveOne("sigma_d".into()));
    }
    let (mut lo, mut hi) = (1.0, hi_bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if eval(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaPoints {
    #[serde(serialize_with = "ser::opt_f64")]
    pub sigma_plus_1: Option<f64>,
    #[serde(serialize_with = "ser::opt_f64")]
    pub sigma_plus_2: Option<f64>,
    #[serde(serialize_with = "ser::opt_f64")]
    pub sigma_d: Option<f64>,
}

fn boundary_from_view(v: &View) -> AsymptoticClass {
    let tau = v.tau[0];
    let arith = !v.va;
    let b2 = arith && v.b_case == BCase::B2;
    let family = if v.va {
        "non-arithmetic"
    } else if b2 {
        "arithmetic B2"
    } else {
        "arithmetic B1"
    };
    let gamma_is_max = close(v.gamma, v.max);
    let r_is_max = close(v.r, v.max);
    let base = format!("boundary {}, {family}", v.tag);
    let class = match v.category {
        Category::I | Category::III => {
            let cat = "category I/III";
            if !gamma_is_max {
                AsymptoticClass::new(tau, Kappa::Zero, b2, format!("{base}, {cat}, gamma-point below the max point"))
            } else if r_is_max {
                AsymptoticClass::new(tau, Kappa::MinusHalf, b2, format!("{base}, {cat}, gamma-point = max point = r-point"))
            } else {
                AsymptoticClass::new(tau, Kappa::MinusThreeHalves, arith, format!("{base}, {cat}, gamma-point = max point != r-point"))
            }
        }
        Category::II => {
            let cat = "category II";
            let below = tau < v.gamma - TIE_TOL;
            if below || (gamma_is_max && r_is_max) {
                let why = if below { "tau below the gamma-point" } else { "tau = gamma-point = max point = r-point" };
                AsymptoticClass::new(tau, Kappa::Zero, b2, format!("{base}, {cat}, {why}"))
            } else if !gamma_is_max {
                AsymptoticClass::new(tau, Kappa::One, b2, format!("{base}, {cat}, tau = gamma-point != max point"))
            } else {
                let periodic = b2 || (arith && v.c_case == CCase::C2);
                let split = if arith { format!(", {:?}", v.c_case) } else { String::new() };
                AsymptoticClass::new(tau, Kappa::MinusHalf, periodic, format!("{base}, {cat}, tau = gamma-point = max point != r-point{split}"))
            }
        }
    };
    class.gap("gamma - max", v.gamma - v.max).gap("r - max", v.r - v.max).gap("gamma - tau", v.gamma - tau)
}

fn marginal_from_view(v: &View) -> AsymptoticClass {
    let tau = v.tau[0];
    let (zu, zl) = (v.zeta_upper, v.zeta_lower);
    let b2 = !v.va && v.b_case == BCase::B2;
    let base = format!("marginal {}", v.tag);
    let inherit = |why: &str, note: Option<String>| {
        let h = boundary_from_view(v);
        let mut c = AsymptoticClass::new(h.rate, h.kappa, h.periodic, format!("{base}, case (b) {why}via {}", h.provenance));
        c.gaps = h.gaps;
        c.notes.extend(note);
        c
    };
    let class = if zu < 1.0 - TIE_TOL {
        match v.sigma_plus {
            Some(s) if s <= tau + TIE_TOL => AsymptoticClass::new(s, Kappa::Zero, false, format!("{base}, case (a), upper branch below 1")),
            Some(s) => inherit(
                "",
                Some(format!("upper branch below 1 but sigma_plus {s} exceeds tau {tau}; routed to the boundary class")),
            ),
            None => inherit("", Some("sigma_plus does not exist; routed to the boundary class".into())),
        }
    } else if zu > 1.0 + TIE_TOL {
        if close(zl, 1.0) {
            AsymptoticClass::new(tau, Kappa::Zero, b2, format!("{base}, case (c), lower branch at 1"))
        } else if v.sigma_plus.is_none() {
            inherit("", Some("sigma_plus does not exist; routed to the boundary class".into()))
        } else {
            inherit("", None)
        }
    } else if zl > 1.0 - TIE_TOL {
        AsymptoticClass::new(tau, Kappa::Zero, false, format!("{base}, case (d), both branches at 1"))
    } else {
        AsymptoticClass::new(tau, Kappa::One, false, format!("{base}, case (e), upper branch at 1"))
    };
    class.gap("upper branch - 1", zu - 1.0).gap("lower branch - 1", zl - 1.0)
}

fn diagonal_from_view(v: &View, sigma_d: Option<f64>) -> AsymptoticClass {
    let tau1 = v.tau[0];
    let base = format!("diagonal (normalized on axis {})", v.tag);
    let Some(sd) = sigma_d else {
        let h = boundary_from_view(v);
        let mut c = AsymptoticClass::new(h.rate, h.kappa, h.periodic, format!("{base}, case (b) via {}", h.provenance));
        c.notes.push("sigma_d does not exist; routed to the boundary class".into());
        return c;
    };
    // Without the va condition the level L1 + L2 moves in steps of 0 or 2 off
    // the boundaries, so the diagonal mass alternates with the parity of n.
    let alt = !v.va;
    let class = if sd < tau1 - TIE_TOL {
        AsymptoticClass::new(sd, Kappa::Zero, alt, format!("{base}, case (a), sigma_d below tau"))
    } else if sd > tau1 + TIE_TOL {
        let h = boundary_from_view(v);
        let mut c = AsymptoticClass::new(h.rate, h.kappa, h.periodic, format!("{base}, case (b) via {}", h.provenance));
        c.gaps = h.gaps;
        c
    } else if !close(tau1, v.max) {
        AsymptoticClass::new(sd, Kappa::One, alt, format!("{base}, case (c), sigma_d = tau != max point"))
    } else if close(tau1, v.tau[1]) {
        AsymptoticClass::new(sd, Kappa::One, alt, format!("{base}, case (d), sigma_d = tau = max point = other tau"))
    } else {
        AsymptoticClass::new(sd, Kappa::Zero, alt, format!("{base}, case (e), sigma_d = tau = max point != other tau"))
    };
    class.gap("sigma_d - tau", sd - tau1)
}

/// All asymptotic classes of a stable model.
#[derive(Clone, Debug)]
pub struct Asymptotics {
    pub geometry: Geometry,
    pub profile: ArithmeticProfile,
    pub sigma: SigmaPoints,
    pub warnings: Vec<String>,
}

impl Asymptotics {
    pub fn new(model: &ValidatedModel) -> Result<Asymptotics> {
        let geometry = Geometry::new(model)?;
        let profile = arithmetic_profile(model);
        let mut warnings = Vec::new();
        let mut opt = |r: Result<f64>, what: &str| match r {
            Ok(v) => Some(v),
            Err(e) => {
                warnings.push(format!("{what} does not exist ({e}); treated as infinite"));
                None
            }
        };
        let sigma = SigmaPoints {
            sigma_plus_1: opt(sigma_plus(model, Axis::One), "sigma_plus_1"),
            sigma_plus_2: opt(sigma_plus(model, Axis::Two), "sigma_plus_2"),
            sigma_d: opt(sigma_diag(&geometry), "sigma_d"),
        };
        Ok(Asymptotics { geometry, profile, sigma, warnings })
    }

    fn view(&self, k: Axis) -> Result<View> {
        let sp = match k {
            Axis::One => self.sigma.sigma_plus_1,
            Axis::Two => self.sigma.sigma_plus_2,
        };
        view(&self.geometry, &self.profile, sp, k)
    }

    /// Class of P(L_k = n, L_other = 0).
    pub fn boundary_class(&self, k: Axis) -> Result<AsymptoticClass> {
        Ok(boundary_from_view(&self.view(k)?))
    }

    /// Class of P(L_k >= n).
    pub fn marginal_class(&self, k: Axis) -> Result<AsymptoticClass> {
        Ok(marginal_from_view(&self.view(k)?))
    }

    /// Class of P(L_1 + L_2 >= n).
    pub fn diagonal_class(&self) -> Result<AsymptoticClass> {
        let k = if self.geometry.tau[0] > self.geometry.tau[1] + TIE_TOL { Axis::Two } else { Axis::One };
        Ok(diagonal_from_view(&self.view(k)?, self.sigma.sigma_d))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classes {
    pub boundary1: AsymptoticClass,
    pub boundary2: AsymptoticClass,
    pub marginal1: AsymptoticClass,
    pub marginal2: AsymptoticClass,
    pub diagonal: AsymptoticClass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayRates {
    #[serde(serialize_with = "ser::f64")]
    pub axis1: f64,
    #[serde(serialize_with = "ser::f64")]
    pub axis2: f64,
    #[serde(serialize_with = "ser::f64")]
    pub diagonal: f64,
}

/// Aggregated analysis of one model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub stable: bool,
    pub stability: StabilityVerdict,
    pub drifts: DriftSet,
    pub arithmetic_profile: ArithmeticProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub category: Option<Category>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_pair")]
    pub tau: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extreme_points: Option<ExtremePoints>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaPoints>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay_rates: Option<DecayRates>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Classes>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

fn opt_pair<S: Serializer>(x: &Option<[f64; 2]>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(p) => ser::pair(p, s),
        None => s.serialize_none(),
    }
}

impl AnalysisReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Full analysis; unstable models yield a report with `stable = false` and no classes.
pub fn full_report(model: &ValidatedModel) -> Result<AnalysisReport> {
    let d = drifts(model);
    let stability = check_stability(&d);
    let profile = arithmetic_profile(model);
    let mut report = AnalysisReport {
        stable: stability.stable,
        stability,
        drifts: d,
        arithmetic_profile: profile,
        category: None,
        tau: None,
        extreme_points: None,
        sigma: None,
        decay_rates: None,
        classes: None,
        warnings: Vec::new(),
    };
    if !report.stable {
        return Ok(report);
    }
    let a = Asymptotics::new(model)?;
    let g = &a.geometry;
    let classes = Classes {
        boundary1: a.boundary_class(Axis::One)?,
        boundary2: a.boundary_class(Axis::Two)?,
        marginal1: a.marginal_class(Axis::One)?,
        marginal2: a.marginal_class(Axis::Two)?,
        diagonal: a.diagonal_class()?,
    };
    report.decay_rates = Some(DecayRates {
        axis1: g.directional_decay([1.0, 0.0])?,
        axis2: g.directional_decay([0.0, 1.0])?,
        diagonal: g.directional_decay([1.0, 1.0])?,
    });
    report.category = Some(g.category);
    report.tau = Some(g.tau);
    report.extreme_points = Some(g.extreme.clone());
    report.sigma = Some(a.sigma.clone());
    report.classes = Some(classes);
    report.warnings = a.warnings.clone();
    Ok(report)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::kernel::tests::product;

    pub(crate) fn class(rate: f64, kappa: Kappa, periodic: bool) -> AsymptoticClass {
        AsymptoticClass::new(rate, kappa, periodic, "test")
    }

    #[test]
    fn rendering() {
        assert_eq!(render(2.329455, Kappa::MinusThreeHalves, false), "n^{-3/2} (2.3295)^{-n}");
        assert_eq!(render(3.0, Kappa::One, false), "n (3)^{-n}");
        assert_eq!(render(3.0, Kappa::Zero, true), "(1 + b(-1)^n) (3)^{-n}");
    }

    #[test]
    fn product_sigma_points() {
        let m = product();
        assert!((sigma_plus(&m, Axis::One).unwrap() - 3.0).abs() < 1e-12);
        assert!((sigma_plus(&m, Axis::Two).unwrap() - 3.0).abs() < 1e-12);
        let g = Geometry::new(&m).unwrap();
        assert!((sigma_diag(&g).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn product_classes() {
        let m = product();
        let a = Asymptotics::new(&m).unwrap();
        for k in [Axis::One, Axis::Two] {
            let b = a.boundary_class(k).unwrap();
            assert!((b.rate - 3.0).abs() < 1e-9 && b.kappa == Kappa::Zero && !b.periodic);
            let mg = a.marginal_class(k).unwrap();
            assert!((mg.rate - 3.0).abs() < 1e-9 && mg.kappa == Kappa::Zero);
            assert!(mg.provenance.contains("case (c)"), "{}", mg.provenance);
        }
        let d = a.diagonal_class().unwrap();
        assert!((d.rate - 3.0).abs() < 1e-9 && d.kappa == Kappa::One);
        assert!(d.provenance.contains("case (c)"));
    }

    #[test]
    fn product_report_serializes() {
        let r = full_report(&product()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json_pretty()).unwrap();
        assert_eq!(v["category"], "I");
        assert_eq!(v["classes"]["diagonal"]["kappa"], "1");
        assert_eq!(v["tau"][0], 3.0);
    }

    #[test]
    fn dominated_diagonal_root_is_dropped() {
        // The interior curve meets the diagonal below the domain edge; the
        // diagonal then decays at the smaller tau.
        let m = crate::model::validate(
            crate::model::parse_model(
                r#"{
            "interior": [[-1,1,0.30434782608695654],[0,-1,0.4782608695652174],[1,1,0.21739130434782608]],
            "boundary1": [[-1,1,0.7142857142857143],[0,0,0.2857142857142857]],
            "boundary2": [[0,-1,0.375],[0,1,0.20833333333333334],[1,-1,0.4166666666666667]],
            "origin": [[0,0,0.36363636363636365],[1,0,0.45454545454545453],[1,1,0.18181818181818182]]
        }"#,
            )
            .unwrap(),
        )
        .unwrap();
        let a = Asymptotics::new(&m).unwrap();
        assert!(diagonal_root(&a.geometry).is_ok());
        assert_eq!(a.sigma.sigma_d, None);
        let d = a.diagonal_class().unwrap();
        let along = a.geometry.directional_decay([1.0, 1.0]).unwrap();
        assert!((d.rate / along - 1.0).abs() < 1e-9, "{} vs {along}", d.rate);
        assert!(d.provenance.contains("case (b)"), "{}", d.provenance);
    }

    #[test]
    fn x_shaped_classes() {
        let m = crate::model::validate(crate::netgen::x_shaped_example()).unwrap();
        let a = Asymptotics::new(&m).unwrap();
        assert!(!a.profile.va);
        // gamma(u, u) = 1 reduces to 0.2 u^4 - 0.5 u^2 + 0.3 = 0, so u^2 = 1.5
        let root = 1.5f64.sqrt();
        assert!((a.sigma.sigma_d.unwrap() - root).abs() < 1e-12);
        let b1 = a.boundary_class(Axis::One).unwrap();
        assert!((b1.rate - root).abs() < 1e-9 && b1.kappa == Kappa::Zero && b1.periodic, "{b1:?}");
        assert!(a.marginal_class(Axis::One).unwrap().periodic);
        let b2 = a.boundary_class(Axis::Two).unwrap();
        assert!(b2.rate < root && !b2.periodic);
        let d = a.diagonal_class().unwrap();
        assert!(d.provenance.contains("axis 2") && d.provenance.contains("case (b)"), "{}", d.provenance);
        assert_eq!((d.rate, d.kappa, d.periodic), (b2.rate, b2.kappa, b2.periodic));
    }
}
