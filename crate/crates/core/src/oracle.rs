//! Brute-force check of the analytic classes: solve the chain censored to a
//! finite grid, read off tail sequences and fit `(rate, κ, b)` to them.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::asymptotics::{AsymptoticClass, Classes, Kappa};
use crate::error::{Error, Result};
use crate::model::ValidatedModel;
use crate::numfmt::{ser, sig};

/// Smallest grid accepted by the solver.
pub const MIN_GRID: usize = 32;
/// Sweep cap for the stationary iteration.
pub const MAX_SWEEPS: usize = 2_000_000;
const L1_TOL: f64 = 1e-13;
const REL_TOL: f64 = 1e-11;
/// States below this mass are ignored by the relative stopping rule.
const REL_FLOOR: f64 = 1e-280;
const CHECK_EVERY: usize = 16;

/// Stationary vector of the censored chain on {0..=N}².
#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalStationaryDistribution {
    pub n: usize,
    /// Row-major: `probs[i * (n + 1) + j] = π(i, j)`.
    #[serde(skip)]
    pub probs: Vec<f64>,
    #[serde(serialize_with = "ser::f64")]
    pub residual: f64,
    pub sweeps: usize,
    pub converged: bool,
    pub truncation: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl EmpiricalStationaryDistribution {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.probs[i * (self.n + 1) + j]
    }
}

/// Sparse censored transition structure, stored by incoming edges.
struct Censored {
    width: usize,
    /// CSR offsets into `from`/`prob`, one slot per target state.
    offsets: Vec<usize>,
    from: Vec<u32>,
    prob: Vec<f64>,
}

impl Censored {
    fn new(model: &ValidatedModel, n: usize) -> Censored {
        let width = n + 1;
        let states = width * width;
        let mut incoming: Vec<Vec<(u32, f64)>> = vec![Vec::new(); states];
        for i in 0..width {
            for j in 0..width {
                let src = (i * width + j) as u32;
                let k = model.kernel_at(i, j);
                let mut kept = Vec::with_capacity(9);
                for (inc, p) in k.entries() {
                    let (ti, tj) = (i as i64 + inc.di as i64, j as i64 + inc.dj as i64);
                    if ti >= 0 && tj >= 0 && ti <= n as i64 && tj <= n as i64 {
                        kept.push((ti as usize * width + tj as usize, p));
                    }
                }
                let mass: f64 = kept.iter().map(|e| e.1).sum();
                if mass <= 0.0 {
                    incoming[src as usize].push((src, 1.0));
                } else {
                    for (t, p) in kept {
                        incoming[t].push((src, p / mass));
                    }
                }
            }
        }
        let mut offsets = Vec::with_capacity(states + 1);
        let (mut from, mut prob) = (Vec::new(), Vec::new());
        offsets.push(0);
        for list in incoming {
            for (s, p) in list {
                from.push(s);
                prob.push(p);
            }
            offsets.push(from.len());
        }
        Censored { width, offsets, from, prob }
    }

    fn inflow(&self, pi: &[f64], t: usize) -> f64 {
        let (a, b) = (self.offsets[t], self.offsets[t + 1]);
        let mut acc = 0.0;
        for e in a..b {
            acc += pi[self.from[e] as usize] * self.prob[e];
        }
        acc
    }
}

/// Applies `f` to each grid row of `out` and collects one value per row.
fn rows_map<T: Send + Copy + Default>(out: &mut [f64], width: usize, f: impl Fn(usize, &mut [f64]) -> T + Sync + Send) -> Vec<T> {
    let mut res = vec![T::default(); out.len() / width];
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        out.par_chunks_mut(width).zip(res.par_iter_mut()).enumerate().for_each(|(i, (row, r))| *r = f(i, row));
    }
    #[cfg(not(feature = "parallel"))]
    for (i, (row, r)) in out.chunks_mut(width).zip(res.iter_mut()).enumerate() {
        *r = f(i, row);
    }
    res
}

/// Stationary distribution of the chain censored to {0..=N}², by damped
/// Jacobi iteration π ← π(I + P)/2 started from the origin.
pub fn solve_truncated(model: &ValidatedModel, n: usize) -> Result<EmpiricalStationaryDistribution> {
    solve_with_cap(model, n, MAX_SWEEPS)
}

pub fn solve_with_cap(model: &ValidatedModel, n: usize, cap: usize) -> Result<EmpiricalStationaryDistribution> {
    if n < MIN_GRID {
        return Err(Error::Oracle(format!("grid size {n} below minimum {MIN_GRID}")));
    }
    let c = Censored::new(model, n);
    let width = c.width;
    let mut pi = vec![0.0; width * width];
    pi[0] = 1.0;
    let mut next = vec![0.0; width * width];
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < cap {
        sweeps += 1;
        let check = sweeps % CHECK_EVERY == 0;
        let stats = {
            let old = &pi;
            let c = &c;
            rows_map(&mut next, width, |i, row| {
                let mut l1 = 0.0;
                let mut rel: f64 = 0.0;
                for (j, x) in row.iter_mut().enumerate() {
                    let s = i * width + j;
                    let mut v = 0.5 * (old[s] + c.inflow(old, s));
                    if v < 1e-300 {
                        v = 0.0;
                    }
                    if check {
                        let d = (v - old[s]).abs();
                        l1 += d;
                        if old[s] > REL_FLOOR {
                            rel = rel.max(d / old[s]);
                        } else if v > REL_FLOOR {
                            rel = f64::INFINITY;
                        }
                    }
                    *x = v;
                }
                (l1, rel)
            })
        };
        std::mem::swap(&mut pi, &mut next);
        if check {
            let l1: f64 = stats.iter().map(|s| s.0).sum();
            let rel = stats.iter().map(|s| s.1).fold(0.0, f64::max);
            if l1 < L1_TOL && rel < REL_TOL {
                converged = true;
                break;
            }
        }
    }
    let total: f64 = row_sums(&pi, width).iter().sum();
    for x in pi.iter_mut() {
        *x /= total;
    }
    let residual = {
        let defect = rows_map(&mut next, width, |i, _| {
            let mut d = 0.0;
            for j in 0..width {
                let s = i * width + j;
                d += (c.inflow(&pi, s) - pi[s]).abs();
            }
            d
        });
        defect.iter().sum()
    };
    let mut warnings = Vec::new();
    if !converged {
        warnings.push(format!("stationary iteration hit the cap of {cap} sweeps"));
    }
    Ok(EmpiricalStationaryDistribution { n, probs: pi, residual, sweeps, converged, truncation: "censored", warnings })
}

fn row_sums(pi: &[f64], width: usize) -> Vec<f64> {
    pi.chunks(width).map(|r| r.iter().sum()).collect()
}

/// Which tail sequence to read off a distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Boundary1,
    Boundary2,
    Marginal1,
    Marginal2,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 5] =
        [Direction::Boundary1, Direction::Boundary2, Direction::Marginal1, Direction::Marginal2, Direction::Diagonal];

    pub fn name(self) -> &'static str {
        match self {
            Direction::Boundary1 => "boundary1",
            Direction::Boundary2 => "boundary2",
            Direction::Marginal1 => "marginal1",
            Direction::Marginal2 => "marginal2",
            Direction::Diagonal => "diagonal",
        }
    }

    pub fn class(self, c: &Classes) -> &AsymptoticClass {
        match self {
            Direction::Boundary1 => &c.boundary1,
            Direction::Boundary2 => &c.boundary2,
            Direction::Marginal1 => &c.marginal1,
            Direction::Marginal2 => &c.marginal2,
            Direction::Diagonal => &c.diagonal,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `p(0..=N)` along one direction, with natural logs kept alongside.
#[derive(Clone, Debug, Serialize)]
pub struct TailSequence {
    pub direction: Direction,
    pub values: Vec<f64>,
    pub log_values: Vec<f64>,
    pub source_n: usize,
}

impl TailSequence {
    pub fn from_values(direction: Direction, values: Vec<f64>, source_n: usize) -> TailSequence {
        let log_values = values.iter().map(|v| v.ln()).collect();
        TailSequence { direction, values, log_values, source_n }
    }

    /// Marginal and diagonal tags hold survival sums.
    pub fn is_survival(&self) -> bool {
        matches!(self.direction, Direction::Marginal1 | Direction::Marginal2 | Direction::Diagonal)
    }

    /// First differences `p(n) - p(n+1)`.
    pub fn differences(&self) -> TailSequence {
        let d = self.values.windows(2).map(|w| w[0] - w[1]).collect();
        TailSequence::from_values(self.direction, d, self.source_n)
    }

    /// CSV with header `n,p,log_p`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,p,log_p\n");
        for (k, (v, l)) in self.values.iter().zip(&self.log_values).enumerate() {
            s.push_str(&format!("{k},{},{}\n", sig(*v), sig(*l)));
        }
        s
    }
}

/// Reads one tail sequence; marginal and diagonal sequences are survival sums.
pub fn extract(dist: &EmpiricalStationaryDistribution, direction: Direction) -> TailSequence {
    let n = dist.n;
    let w = n + 1;
    let values = match direction {
        Direction::Boundary1 => (0..w).map(|k| dist.get(k, 0)).collect(),
        Direction::Boundary2 => (0..w).map(|k| dist.get(0, k)).collect(),
        Direction::Marginal1 => survival(&(0..w).map(|i| (0..w).map(|j| dist.get(i, j)).sum()).collect::<Vec<f64>>()),
        Direction::Marginal2 => survival(&(0..w).map(|j| (0..w).map(|i| dist.get(i, j)).sum()).collect::<Vec<f64>>()),
        Direction::Diagonal => {
            let mut level = vec![0.0; 2 * n + 1];
            for i in 0..w {
                for j in 0..w {
                    level[i + j] += dist.get(i, j);
                }
            }
            let mut s = survival(&level);
            s.truncate(w);
            s
        }
    };
    TailSequence::from_values(direction, values, n)
}

/// Tail sums taken from the far end so small terms are not absorbed.
fn survival(p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    let mut acc = 0.0;
    for k in (0..p.len()).rev() {
        acc += p[k];
        out[k] = acc;
    }
    out
}

/// Empirical `(1 + b(-1)^n) n^κ rate^{-n}` fit.
#[derive(Clone, Debug, Serialize)]
pub struct FittedAsymptotic {
    #[serde(serialize_with = "ser::f64")]
    pub rate_hat: f64,
    #[serde(serialize_with = "ser::f64")]
    pub kappa_hat: f64,
    #[serde(serialize_with = "ser::f64")]
    pub b_hat: f64,
    pub window: [usize; 2],
    #[serde(serialize_with = "ser::f64")]
    pub residual: f64,
    /// κ chosen from {-3/2, -1/2, 0, 1} by least residual.
    pub kappa_lattice: Kappa,
    #[serde(serialize_with = "ser::f64")]
    pub rate_lattice: f64,
    /// Rates fitted to the even and odd subsequences alone.
    #[serde(serialize_with = "ser::opt_f64")]
    pub rate_even: Option<f64>,
    #[serde(serialize_with = "ser::opt_f64")]
    pub rate_odd: Option<f64>,
    /// For survival sequences: `b` fitted to the point masses `S(n) - S(n+1)`,
    /// where summation has not yet damped the alternation.
    #[serde(serialize_with = "ser::opt_f64", skip_serializing_if = "Option::is_none")]
    pub b_point_mass: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Default fit window `[0.3 N, 0.6 N]`.
pub fn default_window(n: usize) -> [usize; 2] {
    [(0.3 * n as f64).round() as usize, (0.6 * n as f64).round() as usize]
}

/// Least-squares fit of `log p(n) = -n log a + κ log n + c_parity` on the window.
pub fn fit_tail(seq: &TailSequence, window: [usize; 2]) -> Result<FittedAsymptotic> {
    let [n0, n1] = window;
    if n0 < 1 || n1 >= seq.values.len() || n1 < n0 + 8 {
        return Err(Error::Fit(format!("window [{n0}, {n1}] does not fit a sequence of length {}", seq.values.len())));
    }
    let pos = |n: usize| seq.values[n] > 0.0 && seq.log_values[n].is_finite();
    let even_ok = (n0..=n1).filter(|n| n % 2 == 0).all(pos);
    let odd_ok = (n0..=n1).filter(|n| n % 2 == 1).all(pos);
    let mut notes = Vec::new();
    let (points, parity_cols): (Vec<usize>, bool) = match (even_ok, odd_ok) {
        (true, true) => ((n0..=n1).collect(), true),
        (true, false) if (n0..=n1).filter(|n| n % 2 == 1).all(|n| !pos(n)) => {
            notes.push("odd terms vanish: purely periodic sequence".into());
            ((n0..=n1).filter(|n| n % 2 == 0).collect(), false)
        }
        (false, true) if (n0..=n1).filter(|n| n % 2 == 0).all(|n| !pos(n)) => {
            notes.push("even terms vanish: purely periodic sequence".into());
            ((n0..=n1).filter(|n| n % 2 == 1).collect(), false)
        }
        _ => return Err(Error::Fit("window contains zeros that are not a period-2 pattern".into())),
    };
    let y: Vec<f64> = points.iter().map(|&n| seq.log_values[n]).collect();
    let free = least_squares(&points, &y, None, parity_cols)?;
    let mut best: Option<(Kappa, f64, f64)> = None;
    for k in Kappa::ALL {
        let fit = least_squares(&points, &y, Some(k.value()), parity_cols)?;
        if best.is_none_or(|b| fit.residual < b.2) {
            best = Some((k, fit.log_rate, fit.residual));
        }
    }
    let (kl, lr, _) = best.expect("lattice is nonempty");
    let parity_rate = |par: usize| -> Option<f64> {
        let pts: Vec<usize> = (n0..=n1).filter(|n| n % 2 == par && pos(*n)).collect();
        if pts.len() < 4 {
            return None;
        }
        let ys: Vec<f64> = pts.iter().map(|&n| seq.log_values[n]).collect();
        least_squares(&pts, &ys, None, false).ok().map(|f| f.log_rate.exp())
    };
    let b_hat = if parity_cols {
        ((free.c_even - free.c_odd) / 2.0).tanh()
    } else if even_ok {
        1.0
    } else {
        -1.0
    };
    Ok(FittedAsymptotic {
        rate_hat: free.log_rate.exp(),
        kappa_hat: free.kappa,
        b_hat,
        window,
        residual: free.residual,
        kappa_lattice: kl,
        rate_lattice: lr.exp(),
        rate_even: parity_rate(0),
        rate_odd: parity_rate(1),
        b_point_mass: None,
        notes,
    })
}

struct Lsq {
    log_rate: f64,
    kappa: f64,
    c_even: f64,
    c_odd: f64,
    residual: f64,
}

/// Columns: -n, log n (unless κ is fixed), even indicator, odd indicator.
fn least_squares(points: &[usize], y: &[f64], kappa: Option<f64>, parity: bool) -> Result<Lsq> {
    let m = points.len();
    let ncols = 1 + usize::from(kappa.is_none()) + if parity { 2 } else { 1 };
    // Center n so the columns are well conditioned.
    let mid = points[m / 2] as f64;
    let mut a = DMatrix::<f64>::zeros(m, ncols);
    let mut b = DVector::<f64>::zeros(m);
    for (r, &n) in points.iter().enumerate() {
        let nf = n as f64;
        let mut col = 0;
        a[(r, col)] = -(nf - mid);
        col += 1;
        if kappa.is_none() {
            a[(r, col)] = nf.ln() - mid.ln();
            col += 1;
        }
        if parity {
            a[(r, col + n % 2)] = 1.0;
        } else {
            a[(r, col)] = 1.0;
        }
        b[r] = y[r] - kappa.map_or(0.0, |k| k * nf.ln());
    }
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&b, 1e-13).map_err(|e| Error::Fit(e.to_string()))?;
    let smallest = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    if smallest < 1e-10 {
        return Err(Error::Fit("singular fit matrix".into()));
    }
    let resid = (&a * &x - &b).norm() / (m as f64).sqrt();
    let log_rate = x[0];
    let (kappa_v, off) = match kappa {
        Some(k) => (k, 1),
        None => (x[1], 2),
    };
    // Undo the centering: constant at n = 0 absorbs mid terms.
    let shift = log_rate * mid - if kappa.is_none() { kappa_v * mid.ln() } else { 0.0 };
    let (c_even, c_odd) = if parity { (x[off] + shift, x[off + 1] + shift) } else { (x[off] + shift, x[off] + shift) };
    Ok(Lsq { log_rate, kappa: kappa_v, c_even, c_odd, residual: resid })
}

/// Pass thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    pub rate: f64,
    pub kappa: f64,
    pub periodic: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rate: 5e-3, kappa: 0.2, periodic: 0.05 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub direction: Direction,
    pub pass: bool,
    pub analytic: AsymptoticClass,
    pub fitted: FittedAsymptotic,
    #[serde(serialize_with = "ser::f64")]
    pub rate_gap: f64,
    #[serde(serialize_with = "ser::f64")]
    pub kappa_gap: f64,
    pub periodic_detected: bool,
    pub rate_ok: bool,
    pub kappa_ok: bool,
    pub periodic_ok: bool,
}

/// Compares an analytic class with a fit.
pub fn verify(direction: Direction, analytic: &AsymptoticClass, fitted: &FittedAsymptotic, tol: Tolerance) -> VerificationReport {
    let rate_gap = fitted.rate_hat / analytic.rate - 1.0;
    let kappa_gap = fitted.kappa_hat - analytic.kappa.value();
    let periodic_detected = fitted.b_point_mass.unwrap_or(fitted.b_hat).abs() > tol.periodic;
    let rate_ok = rate_gap.abs() < tol.rate;
    let kappa_ok = kappa_gap.abs() < tol.kappa;
    let periodic_ok = periodic_detected == analytic.periodic;
    VerificationReport {
        direction,
        pass: rate_ok && kappa_ok && periodic_ok,
        analytic: analytic.clone(),
        fitted: fitted.clone(),
        rate_gap,
        kappa_gap,
        periodic_detected,
        rate_ok,
        kappa_ok,
        periodic_ok,
    }
}

/// Oracle run over all five directions.
#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub pass: bool,
    pub grid: usize,
    pub window: [usize; 2],
    pub tolerance: Tolerance,
    pub solver: EmpiricalStationaryDistribution,
    pub directions: Vec<VerificationReport>,
}

/// Solves, fits and compares every direction against `classes`.
pub fn verify_all(
    model: &ValidatedModel,
    classes: &Classes,
    n: usize,
    window: Option<[usize; 2]>,
    tol: Tolerance,
) -> Result<(Verification, Vec<TailSequence>)> {
    let dist = solve_truncated(model, n)?;
    let window = window.unwrap_or_else(|| default_window(n));
    let mut reports = Vec::new();
    let mut seqs = Vec::new();
    for d in Direction::ALL {
        let seq = extract(&dist, d);
        let mut fit = fit_tail(&seq, window)?;
        if seq.is_survival() {
            fit.b_point_mass = fit_tail(&seq.differences(), window).ok().map(|f| f.b_hat);
        }
        reports.push(verify(d, d.class(classes), &fit, tol));
        seqs.push(seq);
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok((Verification { pass, grid: n, window, tolerance: tol, solver: dist, directions: reports }, seqs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::tests::product;

    fn synthetic(f: impl Fn(f64) -> f64, len: usize) -> TailSequence {
        TailSequence::from_values(Direction::Boundary1, (0..len).map(|n| f(n as f64)).collect(), len - 1)
    }

    #[test]
    fn fits_exact_geometric() {
        let s = synthetic(|n| 2.0 * 3f64.powf(-n), 301);
        let f = fit_tail(&s, default_window(300)).unwrap();
        assert!((f.rate_hat - 3.0).abs() < 1e-6);
        assert!(f.kappa_hat.abs() < 1e-3);
        assert!(f.b_hat.abs() < 1e-9);
        assert_eq!(f.kappa_lattice, Kappa::Zero);
    }

    #[test]
    fn fits_power_prefactor() {
        let s = synthetic(|n| n.powf(-1.5) * 2f64.powf(-n), 301);
        let f = fit_tail(&s, default_window(300)).unwrap();
        assert!((f.rate_hat - 2.0).abs() < 1e-6);
        assert!((f.kappa_hat + 1.5).abs() < 1e-3);
        assert_eq!(f.kappa_lattice, Kappa::MinusThreeHalves);
    }

    #[test]
    fn fits_oscillation() {
        let s = synthetic(|n| (1.0 + 0.5 * if n as i64 % 2 == 0 { 1.0 } else { -1.0 }) * 3f64.powf(-n), 301);
        let f = fit_tail(&s, default_window(300)).unwrap();
        assert!((f.rate_hat - 3.0).abs() < 1e-6);
        assert!(f.kappa_hat.abs() < 1e-3);
        assert!((f.b_hat - 0.5).abs() < 1e-3);
    }

    #[test]
    fn pure_period_two() {
        let s = synthetic(|n| if n as i64 % 2 == 0 { 3f64.powf(-n) } else { 0.0 }, 301);
        let f = fit_tail(&s, default_window(300)).unwrap();
        assert_eq!(f.b_hat, 1.0);
        let bad = synthetic(|n| if n as i64 % 7 == 0 { 0.0 } else { 3f64.powf(-n) }, 301);
        assert!(fit_tail(&bad, default_window(300)).is_err());
    }

    #[test]
    fn negative_control_fails_on_kappa() {
        let s = synthetic(|n| n.powf(-1.5) * 2f64.powf(-n), 301);
        let f = fit_tail(&s, default_window(300)).unwrap();
        let wrong = crate::asymptotics::tests::class(2.0, Kappa::Zero, false);
        let r = verify(Direction::Boundary1, &wrong, &f, Tolerance::default());
        assert!(!r.pass && r.rate_ok && !r.kappa_ok);
        assert!((r.kappa_gap + 1.5).abs() < 1e-3);
    }

    #[test]
    fn product_form_is_reproduced() {
        let m = product();
        let d = solve_truncated(&m, 90).unwrap();
        assert!(d.converged, "{:?}", d.warnings);
        assert!(d.residual < 1e-11, "{}", d.residual);
        let total: f64 = d.probs.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        let rho: f64 = 1.0 / 3.0;
        for i in 0..=30 {
            for j in 0..=30 {
                let want = (1.0 - rho) * (1.0 - rho) * rho.powi(i as i32 + j as i32);
                assert!((d.get(i, j) - want).abs() < 1e-8);
            }
        }
        let b = extract(&d, Direction::Boundary1);
        for k in 1..=30 {
            assert!((b.values[k] / b.values[k - 1] - rho).abs() < 1e-8);
        }
        assert!((extract(&d, Direction::Marginal1).values[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn censored_rows_are_stochastic() {
        let m = product();
        let c = Censored::new(&m, 40);
        let mut out = vec![0.0; c.width * c.width];
        for t in 0..out.len() {
            for e in c.offsets[t]..c.offsets[t + 1] {
                out[c.from[e] as usize] += c.prob[e];
            }
        }
        assert!(out.iter().all(|s| (s - 1.0).abs() < 1e-15));
    }
}
