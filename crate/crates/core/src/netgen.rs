//! Model generators: a two-node Jackson network with simultaneous arrivals
//! and two independent M/M/1 queues.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Face, Model, TransitionKernel};

/// Rates of the two-node network. Arrivals join both nodes at once; a
/// customer leaving node 1 moves to node 2 with probability `p`, and one
/// leaving node 2 moves to node 1 with probability `q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacksonParams {
    pub lambda: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub p: f64,
    pub q: f64,
}

impl JacksonParams {
    pub fn new(lambda: f64, mu1: f64, mu2: f64, p: f64, q: f64) -> Result<JacksonParams> {
        let params = JacksonParams { lambda, mu1, mu2, p, q };
        params.check()?;
        Ok(params)
    }

    fn check(&self) -> Result<()> {
        for (name, v) in [("lambda", self.lambda), ("mu1", self.mu1), ("mu2", self.mu2)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameters(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Parameters(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(())
    }

    /// Rates scaled so that λ + μ1 + μ2 = 1.
    pub fn normalized(&self) -> JacksonParams {
        let s = self.lambda + self.mu1 + self.mu2;
        JacksonParams { lambda: self.lambda / s, mu1: self.mu1 / s, mu2: self.mu2 / s, ..*self }
    }

    /// Traffic-equation stability test.
    pub fn is_stable(&self) -> bool {
        let d = 1.0 - self.p * self.q;
        d > 0.0 && self.lambda * (1.0 + self.q) / d < self.mu1 && self.lambda * (1.0 + self.p) / d < self.mu2
    }
}

fn kernel(face: Face, triples: &[(i64, i64, f64)]) -> Result<TransitionKernel> {
    let kept: Vec<_> = triples.iter().copied().filter(|t| t.2 > 0.0).collect();
    Ok(TransitionKernel::from_triples(face, &kept)?)
}

/// Uniformized Jackson network with simultaneous arrivals.
pub fn jackson_model(params: &JacksonParams) -> Result<Model> {
    params.check()?;
    let JacksonParams { lambda: l, mu1: m1, mu2: m2, p, q } = params.normalized();
    Ok(Model::new(vec![
        kernel(
            Face::Interior,
            &[(1, 1, l), (-1, 1, m1 * p), (1, -1, m2 * q), (-1, 0, m1 * (1.0 - p)), (0, -1, m2 * (1.0 - q))],
        )?,
        kernel(Face::Boundary1, &[(1, 1, l), (-1, 1, m1 * p), (-1, 0, m1 * (1.0 - p)), (0, 0, m2)])?,
        kernel(Face::Boundary2, &[(1, 1, l), (1, -1, m2 * q), (0, -1, m2 * (1.0 - q)), (0, 0, m1)])?,
        kernel(Face::Origin, &[(1, 1, l), (0, 0, m1 + m2)])?,
    ])?)
}

/// Closed-form intersection point of the interior and face-1 curves; needs q > 0.
pub fn jackson_u1r_closed_form(params: &JacksonParams) -> Result<[f64; 2]> {
    params.check()?;
    if params.q == 0.0 {
        return Err(Error::Parameters("closed form needs q > 0; use (mu1/lambda, 1)".into()));
    }
    let JacksonParams { lambda: l, mu1: m1, p, q, .. } = *params;
    let c = 4.0 * l * q * m1 * (1.0 - p * q);
    // (-l + sqrt(l^2 + c)) / (2 l q), rationalized to avoid cancellation
    let u1 = 2.0 * m1 * (1.0 - p * q) / (l + (l * l + c).sqrt());
    Ok([u1, q * u1 + 1.0 - q])
}

/// Intersection point for any q, including the q = 0 special case (μ1/λ, 1).
pub fn jackson_u1r(params: &JacksonParams) -> Result<[f64; 2]> {
    if params.q == 0.0 {
        params.check()?;
        return Ok([params.mu1 / params.lambda, 1.0]);
    }
    jackson_u1r_closed_form(params)
}

/// For q = 0: whether μ2 >= μ1 + λp, i.e. the face-1 boundary tail is purely geometric.
pub fn jackson_boundary_condition(params: &JacksonParams) -> Result<bool> {
    params.check()?;
    if params.q != 0.0 {
        return Err(Error::Parameters("boundary condition applies to q = 0 only".into()));
    }
    Ok(params.mu2 >= params.mu1 + params.lambda * params.p)
}

/// Two independent M/M/1 queues sharing one uniformization clock; the
/// leftover mass is a self-loop.
pub fn independent_mm1(l1: f64, m1: f64, l2: f64, m2: f64) -> Result<Model> {
    for (name, v) in [("l1", l1), ("m1", m1), ("l2", l2), ("m2", m2)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Parameters(format!("{name} must be positive, got {v}")));
        }
    }
    if l1 >= m1 || l2 >= m2 {
        return Err(Error::Parameters("each queue needs arrival rate below service rate".into()));
    }
    let total = l1 + m1 + l2 + m2;
    if total > 1.0 + 1e-12 {
        return Err(Error::Parameters(format!("rates sum to {total} > 1")));
    }
    let rest = |x: f64| if x < 1e-12 { 0.0 } else { x };
    let idle = rest(1.0 - total);
    Ok(Model::new(vec![
        kernel(Face::Interior, &[(1, 0, l1), (-1, 0, m1), (0, 1, l2), (0, -1, m2), (0, 0, idle)])?,
        kernel(Face::Boundary1, &[(1, 0, l1), (-1, 0, m1), (0, 1, l2), (0, 0, rest(idle + m2))])?,
        kernel(Face::Boundary2, &[(1, 0, l1), (0, 1, l2), (0, -1, m2), (0, 0, rest(idle + m1))])?,
        kernel(Face::Origin, &[(1, 0, l1), (0, 1, l2), (0, 0, rest(idle + m1 + m2))])?,
    ])?)
}

/// Walk whose interior moves only diagonally (X-shaped support), so the
/// parity of L1 + L2 is preserved off the axes and tails alternate.
pub fn x_shaped_example() -> Model {
    let k = |face, t: &[(i64, i64, f64)]| TransitionKernel::from_triples(face, t).expect("fixed kernel");
    Model::new(vec![
        k(Face::Interior, &[(1, 1, 0.2), (-1, -1, 0.3), (1, -1, 0.2), (-1, 1, 0.2), (0, 0, 0.1)]),
        k(Face::Boundary1, &[(1, 1, 0.2), (-1, 1, 0.2), (0, 0, 0.6)]),
        k(Face::Boundary2, &[(1, 1, 0.3), (0, 1, 0.1), (0, -1, 0.3), (0, 0, 0.3)]),
        k(Face::Origin, &[(1, 0, 0.25), (0, 1, 0.25), (0, 0, 0.5)]),
    ])
    .expect("fixed model")
}
