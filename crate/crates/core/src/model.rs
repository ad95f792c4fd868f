//! Double QBD models: per-face transition kernels, parsing, validation,
//! drift vectors, stability and the arithmetic (X-shape) profile.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::Value;

use crate::error::ModelError;
use crate::numfmt::ser;

/// Tolerance on total mass and on float zero tests.
pub const MASS_TOL: f64 = 1e-12;

/// Side length minus one of the window used by the reachability check.
const WINDOW: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Face {
    Interior,
    Boundary1,
    Boundary2,
    Origin,
}

impl Face {
    pub const ALL: [Face; 4] = [Face::Interior, Face::Boundary1, Face::Boundary2, Face::Origin];

    pub fn name(self) -> &'static str {
        match self {
            Face::Interior => "interior",
            Face::Boundary1 => "boundary1",
            Face::Boundary2 => "boundary2",
            Face::Origin => "origin",
        }
    }

    /// Face of a state of the quarter plane.
    pub fn of_state(i: usize, j: usize) -> Face {
        match (i > 0, j > 0) {
            (true, true) => Face::Interior,
            (true, false) => Face::Boundary1,
            (false, true) => Face::Boundary2,
            (false, false) => Face::Origin,
        }
    }

    /// Whether a jump with this increment keeps a state of this face in the quarter plane.
    pub fn allows(self, inc: Increment) -> bool {
        match self {
            Face::Interior => true,
            Face::Boundary1 => inc.dj >= 0,
            Face::Boundary2 => inc.di >= 0,
            Face::Origin => inc.di >= 0 && inc.dj >= 0,
        }
    }

    /// The face playing this role once the coordinates are exchanged.
    pub fn swapped(self) -> Face {
        match self {
            Face::Boundary1 => Face::Boundary2,
            Face::Boundary2 => Face::Boundary1,
            f => f,
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Face {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Face::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ModelError::UnknownFace(s.to_string()))
    }
}

/// A skip-free increment, both components in {-1, 0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Increment {
    pub di: i8,
    pub dj: i8,
}

impl Increment {
    pub fn new(di: i64, dj: i64) -> Result<Self, ModelError> {
        if di.abs() > 1 || dj.abs() > 1 {
            return Err(ModelError::IncrementOutside { di, dj });
        }
        Ok(Increment { di: di as i8, dj: dj as i8 })
    }

    /// All nine increments, row-major in (di, dj).
    pub fn all() -> impl Iterator<Item = Increment> {
        (-1i8..=1).flat_map(|di| (-1i8..=1).map(move |dj| Increment { di, dj }))
    }

    fn slot(self) -> (usize, usize) {
        ((self.di + 1) as usize, (self.dj + 1) as usize)
    }

    pub fn transpose(self) -> Increment {
        Increment { di: self.dj, dj: self.di }
    }

    /// Position on the compass rose in steps of 45 degrees, `None` for (0,0).
    fn octant(self) -> Option<u8> {
        Some(match (self.di, self.dj) {
            (1, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            (-1, 1) => 3,
            (-1, 0) => 4,
            (-1, -1) => 5,
            (0, -1) => 6,
            (1, -1) => 7,
            _ => return None,
        })
    }
}

/// One entry of a model document before validation.
#[derive(Clone, Debug)]
pub struct Entry {
    pub inc: Increment,
    pub prob: f64,
    /// Exact value when the mass was written as a decimal string.
    pub exact: Option<BigRational>,
}

impl Entry {
    pub fn float(di: i64, dj: i64, prob: f64) -> Result<Entry, ModelError> {
        Ok(Entry { inc: Increment::new(di, dj)?, prob, exact: None })
    }

    pub fn decimal(di: i64, dj: i64, text: &str) -> Result<Entry, ModelError> {
        let exact = parse_decimal(text)?;
        let prob: f64 = text
            .trim()
            .parse()
            .map_err(|_| ModelError::Syntax(format!("bad probability {text:?}")))?;
        Ok(Entry { inc: Increment::new(di, dj)?, prob, exact: Some(exact) })
    }
}

/// Probability distribution of the increment on one face.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionKernel {
    face: Face,
    probs: [[f64; 3]; 3],
    exact: [[Option<BigRational>; 3]; 3],
}

impl TransitionKernel {
    /// Builds a kernel, checking ranges, face support and total mass.
    pub fn new(face: Face, entries: Vec<Entry>) -> Result<Self, ModelError> {
        let mut probs = [[0.0; 3]; 3];
        let mut exact: [[Option<BigRational>; 3]; 3] = Default::default();
        for row in exact.iter_mut() {
            for e in row.iter_mut() {
                *e = Some(BigRational::zero());
            }
        }
        let mut seen = [[false; 3]; 3];
        for e in entries {
            if !(0.0..=1.0).contains(&e.prob) || !e.prob.is_finite() {
                return Err(ModelError::ProbabilityRange { face, value: e.prob });
            }
            let (a, b) = e.inc.slot();
            if seen[a][b] {
                return Err(ModelError::Duplicate { face, di: e.inc.di, dj: e.inc.dj });
            }
            seen[a][b] = true;
            if e.prob > 0.0 && !face.allows(e.inc) {
                return Err(ModelError::SupportViolation { face, di: e.inc.di, dj: e.inc.dj });
            }
            probs[a][b] = e.prob;
            exact[a][b] = e.exact;
        }
        let mass: f64 = probs.iter().flatten().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(ModelError::Mass { face, mass });
        }
        Ok(TransitionKernel { face, probs, exact })
    }

    /// Convenience constructor from `(di, dj, prob)` triples.
    pub fn from_triples(face: Face, triples: &[(i64, i64, f64)]) -> Result<Self, ModelError> {
        let entries = triples
            .iter()
            .map(|&(di, dj, p)| Entry::float(di, dj, p))
            .collect::<Result<Vec<_>, _>>()?;
        TransitionKernel::new(face, entries)
    }

    pub fn face(&self) -> Face {
        self.face
    }

    pub fn prob(&self, inc: Increment) -> f64 {
        let (a, b) = inc.slot();
        self.probs[a][b]
    }

    /// P(X = (di, dj)); zero outside the increment set.
    pub fn p(&self, di: i32, dj: i32) -> f64 {
        if di.abs() > 1 || dj.abs() > 1 {
            return 0.0;
        }
        self.probs[(di + 1) as usize][(dj + 1) as usize]
    }

    /// Mass table indexed `[di + 1][dj + 1]`.
    pub fn table(&self) -> [[f64; 3]; 3] {
        self.probs
    }

    pub fn in_support(&self, inc: Increment) -> bool {
        self.prob(inc) > 0.0
    }

    pub fn support(&self) -> Vec<Increment> {
        Increment::all().filter(|&i| self.in_support(i)).collect()
    }

    /// Positive-mass entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (Increment, f64)> + '_ {
        Increment::all().filter_map(move |i| {
            let p = self.prob(i);
            (p > 0.0).then_some((i, p))
        })
    }

    pub fn mean(&self) -> [f64; 2] {
        let mut m = [0.0; 2];
        for (inc, p) in self.entries() {
            m[0] += p * inc.di as f64;
            m[1] += p * inc.dj as f64;
        }
        m
    }

    /// Mean in exact arithmetic, available when every mass came from a decimal string.
    pub fn exact_mean(&self) -> Option<[BigRational; 2]> {
        let mut m = [BigRational::zero(), BigRational::zero()];
        for inc in Increment::all() {
            let (a, b) = inc.slot();
            let p = self.exact[a][b].as_ref()?;
            m[0] += p * BigRational::from_integer(BigInt::from(inc.di));
            m[1] += p * BigRational::from_integer(BigInt::from(inc.dj));
        }
        Some(m)
    }

    /// E(u1^{X1} u2^{X2}).
    pub fn generating_function(&self, u1: Complex64, u2: Complex64) -> Complex64 {
        let p1 = [u1.inv(), Complex64::new(1.0, 0.0), u1];
        let p2 = [u2.inv(), Complex64::new(1.0, 0.0), u2];
        let mut s = Complex64::new(0.0, 0.0);
        for (a, row) in self.probs.iter().enumerate() {
            for (b, &p) in row.iter().enumerate() {
                if p > 0.0 {
                    s += p1[a] * p2[b] * p;
                }
            }
        }
        s
    }

    /// Real-argument version of [`generating_function`](Self::generating_function).
    pub fn gf_real(&self, u1: f64, u2: f64) -> f64 {
        let p1 = [1.0 / u1, 1.0, u1];
        let p2 = [1.0 / u2, 1.0, u2];
        let mut s = 0.0;
        for (a, row) in self.probs.iter().enumerate() {
            for (b, &p) in row.iter().enumerate() {
                if p > 0.0 {
                    s += p * p1[a] * p2[b];
                }
            }
        }
        s
    }

    pub fn transpose(&self) -> TransitionKernel {
        let mut t = self.clone();
        t.face = self.face.swapped();
        for a in 0..3 {
            for b in 0..3 {
                t.probs[a][b] = self.probs[b][a];
                t.exact[a][b] = self.exact[b][a].clone();
            }
        }
        t
    }
}

/// The four face kernels, not yet validated.
#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    pub interior: TransitionKernel,
    pub boundary1: TransitionKernel,
    pub boundary2: TransitionKernel,
    pub origin: TransitionKernel,
}

impl Model {
    /// Assembles a model from one kernel per face, in any order.
    pub fn new(kernels: Vec<TransitionKernel>) -> Result<Model, ModelError> {
        let mut slots: [Option<TransitionKernel>; 4] = Default::default();
        for k in kernels {
            let idx = Face::ALL.iter().position(|&f| f == k.face()).unwrap();
            slots[idx] = Some(k);
        }
        let take = |i: usize, slots: &mut [Option<TransitionKernel>; 4]| {
            slots[i].take().ok_or(ModelError::MissingFace(Face::ALL[i]))
        };
        Ok(Model {
            interior: take(0, &mut slots)?,
            boundary1: take(1, &mut slots)?,
            boundary2: take(2, &mut slots)?,
            origin: take(3, &mut slots)?,
        })
    }

    pub fn kernel(&self, face: Face) -> &TransitionKernel {
        match face {
            Face::Interior => &self.interior,
            Face::Boundary1 => &self.boundary1,
            Face::Boundary2 => &self.boundary2,
            Face::Origin => &self.origin,
        }
    }

    /// Kernel used from state (i, j).
    pub fn kernel_at(&self, i: usize, j: usize) -> &TransitionKernel {
        self.kernel(Face::of_state(i, j))
    }

    /// Exchanges the two coordinates.
    pub fn swap_coordinates(&self) -> Model {
        Model {
            interior: self.interior.transpose(),
            boundary1: self.boundary2.transpose(),
            boundary2: self.boundary1.transpose(),
            origin: self.origin.transpose(),
        }
    }

    /// Serializes into the model-file schema (masses as plain numbers).
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for face in Face::ALL {
            let list: Vec<Value> = self
                .kernel(face)
                .entries()
                .map(|(inc, p)| serde_json::json!([inc.di, inc.dj, p]))
                .collect();
            map.insert(face.name().to_string(), Value::Array(list));
        }
        Value::Object(map)
    }

    /// Model file text with one face per line.
    pub fn to_json_text(&self) -> String {
        let mut out = String::from("{\n");
        for (n, face) in Face::ALL.into_iter().enumerate() {
            let list: Vec<String> =
                self.kernel(face).entries().map(|(inc, p)| format!("[{}, {}, {}]", inc.di, inc.dj, Value::from(p))).collect();
            let sep = if n + 1 < Face::ALL.len() { "," } else { "" };
            out.push_str(&format!("  \"{}\": [{}]{sep}\n", face.name(), list.join(", ")));
        }
        out.push_str("}\n");
        out
    }
}

/// Parses a model document: an object with keys `interior`, `boundary1`,
/// `boundary2`, `origin`, each a list of `[di, dj, prob]`; `prob` may be a
/// decimal string.
pub fn parse_model(text: &str) -> Result<Model, ModelError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ModelError::Syntax(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| ModelError::Syntax("top level must be an object".into()))?;
    let mut kernels = Vec::with_capacity(4);
    for (key, val) in obj {
        let face: Face = key.parse()?;
        let list = val
            .as_array()
            .ok_or_else(|| ModelError::Syntax(format!("{key}: expected a list of [di, dj, prob]")))?;
        let mut entries = Vec::with_capacity(list.len());
        for item in list {
            entries.push(parse_entry(key, item)?);
        }
        kernels.push(TransitionKernel::new(face, entries)?);
    }
    Model::new(kernels)
}

fn parse_entry(key: &str, item: &Value) -> Result<Entry, ModelError> {
    let bad = || ModelError::Syntax(format!("{key}: entries must be [di, dj, prob], got {item}"));
    let triple = item.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
    let di = triple[0].as_i64().ok_or_else(bad)?;
    let dj = triple[1].as_i64().ok_or_else(bad)?;
    match &triple[2] {
        Value::Number(n) => Entry::float(di, dj, n.as_f64().ok_or_else(bad)?),
        Value::String(s) => Entry::decimal(di, dj, s),
        _ => Err(bad()),
    }
}

/// Exact value of a decimal literal such as `"0.15"` or `"1.5e-2"`.
pub fn parse_decimal(text: &str) -> Result<BigRational, ModelError> {
    let bad = || ModelError::Syntax(format!("bad decimal probability {text:?}"));
    let s = text.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(r)
}

/// Evidence produced by [`validate`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    /// Index of the lattice generated by the interior support in Z^2 (1, or 2 for X-shaped walks).
    pub interior_lattice_index: u32,
    /// States of the reachability window that communicate with the origin.
    pub window_states: usize,
    /// Period of the origin in the window chain.
    pub period: u32,
}

/// A model satisfying the irreducibility, aperiodicity and nonzero-drift conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidatedModel {
    model: Model,
    certificate: Certificate,
}

impl ValidatedModel {
    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn kernel(&self, face: Face) -> &TransitionKernel {
        self.model.kernel(face)
    }

    pub fn swap_coordinates(&self) -> ValidatedModel {
        ValidatedModel { model: self.model.swap_coordinates(), certificate: self.certificate.clone() }
    }
}

impl std::ops::Deref for ValidatedModel {
    type Target = Model;
    fn deref(&self) -> &Model {
        &self.model
    }
}

/// Checks the model conditions: (i) the interior walk is irreducible on its
/// lattice and not confined to a half-plane, (ii) the reflecting chain is
/// irreducible and aperiodic, (iii) the interior drift is nonzero.
pub fn validate(model: Model) -> Result<ValidatedModel, ModelError> {
    let support = model.interior.support();
    if confined_to_half_plane(&support) {
        return Err(ModelError::InteriorNotIrreducible(
            "interior support lies in a closed half-plane".into(),
        ));
    }
    let index = lattice_index(&support);
    // Index 2 is the X-shaped lattice {i + j even}; any other index cannot
    // arise from a skip-free support that escapes every half-plane.
    if index != 1 && index != 2 {
        return Err(ModelError::InteriorNotIrreducible(format!("support generates a sublattice of index {index}")));
    }
    let (window_states, period) = window_check(&model)?;
    let m = model.interior.mean();
    let zero_drift = match model.interior.exact_mean() {
        Some(e) => e[0].is_zero() && e[1].is_zero(),
        None => m[0].abs() < MASS_TOL && m[1].abs() < MASS_TOL,
    };
    if zero_drift {
        return Err(ModelError::ZeroDrift);
    }
    Ok(ValidatedModel {
        model,
        certificate: Certificate { interior_lattice_index: index, window_states, period },
    })
}

fn confined_to_half_plane(support: &[Increment]) -> bool {
    let mut oct: Vec<u8> = support.iter().filter_map(|i| i.octant()).collect();
    oct.sort_unstable();
    oct.dedup();
    if oct.is_empty() {
        return true;
    }
    let n = oct.len();
    (0..n).any(|k| {
        let next = if k + 1 < n { oct[k + 1] } else { oct[0] + 8 };
        next - oct[k] >= 4
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lattice_index(support: &[Increment]) -> u32 {
    let mut g = 0;
    for (k, a) in support.iter().enumerate() {
        for b in &support[k + 1..] {
            let det = a.di as i32 * b.dj as i32 - a.dj as i32 * b.di as i32;
            g = gcd(g, det.unsigned_abs());
        }
    }
    g
}

/// Reachability and period of the origin for the chain restricted to the window.
fn window_check(model: &Model) -> Result<(usize, u32), ModelError> {
    let side = WINDOW + 1;
    let id = |i: usize, j: usize| i * side + j;
    let n = side * side;
    let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..side {
        for j in 0..side {
            for (inc, _) in model.kernel_at(i, j).entries() {
                let (ti, tj) = (i as i64 + inc.di as i64, j as i64 + inc.dj as i64);
                if ti < 0 || tj < 0 || ti > WINDOW as i64 || tj > WINDOW as i64 {
                    continue;
                }
                let t = id(ti as usize, tj as usize);
                fwd[id(i, j)].push(t);
                back[t].push(id(i, j));
            }
        }
    }
    let bfs = |adj: &[Vec<usize>]| {
        let mut level = vec![usize::MAX; n];
        let mut queue = VecDeque::from([0usize]);
        level[0] = 0;
        while let Some(s) = queue.pop_front() {
            for &t in &adj[s] {
                if level[t] == usize::MAX {
                    level[t] = level[s] + 1;
                    queue.push_back(t);
                }
            }
        }
        level
    };
    let ahead = bfs(&fwd);
    let behind = bfs(&back);
    let unreachable = (0..n).find(|&s| ahead[s] == usize::MAX || behind[s] == usize::MAX);
    if let Some(s) = unreachable {
        return Err(ModelError::ChainNotIrreducible(format!(
            "state ({}, {}) does not communicate with the origin",
            s / side,
            s % side
        )));
    }
    let mut period = 0u32;
    for s in 0..n {
        for &t in &fwd[s] {
            let d = (ahead[s] as i64 + 1 - ahead[t] as i64).unsigned_abs() as u32;
            period = gcd(period, d);
        }
    }
    if period != 1 {
        return Err(ModelError::ChainPeriodic(period));
    }
    Ok((n, period))
}

/// Sign of a quantity, decided exactly when an exact value is available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Mean increments of the three non-origin faces and the boundary normals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DriftSet {
    #[serde(serialize_with = "ser::pair")]
    pub m: [f64; 2],
    #[serde(serialize_with = "ser::pair")]
    pub m1: [f64; 2],
    #[serde(serialize_with = "ser::pair")]
    pub m2: [f64; 2],
    #[serde(serialize_with = "ser::pair")]
    pub m1_perp: [f64; 2],
    #[serde(serialize_with = "ser::pair")]
    pub m2_perp: [f64; 2],
    #[serde(skip)]
    exact: Option<ExactDrifts>,
}

#[derive(Clone, Debug, PartialEq)]
struct ExactDrifts {
    m: [BigRational; 2],
    m1: [BigRational; 2],
    m2: [BigRational; 2],
}

impl DriftSet {
    /// Whether signs are decided in exact arithmetic.
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn inner1(&self) -> f64 {
        dot(self.m, self.m1_perp)
    }

    pub fn inner2(&self) -> f64 {
        dot(self.m, self.m2_perp)
    }

    fn sign_with(&self, value: f64, exact: impl FnOnce(&ExactDrifts) -> BigRational, warnings: &mut Vec<String>, what: &str) -> Sign {
        if let Some(e) = &self.exact {
            return match exact(e).cmp(&BigRational::zero()) {
                Ordering::Less => Sign::Negative,
                Ordering::Equal => Sign::Zero,
                Ordering::Greater => Sign::Positive,
            };
        }
        float_sign(value, warnings, what)
    }
}

pub(crate) fn float_sign(value: f64, warnings: &mut Vec<String>, what: &str) -> Sign {
    if value.abs() < MASS_TOL {
        let w = format!("{what} = {value:e} treated as zero (tolerance {MASS_TOL:e})");
        if !warnings.contains(&w) {
            warnings.push(w);
        }
        Sign::Zero
    } else if value < 0.0 {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn drifts(model: &ValidatedModel) -> DriftSet {
    let m = model.interior.mean();
    let m1 = model.boundary1.mean();
    let m2 = model.boundary2.mean();
    let exact = match (model.interior.exact_mean(), model.boundary1.exact_mean(), model.boundary2.exact_mean()) {
        (Some(m), Some(m1), Some(m2)) => Some(ExactDrifts { m, m1, m2 }),
        _ => None,
    };
    DriftSet { m, m1, m2, m1_perp: [m1[1], -m1[0]], m2_perp: [-m2[1], m2[0]], exact }
}

/// Which branch of the stability disjunction holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabilityCondition {
    /// Both interior drift components negative.
    #[serde(rename = "both-negative")]
    BothNegative,
    /// First interior drift component nonnegative.
    #[serde(rename = "first-nonnegative")]
    FirstNonnegative,
    /// Second interior drift component nonnegative.
    #[serde(rename = "second-nonnegative")]
    SecondNonnegative,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub matched_condition: StabilityCondition,
    #[serde(serialize_with = "ser::f64")]
    pub inner1: f64,
    #[serde(serialize_with = "ser::f64")]
    pub inner2: f64,
    pub exact: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Positive recurrence test: the three-way disjunction on the interior drift
/// and the two boundary normals.
pub fn check_stability(d: &DriftSet) -> StabilityVerdict {
    let mut w = Vec::new();
    let m1s = d.sign_with(d.m[0], |e| e.m[0].clone(), &mut w, "interior drift 1");
    let m2s = d.sign_with(d.m[1], |e| e.m[1].clone(), &mut w, "interior drift 2");
    let in1 = d.sign_with(d.inner1(), |e| &e.m[0] * &e.m1[1] - &e.m[1] * &e.m1[0], &mut w, "<m, m1_perp>");
    let in2 = d.sign_with(d.inner2(), |e| -(&e.m[0] * &e.m2[1]) + &e.m[1] * &e.m2[0], &mut w, "<m, m2_perp>");
    let neg = |s: Sign| s == Sign::Negative;
    let matched = if neg(m1s) && neg(m2s) && neg(in1) && neg(in2) {
        StabilityCondition::BothNegative
    } else if !neg(m1s) && neg(m2s) && neg(in1) && {
        let b21 = d.sign_with(d.m2[0], |e| e.m2[0].clone(), &mut w, "boundary-2 drift 1");
        b21 != Sign::Zero || neg(d.sign_with(d.m2[1], |e| e.m2[1].clone(), &mut w, "boundary-2 drift 2"))
    } {
        StabilityCondition::FirstNonnegative
    } else if neg(m1s) && !neg(m2s) && neg(in2) && {
        let b12 = d.sign_with(d.m1[1], |e| e.m1[1].clone(), &mut w, "boundary-1 drift 2");
        b12 != Sign::Zero || neg(d.sign_with(d.m1[0], |e| e.m1[0].clone(), &mut w, "boundary-1 drift 1"))
    } {
        StabilityCondition::SecondNonnegative
    } else {
        StabilityCondition::None
    };
    StabilityVerdict {
        stable: matched != StabilityCondition::None,
        matched_condition: matched,
        inner1: d.inner1(),
        inner2: d.inner2(),
        exact: d.is_exact(),
        warnings: w,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BCase {
    B1,
    B2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CCase {
    C1,
    C2,
}

/// Non-arithmetic flags of the three non-origin faces and the resulting case split.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArithmeticProfile {
    pub va: bool,
    pub vb: bool,
    pub vc: bool,
    pub b_case: BCase,
    pub c_case: CCase,
    pub m1_2_zero: bool,
    pub m2_1_zero: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ArithmeticProfile {
    /// Profile of the coordinate-swapped model.
    pub fn swapped(&self) -> ArithmeticProfile {
        ArithmeticProfile {
            va: self.va,
            vb: self.vc,
            vc: self.vb,
            b_case: if self.c_case == CCase::C1 { BCase::B1 } else { BCase::B2 },
            c_case: if self.b_case == BCase::B1 { CCase::C1 } else { CCase::C2 },
            m1_2_zero: self.m2_1_zero,
            m2_1_zero: self.m1_2_zero,
            warnings: self.warnings.clone(),
        }
    }
}

const X_SHAPE: [(i8, i8); 5] = [(1, 1), (-1, 1), (0, 0), (1, -1), (-1, -1)];

fn support_within(k: &TransitionKernel, allowed: &[(i8, i8)]) -> bool {
    k.support().iter().all(|i| allowed.contains(&(i.di, i.dj)))
}

pub fn arithmetic_profile(model: &ValidatedModel) -> ArithmeticProfile {
    let va = !support_within(&model.interior, &X_SHAPE);
    let vb = !support_within(&model.boundary1, &[(1, 1), (0, 0), (-1, 1)]);
    let vc = !support_within(&model.boundary2, &[(1, 1), (0, 0), (1, -1)]);
    let d = drifts(model);
    let mut warnings = Vec::new();
    let m1_2_zero = d.sign_with(d.m1[1], |e| e.m1[1].clone(), &mut warnings, "boundary-1 drift 2") == Sign::Zero;
    let m2_1_zero = d.sign_with(d.m2[0], |e| e.m2[0].clone(), &mut warnings, "boundary-2 drift 1") == Sign::Zero;
    ArithmeticProfile {
        va,
        vb,
        vc,
        b_case: if vb || m1_2_zero { BCase::B1 } else { BCase::B2 },
        c_case: if vc || m2_1_zero { CCase::C1 } else { CCase::C2 },
        m1_2_zero,
        m2_1_zero,
        warnings,
    }
}
