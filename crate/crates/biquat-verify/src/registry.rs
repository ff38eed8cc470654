//! Suite definitions, per-suite outcomes, and the runner that turns them into
//! [`SuiteResult`]s.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::report::{Backend, Status, SuiteResult};

/// Default seed when neither `--seed` nor the environment provides one.
pub const DEFAULT_SEED: u64 = 42;

/// Exact suites pass only on zero residual unless told otherwise.
pub const EXACT_TOL: f64 = 0.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// An identity or invariance that must hold within tolerance.
    Identity,
    /// A demonstrated failure of a law, with a concrete counterexample.
    Witness,
}

/// Inputs handed to a suite body.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub seed: u64,
    pub backend: Backend,
    pub suite_id: String,
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

impl Ctx {
    /// Random stream owned by this suite; independent of which other suites run.
    pub fn rng(&self) -> ChaCha8Rng {
        self.stream(0)
    }

    pub fn stream(&self, k: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(&self.suite_id) ^ k.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// What a suite body measured.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    /// Largest residual of the identities checked.
    pub residual: f64,
    /// Named structural conditions (dimensions, counts, expected errors).
    pub checks: Vec<(String, bool)>,
    pub witness: Option<WitnessData>,
    /// Extra values reported in the payload.
    pub info: Map<String, Value>,
}

#[derive(Clone, Debug)]
pub struct WitnessData {
    /// Size of the demonstrated violation.
    pub measure: f64,
    /// Whether the violation clears the suite's pinned margin.
    pub holds: bool,
    pub payload: Value,
}

impl Outcome {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn residual(&mut self, r: f64) -> &mut Self {
        if r.is_nan() || r > self.residual {
            self.residual = r;
        }
        self
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) -> &mut Self {
        self.checks.push((name.into(), ok));
        self
    }

    pub fn info(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.info.insert(key.to_string(), v.into());
        self
    }

    /// Records a violation of size `measure` that must be strictly above `margin`.
    pub fn witness_above(&mut self, measure: f64, margin: f64, payload: Value) -> &mut Self {
        self.witness = Some(WitnessData { measure, holds: measure > margin, payload: with_margin(payload, margin) });
        self
    }

    /// Records a violation of size `measure` that must be at least `margin`.
    pub fn witness_at_least(&mut self, measure: f64, margin: f64, payload: Value) -> &mut Self {
        self.witness = Some(WitnessData { measure, holds: measure >= margin, payload: with_margin(payload, margin) });
        self
    }
}

fn with_margin(payload: Value, margin: f64) -> Value {
    match payload {
        Value::Object(mut m) => {
            m.insert("margin".into(), json!(margin));
            Value::Object(m)
        }
        other => json!({ "value": other, "margin": margin }),
    }
}

pub type Body = Arc<dyn Fn(&Ctx) -> Outcome + Send + Sync>;

#[derive(Clone)]
pub struct Suite {
    pub id: String,
    pub anchor: &'static str,
    /// Acceptance criterion the suite belongs to.
    pub criterion: u8,
    pub kind: Kind,
    pub exact: Option<Body>,
    pub float: Option<Body>,
    pub default_backend: Backend,
    /// Pinned tolerance on the float backend.
    pub float_tol: f64,
}

impl std::fmt::Debug for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Suite").field("id", &self.id).field("anchor", &self.anchor).field("criterion", &self.criterion).finish()
    }
}

impl Suite {
    fn base(id: impl Into<String>, anchor: &'static str, criterion: u8, kind: Kind) -> Self {
        Suite { id: id.into(), anchor, criterion, kind, exact: None, float: None, default_backend: Backend::Exact, float_tol: 1e-9 }
    }

    pub fn identity(id: impl Into<String>, anchor: &'static str, criterion: u8) -> Self {
        Self::base(id, anchor, criterion, Kind::Identity)
    }

    pub fn witness(id: impl Into<String>, anchor: &'static str, criterion: u8) -> Self {
        Self::base(id, anchor, criterion, Kind::Witness)
    }

    /// Exact body, default backend exact.
    pub fn exact(mut self, f: impl Fn(&Ctx) -> Outcome + Send + Sync + 'static) -> Self {
        self.exact = Some(Arc::new(f));
        if self.float.is_none() {
            self.default_backend = Backend::Exact;
        }
        self
    }

    /// Float body; becomes the default only when there is no exact body.
    pub fn float(mut self, f: impl Fn(&Ctx) -> Outcome + Send + Sync + 'static) -> Self {
        self.float = Some(Arc::new(f));
        if self.exact.is_none() {
            self.default_backend = Backend::Float;
        }
        self
    }

    pub fn prefer_float(mut self) -> Self {
        self.default_backend = Backend::Float;
        self
    }

    pub fn tol(mut self, t: f64) -> Self {
        self.float_tol = t;
        self
    }

    pub fn supports(&self, b: Backend) -> bool {
        match b {
            Backend::Exact => self.exact.is_some(),
            Backend::Float => self.float.is_some(),
        }
    }

    /// Backend actually used when `requested` is asked for.
    pub fn resolve_backend(&self, requested: Option<Backend>) -> Backend {
        match requested {
            Some(b) if self.supports(b) => b,
            _ => self.default_backend,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerifyError {
    UnknownSuite(String),
    Config(String),
    Io(String),
}

impl std::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyError::UnknownSuite(p) => write!(f, "no suite matches '{p}'"),
            VerifyError::Config(m) => write!(f, "configuration error: {m}"),
            VerifyError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for VerifyError {}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub filter: String,
    pub seed: u64,
    /// Requested backend; suites lacking it run on their default.
    pub backend: Option<Backend>,
    /// Tolerance override. Applies to suites executed on the requested backend,
    /// or to every suite when no backend was requested.
    pub tol: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { filter: "*".into(), seed: DEFAULT_SEED, backend: None, tol: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if let Some(t) = self.tol {
            if !t.is_finite() || t < 0.0 {
                return Err(VerifyError::Config(format!("tolerance must be a finite non-negative number, got {t}")));
            }
        }
        glob::Pattern::new(&self.filter).map_err(|e| VerifyError::Config(format!("invalid suite glob '{}': {e}", self.filter)))?;
        Ok(())
    }

    fn tolerance(&self, s: &Suite, backend: Backend) -> f64 {
        let pinned = match backend {
            Backend::Exact => EXACT_TOL,
            Backend::Float => s.float_tol,
        };
        match (self.tol, self.backend) {
            (Some(t), None) => t,
            (Some(t), Some(b)) if b == backend => t,
            _ => pinned,
        }
    }
}

/// Suites whose id matches the glob, in registry order.
pub fn select<'a>(suites: &'a [Suite], filter: &str) -> Result<Vec<&'a Suite>, VerifyError> {
    let pat = glob::Pattern::new(filter).map_err(|e| VerifyError::Config(format!("invalid suite glob '{filter}': {e}")))?;
    let out: Vec<&Suite> = suites.iter().filter(|s| pat.matches(&s.id)).collect();
    if out.is_empty() {
        return Err(VerifyError::UnknownSuite(filter.to_string()));
    }
    Ok(out)
}

fn panic_message(e: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

/// Runs one suite and classifies its outcome.
pub fn run_suite(s: &Suite, cfg: &RunConfig) -> SuiteResult {
    let backend = s.resolve_backend(cfg.backend);
    let tol = cfg.tolerance(s, backend);
    let body = match backend {
        Backend::Exact => s.exact.as_ref(),
        Backend::Float => s.float.as_ref(),
    }
    .expect("default backend has a body");
    let ctx = Ctx { seed: cfg.seed, backend, suite_id: s.id.clone() };
    let outcome = catch_unwind(AssertUnwindSafe(|| body(&ctx)));
    let mut result = SuiteResult {
        suite_id: s.id.clone(),
        paper_anchor: s.anchor.to_string(),
        status: Status::Fail,
        max_residual: 0.0,
        witness_payload: None,
        seed: cfg.seed,
        backend,
    };
    let o = match outcome {
        Ok(o) => o,
        Err(e) => {
            result.max_residual = f64::MAX;
            result.witness_payload = Some(json!({ "panic": panic_message(e.as_ref()) }));
            return result;
        }
    };
    let failed: Vec<&str> = o.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    let residual_ok = o.residual.is_finite() && o.residual <= tol;
    let mut payload = o.info.clone();
    if !failed.is_empty() {
        payload.insert("failed_checks".into(), json!(failed));
    }
    match s.kind {
        Kind::Identity => {
            result.max_residual = finite(o.residual);
            result.status = if residual_ok && failed.is_empty() { Status::Pass } else { Status::Fail };
            if result.status == Status::Fail {
                payload.insert("tolerance".into(), json!(tol));
            }
        }
        Kind::Witness => {
            payload.insert("control_residual".into(), json!(finite(o.residual)));
            match &o.witness {
                Some(w) => {
                    result.max_residual = finite(w.measure);
                    if let Value::Object(m) = &w.payload {
                        for (k, v) in m {
                            payload.insert(k.clone(), v.clone());
                        }
                    }
                    result.status = if w.holds && residual_ok && failed.is_empty() { Status::Witness } else { Status::Fail };
                }
                None => {
                    result.max_residual = 0.0;
                    payload.insert("missing_witness".into(), json!(true));
                    result.status = Status::Fail;
                }
            }
        }
    }
    if result.status != Status::Pass && !payload.is_empty() {
        result.witness_payload = Some(Value::Object(payload));
    }
    result
}

fn finite(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}

/// Runs every suite matching the filter. Suites run concurrently; results come
/// back in registry order.
pub fn run_with(suites: &[Suite], cfg: &RunConfig) -> Result<Vec<SuiteResult>, VerifyError> {
    cfg.validate()?;
    let chosen = select(suites, &cfg.filter)?;
    Ok(chosen.par_iter().map(|s| run_suite(s, cfg)).collect())
}

pub fn run(cfg: &RunConfig) -> Result<Vec<SuiteResult>, VerifyError> {
    run_with(&crate::suites::all(), cfg)
}
