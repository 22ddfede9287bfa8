//! Named property suites and the JSON report they produce.
//!
//! Each suite expands its configuration into a flat list of cases. Case `i`
//! of suite `s` draws all of its randomness from `rng::case_rng(seed, s, i)`,
//! so results do not depend on thread count or on which other suites run.
//! A failing case records its complete inputs as a witness.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::field::{is_prime, Field, FieldScalar};
use crate::groups::{in_group, in_lie_algebra, GroupKind, GroupSpec, NilpotentSampler};
use crate::matrix::{centralizer_space, jordan_nilpotent, nilpotent_order, unipotent_order, FpMatrix, JordanType};
use crate::parabolic::{Composition, ParabolicGL};
use crate::rng::{case_rng, CaseRng};
use crate::series::{
    ah_coeffs_mod_p, ah_inverse_coeffs, ah_rational_coeffs, ah_rational_coeffs_by_recurrence,
    series_mul,
};
use crate::springer::{
    ah_exp, ah_log, bch, bch_dynkin, phi_seq, tangent_coefficient, truncated_exp, truncated_log,
    witt_embed, CoefficientSequence,
};
use crate::witt::{witt_add, witt_from_integer, witt_neg, witt_order, witt_pow_p, WittVector, MAX_LENGTH};

pub const REPORT_VERSION: u32 = 1;
/// Truncation degree for the Artin-Hasse coefficient checks.
pub const AH_DEGREE: usize = 60;
/// Witt group axioms are checked exhaustively when `|W_m| ≤` this.
pub const WITT_EXHAUSTIVE_ORDER: u64 = 27;
/// Witt embeddings are checked on all pairs when `p^{2m} ≤` this.
pub const WITT_PAIR_LIMIT: u64 = 10_000;
pub const NEGATIVE_CONTROL_CANDIDATES: usize = 10_000;
/// At most this many witnesses are stored per suite.
pub const MAX_WITNESSES: usize = 25;

/// What to run and with which parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub primes: Vec<u32>,
    /// Group kinds for the group-level suites; `None` means every kind
    /// admitted by each prime.
    pub kinds: Option<Vec<GroupKind>>,
    /// Dimension cap for group-level suites.
    pub max_n: usize,
    /// Dimension cap for the parabolic, centralizer and `φ_a` suites.
    pub max_n_small: usize,
    /// Overrides every suite's default number of seeded trials.
    pub trials: Option<usize>,
    pub seed: u64,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: suite_names().map(String::from).collect(),
            primes: vec![2, 3, 5],
            kinds: None,
            max_n: 8,
            max_n_small: 6,
            trials: None,
            seed: 42,
            execution: Execution::default(),
        }
    }
}

impl SuiteConfig {
    /// Expands `"all"` and comma-separated lists into suite names.
    pub fn parse_suites(spec: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if name == "all" {
                out.extend(suite_names().map(String::from));
            } else if find_suite(name).is_some() {
                out.push(name.to_string());
            } else {
                return Err(Error::Usage(format!("unknown suite {name:?}")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|s| seen.insert(s.clone()));
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::Usage("no suites selected".into()));
        }
        for s in &self.suites {
            if find_suite(s).is_none() {
                return Err(Error::Usage(format!("unknown suite {s:?}")));
            }
        }
        if self.primes.is_empty() {
            return Err(Error::Usage("no primes given".into()));
        }
        if let Some(&p) = self.primes.iter().find(|&&p| !is_prime(p as u64)) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        if self.trials == Some(0) {
            return Err(Error::Usage("trials must be at least 1".into()));
        }
        if self.max_n < 2 || self.max_n_small < 2 {
            return Err(Error::Usage("dimension caps must be at least 2".into()));
        }
        if let Some(kinds) = &self.kinds {
            if kinds.is_empty() {
                return Err(Error::Usage("no group kinds given".into()));
            }
            for &k in kinds {
                if let Some(&p) = self.primes.iter().find(|&&p| !k.admits_prime(p)) {
                    return Err(Error::Usage(format!("{k} is not supported for p = {p}")));
                }
            }
        }
        Ok(())
    }

    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn kinds_for(&self, p: u32) -> Vec<GroupKind> {
        match &self.kinds {
            Some(k) => k.iter().copied().filter(|k| k.admits_prime(p)).collect(),
            None => GroupKind::ALL.into_iter().filter(|k| k.admits_prime(p)).collect(),
        }
    }
}

/// One suite's tally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRecord {
    pub name: String,
    pub anchor: String,
    pub cases: u64,
    pub passed: u64,
    pub failed: u64,
    pub witnesses: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    /// Seconds since the Unix epoch; the only field that varies between runs.
    pub generated_at: u64,
    pub config: Value,
    pub suites: Vec<SuiteRecord>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Clears the timestamp, for comparing runs.
    pub fn without_timestamp(&self) -> Report {
        Report {
            generated_at: 0,
            ..self.clone()
        }
    }
}

type SuiteFn = fn(&Ctx) -> Tally;

struct SuiteDef {
    name: &'static str,
    anchor: &'static str,
    run: SuiteFn,
}

const SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "ah-integrality",
        anchor: "E_p(t) = exp(Σ t^{p^j}/p^j) has p-integral coefficients equal to 1/i! below degree p, and F_p(t)·E_p(t) = 1",
        run: suite_ah_integrality,
    },
    SuiteDef {
        name: "witt-group",
        anchor: "W_m is an abelian group under the ghost-component law, W_m(F_p) ≅ Z/p^m, and p·(a_0,…,a_{m−1}) = (0, a_0^p, …, a_{m−2}^p)",
        run: suite_witt_group,
    },
    SuiteDef {
        name: "witt-hom",
        anchor: "(a_i) ↦ Π e_p(a_i X^{p^i}) is a group homomorphism W_m → GL_n when X has nilpotent order p^m",
        run: suite_witt_hom,
    },
    SuiteDef {
        name: "witt-injective",
        anchor: "(a_i) ↦ Π e_p(a_i X^{p^i}) is injective when X has nilpotent order p^m",
        run: suite_witt_injective,
    },
    SuiteDef {
        name: "frobenius",
        anchor: "e_p(X^p) = e_p(X)^p for nilpotent X in Lie(G)",
        run: suite_frobenius,
    },
    SuiteDef {
        name: "same-order",
        anchor: "e_p(X) has unipotent order p^m when X has nilpotent order p^m",
        run: suite_same_order,
    },
    SuiteDef {
        name: "ah-log",
        anchor: "e_p is a bijection from nilpotent to unipotent matrices; its inverse is the compositional inverse series",
        run: suite_ah_log,
    },
    SuiteDef {
        name: "ah-inverse",
        anchor: "e_p(X)^{-1} = Σ f_i X^i where Σ f_i t^i = 1/e_p(t)",
        run: suite_ah_inverse,
    },
    SuiteDef {
        name: "form-preservation",
        anchor: "X ∈ Lie(G) implies e_p(X) ∈ G for G = SL_n, SO_n, Sp_n",
        run: suite_form_preservation,
    },
    SuiteDef {
        name: "negative-control",
        anchor: "the degree < p exponential does not preserve the symplectic form on sp_{2p} once X^p ≠ 0, while e_p does",
        run: suite_negative_control,
    },
    SuiteDef {
        name: "equivariance",
        anchor: "e_p(gXg^{-1}) = g e_p(X) g^{-1} for g ∈ G",
        run: suite_equivariance,
    },
    SuiteDef {
        name: "one-parameter",
        anchor: "for X^p = 0: e_p((s+t)X) = e_p(sX) e_p(tX) and e_p(X) = Σ_{i<p} X^i/i!",
        run: suite_one_parameter,
    },
    SuiteDef {
        name: "commutativity",
        anchor: "XY = YX if and only if e_p(X) e_p(Y) = e_p(Y) e_p(X), for p not dividing n",
        run: suite_commutativity,
    },
    SuiteDef {
        name: "centralizer",
        anchor: "{Z : ZX = XZ} = {Z : Z e_p(X) = e_p(X) Z}",
        run: suite_centralizer,
    },
    SuiteDef {
        name: "frobenius-entries",
        anchor: "e_p commutes with the entrywise Frobenius over F_{p^2}, since its coefficients lie in F_p",
        run: suite_frobenius_entries,
    },
    SuiteDef {
        name: "phi-seq",
        anchor: "φ_a(Y) = 1 + Σ a_i Y^i is GL_n-equivariant with tangent map a_1·id, and φ_a = e_p for the Artin-Hasse coefficients",
        run: suite_phi_seq,
    },
    SuiteDef {
        name: "eps-inverse",
        anchor: "ε_P: u_P → U_P, the degree < p exponential, is inverted by the degree < p logarithm on restricted parabolics",
        run: suite_eps_inverse,
    },
    SuiteDef {
        name: "eps-equivariance",
        anchor: "ε_P(gXg^{-1}) = g ε_P(X) g^{-1} for g ∈ P",
        run: suite_eps_equivariance,
    },
    SuiteDef {
        name: "eps-bch",
        anchor: "ε_P(X * Y) = ε_P(X) ε_P(Y) for the Baker-Campbell-Hausdorff product * on u_P",
        run: suite_eps_bch,
    },
    SuiteDef {
        name: "bch-dynkin",
        anchor: "log(exp X · exp Y) equals Dynkin's commutator series through degree p−1 on restricted nilradicals",
        run: suite_bch_dynkin,
    },
    SuiteDef {
        name: "eps-tangent",
        anchor: "the tangent map of ε_P at 0 is the identity",
        run: suite_eps_tangent,
    },
    SuiteDef {
        name: "eps-restriction",
        anchor: "e_p restricted to u_P equals ε_P for restricted parabolics P",
        run: suite_eps_restriction,
    },
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|s| s.name)
}

pub fn suite_anchor(name: &str) -> Option<&'static str> {
    find_suite(name).map(|s| s.anchor)
}

fn find_suite(name: &str) -> Option<&'static SuiteDef> {
    SUITES.iter().find(|s| s.name == name)
}

/// Runs the configured suites in registry order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let mut suites = Vec::new();
    for def in SUITES.iter().filter(|d| cfg.suites.iter().any(|s| s == d.name)) {
        let ctx = Ctx { cfg, name: def.name };
        let tally = (def.run)(&ctx);
        suites.push(SuiteRecord {
            name: def.name.to_string(),
            anchor: def.anchor.to_string(),
            cases: tally.cases,
            passed: tally.cases - tally.failed,
            failed: tally.failed,
            witnesses: tally.witnesses,
            example: tally.example,
        });
    }
    let generated_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(Report {
        version: REPORT_VERSION,
        generated_at,
        config: serde_json::to_value(cfg).expect("config serializes"),
        suites,
    })
}

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    name: &'static str,
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failed: u64,
    witnesses: Vec<Value>,
    example: Option<Value>,
}

impl Ctx<'_> {
    /// Runs one case per job; a case returns `Some(witness)` on failure.
    fn run<J, F>(&self, jobs: &[J], f: F) -> Tally
    where
        J: Sync,
        F: Fn(&J, &mut CaseRng) -> Option<Value> + Sync + Send,
    {
        let name = self.name;
        let seed = self.cfg.seed;
        let results = map_indexed(self.cfg.execution, jobs.len(), |i| {
            let mut rng = case_rng(seed, name, i as u64);
            f(&jobs[i], &mut rng)
        });
        let mut tally = Tally {
            cases: jobs.len() as u64,
            ..Tally::default()
        };
        for w in results.into_iter().flatten() {
            tally.failed += 1;
            if tally.witnesses.len() < MAX_WITNESSES {
                tally.witnesses.push(w);
            }
        }
        tally
    }
}

/// `None` on success, otherwise the witness (with the error message, if any).
fn verdict(outcome: Result<bool>, witness: impl FnOnce() -> Value) -> Option<Value> {
    match outcome {
        Ok(true) => None,
        Ok(false) => Some(witness()),
        Err(e) => {
            let mut w = witness();
            if let Value::Object(map) = &mut w {
                map.insert("error".into(), Value::String(e.to_string()));
            }
            Some(w)
        }
    }
}

fn mat(m: &FpMatrix) -> Value {
    serde_json::to_value(m.to_file()).expect("matrix serializes")
}

fn prime_field(p: u32) -> Field {
    Field::prime(p).expect("validated prime")
}

// ---------------------------------------------------------------------------
// series

fn suite_ah_integrality(ctx: &Ctx) -> Tally {
    #[derive(Clone, Copy)]
    enum Check {
        Integral,
        Recurrence,
        Factorials,
        Inverse,
    }
    let jobs: Vec<(u32, Check)> = ctx
        .cfg
        .primes
        .iter()
        .flat_map(|&p| {
            [Check::Integral, Check::Recurrence, Check::Factorials, Check::Inverse].map(|c| (p, c))
        })
        .collect();
    ctx.run(&jobs, |&(p, check), _| {
        let n = AH_DEGREE;
        let (label, outcome) = match check {
            Check::Integral => (
                "denominators prime to p",
                ah_rational_coeffs(p, n).map(|s| {
                    let modulus = num_bigint::BigInt::from(p);
                    s.coeffs()
                        .iter()
                        .all(|c| !num_integer::Integer::is_multiple_of(c.denom(), &modulus))
                }),
            ),
            Check::Recurrence => (
                "exponential expansion equals the recurrence",
                ah_rational_coeffs(p, n).and_then(|a| {
                    ah_rational_coeffs_by_recurrence(p, n).map(|b| a == b)
                }),
            ),
            Check::Factorials => (
                "c_i · i! = 1 for i < p",
                ah_coeffs_mod_p(p, n).map(|c| {
                    let f = c.field();
                    let mut fact = f.one();
                    (0..(p as usize).min(n + 1)).all(|i| {
                        if i > 0 {
                            fact *= f.from_int(i as i64);
                        }
                        (c.coeff(i) * fact).is_one()
                    })
                }),
            ),
            Check::Inverse => (
                "F_p(t) e_p(t) = 1 mod t^{N+1}",
                ah_coeffs_mod_p(p, n).and_then(|e| {
                    let f = ah_inverse_coeffs(p, n)?;
                    let prod = series_mul(&e, &f)?;
                    Ok(prod.degree() == n
                        && prod
                            .coeffs()
                            .iter()
                            .enumerate()
                            .all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() }))
                }),
            ),
        };
        verdict(outcome, || json!({ "p": p, "degree": n, "check": label }))
    })
}

// ---------------------------------------------------------------------------
// Witt vectors

#[derive(Clone)]
struct WittTable {
    field: Field,
    m: usize,
    vectors: Vec<WittVector>,
}

fn witt_tables(ctx: &Ctx) -> Vec<Arc<WittTable>> {
    let mut out = Vec::new();
    for &p in &ctx.cfg.primes {
        for e in [1u8, 2] {
            let field = Field::new(p, e).expect("validated prime");
            for m in 1..=MAX_LENGTH {
                let order = field.order().checked_pow(m as u32).unwrap_or(u64::MAX);
                if order > WITT_EXHAUSTIVE_ORDER {
                    break;
                }
                let vectors = WittVector::enumerate(field, m).expect("length in range");
                out.push(Arc::new(WittTable { field, m, vectors }));
            }
        }
    }
    out
}

fn suite_witt_group(ctx: &Ctx) -> Tally {
    enum Job {
        Element(Arc<WittTable>, usize),
        Pair(Arc<WittTable>, usize, usize),
        Triple(Arc<WittTable>, usize, usize, usize),
        Integer(Field, usize, i64, i64),
        IntegerBijective(Field, usize),
    }
    let mut jobs = Vec::new();
    for t in witt_tables(ctx) {
        let q = t.vectors.len();
        for i in 0..q {
            jobs.push(Job::Element(t.clone(), i));
            for j in 0..q {
                jobs.push(Job::Pair(t.clone(), i, j));
                for k in 0..q {
                    jobs.push(Job::Triple(t.clone(), i, j, k));
                }
            }
        }
        if t.field.e() == 1 {
            let modulus = (t.field.p() as i64).pow(t.m as u32);
            for a in 0..modulus {
                for b in 0..modulus {
                    jobs.push(Job::Integer(t.field, t.m, a, b));
                }
            }
            jobs.push(Job::IntegerBijective(t.field, t.m));
        }
    }
    ctx.run(&jobs, |job, _| match job {
        Job::Element(t, i) => {
            let a = &t.vectors[*i];
            let outcome = (|| {
                let zero = WittVector::zero(t.field, t.m)?;
                let neg = witt_neg(a)?;
                let mut multiple = zero.clone();
                for _ in 0..t.field.p() {
                    multiple = witt_add(&multiple, a)?;
                }
                let mut order = 1u64;
                let mut acc = a.clone();
                while !acc.is_zero() {
                    acc = witt_add(&acc, a)?;
                    order += 1;
                }
                Ok(witt_add(a, &zero)? == *a
                    && witt_add(&zero, a)? == *a
                    && witt_add(a, &neg)?.is_zero()
                    && multiple == witt_pow_p(a)
                    && witt_order(a) == order)
            })();
            verdict(outcome, || {
                json!({ "p": t.field.p(), "e": t.field.e(), "a": a.to_json(),
                        "check": "identity, inverse, p-fold sum, order" })
            })
        }
        Job::Pair(t, i, j) => {
            let (a, b) = (&t.vectors[*i], &t.vectors[*j]);
            let outcome = witt_add(a, b).and_then(|ab| Ok(ab == witt_add(b, a)?));
            verdict(outcome, || {
                json!({ "p": t.field.p(), "e": t.field.e(), "a": a.to_json(), "b": b.to_json(),
                        "check": "commutativity" })
            })
        }
        Job::Triple(t, i, j, k) => {
            let (a, b, c) = (&t.vectors[*i], &t.vectors[*j], &t.vectors[*k]);
            let outcome = (|| {
                let left = witt_add(&witt_add(a, b)?, c)?;
                let right = witt_add(a, &witt_add(b, c)?)?;
                Ok(left == right)
            })();
            verdict(outcome, || {
                json!({ "p": t.field.p(), "e": t.field.e(), "a": a.to_json(), "b": b.to_json(),
                        "c": c.to_json(), "check": "associativity" })
            })
        }
        Job::Integer(field, m, a, b) => {
            let outcome = (|| {
                let sum = witt_add(
                    &witt_from_integer(*field, *m, *a)?,
                    &witt_from_integer(*field, *m, *b)?,
                )?;
                Ok(sum == witt_from_integer(*field, *m, a + b)?)
            })();
            verdict(outcome, || {
                json!({ "p": field.p(), "m": m, "a": a, "b": b,
                        "check": "integer map is additive" })
            })
        }
        Job::IntegerBijective(field, m) => {
            let modulus = (field.p() as i64).pow(*m as u32);
            let outcome = (0..modulus)
                .map(|k| witt_from_integer(*field, *m, k))
                .collect::<Result<Vec<_>>>()
                .map(|images| {
                    let distinct: std::collections::HashSet<Vec<[u32; 2]>> = images
                        .iter()
                        .map(|w| w.entries().iter().map(|x| x.coords()).collect())
                        .collect();
                    distinct.len() == images.len()
                });
            verdict(outcome, || {
                json!({ "p": field.p(), "m": m, "check": "integer map is bijective" })
            })
        }
    })
}

/// Test nilpotents for the Witt embedding: `J_{p^{m−1}+1}` and a conjugate.
fn witt_test_matrices(ctx: &Ctx) -> Vec<(u32, usize, FpMatrix)> {
    let mut out = Vec::new();
    for &p in &ctx.cfg.primes {
        let field = prime_field(p);
        let m = if p == 2 { 3 } else { 2 };
        let n = (p as usize).pow(m as u32 - 1) + 1;
        let j = jordan_nilpotent(&JordanType::regular(n), field);
        let spec = GroupSpec::new(GroupKind::Gl, n, field).expect("GL_n is always valid");
        let sampler = NilpotentSampler::new(spec).expect("default form");
        let mut rng = case_rng(ctx.cfg.seed, &format!("{}/matrices", ctx.name), p as u64);
        let conj = sampler.conjugate(&j, &mut rng);
        out.push((p, m, j));
        out.push((p, m, conj));
    }
    out
}

fn suite_witt_hom(ctx: &Ctx) -> Tally {
    enum Pair {
        Indexed(usize, usize),
        Seeded,
    }
    struct Job {
        x: Arc<FpMatrix>,
        m: usize,
        vectors: Arc<Vec<WittVector>>,
        pair: Pair,
    }
    let mut jobs = Vec::new();
    for (p, m, x) in witt_test_matrices(ctx) {
        let field = prime_field(p);
        let x = Arc::new(x);
        let pairs = (p as u64).pow(2 * m as u32);
        if pairs <= WITT_PAIR_LIMIT {
            let vectors = Arc::new(WittVector::enumerate(field, m).expect("length in range"));
            let q = vectors.len();
            for i in 0..q {
                for j in 0..q {
                    jobs.push(Job { x: x.clone(), m, vectors: vectors.clone(), pair: Pair::Indexed(i, j) });
                }
            }
        } else {
            for _ in 0..ctx.cfg.trials(200) {
                jobs.push(Job { x: x.clone(), m, vectors: Arc::new(Vec::new()), pair: Pair::Seeded });
            }
        }
    }
    ctx.run(&jobs, |job, rng| {
        let field = job.x.field();
        let (u, v) = match job.pair {
            Pair::Indexed(i, j) => (job.vectors[i].clone(), job.vectors[j].clone()),
            Pair::Seeded => (
                WittVector::random(field, job.m, rng).expect("length in range"),
                WittVector::random(field, job.m, rng).expect("length in range"),
            ),
        };
        let outcome = (|| {
            let lhs = witt_embed(&job.x, &witt_add(&u, &v)?)?;
            let rhs = &witt_embed(&job.x, &u)? * &witt_embed(&job.x, &v)?;
            Ok(lhs == rhs)
        })();
        verdict(outcome, || json!({ "X": mat(&job.x), "u": u.to_json(), "v": v.to_json() }))
    })
}

fn suite_witt_injective(ctx: &Ctx) -> Tally {
    let jobs = witt_test_matrices(ctx);
    ctx.run(&jobs, |(p, m, x), _| {
        let field = prime_field(*p);
        let mut collision = None;
        let outcome = (|| {
            let mut seen: HashMap<FpMatrix, WittVector> = HashMap::new();
            for w in WittVector::enumerate(field, *m)? {
                let image = witt_embed(x, &w)?;
                if let Some(prev) = seen.insert(image, w.clone()) {
                    collision = Some((prev, w));
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        verdict(outcome, || {
            let (a, b) = collision.clone().unzip();
            json!({ "X": mat(x), "u": a.map(|w| w.to_json()), "v": b.map(|w| w.to_json()) })
        })
    })
}

// ---------------------------------------------------------------------------
// group-level suites

#[derive(Clone, Debug, Serialize)]
struct GroupCase {
    p: u32,
    kind: GroupKind,
    n: usize,
}

fn group_samplers(ctx: &Ctx, kinds: Option<&[GroupKind]>, max_n: usize) -> Vec<(GroupCase, Arc<NilpotentSampler>)> {
    let mut out = Vec::new();
    for &p in &ctx.cfg.primes {
        for kind in ctx.cfg.kinds_for(p) {
            if kinds.is_some_and(|ks| !ks.contains(&kind)) {
                continue;
            }
            for n in 2..=max_n {
                let Ok(spec) = GroupSpec::new(kind, n, prime_field(p)) else { continue };
                let sampler = NilpotentSampler::new(spec).expect("default form");
                out.push((GroupCase { p, kind, n }, Arc::new(sampler)));
            }
        }
    }
    out
}

/// Runs `trials` cases per group configuration, each on a fresh sampled nilpotent.
fn run_group_suite<F>(ctx: &Ctx, kinds: Option<&[GroupKind]>, max_n: usize, trials: usize, f: F) -> Tally
where
    F: Fn(&GroupCase, &NilpotentSampler, &FpMatrix, &mut CaseRng) -> Option<Value> + Sync + Send,
{
    let configs = group_samplers(ctx, kinds, max_n);
    let jobs: Vec<usize> = (0..configs.len())
        .flat_map(|c| std::iter::repeat_n(c, trials))
        .collect();
    ctx.run(&jobs, |&c, rng| {
        let (case, sampler) = &configs[c];
        let x = sampler.sample(rng);
        f(case, sampler, &x, rng)
    })
}

fn suite_frobenius(ctx: &Ctx) -> Tally {
    run_group_suite(ctx, None, ctx.cfg.max_n, ctx.cfg.trials(100), |case, _, x, _| {
        let p = case.p as u64;
        let outcome = (|| Ok(ah_exp(&x.pow(p))? == ah_exp(x)?.pow(p)))();
        verdict(outcome, || json!({ "group": case, "X": mat(x) }))
    })
}

fn suite_same_order(ctx: &Ctx) -> Tally {
    run_group_suite(ctx, None, ctx.cfg.max_n, ctx.cfg.trials(100), |case, _, x, _| {
        let outcome = (|| {
            let m = nilpotent_order(x)?;
            Ok(unipotent_order(&ah_exp(x)?)? == (case.p as u64).pow(m))
        })();
        verdict(outcome, || json!({ "group": case, "X": mat(x) }))
    })
}

fn suite_ah_log(ctx: &Ctx) -> Tally {
    run_group_suite(ctx, None, ctx.cfg.max_n, ctx.cfg.trials(100), |case, sampler, x, _| {
        let outcome = (|| {
            let u = ah_exp(x)?;
            let back = ah_log(&u)?;
            Ok(back == *x
                && in_group(sampler.spec(), &u)?
                && unipotent_order(&u)? == (case.p as u64).pow(nilpotent_order(&back)?))
        })();
        verdict(outcome, || json!({ "group": case, "X": mat(x) }))
    })
}

fn suite_ah_inverse(ctx: &Ctx) -> Tally {
    run_group_suite(ctx, None, ctx.cfg.max_n, ctx.cfg.trials(100), |case, _, x, _| {
        let outcome = (|| {
            let u = ah_exp(x)?;
            let f = ah_inverse_coeffs(case.p, x.n())?;
            let field = x.field();
            let mut acc = FpMatrix::zero(field, x.n());
            let mut power = FpMatrix::identity(field, x.n());
            for c in f.coeffs() {
                acc = &acc + &power.scale(c.embed(field)?);
                power = &power * x;
            }
            Ok((&u * &acc).is_identity())
        })();
        verdict(outcome, || json!({ "group": case, "X": mat(x) }))
    })
}

fn suite_form_preservation(ctx: &Ctx) -> Tally {
    let kinds = [GroupKind::Sl, GroupKind::So, GroupKind::Sp];
    run_group_suite(ctx, Some(&kinds), ctx.cfg.max_n, ctx.cfg.trials(100), |case, sampler, x, _| {
        let outcome = (|| Ok(in_lie_algebra(sampler.spec(), x)? && in_group(sampler.spec(), &ah_exp(x)?)?))();
        verdict(outcome, || json!({ "group": case, "X": mat(x) }))
    })
}

fn suite_equivariance(ctx: &Ctx) -> Tally {
    run_group_suite(ctx, None, ctx.cfg.max_n, ctx.cfg.trials(100), |case, sampler, x, rng| {
        let g = sampler.group_element(rng);
        let outcome = (|| {
            let g_inv = g
                .inverse()
                .ok_or_else(|| Error::Domain("sampled group element is singular".into()))?;
            let lhs = ah_exp(&(&(&g * x) * &g_inv))?;
            let rhs = &(&g * &ah_exp(x)?) * &g_inv;
            Ok(lhs == rhs)
        })();
        verdict(outcome, || json!({ "group": case, "X": mat(x), "g": mat(&g) }))
    })
}

fn suite_one_parameter(ctx: &Ctx) -> Tally {
    run_group_suite(ctx, None, ctx.cfg.max_n, ctx.cfg.trials(100), |case, _, x, rng| {
        let field = x.field();
        let p = field.p() as u64;
        // X^{p^{m−1}} satisfies Y^p = 0
        let mut y = x.clone();
        while !y.pow(p).is_zero() {
            y = y.pow(p);
        }
        let s = field.random(rng);
        let t = field.random(rng);
        let outcome = (|| {
            let sum = ah_exp(&y.scale(s + t))?;
            let prod = &ah_exp(&y.scale(s))? * &ah_exp(&y.scale(t))?;
            Ok(sum == prod && ah_exp(&y)? == truncated_exp(&y)?)
        })();
        verdict(outcome, || {
            json!({ "group": case, "Y": mat(&y), "s": s.to_string(), "t": t.to_string() })
        })
    })
}

/// Search for `X ∈ sp_{2p}` with `X^p ≠ 0` where `Σ_{i<p} X^i/i!` leaves the
/// group but `e_p(X)` does not. One case per odd prime `p ≤ 5`.
fn suite_negative_control(ctx: &Ctx) -> Tally {
    let primes: Vec<u32> = ctx.cfg.primes.iter().copied().filter(|&p| p != 2 && p <= 5).collect();
    let found: Vec<Option<(FpMatrix, usize)>> = map_indexed(ctx.cfg.execution, primes.len(), |i| {
        let p = primes[i];
        let spec = GroupSpec::new(GroupKind::Sp, 2 * p as usize, prime_field(p)).expect("valid");
        let sampler = NilpotentSampler::new(spec.clone()).expect("default form");
        let mut rng = case_rng(ctx.cfg.seed, ctx.name, i as u64);
        (1..=NEGATIVE_CONTROL_CANDIDATES).find_map(|k| {
            let x = sampler.sample(&mut rng);
            if x.pow(p as u64).is_zero() {
                return None;
            }
            let naive = naive_exp(&x);
            let breaks = !in_group(&spec, &naive).ok()?;
            let keeps = in_group(&spec, &ah_exp(&x).ok()?).ok()?;
            (breaks && keeps).then_some((x, k))
        })
    });
    let mut tally = Tally {
        cases: primes.len() as u64,
        ..Tally::default()
    };
    let mut examples = Vec::new();
    for (&p, hit) in primes.iter().zip(found) {
        match hit {
            Some((x, k)) => examples.push(json!({
                "p": p,
                "group": format!("Sp_{}", 2 * p),
                "X": mat(&x),
                "candidates_examined": k,
                "truncated_sum": mat(&naive_exp(&x)),
                "ah_exp": mat(&ah_exp(&x).expect("nilpotent")),
            })),
            None => {
                tally.failed += 1;
                tally.witnesses.push(json!({
                    "p": p,
                    "group": format!("Sp_{}", 2 * p),
                    "candidates_examined": NEGATIVE_CONTROL_CANDIDATES,
                    "seed": ctx.cfg.seed,
                }));
            }
        }
    }
    if !examples.is_empty() {
        tally.example = Some(Value::Array(examples));
    }
    tally
}

/// `Σ_{i<p} X^i / i!` without the `X^p = 0` check.
fn naive_exp(x: &FpMatrix) -> FpMatrix {
    let field = x.field();
    let mut acc = FpMatrix::identity(field, x.n());
    let mut term = FpMatrix::identity(field, x.n());
    for i in 1..field.p() as i64 {
        term = (&term * x).scale(field.from_int(i).inv().expect("i < p"));
        acc = &acc + &term;
    }
    acc
}

fn all_nilpotents(field: Field, n: usize) -> Vec<FpMatrix> {
    let elements: Vec<FieldScalar> = field.elements().collect();
    let q = elements.len();
    let total = q.pow((n * n) as u32);
    (0..total)
        .filter_map(|mut k| {
            let m = FpMatrix::from_fn(field, n, |_, _| {
                let x = elements[k % q];
                k /= q;
                x
            });
            m.is_nilpotent().then_some(m)
        })
        .collect()
}

fn suite_commutativity(ctx: &Ctx) -> Tally {
    enum Job {
        Exhaustive(Arc<Vec<FpMatrix>>, usize, usize),
        Seeded(Arc<NilpotentSampler>),
    }
    let mut jobs = Vec::new();
    for &p in &ctx.cfg.primes {
        let field = prime_field(p);
        for n in [2usize, 3] {
            if n % p as usize == 0 || (p as u64).pow((n * n) as u32) > 1 << 12 {
                continue;
            }
            let nil = Arc::new(all_nilpotents(field, n));
            if (nil.len() as u64).pow(2) > 5_000 {
                continue;
            }
            for i in 0..nil.len() {
                for j in 0..nil.len() {
                    jobs.push(Job::Exhaustive(nil.clone(), i, j));
                }
            }
        }
        let n = if p == 2 { 3 } else { 4 };
        let spec = GroupSpec::new(GroupKind::Gl, n, field).expect("GL_n is always valid");
        let sampler = Arc::new(NilpotentSampler::new(spec).expect("default form"));
        for _ in 0..ctx.cfg.trials(10_000) {
            jobs.push(Job::Seeded(sampler.clone()));
        }
    }
    ctx.run(&jobs, |job, rng| {
        let (x, y) = match job {
            Job::Exhaustive(nil, i, j) => (nil[*i].clone(), nil[*j].clone()),
            Job::Seeded(sampler) => {
                let x = sampler.sample(rng);
                // half of the pairs commute by construction
                let y = if rand_core::RngCore::next_u64(rng) % 2 == 0 {
                    let f = x.field();
                    &x.scale(f.random(rng)) + &x.pow(2).scale(f.random(rng))
                } else {
                    sampler.sample(rng)
                };
                (x, y)
            }
        };
        let outcome = (|| {
            let (ex, ey) = (ah_exp(&x)?, ah_exp(&y)?);
            Ok(x.commutes_with(&y) == ex.commutes_with(&ey))
        })();
        verdict(outcome, || json!({ "X": mat(&x), "Y": mat(&y) }))
    })
}

fn suite_centralizer(ctx: &Ctx) -> Tally {
    let kinds = [GroupKind::Gl];
    let trials = ctx.cfg.trials(50);
    run_group_suite(ctx, Some(&kinds), ctx.cfg.max_n_small, trials, |case, _, x, _| {
        let outcome = ah_exp(x).map(|u| centralizer_space(x).same_space(&centralizer_space(&u)));
        verdict(outcome, || json!({ "group": case, "X": mat(x) }))
    })
}

fn suite_frobenius_entries(ctx: &Ctx) -> Tally {
    let trials = ctx.cfg.trials(50);
    let jobs: Vec<(u32, usize)> = ctx
        .cfg
        .primes
        .iter()
        .flat_map(|&p| (0..trials).map(move |t| (p, t)))
        .collect();
    let max_n = ctx.cfg.max_n_small;
    ctx.run(&jobs, |&(p, t), rng| {
        let field = Field::new(p, 2).expect("validated prime");
        let n = 2 + t % (max_n - 1);
        let spec = GroupSpec::new(GroupKind::Gl, n, field).expect("GL_n is always valid");
        let sampler = NilpotentSampler::new(spec).expect("default form");
        let x = sampler.sample(rng);
        let outcome = (|| Ok(ah_exp(&x.frobenius())? == ah_exp(&x)?.frobenius()))();
        verdict(outcome, || json!({ "X": mat(&x) }))
    })
}

/// The `ε`-coefficient of `f(εX)` over the dual numbers `F[ε]/(ε²)`,
/// realized as `A + εB ↦ [[A, B], [0, A]]`.
fn dual_tangent(x: &FpMatrix, f: impl Fn(&FpMatrix) -> Result<FpMatrix>) -> Result<Option<FpMatrix>> {
    let n = x.n();
    let field = x.field();
    let eps_x = FpMatrix::from_fn(field, 2 * n, |i, j| {
        if i < n && j >= n {
            x.get(i, j - n)
        } else {
            field.zero()
        }
    });
    let r = f(&eps_x)?;
    let block = |bi: usize, bj: usize| FpMatrix::from_fn(field, n, |i, j| r.get(bi * n + i, bj * n + j));
    let identity = FpMatrix::identity(field, n);
    let scalar_part_ok = block(0, 0) == identity && block(1, 1) == identity && block(1, 0).is_zero();
    Ok(scalar_part_ok.then(|| block(0, 1)))
}

fn suite_phi_seq(ctx: &Ctx) -> Tally {
    let kinds = [GroupKind::Gl];
    let trials = ctx.cfg.trials(100);
    run_group_suite(ctx, Some(&kinds), ctx.cfg.max_n_small, trials, |case, sampler, x, rng| {
        let field = x.field();
        let n = x.n();
        let mut a: Vec<FieldScalar> = (0..n).map(|_| field.random(rng)).collect();
        a[0] = field.random_nonzero(rng);
        let g = sampler.group_element(rng);
        let outcome = (|| {
            let seq = CoefficientSequence::new(field, a.clone())?;
            let g_inv = g
                .inverse()
                .ok_or_else(|| Error::Domain("sampled group element is singular".into()))?;
            let equivariant =
                phi_seq(&seq, &(&(&g * x) * &g_inv))? == &(&g * &phi_seq(&seq, x)?) * &g_inv;
            let expected = x.scale(a[0]);
            let dual = dual_tangent(x, |y| phi_seq(&seq, y))? == Some(expected.clone());
            // interpolation in s over F_{p^2} when it has enough points
            let degree = x.nilpotency_degree().unwrap_or(n).saturating_sub(1);
            let wide = Field::new(field.p(), 2)?;
            let interpolated = if (degree as u64) < wide.order() {
                let a_wide = a.iter().map(|c| c.embed(wide)).collect::<Result<Vec<_>>>()?;
                let seq_wide = CoefficientSequence::new(wide, a_wide)?;
                let x_wide = FpMatrix::from_fn(wide, n, |i, j| x.get(i, j).embed(wide).expect("subfield"));
                let d = tangent_coefficient(wide, degree.max(1), |s| phi_seq(&seq_wide, &x_wide.scale(s)))?;
                d == x_wide.scale(a[0].embed(wide)?)
            } else {
                true
            };
            let ah = CoefficientSequence::artin_hasse(field, n)?;
            Ok(equivariant && dual && interpolated && phi_seq(&ah, x)? == ah_exp(x)?)
        })();
        verdict(outcome, || {
            json!({
                "group": case,
                "X": mat(x),
                "g": mat(&g),
                "a": a.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })
        })
    })
}

// ---------------------------------------------------------------------------
// parabolic suites

#[derive(Clone, Debug, Serialize)]
struct ParabolicCase {
    p: u32,
    composition: String,
}

fn restricted_parabolics(ctx: &Ctx, min_p: u32) -> Vec<(ParabolicCase, Arc<ParabolicGL>)> {
    let mut out = Vec::new();
    for &p in ctx.cfg.primes.iter().filter(|&&p| p >= min_p) {
        for n in 1..=ctx.cfg.max_n_small {
            for comp in Composition::all(n) {
                let par = ParabolicGL::new(comp.clone(), prime_field(p));
                if par.is_restricted() {
                    let case = ParabolicCase { p, composition: comp.to_string() };
                    out.push((case, Arc::new(par)));
                }
            }
        }
    }
    out
}

fn run_parabolic_suite<F>(ctx: &Ctx, min_p: u32, trials: usize, f: F) -> Tally
where
    F: Fn(&ParabolicCase, &ParabolicGL, &mut CaseRng) -> Option<Value> + Sync + Send,
{
    let configs = restricted_parabolics(ctx, min_p);
    let jobs: Vec<usize> = (0..configs.len())
        .flat_map(|c| std::iter::repeat_n(c, trials))
        .collect();
    ctx.run(&jobs, |&c, rng| {
        let (case, par) = &configs[c];
        f(case, par, rng)
    })
}

fn suite_eps_inverse(ctx: &Ctx) -> Tally {
    run_parabolic_suite(ctx, 2, ctx.cfg.trials(200), |case, par, rng| {
        let x = par.sample_nilradical(rng);
        let outcome = (|| {
            let u = par.eps(&x)?;
            Ok(par.contains(&u) && u.is_unipotent() && truncated_log(&u)? == x)
        })();
        verdict(outcome, || json!({ "parabolic": case, "X": mat(&x) }))
    })
}

fn suite_eps_equivariance(ctx: &Ctx) -> Tally {
    run_parabolic_suite(ctx, 2, ctx.cfg.trials(100), |case, par, rng| {
        let x = par.sample_nilradical(rng);
        let g = par.sample_element(rng);
        let outcome = (|| {
            let g_inv = g
                .inverse()
                .ok_or_else(|| Error::Domain("sampled parabolic element is singular".into()))?;
            let lhs = par.eps(&(&(&g * &x) * &g_inv))?;
            let rhs = &(&g * &par.eps(&x)?) * &g_inv;
            Ok(lhs == rhs)
        })();
        verdict(outcome, || json!({ "parabolic": case, "X": mat(&x), "g": mat(&g) }))
    })
}

fn suite_eps_bch(ctx: &Ctx) -> Tally {
    run_parabolic_suite(ctx, 2, ctx.cfg.trials(100), |case, par, rng| {
        let x = par.sample_nilradical(rng);
        let y = par.sample_nilradical(rng);
        let outcome = (|| {
            let z = bch(&x, &y)?;
            Ok(par.in_nilradical(&z) && par.eps(&z)? == &par.eps(&x)? * &par.eps(&y)?)
        })();
        verdict(outcome, || json!({ "parabolic": case, "X": mat(&x), "Y": mat(&y) }))
    })
}

fn suite_bch_dynkin(ctx: &Ctx) -> Tally {
    run_parabolic_suite(ctx, 3, ctx.cfg.trials(100), |case, par, rng| {
        let x = par.sample_nilradical(rng);
        let y = par.sample_nilradical(rng);
        let maxdeg = par.field().p() as usize - 1;
        let outcome = (|| Ok(bch(&x, &y)? == bch_dynkin(&x, &y, maxdeg)?))();
        verdict(outcome, || {
            json!({ "parabolic": case, "X": mat(&x), "Y": mat(&y), "maxdeg": maxdeg })
        })
    })
}

fn suite_eps_tangent(ctx: &Ctx) -> Tally {
    run_parabolic_suite(ctx, 2, ctx.cfg.trials(20), |case, par, rng| {
        let x = par.sample_nilradical(rng);
        let field = par.field();
        let outcome = tangent_coefficient(field, field.p() as usize - 1, |s| par.eps(&x.scale(s)))
            .map(|d| d == x);
        verdict(outcome, || json!({ "parabolic": case, "X": mat(&x) }))
    })
}

fn suite_eps_restriction(ctx: &Ctx) -> Tally {
    run_parabolic_suite(ctx, 2, ctx.cfg.trials(100), |case, par, rng| {
        let x = par.sample_nilradical(rng);
        let outcome = (|| Ok(ah_exp(&x)? == par.eps(&x)?))();
        verdict(outcome, || json!({ "parabolic": case, "X": mat(&x) }))
    })
}
