//! Acceptance gate. Every criterion is an exact check (zero tolerance) with
//! a wall-clock budget; each prints one PASS/FAIL line.

mod common;

use std::fmt::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use springer_core::groups::{GroupKind, GroupSpec, NilpotentSampler};
use springer_core::matrix::{jordan_nilpotent, nilpotent_order, JordanType};
use springer_core::rng;
use springer_core::springer::witt_embed;
use springer_core::verify::{run_suite, Report, SuiteConfig};
use springer_core::witt::{witt_add, WittVector};
use springer_core::{Field, FpMatrix};

struct Outcome {
    ok: bool,
    detail: String,
}

fn suites(names: &[&str], primes: &[u32]) -> SuiteConfig {
    SuiteConfig {
        suites: names.iter().map(|s| s.to_string()).collect(),
        primes: primes.to_vec(),
        ..SuiteConfig::default()
    }
}

/// Passes when every suite passed and each has at least `min_cases[i]` cases.
fn judge(report: &Report, min_cases: &[(&str, u64)]) -> Outcome {
    let mut detail = String::new();
    let mut ok = true;
    for s in &report.suites {
        let _ = write!(detail, "{} {}/{}; ", s.name, s.passed, s.cases);
        ok &= s.failed == 0 && s.passed + s.failed == s.cases && !s.anchor.is_empty();
    }
    for (name, min) in min_cases {
        let cases = report.suites.iter().find(|s| s.name == *name).map_or(0, |s| s.cases);
        if cases < *min {
            ok = false;
            let _ = write!(detail, "{name} ran {cases} < {min} cases; ");
        }
    }
    Outcome { ok, detail }
}

fn run_cfg(cfg: &SuiteConfig, min_cases: &[(&str, u64)]) -> Outcome {
    match run_suite(cfg) {
        Ok(r) => judge(&r, min_cases),
        Err(e) => Outcome { ok: false, detail: e.to_string() },
    }
}

fn criterion_1() -> Outcome {
    let mut out = run_cfg(&suites(&["ah-integrality"], &[2, 3, 5, 7]), &[("ah-integrality", 16)]);
    // rational coefficients also agree with the product formula
    for p in [2u32, 3, 5, 7] {
        let ours = springer_core::series::ah_rational_coeffs(p, 60).unwrap();
        if ours.coeffs() != &common::ah_by_product(p as u64, 60)[..] {
            out.ok = false;
            let _ = write!(out.detail, "product formula disagrees for p={p}; ");
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let mut out = run_cfg(&suites(&["witt-group"], &[2, 3]), &[("witt-group", 1)]);
    for (p, m) in [(2u32, 2usize), (2, 3), (3, 2)] {
        let field = Field::prime(p).unwrap();
        let vectors = WittVector::enumerate(field, m).unwrap();
        let value = |w: &WittVector| {
            let e: Vec<u64> = w.entries().iter().map(|x| x.coords()[0] as u64).collect();
            common::witt_to_integer(p as u64, &e)
        };
        let modulus = (p as u64).pow(m as u32);
        let hom = vectors.iter().all(|a| {
            vectors
                .iter()
                .all(|b| value(&witt_add(a, b).unwrap()) == (value(a) + value(b)) % modulus)
        });
        if !hom {
            out.ok = false;
            let _ = write!(out.detail, "Z/p^m oracle disagrees for (p,m)=({p},{m}); ");
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut out = run_cfg(
        &suites(&["witt-hom", "witt-injective"], &[2, 3]),
        &[("witt-hom", 2 * 64 + 2 * 81), ("witt-injective", 4)],
    );
    // 200 seeded pairs for a regular nilpotent in GL_4(F_3)
    let f3 = Field::prime(3).unwrap();
    let spec = GroupSpec::new(GroupKind::Gl, 4, f3).unwrap();
    let sampler = NilpotentSampler::new(spec).unwrap();
    let mut r = rng::seeded(42);
    let x = sampler.conjugate(&jordan_nilpotent(&JordanType::regular(4), f3), &mut r);
    assert_eq!(nilpotent_order(&x).unwrap(), 2);
    let mut failures = 0;
    for _ in 0..200 {
        let u = WittVector::random(f3, 2, &mut r).unwrap();
        let v = WittVector::random(f3, 2, &mut r).unwrap();
        let lhs = witt_embed(&x, &witt_add(&u, &v).unwrap()).unwrap();
        let rhs: FpMatrix = &witt_embed(&x, &u).unwrap() * &witt_embed(&x, &v).unwrap();
        failures += usize::from(lhs != rhs);
    }
    let _ = write!(out.detail, "seeded GL_4(F_3) pairs 200, {failures} failed");
    out.ok &= failures == 0;
    out
}

fn group_cfg(names: &[&str]) -> SuiteConfig {
    SuiteConfig {
        max_n: 8,
        trials: Some(100),
        ..suites(names, &[2, 3, 5])
    }
}

fn criterion_4() -> Outcome {
    // GL, SL: 7 dimensions x 3 primes; SO: 7 x 2; Sp: 4 x 2
    run_cfg(&group_cfg(&["frobenius"]), &[("frobenius", 100 * (42 + 14 + 8))])
}

fn criterion_5() -> Outcome {
    let cfg = SuiteConfig {
        kinds: Some(vec![GroupKind::So, GroupKind::Sp]),
        max_n: 7,
        trials: Some(100),
        ..suites(&["form-preservation", "negative-control"], &[3, 5])
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => return Outcome { ok: false, detail: e.to_string() },
    };
    let mut out = judge(&report, &[("form-preservation", 100 * 2 * (6 + 3)), ("negative-control", 2)]);
    let found = report
        .suites
        .iter()
        .find(|s| s.name == "negative-control")
        .and_then(|s| s.example.as_ref())
        .and_then(|e| e.as_array())
        .is_some_and(|a| a.iter().any(|x| x["p"] == 3));
    out.ok &= found;
    let _ = write!(out.detail, "sp_6(F_3) witness found: {found}");
    out
}

fn criterion_6() -> Outcome {
    run_cfg(&group_cfg(&["same-order"]), &[("same-order", 6400)])
}

fn criterion_7() -> Outcome {
    let cfg = SuiteConfig {
        max_n_small: 6,
        trials: Some(100),
        ..suites(
            &["eps-equivariance", "eps-bch", "bch-dynkin", "eps-tangent", "eps-restriction", "eps-inverse"],
            &[2, 3, 5],
        )
    };
    run_cfg(&cfg, &[("eps-equivariance", 100 * 124), ("eps-bch", 100 * 124), ("bch-dynkin", 100 * 103)])
}

fn criterion_8() -> Outcome {
    let cfg = SuiteConfig {
        trials: Some(10_000),
        ..suites(&["commutativity"], &[2, 3])
    };
    run_cfg(&cfg, &[("commutativity", 81 + 4096 + 20_000)])
}

fn criterion_9() -> Outcome {
    let cfg = SuiteConfig {
        trials: Some(50),
        max_n_small: 6,
        ..suites(&["centralizer"], &[2, 3, 5])
    };
    run_cfg(&cfg, &[("centralizer", 50 * 5 * 3)])
}

fn criterion_10() -> Outcome {
    let cfg = SuiteConfig {
        trials: Some(50),
        ..suites(&["frobenius-entries"], &[2, 3])
    };
    run_cfg(&cfg, &[("frobenius-entries", 100)])
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("run{k}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_springer"))
            .args(["verify", "--suite", "all", "--seed", "42", "--report", path.to_str().unwrap()])
            .output()
            .expect("binary runs");
        if status.status.code() != Some(0) {
            return Outcome {
                ok: false,
                detail: format!("run {k} exited with {:?}", status.status.code()),
            };
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let report: Report = serde_json::from_str(&text).unwrap();
        reports.push(report.without_timestamp());
    }
    let same = reports[0] == reports[1];
    Outcome {
        ok: same && reports[0].all_passed(),
        detail: format!("{} suites, identical without timestamp: {same}", reports[0].suites.len()),
    }
}

#[test]
fn acceptance() {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: Vec<Criterion> = vec![
        (1, "AH integrality and agreement", 5, criterion_1),
        (2, "Witt group axioms and Z/p^m oracle", 10, criterion_2),
        (3, "Witt embedding homomorphism and injectivity", 20, criterion_3),
        (4, "e_p(X^p) = e_p(X)^p", 30, criterion_4),
        (5, "form preservation and negative control", 60, criterion_5),
        (6, "unipotent order p^m", 10, criterion_6),
        (7, "eps_P equivariance, BCH, tangent, restriction", 60, criterion_7),
        (8, "commutativity equivalence", 60, criterion_8),
        (9, "centralizer equality", 30, criterion_9),
        (10, "Frobenius on entries over F_{p^2}", 10, criterion_10),
        (11, "report determinism", 300, criterion_11),
    ];
    let mut failed = Vec::new();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(budget);
        let ok = outcome.ok && in_budget;
        println!(
            "[{}] criterion {id:>2}: {name} ({:.2} s of {budget} s) {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
        if !ok {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
