//! Acceptance criteria, one line each. Every comparison is exact rational
//! equality; a criterion passes only with zero failures over its full range.

use std::process::ExitCode;
use std::time::Instant;

use blendext::boundary::BoundaryForm;
use blendext::extension::extend;
use blendext::forms::{basis_trimmed, whitney};
use blendext::verify::{run, Report, Suite, SuiteConfig};
use blendext::{BaryPoly, PolyForm, Rational};

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: &[usize], r: &[u32], suites: &[Suite]) -> Report {
    let mut cfg = SuiteConfig::new(n.to_vec(), r.to_vec(), suites.to_vec());
    cfg.seed = 20;
    run(&cfg).expect("valid configuration")
}

/// Sums a check over reports; `None` if the check never ran.
fn tally(reports: &[&Report], suite: Suite, check: &str) -> (usize, usize) {
    reports
        .iter()
        .filter_map(|r| r.suite(suite)?.check(check))
        .fold((0, 0), |(c, f), x| (c + x.cases, f + x.failures))
}

fn all_checks(reports: &[&Report], suite: Suite, checks: &[&str]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &name in checks {
        let (cases, failures) = tally(reports, suite, name);
        pass &= cases > 0 && failures == 0;
        parts.push(format!("{name} {}/{cases}", cases - failures));
    }
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

fn constant_boundary(n: usize, values: &[i64]) -> BoundaryForm {
    let facets = (0..=n)
        .map(|i| {
            let labels: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
            PolyForm::scalar(BaryPoly::constant(&labels, Rational::from_integer(values[i].into())).unwrap())
        })
        .collect();
    BoundaryForm::new(n, 0, facets).unwrap()
}

/// Values worked out by hand: on the interval the data `u(x_0) = 0`,
/// `u(x_1) = 1` extend to `λ_1`; constant data extend to the constant.
fn hand_values() -> bool {
    let interval = extend(&constant_boundary(1, &[1, 0])).unwrap();
    let lambda1 = PolyForm::scalar(BaryPoly::lambda(&[0, 1], 1).unwrap());
    let tri = extend(&constant_boundary(2, &[1, 1, 1])).unwrap();
    let one = PolyForm::scalar(BaryPoly::constant(&[0, 1, 2], Rational::from_integer(1.into())).unwrap());
    interval == lambda1 && tri == one
}

fn pascal(n: usize, k: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1usize; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let ext_suites = [Suite::Trace, Suite::Cochain, Suite::Preserve, Suite::Oracle];
    let small = report(&[1, 2], &[1, 2, 3], &ext_suites);
    let tet = report(&[3], &[1, 2], &ext_suites);
    let ops = report(&[1, 2, 3], &[1, 2], &[Suite::Rops, Suite::Aops, Suite::Identities]);
    let homotopy = report(&[1, 2, 3], &[1, 2, 3], &[Suite::Homotopy]);
    let top = report(&[1, 2], &[1, 2, 3], &[Suite::TopDiagnostic]);
    let ext = [&small, &tet];

    let mut results: Vec<(&str, Outcome)> = Vec::new();

    let mut c1 = all_checks(&ext, Suite::Trace, &["extension"]);
    let hand = hand_values();
    c1.pass &= hand;
    c1.detail.push_str(&format!(", hand values {}", if hand { "ok" } else { "wrong" }));
    results.push(("extension property", c1));
    results.push(("cochain property", all_checks(&ext, Suite::Cochain, &["cochain"])));
    results.push((
        "polynomial preservation",
        all_checks(&ext, Suite::Preserve, &["membership", "component-membership"]),
    ));

    let r = all_checks(
        &[&ops],
        Suite::Rops,
        &["r-commute", "r-trace", "r-divisible", "r-antisymmetry", "r-vertex-pullback", "r-top-vanish"],
    );
    let a = all_checks(
        &[&ops],
        Suite::Aops,
        &["a-commute", "delta-a", "a-trace", "a-divisible", "a-antisymmetry", "a-top-vanish", "c-relations"],
    );
    results.push((
        "operator identities",
        Outcome {
            pass: r.pass && a.pass,
            detail: format!("{}; {}", r.detail, a.detail),
        },
    ));

    let not_divisible: usize = [&small, &tet, &ops].iter().map(|r| r.not_divisible()).sum();
    let div = all_checks(&[&ops], Suite::Rops, &["r-divisible"]);
    let adiv = all_checks(&[&ops], Suite::Aops, &["a-divisible"]);
    results.push((
        "divisibility",
        Outcome {
            pass: not_divisible == 0 && div.pass && adiv.pass,
            detail: format!("{not_divisible} NotDivisible errors; {}; {}", div.detail, adiv.detail),
        },
    ));

    let mut oracle = all_checks(&ext, Suite::Oracle, &["representation", "evaluation"]);
    let ladder = all_checks(&[&small], Suite::Oracle, &["ladder"]);
    oracle.pass &= ladder.pass;
    oracle.detail = format!("{}, {}", oracle.detail, ladder.detail);
    results.push(("representation agreement", oracle));

    results.push((
        "identity suite",
        all_checks(&[&ops], Suite::Identities, &["dphi-over-lambda", "blend-wedge-identity"]),
    ));

    results.push((
        "homotopy suite",
        all_checks(
            &[&homotopy],
            Suite::Homotopy,
            &["complex", "homotopy-identity", "poincare-degree", "poincare-bc-trace"],
        ),
    ));

    let mut whitney_dim = all_checks(&[&ops], Suite::Identities, &["whitney-dimension"]);
    for n in 1..=4 {
        for k in 0..=n {
            whitney_dim.pass &= basis_trimmed(n, 1, k).map(|b| b.len()).ok() == Some(pascal(n + 1, k + 1));
        }
    }
    // φ_{0..n} is a single spanning top form
    whitney_dim.pass &= !whitney(&[0, 1, 2], &[0, 1, 2]).unwrap().is_zero();
    results.push(("Whitney dimension", whitney_dim));

    let diag = top.suite(Suite::TopDiagnostic).expect("diagnostic ran");
    let stokes = diag.check("stokes").expect("stokes check");
    let vanish = diag.check("d-top-vanishes").expect("vanishing claim");
    let volume = diag.check("d-top-volume-form").expect("volume-form candidate");
    results.push((
        "top-degree diagnostic",
        Outcome {
            pass: stokes.cases > 0 && stokes.failures == 0 && vanish.cases == stokes.cases && volume.cases == stokes.cases,
            detail: format!(
                "Stokes {}/{}; dE = 0 in {}/{}; dE = n!(∫u)φ in {}/{}",
                stokes.cases - stokes.failures,
                stokes.cases,
                vanish.cases - vanish.failures,
                vanish.cases,
                volume.cases - volume.failures,
                volume.cases
            ),
        },
    ));

    let mut ok = true;
    for (i, (name, o)) in results.iter().enumerate() {
        ok &= o.pass;
        println!("criterion {:>2} {:<26} {}  ({})", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
