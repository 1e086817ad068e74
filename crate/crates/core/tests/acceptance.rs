//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the lines always reach the output.

use std::f64::consts::PI;
use std::time::Instant;

use oscfractal::asymptotics::{
    caustic_prediction, greenblatt_closed_form, greenblatt_coefficient, predict_1d, CausticFamily,
    CausticType,
};
use oscfractal::calibration::{
    calibrate_case, calibrate_verdict, degeneracy_cases, dimension_cases, CalibrationConfig,
    CalibrationRow, Quantity,
};
use oscfractal::newton::analyze;
use oscfractal::phase::{AmplitudeProfile, AmplitudeSpec, CriticalOrder, PolynomialPhase};
use oscfractal::report::{verify, VerificationReport, VerifyConfig};
use oscfractal::special::gamma;
use oscfractal::{Complex64, Rational};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn phase(n: usize, terms: &[(&[u32], f64)]) -> PolynomialPhase {
    PolynomialPhase::from_terms(n, terms.iter().map(|(k, c)| (k.to_vec(), *c))).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn report(f: &PolynomialPhase, amp: &AmplitudeSpec) -> Result<VerificationReport, String> {
    verify(f, amp, &VerifyConfig::default()).map_err(|e| e.to_string())
}

fn remoteness_exact() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for p in 2..=8u32 {
        for q in 2..=8u32 {
            let f = phase(2, &[(&[p, 0], 1.0), (&[0, q], 1.0), (&[0, 0], 1.0)]);
            let info = analyze(&f).map_err(|e| e.to_string())?;
            let expected = -Rational::new(1, p as i64) - Rational::new(1, q as i64);
            if info.remoteness != expected || info.multiplicity != 0 {
                bad.push(format!(
                    "({p},{q}): {} m={}",
                    info.remoteness, info.multiplicity
                ));
            }
        }
    }
    let elapsed = t.elapsed().as_secs_f64();
    check(
        bad.is_empty() && elapsed < 1.0,
        format!(
            "49 phases exact, {elapsed:.3}s{}",
            if bad.is_empty() {
                String::new()
            } else {
                format!("; wrong: {}", bad.join(", "))
            }
        ),
    )
}

fn dimension_predictions() -> Outcome {
    let d = |s: u32| {
        predict_1d(CriticalOrder { s }, 1.0, 1.0, None)
            .map(|p| p.curve_dim)
            .map_err(|e| e.to_string())
    };
    let (d2, d3) = (d(2)?, d(3)?);
    let mut ok = d2 == Rational::new(4, 3) && d3 == Rational::new(3, 2);
    for k in 1..=8u32 {
        let c = caustic_prediction(CausticType {
            family: CausticFamily::A,
            k,
            n: 1,
        })
        .map_err(|e| e.to_string())?;
        let p =
            predict_1d(CriticalOrder { s: k + 1 }, 1.0, 1.0, None).map_err(|e| e.to_string())?;
        ok &= c.prediction.curve_dim == p.curve_dim
            && c.prediction.osc_dim == p.osc_dim
            && c.prediction.beta == p.beta;
    }
    check(
        ok,
        format!("d(s=2) = {d2}, d(s=3) = {d3}; A_k (n=1) matches s = k+1 for k ≤ 8"),
    )
}

fn coefficient_cross_check() -> Outcome {
    let mut worst: f64 = 0.0;
    for (p, q) in [(2u32, 4u32), (4, 4), (2, 6)] {
        let beta = -Rational::new(1, p as i64) - Rational::new(1, q as i64);
        let num = greenblatt_coefficient(p, q, 1.0, beta).map_err(|e| e.to_string())?;
        let closed = greenblatt_closed_form(p, q, 1.0).map_err(|e| e.to_string())?;
        worst = worst.max((num - closed).norm() / closed.norm());
    }
    let g = (gamma(0.5).map_err(|e| e.to_string())? - PI.sqrt()).abs();
    check(
        worst <= 1e-6 && g <= 1e-12,
        format!("max relative gap {worst:.2e} (tol 1e-6); |Γ(1/2) − √π| = {g:.1e} (tol 1e-12)"),
    )
}

fn curve_dimensions(r2: &VerificationReport) -> Outcome {
    let r3 = report(
        &phase(1, &[(&[3], 1.0), (&[0], 1.0)]),
        &AmplitudeSpec::unit(1),
    )?;
    let (d2, d3) = (r2.measured.curve.d_hat, r3.measured.curve.d_hat);
    let n = r2.measured.samples.min(r3.measured.samples);
    check(
        (d2 - 4.0 / 3.0).abs() <= 0.05 && (d3 - 1.5).abs() <= 0.05 && n >= 10_000,
        format!(
            "x²+1: {d2:.4} (4/3 ± 0.05); x³+1: {d3:.4} (3/2 ± 0.05); {n} points; plain plateau fits {:.4}, {:.4}",
            r2.measured.curve_plain, r3.measured.curve_plain
        ),
    )
}

fn content(r2: &VerificationReport) -> Outcome {
    let expected = 3.0 * 2f64.powf(2.0 / 3.0) * PI;
    let c = r2.measured.content.as_ref().ok_or("no content measured")?;
    let rel = (c.m_hat - expected) / expected;
    check(
        rel.abs() <= 0.15,
        format!(
            "M̂ = {:.4} vs {expected:.4} ({:+.2}%, tol 15%), verdict {:?}",
            c.m_hat,
            100.0 * rel,
            c.verdict
        ),
    )
}

fn leading_coefficient(r2: &VerificationReport) -> Outcome {
    let fit = r2
        .measured
        .leading
        .as_ref()
        .ok_or("leading-term fit failed")?;
    let c: Complex64 = fit.coefficient;
    let rel = (c.norm() - PI.sqrt()).abs() / PI.sqrt();
    let darg = (c.arg() - PI / 4.0).abs();
    check(
        rel <= 0.02 && darg <= 0.03,
        format!(
            "|C₁| = {:.5} (√π ± 2%: {:.2e}), arg = {:.5} (π/4 ± 0.03: {darg:.1e})",
            c.norm(),
            rel,
            c.arg()
        ),
    )
}

fn rectifiable() -> Outcome {
    let linear = report(
        &phase(1, &[(&[1], 1.0), (&[0], 2.0)]),
        &AmplitudeSpec::unit(1),
    )?;
    let amp3 = AmplitudeSpec::with_profile(3, 1.0, 1.0, AmplitudeProfile::Product)
        .map_err(|e| e.to_string())?;
    let sphere = report(
        &phase(
            3,
            &[
                (&[2, 0, 0], 1.0),
                (&[0, 2, 0], 1.0),
                (&[0, 0, 2], 1.0),
                (&[0, 0, 0], 1.0),
            ],
        ),
        &amp3,
    )?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, r) in [("x+2", &linear), ("x²+y²+z²+1", &sphere)] {
        let m = &r.measured;
        let ds = [m.curve.d_hat, m.reflected_re.d_hat, m.reflected_im.d_hat];
        ok &= ds.iter().all(|d| (d - 1.0).abs() <= 0.05);
        parts.push(format!(
            "{name}: curve {:.4}, Re {:.4}, Im {:.4} (plain curve fit {:.4})",
            ds[0], ds[1], ds[2], m.curve_plain
        ));
    }
    check(ok, format!("{} (1 ± 0.05)", parts.join("; ")))
}

fn rows_summary(rows: &[CalibrationRow]) -> String {
    rows.iter()
        .map(|r| match (r.quantity, r.verdict) {
            (Quantity::Verdict, Some(v)) => format!("{} {:?} (l̂={:.2})", r.case, v, r.measured),
            _ => format!(
                "{} {:?} {:.4}/{:.4}",
                r.case, r.quantity, r.measured, r.expected
            ),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn calibration() -> Outcome {
    let cfg = CalibrationConfig::default();
    let mut rows = Vec::new();
    for case in dimension_cases() {
        rows.extend(calibrate_case(&case, &cfg).map_err(|e| e.to_string())?);
    }
    let failed: Vec<_> = rows.iter().filter(|r| !r.pass).cloned().collect();
    let worst_dim = rows
        .iter()
        .filter(|r| r.quantity == Quantity::Dimension)
        .map(|r| (r.measured - r.expected).abs())
        .fold(0.0, f64::max);
    let worst_content = rows
        .iter()
        .filter(|r| r.quantity == Quantity::Content)
        .map(|r| ((r.measured - r.expected) / r.expected).abs())
        .fold(0.0, f64::max);
    check(
        failed.is_empty(),
        format!(
            "{} rows, worst dimension error {worst_dim:.4} (tol 0.03), worst spiral content error {:.2}% (tol 10%){}",
            rows.len(),
            100.0 * worst_content,
            if failed.is_empty() { String::new() } else { format!("; failed: {}", rows_summary(&failed)) }
        ),
    )
}

fn degeneracy() -> Outcome {
    let cfg = CalibrationConfig::default();
    let rows = degeneracy_cases()
        .iter()
        .map(|c| calibrate_verdict(c, &cfg))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    check(rows.iter().all(|r| r.pass), rows_summary(&rows))
}

fn two_dimensional() -> Outcome {
    let amp = AmplitudeSpec::unit(2);
    let round = report(
        &phase(2, &[(&[2, 0], 1.0), (&[0, 2], 1.0), (&[0, 0], 1.0)]),
        &amp,
    )?;
    let quartic = report(
        &phase(2, &[(&[2, 0], 1.0), (&[0, 4], 1.0), (&[0, 0], 1.0)]),
        &amp,
    )?;
    let (a, b) = (round.measured.curve.d_hat, quartic.measured.curve.d_hat);
    let pred = quartic.predicted.curve_dim;
    check(
        (a - 1.0).abs() <= 0.07 && pred == Rational::new(8, 7) && (b - 8.0 / 7.0).abs() <= 0.07,
        format!(
            "x²+y²+1: {a:.4} (1 ± 0.07); x²+y⁴+1: predicted {pred}, measured {b:.4} (± 0.07); τ ≤ {}",
            quartic.measured.tau_range.1
        ),
    )
}

fn main() {
    // libtest flags such as --nocapture or a filter are accepted and ignored
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let start = Instant::now();
    let quad = report(
        &phase(1, &[(&[2], 1.0), (&[0], 1.0)]),
        &AmplitudeSpec::unit(1),
    );
    let with_quad = |f: fn(&VerificationReport) -> Outcome| -> Outcome {
        match &quad {
            Ok(r) => f(r),
            Err(e) => Err(e.clone()),
        }
    };
    let criteria: Vec<Criterion<'_>> = vec![
        ("newton/remoteness exactness", Box::new(remoteness_exact)),
        ("dimension predictions", Box::new(dimension_predictions)),
        ("coefficient cross-check", Box::new(coefficient_cross_check)),
        (
            "measured curve dimension",
            Box::new(move || with_quad(curve_dimensions)),
        ),
        (
            "measured Minkowski content",
            Box::new(move || with_quad(content)),
        ),
        (
            "leading-coefficient recovery",
            Box::new(move || with_quad(leading_coefficient)),
        ),
        ("rectifiable regimes", Box::new(rectifiable)),
        ("estimator calibration", Box::new(calibration)),
        ("degeneracy detection", Box::new(degeneracy)),
        ("2D smoke verification", Box::new(two_dimensional)),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if filter.as_deref().is_some_and(|f| !name.contains(f)) {
            continue;
        }
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {failures} failed [{:.1}s]",
        start.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
