//! Acceptance suite. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line; exits non-zero if any criterion fails.

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::Command;
use std::time::{Duration, Instant};

use qdel::audit::{table1_audit, MISMATCH_TOL, SYMMETRY_TOL};
use qdel::criteria::{analyze, closed_form_u, w_closed_form, w_determinants};
use qdel::states::{
    bell_state, deletion_output, reduced_from_pure, werner, BellState, DeletionParams,
    DensityMatrix,
};
use qdel::teleport::verify_fidelity;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn grid() -> Vec<DeletionParams> {
    (1..=99)
        .map(|k| DeletionParams::with_balanced_blank(k as f64 / 100.0).unwrap())
        .collect()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn special_case() -> Outcome {
    let p = DeletionParams::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2).map_err(|e| e.to_string())?;
    let r = analyze(&deletion_output(&p)).map_err(|e| e.to_string())?;
    let du = r.u.iter().map(|u| (u - 0.25).abs()).fold(0.0, f64::max);
    let df = (r.f_max - 0.75).abs();
    check(du <= 1e-10 && df <= 1e-10, || {
        format!("u = {:?}, F_max = {}", r.u, r.f_max)
    })?;
    Ok(format!(
        "max |u - 1/4| = {du:.1e}, |F_max - 3/4| = {df:.1e}"
    ))
}

fn closed_forms() -> Outcome {
    let (mut dw, mut du) = (0.0f64, 0.0f64);
    for p in grid() {
        let rho = deletion_output(&p);
        let (w3, w4) = w_determinants(&rho);
        let (c3, c4) = w_closed_form(&p);
        dw = dw.max((w3 - c3).abs()).max((w4 - c4).abs());

        let r = analyze(&rho).map_err(|e| e.to_string())?;
        let mut cf = closed_form_u(p.alpha()).map_err(|e| e.to_string())?;
        cf.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in cf.iter().zip(r.u) {
            du = du.max((a - b).abs());
        }
    }
    check(dw <= 1e-12 && du <= 1e-10, || {
        format!("max W delta {dw:.2e}, max u delta {du:.2e}")
    })?;
    Ok(format!(
        "99 points, max W delta {dw:.1e}, max u delta {du:.1e}"
    ))
}

fn qualitative_claims() -> Outcome {
    let mut failures = Vec::new();
    for p in grid() {
        let r = analyze(&deletion_output(&p)).map_err(|e| e.to_string())?;
        let claims = [
            ("W3 >= 0", r.w3 >= 0.0),
            ("W4 < 0", r.w4 < 0.0),
            ("PPT min < 0", r.ppt_min() < 0.0),
            ("M <= 1", r.big_m <= 1.0),
            ("F_max > 2/3", r.f_max > 2.0 / 3.0),
        ];
        for (name, ok) in claims {
            if !ok {
                failures.push(format!("{name} fails at alpha = {}", p.alpha()));
            }
        }
    }
    check(failures.is_empty(), || failures.join("; "))?;
    Ok("5 claims hold at all 99 points".into())
}

fn table1() -> Outcome {
    let audit = table1_audit().map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    for row in &audit.rows {
        let low = row.alpha < 0.35;
        if low && row.delta.abs() > MISMATCH_TOL {
            problems.push(format!("alpha {} off by {:.2e}", row.alpha, row.delta));
        }
        if row.mismatch_flag == low {
            problems.push(format!("alpha {} flag = {}", row.alpha, row.mismatch_flag));
        }
    }
    let f = |a: f64| {
        audit
            .rows
            .iter()
            .find(|r| (r.alpha - a).abs() < 1e-9)
            .unwrap()
            .f_pipeline
    };
    if (f(0.5) - 0.7127).abs() > 1e-4 || (f(0.9) - 0.6969).abs() > 1e-4 {
        problems.push(format!("F(0.5) = {}, F(0.9) = {}", f(0.5), f(0.9)));
    }
    if !(audit.symmetry.passes && audit.symmetry.abs_diff <= SYMMETRY_TOL) {
        problems.push(format!("symmetry |diff| = {:.2e}", audit.symmetry.abs_diff));
    }
    check(problems.is_empty(), || problems.join("; "))?;
    Ok(format!(
        "rows 0.1-0.3 within {MISMATCH_TOL}, 6 rows flagged, |F(0.6) - F(0.8)| = {:.1e} (published {:.4})",
        audit.symmetry.abs_diff, audit.symmetry.published_abs_diff
    ))
}

fn werner_family() -> Outcome {
    let rep = |p: f64| analyze(&werner(p).unwrap()).map_err(|e| e.to_string());
    let (mut dm, mut df) = (0.0f64, 0.0f64);
    for k in 0..=100 {
        let p = k as f64 / 100.0;
        let r = rep(p)?;
        dm = dm.max((r.big_m - 2.0 * p * p).abs());
        df = df.max((r.f_max - (1.0 + p) / 2.0).abs());
    }
    let bell = FRAC_1_SQRT_2;
    let ppt = 1.0 / 3.0;
    let flips = !rep(bell - 1e-6)?.bell_violated
        && rep(bell + 1e-6)?.bell_violated
        && !rep(ppt - 1e-6)?.inseparable
        && rep(ppt + 1e-6)?.inseparable;
    check(dm <= 1e-10 && df <= 1e-10 && flips, || {
        format!("M delta {dm:.2e}, F delta {df:.2e}, verdict flips {flips}")
    })?;
    Ok(format!(
        "M delta {dm:.1e}, F delta {df:.1e}, flips at 1/sqrt2 and 1/3"
    ))
}

fn teleportation() -> Outcome {
    const N: usize = 100_000;
    const SEED: u64 = 2024;
    let mut notes = Vec::new();
    let mut problems = Vec::new();
    for alpha in [0.1, 0.3, 0.5, FRAC_1_SQRT_2, 0.9] {
        let p = DeletionParams::with_balanced_blank(alpha).unwrap();
        let v = verify_fidelity(&deletion_output(&p), N, SEED).map_err(|e| e.to_string())?;
        let dev = v.simulated.mean - v.formula;
        if !v.consistent {
            problems.push(format!(
                "alpha {alpha:.4}: deviation {dev:.2e}, stderr {:.2e}",
                v.simulated.std_error
            ));
        }
        notes.push(format!("{dev:+.1e}/{:.1e}", v.simulated.std_error));
    }
    let singlet = DensityMatrix::from_pure(&bell_state(BellState::PsiMinus)).unwrap();
    let s = verify_fidelity(&singlet, N, SEED).map_err(|e| e.to_string())?;
    if (s.simulated.mean - 1.0).abs() > 1e-12 {
        problems.push(format!("singlet mean {}", s.simulated.mean));
    }
    let mixed =
        verify_fidelity(&DensityMatrix::maximally_mixed(), N, SEED).map_err(|e| e.to_string())?;
    if !mixed.consistent
        || (mixed.simulated.mean - 0.5).abs() > 3.0 * mixed.simulated.std_error + 1e-12
    {
        problems.push(format!("mixed mean {}", mixed.simulated.mean));
    }
    check(problems.is_empty(), || problems.join("; "))?;
    Ok(format!(
        "deviation/stderr [{}], singlet |1 - F| = {:.1e}, mixed |F - 1/2| = {:.1e}",
        notes.join(", "),
        (s.simulated.mean - 1.0).abs(),
        (mixed.simulated.mean - 0.5).abs()
    ))
}

fn structural() -> Outcome {
    let mut d = 0.0f64;
    for p in grid() {
        let traced = reduced_from_pure(&p);
        d = d.max(traced.max_abs_diff(deletion_output(&p).matrix()));
    }
    check(d <= 1e-12, || format!("max entry delta {d:.2e}"))?;
    Ok(format!("max entry delta {d:.1e}"))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("qdel-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("sweep{run}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_qdel"))
            .args([
                "sweep",
                "--mc-samples",
                "100000",
                "--seed",
                "7",
                "--format",
                "csv",
                "--output",
            ])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        check(status.success(), || {
            format!("run {run} exited with {status}")
        })?;
        files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    check(files[0] == files[1], || "outputs differ".into())?;
    let lines = files[0].iter().filter(|&&b| b == b'\n').count();
    Ok(format!(
        "{} bytes, {lines} lines, identical",
        files[0].len()
    ))
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "special-case exactness",
            budget: Some(Duration::from_secs(1)),
            run: special_case,
        },
        Criterion {
            id: 2,
            name: "closed-form algebra",
            budget: Some(Duration::from_secs(5)),
            run: closed_forms,
        },
        Criterion {
            id: 3,
            name: "qualitative claims",
            budget: None,
            run: qualitative_claims,
        },
        Criterion {
            id: 4,
            name: "published table audit",
            budget: None,
            run: table1,
        },
        Criterion {
            id: 5,
            name: "Werner oracle family",
            budget: None,
            run: werner_family,
        },
        Criterion {
            id: 6,
            name: "teleportation Monte Carlo",
            budget: Some(Duration::from_secs(60)),
            run: teleportation,
        },
        Criterion {
            id: 7,
            name: "structural consistency",
            budget: None,
            run: structural,
        },
        Criterion {
            id: 8,
            name: "determinism",
            budget: None,
            run: determinism,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(budget)) = (&outcome, c.budget) {
            if elapsed > budget {
                outcome = Err(format!("took {elapsed:.2?}, budget {budget:?}"));
            }
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "[{tag}] criterion {}: {} ({elapsed:.2?}) {detail}",
            c.id, c.name
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
