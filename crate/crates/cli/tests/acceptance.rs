//! Acceptance suite: one PASS/FAIL line per criterion, with timings. Runs
//! without the libtest harness so the lines always reach stdout.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nilform_cli::commands::{self, Settings};
use nilform_cli::AuditTarget;
use nilform_core::decompose::{abelian_radical_decompose, Decomposition};
use nilform_core::experiments::{verify_euclidean, verify_skew_pairing, EuclideanVerdict};
use nilform_core::gallery::{
    entry_names, gallery_entry, random_instance, random_semidirect, Profile,
};
use nilform_core::metric::{analyze_with, gs_invariance_check, index2_structure_check, Status};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    check(took < limit, || {
        format!("{what} took {took:.2?}, limit {limit:?}")
    })
}

fn analyze_golden(name: &str, signature: &str, kernel: &str, limit: Duration) -> Outcome {
    let start = Instant::now();
    let r = commands::analyze(&format!("gallery://{name}"), Settings::default())
        .map_err(|e| e.to_string())?;
    within(start, limit, name)?;
    let v = &r.verdicts;
    check(v["signature"] == signature, || {
        format!("signature {}", v["signature"])
    })?;
    check(v["kernel_dim"] == kernel, || {
        format!("kernel dim {}", v["kernel_dim"])
    })?;
    check(r.exit_code == 0, || format!("exit {}", r.exit_code))?;
    Ok(format!(
        "signature {}, kernel dim {}, effective {}, invariant {}, nil-invariant {}",
        v["signature"], v["kernel_dim"], v["effective"], v["invariant"], v["nil_invariant"]
    ))
}

fn criterion_1() -> Outcome {
    let detail = analyze_golden("ex-3-8", "(3,3,3)", "3", Duration::from_secs(1))?;
    let r =
        commands::analyze("gallery://ex-3-8", Settings::default()).map_err(|e| e.to_string())?;
    let v = &r.verdicts;
    check(
        v["effective"] == "true" && v["invariant"] == "false" && v["nil_invariant"] == "holds",
        || detail.clone(),
    )?;
    Ok(detail)
}

fn criterion_2() -> Outcome {
    analyze_golden("ex-3-9", "(15,3,3)", "3", Duration::from_secs(5))
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for n in [2, 3, 4, 5, 6] {
        let start = Instant::now();
        let case = verify_euclidean(n).map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(30), &format!("n = {n}"))?;
        if n == 3 {
            check(case.verdict == EuclideanVerdict::Exception, || {
                format!("n = 3 verdict {:?}", case.verdict)
            })?;
            let pairing = case
                .nondegenerate_invariant
                .as_ref()
                .ok_or("n = 3: no nondegenerate invariant witness")?;
            check(pairing.signature() == (3, 3, 0), || {
                format!("n = 3 witness signature {:?}", pairing.signature())
            })?;
            // the witness pairs so(3) with R^3 and vanishes on so(3) × so(3)
            let g = pairing.gram();
            check((0..3).all(|a| (0..3).all(|b| g[(a, b)].is_zero())), || {
                "n = 3 witness does not vanish on so(3)".into()
            })?;
        } else {
            check(
                case.verdict == EuclideanVerdict::RadicalInKernel && case.radical_in_every_kernel,
                || format!("n = {n} verdict {:?}", case.verdict),
            )?;
        }
        notes.push(format!(
            "n={n}: dim {} ({:.2?})",
            case.solution_dim,
            start.elapsed()
        ));
    }
    for (n, want) in [(3, 7), (4, 21)] {
        let fast = verify_euclidean(n).map_err(|e| e.to_string())?.solution_dim;
        let naive = support::naive_solution_dim(n);
        check(fast == want && naive == want, || {
            format!("n = {n}: solver {fast}, naive {naive}, expected {want}")
        })?;
    }
    notes.push("naive solver agrees on 7 and 21".into());
    Ok(notes.join("; "))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let r = commands::verify_skew_pairing(&[0, 1, 2, 3], false).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = (0..4)
        .map(|l| verify_skew_pairing(l).map(|c| c.solution_dim))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(10), "skew-pairing sweep")?;
    check(dims == [3, 1, 0, 0], || format!("dimensions {dims:?}"))?;
    check(r.verdicts["l=1"] == "killing-line", || {
        format!("l = 1 verdict {}", r.verdicts["l=1"])
    })?;
    Ok(format!("dimensions {dims:?}, l=1 proportional to Killing"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut max_dim = 0;
    for seed in 0..50 {
        let inst = random_instance(seed, Profile::MixedThreeFactor).map_err(|e| e.to_string())?;
        let n = inst.algebra.dim();
        max_dim = max_dim.max(n);
        check(n <= 24, || format!("seed {seed}: dim {n}"))?;
        let out =
            abelian_radical_decompose(&inst.algebra, &inst.form).map_err(|e| e.to_string())?;
        let Decomposition::Decomposed(report) = out else {
            return Err(format!("seed {seed}: {out:?}"));
        };
        check(report.all_verified(), || {
            format!(
                "seed {seed}: failed {:?}",
                report.failed().map(|c| &c.name).collect::<Vec<_>>()
            )
        })?;
        for (i, (got, want)) in report.fingerprints.iter().zip(&inst.factors).enumerate() {
            check(
                got.dim == want.dim && got.killing_signature == want.killing_signature,
                || format!("seed {seed}, factor {}: {got:?} vs {want:?}", i + 1),
            )?;
        }
    }
    within(start, Duration::from_secs(30), "50 decompositions")?;
    Ok(format!(
        "50 instances, max dim {max_dim}, {:.2?}",
        start.elapsed()
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = Vec::new();
    for name in entry_names() {
        let e = gallery_entry(name, 0).map_err(|e| e.to_string())?;
        let Some(form) = e.form.as_ref() else {
            continue;
        };
        let levi = e.algebra.levi_subalgebra().map_err(|e| e.to_string())?;
        let a = analyze_with(&e.algebra, form, &levi).map_err(|e| e.to_string())?;
        if !a.nil_invariant.holds() {
            continue;
        }
        let c = gs_invariance_check(&e.algebra, form, &levi, &a);
        check(c.verified() && c.clauses.len() == 2, || {
            format!("{name}: {c:?}")
        })?;
        checked.push(name);
    }
    check(checked.len() >= 10, || {
        format!("only {} entries checked", checked.len())
    })?;
    Ok(format!("{} nil-invariant entries", checked.len()))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for seed in 0..100 {
        let inst = random_semidirect(seed, 20).map_err(|e| e.to_string())?;
        let g = &inst.algebra;
        check(g.dim() <= 20, || format!("seed {seed}: dim {}", g.dim()))?;
        let levi = g.levi_subalgebra().map_err(|e| e.to_string())?;
        let (s, r) = (&levi.levi.space, &levi.radical.space);
        check(g.is_subalgebra(s), || {
            format!("seed {seed}: not a subalgebra")
        })?;
        let complement =
            s.intersect(r).is_ok_and(|x| x.is_zero()) && s.sum(r).is_ok_and(|x| x.is_whole());
        check(complement, || {
            format!("seed {seed}: does not complement the radical")
        })?;
        let killing = g.subalgebra(s).map_err(|e| e.to_string())?.killing_form();
        check(killing.is_nondegenerate(), || {
            format!("seed {seed}: degenerate Killing form")
        })?;
        check(
            levi.levi.dim() == inst.levi_dim && levi.radical.dim() == inst.radical_dim,
            || {
                format!(
                    "seed {seed}: dims {} + {}",
                    levi.levi.dim(),
                    levi.radical.dim()
                )
            },
        )?;
    }
    within(start, Duration::from_secs(30), "100 Levi round-trips")?;
    Ok(format!("100 instances, {:.2?}", start.elapsed()))
}

fn criterion_8() -> Outcome {
    let mut verified = Vec::new();
    let mut outside = Vec::new();
    let entries =
        entry_names().map(|n| (n, 0)).chain((1..4).flat_map(|s| {
            ["random-euclidean", "random-cotangent", "random-mixed"].map(|n| (n, s))
        }));
    for (name, seed) in entries {
        let e = gallery_entry(name, seed).map_err(|e| e.to_string())?;
        let Some(form) = e.form.as_ref() else {
            continue;
        };
        let levi = e.algebra.levi_subalgebra().map_err(|e| e.to_string())?;
        let a = analyze_with(&e.algebra, form, &levi).map_err(|e| e.to_string())?;
        if a.relative_index > 2 {
            continue;
        }
        let c = index2_structure_check(&e.algebra, form, &levi, &a);
        match c.status {
            Status::Verified if c.clauses.len() == 5 => verified.push(format!("{name}#{seed}")),
            Status::NotApplicable => outside.push(format!("{name}#{seed}")),
            _ => return Err(format!("{name} (seed {seed}): {c:?}")),
        }
    }
    check(verified.len() >= 5, || {
        format!("only {} entries verified", verified.len())
    })?;
    Ok(format!(
        "{} entries verified; hypotheses unmet on {}",
        verified.len(),
        if outside.is_empty() {
            "none".into()
        } else {
            outside.join(", ")
        }
    ))
}

fn criterion_9() -> Outcome {
    let flags = |target| -> Result<Vec<(String, String)>, String> {
        let r = commands::audit_stabilizer("gallery://ex-4-7", target, Settings::default())
            .map_err(|e| e.to_string())?;
        Ok(r.verdicts
            .iter()
            .filter(|(k, _)| k.as_str() != "all_hold")
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect())
    };
    let failing = |fs: &[(String, String)]| -> Vec<String> {
        fs.iter()
            .filter(|(_, v)| v == "false")
            .map(|(k, _)| k.clone())
            .collect()
    };
    let main = flags(AuditTarget::Annotation)?;
    check(main.len() == 6 && failing(&main).is_empty(), || {
        format!("stabilizer fails {:?}", failing(&main))
    })?;
    let radical = failing(&flags(AuditTarget::Radical)?);
    check(radical == ["phi_nontrivial"], || {
        format!("h = radical fails {radical:?}")
    })?;
    let levi = failing(&flags(AuditTarget::Levi)?);
    check(levi == ["projects_onto_radical"], || {
        format!("h = Levi fails {levi:?}")
    })?;
    Ok("all six flags hold; radical fails phi_nontrivial only; Levi fails projects_onto_radical only".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 ex-3-8 golden", criterion_1),
        ("2 ex-3-9 golden", criterion_2),
        ("3 Euclidean obstruction", criterion_3),
        ("4 skew-pairing sweep", criterion_4),
        ("5 decomposition round-trip", criterion_5),
        ("6 g_s-invariance", criterion_6),
        ("7 Levi round-trip", criterion_7),
        ("8 index-2 structure", criterion_8),
        ("9 stabilizer audit", criterion_9),
    ];
    let suite = Instant::now();
    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{took:.2?}]: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {name} [{took:.2?}]: {why}");
            }
        }
    }
    let total = suite.elapsed();
    let budget = Duration::from_secs(120);
    if total >= budget {
        failures += 1;
        println!("FAIL suite runtime {total:.2?} exceeds {budget:?}");
    } else {
        println!("PASS suite runtime {total:.2?}");
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
