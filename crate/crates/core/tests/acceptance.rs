//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines always appear in `cargo test` output; exits nonzero if any fails.

mod common;

use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use trigonal::coefficients::verify_range;
use trigonal::forward::{component_tetragonal, construct, sections_action};
use trigonal::format;
use trigonal::inverse::{classify_fiber, invert, Stratum, TetragonalCover};
use trigonal::toolkit::{configs_for, run_batch, sample_tower, BatchReport, Suite};
use trigonal::tower::BlockSystem;

use common::{cover, fixtures_dir, general_g3, p};

const GENERA: [u64; 6] = [3, 4, 5, 6, 7, 8];
const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn batch_line(rep: &BatchReport) -> String {
    format!(
        "{}: {}/{} instances, {} checks failed",
        rep.suite, rep.passed, rep.instances, rep.checks_failed
    )
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail = format!("{}; {:.2} s (limit {} s)", out.detail, elapsed.as_secs_f64(), limit.as_secs());
    out.passed &= elapsed < limit;
    out
}

fn general_suite() -> Outcome {
    let rep = run_batch(Suite::GeneralProps, &configs_for(Suite::GeneralProps, &GENERA, 200, SEED));
    Outcome {
        passed: rep.all_passed() && rep.instances == 200,
        detail: batch_line(&rep),
    }
}

fn special_suite() -> Outcome {
    let cfgs = configs_for(Suite::SpecialProps, &GENERA, 100, SEED);
    let rep = run_batch(Suite::SpecialProps, &cfgs);
    let mut m1 = 0;
    for cfg in &cfgs {
        let t = sample_tower(cfg).expect("sampled in the batch already");
        let x = component_tetragonal(&construct(&t)).ok();
        let x = x.and_then(|c| TetragonalCover::new(c.cover).ok());
        if x.is_some_and(|x| x.stratum() == Stratum::M1 && x.genus() == t.genus()) {
            m1 += 1;
        }
    }
    Outcome {
        passed: rep.all_passed() && rep.instances == 100 && m1 == 100,
        detail: format!("{}; {m1}/100 tetragonal components in M1 of genus g", batch_line(&rep)),
    }
}

fn special_roundtrip() -> Outcome {
    let rep = run_batch(Suite::SpecialRoundtrip, &configs_for(Suite::SpecialRoundtrip, &GENERA, 100, SEED));
    Outcome {
        passed: rep.all_passed() && rep.instances == 100,
        detail: batch_line(&rep),
    }
}

fn etale_roundtrip() -> Outcome {
    let props = run_batch(Suite::EtaleProps, &configs_for(Suite::EtaleProps, &GENERA, 100, SEED));
    let trips = run_batch(Suite::EtaleRoundtrip, &configs_for(Suite::EtaleRoundtrip, &GENERA, 100, SEED));
    Outcome {
        passed: props.all_passed() && trips.all_passed() && props.instances == 100 && trips.instances == 100,
        detail: format!("{}; {}", batch_line(&props), batch_line(&trips)),
    }
}

fn fibre_dictionary() -> Outcome {
    let b = BlockSystem::standard();
    let y = |c: &[&[usize]]| sections_action(&p(6, c), &b).unwrap().cycle_type();
    let mut failures = Vec::new();
    let mut expect = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    expect("block transposition", y(&[&[1, 3], &[2, 4]]) == [2, 2, 1, 1, 1, 1]);
    expect("block 3-cycle", y(&[&[1, 3, 5], &[2, 4, 6]]) == [3, 3, 1, 1]);
    expect("weight-1 flip on Y", y(&[&[1, 2]]) == [2, 2, 2, 2]);
    let r = construct(&general_g3());
    expect("weight-1 flip on X", r.x.ramification_profile("f1").unwrap() == [2, 2]);

    let x = TetragonalCover::new(cover(
        4,
        &[("d", &[&[1, 2], &[3, 4]]), ("e", &[&[1, 2], &[3, 4]]), ("a", &[&[1, 2, 3, 4]]), ("b", &[&[1, 4, 3, 2]])],
    ))
    .unwrap();
    let inv = invert(&x);
    let types: Vec<u8> = inv.fibres.iter().map(|(_, t)| t.number()).collect();
    expect("fibre types", types == [4, 4, 5, 5]);
    // type 4: C' unbranched, node between the two fixed partitions
    let n4 = inv.c_model.nodes().iter().find(|n| n.label() == "d").unwrap();
    let (a, c) = n4.branches();
    expect("type 4 node rule", !inv.c.has_label("d") && a.cycle == [1] && c.cycle == [2]);
    // type 5: node between a fixed partition and a ramified swapped pair
    let n5 = inv.c_model.nodes().iter().find(|n| n.label() == "a").unwrap();
    let (a, c) = n5.branches();
    let marked = inv.type5.iter().find(|m| m.label == "a").unwrap();
    expect(
        "type 5 node rule",
        a.cycle.len() + c.cycle.len() == 3 && marked.ramified_branch.cycle.len() == 2,
    );
    expect("(4) classified", classify_fiber(&p(4, &[&[1, 3, 2, 4]])).unwrap().number() == 5);
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "all local types".into()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    }
}

fn coefficients() -> Outcome {
    match verify_range(200) {
        Ok(rep) => {
            let sample: Vec<String> = rep.rows[..4]
                .iter()
                .map(|r| format!("g={}: {}", r.g, r.with_two_power_sum))
                .collect();
            Outcome {
                passed: rep.all_passed,
                detail: format!(
                    "g=3..200 exact; 2^k variant sums {} ..., differs from 1 at {} genera",
                    sample.join(", "),
                    rep.with_two_power_mismatches.len()
                ),
            }
        }
        Err(e) => Outcome {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn determinism() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for entry in fs::read_dir(fixtures_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let text = fs::read_to_string(&path).unwrap();
        let again = match name.split('_').next().unwrap() {
            "cover" => format::read_cover(&text).and_then(|c| format::write_cover(&c)),
            "tower" => format::read_tower(&text, Default::default()).and_then(|t| format::write_tower(&t)),
            "forward" => format::read_forward(&text).and_then(|f| format::write_forward(&f)),
            "inverse" => format::read_inverse(&text).and_then(|i| format::write_inverse(&i)),
            "batch" => format::from_str::<BatchReport>(&text).and_then(|b| format::to_pretty(&b)),
            "check" => format::from_str::<trigonal::report::CheckReport>(&text).and_then(|c| format::to_pretty(&c)),
            "coefficients" => format::from_str::<trigonal::coefficients::CoefficientReport>(&text)
                .and_then(|c| format::to_pretty(&c)),
            _ => continue,
        };
        count += 1;
        if again.ok().as_deref() != Some(text.as_str()) {
            bad.push(name);
        }
    }
    let cfgs = configs_for(Suite::GeneralProps, &GENERA, 60, SEED);
    let reports: Vec<String> = [1, 2, 4, 8]
        .into_iter()
        .map(|threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            format::to_pretty(&pool.install(|| run_batch(Suite::GeneralProps, &cfgs))).unwrap()
        })
        .collect();
    let identical = reports.windows(2).all(|w| w[0] == w[1]);
    Outcome {
        passed: bad.is_empty() && count > 0 && identical,
        detail: format!(
            "{count} fixtures round-trip ({} mismatched); batch report byte-identical on 1/2/4/8 threads: {identical}",
            bad.len()
        ),
    }
}

fn main() -> ExitCode {
    let ten = Duration::from_secs(10);
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("general-case suite", Box::new(move || timed(ten, general_suite))),
        ("special-case suite", Box::new(move || timed(ten, special_suite))),
        ("special round trip", Box::new(move || timed(ten, special_roundtrip))),
        ("etale round trip", Box::new(move || timed(ten, etale_roundtrip))),
        ("fibre dictionary", Box::new(fibre_dictionary)),
        ("coefficient identities", Box::new(|| timed(Duration::from_secs(1), coefficients))),
        ("determinism and formats", Box::new(determinism)),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let out = run();
        all &= out.passed;
        println!(
            "acceptance {} {name}: {} ({})",
            i + 1,
            if out.passed { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
