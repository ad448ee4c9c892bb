//! Markdown renderings for `--format md`.

use std::fmt::Write;

use trigonal::coefficients::CoefficientReport;
use trigonal::covers::BranchedCover;
use trigonal::forward::ForwardResult;
use trigonal::inverse::{FibreType, InverseResult, TetragonalCover};
use trigonal::report::CheckReport;
use trigonal::toolkit::BatchReport;
use trigonal::tower::Tower;

use crate::ValidationReport;

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn genus_cell(c: &BranchedCover) -> String {
    let comps = c.components();
    let genera: Vec<String> = comps
        .iter()
        .map(|k| k.cover.genus().map_or("?".into(), |g| g.to_string()))
        .collect();
    genera.join(" + ")
}

fn cover_row(out: &mut String, name: &str, c: &BranchedCover) {
    let _ = writeln!(
        out,
        "| {name} | {} | {} | {} | {} |",
        c.degree(),
        c.components().len(),
        genus_cell(c),
        c.ramification_degree()
    );
}

const COVER_HEADER: &str = "| curve | degree | components | genus | ramification |\n|---|---|---|---|---|\n";

pub fn validation(rep: &ValidationReport) -> String {
    let mut out = String::from("# Tower validation\n\n");
    if rep.valid {
        let _ = writeln!(
            out,
            "valid {} tower, genus {}{}",
            rep.mode.map(|m| m.to_string()).unwrap_or_default(),
            rep.genus.unwrap_or_default(),
            if rep.low_genus { " (low genus accepted)" } else { "" }
        );
    } else {
        out.push_str("| code | label | message |\n|---|---|---|\n");
        for v in &rep.violations {
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                v.code,
                v.label.as_deref().unwrap_or(""),
                v.message
            );
        }
    }
    out
}

pub fn checks(title: &str, rep: &CheckReport) -> String {
    let mut out = format!("# {title}\n\n| check | result | detail |\n|---|---|---|\n");
    for c in &rep.checks {
        let _ = writeln!(out, "| {} | {} | {} |", c.name, mark(c.passed), c.detail);
    }
    let _ = writeln!(out, "\noverall: {}", mark(rep.passed()));
    out
}

pub fn forward(t: &Tower, r: &ForwardResult) -> String {
    let mut out = format!("# Forward construction\n\n{} tower, genus {}\n\n", t.mode(), t.genus());
    out.push_str(COVER_HEADER);
    cover_row(&mut out, "C~", t.cover());
    cover_row(&mut out, "C", t.h_cover());
    cover_row(&mut out, "Y", &r.y);
    cover_row(&mut out, "X", &r.x);
    cover_row(&mut out, "O", &r.o);
    if let Some(n) = &r.nodes {
        let _ = writeln!(
            out,
            "\nnodes: Y {}, X {}, O {}",
            n.y.nodes().len(),
            n.x.nodes().len(),
            n.o.nodes().len()
        );
    }
    out
}

fn fibre_table(out: &mut String, fibres: &[(String, FibreType)]) {
    out.push_str("| label | type |\n|---|---|\n");
    for (l, t) in fibres {
        let _ = writeln!(out, "| {l} | {} |", t.number());
    }
}

pub fn inverse(x: &TetragonalCover, r: &InverseResult) -> String {
    let mut out = format!(
        "# Inverse construction\n\ninput genus {}, stratum {}\n\n",
        x.genus(),
        x.stratum()
    );
    out.push_str(COVER_HEADER);
    cover_row(&mut out, "X'", x.cover());
    cover_row(&mut out, "C~'", &r.c_tilde);
    cover_row(&mut out, "C'", &r.c);
    let _ = writeln!(
        out,
        "\nnodes: C~' {}, C' {}; arithmetic genus of C' {}\n",
        r.c_tilde_model.nodes().len(),
        r.c_model.nodes().len(),
        r.c_model
            .arithmetic_genus()
            .map_or("?".into(), |g| g.to_string())
    );
    fibre_table(&mut out, &r.fibres);
    out
}

pub fn classification(genus: u64, stratum: &str, fibres: &[(String, FibreType)]) -> String {
    let mut out = format!("# Classification\n\ngenus {genus}, stratum {stratum}\n\n");
    fibre_table(&mut out, fibres);
    out
}

pub fn towers(towers: &[Tower]) -> String {
    let mut out = String::from("# Sampled towers\n\n| # | mode | genus | labels |\n|---|---|---|---|\n");
    for (i, t) in towers.iter().enumerate() {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            i + 1,
            t.mode(),
            t.genus(),
            t.cover().branch_points().len()
        );
    }
    out
}

pub fn coefficients(rep: &CoefficientReport) -> String {
    let mut out = format!(
        "# Coefficient identities, g = {}..={}\n\n| g | reduced sum | chain terms | chain sum | coefficient | with 2^k |\n|---|---|---|---|---|---|\n",
        rep.gmin, rep.gmax
    );
    for r in &rep.rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            r.g,
            r.reduced_identity,
            r.chain_terms.join(", "),
            r.chain_sum,
            r.leading_coefficient,
            r.with_two_power_sum
        );
    }
    let _ = writeln!(out, "\noverall: {}", mark(rep.all_passed));
    out
}

pub fn batch(rep: &BatchReport) -> String {
    let mut out = format!(
        "# Batch {}\n\n{}/{} instances passed, {} of {} checks failed\n",
        rep.suite, rep.passed, rep.instances, rep.checks_failed, rep.checks_run
    );
    if let Some(ms) = rep.elapsed_ms {
        let _ = writeln!(out, "\nelapsed: {ms} ms");
    }
    let failing: Vec<_> = rep.results.iter().filter(|r| !r.passed).collect();
    if !failing.is_empty() {
        out.push_str("\n| index | seed | genus | failure |\n|---|---|---|---|\n");
        for r in failing {
            let what = r.error.clone().unwrap_or_else(|| {
                r.checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            });
            let _ = writeln!(out, "| {} | {} | {} | {} |", r.index, r.seed, r.genus, what);
        }
    }
    out
}
