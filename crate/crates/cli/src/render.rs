use std::fmt::Write;

use weakid_core::bcs::ChainEntry;
use weakid_core::disc::DiscVerdict;
use weakid_core::repro::ReproReport;
use weakid_core::weakid::{ChainReport, HeightReport};
use weakid_core::Verdict;

pub fn verdict(v: &Verdict) -> String {
    let mut out = format!("{} at height {}\n", v.status, v.height);
    if let Some(m) = &v.modulo {
        let _ = writeln!(
            out,
            "verbal image order {}, quotient order {}",
            m.verbal_order, m.quotient_order
        );
    }
    for c in v.witness.iter().flatten() {
        let assignment: Vec<String> = c
            .assignment
            .iter()
            .map(|(g, x)| format!("{g} -> {x}"))
            .collect();
        let _ = writeln!(
            out,
            "  copy {} ({}): {}",
            c.copy,
            c.word,
            assignment.join(", ")
        );
    }
    let s = &v.stats;
    let _ = writeln!(
        out,
        "nodes {}, assignments {}, centralizer prunes {}, symmetry prunes {}",
        s.nodes, s.assignments_tested, s.centralizer_prunes, s.symmetry_prunes
    );
    out
}

pub fn height(r: &HeightReport) -> String {
    let mut out = String::new();
    for v in &r.verdicts {
        let _ = writeln!(out, "height {}: {}", v.height, v.status);
    }
    match r.height {
        Some(h) => {
            let _ = writeln!(out, "least height {h}");
        }
        None => {
            let _ = writeln!(out, "no height up to {} ({})", r.cutoff, r.status);
        }
    }
    out
}

pub fn chain(r: &ChainReport) -> String {
    let mut out = String::new();
    for s in &r.steps {
        let _ = writeln!(
            out,
            "step {}: {} modulo {} at height {}: {}",
            s.step, s.words, s.modulo, s.verdict.height, s.verdict.status
        );
    }
    let _ = writeln!(out, "chain {}", r.status);
    out
}

pub fn centralizer_chain(entries: &[ChainEntry], complete: bool) -> String {
    let mut out = String::new();
    for e in entries {
        let _ = writeln!(
            out,
            "{:<16} |Cen| = {}",
            e.added_element.as_deref().unwrap_or("-"),
            e.centralizer_order
        );
    }
    let _ = writeln!(
        out,
        "length {}{}",
        entries.len(),
        if complete { "" } else { " (incomplete)" }
    );
    out
}

pub fn disc(v: &DiscVerdict) -> String {
    let mut out = format!("{}\n", v.status);
    if let Some(c) = &v.certificate {
        let _ = writeln!(out, "certificate: {}", c.join(" "));
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "phi on generators: {}", w.phi.join(" "));
        let _ = writeln!(out, "psi on generators: {}", w.psi.join(" "));
    }
    if let Some(r) = &v.reason {
        let _ = writeln!(out, "{r}");
    }
    out
}

pub fn repro(r: &ReproReport) -> String {
    let mut out = format!("{}: {}\n", r.scenario, if r.pass { "PASS" } else { "FAIL" });
    for row in &r.rows {
        let _ = writeln!(
            out,
            "  [{}] {}: expected {}, computed {}",
            if row.pass { "ok" } else { "!!" },
            row.check,
            row.expected,
            row.computed
        );
    }
    out
}
