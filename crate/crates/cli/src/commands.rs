use heckoid_core::audit::{audit_lemmas, small_cancellation_row, lemma_corpus, Check};
use heckoid_core::heckoid::{
    canonical_class, cross_check, enumerate_epimorphism_slopes, epimorphism_exists, is_null_homotopic, make_context,
    scan_interval_patterns, DecisionReport, EpimorphismReport,
};
use heckoid_core::words::{
    cyclic_s_sequence, cs_of_slope, is_cyclically_alternating, relator_word, s_decomposition, s_of_slope,
    s_sequence, t_sequence, Word,
};
use heckoid_core::{cf_from_slope, Result, Slope};
use serde::Serialize;
use serde_json::json;

use crate::{Cli, Command, Format, Group, Verify};

pub enum Status {
    Clean,
    Violations,
}

fn emit_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

pub fn run(cli: &Cli) -> Result<Status> {
    let format = cli.format;
    let text = |default: Format| format.unwrap_or(default) == Format::Text;
    match &cli.command {
        Command::Relator { r } => relator(r, text(Format::Text)),
        Command::Seq { word } => seq(word, text(Format::Text)),
        Command::Reduce { s, group } => reduce(s, group, text(Format::Text)),
        Command::Decide { s, group } => decide(s, group, text(Format::Json)),
        Command::Epis { group, max_denom } => epis(group, *max_denom, text(Format::Text)),
        Command::Verify { selector } => verify(selector, text(Format::Text)),
    }
}

fn relator(r: &Slope, text: bool) -> Result<Status> {
    let cf = cf_from_slope(r)?;
    let u = relator_word(r)?;
    let s = s_of_slope(r)?;
    let cs = cs_of_slope(r)?;
    let t = (cf.len() >= 2).then(|| t_sequence(r)).transpose()?;
    let d = (!r.is_integer()).then(|| s_decomposition(r)).transpose()?;
    if text {
        println!("r = {r} = {cf}");
        println!("u_r = {u}");
        println!("|u_r| = {}", u.len());
        println!("S = {s}");
        println!("CS = {cs}");
        if let Some(t) = &t {
            println!("T = {t}");
        }
        if let Some(d) = &d {
            println!("S1 = {}", d.s1);
            println!("S2 = {}", d.s2);
        }
    } else {
        emit_json(&json!({
            "r": r, "continued_fraction": cf.to_string(), "word": u, "length": u.len(),
            "s": s, "cs": cs, "t": t, "decomposition": d,
        }));
    }
    Ok(Status::Clean)
}

fn seq(word: &str, text: bool) -> Result<Status> {
    let w: Word = word.parse()?;
    let s = s_sequence(&w)?;
    let cs = w.is_cyclically_reduced().then(|| cyclic_s_sequence(&w)).transpose()?;
    let alternating = is_cyclically_alternating(&w);
    if text {
        println!("S = {s}");
        match &cs {
            Some(cs) => println!("CS = {cs}"),
            None => println!("CS undefined: word is not cyclically reduced"),
        }
        println!("cyclically alternating: {alternating}");
    } else {
        emit_json(&json!({ "word": w, "s": s, "cs": cs, "cyclically_alternating": alternating }));
    }
    Ok(Status::Clean)
}

fn reduce(s: &Slope, group: &Group, text: bool) -> Result<Status> {
    let ctx = make_context(&group.r, group.n)?;
    let report = is_null_homotopic(&ctx, s)?;
    debug_assert_eq!(report.canonical, canonical_class(&ctx, s)?);
    if text {
        println!("{}", report.canonical);
        println!("witness: {}", if report.witness.is_empty() { "(empty)".to_string() } else { report.witness.to_string() });
    } else {
        emit_json(&json!({ "r": report.r, "n": report.n, "s": s, "canonical": report.canonical, "witness": report.witness }));
    }
    Ok(Status::Clean)
}

#[derive(Serialize)]
struct Decision {
    #[serde(flatten)]
    null_homotopy: DecisionReport,
    epimorphism: EpimorphismReport,
}

fn decide(s: &Slope, group: &Group, text: bool) -> Result<Status> {
    let ctx = make_context(&group.r, group.n)?;
    let decision = Decision { null_homotopy: is_null_homotopic(&ctx, s)?, epimorphism: epimorphism_exists(&ctx, s)? };
    if text {
        let d = &decision.null_homotopy;
        println!("null-homotopic: {} (canonical {}, method {:?}, consistent {})", d.verdict, d.canonical, d.method, d.consistent);
        println!("witness: {}", d.witness);
        let e = &decision.epimorphism;
        match e.via {
            Some(via) => println!("epimorphism: true via {via:?}"),
            None => println!("epimorphism: false"),
        }
    } else {
        emit_json(&decision);
    }
    Ok(Status::Clean)
}

fn epis(group: &Group, max_denom: u64, text: bool) -> Result<Status> {
    let ctx = make_context(&group.r, group.n)?;
    let slopes = enumerate_epimorphism_slopes(&ctx, max_denom)?;
    if text {
        for s in &slopes {
            println!("{s}");
        }
        eprintln!("{} slopes with denominator <= {max_denom}", slopes.len());
    } else {
        emit_json(&json!({ "r": group.r, "n": group.n, "max_denominator": max_denom, "slopes": slopes }));
    }
    Ok(Status::Clean)
}

fn status(passed: bool) -> Status {
    if passed {
        Status::Clean
    } else {
        Status::Violations
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify(selector: &Verify, text: bool) -> Result<Status> {
    match selector {
        Verify::Lemmas { max_p } => {
            eprintln!("checking {} slopes", lemma_corpus(*max_p).len());
            let report = audit_lemmas(*max_p, &Check::ALL);
            if text {
                println!("{}: {} slopes with p <= {max_p}", verdict(report.passed()), report.slopes);
                for (check, applied) in &report.applied {
                    println!("  {check:?}: {applied} slopes");
                }
                for f in &report.failures {
                    println!("  {} {:?}: {}", f.r, f.check, f.detail);
                }
            } else {
                emit_json(&report);
            }
            Ok(status(report.passed()))
        }
        Verify::Smallcancel { max_p, indices } => {
            let corpus = lemma_corpus(*max_p);
            let mut rows = Vec::new();
            for (i, r) in corpus.iter().enumerate() {
                eprintln!("[{}/{}] r = {r}", i + 1, corpus.len());
                for &n in indices {
                    rows.push(small_cancellation_row(r, n)?);
                }
            }
            let passed = rows.iter().all(|row| row.passed());
            if text {
                println!("{}: {} (r, n) pairs", verdict(passed), rows.len());
                for row in rows.iter().filter(|row| !row.passed()) {
                    println!("  {row:?}");
                }
            } else {
                emit_json(&json!({ "passed": passed, "rows": rows }));
            }
            Ok(status(passed))
        }
        Verify::Patterns { group, max_denom } => {
            let report = scan_interval_patterns(&make_context(&group.r, group.n)?, *max_denom)?;
            if text {
                println!(
                    "{}: {} slopes scanned, {} violations",
                    verdict(report.passed()),
                    report.scanned,
                    report.violations.len()
                );
                let patterns: Vec<String> = report.patterns.patterns.iter().map(|p| p.to_string()).collect();
                println!("  patterns: {}", patterns.join(" "));
                for s in &report.violations {
                    println!("  {s}");
                }
            } else {
                emit_json(&report);
            }
            Ok(status(report.passed()))
        }
        Verify::Crosscheck { group, max_denom, orbit_max_denom, depth } => {
            let ctx = make_context(&group.r, group.n)?;
            let report = cross_check(&ctx, *orbit_max_denom, *max_denom, *depth)?;
            if text {
                println!(
                    "{}: {} orbit points, {} interval slopes, {} inconsistencies",
                    verdict(report.passed()),
                    report.orbit_checked,
                    report.interval_checked,
                    report.inconsistencies.len()
                );
                for i in &report.inconsistencies {
                    println!("  {} ({:?}): null-homotopic {}, pattern {:?}", i.s, i.side, i.null_homotopic, i.pattern_found);
                }
            } else {
                emit_json(&report);
            }
            Ok(status(report.passed()))
        }
    }
}
