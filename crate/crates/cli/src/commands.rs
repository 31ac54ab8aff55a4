use std::path::Path;

use hyperscheme::fixtures;
use hyperscheme::generalized::hypergroup_from_generalized;
use hyperscheme::harmonic::{character_table_with_seed, dual_identity_residual, dual_products};
use hyperscheme::hypergroup::{hypergroup_from_scheme, verify_hypergroup, verify_hypergroup_with_tol};
use hyperscheme::io;
use hyperscheme::scheme::{
    audit_multass, double_coset_representatives, hecke_convolution, scheme_from_group_quotient, scheme_matrices,
    FiniteGroup,
};
use hyperscheme::{tolerance, GeneralizedScheme, Scheme};
use serde_json::{json, Value};

use crate::config::{write_file, CliError, RunConfig};
use crate::family;

/// File stem used to name reports.
fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned())
}

/// Fixture names with path separators and spaces replaced.
pub fn slug(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

fn announce(command: &str, passed: bool, files: &[std::path::PathBuf]) {
    let files: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    println!("{}", json!({"command": command, "passed": passed, "files": files}));
}

pub fn verify_report(s: &Scheme) -> (Value, bool) {
    let multass = audit_multass(s.numbers());
    let bose_mesner = scheme_matrices(s).verify(s);
    let d = s.num_classes();
    let p: Vec<Vec<Vec<i64>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| s.intersection(i, j, k)).collect())
                .collect()
        })
        .collect();
    let involution: Vec<&String> = s.involution().iter().map(|&t| &s.classes()[t]).collect();
    let passed = multass.all_passed() && bose_mesner.all_passed();
    let report = json!({
        "command": "verify",
        "passed": passed,
        "points": s.num_points(),
        "classes": s.classes(),
        "identity": s.classes()[s.identity_class()],
        "involution": involution,
        "valencies": s.valencies(),
        "intersection_numbers": p,
        "flags": {
            "commutative": s.is_commutative(),
            "symmetric": s.is_symmetric(),
            "unimodular": s.is_unimodular(),
        },
        "multass": multass,
        "bose_mesner": bose_mesner,
    });
    (report, passed)
}

pub fn hypergroup_report(s: &Scheme) -> (Value, bool) {
    let h = hypergroup_from_scheme(s);
    let audit = verify_hypergroup(&h);
    let passed = audit.all_passed();
    let report = json!({
        "command": "hypergroup",
        "passed": passed,
        "hypergroup": io::hypergroup_to_json(&h),
        "commutative": h.is_commutative(),
        "symmetric": h.is_symmetric(),
        "audit": audit,
    });
    (report, passed)
}

pub fn chartable_report(s: &Scheme, seed: u64) -> Result<(Value, String, bool), CliError> {
    let tbl = character_table_with_seed(&hypergroup_from_scheme(s), seed)?;
    let csv = io::character_table_csv(&tbl);
    let passed = tbl.multiplicativity_residual() <= tolerance::CHARACTER;
    let report = json!({
        "command": "chartable",
        "passed": passed,
        "classes": tbl.hypergroup().classes(),
        "table": tbl,
    });
    Ok((report, csv, passed))
}

pub fn dualtable_report(s: &Scheme, seed: u64) -> Result<(Value, bool), CliError> {
    let tbl = character_table_with_seed(&hypergroup_from_scheme(s), seed)?;
    let products = dual_products(&tbl)?;
    let mut report = io::dual_table_json(&tbl, &products);
    let identity_residual = dual_identity_residual(&tbl);
    let passed = report["all_nonnegative"] == json!(true) && identity_residual <= tolerance::FOURIER_ROUND_TRIP;
    report["command"] = json!("dualtable");
    report["passed"] = json!(passed);
    report["identity_residual"] = json!(hyperscheme::scalar::fmt17(identity_residual));
    Ok((report, passed))
}

pub fn quotient_report(g: &FiniteGroup, h: &[usize]) -> Result<(Value, bool), CliError> {
    let s = scheme_from_group_quotient(g, h)?;
    let hyp = hypergroup_from_scheme(&s);
    let reps = double_coset_representatives(g, h)?;
    let mut mismatches = Vec::new();
    for a in 0..s.num_classes() {
        for b in 0..s.num_classes() {
            if hecke_convolution(g, h, reps[a], reps[b])?.as_slice() != hyp.conv().row(a, b) {
                mismatches.push(format!("({}, {})", s.classes()[a], s.classes()[b]));
            }
        }
    }
    let (verify, verified) = verify_report(&s);
    let passed = verified && mismatches.is_empty();
    let report = json!({
        "command": "quotient",
        "passed": passed,
        "scheme": io::scheme_to_json(&s),
        "hecke_mismatches": mismatches,
        "verify": verify,
    });
    Ok((report, passed))
}

pub fn generalized_report(g: &GeneralizedScheme, tol: f64) -> (Value, bool) {
    let audit = g.audit();
    let hyp = hypergroup_from_generalized(g);
    let (hyp_json, hyp_audit, hyp_ok) = match &hyp {
        Ok(h) => {
            let a = verify_hypergroup_with_tol(h, tol);
            let ok = a.all_passed();
            (io::hypergroup_to_json(h), json!(a), ok)
        }
        Err(e) => (Value::Null, json!({"error": e.kind(), "message": e.to_string()}), false),
    };
    let passed = hyp_ok;
    let report = json!({
        "command": "generalized",
        "passed": passed,
        "audit": audit,
        "commutative": g.is_commutative(),
        "symmetric": g.is_symmetric(),
        "deformed_hypergroup": hyp_json,
        "deformed_audit": hyp_audit,
    });
    (report, passed)
}

pub fn verify(config: &RunConfig, path: &Path) -> Result<bool, CliError> {
    let s = io::read_scheme(path)?;
    let (report, passed) = verify_report(&s);
    let file = config.write(&format!("{}.verify.json", stem(path)), &io::to_pretty(&report))?;
    announce("verify", passed, &[file]);
    Ok(passed)
}

pub fn hypergroup(config: &RunConfig, path: &Path) -> Result<bool, CliError> {
    let s = io::read_scheme(path)?;
    let (report, passed) = hypergroup_report(&s);
    let file = config.write(&format!("{}.hypergroup.json", stem(path)), &io::to_pretty(&report))?;
    announce("hypergroup", passed, &[file]);
    Ok(passed)
}

pub fn chartable(config: &RunConfig, path: &Path) -> Result<bool, CliError> {
    let s = io::read_scheme(path)?;
    let (report, csv, passed) = chartable_report(&s, config.seed)?;
    let a = config.write(&format!("{}.chartable.json", stem(path)), &io::to_pretty(&report))?;
    let b = config.write(&format!("{}.chartable.csv", stem(path)), &csv)?;
    announce("chartable", passed, &[a, b]);
    Ok(passed)
}

pub fn dualtable(config: &RunConfig, path: &Path) -> Result<bool, CliError> {
    let s = io::read_scheme(path)?;
    let (report, passed) = dualtable_report(&s, config.seed)?;
    let file = config.write(&format!("{}.dualtable.json", stem(path)), &io::to_pretty(&report))?;
    announce("dualtable", passed, &[file]);
    Ok(passed)
}

pub fn quotient(config: &RunConfig, path: &Path) -> Result<bool, CliError> {
    let (g, h) = io::parse_cayley(&io::read_text(path)?)?;
    let (report, passed) = quotient_report(&g, &h)?;
    let file = config.write(&format!("{}.quotient.json", stem(path)), &io::to_pretty(&report))?;
    announce("quotient", passed, &[file]);
    Ok(passed)
}

pub fn generalized(config: &RunConfig, path: &Path) -> Result<bool, CliError> {
    let g = io::read_generalized(path)?;
    let (report, passed) = generalized_report(&g, config.tol_or(tolerance::CLOSURE));
    let file = config.write(&format!("{}.generalized.json", stem(path)), &io::to_pretty(&report))?;
    announce("generalized", passed, &[file]);
    Ok(passed)
}

/// Writes every built-in scheme and group pair as an input file.
pub fn fixtures(config: &RunConfig) -> Result<bool, CliError> {
    let mut files = Vec::new();
    for (name, s) in fixtures::all_schemes() {
        files.push(config.write(
            &format!("{}.json", slug(&name)),
            &io::to_pretty(&io::scheme_to_json(&s)),
        )?);
    }
    for (name, g, h) in fixtures::group_pairs() {
        files.push(config.write(
            &format!("{}.cayley.json", slug(&name)),
            &io::to_pretty(&io::cayley_to_json(&g, &h)),
        )?);
    }
    announce("fixtures", true, &files);
    Ok(true)
}

/// Every report on the built-in inputs, in a fixed order.
pub fn suite(config: &RunConfig) -> Result<bool, CliError> {
    let out = &config.out;
    let mut all = true;
    let mut files = Vec::new();
    let mut put = |dir: &str, name: String, contents: String| -> Result<(), CliError> {
        files.push(write_file(&out.join(dir), &name, &contents)?);
        Ok(())
    };
    for (name, s) in fixtures::all_schemes() {
        let n = slug(&name);
        let (v, ok) = verify_report(&s);
        all &= ok;
        put("schemes", format!("{n}.verify.json"), io::to_pretty(&v))?;
        let (v, ok) = hypergroup_report(&s);
        all &= ok;
        put("schemes", format!("{n}.hypergroup.json"), io::to_pretty(&v))?;
        if s.is_commutative() {
            let (v, csv, ok) = chartable_report(&s, config.seed)?;
            all &= ok;
            put("schemes", format!("{n}.chartable.json"), io::to_pretty(&v))?;
            put("schemes", format!("{n}.chartable.csv"), csv)?;
            let (v, ok) = dualtable_report(&s, config.seed)?;
            all &= ok;
            put("schemes", format!("{n}.dualtable.json"), io::to_pretty(&v))?;
            let (v, ok) = generalized_report(&GeneralizedScheme::classical(&s), config.tol_or(tolerance::CLOSURE));
            all &= ok;
            put("schemes", format!("{n}.generalized.json"), io::to_pretty(&v))?;
        }
    }
    for (name, g, h) in fixtures::group_pairs() {
        let (v, ok) = quotient_report(&g, &h)?;
        all &= ok;
        put("groups", format!("{}.quotient.json", slug(&name)), io::to_pretty(&v))?;
    }
    let gab = hyperscheme::families::GabFamily::new(3.0, 3.0)?;
    put(
        "families",
        "gab_3_3.linearization.csv".into(),
        family::linearization_csv(&gab, 6),
    )?;
    let (csv, _) = family::psd_sweep_csv(config, &gab, -1.5, 1.5, 0.05, 3)?;
    put("families", "gab_3_3.psd_sweep.csv".into(), csv)?;
    let (csv, ok) = family::lp_sweep_csv(config, &gab, 5)?;
    all &= ok;
    put("families", "gab_3_3.lp_sweep.csv".into(), csv)?;
    for r in [0.5, 1.0, 2.0] {
        let fam = hyperscheme::families::CoshFamily::new(r)?;
        let audit = fam.window_audit(config.window)?;
        all &= audit.passed;
        put(
            "families",
            format!("cosh_{}.window.json", slug(&r.to_string())),
            io::to_pretty(&family::cosh_report(&audit)),
        )?;
    }
    announce("suite", all, &files);
    Ok(all)
}
