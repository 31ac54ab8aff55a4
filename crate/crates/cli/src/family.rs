use std::fmt::Write as _;

use hyperscheme::families::{
    chebyshev_lobatto, gab_dual_measure, kernel_psd_on, CoshFamily, CoshWindowAudit, GabBall, GabFamily, LpOutcome,
};
use hyperscheme::io;
use hyperscheme::scalar::fmt17;
use serde_json::{json, Value};

use crate::config::{CliError, RunConfig};

fn slug_params(a: f64, b: f64) -> String {
    crate::commands::slug(&format!("{a}_{b}"))
}

fn announce(command: &str, passed: bool, file: &std::path::Path) {
    println!(
        "{}",
        json!({"command": command, "passed": passed, "files": [file.display().to_string()]})
    );
}

pub fn linearization_csv(fam: &GabFamily, max: usize) -> String {
    io::linearization_csv(max, |m, n| fam.linearization(m, n))
}

/// `x,radius,vertices,min_eigenvalue,psd` rows; the flag reports whether
/// every row inside `[s0, s1]` was PSD.
pub fn psd_sweep_csv(
    config: &RunConfig,
    fam: &GabFamily,
    x_min: f64,
    x_max: f64,
    step: f64,
    radius: usize,
) -> Result<(String, bool), CliError> {
    if !(step > 0.0 && x_max >= x_min && step.is_finite()) || radius == 0 {
        return Err(
            hyperscheme::Error::ParameterOutOfRange("need step > 0, x_max ≥ x_min and radius ≥ 1".into()).into(),
        );
    }
    let balls = (1..=radius)
        .map(|r| GabBall::new(fam, r, config.vertex_budget))
        .collect::<Result<Vec<_>, _>>()?;
    let steps = ((x_max - x_min) / step + 1e-9).floor() as usize;
    let mut out = String::from("x,radius,vertices,min_eigenvalue,psd\n");
    let mut inside_ok = true;
    for i in 0..=steps {
        let x = x_min + step * i as f64;
        for ball in &balls {
            let k = kernel_psd_on(ball, fam, x);
            if x >= fam.s0() && x <= fam.s1() {
                inside_ok &= k.psd;
            }
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                fmt17(x),
                k.radius,
                k.vertices,
                fmt17(k.min_eigenvalue),
                k.psd
            );
        }
    }
    Ok((out, inside_ok))
}

/// `x,y,order,status,value,added_nodes` rows for a `points × points` grid of
/// `[s0, s1]²`; `value` is the slack when feasible and the certificate margin
/// otherwise.
pub fn lp_sweep_csv(config: &RunConfig, fam: &GabFamily, points: usize) -> Result<(String, bool), CliError> {
    if points == 0 {
        return Err(hyperscheme::Error::ParameterOutOfRange("need at least one point".into()).into());
    }
    let grid = chebyshev_lobatto(-fam.s1(), fam.s1(), config.grid_nodes);
    let xs: Vec<f64> = if points == 1 {
        vec![fam.s0()]
    } else {
        (0..points)
            .map(|i| fam.s0() + (fam.s1() - fam.s0()) * i as f64 / (points - 1) as f64)
            .collect()
    };
    let mut out = String::from("x,y,order,status,value,added_nodes\n");
    let mut all = true;
    for &x in &xs {
        for &y in &xs {
            let r = gab_dual_measure(fam, x, y, config.moment_order, &grid)?;
            let (status, value) = match &r.outcome {
                LpOutcome::Feasible { slack, .. } => ("feasible", *slack),
                LpOutcome::Infeasible { margin, .. } => ("infeasible", *margin),
            };
            all &= r.is_feasible();
            let _ = writeln!(
                out,
                "{},{},{},{status},{},{}",
                fmt17(x),
                fmt17(y),
                r.order,
                fmt17(value),
                r.added_nodes
            );
        }
    }
    Ok((out, all))
}

pub fn cosh_report(audit: &CoshWindowAudit) -> Value {
    let f = |v: f64| fmt17(v);
    json!({
        "command": "cosh-window",
        "passed": audit.passed,
        "r": f(audit.r),
        "window": audit.window,
        "residuals": {
            "stochastic": f(audit.stochastic),
            "detailed_balance": f(audit.detailed_balance),
            "invariance": f(audit.invariance),
            "closure": f(audit.closure),
            "convolution": f(audit.convolution),
            "multiplicativity": f(audit.multiplicativity),
            "quadrature": f(audit.quadrature),
        },
        "interior_fraction": f(audit.interior_fraction),
    })
}

pub fn gab_linearization(config: &RunConfig, fam: &GabFamily, max: usize) -> Result<bool, CliError> {
    let file = config.write(
        &format!("gab_{}.linearization.csv", slug_params(fam.a(), fam.b())),
        &linearization_csv(fam, max),
    )?;
    announce("linearization", true, &file);
    Ok(true)
}

pub fn gab_psd_sweep(
    config: &RunConfig,
    fam: &GabFamily,
    x_min: f64,
    x_max: f64,
    step: f64,
    radius: usize,
) -> Result<bool, CliError> {
    let (csv, ok) = psd_sweep_csv(config, fam, x_min, x_max, step, radius)?;
    let file = config.write(&format!("gab_{}.psd_sweep.csv", slug_params(fam.a(), fam.b())), &csv)?;
    announce("psd-sweep", ok, &file);
    Ok(ok)
}

pub fn gab_lp_sweep(config: &RunConfig, fam: &GabFamily, points: usize) -> Result<bool, CliError> {
    let (csv, ok) = lp_sweep_csv(config, fam, points)?;
    let file = config.write(&format!("gab_{}.lp_sweep.csv", slug_params(fam.a(), fam.b())), &csv)?;
    announce("lp-sweep", ok, &file);
    Ok(ok)
}

pub fn cosh_window(config: &RunConfig, fam: &CoshFamily) -> Result<bool, CliError> {
    let audit = fam.window_audit(config.window)?;
    let file = config.write(
        &format!("cosh_{}.window.json", crate::commands::slug(&fam.r().to_string())),
        &io::to_pretty(&cosh_report(&audit)),
    )?;
    announce("cosh-window", audit.passed, &file);
    Ok(audit.passed)
}
