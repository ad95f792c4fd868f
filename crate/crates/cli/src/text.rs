//! Plain-text renderings of reports.

use std::fmt::Write;

use qbd_tails::asymptotics::AnalysisReport;
use qbd_tails::numfmt::sig;
use qbd_tails::oracle::Verification;

fn pair(p: [f64; 2]) -> String {
    format!("({}, {})", sig(p[0]), sig(p[1]))
}

pub fn report(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let verdict = if r.stable { "stable" } else { "not stable" };
    let _ = writeln!(s, "stability: {verdict} ({:?})", r.stability.matched_condition);
    let _ = writeln!(s, "interior drift: {}", pair(r.drifts.m));
    let p = &r.arithmetic_profile;
    let _ = writeln!(s, "arithmetic: va={} vb={} vc={} ({:?}, {:?})", p.va, p.vb, p.vc, p.b_case, p.c_case);
    if let Some(c) = r.category {
        let _ = writeln!(s, "category: {c:?}");
    }
    if let Some(t) = r.tau {
        let _ = writeln!(s, "tau: {}", pair(t));
    }
    if let Some(e) = &r.extreme_points {
        for (k, a) in [(1, &e.axis1), (2, &e.axis2)] {
            let _ = writeln!(s, "axis {k}: r {} max {} gamma {}", pair(a.u_r), pair(a.u_max_pt), pair(a.u_gamma));
        }
    }
    if let Some(c) = &r.classes {
        for (name, class) in [
            ("boundary1", &c.boundary1),
            ("boundary2", &c.boundary2),
            ("marginal1", &c.marginal1),
            ("marginal2", &c.marginal2),
            ("diagonal", &c.diagonal),
        ] {
            let _ = writeln!(s, "{name:<10} {:<32} {}", class.rendering, class.provenance);
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

pub fn verification(v: &Verification) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "oracle: N = {}, window [{}, {}], {} sweeps, residual {}",
        v.grid,
        v.window[0],
        v.window[1],
        v.solver.sweeps,
        sig(v.solver.residual)
    );
    for d in &v.directions {
        let f = &d.fitted;
        let _ = writeln!(
            s,
            "{:<10} {} rate {} (gap {}) kappa {} (gap {}) b {} periodic {}/{}",
            d.direction.name(),
            if d.pass { "PASS" } else { "FAIL" },
            sig(f.rate_hat),
            sig(d.rate_gap),
            sig(f.kappa_hat),
            sig(d.kappa_gap),
            sig(f.b_point_mass.unwrap_or(f.b_hat)),
            d.periodic_detected,
            d.analytic.periodic
        );
    }
    let _ = writeln!(s, "overall: {}", if v.pass { "PASS" } else { "FAIL" });
    s
}
