//! Meridian generators with residual reports.

use std::io::Write;

use minkowski_surfaces::meridian::{
    conservation_check, minimal_meridian, parabolic_meridian, solve_ode, OdeProblem, OdeTarget, ParabolicCase,
};
use minkowski_surfaces::rotational::{MeridianCurve, RotationalSurface, SurfaceKind};
use minkowski_surfaces::sampling::max_v;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::args::{CaseArg, ExampleArgs, Family, GlobalArgs, IntervalArgs, OdeArgs, ReportArgs};
use crate::error::{CliError, CliResult};
use crate::format::{num, open_output, Cell, Table, F17};
use crate::meridian_file::MeridianFile;
use crate::setup::{kind_name, linspace, minimal_default_interval};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(f64),
    Int(usize),
    Text(String),
}

/// Ordered key/value report printed to stderr and optionally saved as JSON.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report(pub Vec<(&'static str, Value)>);

impl Report {
    fn num(&mut self, key: &'static str, x: f64) {
        self.0.push((key, Value::Num(x)));
    }

    fn int(&mut self, key: &'static str, n: usize) {
        self.0.push((key, Value::Int(n)));
    }

    fn text(&mut self, key: &'static str, s: impl Into<String>) {
        self.0.push((key, Value::Text(s.into())));
    }

    /// Max and mean of `|x|`, or the first error.
    fn residuals(&mut self, name: &'static str, values: minkowski_surfaces::Result<Vec<f64>>) {
        let (max_key, mean_key) = match name {
            "minimal" => ("residual_minimal_max", "residual_minimal_mean"),
            "flat" => ("residual_flat_max", "residual_flat_mean"),
            _ => ("residual_flat_normal_max", "residual_flat_normal_mean"),
        };
        match values {
            Ok(v) if !v.is_empty() => {
                self.num(max_key, v.iter().fold(0.0, |m, x| m.max(x.abs())));
                self.num(mean_key, v.iter().map(|x| x.abs()).sum::<f64>() / v.len() as f64);
            }
            Ok(_) => self.text(max_key, "unavailable: no interior nodes"),
            Err(e) => self.text(max_key, format!("unavailable: {e}")),
        }
    }

    fn emit(&self, args: &ReportArgs) -> CliResult<()> {
        let mut err = std::io::stderr().lock();
        for (k, v) in &self.0 {
            match v {
                Value::Num(x) => writeln!(err, "{k}: {}", num(*x))?,
                Value::Int(n) => writeln!(err, "{k}: {n}")?,
                Value::Text(s) => writeln!(err, "{k}: {s}")?,
            }
        }
        if let Some(path) = &args.report {
            let mut w = open_output(Some(path))?;
            serde_json::to_writer_pretty(&mut w, self)?;
            writeln!(w)?;
            w.flush()?;
        }
        Ok(())
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                Value::Num(x) => map.serialize_entry(k, &F17(*x))?,
                Value::Int(n) => map.serialize_entry(k, n)?,
                Value::Text(t) => map.serialize_entry(k, t)?,
            }
        }
        map.end()
    }
}

fn header(kind: SurfaceKind, alpha: f64, beta: f64, family: &str, params: String) -> Vec<(String, String)> {
    vec![
        ("kind".into(), kind_name(kind).into()),
        ("alpha".into(), alpha.to_string()),
        ("beta".into(), beta.to_string()),
        ("family".into(), family.into()),
        ("params".into(), params),
    ]
}

/// `u, f, fprime, g, gprime` of `m` on `us`.
fn general_table(m: &MeridianCurve, us: &[f64]) -> Table {
    let mut t = Table::new(&["u", "f", "fprime", "g", "gprime"]);
    for &u in us {
        let j = m.eval(u);
        t.push(vec![u.into(), j.f.into(), j.fp.into(), j.g.into(), j.gp.into()]);
    }
    t
}

fn interval(i: &IntervalArgs, default: (f64, f64)) -> CliResult<(f64, f64)> {
    if i.count < 2 {
        return Err(CliError::Input("--count must be at least 2".into()));
    }
    Ok((i.u_min.unwrap_or(default.0), i.u_max.unwrap_or(default.1)))
}

fn write_file(g: &GlobalArgs, file: &MeridianFile) -> CliResult<()> {
    let mut w = open_output(g.out.as_deref())?;
    file.write(g.format, &mut w)?;
    w.flush()?;
    Ok(())
}

fn finish(g: &GlobalArgs, file: MeridianFile, report: &Report, report_args: &ReportArgs) -> CliResult<()> {
    write_file(g, &file)?;
    report.emit(report_args)
}

pub fn run(g: &GlobalArgs, family: &Family) -> CliResult<()> {
    match family {
        Family::Minimal { ty, a_const, phase, eps, interval: iv, report } => {
            let kind: SurfaceKind = ty.kind.into();
            let requested = interval(iv, minimal_default_interval(kind, ty.alpha, *a_const))?;
            let m = minimal_meridian(kind, ty.alpha, ty.beta, *a_const, *phase, *eps, requested)?;
            let s = RotationalSurface::new(kind, ty.alpha, ty.beta, m)?;
            let us = s.meridian().grid(iv.count);
            let (lo, hi) = s.meridian().domain();
            let mut r = Report::default();
            r.num("domain_min", lo);
            r.num("domain_max", hi);
            r.residuals("minimal", us.iter().map(|&u| s.residual_minimal(u)).collect());
            match conservation_check(&s, &us) {
                Ok(c) => {
                    r.num("conservation_spread", c.max_spread);
                    r.num("recovered_A", c.recovered_a(ty.alpha, ty.beta));
                }
                Err(e) => r.text("conservation_spread", format!("unavailable: {e}")),
            }
            let params = format!("A={a_const}, C={phase}, eps={eps}; parameter u = f");
            let file = MeridianFile {
                meta: header(kind, ty.alpha, ty.beta, "minimal", params),
                table: general_table(s.meridian(), &us),
            };
            finish(g, file, &r, report)
        }
        Family::Parabolic { ty, case, a, b, c, interval: iv, report } => {
            let need = |x: Option<f64>, name: &str| {
                x.ok_or_else(|| CliError::Input(format!("--{name} is required for this case")))
            };
            let case = match case {
                CaseArg::DevelopableRuled => ParabolicCase::DevelopableRuled { a: need(*a, "a")? },
                CaseArg::NonDevelopableRuled => ParabolicCase::NonDevelopableRuled { a: need(*a, "a")?, b: need(*b, "b")? },
                CaseArg::PowerLaw => ParabolicCase::PowerLaw { c: need(*c, "c")? },
            };
            let kind: SurfaceKind = ty.kind.into();
            let m = parabolic_meridian(kind, case, ty.alpha, ty.beta, interval(iv, (1.0, 2.0))?)?;
            let s = RotationalSurface::new(kind, ty.alpha, ty.beta, m)?;
            let us = s.meridian().grid(iv.count);
            let curvatures = us.iter().map(|&u| s.closed_curvatures(u)).collect::<Result<Vec<_>, _>>()?;
            let max = |f: &dyn Fn(&minkowski_surfaces::rotational::CurvatureInvariants) -> f64| {
                curvatures.iter().fold(0.0_f64, |m, c| m.max(f(c).abs()))
            };
            let mut r = Report::default();
            r.text("case", case.as_str());
            r.num("max_abs_k", max(&|c| c.k));
            r.num("max_abs_kappa", max(&|c| c.kappa));
            r.num("max_abs_K", max(&|c| c.gauss));
            let params = match case {
                ParabolicCase::DevelopableRuled { a } => format!("case={}, a={a}", case.as_str()),
                ParabolicCase::NonDevelopableRuled { a, b } => format!("case={}, a={a}, b={b}", case.as_str()),
                ParabolicCase::PowerLaw { c } => format!("case={}, c={c}", case.as_str()),
            };
            let file = MeridianFile {
                meta: header(kind, ty.alpha, ty.beta, "parabolic", params),
                table: general_table(s.meridian(), &us),
            };
            finish(g, file, &r, report)
        }
        Family::Flat(o) => ode(g, o, OdeTarget::Flat),
        Family::FlatNormal(o) => ode(g, o, OdeTarget::FlatNormal),
        Family::Example1(e) => example(g, e, SurfaceKind::FirstType),
        Family::Example2(e) => example(g, e, SurfaceKind::SecondType),
    }
}

fn example(g: &GlobalArgs, e: &ExampleArgs, kind: SurfaceKind) -> CliResult<()> {
    let (name, target, default) = match kind {
        SurfaceKind::FirstType => ("example1", e.a * e.a, (-0.7, 0.7)),
        SurfaceKind::SecondType => ("example2", -e.a * e.a, (0.1, 1.5)),
    };
    let domain = interval(&e.interval, default)?;
    let m = match kind {
        SurfaceKind::FirstType => MeridianCurve::circle(e.a, domain)?,
        SurfaceKind::SecondType => MeridianCurve::hyperbolic(e.a, domain)?,
    };
    let s = RotationalSurface::new(kind, e.alpha, e.beta, m)?;
    let us = s.meridian().grid(e.interval.count);
    let vs = linspace(0.0, max_v(e.beta), 21);
    let mut membership = 0.0_f64;
    for &u in &us {
        for &v in &vs {
            membership = membership.max((s.embed(u, v)?.square() - target).abs());
        }
    }
    let mut r = Report::default();
    r.num("quadric", target);
    r.num("membership_max", membership);
    r.residuals("flat-normal", us.iter().map(|&u| s.residual_flat_normal(u)).collect());
    let file = MeridianFile {
        meta: header(kind, e.alpha, e.beta, name, format!("a={}", e.a)),
        table: general_table(s.meridian(), &us),
    };
    finish(g, file, &r, &e.report)
}

fn ode(g: &GlobalArgs, o: &OdeArgs, target: OdeTarget) -> CliResult<()> {
    let kind: SurfaceKind = o.ty.kind.into();
    let mut p = OdeProblem::new(kind, target, o.ty.alpha, o.ty.beta, (o.u0, o.f0, o.fp0), o.u_end);
    p.h_init = o.h_init;
    p.h_min = o.h_min;
    p.h_max = o.h_max;
    p.rel_tol = o.rel_tol;
    p.abs_tol = o.abs_tol;
    p.guard_tol = o.guard_tol;
    p.max_steps = o.max_steps;
    let sol = solve_ode(&p)?;
    let (u, f, fp) = sol.increasing();
    let mut table = Table::new(&["u", "f", "fprime"]);
    for i in 0..u.len() {
        table.push(vec![Cell::Num(u[i]), Cell::Num(f[i]), Cell::Num(fp[i])]);
    }
    let status = if sol.termination.is_success() { "ok".to_owned() } else { format!("failed: {}", sol.termination) };
    let mut meta = header(
        kind,
        o.ty.alpha,
        o.ty.beta,
        target.as_str(),
        format!("u0={}, f0={}, fp0={}, u_end={}; chart g = u", o.u0, o.f0, o.fp0, o.u_end),
    );
    meta.push(("rel_tol".into(), o.rel_tol.to_string()));
    meta.push(("status".into(), status));

    let mut r = Report::default();
    r.text("termination", sol.termination.to_string());
    r.int("nodes", sol.len());
    r.int("accepted_steps", sol.accepted_steps);
    r.int("rejected_steps", sol.rejected_steps);
    if let Some(last) = sol.u.last() {
        r.num("u_last", *last);
    }
    let residuals = if sol.len() >= 3 { sol.interior_residuals() } else { Ok(Vec::new()) };
    r.residuals(target.as_str(), residuals);
    finish(g, MeridianFile { meta, table }, &r, &o.report)?;
    match sol.termination.is_success() {
        true => Ok(()),
        false => Err(CliError::Solver(sol.termination.to_string())),
    }
}
