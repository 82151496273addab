//! Command-line driver: each subcommand writes a deterministic artifact and
//! a pass/fail report. Exit codes: 0 pass, 1 failed check, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use nalgebra::Vector3;
use nilgeom::geodesic::horizontal_geodesic;
use nilgeom::ruled::closed_form::htilde;
use nilgeom::ruled::lemma25::{compare_lemma25, COEFFICIENT_NAMES};
use nilgeom::ruled::{
    catalog_surface, convergence_table, write_limit_csv, write_mesh, CatalogKind, Polynomial1, RuledProfile,
};
use nilgeom::surface::{scan_graph, scan_immersion, write_scan_csv, ScanRow};
use nilgeom::verify::{random_ruled_profile, Bound, Check, Suite, Tolerances, VerifyConfig};
use nilgeom::{geodesic_closed_form, integrate_geodesic, Grid, ModelPoint, Rect};

#[derive(Parser, Debug)]
#[command(name = "nilgeom", version, about = "Geometry checks in the Heisenberg group")]
struct Cli {
    /// Override a tolerance, e.g. `--tol momentum_drift=1e-8` or `--tol limit_ratio=0.3:0.7`.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate a geodesic and check momentum conservation.
    Geodesic(GeodesicArgs),
    /// Scan mean-curvature residuals of a catalog surface.
    Residual(ResidualArgs),
    /// Compare closed-form and fitted expansion coefficients of a ruled profile.
    Lemma25(Lemma25Args),
    /// Sup error of rescaled helicoids against the hyperbolic paraboloid.
    Limit(LimitArgs),
    /// Write a triangle mesh of a catalog surface.
    Mesh(MeshArgs),
    /// Run every acceptance suite.
    VerifyAll(VerifyArgs),
}

#[derive(Args, Debug)]
struct GeodesicArgs {
    /// Initial point `x,y,z`.
    #[arg(long, default_value = "0,0,0", value_parser = parse_triple, allow_hyphen_values = true)]
    p0: [f64; 3],
    /// Initial velocity in frame components `a1,a2,a3`.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    v0: [f64; 3],
    #[arg(long, default_value_t = 10.0, value_parser = positive)]
    tmax: f64,
    #[arg(long, default_value_t = 1e-3, value_parser = positive)]
    step: f64,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ResidualArgs {
    /// `plane`, `vplane`, `hpb` or `helicoid:<lambda>`.
    #[arg(long, value_parser = parse_surface)]
    surface: CatalogKind,
    #[arg(long, default_value_t = 21, value_parser = grid_size)]
    grid: usize,
    /// `xmin,xmax,ymin,ymax`; graph coordinates, or parameters for `vplane`.
    #[arg(long, value_parser = parse_rect, allow_hyphen_values = true)]
    domain: Option<Rect>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Lemma25Args {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    h0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    dh0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    ddh0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    dalpha0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    ddalpha0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    g0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    dg0: f64,
    /// Instead of one profile, compare this many seeded random profiles.
    #[arg(long)]
    sweep: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Descending positive values, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,0.25,0.0625,0.015625", allow_hyphen_values = true)]
    lambdas: Vec<f64>,
    #[arg(long, default_value_t = 21, value_parser = grid_size)]
    grid: usize,
    #[arg(long, default_value = "-1,1,-1,1", value_parser = parse_rect, allow_hyphen_values = true)]
    domain: Rect,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MeshArgs {
    #[arg(long, value_parser = parse_surface)]
    surface: CatalogKind,
    #[arg(long, default_value_t = 64, value_parser = grid_size)]
    grid: usize,
    /// Parameter rectangle `smin,smax,tmin,tmax`; the surface default when omitted.
    #[arg(long, value_parser = parse_rect, allow_hyphen_values = true)]
    domain: Option<Rect>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Fault injection for testing the harness itself.
    #[arg(long, hide = true)]
    tamper_connection: bool,
}

fn parse_numbers<const N: usize>(s: &str) -> std::result::Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got `{s}`"));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"))?;
        if !o.is_finite() {
            return Err(format!("`{p}` is not finite"));
        }
    }
    Ok(out)
}

fn parse_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    parse_numbers::<3>(s)
}

fn parse_rect(s: &str) -> std::result::Result<Rect, String> {
    let [a, b, c, d] = parse_numbers::<4>(s)?;
    Rect::new(a, b, c, d).map_err(|e| e.to_string())
}

fn parse_surface(s: &str) -> std::result::Result<CatalogKind, String> {
    s.parse::<CatalogKind>().map_err(|e| e.to_string())
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn grid_size(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("grid size must be an integer >= 2, got `{s}`")),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn fmt_rect(r: &Rect) -> String {
    format!("{},{},{},{}", r.x_min, r.x_max, r.y_min, r.y_max)
}

/// Writes the artifact to `path`, or to stdout. The report goes to stdout
/// when the artifact has its own file and to stderr otherwise.
struct Output {
    artifact: Box<dyn Write>,
    to_file: bool,
}

impl Output {
    fn open(path: Option<&Path>) -> Result<Self> {
        Ok(match path {
            Some(p) => {
                let f = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
                Self { artifact: Box::new(BufWriter::new(f)), to_file: true }
            }
            None => Self { artifact: Box::new(io::stdout().lock()), to_file: false },
        })
    }

    fn report(&self, line: &str) {
        if self.to_file {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
}

fn report_checks(out: &Output, checks: &[Check]) -> bool {
    for c in checks {
        out.report(&c.to_string());
    }
    let pass = checks.iter().all(|c| c.pass);
    out.report(if pass { "PASS" } else { "FAIL" });
    pass
}

fn cmd_geodesic(a: &GeodesicArgs, tol: &Tolerances) -> Result<bool> {
    let v0 = Vector3::from(a.v0);
    if v0.norm() == 0.0 {
        usage_error("--v0 must be a nonzero vector");
    }
    let p0 = ModelPoint::new(a.p0[0], a.p0[1], a.p0[2]);
    let trace = integrate_geodesic(p0, v0, a.tmax, a.step)?;
    let mut out = Output::open(a.out.as_deref())?;
    let cfg = format!(
        "cfg geodesic p0={},{},{} v0={},{},{} tmax={} step={}",
        a.p0[0], a.p0[1], a.p0[2], a.v0[0], a.v0[1], a.v0[2], a.tmax, a.step
    );
    trace.write_csv(&mut out.artifact, Some(&cfg))?;
    out.artifact.flush()?;
    let mut checks = vec![
        Check::new("momentum-drift", trace.max_momentum_drift(), Bound::Below(tol.momentum_drift)),
        Check::new(
            "closed-form-deviation",
            trace.max_deviation(|t| geodesic_closed_form(p0, v0, t)),
            Bound::Below(tol.geodesic_oracle),
        ),
    ];
    if let Ok(line) = horizontal_geodesic(p0, v0) {
        checks.push(Check::new(
            "horizontal-line-deviation",
            trace.max_deviation(|t| line.point_at(t)),
            Bound::Below(tol.horizontal_line),
        ));
    }
    Ok(report_checks(&out, &checks))
}

fn max_finite(rows: &[ScanRow], f: impl Fn(&ScanRow) -> f64) -> (f64, usize) {
    let vals: Vec<f64> = rows.iter().map(f).filter(|v| !v.is_nan()).collect();
    (vals.iter().fold(0.0, |m, v| m.max(v.abs())), vals.len())
}

fn cmd_residual(a: &ResidualArgs, tol: &Tolerances) -> Result<bool> {
    let surface = catalog_surface(a.surface)?;
    let graph = surface.graph();
    let domain = a.domain.unwrap_or(match (a.surface, &graph) {
        (CatalogKind::Helicoid { .. }, _) => Rect { x_min: 0.5, x_max: 2.0, y_min: -1.0, y_max: 1.0 },
        (_, Some(_)) => Rect::square(1.0),
        (_, None) => surface.default_domain(),
    });
    let grid = Grid::new(domain, a.grid)?;
    let rows = match &graph {
        Some(f) => scan_graph(f.as_ref(), &grid),
        None => scan_immersion(&surface.immersion(), &grid),
    };
    let mut out = Output::open(a.out.as_deref())?;
    let mode = if graph.is_some() { "graph" } else { "parametrized" };
    let cfg = format!("cfg residual surface={} grid={} domain={} mode={mode}", a.surface, a.grid, fmt_rect(&domain));
    write_scan_csv(&mut out.artifact, &rows, Some(&cfg))?;
    out.artifact.flush()?;
    let mut checks = Vec::new();
    let bound = if graph.is_some() { tol.graph_residual } else { tol.catalog_curvature };
    let values = |r: &ScanRow| [r.riem, r.lorentz, r.diff, r.laplacian];
    if graph.is_some() {
        let bad = rows.iter().filter(|r| values(r).iter().any(|v| !v.is_finite())).count();
        checks.push(Check::new("non-finite-points", bad as f64, Bound::AtMost(0.0)));
    } else {
        let undefined = rows.iter().filter(|r| r.riem.is_nan() || r.lorentz.is_nan()).count();
        out.report(&format!("{undefined} of {} points singular or lightlike", rows.len()));
    }
    for (name, col) in [
        ("riemannian-residual", (|r: &ScanRow| r.riem) as fn(&ScanRow) -> f64),
        ("lorentzian-residual", |r| r.lorentz),
        ("difference-residual", |r| r.diff),
        ("laplacian", |r| r.laplacian),
    ] {
        let (m, count) = max_finite(&rows, col);
        if count > 0 {
            checks.push(Check::new(format!("max-{name}"), m, Bound::Below(bound)));
        }
    }
    Ok(report_checks(&out, &checks))
}

fn lemma25_checks(p: &RuledProfile, tol: &Tolerances, label: &str) -> Result<(Vec<Check>, Vec<String>)> {
    let c = compare_lemma25(p)?;
    let mut lines = Vec::new();
    let mut checks = Vec::new();
    for (k, name) in COEFFICIENT_NAMES.iter().enumerate() {
        let (closed, fitted) = (c.closed.as_array()[k] + 0.0, c.fitted.selected().as_array()[k] + 0.0);
        let agree = (closed - fitted).abs() < tol.lemma25_agreement;
        lines.push(format!("{label}{name} closed={closed:.12e} extracted={fitted:.12e} agree={agree}"));
        checks.push(Check::new(
            format!("{label}{name}-agreement"),
            (closed - fitted).abs(),
            Bound::Below(tol.lemma25_agreement),
        ));
    }
    checks.push(Check::new(format!("{label}fit-residual"), c.fitted.residual, Bound::Below(tol.lemma25_fit)));
    Ok((checks, lines))
}

fn cmd_lemma25(a: &Lemma25Args, tol: &Tolerances) -> Result<bool> {
    if let Some(n) = a.sweep {
        let cfg = VerifyConfig { seed: a.seed, ..VerifyConfig::default() };
        let mut checks = Vec::new();
        let mut agreements = 0;
        for i in 0..n as u64 {
            let p = random_ruled_profile(&mut cfg.rng(i));
            let (cs, _) = lemma25_checks(&p, tol, &format!("profile{i}:"))?;
            if cs.iter().all(|c| c.pass) {
                agreements += 1;
            } else {
                checks.extend(cs.into_iter().filter(|c| !c.pass));
            }
        }
        println!("cfg lemma25 sweep={n} seed={}", a.seed);
        println!("agreements {agreements}/{n}");
        for c in &checks {
            println!("{c}");
        }
        let pass = agreements == n;
        println!("{}", if pass { "PASS" } else { "FAIL" });
        return Ok(pass);
    }
    let p = RuledProfile::polynomial(
        Polynomial1::from_jet0(a.h0, a.dh0, a.ddh0),
        Polynomial1::from_jet0(0.0, a.dalpha0, a.ddalpha0),
        Polynomial1::linear(a.g0, a.dg0),
    );
    println!(
        "cfg lemma25 h0={} dh0={} ddh0={} dalpha0={} ddalpha0={} g0={} dg0={}",
        a.h0, a.dh0, a.ddh0, a.dalpha0, a.ddalpha0, a.g0, a.dg0
    );
    let (mut checks, lines) = lemma25_checks(&p, tol, "")?;
    for l in lines {
        println!("{l}");
    }
    let peak =
        (0..=400).map(|k| htilde(&p, 0.0, 2.0 * std::f64::consts::PI * k as f64 / 400.0).abs()).fold(0.0, f64::max);
    println!("max |htilde(0,t)| = {peak:.6e}");
    if a.h0 != 0.0 {
        checks.push(Check::new("htilde-witness", peak, Bound::Above(tol.lemma25_witness)));
    }
    let pass = checks.iter().all(|c| c.pass);
    for c in &checks {
        println!("{c}");
    }
    println!("{}", if pass { "PASS" } else { "FAIL" });
    Ok(pass)
}

fn cmd_limit(a: &LimitArgs, tol: &Tolerances) -> Result<bool> {
    if a.lambdas.is_empty() {
        usage_error("--lambdas needs at least one value");
    }
    if let Some(l) = a.lambdas.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        usage_error(format!("every lambda must be positive, got {l}"));
    }
    if a.lambdas.windows(2).any(|w| w[1] >= w[0]) {
        usage_error("--lambdas must be strictly descending");
    }
    let rows = convergence_table(&a.lambdas, a.domain, a.grid)?;
    let mut out = Output::open(a.out.as_deref())?;
    let lambdas: Vec<String> = a.lambdas.iter().map(|l| l.to_string()).collect();
    let cfg = format!("cfg limit lambdas={} grid={} domain={}", lambdas.join(","), a.grid, fmt_rect(&a.domain));
    write_limit_csv(&mut out.artifact, &rows, Some(&cfg))?;
    out.artifact.flush()?;
    let mut checks = Vec::new();
    for w in rows.windows(2) {
        // The O(√λ) rate predicts a ratio of ½ only when λ is quartered.
        if (w[1].lambda / w[0].lambda - 0.25).abs() < 1e-12 {
            let q = w[1].ratio_to_prev.expect("not the first row");
            checks.push(Check::new(
                format!("ratio[{}]", w[1].lambda),
                q,
                Bound::Within(tol.limit_ratio.0, tol.limit_ratio.1),
            ));
        }
    }
    Ok(report_checks(&out, &checks))
}

fn cmd_mesh(a: &MeshArgs) -> Result<bool> {
    let surface = catalog_surface(a.surface)?;
    let domain = a.domain.unwrap_or_else(|| surface.default_domain());
    let grid = Grid::new(domain, a.grid)?;
    let f = File::create(&a.out).with_context(|| format!("cannot create {}", a.out.display()))?;
    let mut w = BufWriter::new(f);
    let cfg = format!("cfg mesh surface={} grid={} domain={}", a.surface, a.grid, fmt_rect(&domain));
    write_mesh(&mut w, &surface.immersion(), &grid, Some(&cfg))?;
    w.flush()?;
    println!(
        "wrote {} vertices, {} triangles to {}",
        a.grid * a.grid,
        2 * (a.grid - 1) * (a.grid - 1),
        a.out.display()
    );
    Ok(true)
}

fn cmd_verify_all(a: &VerifyArgs, tol: Tolerances) -> bool {
    let cfg = VerifyConfig { seed: a.seed, tamper_connection: a.tamper_connection, tol };
    println!("cfg verify-all seed={}", a.seed);
    let mut failing = Vec::new();
    for suite in Suite::ALL {
        let report = suite.run(&cfg);
        print!("{report}");
        failing.extend(report.failing().map(|c| c.name.clone()));
    }
    if failing.is_empty() {
        println!("PASS all {} suites", Suite::ALL.len());
        true
    } else {
        println!("FAIL {}", failing.join(", "));
        false
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut tol = Tolerances::default();
    for t in &cli.tol {
        if let Err(e) = tol.set(t) {
            usage_error(e);
        }
    }
    let result = match &cli.command {
        Command::Geodesic(a) => cmd_geodesic(a, &tol),
        Command::Residual(a) => cmd_residual(a, &tol),
        Command::Lemma25(a) => cmd_lemma25(a, &tol),
        Command::Limit(a) => cmd_limit(a, &tol),
        Command::Mesh(a) => cmd_mesh(a),
        Command::VerifyAll(a) => Ok(cmd_verify_all(a, tol)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
