//! Acceptance suites. Each suite returns a [`VerificationReport`] of named
//! checks, each with a measured value and the bound it is held to.
//!
//! Randomized suites draw sample `i` from a ChaCha8 stream seeded with the
//! configured seed and switched to stream `i`, so the sample set does not
//! depend on evaluation order.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::time::{Duration, Instant};

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::connection::{connection, covariant_derivative_frame, ConnectionTable, ParamDir};
use crate::diff::FiniteDiff;
use crate::error::{GeomError, Result};
use crate::frame::{coord_to_frame_comps, frame_to_coord_comps, metric_dot, MetricKind, ModelPoint};
use crate::geodesic::{
    geodesic_closed_form, horizontal_geodesic, integrate_geodesic, integrate_geodesic_unreduced, is_geodesic_line,
    GeodesicState, Line3,
};
use crate::grid::{Grid, Rect};
use crate::isometry::{plane_flattening_isometry, IsometryElement};
use crate::ruled::catalog::{catalog_surface, CatalogKind};
use crate::ruled::closed_form::{
    htilde, ruled_second_derivatives, ruled_second_derivatives_alternative, ruled_tangents, RuledSecond,
};
use crate::ruled::horizontal::{
    helicoid_base, helicoid_lambda, horizontal_ruled_residual, horizontal_ruled_surface, HelicoidCase,
};
use crate::ruled::lemma25::{compare_lemma25, extract_expansion_coefficients, fit_expansion, NodeSet};
use crate::ruled::limit::{convergence_table, helicoid_pullback_isometry, limit_error};
use crate::ruled::numeric::NumericRuledSurface;
use crate::ruled::profile::{HorizontalRuledProfile, Polynomial1, RuledProfile};
use crate::surface::forms::mean_curvature;
use crate::surface::graph::{
    doubly_zero_residuals, graph_lorentz_residual, graph_minimal_residual, GraphFunction, HelicoidGraph,
};
use crate::surface::immersion::Immersion;

/// Every threshold used by the suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Torsion and compatibility defects of the connection tables.
    pub connection_exact: f64,
    /// `max |J(t) − J(0)|` over a trace.
    pub momentum_drift: f64,
    /// Distance from the closed-form straight line for horizontal data.
    pub horizontal_line: f64,
    /// Distance from the `J = 1` closed-form geodesic.
    pub geodesic_oracle: f64,
    /// Distance between a line and the geodesic with its initial data.
    pub line_trace: f64,
    /// `|H|` on catalog surfaces.
    pub catalog_curvature: f64,
    /// Graph residuals and their difference/sum combinations.
    pub graph_residual: f64,
    /// Catalog parametrizations against their implicit equations.
    pub catalog_implicit: f64,
    /// Fitted against closed-form expansion coefficients.
    pub lemma25_agreement: f64,
    /// Largest misfit of the expansion fit.
    pub lemma25_fit: f64,
    /// Lower bound on `max |H̃(0, t)|` for the witness profile.
    pub lemma25_witness: f64,
    /// The horizontal residual on a minimal family.
    pub horizontal_residual: f64,
    /// Constructed horizontal ruled surfaces against implicit equations.
    pub horizontal_implicit: f64,
    /// Admissible band for successive error ratios when `λ` is quartered.
    pub limit_ratio: (f64, f64),
    /// Sup error bound at `λ = 1e−6`.
    pub limit_small: f64,
    /// Metric change under an isometry.
    pub isometry_metric: f64,
    /// `|z′|` after plane flattening.
    pub flattening: f64,
    /// Admissible band for the step-halving ratio of second-order differences.
    pub halving_ratio: (f64, f64),
    /// Closed-form tangents against the numerically built ruled surface.
    pub ruled_tangent: f64,
    /// Covariant acceleration of the rulings.
    pub ruling_acceleration: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            connection_exact: 1e-15,
            momentum_drift: 1e-9,
            horizontal_line: 1e-8,
            geodesic_oracle: 1e-6,
            line_trace: 1e-6,
            catalog_curvature: 1e-8,
            graph_residual: 1e-10,
            catalog_implicit: 1e-10,
            lemma25_agreement: 1e-6,
            lemma25_fit: 1e-8,
            lemma25_witness: 0.1,
            horizontal_residual: 1e-12,
            horizontal_implicit: 1e-9,
            limit_ratio: (0.35, 0.65),
            limit_small: 1e-2,
            isometry_metric: 1e-10,
            flattening: 1e-12,
            halving_ratio: (3.5, 4.5),
            ruled_tangent: 1e-6,
            ruling_acceleration: 1e-8,
        }
    }
}

impl Tolerances {
    /// Names accepted by [`Tolerances::set`]. Bands are set as `lo:hi`.
    pub const NAMES: [&'static str; 20] = [
        "connection_exact",
        "momentum_drift",
        "horizontal_line",
        "geodesic_oracle",
        "line_trace",
        "catalog_curvature",
        "graph_residual",
        "catalog_implicit",
        "lemma25_agreement",
        "lemma25_fit",
        "lemma25_witness",
        "horizontal_residual",
        "horizontal_implicit",
        "limit_ratio",
        "limit_small",
        "isometry_metric",
        "flattening",
        "halving_ratio",
        "ruled_tangent",
        "ruling_acceleration",
    ];

    /// Overrides one entry from a `name=value` pair.
    pub fn set(&mut self, assignment: &str) -> Result<()> {
        let bad = |msg: String| GeomError::InvalidParameter(msg);
        let (name, value) =
            assignment.split_once('=').ok_or_else(|| bad(format!("expected name=value, got `{assignment}`")))?;
        let num = |s: &str| -> Result<f64> {
            match s.trim().parse::<f64>() {
                Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
                _ => Err(bad(format!("tolerance `{name}` needs a positive number, got `{s}`"))),
            }
        };
        let band = |s: &str| -> Result<(f64, f64)> {
            let (lo, hi) = s.split_once(':').ok_or_else(|| bad(format!("band `{name}` expects lo:hi, got `{s}`")))?;
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo < hi {
                Ok((lo, hi))
            } else {
                Err(bad(format!("band `{name}` is empty: {lo}:{hi}")))
            }
        };
        match name.trim() {
            "limit_ratio" => self.limit_ratio = band(value)?,
            "halving_ratio" => self.halving_ratio = band(value)?,
            n => {
                let v = num(value)?;
                let slot = match n {
                    "connection_exact" => &mut self.connection_exact,
                    "momentum_drift" => &mut self.momentum_drift,
                    "horizontal_line" => &mut self.horizontal_line,
                    "geodesic_oracle" => &mut self.geodesic_oracle,
                    "line_trace" => &mut self.line_trace,
                    "catalog_curvature" => &mut self.catalog_curvature,
                    "graph_residual" => &mut self.graph_residual,
                    "catalog_implicit" => &mut self.catalog_implicit,
                    "lemma25_agreement" => &mut self.lemma25_agreement,
                    "lemma25_fit" => &mut self.lemma25_fit,
                    "lemma25_witness" => &mut self.lemma25_witness,
                    "horizontal_residual" => &mut self.horizontal_residual,
                    "horizontal_implicit" => &mut self.horizontal_implicit,
                    "limit_small" => &mut self.limit_small,
                    "isometry_metric" => &mut self.isometry_metric,
                    "flattening" => &mut self.flattening,
                    "ruled_tangent" => &mut self.ruled_tangent,
                    "ruling_acceleration" => &mut self.ruling_acceleration,
                    _ => return Err(bad(format!("unknown tolerance `{n}`; known: {}", Self::NAMES.join(", ")))),
                };
                *slot = v;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Below(f64),
    Above(f64),
    AtMost(f64),
    Within(f64, f64),
}

impl Bound {
    pub fn holds(&self, v: f64) -> bool {
        match *self {
            Bound::Below(b) => v < b,
            Bound::Above(b) => v > b,
            Bound::AtMost(b) => v <= b,
            Bound::Within(lo, hi) => (lo..=hi).contains(&v),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Below(b) => write!(f, "< {b:e}"),
            Bound::Above(b) => write!(f, "> {b:e}"),
            Bound::AtMost(b) => write!(f, "<= {b}"),
            Bound::Within(lo, hi) => write!(f, "in [{lo}, {hi}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: Bound,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, measured: f64, threshold: Bound) -> Self {
        Self { name: name.into(), measured, pass: threshold.holds(measured), threshold }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "ok  " } else { "FAIL" };
        write!(f, "{tag} {} = {:.3e} ({})", self.name, self.measured, self.threshold)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Informational lines that do not affect the verdict.
    pub notes: Vec<String>,
    pub elapsed: Duration,
    pub pass: bool,
}

impl VerificationReport {
    fn new(suite: &str, checks: Vec<Check>, notes: Vec<String>, elapsed: Duration) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self { suite: suite.to_string(), checks, notes, elapsed, pass }
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn summary_line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let passed = self.checks.iter().filter(|c| c.pass).count();
        format!("{verdict} {} ({passed}/{} checks, {:.2} s)", self.suite, self.checks.len(), self.elapsed.as_secs_f64())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary_line())?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Fault injection: perturb both connection tables so that metric
    /// compatibility fails while torsion-freeness still holds.
    pub tamper_connection: bool,
    pub tol: Tolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 42, tamper_connection: false, tol: Tolerances::default() }
    }
}

impl VerifyConfig {
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Connection,
    Geodesics,
    StraightLines,
    Catalog,
    Expansion,
    HorizontalRuled,
    HelicoidLimit,
    Isometries,
    ClosedForms,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Connection,
        Suite::Geodesics,
        Suite::StraightLines,
        Suite::Catalog,
        Suite::Expansion,
        Suite::HorizontalRuled,
        Suite::HelicoidLimit,
        Suite::Isometries,
        Suite::ClosedForms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Connection => "connection-exactness",
            Suite::Geodesics => "geodesic-conservation",
            Suite::StraightLines => "straight-line-criterion",
            Suite::Catalog => "catalog-minimality",
            Suite::Expansion => "expansion-coefficients",
            Suite::HorizontalRuled => "horizontal-ruled-classification",
            Suite::HelicoidLimit => "helicoid-limit",
            Suite::Isometries => "isometries",
            Suite::ClosedForms => "closed-form-cross-validation",
        }
    }

    /// Wall-clock budget.
    pub fn budget(self) -> Duration {
        Duration::from_secs(match self {
            Suite::Connection => 1,
            Suite::Geodesics => 10,
            Suite::StraightLines => 30,
            Suite::Catalog => 5,
            Suite::Expansion => 60,
            Suite::HorizontalRuled => 10,
            Suite::HelicoidLimit => 10,
            Suite::Isometries => 5,
            Suite::ClosedForms => 10,
        })
    }

    pub fn run(self, cfg: &VerifyConfig) -> VerificationReport {
        let start = Instant::now();
        let (checks, notes) = match self {
            Suite::Connection => connection_suite(cfg),
            Suite::Geodesics => geodesic_suite(cfg),
            Suite::StraightLines => straight_line_suite(cfg),
            Suite::Catalog => catalog_suite(cfg),
            Suite::Expansion => expansion_suite(cfg),
            Suite::HorizontalRuled => horizontal_suite(cfg),
            Suite::HelicoidLimit => limit_suite(cfg),
            Suite::Isometries => isometry_suite(cfg),
            Suite::ClosedForms => closed_form_suite(cfg),
        };
        VerificationReport::new(self.name(), checks, notes, start.elapsed())
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn verify_all(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    Suite::ALL.iter().map(|s| s.run(cfg)).collect()
}

type SuiteOutput = (Vec<Check>, Vec<String>);

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v) })
}

fn tables(cfg: &VerifyConfig, kind: MetricKind) -> ConnectionTable {
    let t = connection(kind);
    if cfg.tamper_connection {
        // A symmetric perturbation keeps the torsion intact.
        let v = t.gamma[0][1][2] + 0.25;
        let w = t.gamma[1][0][2] + 0.25;
        t.with_entry(0, 1, 2, v).with_entry(1, 0, 2, w)
    } else {
        t
    }
}

fn connection_suite(cfg: &VerifyConfig) -> SuiteOutput {
    let tol = cfg.tol.connection_exact;
    let mut checks = Vec::new();
    for kind in MetricKind::BOTH {
        let t = tables(cfg, kind);
        let s = kind.e3_sign();
        let mut expected = [[[0.0; 3]; 3]; 3];
        expected[0][1][2] = 0.5;
        expected[1][0][2] = -0.5;
        expected[0][2][1] = -0.5 * s;
        expected[2][0][1] = -0.5 * s;
        expected[1][2][0] = 0.5 * s;
        expected[2][1][0] = 0.5 * s;
        let mismatch =
            max_of((0..27).map(|n| (t.gamma[n / 9][(n / 3) % 3][n % 3] - expected[n / 9][(n / 3) % 3][n % 3]).abs()));
        checks.push(Check::new(format!("connection-table[{kind}]"), mismatch, Bound::AtMost(0.0)));
        checks.push(Check::new(format!("connection-torsion[{kind}]"), t.torsion_defect(), Bound::Below(tol)));
        checks.push(Check::new(
            format!("connection-compatibility[{kind}]"),
            t.compatibility_defect(),
            Bound::Below(tol),
        ));
    }
    (checks, Vec::new())
}

fn uniform3(rng: &mut ChaCha8Rng, r: f64) -> Vector3<f64> {
    Vector3::new(rng.random_range(-r..r), rng.random_range(-r..r), rng.random_range(-r..r))
}

fn geodesic_suite(cfg: &VerifyConfig) -> SuiteOutput {
    let tol = &cfg.tol;
    let drifts: Vec<(f64, f64, f64, f64)> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.rng(i);
            let p0 = ModelPoint::from_vector(uniform3(&mut rng, 2.0));
            let mut v0 = uniform3(&mut rng, 1.0);
            if v0.norm() < 1e-3 {
                v0.x += 0.5;
            }
            let reduced = integrate_geodesic(p0, v0, 10.0, 1e-3).expect("finite data");
            let start = GeodesicState::new(p0, frame_to_coord_comps(&p0, &v0));
            let full = integrate_geodesic_unreduced(start, 10.0, 1e-3).expect("finite data");
            let gap = max_of(
                reduced
                    .samples
                    .iter()
                    .zip(&full.samples)
                    .map(|(a, b)| a.1.position().euclidean_distance(&b.1.position())),
            );
            let exact = reduced.max_deviation(|t| geodesic_closed_form(p0, v0, t));
            (reduced.max_momentum_drift(), full.max_momentum_drift(), gap, exact)
        })
        .collect();
    let horizontal = max_of(
        (0..20u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = cfg.rng(1000 + i);
                let p0 = ModelPoint::from_vector(uniform3(&mut rng, 2.0));
                let ang: f64 = rng.random_range(0.0..2.0 * PI);
                let v0 = Vector3::new(ang.cos(), ang.sin(), 0.0);
                let line = horizontal_geodesic(p0, v0).expect("horizontal");
                let trace = integrate_geodesic(p0, v0, 10.0, 1e-3).expect("finite data");
                let off = max_of(trace.samples.iter().map(|(_, s)| s.frame_velocity().z.abs()));
                trace.max_deviation(|t| line.point_at(t)).max(off)
            })
            .collect::<Vec<_>>(),
    );
    let oracle = integrate_geodesic(ModelPoint::ORIGIN, Vector3::new(1.0, 0.0, 1.0), 2.0 * PI, 1e-3)
        .expect("finite data")
        .max_deviation(|t| ModelPoint::new(t.sin(), 1.0 - t.cos(), 0.5 * (3.0 * t - t.sin())));
    let checks = vec![
        Check::new("momentum-drift-reduced", max_of(drifts.iter().map(|d| d.0)), Bound::Below(tol.momentum_drift)),
        Check::new("momentum-drift-unreduced", max_of(drifts.iter().map(|d| d.1)), Bound::Below(tol.momentum_drift)),
        Check::new("reduced-vs-unreduced", max_of(drifts.iter().map(|d| d.2)), Bound::Below(tol.geodesic_oracle)),
        Check::new("closed-form-deviation", max_of(drifts.iter().map(|d| d.3)), Bound::Below(tol.geodesic_oracle)),
        Check::new("horizontal-line-deviation", horizontal, Bound::Below(tol.horizontal_line)),
        Check::new("j1-oracle-deviation", oracle, Bound::Below(tol.geodesic_oracle)),
    ];
    (checks, Vec::new())
}

/// A random line, drawn so that the line condition holds with a margin or
/// fails with a margin.
fn random_line(rng: &mut ChaCha8Rng) -> Line3 {
    let base = ModelPoint::from_vector(uniform3(rng, 2.0));
    let class = rng.random_range(0..3u32);
    if class == 1 {
        let a3 = rng.random_range(0.1..1.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        return Line3::new(base, Vector3::new(0.0, 0.0, a3)).expect("nonzero");
    }
    let (a1, a2) = loop {
        let (a1, a2): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if a1.hypot(a2) >= 0.05 {
            break (a1, a2);
        }
    };
    let mut a3 = -0.5 * (a1 * base.y - a2 * base.x);
    if class == 2 {
        a3 += rng.random_range(0.05..1.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    }
    Line3::new(base, Vector3::new(a1, a2, a3)).expect("nonzero")
}

fn straight_line_suite(cfg: &VerifyConfig) -> SuiteOutput {
    let tol = cfg.tol.line_trace;
    let results: Vec<(bool, bool)> = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let line = random_line(&mut cfg.rng(i));
            let predicted = is_geodesic_line(&line).expect("nonzero direction");
            let v0 = coord_to_frame_comps(&line.base, &line.dir);
            let trace = integrate_geodesic(line.base, v0, 1.0, 1e-3).expect("finite data");
            let traced = trace.max_deviation(|t| line.point_at(t)) < tol;
            (predicted, traced)
        })
        .collect();
    let disagreements = results.iter().filter(|(p, t)| p != t).count();
    let geodesic = results.iter().filter(|(p, _)| *p).count();
    let checks = vec![
        Check::new("line-criterion-disagreements", disagreements as f64, Bound::AtMost(0.0)),
        Check::new("geodesic-lines-sampled", geodesic as f64, Bound::Above(0.0)),
        Check::new("non-geodesic-lines-sampled", (results.len() - geodesic) as f64, Bound::Above(0.0)),
    ];
    (checks, vec![format!("{} lines, {geodesic} satisfy the line condition", results.len())])
}

fn catalog_suite(cfg: &VerifyConfig) -> SuiteOutput {
    let tol = &cfg.tol;
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for kind in [
        CatalogKind::HorizontalPlane,
        CatalogKind::VerticalPlane,
        CatalogKind::Helicoid { lambda: 2.0 },
        CatalogKind::HyperbolicParaboloid,
    ] {
        let surface = catalog_surface(kind).expect("valid catalog entry");
        let imm = surface.immersion();
        let grid = Grid::new(surface.default_domain(), 20).expect("grid");
        let implicit = max_of(grid.points().map(|(s, t)| surface.implicit(&imm.point(s, t)).abs()));
        checks.push(Check::new(format!("implicit[{kind}]"), implicit, Bound::Below(tol.catalog_implicit)));
        for metric in MetricKind::BOTH {
            let hs: Vec<f64> = grid.points().filter_map(|(s, t)| mean_curvature(&imm, (s, t), metric).ok()).collect();
            checks.push(Check::new(
                format!("mean-curvature[{kind},{metric}]"),
                max_of(hs.iter().map(|h| h.abs())),
                Bound::Below(tol.catalog_curvature),
            ));
            checks.push(Check::new(format!("points-evaluated[{kind},{metric}]"), hs.len() as f64, Bound::Above(0.0)));
            if hs.len() < grid.len() {
                notes.push(format!(
                    "{kind} {metric}: {} of {} points skipped as singular or lightlike",
                    grid.len() - hs.len(),
                    grid.len()
                ));
            }
        }
    }
    let graphs: Vec<(&str, Box<dyn GraphFunction>, Rect)> = vec![
        ("plane", catalog_surface(CatalogKind::HorizontalPlane).unwrap().graph().unwrap(), Rect::square(1.0)),
        ("hpb", catalog_surface(CatalogKind::HyperbolicParaboloid).unwrap().graph().unwrap(), Rect::square(1.0)),
        (
            "helicoid:2",
            Box::new(HelicoidGraph::new(2.0).unwrap()),
            Rect { x_min: 0.5, x_max: 2.0, y_min: -1.0, y_max: 1.0 },
        ),
    ];
    for (name, f, rect) in &graphs {
        let grid = Grid::new(*rect, 20).expect("grid");
        let mut worst = [0.0_f64; 4];
        for (x, y) in grid.points() {
            let d = doubly_zero_residuals(f.as_ref(), x, y);
            let vals = [
                graph_minimal_residual(f.as_ref(), x, y),
                graph_lorentz_residual(f.as_ref(), x, y),
                d.difference,
                d.sum,
            ];
            for (w, v) in worst.iter_mut().zip(vals) {
                *w = w.max(v.abs());
            }
        }
        for (label, w) in
            ["riemannian-residual", "lorentzian-residual", "difference-residual", "laplacian"].iter().zip(worst)
        {
            checks.push(Check::new(format!("{label}[{name}]"), w, Bound::Below(tol.graph_residual)));
        }
    }
    (checks, notes)
}

/// Polynomial profile with `α(0) = 0` and coefficients uniform in `[−1, 1)`.
pub fn random_ruled_profile(rng: &mut ChaCha8Rng) -> RuledProfile {
    let mut u = || rng.random_range(-1.0..1.0);
    let h = Polynomial1::new(vec![u(), u(), u()]);
    let alpha = Polynomial1::new(vec![0.0, u(), u()]);
    let g = Polynomial1::new(vec![u(), u()]);
    RuledProfile::polynomial(h, alpha, g)
}

fn expansion_suite(cfg: &VerifyConfig) -> SuiteOutput {
    let tol = &cfg.tol;
    let results: Vec<(f64, f64, f64)> = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let p = random_ruled_profile(&mut cfg.rng(i));
            let c = compare_lemma25(&p).expect("normalized profile");
            // The same fit with the alternative transcription of X_ss.
            let j = p.jet(0.0);
            let samples: Vec<(f64, f64)> = NodeSet::DEFAULT
                .nodes()
                .into_iter()
                .map(|t| {
                    let tan = crate::ruled::closed_form::tangents_at(&j, t);
                    (
                        t,
                        crate::ruled::closed_form::htilde_from(
                            &tan,
                            &crate::ruled::closed_form::second_at_alternative(&j, t),
                        ),
                    )
                })
                .collect();
            let alt = fit_expansion(&samples).expect("well conditioned");
            (c.max_abs_diff(), c.fitted.residual, alt.selected().max_abs_diff(&c.closed).max(alt.residual))
        })
        .collect();
    let mut checks = vec![
        Check::new("coefficient-agreement", max_of(results.iter().map(|r| r.0)), Bound::Below(tol.lemma25_agreement)),
        Check::new("fit-residual", max_of(results.iter().map(|r| r.1)), Bound::Below(tol.lemma25_fit)),
    ];
    let unit = RuledProfile::constant(1.0, 0.0, 0.0);
    let e = extract_expansion_coefficients(&unit).expect("normalized profile");
    checks.push(Check::new("witness-c5-error", (e.c5() - 0.5).abs(), Bound::Below(tol.lemma25_agreement)));
    let peak = max_of((0..=400).map(|k| htilde(&unit, 0.0, 2.0 * PI * k as f64 / 400.0).abs()));
    checks.push(Check::new("witness-htilde-peak", peak, Bound::Above(tol.lemma25_witness)));
    // The witness family with nonconstant g and α″ ≠ 0.
    let family = max_of((0..10u64).map(|i| {
        let mut rng = cfg.rng(500 + i);
        let h0: f64 = rng.random_range(0.2..2.0);
        let p = RuledProfile::polynomial(
            Polynomial1::constant(h0),
            Polynomial1::new(vec![0.0, 0.0, rng.random_range(-1.0..1.0)]),
            Polynomial1::linear(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        );
        let e = extract_expansion_coefficients(&p).expect("normalized profile");
        (e.c5() - 0.25 * h0.powi(3) * (h0 * h0 + 1.0)).abs()
    }));
    checks.push(Check::new("witness-family-c5-error", family, Bound::Below(tol.lemma25_agreement)));
    let notes = vec![format!(
        "alternative X_ss transcription: max |fitted - closed| or misfit over the same profiles = {:.3e}",
        max_of(results.iter().map(|r| r.2))
    )];
    (checks, notes)
}

fn horizontal_suite(cfg: &VerifyConfig) -> SuiteOutput {
    let tol = &cfg.tol;
    let grid = Grid::new(Rect::square(1.0), 41).expect("grid");
    let sup = |p: &HorizontalRuledProfile| max_of(grid.points().map(|(s, t)| horizontal_ruled_residual(p, s, t).abs()));
    let mut zero = 0.0_f64;
    let mut nonzero = f64::INFINITY;
    for i in 0..20u64 {
        let mut rng = cfg.rng(i);
        let mut u = || rng.random_range(-1.0..1.0);
        let (c0, c1, b0, q) = (u(), u(), u(), u());
        let minimal = HorizontalRuledProfile::polynomial(Polynomial1::linear(c0, c1), Polynomial1::constant(b0));
        zero = zero.max(sup(&minimal));
        // Either α″ or β′ is nonzero.
        let bend = 0.2 + q.abs();
        let curved = if i % 2 == 0 {
            HorizontalRuledProfile::polynomial(Polynomial1::new(vec![c0, c1, bend]), Polynomial1::constant(b0))
        } else {
            HorizontalRuledProfile::polynomial(Polynomial1::linear(c0, c1), Polynomial1::linear(b0, bend))
        };
        nonzero = nonzero.min(sup(&curved));
    }
    let mut checks = vec![
        Check::new("residual-minimal-families", zero, Bound::Below(tol.horizontal_residual)),
        Check::new("residual-nonminimal-families", nonzero, Bound::Above(tol.horizontal_residual)),
    ];
    let params = Grid::new(Rect::square(1.0), 11).expect("grid");
    let mut cases: Vec<(f64, f64)> = (0..6u64)
        .map(|i| {
            let mut rng = cfg.rng(100 + i);
            let a = rng.random_range(0.3..1.5) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            (a, rng.random_range(-PI..PI))
        })
        .collect();
    cases.push((0.75, 7.0 * PI / 6.0));
    let mut helicoid = 0.0_f64;
    let mut plane = 0.0_f64;
    let mut plane_cases = 0;
    for (a, b) in cases {
        let surf = horizontal_ruled_surface(HorizontalRuledProfile::helicoidal(a, b), helicoid_base(a, b));
        match helicoid_lambda(a, b).expect("a ≠ 0") {
            HelicoidCase::Helicoid { lambda } => {
                let c = catalog_surface(CatalogKind::Helicoid { lambda }).expect("λ ≠ 0");
                helicoid = helicoid.max(max_of(params.points().map(|(s, t)| c.implicit(&surf.point(s, t)).abs())));
            }
            HelicoidCase::Plane => {
                plane_cases += 1;
                plane = plane.max(max_of(params.points().map(|(s, t)| surf.point(s, t).z.abs())));
            }
        }
    }
    checks.push(Check::new("helicoid-family-implicit", helicoid, Bound::Below(tol.horizontal_implicit)));
    checks.push(Check::new("plane-case-implicit", plane, Bound::Below(tol.horizontal_implicit)));
    checks.push(Check::new("plane-cases-found", plane_cases as f64, Bound::Above(0.0)));
    let mut hpb = 0.0_f64;
    for i in 0..4u64 {
        let b: f64 = cfg.rng(200 + i).random_range(-1.2..1.2);
        let surf = horizontal_ruled_surface(
            HorizontalRuledProfile::polynomial(Polynomial1::constant(0.0), Polynomial1::constant(b)),
            ModelPoint::new(-b.tan(), 0.0, 0.0),
        );
        hpb = hpb.max(max_of(params.points().map(|(s, t)| {
            let p = surf.point(s, t);
            (p.z + 0.5 * p.x * p.y).abs()
        })));
    }
    checks.push(Check::new("paraboloid-family-implicit", hpb, Bound::Below(tol.horizontal_implicit)));
    let xz = horizontal_ruled_surface(
        HorizontalRuledProfile::polynomial(Polynomial1::constant(0.0), Polynomial1::constant(FRAC_PI_2)),
        ModelPoint::ORIGIN,
    );
    let vertical = max_of(params.points().map(|(s, t)| xz.point(s, t).y.abs()));
    checks.push(Check::new("xz-plane-implicit", vertical, Bound::Below(tol.horizontal_implicit)));
    (checks, Vec::new())
}

fn limit_suite(cfg: &VerifyConfig) -> SuiteOutput {
    let tol = &cfg.tol;
    let lambdas = [1.0, 0.25, 0.0625, 0.015625];
    let domain = Rect::square(1.0);
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    match convergence_table(&lambdas, domain, 21) {
        Ok(rows) => {
            for r in &rows {
                notes.push(format!("lambda {:e}: sup error {:.6e}", r.lambda, r.sup_error));
                if let Some(q) = r.ratio_to_prev {
                    checks.push(Check::new(
                        format!("ratio[{}]", r.lambda),
                        q,
                        Bound::Within(tol.limit_ratio.0, tol.limit_ratio.1),
                    ));
                }
            }
            let last = rows.last().expect("nonempty");
            let extrapolated = last.sup_error * (1e-6 / last.lambda).sqrt();
            notes.push(format!("extrapolated error at lambda 1e-6: {extrapolated:.3e}"));
            checks.push(Check::new("extrapolated-error[1e-6]", extrapolated, Bound::Below(tol.limit_small)));
        }
        Err(e) => checks.push(Check::new(format!("convergence-table ({e})"), f64::NAN, Bound::Below(0.0))),
    }
    let direct = limit_error(1e-6, domain, 21).unwrap_or(f64::NAN);
    checks.push(Check::new("sup-error[1e-6]", direct, Bound::Below(tol.limit_small)));
    (checks, notes)
}

fn isometry_suite(cfg: &VerifyConfig) -> SuiteOutput {
    let tol = &cfg.tol;
    let mut metric = 0.0_f64;
    for i in 0..100u64 {
        let mut rng = cfg.rng(i);
        let iso = IsometryElement::new(
            rng.random_range(-PI..PI),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
        );
        let p = ModelPoint::from_vector(uniform3(&mut rng, 3.0));
        let (v, w) = (uniform3(&mut rng, 2.0), uniform3(&mut rng, 2.0));
        let image = iso.apply(&p);
        let push = |a: &Vector3<f64>| coord_to_frame_comps(&image, &(iso.jacobian() * frame_to_coord_comps(&p, a)));
        let (pv, pw) = (push(&v), push(&w));
        for kind in MetricKind::BOTH {
            metric = metric.max((metric_dot(kind, &pv, &pw) - metric_dot(kind, &v, &w)).abs());
        }
    }
    let mut flat = 0.0_f64;
    for i in 0..100u64 {
        let mut rng = cfg.rng(1000 + i);
        let (a, b, d) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let iso = plane_flattening_isometry(a, b, d);
        for _ in 0..50 {
            let (x, y): (f64, f64) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            flat = flat.max(iso.apply(&ModelPoint::new(x, y, -a * x - b * y - d)).z.abs());
        }
    }
    let mut pullback = 0.0_f64;
    for i in 0..100u64 {
        let mut rng = cfg.rng(2000 + i);
        let lambda: f64 = rng.random_range(0.01..4.0);
        let r = (2.0 / lambda).sqrt();
        let iso = helicoid_pullback_isometry(lambda).expect("λ > 0");
        let p = ModelPoint::from_vector(uniform3(&mut rng, 3.0));
        let q = iso.apply(&p);
        pullback = pullback.max(q.euclidean_distance(&ModelPoint::new(p.x + r, p.y, p.z + r * p.y / 2.0)));
    }
    let checks = vec![
        Check::new("pullback-metric-invariance", metric, Bound::Below(tol.isometry_metric)),
        Check::new("plane-flattening", flat, Bound::Below(tol.flattening)),
        Check::new("helicoid-recentering-map", pullback, Bound::AtMost(0.0)),
    ];
    (checks, Vec::new())
}

fn closed_form_profiles(cfg: &VerifyConfig) -> Vec<RuledProfile> {
    let mut profiles = vec![
        RuledProfile::polynomial(
            Polynomial1::new(vec![0.8, 0.3, -0.4]),
            Polynomial1::new(vec![0.2, 0.6, 0.25]),
            Polynomial1::new(vec![-0.3, 0.5, 0.1]),
        ),
        RuledProfile::constant(1.0, 0.0, 0.0),
    ];
    profiles.extend((0..3u64).map(|i| random_ruled_profile(&mut cfg.rng(i))));
    profiles
}

fn fd_second(p: &RuledProfile, s: f64, t: f64, step: f64) -> RuledSecond {
    let fd = FiniteDiff::new(step).expect("positive step");
    let xs = |s: f64, t: f64| ruled_tangents(p, s, t).xs;
    let xt = |s: f64, t: f64| ruled_tangents(p, s, t).xt;
    let k = MetricKind::Riemannian;
    RuledSecond {
        st: covariant_derivative_frame(xs, xt, ParamDir::T, (s, t), k, &fd).expect("valid step"),
        ss: covariant_derivative_frame(xs, xs, ParamDir::S, (s, t), k, &fd).expect("valid step"),
    }
}

fn closed_form_suite(cfg: &VerifyConfig) -> SuiteOutput {
    let tol = &cfg.tol;
    let profiles = closed_form_profiles(cfg);
    let points: Vec<(f64, f64)> =
        Grid::new(Rect::new(-1.0, 1.0, 0.0, 2.0 * PI).expect("rect"), 5).expect("grid").points().collect();
    let (h1, h2) = (2e-3, 1e-3);
    let mut err = [[0.0_f64; 2]; 2];
    let mut alt = [0.0_f64; 2];
    let mut acc = 0.0_f64;
    let fd = FiniteDiff::new(1e-4).expect("positive step");
    for p in &profiles {
        for &(s, t) in &points {
            let closed = ruled_second_derivatives(p, s, t);
            for (k, h) in [h1, h2].into_iter().enumerate() {
                let n = fd_second(p, s, t, h);
                err[k][0] = err[k][0].max((n.st - closed.st).amax());
                err[k][1] = err[k][1].max((n.ss - closed.ss).amax());
                let a = ruled_second_derivatives_alternative(p, s, t);
                alt[k] = alt[k].max((n.ss - a.ss).amax());
            }
            let xt = |s: f64, t: f64| ruled_tangents(p, s, t).xt;
            let a = covariant_derivative_frame(xt, xt, ParamDir::T, (s, t), MetricKind::Riemannian, &fd)
                .expect("valid step");
            acc = acc.max(a.amax());
        }
    }
    let tangent = max_of(
        profiles
            .par_iter()
            .flat_map_iter(|p| {
                let surf = NumericRuledSurface::new(p.clone());
                points
                    .iter()
                    .map(move |&(s, t)| {
                        let num = surf.tangents(s, t, 1e-4);
                        let closed = ruled_tangents(p, s, t);
                        (num.xs - closed.xs).amax().max((num.xt - closed.xt).amax())
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    );
    let band = Bound::Within(tol.halving_ratio.0, tol.halving_ratio.1);
    let checks = vec![
        Check::new("halving-ratio[X_st]", err[0][0] / err[1][0], band),
        Check::new("halving-ratio[X_ss]", err[0][1] / err[1][1], band),
        // Sanity bounds: second-order error at step 1e-3 with O(100) constants.
        Check::new("fd-error[X_st]", err[1][0], Bound::Below(1e-4)),
        Check::new("fd-error[X_ss]", err[1][1], Bound::Below(1e-4)),
        Check::new("tangents-vs-numeric-surface", tangent, Bound::Below(tol.ruled_tangent)),
        Check::new("ruling-acceleration", acc, Bound::Below(tol.ruling_acceleration)),
    ];
    let notes = vec![format!(
        "alternative X_ss transcription: fd error {:.3e} at step {h1}, {:.3e} at step {h2} (ratio {:.2})",
        alt[0],
        alt[1],
        alt[0] / alt[1]
    )];
    (checks, notes)
}
