//! Residual scans over a grid, evaluated in parallel and emitted in row-major order.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::frame::MetricKind;
use crate::grid::Grid;
use crate::surface::forms::fundamental_forms;
use crate::surface::graph::{
    causal_type, doubly_zero_residuals, graph_lorentz_residual, graph_minimal_residual, CausalType, GraphFunction,
};
use crate::surface::immersion::Immersion;

pub const SCAN_HEADER: &str = "x,y,riem_residual,lorentz_residual,diff_eq7,laplacian,causal";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub x: f64,
    pub y: f64,
    pub riem: f64,
    pub lorentz: f64,
    /// NaN when the surface is not scanned as a graph.
    pub diff: f64,
    pub laplacian: f64,
    pub causal: CausalType,
}

pub fn scan_graph<G: GraphFunction + ?Sized>(f: &G, grid: &Grid) -> Vec<ScanRow> {
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let (x, y) = grid.point(i);
            let d = doubly_zero_residuals(f, x, y);
            ScanRow {
                x,
                y,
                riem: graph_minimal_residual(f, x, y),
                lorentz: graph_lorentz_residual(f, x, y),
                diff: d.difference,
                laplacian: d.sum,
                causal: causal_type(f, x, y),
            }
        })
        .collect()
}

/// Scan of a general immersion over its parameter grid. The residual columns
/// hold the mean curvature for each metric (NaN where undefined), and the
/// causal tag follows the sign of the Lorentzian `EG − F²`.
pub fn scan_immersion<I: Immersion + Sync + ?Sized>(imm: &I, grid: &Grid) -> Vec<ScanRow> {
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let (s, t) = grid.point(i);
            let h = |kind| crate::surface::forms::mean_curvature(imm, (s, t), kind).unwrap_or(f64::NAN);
            let causal = match fundamental_forms(imm, (s, t), MetricKind::Lorentzian) {
                Ok(ff) if ff.w2 > 0.0 => CausalType::Spacelike,
                Ok(_) => CausalType::Timelike,
                Err(_) => CausalType::Lightlike,
            };
            ScanRow {
                x: s,
                y: t,
                riem: h(MetricKind::Riemannian),
                lorentz: h(MetricKind::Lorentzian),
                diff: f64::NAN,
                laplacian: f64::NAN,
                causal,
            }
        })
        .collect()
}

pub fn write_scan_csv<W: Write>(mut out: W, rows: &[ScanRow], comment: Option<&str>) -> io::Result<()> {
    if let Some(c) = comment {
        for line in c.lines() {
            writeln!(out, "# {line}")?;
        }
    }
    writeln!(out, "{SCAN_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.x, r.y, r.riem, r.lorentz, r.diff, r.laplacian, r.causal
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Rect;
    use crate::surface::graph::PolynomialGraph;

    #[test]
    fn rows_follow_grid_order() {
        let grid = Grid::new(Rect::square(1.0), 7).unwrap();
        let rows = scan_graph(&PolynomialGraph::hyperbolic_paraboloid(), &grid);
        assert_eq!(rows.len(), 49);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!((r.x, r.y), grid.point(i));
            assert_eq!((r.riem, r.lorentz, r.diff, r.laplacian), (0.0, 0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn csv_layout() {
        let grid = Grid::new(Rect::square(1.0), 2).unwrap();
        let rows = scan_graph(&PolynomialGraph::new(vec![(2, 0, 1.0)]), &grid);
        let mut buf = Vec::new();
        write_scan_csv(&mut buf, &rows, Some("cfg surface=x2")).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# cfg surface=x2");
        assert_eq!(lines[1], SCAN_HEADER);
        assert_eq!(lines.len(), 6);
        assert!(lines[2].starts_with("-1.0000000000000000e0,-1.0000000000000000e0,"));
        assert!(lines[2].ends_with(",timelike"));
    }
}
