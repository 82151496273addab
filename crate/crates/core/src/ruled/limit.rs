//! Rescaled helicoids `tan(λz) = y/x` converge to the hyperbolic paraboloid
//! `z = −xy/2` as `λ → 0` once the point `(−r, 0, 0)`, `r = √(2/λ)`, is
//! moved to the origin.
//!
//! The translation by `(r, 0, 0)` sends `(x, y, z)` to `(x + r, y, z + ry/2)`,
//! so the pulled-back helicoid is `y = (x + r) tan(λz + rλy/2)`. Heights are
//! taken on the branch `|λz + rλy/2| < π/2`.

use std::f64::consts::FRAC_PI_2;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::grid::{Grid, Rect};
use crate::isometry::IsometryElement;

pub const BISECTION_TOL: f64 = 1e-12;
pub const BISECTION_MAX_ITER: usize = 400;
pub const LIMIT_HEADER: &str = "lambda,sup_error,ratio_to_prev";

fn check_lambda(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(GeomError::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    Ok((2.0 / lambda).sqrt())
}

/// The translation used to recenter the helicoid of parameter `λ`.
pub fn helicoid_pullback_isometry(lambda: f64) -> Result<IsometryElement> {
    Ok(IsometryElement::translation(check_lambda(lambda)?, 0.0, 0.0))
}

/// Height of the pulled-back helicoid over `(x, y)` by bisection.
pub fn helicoid_pullback_height(lambda: f64, x: f64, y: f64) -> Result<f64> {
    let r = check_lambda(lambda)?;
    let width = x + r;
    if width.is_nan() || width <= 0.0 {
        return Err(GeomError::OutsideChart { x, y });
    }
    let shift = 0.5 * r * lambda * y;
    let f = |z: f64| y - width * (lambda * z + shift).tan();
    // f decreases from +∞ to −∞ across the open branch.
    let (mut lo, mut hi) = ((-FRAC_PI_2 - shift) / lambda, (FRAC_PI_2 - shift) / lambda);
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= BISECTION_TOL || mid == lo || mid == hi {
            return Ok(mid);
        }
        let v = f(mid);
        if v == 0.0 {
            return Ok(mid);
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(GeomError::OutsideChart { x, y })
}

/// `max |z_λ(x, y) + xy/2|` over the grid.
pub fn limit_error(lambda: f64, domain: Rect, n: usize) -> Result<f64> {
    let grid = Grid::new(domain, n)?;
    let errs: Result<Vec<f64>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let (x, y) = grid.point(i);
            Ok((helicoid_pullback_height(lambda, x, y)? + 0.5 * x * y).abs())
        })
        .collect();
    Ok(errs?.into_iter().fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow {
    pub lambda: f64,
    pub sup_error: f64,
    pub ratio_to_prev: Option<f64>,
}

pub fn convergence_table(lambdas: &[f64], domain: Rect, n: usize) -> Result<Vec<LimitRow>> {
    let mut rows: Vec<LimitRow> = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let sup_error = limit_error(lambda, domain, n)?;
        let ratio_to_prev = rows.last().map(|p| sup_error / p.sup_error);
        rows.push(LimitRow { lambda, sup_error, ratio_to_prev });
    }
    Ok(rows)
}

pub fn write_limit_csv<W: Write>(mut out: W, rows: &[LimitRow], comment: Option<&str>) -> io::Result<()> {
    if let Some(c) = comment {
        for line in c.lines() {
            writeln!(out, "# {line}")?;
        }
    }
    writeln!(out, "{LIMIT_HEADER}")?;
    for r in rows {
        match r.ratio_to_prev {
            Some(q) => writeln!(out, "{:.16e},{:.16e},{:.16e}", r.lambda, r.sup_error, q)?,
            None => writeln!(out, "{:.16e},{:.16e},", r.lambda, r.sup_error)?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::ModelPoint;

    /// Principal-branch solution in closed form.
    fn oracle(lambda: f64, x: f64, y: f64) -> f64 {
        let r = (2.0 / lambda).sqrt();
        ((y / (x + r)).atan() - 0.5 * r * lambda * y) / lambda
    }

    #[test]
    fn bisection_matches_closed_form() {
        for &lambda in &[1.0, 0.25, 1e-3, 1e-6] {
            for &(x, y) in &[(0.0, 0.0), (1.0, 1.0), (-1.0, 0.5), (0.7, -1.0)] {
                let z = helicoid_pullback_height(lambda, x, y).unwrap();
                let tol = 1e-10 / lambda.sqrt();
                assert!((z - oracle(lambda, x, y)).abs() < tol, "λ={lambda} ({x},{y}): {z}");
            }
        }
        assert_eq!(helicoid_pullback_height(0.3, 0.0, 0.0).unwrap().abs(), 0.0);
        let z = helicoid_pullback_height(4.0, 0.5, -0.3).unwrap();
        assert!((z - oracle(4.0, 0.5, -0.3)).abs() < 1e-11);
    }

    #[test]
    fn heights_approach_the_paraboloid() {
        let z = helicoid_pullback_height(0.01, 1.0, 1.0).unwrap();
        assert!((z + 0.5).abs() < 0.5 * 0.01_f64.sqrt(), "{z}");
        let z = helicoid_pullback_height(1e-8, 1.0, 1.0).unwrap();
        assert!((z + 0.5).abs() < 1e-3);
    }

    #[test]
    fn errors() {
        assert!(helicoid_pullback_height(0.0, 0.0, 0.0).is_err());
        assert!(helicoid_pullback_height(-1.0, 0.0, 0.0).is_err());
        assert_eq!(helicoid_pullback_height(2.0, -5.0, 0.0), Err(GeomError::OutsideChart { x: -5.0, y: 0.0 }));
    }

    #[test]
    fn pullback_isometry_is_the_stated_map() {
        let lambda = 0.5;
        let r = 2.0;
        let iso = helicoid_pullback_isometry(lambda).unwrap();
        let p = ModelPoint::new(0.3, -1.2, 0.8);
        assert_eq!(iso.apply(&p), ModelPoint::new(p.x + r, p.y, p.z + r * p.y / 2.0));
    }

    #[test]
    fn rate_is_square_root() {
        let table = convergence_table(&[1.0, 0.25, 0.0625, 0.015625], Rect::square(1.0), 21).unwrap();
        assert!(table[0].ratio_to_prev.is_none());
        for r in &table[1..] {
            let q = r.ratio_to_prev.unwrap();
            assert!((0.35..=0.65).contains(&q), "{r:?}");
        }
        assert!(limit_error(1e-6, Rect::square(1.0), 21).unwrap() < 1e-2);
        let mut buf = Vec::new();
        write_limit_csv(&mut buf, &table[..2], None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], LIMIT_HEADER);
        assert!(lines[1].ends_with(','));
        assert_eq!(lines[2].split(',').count(), 3);
    }
}
