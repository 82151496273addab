//! The four surfaces that are minimal for both metrics.

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;

use crate::error::{GeomError, Result};
use crate::frame::ModelPoint;
use crate::grid::Rect;
use crate::surface::graph::{GraphFunction, GraphImmersion, HelicoidGraph, PolynomialGraph};
use crate::surface::immersion::{Immersion, Jet};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogKind {
    /// `z = 0`
    HorizontalPlane,
    /// `y = 0`
    VerticalPlane,
    /// `tan(λz) = y/x`
    Helicoid { lambda: f64 },
    /// `z = −xy/2`
    HyperbolicParaboloid,
}

impl FromStr for CatalogKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plane" => Ok(CatalogKind::HorizontalPlane),
            "vplane" => Ok(CatalogKind::VerticalPlane),
            "hpb" => Ok(CatalogKind::HyperbolicParaboloid),
            _ => {
                let rest = s.strip_prefix("helicoid:").ok_or_else(|| {
                    GeomError::InvalidParameter(format!(
                        "unknown surface `{s}`; expected plane, vplane, helicoid:<lambda> or hpb"
                    ))
                })?;
                let lambda: f64 = rest
                    .parse()
                    .map_err(|_| GeomError::InvalidParameter(format!("bad helicoid parameter `{rest}`")))?;
                catalog_surface(CatalogKind::Helicoid { lambda }).map(|c| c.kind)
            }
        }
    }
}

impl fmt::Display for CatalogKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKind::HorizontalPlane => f.write_str("plane"),
            CatalogKind::VerticalPlane => f.write_str("vplane"),
            CatalogKind::Helicoid { lambda } => write!(f, "helicoid:{lambda}"),
            CatalogKind::HyperbolicParaboloid => f.write_str("hpb"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogSurface {
    pub kind: CatalogKind,
}

pub fn catalog_surface(kind: CatalogKind) -> Result<CatalogSurface> {
    if let CatalogKind::Helicoid { lambda } = kind {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(GeomError::InvalidParameter(format!("helicoid needs a finite nonzero lambda, got {lambda}")));
        }
    }
    Ok(CatalogSurface { kind })
}

impl CatalogSurface {
    /// Vanishes exactly on the surface.
    pub fn implicit(&self, p: &ModelPoint) -> f64 {
        match self.kind {
            CatalogKind::HorizontalPlane => p.z,
            CatalogKind::VerticalPlane => p.y,
            CatalogKind::Helicoid { lambda } => p.y * (lambda * p.z).cos() - p.x * (lambda * p.z).sin(),
            CatalogKind::HyperbolicParaboloid => p.z + 0.5 * p.x * p.y,
        }
    }

    /// The height function when the surface is a graph over the `xy`-plane.
    pub fn graph(&self) -> Option<Box<dyn GraphFunction>> {
        match self.kind {
            CatalogKind::HorizontalPlane => Some(Box::new(PolynomialGraph::zero())),
            CatalogKind::VerticalPlane => None,
            CatalogKind::Helicoid { lambda } => {
                HelicoidGraph::new(lambda).ok().map(|h| Box::new(h) as Box<dyn GraphFunction>)
            }
            CatalogKind::HyperbolicParaboloid => Some(Box::new(PolynomialGraph::hyperbolic_paraboloid())),
        }
    }

    /// A parameter rectangle of regular points.
    pub fn default_domain(&self) -> Rect {
        match self.kind {
            CatalogKind::Helicoid { .. } => Rect { x_min: -3.0, x_max: 3.0, y_min: -1.5, y_max: 1.5 },
            _ => Rect::square(1.0),
        }
    }

    pub fn immersion(&self) -> CatalogImmersion {
        CatalogImmersion { kind: self.kind }
    }
}

/// Parametrizations: graphs for the plane and the paraboloid, `(s, 0, t)`
/// for the vertical plane and `(t cos s, t sin s, s/λ)` for the helicoid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogImmersion {
    kind: CatalogKind,
}

impl Immersion for CatalogImmersion {
    fn point(&self, s: f64, t: f64) -> ModelPoint {
        self.analytic_jet(s, t).map(|j| j.point).unwrap_or(ModelPoint::new(f64::NAN, f64::NAN, f64::NAN))
    }

    fn analytic_jet(&self, s: f64, t: f64) -> Option<Jet> {
        let z = Vector3::zeros();
        match self.kind {
            CatalogKind::HorizontalPlane => GraphImmersion(PolynomialGraph::zero()).analytic_jet(s, t),
            CatalogKind::HyperbolicParaboloid => {
                GraphImmersion(PolynomialGraph::hyperbolic_paraboloid()).analytic_jet(s, t)
            }
            CatalogKind::VerticalPlane => Some(Jet {
                point: ModelPoint::new(s, 0.0, t),
                xs: Vector3::new(1.0, 0.0, 0.0),
                xt: Vector3::new(0.0, 0.0, 1.0),
                xss: z,
                xst: z,
                xtt: z,
            }),
            CatalogKind::Helicoid { lambda } => {
                let (sn, cs) = s.sin_cos();
                Some(Jet {
                    point: ModelPoint::new(t * cs, t * sn, s / lambda),
                    xs: Vector3::new(-t * sn, t * cs, 1.0 / lambda),
                    xt: Vector3::new(cs, sn, 0.0),
                    xss: Vector3::new(-t * cs, -t * sn, 0.0),
                    xst: Vector3::new(-sn, cs, 0.0),
                    xtt: z,
                })
            }
        }
    }
}
