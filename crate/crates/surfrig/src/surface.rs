//! Families of concentric cylinders, cones and ellipsoids.
//!
//! A family assigns one surface to each vertex: `x^2 + y^2 = r_i`
//! (cylinder), `x^2 + y^2 = r_i z^2` (cone) or
//! `x^2 + a y^2 + b z^2 = r_i` (ellipsoid, with fixed `1 < a < b`). The
//! per-vertex constraint function, its half-gradient (the tangency vector)
//! and the energy weight live here, together with the family *induced* by a
//! point configuration.

use crate::numeric::Scalar;
use rand::Rng;
use thiserror::Error;

/// Default ellipsoid shape parameters; any rationals with `1 < a < b` work.
pub const DEFAULT_ALPHA: (i64, i64) = (2, 1);
pub const DEFAULT_BETA: (i64, i64) = (3, 1);

#[derive(Debug, Error, PartialEq)]
pub enum SurfaceError {
    #[error("family must cover at least one vertex")]
    Empty,
    #[error("radius of vertex {0} is not positive")]
    NonPositiveRadius(usize),
    #[error("ellipsoid shape parameters must satisfy 1 < alpha < beta")]
    BadShape,
    #[error("vertex {0} is degenerate for this family (z-axis, apex or origin)")]
    DegenerateConfiguration(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Cylinder,
    Cone,
    Ellipsoid,
}

impl SurfaceKind {
    /// Dimension of the surface's space of infinitesimal isometries.
    pub fn isometry_dim(self) -> usize {
        match self {
            SurfaceKind::Cylinder => 2,
            SurfaceKind::Cone => 1,
            SurfaceKind::Ellipsoid => 0,
        }
    }

    /// Row count of the configuration matrix; full realisation means the
    /// configuration matrix reaches this rank.
    pub fn config_rank(self) -> usize {
        match self {
            SurfaceKind::Cylinder => 6,
            SurfaceKind::Cone => 5,
            SurfaceKind::Ellipsoid => 3,
        }
    }

    /// Connectivity required by the Hendrickson-type necessary condition.
    pub fn connectivity_requirement(self) -> usize {
        match self {
            SurfaceKind::Cylinder | SurfaceKind::Cone => 2,
            SurfaceKind::Ellipsoid => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceKind::Cylinder => "cylinder",
            SurfaceKind::Cone => "cone",
            SurfaceKind::Ellipsoid => "ellipsoid",
        }
    }
}

impl std::str::FromStr for SurfaceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "cylinder" | "y" => Ok(SurfaceKind::Cylinder),
            "cone" | "c" => Ok(SurfaceKind::Cone),
            "ellipsoid" | "e" => Ok(SurfaceKind::Ellipsoid),
            other => Err(format!("unknown surface kind: {other}")),
        }
    }
}

/// A point (or vector) in 3-space over either scalar backend.
#[derive(Clone, Debug, PartialEq)]
pub struct Point3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Point3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(S::from_int(x), S::from_int(y), S::from_int(z))
    }

    pub fn coord(&self, axis: usize) -> &S {
        match axis {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("axis out of range"),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.x.clone() - other.x.clone(),
            self.y.clone() - other.y.clone(),
            self.z.clone() - other.z.clone(),
        )
    }

    pub fn dist_sq(&self, other: &Self) -> S {
        let d = self.sub(other);
        d.x.clone() * d.x + d.y.clone() * d.y + d.z.clone() * d.z
    }

    /// Midpoint of the segment between two points.
    pub fn midpoint(&self, other: &Self) -> Self {
        let half = S::from_ratio(1, 2);
        Self::new(
            (self.x.clone() + other.x.clone()) * half.clone(),
            (self.y.clone() + other.y.clone()) * half.clone(),
            (self.z.clone() + other.z.clone()) * half,
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceFamily<S> {
    Cylinder { radii: Vec<S> },
    Cone { radii: Vec<S> },
    Ellipsoid { alpha: S, beta: S, radii: Vec<S> },
}

impl<S: Scalar> SurfaceFamily<S> {
    pub fn cylinder(radii: Vec<S>) -> Result<Self, SurfaceError> {
        validate_radii(&radii)?;
        Ok(SurfaceFamily::Cylinder { radii })
    }

    pub fn cone(radii: Vec<S>) -> Result<Self, SurfaceError> {
        validate_radii(&radii)?;
        Ok(SurfaceFamily::Cone { radii })
    }

    pub fn ellipsoid(alpha: S, beta: S, radii: Vec<S>) -> Result<Self, SurfaceError> {
        validate_radii(&radii)?;
        if alpha <= S::one() || beta <= alpha {
            return Err(SurfaceError::BadShape);
        }
        Ok(SurfaceFamily::Ellipsoid { alpha, beta, radii })
    }

    pub fn kind(&self) -> SurfaceKind {
        match self {
            SurfaceFamily::Cylinder { .. } => SurfaceKind::Cylinder,
            SurfaceFamily::Cone { .. } => SurfaceKind::Cone,
            SurfaceFamily::Ellipsoid { .. } => SurfaceKind::Ellipsoid,
        }
    }

    pub fn len(&self) -> usize {
        self.radii().len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii().is_empty()
    }

    pub fn radii(&self) -> &[S] {
        match self {
            SurfaceFamily::Cylinder { radii }
            | SurfaceFamily::Cone { radii }
            | SurfaceFamily::Ellipsoid { radii, .. } => radii,
        }
    }

    pub fn radius(&self, i: usize) -> &S {
        &self.radii()[i]
    }

    /// Ellipsoid shape parameters, if applicable.
    pub fn shape(&self) -> Option<(&S, &S)> {
        match self {
            SurfaceFamily::Ellipsoid { alpha, beta, .. } => Some((alpha, beta)),
            _ => None,
        }
    }

    /// The constraint function h_i; zero exactly when `pt` lies on the i-th
    /// surface of the family.
    pub fn constraint_value(&self, i: usize, pt: &Point3<S>) -> S {
        let (x, y, z) = (pt.x.clone(), pt.y.clone(), pt.z.clone());
        match self {
            SurfaceFamily::Cylinder { radii } => {
                x.clone() * x + y.clone() * y - radii[i].clone()
            }
            SurfaceFamily::Cone { radii } => {
                x.clone() * x + y.clone() * y - radii[i].clone() * z.clone() * z
            }
            SurfaceFamily::Ellipsoid { alpha, beta, radii } => {
                x.clone() * x
                    + alpha.clone() * y.clone() * y
                    + beta.clone() * z.clone() * z
                    - radii[i].clone()
            }
        }
    }

    /// Half the gradient of h_i at `pt`; the row the i-th vertex contributes
    /// to the surface block of the rigidity matrix.
    pub fn tangency_vector(&self, i: usize, pt: &Point3<S>) -> Point3<S> {
        let (x, y, z) = (pt.x.clone(), pt.y.clone(), pt.z.clone());
        match self {
            SurfaceFamily::Cylinder { .. } => Point3::new(x, y, S::zero()),
            SurfaceFamily::Cone { radii } => {
                Point3::new(x, y, -(radii[i].clone() * z))
            }
            SurfaceFamily::Ellipsoid { alpha, beta, .. } => {
                Point3::new(x, alpha.clone() * y, beta.clone() * z)
            }
        }
    }

    /// The weight k the energy function attaches to vertex i. Satisfies
    /// `k = h_i + r_i` on cylinders and ellipsoids and `k = h_i` on cones.
    pub fn energy_weight(&self, i: usize, pt: &Point3<S>) -> S {
        let (x, y, z) = (pt.x.clone(), pt.y.clone(), pt.z.clone());
        match self {
            SurfaceFamily::Cylinder { .. } => x.clone() * x + y.clone() * y,
            SurfaceFamily::Cone { radii } => {
                x.clone() * x + y.clone() * y - radii[i].clone() * z.clone() * z
            }
            SurfaceFamily::Ellipsoid { alpha, beta, .. } => {
                x.clone() * x + alpha.clone() * y.clone() * y + beta.clone() * z.clone() * z
            }
        }
    }

    /// The unique family of the given kind passing through `points`, with
    /// each radius solved from the defining equation. Ellipsoids take their
    /// shape parameters from `shape` (default `alpha = 2`, `beta = 3`).
    pub fn induced(
        kind: SurfaceKind,
        points: &[Point3<S>],
        shape: Option<(S, S)>,
    ) -> Result<Self, SurfaceError> {
        if points.is_empty() {
            return Err(SurfaceError::Empty);
        }
        match kind {
            SurfaceKind::Cylinder => {
                let radii = points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        let r = p.x.clone() * p.x.clone() + p.y.clone() * p.y.clone();
                        if r.is_negligible(&S::one()) {
                            Err(SurfaceError::DegenerateConfiguration(i))
                        } else {
                            Ok(r)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Self::cylinder(radii)
            }
            SurfaceKind::Cone => {
                let radii = points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        let planar = p.x.clone() * p.x.clone() + p.y.clone() * p.y.clone();
                        if p.z.is_negligible(&S::one()) || planar.is_negligible(&S::one()) {
                            Err(SurfaceError::DegenerateConfiguration(i))
                        } else {
                            Ok(planar / (p.z.clone() * p.z.clone()))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Self::cone(radii)
            }
            SurfaceKind::Ellipsoid => {
                let (alpha, beta) = shape.unwrap_or((
                    S::from_ratio(DEFAULT_ALPHA.0, DEFAULT_ALPHA.1),
                    S::from_ratio(DEFAULT_BETA.0, DEFAULT_BETA.1),
                ));
                if alpha <= S::one() || beta <= alpha {
                    return Err(SurfaceError::BadShape);
                }
                let radii = points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        let r = p.x.clone() * p.x.clone()
                            + alpha.clone() * p.y.clone() * p.y.clone()
                            + beta.clone() * p.z.clone() * p.z.clone();
                        if r.is_negligible(&S::one()) {
                            Err(SurfaceError::DegenerateConfiguration(i))
                        } else {
                            Ok(r)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Self::ellipsoid(alpha, beta, radii)
            }
        }
    }
}

impl SurfaceFamily<f64> {
    /// Samples a point on the i-th surface of the family.
    ///
    /// Cylinder: angle uniform on `[0, 2pi)`, height uniform on `[-2, 2]`.
    /// Cone: same angle, height uniform on `[-2, -0.1] u [0.1, 2]` (the apex
    /// neighbourhood is excluded). Ellipsoid: a Gaussian direction scaled
    /// onto the surface.
    pub fn random_point(&self, i: usize, rng: &mut impl Rng) -> Point3<f64> {
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = self.radii()[i];
        match self {
            SurfaceFamily::Cylinder { .. } => {
                let rho = r.sqrt();
                Point3::new(
                    rho * theta.cos(),
                    rho * theta.sin(),
                    rng.gen_range(-2.0..2.0),
                )
            }
            SurfaceFamily::Cone { .. } => {
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                let z = sign * rng.gen_range(0.1..2.0);
                let rho = r.sqrt() * z.abs();
                Point3::new(rho * theta.cos(), rho * theta.sin(), z)
            }
            SurfaceFamily::Ellipsoid { alpha, beta, .. } => {
                let dir: [f64; 3] = [
                    rand_distr_normal(rng),
                    rand_distr_normal(rng),
                    rand_distr_normal(rng),
                ];
                let denom = dir[0] * dir[0] + alpha * dir[1] * dir[1] + beta * dir[2] * dir[2];
                let t = (r / denom).sqrt();
                Point3::new(t * dir[0], t * dir[1], t * dir[2])
            }
        }
    }
}

/// Standard normal via Box-Muller, avoiding the zero vector.
fn rand_distr_normal(rng: &mut impl Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u.ln()).sqrt() * v.cos()
}

fn validate_radii<S: Scalar>(radii: &[S]) -> Result<(), SurfaceError> {
    if radii.is_empty() {
        return Err(SurfaceError::Empty);
    }
    for (i, r) in radii.iter().enumerate() {
        if *r <= S::zero() {
            return Err(SurfaceError::NonPositiveRadius(i));
        }
    }
    Ok(())
}
