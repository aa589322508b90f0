//! Rigidity matrices, equilibrium stresses, stress and configuration
//! matrices, energy functions, and rigidity/global-rigidity certificates for
//! frameworks on concentric surface families.
//!
//! Two column conventions appear in this machinery and both are kept, with
//! an explicit bridge: rigidity matrices use per-vertex coordinate blocks
//! (column `3 i + axis`), while stress matrices, configuration matrices and
//! energy vectors are coordinate-major (column `axis n + i`, all x first,
//! then all y, then all z). [`vertex_block_col`] and [`coordinate_major_col`]
//! are the only places these offsets are computed.

mod certify;

pub use certify::{
    certify_global_rigidity, hendrickson_necessary, is_redundantly_rigid, max_rank_stress,
    nonzero_stress_repair, random_framework, Certificate, CertificateRoute, CertifyOptions,
    Genericity,
};

use crate::graph::{Graph, GraphError};
use crate::numeric::{LinAlg, Matrix, NumericError, Scalar};
use crate::surface::{Point3, SurfaceError, SurfaceFamily, SurfaceKind};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RigidityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("sizes disagree: graph has {graph_n} vertices, {points} points, family of {family}")]
    SizeMismatch {
        graph_n: usize,
        points: usize,
        family: usize,
    },
    #[error("vertex {vertex} does not lie on its surface (residual {residual})")]
    OffSurface { vertex: usize, residual: String },
    #[error("vertex {vertex} sits at a degenerate position for this family")]
    DegeneratePoint { vertex: usize },
    #[error("stress sizes disagree with the framework ({omega} edge weights, {lambda} vertex weights)")]
    StressSizeMismatch { omega: usize, lambda: usize },
    #[error("affine parameters violate the constraints for this surface kind")]
    InvalidAffineParameters,
    #[error("certificate route {route:?} is not available on a {kind:?} family")]
    RouteUnavailable {
        route: CertificateRoute,
        kind: SurfaceKind,
    },
    #[error("certificates require at least 5 vertices (got {0})")]
    TooFewVertices(usize),
    #[error("the nowhere-zero repair applies to cylinder and ellipsoid families only")]
    RepairSurfaceUnsupported,
    #[error("no equilibrium stress uses edge ({0}, {1}); cannot repair")]
    RepairUnavailable(usize, usize),
    #[error("rank-preserving repair failed at edge ({0}, {1})")]
    RepairFailed(usize, usize),
    #[error("could not sample a nondegenerate realization")]
    SamplingFailed,
}

/// Column of vertex `i`, axis `a` in a rigidity matrix (per-vertex blocks).
pub fn vertex_block_col(vertex: usize, axis: usize) -> usize {
    3 * vertex + axis
}

/// Column of vertex `i`, axis `a` in a coordinate-major matrix or vector.
pub fn coordinate_major_col(n: usize, vertex: usize, axis: usize) -> usize {
    axis * n + vertex
}

/// Edge and vertex weights: `omega` follows the graph's normalized edge
/// order, `lambda` the vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct Stress<S> {
    pub omega: Vec<S>,
    pub lambda: Vec<S>,
}

impl<S: Scalar> Stress<S> {
    pub fn new(omega: Vec<S>, lambda: Vec<S>) -> Self {
        Self { omega, lambda }
    }

    pub fn zero(edge_count: usize, vertex_count: usize) -> Self {
        Self {
            omega: vec![S::zero(); edge_count],
            lambda: vec![S::zero(); vertex_count],
        }
    }

    pub fn from_row_vec(v: &[S], edge_count: usize) -> Self {
        Self {
            omega: v[..edge_count].to_vec(),
            lambda: v[edge_count..].to_vec(),
        }
    }

    /// Concatenated `(omega, lambda)` row vector of length m + n.
    pub fn as_row_vec(&self) -> Vec<S> {
        self.omega
            .iter()
            .chain(self.lambda.iter())
            .cloned()
            .collect()
    }

    pub fn scaled(&self, c: &S) -> Self {
        Self {
            omega: self.omega.iter().map(|v| v.clone() * c.clone()).collect(),
            lambda: self.lambda.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn add_scaled(&self, other: &Self, c: &S) -> Self {
        Self {
            omega: self
                .omega
                .iter()
                .zip(&other.omega)
                .map(|(a, b)| a.clone() + b.clone() * c.clone())
                .collect(),
            lambda: self
                .lambda
                .iter()
                .zip(&other.lambda)
                .map(|(a, b)| a.clone() + b.clone() * c.clone())
                .collect(),
        }
    }

    pub fn max_abs(&self) -> S {
        self.omega
            .iter()
            .chain(self.lambda.iter())
            .map(Scalar::abs)
            .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
    }

    pub fn is_zero(&self) -> bool {
        let scale = S::one();
        self.omega
            .iter()
            .chain(self.lambda.iter())
            .all(|v| v.is_negligible(&scale))
    }
}

/// A graph placed on a surface family, one vertex per member surface.
#[derive(Clone, Debug)]
pub struct Framework<S: Scalar> {
    graph: Graph,
    points: Vec<Point3<S>>,
    family: SurfaceFamily<S>,
}

impl<S: LinAlg> Framework<S> {
    /// Validates the on-surface invariant and kind-specific degeneracies
    /// (cone points must stay away from the apex plane z = 0).
    pub fn new(
        graph: Graph,
        points: Vec<Point3<S>>,
        family: SurfaceFamily<S>,
    ) -> Result<Self, RigidityError> {
        let n = graph.vertex_count();
        if n == 0 || points.len() != n || family.len() != n {
            return Err(RigidityError::SizeMismatch {
                graph_n: n,
                points: points.len(),
                family: family.len(),
            });
        }
        for (i, p) in points.iter().enumerate() {
            let residual = family.constraint_value(i, p);
            if !residual.is_negligible(family.radius(i)) {
                return Err(RigidityError::OffSurface {
                    vertex: i,
                    residual: residual.to_string(),
                });
            }
            if family.kind() == SurfaceKind::Cone && p.z.is_negligible(&S::one()) {
                return Err(RigidityError::DegeneratePoint { vertex: i });
            }
        }
        Ok(Self {
            graph,
            points,
            family,
        })
    }

    /// Places the graph on the family induced by the points.
    pub fn induced(
        graph: Graph,
        points: Vec<Point3<S>>,
        kind: SurfaceKind,
        shape: Option<(S, S)>,
    ) -> Result<Self, RigidityError> {
        let family = SurfaceFamily::induced(kind, &points, shape)?;
        Self::new(graph, points, family)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn points(&self) -> &[Point3<S>] {
        &self.points
    }

    pub fn family(&self) -> &SurfaceFamily<S> {
        &self.family
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// The m x 3n bar-length Jacobian: row of edge (i, j) holds p_i - p_j in
    /// the block of vertex i and p_j - p_i in the block of vertex j.
    pub fn euclidean_rigidity_matrix(&self) -> Matrix<S> {
        let n = self.vertex_count();
        let mut m = Matrix::zeros(self.graph.edge_count(), 3 * n);
        for (row, &(i, j)) in self.graph.edges().iter().enumerate() {
            let d = self.points[i].sub(&self.points[j]);
            for axis in 0..3 {
                m[(row, vertex_block_col(i, axis))] = d.coord(axis).clone();
                m[(row, vertex_block_col(j, axis))] = -d.coord(axis).clone();
            }
        }
        m
    }

    /// The (m + n) x 3n surface rigidity matrix: euclidean rows stacked over
    /// the block-diagonal tangency rows.
    pub fn surface_rigidity_matrix(&self) -> Matrix<S> {
        let n = self.vertex_count();
        let mut s = Matrix::zeros(n, 3 * n);
        for i in 0..n {
            let t = self.family.tangency_vector(i, &self.points[i]);
            for axis in 0..3 {
                s[(i, vertex_block_col(i, axis))] = t.coord(axis).clone();
            }
        }
        self.euclidean_rigidity_matrix().vstack(&s)
    }

    pub fn rigidity_rank(&self) -> usize {
        self.surface_rigidity_matrix().rank()
    }

    /// Infinitesimal rigidity: rank R_F = 3n - l with l the dimension of the
    /// family's isometry group.
    pub fn is_infinitesimally_rigid(&self) -> bool {
        self.rigidity_rank() == 3 * self.vertex_count() - self.family.kind().isometry_dim()
    }

    /// Dimension of the space of infinitesimal flexes (nullity of R_F).
    pub fn flex_dim(&self) -> usize {
        3 * self.vertex_count() - self.rigidity_rank()
    }

    /// Basis of the equilibrium stress space (the cokernel of R_F), split
    /// into edge and vertex weights.
    pub fn equilibrium_stress_basis(&self) -> Vec<Stress<S>> {
        let m = self.graph.edge_count();
        self.surface_rigidity_matrix()
            .cokernel_basis()
            .into_iter()
            .map(|v| Stress::from_row_vec(&v, m))
            .collect()
    }

    /// Checks the row-vector identity `(omega, lambda) . R_F = 0`.
    pub fn verify_equilibrium(&self, stress: &Stress<S>) -> Result<bool, RigidityError> {
        self.check_stress_sizes(stress)?;
        let r = self.surface_rigidity_matrix();
        let residual = r.row_vec_mul(&stress.as_row_vec());
        let scale = r.max_abs() * stress.max_abs();
        Ok(residual.iter().all(|v| v.is_negligible(&scale)))
    }

    /// The 3n x 3n surface stress matrix for this framework's family.
    pub fn stress_matrix(&self, stress: &Stress<S>) -> Result<Matrix<S>, RigidityError> {
        self.check_stress_sizes(stress)?;
        stress_matrix(&self.graph, &self.family, stress)
    }

    /// The mu x 3n configuration matrix (6 rows on cylinders, 5 on cones,
    /// 3 on ellipsoids), coordinate-major.
    pub fn configuration_matrix(&self) -> Matrix<S> {
        configuration_matrix(&self.points, self.family.kind())
    }

    /// Full realisation: the configuration matrix has independent rows.
    pub fn is_fully_realised(&self) -> bool {
        self.configuration_matrix().rank() == self.family.kind().config_rank()
    }

    /// Applies the block affine map allowed on this surface kind. On cones
    /// and ellipsoids the translation part must vanish; on ellipsoids the
    /// rotation block must be diagonal.
    pub fn affine_image(&self, map: &AffineMap<S>) -> Result<Vec<Point3<S>>, RigidityError> {
        let kind = self.family.kind();
        let zero = S::zero();
        match kind {
            SurfaceKind::Cylinder => {}
            SurfaceKind::Cone => {
                if map.f != zero {
                    return Err(RigidityError::InvalidAffineParameters);
                }
            }
            SurfaceKind::Ellipsoid => {
                if map.f != zero || map.b != zero || map.c != zero {
                    return Err(RigidityError::InvalidAffineParameters);
                }
            }
        }
        Ok(self
            .points
            .iter()
            .map(|p| {
                Point3::new(
                    map.a.clone() * p.x.clone() + map.b.clone() * p.y.clone(),
                    map.c.clone() * p.x.clone() + map.d.clone() * p.y.clone(),
                    map.e.clone() * p.z.clone() + map.f.clone(),
                )
            })
            .collect())
    }

    fn check_stress_sizes(&self, stress: &Stress<S>) -> Result<(), RigidityError> {
        if stress.omega.len() != self.graph.edge_count()
            || stress.lambda.len() != self.vertex_count()
        {
            return Err(RigidityError::StressSizeMismatch {
                omega: stress.omega.len(),
                lambda: stress.lambda.len(),
            });
        }
        Ok(())
    }
}

/// Parameters of the affine maps compatible with the surface families:
/// `q = [[a, b, 0], [c, d, 0], [0, 0, e]] p + (0, 0, f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
    pub e: S,
    pub f: S,
}

impl<S: Scalar> AffineMap<S> {
    pub fn identity() -> Self {
        Self {
            a: S::one(),
            b: S::zero(),
            c: S::zero(),
            d: S::one(),
            e: S::one(),
            f: S::zero(),
        }
    }
}

/// The weighted-graph matrix with off-diagonal `-omega_ij` and diagonal
/// `sum_j omega_ij`.
fn omega_laplacian<S: Scalar>(graph: &Graph, omega: &[S]) -> Matrix<S> {
    let n = graph.vertex_count();
    let mut m = Matrix::zeros(n, n);
    for (e, &(i, j)) in graph.edges().iter().enumerate() {
        let w = omega[e].clone();
        m[(i, j)] = m[(i, j)].clone() - w.clone();
        m[(j, i)] = m[(j, i)].clone() - w.clone();
        m[(i, i)] = m[(i, i)].clone() + w.clone();
        m[(j, j)] = m[(j, j)].clone() + w;
    }
    m
}

/// The 3n x 3n block-diagonal stress matrix. The x-block is always
/// `Omega + Lambda`; the y-block matches it on cylinders and cones and is
/// `Omega + alpha Lambda` on ellipsoids; the z-block is `Omega` on
/// cylinders, `Omega - Delta` on cones (`Delta = diag(lambda_i r_i)`) and
/// `Omega + beta Lambda` on ellipsoids.
pub fn stress_matrix<S: Scalar>(
    graph: &Graph,
    family: &SurfaceFamily<S>,
    stress: &Stress<S>,
) -> Result<Matrix<S>, RigidityError> {
    let n = graph.vertex_count();
    if stress.omega.len() != graph.edge_count() || stress.lambda.len() != n || family.len() != n {
        return Err(RigidityError::StressSizeMismatch {
            omega: stress.omega.len(),
            lambda: stress.lambda.len(),
        });
    }
    let base = omega_laplacian(graph, &stress.omega);
    let lam = &stress.lambda;
    let mut out = Matrix::zeros(3 * n, 3 * n);
    let mut write_block = |block: usize, diag: &dyn Fn(usize) -> S| {
        for i in 0..n {
            for j in 0..n {
                let mut v = base[(i, j)].clone();
                if i == j {
                    v = v + diag(i);
                }
                out[(block * n + i, block * n + j)] = v;
            }
        }
    };
    match family {
        SurfaceFamily::Cylinder { .. } => {
            write_block(0, &|i| lam[i].clone());
            write_block(1, &|i| lam[i].clone());
            write_block(2, &|_| S::zero());
        }
        SurfaceFamily::Cone { radii } => {
            write_block(0, &|i| lam[i].clone());
            write_block(1, &|i| lam[i].clone());
            write_block(2, &|i| -(lam[i].clone() * radii[i].clone()));
        }
        SurfaceFamily::Ellipsoid { alpha, beta, .. } => {
            write_block(0, &|i| lam[i].clone());
            write_block(1, &|i| alpha.clone() * lam[i].clone());
            write_block(2, &|i| beta.clone() * lam[i].clone());
        }
    }
    Ok(out)
}

/// The configuration matrix, coordinate-major. Cylinder rows: x, y, z on
/// their own blocks, then y placed in the x-block, x in the y-block, ones in
/// the z-block; cones drop the last row; ellipsoids keep only the first
/// three (the coordinate matrix).
pub fn configuration_matrix<S: Scalar>(points: &[Point3<S>], kind: SurfaceKind) -> Matrix<S> {
    let n = points.len();
    let mu = kind.config_rank();
    let mut m = Matrix::zeros(mu, 3 * n);
    for (i, p) in points.iter().enumerate() {
        m[(0, coordinate_major_col(n, i, 0))] = p.x.clone();
        m[(1, coordinate_major_col(n, i, 1))] = p.y.clone();
        m[(2, coordinate_major_col(n, i, 2))] = p.z.clone();
        if mu >= 5 {
            m[(3, coordinate_major_col(n, i, 0))] = p.y.clone();
            m[(4, coordinate_major_col(n, i, 1))] = p.x.clone();
        }
        if mu == 6 {
            m[(5, coordinate_major_col(n, i, 2))] = S::one();
        }
    }
    m
}

/// Coordinate-major 3n-vector `(x_1..x_n, y_1..y_n, z_1..z_n)`.
pub fn coordinate_vector<S: Scalar>(points: &[Point3<S>]) -> Vec<S> {
    let n = points.len();
    let mut v = vec![S::zero(); 3 * n];
    for (i, p) in points.iter().enumerate() {
        for axis in 0..3 {
            v[coordinate_major_col(n, i, axis)] = p.coord(axis).clone();
        }
    }
    v
}

/// The energy `sum_{i<j} omega_ij |q_i - q_j|^2 + sum_i lambda_i k(q_i)`.
/// Defined for arbitrary point configurations; `q` need not lie on the
/// family. Equals the quadratic form of the stress matrix at the
/// coordinate-major vector of `q`.
pub fn energy<S: Scalar>(
    graph: &Graph,
    family: &SurfaceFamily<S>,
    points: &[Point3<S>],
    stress: &Stress<S>,
) -> Result<S, RigidityError> {
    let n = graph.vertex_count();
    if stress.omega.len() != graph.edge_count()
        || stress.lambda.len() != n
        || points.len() != n
        || family.len() != n
    {
        return Err(RigidityError::StressSizeMismatch {
            omega: stress.omega.len(),
            lambda: stress.lambda.len(),
        });
    }
    let edge_part: S = graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(i, j))| stress.omega[e].clone() * points[i].dist_sq(&points[j]))
        .sum();
    let vertex_part: S = (0..n)
        .map(|i| stress.lambda[i].clone() * family.energy_weight(i, &points[i]))
        .sum();
    Ok(edge_part + vertex_part)
}

/// The differential of the energy at `points`: `2 x^T Omega_F`, returned
/// coordinate-major. Vanishes exactly when the stress is an equilibrium
/// stress for the configuration.
pub fn energy_gradient<S: Scalar>(
    graph: &Graph,
    family: &SurfaceFamily<S>,
    points: &[Point3<S>],
    stress: &Stress<S>,
) -> Result<Vec<S>, RigidityError> {
    if points.len() != graph.vertex_count() {
        return Err(RigidityError::SizeMismatch {
            graph_n: graph.vertex_count(),
            points: points.len(),
            family: family.len(),
        });
    }
    let omega_f = stress_matrix(graph, family, stress)?;
    let x = coordinate_vector(points);
    let two = S::from_int(2);
    Ok(omega_f
        .row_vec_mul(&x)
        .into_iter()
        .map(|v| two.clone() * v)
        .collect())
}
