//! Global-rigidity certificates, max-rank stress search, the nowhere-zero
//! stress repair, and the randomized redundancy / Hendrickson screens.

use super::{stress_matrix, Framework, RigidityError, Stress};
use crate::graph::Graph;
use crate::numeric::{LinAlg, Scalar};
use crate::surface::{Point3, SurfaceKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Theorem routes a certificate can rest on.
///
/// `MaxRankGeneric`: a stress with `rank Omega_F = 3n - mu` certifies global
/// rigidity of generic frameworks on cylinder and ellipsoid families.
/// `PsdMaxRank`: a positive semidefinite max-rank stress matrix on a fully
/// realised framework certifies it on all three kinds. Neither route claims
/// necessity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateRoute {
    MaxRankGeneric,
    PsdMaxRank,
}

/// How the genericity hypothesis of the underlying theorems was discharged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genericity {
    /// The caller vouches for the configuration (exact fixtures).
    Asserted,
    /// The configuration was randomly sampled; generic with high confidence.
    Sampled,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub seed: u64,
    pub attempts: usize,
    pub genericity: Genericity,
    /// Force a particular route instead of the kind-dependent default
    /// (max-rank on cylinders/ellipsoids, PSD on cones).
    pub route: Option<CertificateRoute>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            attempts: 12,
            genericity: Genericity::Sampled,
            route: None,
        }
    }
}

/// Outcome of a certification run. `route == None` means no certificate; the
/// rank fields tell how far the search got.
#[derive(Clone, Debug)]
pub struct Certificate<S> {
    pub surface: SurfaceKind,
    pub vertex_count: usize,
    pub route: Option<CertificateRoute>,
    pub required_rank: usize,
    pub achieved_rank: usize,
    pub stress_dim: usize,
    pub fully_realised: bool,
    /// Whether the witness stress matrix is PSD; only evaluated when the
    /// PSD route was considered.
    pub psd: Option<bool>,
    pub genericity: Genericity,
    pub seed: u64,
    pub witness: Option<Stress<S>>,
}

impl<S> Certificate<S> {
    pub fn certified(&self) -> bool {
        self.route.is_some()
    }
}

/// Searches the equilibrium stress space for a stress maximizing
/// `rank Omega_F`, drawing random coefficient vectors over the cokernel
/// basis. Returns the best stress found with its rank; the zero stress with
/// rank 0 when the space is trivial. Deterministic given the rng state.
pub fn max_rank_stress<S: LinAlg>(
    fw: &Framework<S>,
    rng: &mut ChaCha8Rng,
    attempts: usize,
) -> Result<(Stress<S>, usize), RigidityError> {
    let basis = fw.equilibrium_stress_basis();
    let n = fw.vertex_count();
    let m = fw.graph().edge_count();
    if basis.is_empty() {
        return Ok((Stress::zero(m, n), 0));
    }
    let target = 3 * n - fw.family().kind().config_rank();
    let mut best: Option<(Stress<S>, usize)> = None;
    for attempt in 0..attempts.max(1) {
        // the basis vector itself first; random combinations afterwards
        let candidate = if attempt == 0 && basis.len() == 1 {
            basis[0].clone()
        } else {
            let mut acc = Stress::zero(m, n);
            for b in &basis {
                let c = S::sample_coefficient(rng);
                acc = acc.add_scaled(b, &c);
            }
            if acc.is_zero() {
                continue;
            }
            acc
        };
        let rank = fw.stress_matrix(&candidate)?.rank();
        let better = best.as_ref().map_or(true, |(_, r)| rank > *r);
        if better {
            best = Some((candidate, rank));
        }
        if best.as_ref().map(|(_, r)| *r) == Some(target) {
            break;
        }
    }
    Ok(best.unwrap_or((Stress::zero(m, n), 0)))
}

/// Runs the certificate search. Errors when an explicitly requested route is
/// unavailable for the surface kind or the vertex count; otherwise reports
/// the best stress found and which route, if any, it supports.
pub fn certify_global_rigidity<S: LinAlg>(
    fw: &Framework<S>,
    opts: &CertifyOptions,
) -> Result<Certificate<S>, RigidityError> {
    let kind = fw.family().kind();
    let n = fw.vertex_count();
    if let Some(route) = opts.route {
        if route == CertificateRoute::MaxRankGeneric && kind == SurfaceKind::Cone {
            return Err(RigidityError::RouteUnavailable { route, kind });
        }
        if n < 5 {
            return Err(RigidityError::TooFewVertices(n));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (stress, achieved_rank) = max_rank_stress(fw, &mut rng, opts.attempts)?;
    let stress_dim = fw.equilibrium_stress_basis().len();
    let required_rank = 3 * n - kind.config_rank();
    let fully_realised = fw.is_fully_realised();

    let mut psd = None;
    let mut route = None;
    if achieved_rank == required_rank && n >= 5 {
        let candidates = match opts.route {
            Some(r) => vec![r],
            None => match kind {
                SurfaceKind::Cylinder | SurfaceKind::Ellipsoid => {
                    vec![CertificateRoute::MaxRankGeneric]
                }
                SurfaceKind::Cone => vec![CertificateRoute::PsdMaxRank],
            },
        };
        for cand in candidates {
            match cand {
                CertificateRoute::MaxRankGeneric => {
                    if kind != SurfaceKind::Cone {
                        route = Some(cand);
                        break;
                    }
                }
                CertificateRoute::PsdMaxRank => {
                    let is_psd = fw.stress_matrix(&stress)?.is_psd()?;
                    psd = Some(is_psd);
                    if fully_realised && is_psd {
                        route = Some(cand);
                        break;
                    }
                }
            }
        }
    }

    Ok(Certificate {
        surface: kind,
        vertex_count: n,
        route,
        required_rank,
        achieved_rank,
        stress_dim,
        fully_realised,
        psd,
        genericity: opts.genericity,
        seed: opts.seed,
        witness: if stress_dim > 0 { Some(stress) } else { None },
    })
}

/// Rewrites a stress so that every edge weight is nonzero while preserving
/// `rank Omega_F`, by adding small multiples of cokernel elements that are
/// nonzero on the offending edges. Only meaningful on cylinders and
/// ellipsoids; errors when some zero edge is carried by no equilibrium
/// stress (the deleted edge would leave a non-rigid graph) or when no
/// rank-preserving coefficient is found.
pub fn nonzero_stress_repair<S: LinAlg>(
    fw: &Framework<S>,
    stress: &Stress<S>,
) -> Result<Stress<S>, RigidityError> {
    let kind = fw.family().kind();
    if kind == SurfaceKind::Cone {
        return Err(RigidityError::RepairSurfaceUnsupported);
    }
    fw.check_stress_sizes(stress)?;
    let base_rank = fw.stress_matrix(stress)?.rank();
    let basis = fw.equilibrium_stress_basis();
    let edges = fw.graph().edges();
    let mut current = stress.clone();
    for e_idx in 0..edges.len() {
        let scale = current.max_abs();
        if !current.omega[e_idx].is_negligible(&scale) {
            continue;
        }
        let (u, v) = edges[e_idx];
        let helper = basis
            .iter()
            .find(|b| !b.omega[e_idx].is_negligible(&b.max_abs()))
            .ok_or(RigidityError::RepairUnavailable(u, v))?;
        let mut coeff = S::one();
        let mut repaired = false;
        for _ in 0..64 {
            let candidate = current.add_scaled(helper, &coeff);
            let cand_scale = candidate.max_abs();
            let rank_ok = fw.stress_matrix(&candidate)?.rank() == base_rank;
            let keeps_pattern = (0..edges.len()).all(|f| {
                current.omega[f].is_negligible(&scale)
                    || !candidate.omega[f].is_negligible(&cand_scale)
            });
            let fills_edge = !candidate.omega[e_idx].is_negligible(&cand_scale);
            if rank_ok && keeps_pattern && fills_edge {
                current = candidate;
                repaired = true;
                break;
            }
            coeff = coeff * S::from_ratio(1, 2);
        }
        if !repaired {
            return Err(RigidityError::RepairFailed(u, v));
        }
    }
    Ok(current)
}

/// Samples a float realization of the graph on a family of the given kind:
/// coordinates uniform in a box, degenerate positions rejected, radii
/// induced from the points (ellipsoids use the default shape).
pub fn random_framework(
    graph: &Graph,
    kind: SurfaceKind,
    rng: &mut ChaCha8Rng,
) -> Result<Framework<f64>, RigidityError> {
    for _ in 0..64 {
        let mut points = Vec::with_capacity(graph.vertex_count());
        for _ in 0..graph.vertex_count() {
            let p = loop {
                let p = Point3::new(
                    rng.gen_range(-2.0..2.0_f64),
                    rng.gen_range(-2.0..2.0_f64),
                    rng.gen_range(-2.0..2.0_f64),
                );
                let planar = p.x * p.x + p.y * p.y;
                let ok = match kind {
                    SurfaceKind::Cylinder => planar > 0.05,
                    SurfaceKind::Cone => planar > 0.05 && p.z.abs() > 0.1,
                    SurfaceKind::Ellipsoid => planar + p.z * p.z > 0.05,
                };
                if ok {
                    break p;
                }
            };
            points.push(p);
        }
        if let Ok(fw) = Framework::induced(graph.clone(), points, kind, None) {
            return Ok(fw);
        }
    }
    Err(RigidityError::SamplingFailed)
}

const REDUNDANCY_RETRIES: usize = 3;

/// Randomized redundant-rigidity check: the graph itself and every
/// single-edge deletion must be infinitesimally rigid at a sampled generic
/// realization. Each rank test retries on fresh samples to guard against
/// unlucky draws.
pub fn is_redundantly_rigid(
    graph: &Graph,
    kind: SurfaceKind,
    rng: &mut ChaCha8Rng,
) -> Result<bool, RigidityError> {
    if !sampled_rigid(graph, kind, rng)? {
        return Ok(false);
    }
    for &(u, v) in graph.edges() {
        let sub = graph.remove_edge(u, v)?;
        if !sampled_rigid(&sub, kind, rng)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sampled_rigid(
    graph: &Graph,
    kind: SurfaceKind,
    rng: &mut ChaCha8Rng,
) -> Result<bool, RigidityError> {
    for _ in 0..REDUNDANCY_RETRIES {
        let fw = random_framework(graph, kind, rng)?;
        if fw.is_infinitesimally_rigid() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The Hendrickson-type necessary conditions for generic global rigidity:
/// k-connectivity (k = 2 on cylinders and cones, 1 on ellipsoids) together
/// with redundant rigidity on the family.
pub fn hendrickson_necessary(
    graph: &Graph,
    kind: SurfaceKind,
    rng: &mut ChaCha8Rng,
) -> Result<bool, RigidityError> {
    if !graph.is_k_connected(kind.connectivity_requirement()) {
        return Ok(false);
    }
    is_redundantly_rigid(graph, kind, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, FixtureName};

    #[test]
    fn k4_on_cylinder_has_no_stress() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fw = random_framework(&Graph::complete(4), SurfaceKind::Cylinder, &mut rng).unwrap();
        assert!(fw.is_infinitesimally_rigid());
        assert!(fw.equilibrium_stress_basis().is_empty());
        let (stress, rank) = max_rank_stress(&fw, &mut rng, 4).unwrap();
        assert!(stress.is_zero());
        assert_eq!(rank, 0);
        let cert = certify_global_rigidity(&fw, &CertifyOptions::default()).unwrap();
        assert!(!cert.certified());
    }

    #[test]
    fn cone_refuses_max_rank_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut edges: Vec<(usize, usize)> = Graph::complete(5).edges().to_vec();
        edges.retain(|&e| e != (2, 3));
        let g = Graph::new(5, edges).unwrap();
        let fw = random_framework(&g, SurfaceKind::Cone, &mut rng).unwrap();
        let opts = CertifyOptions {
            route: Some(CertificateRoute::MaxRankGeneric),
            ..Default::default()
        };
        assert!(matches!(
            certify_global_rigidity(&fw, &opts),
            Err(RigidityError::RouteUnavailable { .. })
        ));
    }

    #[test]
    fn small_frameworks_refuse_requested_routes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fw = random_framework(&Graph::complete(4), SurfaceKind::Cylinder, &mut rng).unwrap();
        let opts = CertifyOptions {
            route: Some(CertificateRoute::MaxRankGeneric),
            ..Default::default()
        };
        assert_eq!(
            certify_global_rigidity(&fw, &opts).unwrap_err(),
            RigidityError::TooFewVertices(4)
        );
    }

    #[test]
    fn repair_rejects_cone_and_independent_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fw = random_framework(&Graph::complete(4), SurfaceKind::Cylinder, &mut rng).unwrap();
        let zero = Stress::zero(6, 4);
        // independent graph: the only stress is zero and no edge is carried
        let mut with_entry = zero.clone();
        with_entry.omega[0] = 0.0; // stays zero; repair must fail to find a helper
        assert!(matches!(
            nonzero_stress_repair(&fw, &with_entry),
            Err(RigidityError::RepairUnavailable(..))
        ));

        let cone_fw = random_framework(&Graph::complete(4), SurfaceKind::Cone, &mut rng).unwrap();
        assert_eq!(
            nonzero_stress_repair(&cone_fw, &Stress::zero(6, 4)),
            Err(RigidityError::RepairSurfaceUnsupported)
        );
    }

    #[test]
    fn redundancy_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        assert!(!is_redundantly_rigid(&Graph::complete(4), SurfaceKind::Cylinder, &mut rng)
            .unwrap());
        let k5e = fixtures::fixture(FixtureName::K5MinusE).graph;
        assert!(is_redundantly_rigid(&k5e, SurfaceKind::Cylinder, &mut rng).unwrap());
    }

    #[test]
    fn hendrickson_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let k5e = fixtures::fixture(FixtureName::K5MinusE).graph;
        assert!(hendrickson_necessary(&k5e, SurfaceKind::Cylinder, &mut rng).unwrap());
        assert!(!hendrickson_necessary(&Graph::complete(4), SurfaceKind::Cylinder, &mut rng)
            .unwrap());
        // two triangles glued at a vertex: fails 2-connectivity
        let bowtie =
            Graph::new(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(!hendrickson_necessary(&bowtie, SurfaceKind::Cylinder, &mut rng).unwrap());
    }
}
