//! The three exact base frameworks on induced concentric cylinders, each
//! carrying an equilibrium stress whose stress matrix has the maximum
//! possible rank 3n - 6.
//!
//! All coordinates are small integers, so everything here is exact on the
//! rational backend. The stress of the 5-vertex base is stored directly; for
//! the two larger bases the edge weights are *derived* at construction: the
//! stress space of each is one-dimensional, so anchoring the vertex weights
//! pins the edge weights uniquely. The derivation doubles as an integrity
//! check — it must reproduce the stored vertex weights exactly.

use crate::graph::Graph;
use crate::numeric::Scalar;
use crate::rigidity::{Framework, Stress};
use crate::surface::{Point3, SurfaceKind};
use num_rational::BigRational;

type Rat = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureName {
    /// K5 minus one edge: 5 vertices, 9 edges.
    K5MinusE,
    /// 6 vertices, 11 edges.
    H1,
    /// 7 vertices, 13 edges.
    H2,
}

impl FixtureName {
    pub const ALL: [FixtureName; 3] = [FixtureName::K5MinusE, FixtureName::H1, FixtureName::H2];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::K5MinusE => "K5_E",
            FixtureName::H1 => "H1",
            FixtureName::H2 => "H2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "K5_E" | "K5-E" | "K5MINUSE" => Some(FixtureName::K5MinusE),
            "H1" => Some(FixtureName::H1),
            "H2" => Some(FixtureName::H2),
            _ => None,
        }
    }
}

/// An exact base framework with its equilibrium stress and the ranks the
/// acceptance checks pin down.
#[derive(Clone, Debug)]
pub struct BaseFixture {
    pub name: FixtureName,
    pub graph: Graph,
    pub points: Vec<Point3<Rat>>,
    pub stress: Stress<Rat>,
    /// Expected rank of the surface rigidity matrix (3n - 2).
    pub rigidity_rank: usize,
    /// Expected rank of the stress matrix (3n - 6).
    pub stress_rank: usize,
}

impl BaseFixture {
    /// The framework on the cylinders induced by the integer points.
    pub fn framework(&self) -> Framework<Rat> {
        Framework::induced(
            self.graph.clone(),
            self.points.clone(),
            SurfaceKind::Cylinder,
            None,
        )
        .expect("fixture points induce a valid cylinder family")
    }
}

fn points_from(coords: &[(i64, i64, i64)]) -> Vec<Point3<Rat>> {
    coords
        .iter()
        .map(|&(x, y, z)| Point3::from_ints(x, y, z))
        .collect()
}

fn ints<const N: usize>(values: [i64; N]) -> Vec<Rat> {
    values.into_iter().map(Rat::from_int).collect()
}

/// Solves the (one-dimensional) equilibrium stress space of the framework
/// and scales it so the vertex weights match `lambda`. Panics if the space
/// is not a line or the anchor weights cannot be met: the fixture data would
/// be inconsistent.
fn derive_edge_weights(fw: &Framework<Rat>, lambda: &[Rat]) -> Stress<Rat> {
    let basis = fw.equilibrium_stress_basis();
    assert_eq!(basis.len(), 1, "fixture stress space must be a line");
    let raw = &basis[0];
    let anchor = raw
        .lambda
        .iter()
        .position(|v| !num_traits::Zero::is_zero(v))
        .expect("fixture stress has a nonzero vertex weight");
    let scale = lambda[anchor].clone() / raw.lambda[anchor].clone();
    let stress = raw.scaled(&scale);
    assert_eq!(
        stress.lambda, lambda,
        "derived vertex weights must reproduce the stored ones"
    );
    stress
}

/// Returns the named base fixture with exact data.
pub fn fixture(name: FixtureName) -> BaseFixture {
    match name {
        FixtureName::K5MinusE => {
            // K5 without the edge (2, 3)
            let graph = Graph::new(
                5,
                [
                    (0, 1),
                    (0, 2),
                    (0, 3),
                    (0, 4),
                    (1, 2),
                    (1, 3),
                    (1, 4),
                    (2, 4),
                    (3, 4),
                ],
            )
            .expect("valid fixture graph");
            let points =
                points_from(&[(0, 1, 0), (1, 1, 1), (-1, -2, -1), (2, 3, 4), (5, 1, -1)]);
            let stress = Stress::new(
                ints([-369, 192, 153, 51, -96, -279, -138, 32, 45]),
                ints([-270, -270, -192, 54, -6]),
            );
            BaseFixture {
                name,
                graph,
                points,
                stress,
                rigidity_rank: 13,
                stress_rank: 9,
            }
        }
        FixtureName::H1 => {
            let graph = Graph::new(
                6,
                [
                    (0, 1),
                    (0, 3),
                    (0, 4),
                    (1, 2),
                    (1, 3),
                    (1, 4),
                    (1, 5),
                    (2, 4),
                    (2, 5),
                    (3, 4),
                    (4, 5),
                ],
            )
            .expect("valid fixture graph");
            let points =
                points_from(&[(0, 1, 0), (3, 1, 0), (1, 4, 1), (1, 2, 2), (2, 2, 3), (6, 0, 2)]);
            let lambda = ints([-123, -39, 30, 123, -102, 28]);
            let mut out = BaseFixture {
                name,
                graph,
                points,
                stress: Stress::new(vec![], lambda.clone()),
                rigidity_rank: 16,
                stress_rank: 12,
            };
            out.stress = derive_edge_weights(&out.framework(), &lambda);
            out
        }
        FixtureName::H2 => {
            let graph = Graph::new(
                7,
                [
                    (0, 1),
                    (0, 3),
                    (0, 4),
                    (1, 2),
                    (1, 3),
                    (1, 4),
                    (2, 4),
                    (2, 5),
                    (2, 6),
                    (3, 4),
                    (4, 5),
                    (4, 6),
                    (5, 6),
                ],
            )
            .expect("valid fixture graph");
            let points = points_from(&[
                (0, 1, 0),
                (3, 1, 0),
                (1, 4, 1),
                (1, 2, 2),
                (2, 2, 3),
                (6, 0, 2),
                (3, 4, 3),
            ]);
            let lambda = ints([-174, -6, 24, 174, 372, -28, -252]);
            let mut out = BaseFixture {
                name,
                graph,
                points,
                stress: Stress::new(vec![], lambda.clone()),
                rigidity_rank: 19,
                stress_rank: 15,
            };
            out.stress = derive_edge_weights(&out.framework(), &lambda);
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn fixtures_lie_on_their_induced_cylinders() {
        for name in FixtureName::ALL {
            let fx = fixture(name);
            let fw = fx.framework();
            for (i, p) in fw.points().iter().enumerate() {
                assert!(fw.family().constraint_value(i, p).is_zero());
            }
        }
    }

    #[test]
    fn stresses_verify_exactly() {
        for name in FixtureName::ALL {
            let fx = fixture(name);
            let fw = fx.framework();
            assert_eq!(fw.verify_equilibrium(&fx.stress), Ok(true), "{name:?}");
        }
    }

    #[test]
    fn derived_edge_weights_are_frozen() {
        // anti-regression pins for the derived stresses
        let h1 = fixture(FixtureName::H1);
        assert_eq!(
            h1.stress.omega,
            ints([-41, -369, 246, -60, 123, -30, -48, -50, 40, -492, -56])
        );
        let h2 = fixture(FixtureName::H2);
        assert_eq!(
            h2.stress.omega,
            ints([-58, -522, 348, -24, 174, -108, -40, 14, 21, -696, 56, 588, -42])
        );
    }

    #[test]
    fn perturbed_stress_fails_verification() {
        let fx = fixture(FixtureName::K5MinusE);
        let fw = fx.framework();
        let mut bad = fx.stress.clone();
        bad.omega[0] = bad.omega[0].clone() + Rat::from_int(1);
        assert_eq!(fw.verify_equilibrium(&bad), Ok(false));
    }

    #[test]
    fn unknown_fixture_name() {
        assert_eq!(FixtureName::parse("K9"), None);
        assert_eq!(FixtureName::parse("k5_e"), Some(FixtureName::K5MinusE));
    }
}
