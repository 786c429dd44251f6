//! Instances shared by the benchmarks.

use ennea_core::bialgebra::{ennea_on_end, EpsilonBialgebra};
use ennea_core::graphalg::{path_algebra, weighted_coproduct, WeightedDigraph};
use ennea_core::splitting::EnneaStructure;
use ennea_core::Scalar;

/// The weighted path bialgebra of the line graph on `vertices` vertices, at t = 0.
pub fn line_bialgebra(vertices: usize) -> EpsilonBialgebra {
    let g = WeightedDigraph::line(vertices);
    let (alg, basis) = path_algebra(&g, None).expect("line graphs are acyclic");
    let delta = weighted_coproduct(&g, &basis).expect("basis matches graph");
    EpsilonBialgebra::new(alg, delta, Scalar::from_int(0)).expect("dimensions agree")
}

/// The ennea algebra on End(A) for [`line_bialgebra`].
pub fn line_end_ennea(vertices: usize) -> EnneaStructure {
    ennea_on_end(&line_bialgebra(vertices)).expect("weighted coproduct is an eps(0)-bialgebra")
}
