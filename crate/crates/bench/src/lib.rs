//! Fixed inputs shared by the criterion benches.

use epwlab_core::epw::sample_lagrangian;
use epwlab_core::exterior::LagrangianSubspace;
use epwlab_core::lattice::{enumerate_minus2, hyperbolic, diagonal, EvenLattice, LatticeFixture};
use epwlab_core::sampler::SeededSampler;
use epwlab_core::Field;

pub const SEED: u64 = 42;

pub fn lagrangian_f5() -> LagrangianSubspace {
    sample_lagrangian(&mut SeededSampler::new(SEED), Field::Prime(5), 0).expect("graph Lagrangian")
}

/// L = ℤu ⊕ Λ from the fixture, rank 23.
pub fn fixture_l() -> EvenLattice {
    LatticeFixture::new().l
}

/// (−2)-vectors of diag(−2,−2) ⊕ U ⊕ U padded to the rank of Λ.
pub fn minus2_samples(count: usize) -> Vec<Vec<i64>> {
    let small = diagonal(&[-2, -2]).direct_sum(&hyperbolic()).direct_sum(&hyperbolic());
    let rank = LatticeFixture::new().lambda.rank();
    enumerate_minus2(&small, 3)
        .take(count)
        .map(|mut v| {
            v.resize(rank, 0);
            v
        })
        .collect()
}
