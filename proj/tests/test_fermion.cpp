#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eam/bitmask.hpp"
#include "eam/error.hpp"
#include "eam/fermion.hpp"

using eam::BlockMask;
using eam::Boundary;
using eam::HoppingProfile;
using eam::HoppingSpec;
using std::numbers::ln2;

TEST_CASE("two-site hopping: one fermion in the bonding orbital") {
  // h = -1/2 [[0,1],[1,0]]; occupied orbital (1,1)/sqrt2 gives C = 1/2 everywhere.
  const auto corr = eam::ground_state_correlation(eam::build_hopping({}, 2, Boundary::open));
  CHECK(corr.n_occupied == 1);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) CHECK(corr.c(i, j).real() == doctest::Approx(0.5).epsilon(1e-14));
  }
  CHECK(eam::fermion_block_entropy(corr, BlockMask(2, 1)) == doctest::Approx(ln2).epsilon(1e-14));
}

TEST_CASE("binary and mode entropies") {
  CHECK(eam::binary_entropy(0.5) == doctest::Approx(ln2));
  CHECK(eam::binary_entropy(0.0) == 0.0);
  CHECK(eam::binary_entropy(1.0) == 0.0);
  CHECK(eam::binary_entropy(-5e-10) == 0.0);
  CHECK_THROWS_AS(eam::binary_entropy(1.1), eam::Error);
  CHECK_THROWS_AS(eam::binary_entropy(-1e-6), eam::Error);
  const double nu = 0.3;
  CHECK(eam::mode_entropy(nu, 2) == doctest::Approx(-std::log(nu * nu + (1 - nu) * (1 - nu))));
  CHECK(eam::mode_entropy(nu, 1) == doctest::Approx(eam::binary_entropy(nu)));
}

TEST_CASE("hopping profiles") {
  SUBCASE("dimerized bonds alternate strong and weak") {
    const auto h = eam::build_hopping({HoppingProfile::dimerized, 0.5}, 6, Boundary::periodic);
    CHECK(h.t(0, 1) == doctest::Approx(1.5));
    CHECK(h.t(1, 2) == doctest::Approx(0.5));
    CHECK(h.t(5, 0) == doctest::Approx(0.5));
    CHECK(h.t(0, 1) == h.t(1, 0));
    HoppingSpec flipped{HoppingProfile::dimerized, 0.5, 0.0, true};
    CHECK(eam::build_hopping(flipped, 6, Boundary::periodic).t(0, 1) == doctest::Approx(0.5));
  }
  SUBCASE("antiperiodic flips the closing bond") {
    const auto h = eam::build_hopping({}, 6, Boundary::antiperiodic);
    CHECK(h.t(5, 0) == doctest::Approx(-1.0));
    CHECK(h.t(0, 1) == doctest::Approx(1.0));
  }
  SUBCASE("rainbow decays away from the centre") {
    const auto h = eam::build_hopping({HoppingProfile::rainbow, 0.0, 1.0}, 6, Boundary::open);
    CHECK(h.t(2, 3) == doctest::Approx(1.0));
    CHECK(h.t(1, 2) == doctest::Approx(std::exp(-0.5)));
    CHECK(h.t(0, 1) == doctest::Approx(std::exp(-1.5)));
    const auto h4 = eam::build_hopping({HoppingProfile::rainbow, 0.0, 3.0}, 4, Boundary::open);
    CHECK(h4.t(1, 2) == doctest::Approx(1.0));
    CHECK(h4.t(0, 1) == doctest::Approx(std::exp(-1.5)));
    CHECK(h4.t(2, 3) == doctest::Approx(std::exp(-1.5)));
    CHECK_THROWS(eam::build_hopping({HoppingProfile::rainbow, 0.0, 1.0}, 6, Boundary::periodic));
    CHECK_THROWS(eam::build_hopping({HoppingProfile::rainbow, 0.0, 1.0}, 5, Boundary::open));
  }
  CHECK_THROWS(eam::build_hopping({HoppingProfile::dimerized, 1.5}, 6, Boundary::periodic));
  CHECK_THROWS(eam::build_hopping({}, 1, Boundary::open));
}

TEST_CASE("fully dimerized chain is a product of bonding pairs") {
  const auto corr = eam::ground_state_correlation(
      eam::build_hopping({HoppingProfile::dimerized, 1.0}, 8, Boundary::periodic));
  CHECK(eam::fermion_block_entropy(corr, BlockMask(8, 0b1)) == doctest::Approx(ln2).epsilon(1e-12));
  CHECK(eam::fermion_block_entropy(corr, BlockMask(8, 0b11)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eam::fermion_block_entropy(corr, BlockMask(8, 0b0110)) == doctest::Approx(2 * ln2).epsilon(1e-12));
}

TEST_CASE("strong rainbow approaches concentric Bell pairs") {
  const auto corr = eam::ground_state_correlation(
      eam::build_hopping({HoppingProfile::rainbow, 0.0, 14.0}, 6, Boundary::open));
  CHECK(eam::fermion_block_entropy(corr, BlockMask::contiguous(6, 0, 3)) == doctest::Approx(3 * ln2).epsilon(1e-3));
  CHECK(eam::fermion_block_entropy(corr, BlockMask(6, 0b100001)) < 1e-3);
}

TEST_CASE("purity symmetry and restricted spectrum range") {
  const auto corr = eam::ground_state_correlation(eam::build_hopping({}, 10, Boundary::antiperiodic));
  for (std::uint64_t m : {1ULL, 0b111ULL, 0b1010011ULL, 0b1111100000ULL}) {
    const BlockMask a(10, m);
    CHECK(eam::fermion_block_entropy(corr, a) ==
          doctest::Approx(eam::fermion_block_entropy(corr, a.complement())).epsilon(1e-12));
    const auto spec = eam::restricted_spectrum(corr, a, false);
    CHECK(spec.nu.minCoeff() > -1e-9);
    CHECK(spec.nu.maxCoeff() < 1 + 1e-9);
  }
  CHECK_THROWS_AS(eam::fermion_block_entropy(corr, BlockMask(10, 0)), std::invalid_argument);
}

TEST_CASE("degenerate Fermi level is reported") {
  // Periodic N=4 at half filling: levels -1, 0, 0, 1.
  const auto corr = eam::ground_state_correlation(eam::build_hopping({}, 4, Boundary::periodic));
  CHECK_FALSE(corr.warnings.empty());
  const auto clean = eam::ground_state_correlation(eam::build_hopping({}, 4, Boundary::antiperiodic));
  CHECK(clean.warnings.empty());
}
