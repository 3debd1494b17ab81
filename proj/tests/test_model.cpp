#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nvwgm/model.hpp"

using namespace nvwgm;

namespace {
const double kMHz = kTwoPi * 1e6;  // "2pi x 1 MHz" in rad/s
}

TEST_CASE("effective Raman coupling") {
  SUBCASE("nominal operating point lands near 2pi x 20 MHz") {
    const double eta = effective_raman_coupling(1000 * kMHz, 100 * kMHz, 10000 * kMHz, 100 * kMHz);
    CHECK(units::mhz_over_2pi(eta) == doctest::Approx(19.901).epsilon(1e-4));
    CHECK(std::abs(eta - 20 * kMHz) / (20 * kMHz) < 0.01);
  }
  SUBCASE("degenerate two-photon limit") {
    const double eta = effective_raman_coupling(3.0, 2.0, 10.0, 0.0);
    CHECK(eta == doctest::Approx(2.0 * 3.0 * 2.0 / 10.0).epsilon(1e-15));
  }
  SUBCASE("vanishing coupling") {
    CHECK(effective_raman_coupling(0.0, 2.0, 10.0, 1.0) == 0.0);
  }
  SUBCASE("bad denominators") {
    CHECK_THROWS_AS(effective_raman_coupling(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(effective_raman_coupling(1.0, 1.0, 1.0, -2.0), std::invalid_argument);
  }
}

TEST_CASE("exchange coupling") {
  CHECK(units::mhz_over_2pi(exchange_coupling(20 * kMHz, 100 * kMHz)) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(exchange_coupling(0.0, 1.0) == 0.0);
  CHECK(exchange_coupling(2.0, -4.0) == exchange_coupling(2.0, 4.0));
  CHECK_THROWS_AS(exchange_coupling(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("parameter chain reproduces the nominal rates within 1 percent") {
  const double eta = effective_raman_coupling(1000 * kMHz, 100 * kMHz, 10000 * kMHz, 100 * kMHz);
  const double gamma = exchange_coupling(eta, 100 * kMHz);
  CHECK(std::abs(eta - 20 * kMHz) / (20 * kMHz) < 0.01);
  CHECK(std::abs(gamma - 4 * kMHz) / (4 * kMHz) < 0.01);
}

TEST_CASE("maximal coupling from cavity geometry") {
  const PhysicalConstants nominal{};
  SUBCASE("independent evaluation of the two formulas") {
    const double va = 3.0 * nominal.light_speed * nominal.wavelength * nominal.wavelength /
                      (4.0 * kPi * nominal.gamma0);
    CHECK(interaction_volume(nominal) == doctest::Approx(va).epsilon(1e-15));
    const double expected = nominal.gamma0 * nominal.field_ratio *
                            std::sqrt(va / nominal.mode_volume);
    CHECK(max_coupling(nominal) == doctest::Approx(expected).epsilon(1e-15));
    // ~ 2pi x 0.33 GHz at the nominal numbers
    CHECK(units::mhz_over_2pi(max_coupling(nominal)) == doctest::Approx(326.44).epsilon(1e-3));
  }
  SUBCASE("linear in the field ratio") {
    PhysicalConstants doubled = nominal;
    doubled.field_ratio *= 2.0;
    CHECK(max_coupling(doubled) == doctest::Approx(2.0 * max_coupling(nominal)).epsilon(1e-12));
  }
  SUBCASE("inverse square root in the mode volume") {
    PhysicalConstants big = nominal;
    big.mode_volume *= 4.0;
    CHECK(max_coupling(big) == doctest::Approx(0.5 * max_coupling(nominal)).epsilon(1e-12));
  }
}

TEST_CASE("cavity decay rate") {
  const double kappa = cavity_decay_rate(637e-9, 1e9);
  CHECK(units::mhz_over_2pi(kappa) == doctest::Approx(0.47063).epsilon(1e-4));
  CHECK(cavity_decay_rate(637e-9, 1e10) == doctest::Approx(kappa / 10.0).epsilon(1e-12));
  CHECK(cavity_decay_rate(637e-9, 1e18) < kappa * 1e-8);
  CHECK_THROWS_AS(cavity_decay_rate(637e-9, 0.0), std::invalid_argument);
}

TEST_CASE("effective spontaneous rate") {
  const double rate = effective_spontaneous_rate(83 * kMHz, 100 * kMHz, 1000 * kMHz, 10000 * kMHz);
  CHECK(units::mhz_over_2pi(rate) == doctest::Approx(0.083).epsilon(1e-12));
  CHECK(effective_spontaneous_rate(83 * kMHz, 0.0, 1000 * kMHz, 10000 * kMHz) == 0.0);
  CHECK(effective_spontaneous_rate(1.0, 1.0, 1.0, 2.0) ==
        doctest::Approx(0.25 * effective_spontaneous_rate(1.0, 1.0, 1.0, 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(effective_spontaneous_rate(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("raman parameter bundles") {
  const RamanParams params = RamanParams::uniform_from_eta(3, 20 * kMHz, 100 * kMHz,
                                                           1000 * kMHz, 10000 * kMHz);
  REQUIRE(params.size() == 3);
  for (const RamanCenter& c : params.centers) {
    CHECK(c.eta() == doctest::Approx(20 * kMHz).epsilon(1e-12));
  }
  CHECK(params.validity());

  RamanParams invalid = params;
  invalid.centers[1].laser_detuning = 5.0 * invalid.centers[1].g;
  CHECK_FALSE(invalid.validity());
}

TEST_CASE("detuned interaction Hamiltonian") {
  const SpaceDescriptor space = SpaceDescriptor::qubits(1, 1);
  const RamanParams params =
      RamanParams::uniform(1, {1000 * kMHz, 100 * kMHz, 10000 * kMHz, 100 * kMHz});
  const double eta = params.centers[0].eta();

  SUBCASE("matrix element at t = 0") {
    const Operator h = raman_interaction_hamiltonian(params, space, 0.0);
    const long bra = basis_index(space, {{0}, 1});
    const long ket = basis_index(space, {{1}, 0});
    CHECK(h.mat(bra, ket).real() == doctest::Approx(eta).epsilon(1e-12));
    CHECK(h.mat(bra, ket).imag() == doctest::Approx(0.0));
  }
  SUBCASE("rotating phase carries the two-photon detuning") {
    const double t = 0.37e-9;
    const Operator h = raman_interaction_hamiltonian(params, space, t);
    const long bra = basis_index(space, {{0}, 1});
    const long ket = basis_index(space, {{1}, 0});
    const Complex expected =
        eta * std::exp(-kImag * (params.centers[0].two_photon_detuning * t));
    CHECK(std::abs(h.mat(bra, ket) - expected) < 1e-12 * eta);
  }
  SUBCASE("hermitian at arbitrary times, vacuum uncoupled") {
    for (double t : {0.0, 1.3e-9, 7.7e-9}) {
      const Operator h = raman_interaction_hamiltonian(params, space, t);
      CHECK(h.hermiticity_error() < 1e-12 * eta);
      CHECK(std::abs(h.mat(0, 0)) == 0.0);
    }
  }
  SUBCASE("rejects spaces without a cavity factor") {
    CHECK_THROWS_AS(raman_interaction_hamiltonian(params, SpaceDescriptor::qubits(1), 0.0),
                    std::invalid_argument);
  }
  SUBCASE("rejects parameter count mismatch") {
    CHECK_THROWS_AS(raman_interaction_hamiltonian(params, SpaceDescriptor::qubits(2, 1), 0.0),
                    std::invalid_argument);
  }
  SUBCASE("per-center parameters carry their own phases") {
    const SpaceDescriptor pair = SpaceDescriptor::qubits(2, 1);
    RamanParams two;
    two.centers.push_back({1000 * kMHz, 100 * kMHz, 10000 * kMHz, 100 * kMHz});
    two.centers.push_back({800 * kMHz, 50 * kMHz, 9000 * kMHz, 250 * kMHz});
    const double t = 1.1e-9;
    const Operator h = raman_interaction_hamiltonian(two, pair, t);
    CHECK(h.hermiticity_error() < 1e-3);  // absolute, entries are ~1e8
    for (int site = 1; site <= 2; ++site) {
      const RamanCenter& c = two.centers[site - 1];
      BasisLabel excited{{0, 0}, 0};
      excited.site_levels[site - 1] = 1;
      BasisLabel photon{{0, 0}, 1};
      const Complex element = h.mat(basis_index(pair, photon), basis_index(pair, excited));
      const Complex expected = c.eta() * std::exp(-kImag * (c.two_photon_detuning * t));
      CHECK(std::abs(element - expected) < 1e-6 * c.eta());
    }
  }
}

TEST_CASE("effective exchange Hamiltonian") {
  SUBCASE("two-center block") {
    const SpaceDescriptor space = SpaceDescriptor::qubits(2);
    const double gamma = 2.5;
    const Operator h = effective_exchange_hamiltonian(gamma, space);
    const long i10 = basis_index(space, {{1, 0}, 0});
    const long i01 = basis_index(space, {{0, 1}, 0});
    CHECK(h.mat(i10, i10) == Complex{gamma, 0.0});
    CHECK(h.mat(i01, i01) == Complex{gamma, 0.0});
    CHECK(h.mat(i10, i01) == Complex{gamma, 0.0});
    CHECK(h.mat(i01, i10) == Complex{gamma, 0.0});
    CHECK(h.mat(0, 0) == Complex{0.0, 0.0});
  }
  SUBCASE("commutes with the total excitation operator exactly") {
    const SpaceDescriptor space = SpaceDescriptor::qubits(4);
    const Operator h = effective_exchange_hamiltonian(1.0, space);
    Matrix number = Matrix::Zero(space.dim(), space.dim());
    for (long i = 0; i < space.dim(); ++i) {
      int count = 0;
      for (int level : basis_label(space, i).site_levels) count += (level == kLevel1);
      number(i, i) = count;
    }
    CHECK((h.mat * number - number * h.mat).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("acts as identity on the cavity factor") {
    const SpaceDescriptor bare = SpaceDescriptor::qubits(2);
    const SpaceDescriptor with_cavity = SpaceDescriptor::qubits(2, 1);
    const Operator h = effective_exchange_hamiltonian(1.0, with_cavity);
    const Operator h0 = effective_exchange_hamiltonian(1.0, bare);
    for (long i = 0; i < bare.dim(); ++i) {
      for (long j = 0; j < bare.dim(); ++j) {
        CHECK(h.mat(2 * i, 2 * j) == h0.mat(i, j));      // photon 0 block
        CHECK(h.mat(2 * i + 1, 2 * j + 1) == h0.mat(i, j));  // photon 1 block
        CHECK(h.mat(2 * i, 2 * j + 1) == Complex{0.0, 0.0});
      }
    }
  }
  SUBCASE("needs at least two centers") {
    CHECK_THROWS_AS(effective_exchange_hamiltonian(1.0, SpaceDescriptor::qubits(1)),
                    std::invalid_argument);
  }
}

TEST_CASE("resonant two-site Hamiltonian") {
  const SpaceDescriptor space = SpaceDescriptor::lambda_sites(2, 1);
  SUBCASE("drive off leaves only coupling terms") {
    const Operator h = stirap_hamiltonian_at(space, 2.0, 3.0, 0.0, 0.0);
    const long e_a = basis_index(space, {{kLevelE, 0}, 0});
    const long one_a = basis_index(space, {{kLevel1, 0}, 0});
    CHECK(h.mat(e_a, one_a) == Complex{0.0, 0.0});
    const long zero_photon = basis_index(space, {{0, 0}, 1});
    CHECK(h.mat(zero_photon, e_a) == Complex{2.0, 0.0});
  }
  SUBCASE("drive matrix element") {
    const Operator h = stirap_hamiltonian_at(space, 2.0, 3.0, 0.7, 0.9);
    const long e_a = basis_index(space, {{kLevelE, 0}, 0});
    const long one_a = basis_index(space, {{kLevel1, 0}, 0});
    CHECK(h.mat(e_a, one_a) == Complex{0.7, 0.0});
    const long e_b = basis_index(space, {{0, kLevelE}, 0});
    const long one_b = basis_index(space, {{0, kLevel1}, 0});
    CHECK(h.mat(e_b, one_b) == Complex{0.9, 0.0});
    CHECK(h.hermiticity_error() == 0.0);
  }
  SUBCASE("rejects wrong space shapes") {
    CHECK_THROWS_AS(stirap_hamiltonian_at(SpaceDescriptor::qubits(2, 1), 1, 1, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(stirap_hamiltonian_at(SpaceDescriptor::lambda_sites(2, 0), 1, 1, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(stirap_hamiltonian_at(SpaceDescriptor::lambda_sites(3, 1), 1, 1, 0, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("conditional decay Hamiltonian") {
  const SpaceDescriptor space = SpaceDescriptor::lambda_sites(2, 2);
  StirapParams params;
  params.g_a = 2.0;
  params.g_b = 2.0;
  params.pulse_a = {1.0, 5.0, 2.0};
  params.pulse_b = {1.0, 3.0, 2.0};

  SUBCASE("no decay is bit-identical to the resonant Hamiltonian") {
    const Operator plain = stirap_hamiltonian(params, space, 4.0);
    const Operator decay = stirap_decay_hamiltonian(params, space, 4.0);
    CHECK((plain.mat.array() == decay.mat.array()).all());
    CHECK(decay.hermitian);
  }
  SUBCASE("anti-hermitian part carries the rates") {
    params.kappa = 0.8;
    params.gamma_e = 0.6;
    const Operator h = stirap_decay_hamiltonian(params, space, 4.0);
    CHECK_FALSE(h.hermitian);
    const Matrix anti = (h.mat - h.mat.adjoint()) / (2.0 * kImag);
    const long e_a = basis_index(space, {{kLevelE, 0}, 0});
    CHECK(anti(e_a, e_a).real() == doctest::Approx(-0.3).epsilon(1e-15));
    const long two_photon = basis_index(space, {{0, 0}, 2});
    CHECK(anti(two_photon, two_photon).real() == doctest::Approx(-0.8).epsilon(1e-15));
    const long ee = basis_index(space, {{kLevelE, kLevelE}, 1});
    CHECK(anti(ee, ee).real() == doctest::Approx(-0.6 - 0.4).epsilon(1e-15));
  }
  SUBCASE("negative rates are rejected") {
    params.kappa = -1.0;
    CHECK_THROWS_AS(stirap_decay_hamiltonian(params, space, 0.0), std::invalid_argument);
  }
}

TEST_CASE("per-center decay jumps") {
  const SpaceDescriptor space = SpaceDescriptor::qubits(3);
  const std::vector<Jump> jumps = spin_decay_jumps(0.25, space);
  REQUIRE(jumps.size() == 3);
  for (int site = 0; site < 3; ++site) {
    CHECK(jumps[site].rate == 0.25);
    BasisLabel up{std::vector<int>(3, 0), 0};
    up.site_levels[site] = 1;
    BasisLabel down{std::vector<int>(3, 0), 0};
    CHECK(jumps[site].op.mat(basis_index(space, down), basis_index(space, up)) ==
          Complex{1.0, 0.0});
  }
  CHECK_THROWS_AS(spin_decay_jumps(-0.1, space), std::invalid_argument);
  CHECK_THROWS_AS(spin_decay_jumps(0.1, SpaceDescriptor::lambda_sites(2, 1)),
                  std::invalid_argument);
}

TEST_CASE("prepared sources match the direct builders") {
  SUBCASE("detuned interaction") {
    const SpaceDescriptor space = SpaceDescriptor::qubits(2, 1);
    const RamanParams params =
        RamanParams::uniform(2, {1000 * kMHz, 100 * kMHz, 10000 * kMHz, 100 * kMHz});
    const HamiltonianSource source = raman_interaction_source(params, space);
    Matrix h;
    for (double t : {0.0, 0.4e-9, 2.9e-9}) {
      source.eval(t, h);
      const Operator direct = raman_interaction_hamiltonian(params, space, t);
      CHECK((h - direct.mat).cwiseAbs().maxCoeff() < 1e-9);
    }
    CHECK(source.frequency_scale >= params.centers[0].two_photon_detuning);
  }
  SUBCASE("resonant protocol with and without decay") {
    const SpaceDescriptor space = SpaceDescriptor::lambda_sites(2, 2);
    StirapParams params;
    params.g_a = 3.0;
    params.g_b = 2.0;
    params.pulse_a = {1.5, 6.0, 2.0};
    params.pulse_b = {1.5, 4.0, 2.0};
    params.kappa = 0.2;
    params.gamma_e = 0.1;
    Matrix h;
    for (double t : {0.0, 3.3, 6.1}) {
      stirap_source(params, space).eval(t, h);
      CHECK((h - stirap_hamiltonian(params, space, t).mat).cwiseAbs().maxCoeff() < 1e-14);
      stirap_decay_source(params, space).eval(t, h);
      CHECK((h - stirap_decay_hamiltonian(params, space, t).mat).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK(stirap_source(params, space).hermitian);
    CHECK_FALSE(stirap_decay_source(params, space).hermitian);
  }
}
