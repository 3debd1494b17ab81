#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nvwgm/model.hpp"
#include "nvwgm/pulses.hpp"

using namespace nvwgm;

TEST_CASE("gaussian envelope") {
  const GaussianPulse pulse{2.0e9, 5.0e-9, 1.8e-9};
  CHECK(pulse.value(pulse.center) == pulse.peak);
  CHECK(pulse.value(pulse.center + pulse.waist) ==
        doctest::Approx(pulse.peak / std::exp(1.0)).epsilon(1e-15));
  CHECK(pulse.value(pulse.center - pulse.waist) ==
        doctest::Approx(pulse.peak / std::exp(1.0)).epsilon(1e-15));
  SUBCASE("symmetric and strictly decreasing away from the center") {
    double prev = pulse.value(pulse.center);
    for (int k = 1; k <= 40; ++k) {
      const double dt = 0.2e-9 * k;
      const double right = pulse.value(pulse.center + dt);
      CHECK(pulse.value(pulse.center - dt) == doctest::Approx(right).epsilon(1e-14));
      CHECK(right < prev);
      prev = right;
    }
  }
}

TEST_CASE("counterintuitive schedule") {
  const double waist = 1.8e-9;
  const double peak = 5.0 / waist;
  SUBCASE("default anchor reproduces the 5 ns / 6.8 ns pair") {
    const StirapSchedule s = stirap_schedule(peak, waist, waist, StirapRole::qit);
    CHECK(s.pulse_b.center == doctest::Approx(5.0e-9).epsilon(1e-12));
    CHECK(s.pulse_a.center == doctest::Approx(6.8e-9).epsilon(1e-12));
    CHECK(s.pulse_a.center - s.pulse_b.center == doctest::Approx(waist).epsilon(1e-12));
    CHECK(s.pulse_b.center < s.pulse_a.center);  // late pulse drives center A
  }
  SUBCASE("bell role stops at the envelope crossing") {
    const StirapSchedule s = stirap_schedule(peak, waist, waist, StirapRole::bell);
    CHECK(s.t_stop == doctest::Approx(0.5 * (s.pulse_a.center + s.pulse_b.center)).epsilon(1e-15));
    const double at_stop_a = s.omega_a(s.t_stop);
    const double at_stop_b = s.omega_b(s.t_stop);
    CHECK(at_stop_a == doctest::Approx(at_stop_b).epsilon(1e-14));
    const double expected = peak * std::exp(-0.25);  // delay = waist
    CHECK(at_stop_a == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("transfer role runs until both envelopes are negligible") {
    const StirapSchedule s = stirap_schedule(peak, waist, waist, StirapRole::qit);
    CHECK(s.omega_a(s.t_stop) <= 1e-3 * peak * (1.0 + 1e-12));
    CHECK(s.omega_b(s.t_stop) <= 1e-3 * peak);
    CHECK(s.omega_a(s.t_stop) == doctest::Approx(1e-3 * peak).epsilon(1e-12));
  }
  SUBCASE("envelope ratio grows monotonically") {
    const StirapSchedule s = stirap_schedule(peak, waist, waist, StirapRole::qit);
    double prev = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double t = s.t_start + (s.t_stop - s.t_start) * k / 100.0;
      const double ratio = s.omega_a(t) / s.omega_b(t);
      if (k > 0) CHECK(ratio > prev);
      prev = ratio;
    }
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(stirap_schedule(peak, waist, 0.0, StirapRole::bell), std::invalid_argument);
    CHECK_THROWS_AS(stirap_schedule(peak, waist, -1e-9, StirapRole::bell),
                    std::invalid_argument);
    CHECK_THROWS_AS(stirap_schedule(peak, 0.0, 1e-9, StirapRole::bell), std::invalid_argument);
    CHECK_THROWS_AS(stirap_schedule(-1.0, waist, 1e-9, StirapRole::bell), std::invalid_argument);
  }
}

TEST_CASE("adiabaticity report") {
  SUBCASE("reference parameter set passes") {
    const double waist = 1.8e-9;
    const double g = kTwoPi * 1e9;
    const AdiabaticityReport report = adiabaticity_check(g, 5.0 / waist, waist);
    CHECK(report.pulse_area == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(report.coupling_area == doctest::Approx(11.31).epsilon(1e-3));
    CHECK(report.coupling_ratio == doctest::Approx(11.31 / 5.0).epsilon(1e-3));
    CHECK(report.pass);
  }
  SUBCASE("no drive fails the pulse-area criterion") {
    const AdiabaticityReport report = adiabaticity_check(1e9, 0.0, 2e-9);
    CHECK_FALSE(report.pulse_area_ok);
    CHECK_FALSE(report.pass);
  }
  SUBCASE("drive at the coupling strength fails the ratio criterion") {
    const AdiabaticityReport report = adiabaticity_check(5e9, 5e9, 10e-9);
    CHECK(report.pulse_area_ok);
    CHECK(report.coupling_area_ok);
    CHECK_FALSE(report.coupling_ratio_ok);
    CHECK_FALSE(report.pass);
  }
  SUBCASE("params overload uses the weakest coupling") {
    StirapParams params;
    params.g_a = 10.0;
    params.g_b = 4.0;
    params.pulse_a = {2.0, 0.0, 3.0};
    params.pulse_b = {2.0, 0.0, 3.0};
    const AdiabaticityReport report = adiabaticity_check(params);
    CHECK(report.coupling_area == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(report.coupling_ratio == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(report.pass);
  }
}
