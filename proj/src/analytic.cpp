#include "nvwgm/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nvwgm {

namespace {

void require_n(int n) {
  if (n < 2) throw std::invalid_argument("need at least two centers, got " + std::to_string(n));
}

void require_two_site(const SpaceDescriptor& space) {
  require_valid(space);
  if (space.n_sites != 2) throw std::invalid_argument("expected a two-site space");
}

}  // namespace

WStateEvolution w_state_evolution(int n, double gamma, double t) {
  require_n(n);
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  const double nd = static_cast<double>(n);
  const Complex phase = std::exp(-kImag * (nd * gamma * t));
  WStateEvolution result;
  result.c_initial = (phase + (nd - 1.0)) / nd;
  result.c_w = std::sqrt(nd - 1.0) * (phase - 1.0) / nd;
  const double w2 = std::norm(result.c_w);
  result.p_w = w2 / (std::norm(result.c_initial) + w2);
  return result;
}

double w_success_probability_max(int n) {
  require_n(n);
  const double nd = static_cast<double>(n);
  return 4.0 * (nd - 1.0) / (4.0 * (nd - 1.0) + (nd - 2.0) * (nd - 2.0));
}

double w_gate_time(int n, double gamma, int k) {
  require_n(n);
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  return (2.0 * k + 1.0) * kPi / (static_cast<double>(n) * gamma);
}

double w_gate_time_us(int n, double gamma_mhz_over_2pi, int k) {
  require_n(n);
  if (gamma_mhz_over_2pi <= 0.0) throw std::invalid_argument("gamma must be positive");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  return (2.0 * k + 1.0) / (2.0 * static_cast<double>(n) * gamma_mhz_over_2pi);
}

std::string format_3sig(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", value);
    return buf;
  }
  int e = static_cast<int>(std::floor(std::log10(value)));
  // Three digits land in [100, 1000). The (1 + 1e-12) guard makes values a
  // few ulps below an exact half round like the exact value.
  double scaled = value / std::pow(10.0, e - 2);
  long digits = static_cast<long>(std::floor(scaled * (1.0 + 1e-12) + 0.5));
  if (digits >= 1000) {
    digits = 100;
    e += 1;
  }
  if (digits < 100) {  // log10 edge, e.g. value barely under a power of ten
    digits *= 10;
    e -= 1;
  }
  std::string d = std::to_string(digits);
  if (e >= 2) return d + std::string(e - 2, '0');
  if (e == 1) return d.substr(0, 2) + "." + d.substr(2);
  if (e == 0) return d.substr(0, 1) + "." + d.substr(1);
  return "0." + std::string(-e - 1, '0') + d;
}

StateVector w_target_state(const SpaceDescriptor& space) {
  require_valid(space);
  const int n = space.n_sites;
  require_n(n);
  StateVector psi = zero_state(space);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n - 1));
  BasisLabel label{std::vector<int>(n, kLevel0), 0};
  for (int j = 0; j < n - 1; ++j) {
    label.site_levels[j] = kLevel1;
    psi.amps[basis_index(space, label)] = amp;
    label.site_levels[j] = kLevel0;
  }
  return psi;
}

StateVector w_evolved_state(const SpaceDescriptor& space, double gamma, double t) {
  require_valid(space);
  const int n = space.n_sites;
  const WStateEvolution coeffs = w_state_evolution(n, gamma, t);
  StateVector psi = zero_state(space);
  BasisLabel label{std::vector<int>(n, kLevel0), 0};
  label.site_levels[n - 1] = kLevel1;
  psi.amps[basis_index(space, label)] = coeffs.c_initial;
  label.site_levels[n - 1] = kLevel0;
  const Complex w_amp = coeffs.c_w / std::sqrt(static_cast<double>(n - 1));
  for (int j = 0; j < n - 1; ++j) {
    label.site_levels[j] = kLevel1;
    psi.amps[basis_index(space, label)] = w_amp;
    label.site_levels[j] = kLevel0;
  }
  return psi;
}

StateVector dark_state(double g_a, double g_b, double omega_a, double omega_b,
                       const SpaceDescriptor& space) {
  require_two_site(space);
  if (!space.has_cavity()) throw std::invalid_argument("dark state needs a cavity factor");
  double amp_a = omega_b * g_a;   // |1 0> |0_c>
  double amp_b = omega_a * g_b;   // |0 1> |0_c>
  double amp_c = -omega_a * omega_b;  // |0 0> |1_c>
  const double norm2 = amp_a * amp_a + amp_b * amp_b + amp_c * amp_c;
  if (norm2 == 0.0) {
    throw std::invalid_argument("dark state undefined: all three amplitudes vanish");
  }
  double scale = 1.0 / std::sqrt(norm2);
  if (amp_a < 0.0) scale = -scale;  // pin the |10>|0_c> amplitude non-negative
  StateVector psi = zero_state(space);
  psi.amps[basis_index(space, {{kLevel1, kLevel0}, 0})] = amp_a * scale;
  psi.amps[basis_index(space, {{kLevel0, kLevel1}, 0})] = amp_b * scale;
  psi.amps[basis_index(space, {{kLevel0, kLevel0}, 1})] = amp_c * scale;
  return psi;
}

StateVector vacuum_dark_state(const SpaceDescriptor& space) {
  require_two_site(space);
  return basis_state(space, {{kLevel0, kLevel0}, 0});
}

double asymmetric_bell_fidelity(double g_a, double g_b) {
  if (g_a == 0.0 && g_b == 0.0) {
    throw std::invalid_argument("fidelity undefined for vanishing couplings");
  }
  const double sum = g_a + g_b;
  return sum * sum / (2.0 * (g_a * g_a + g_b * g_b));
}

StateVector bell_target_state(const SpaceDescriptor& space) {
  require_two_site(space);
  StateVector psi = zero_state(space);
  const double amp = 1.0 / std::sqrt(2.0);
  psi.amps[basis_index(space, {{kLevel1, kLevel0}, 0})] = amp;
  psi.amps[basis_index(space, {{kLevel0, kLevel1}, 0})] = amp;
  return psi;
}

}  // namespace nvwgm
