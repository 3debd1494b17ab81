#ifndef NVWGM_ANALYTIC_HPP
#define NVWGM_ANALYTIC_HPP

#include <string>

#include "nvwgm/space.hpp"

namespace nvwgm {

// Closed-form state of the exchange evolution that starts with only the
// last center excited: c_initial multiplies |0...01>, c_w multiplies
// |W_{N-1}>|0_N>, and p_w is the probability of extracting |W_{N-1}> after
// measuring the last center in |0>.
struct WStateEvolution {
  Complex c_initial;
  Complex c_w;
  double p_w = 0.0;
};

WStateEvolution w_state_evolution(int n, double gamma, double t);

// Maximum of p_w over one exchange period: 4(N-1) / [4(N-1) + (N-2)^2].
double w_success_probability_max(int n);

// First (k = 0) and later odd-multiple times of maximal success
// probability: (2k+1) pi / (N gamma).
double w_gate_time(int n, double gamma, int k = 0);

// Same expressions in bench units: gamma given as a plain 2pi x MHz number,
// time returned in microseconds.
double w_gate_time_us(int n, double gamma_mhz_over_2pi, int k = 0);

// Decimal formatting to 3 significant figures, rounding halves away from
// zero with a tiny relative guard so values sitting on a half after
// binary-to-decimal conversion round the way their exact value would.
std::string format_3sig(double value);

// |W_{N-1}> (x) |0_N> (x) |vac> on a qubit space.
StateVector w_target_state(const SpaceDescriptor& space);

// c_initial |0...01> + c_w |W_{N-1}>|0_N> at time t.
StateVector w_evolved_state(const SpaceDescriptor& space, double gamma, double t);

// Null state of the resonant two-site Hamiltonian at instantaneous Rabi
// frequencies (omega_a, omega_b):
//   N' [omega_b g_a |100> + omega_a g_b |010> - omega_a omega_b |00,1_c>]
// with the first amplitude fixed real non-negative.
StateVector dark_state(double g_a, double g_b, double omega_a, double omega_b,
                       const SpaceDescriptor& space);

// The trivial second null state |00,0_c>.
StateVector vacuum_dark_state(const SpaceDescriptor& space);

// Overlap of the asymmetric transfer result with the symmetric Bell state:
// (g_a + g_b)^2 / [2 (g_a^2 + g_b^2)].
double asymmetric_bell_fidelity(double g_a, double g_b);

// (|10> + |01>)/sqrt(2) (x) |vac> on a two-site space.
StateVector bell_target_state(const SpaceDescriptor& space);

}  // namespace nvwgm

#endif  // NVWGM_ANALYTIC_HPP
