#ifndef NVWGM_MODEL_HPP
#define NVWGM_MODEL_HPP

#include <functional>
#include <vector>

#include "nvwgm/operators.hpp"
#include "nvwgm/pulses.hpp"

namespace nvwgm {

// ---------------------------------------------------------------------------
// Parameter bundles (all angular frequencies, rad/s)
// ---------------------------------------------------------------------------

// One NV center in the detuned Raman configuration: cavity coupling g, laser
// Rabi frequency Omega, laser detuning Delta = w_e1 - w_L, and two-photon
// detuning delta = w_e0 + w_L - w_e1.
struct RamanCenter {
  double g = 0.0;
  double rabi = 0.0;
  double laser_detuning = 0.0;
  double two_photon_detuning = 0.0;

  double eta() const;
  // The adiabatic elimination of |e> needs Delta well above g and Omega.
  // The factor-of-ten boundary is inclusive up to rounding: the nominal
  // operating point sits exactly on it.
  bool validity() const {
    return laser_detuning >= 10.0 * std::max(g, rabi) * (1.0 - 1e-12) &&
           two_photon_detuning > 0.0;
  }
};

struct RamanParams {
  std::vector<RamanCenter> centers;

  static RamanParams uniform(int n, const RamanCenter& center);
  // Picks the Rabi frequency so the effective coupling eta comes out exactly
  // at the requested value for the given g, Delta and delta. Keeps detuning
  // ratios like delta/eta exact instead of chasing them through the eta
  // formula.
  static RamanParams uniform_from_eta(int n, double eta, double two_photon_detuning, double g,
                                      double laser_detuning);

  int size() const { return static_cast<int>(centers.size()); }
  bool validity() const;
  double max_two_photon_detuning() const;
};

// Two-site resonant (STIRAP) configuration.
struct StirapParams {
  double g_a = 0.0;  // rad/s
  double g_b = 0.0;
  GaussianPulse pulse_a;
  GaussianPulse pulse_b;
  double kappa = 0.0;    // cavity decay rate
  double gamma_e = 0.0;  // |e> spontaneous emission rate

  bool has_decay() const { return kappa > 0.0 || gamma_e > 0.0; }
};

AdiabaticityReport adiabaticity_check(const StirapParams& params,
                                      const AdiabaticityThresholds& thresholds = {});

struct PhysicalConstants {
  double wavelength = 637e-9;          // m, zero-phonon line
  double gamma0 = kTwoPi * 83e6;       // rad/s, |e> spontaneous rate
  double quality_factor = 1e9;         //
  double mode_volume = 100e-18;        // m^3
  double field_ratio = 1.0 / 6.0;      // |E(r)/E_max|
  double light_speed = 299792458.0;    // m/s
};

// ---------------------------------------------------------------------------
// Derived quantities
// ---------------------------------------------------------------------------

// eta = g * Omega * (1/(Delta + delta) + 1/Delta)
double effective_raman_coupling(double g, double rabi, double laser_detuning,
                                double two_photon_detuning);

// gamma = |eta^2 / delta|, the cavity-mediated exchange rate.
double exchange_coupling(double eta, double two_photon_detuning);

// Characteristic interaction volume V_a = 3 c lambda^2 / (4 pi Gamma0).
double interaction_volume(const PhysicalConstants& constants);

// g_max = Gamma0 |E(r)/E_max| sqrt(V_a / V_m)
double max_coupling(const PhysicalConstants& constants);

// kappa = omega / Q with omega = 2 pi c / lambda.
double cavity_decay_rate(double wavelength, double quality_factor);

// Gamma_eff = Gamma0 Omega g / Delta^2, the residual |1> -> |0> rate.
double effective_spontaneous_rate(double gamma0, double rabi, double g, double laser_detuning);

// ---------------------------------------------------------------------------
// Hamiltonians and dissipators
// ---------------------------------------------------------------------------

// Detuned Raman interaction in the rotating frame:
//   H(t) = sum_j eta_j [a^dag sigma_j^- e^{-i delta_j t} + a sigma_j^+ e^{+i delta_j t}]
// Needs a qubit space with a real cavity factor (n_max >= 1).
Operator raman_interaction_hamiltonian(const RamanParams& params, const SpaceDescriptor& space,
                                       double t);

// Virtual-photon exchange between every pair of centers:
//   H = gamma [sum_j |1_j><1_j| + sum_{j != k} sigma_j^+ sigma_k^-]
// Acts as identity on any cavity factor; conserves total excitation number.
Operator effective_exchange_hamiltonian(double gamma, const SpaceDescriptor& space);

// Resonant two-site lambda configuration with instantaneous Rabi values:
//   H = sum_j [g_j a^dag |0_j><e_j| + Omega_j |e_j><1_j| + h.c.]
Operator stirap_hamiltonian_at(const SpaceDescriptor& space, double g_a, double g_b,
                               double omega_a, double omega_b);
Operator stirap_hamiltonian(const StirapParams& params, const SpaceDescriptor& space, double t);

// Conditional (no-click) Hamiltonian: the resonant one minus
// i kappa/2 a^dag a + i Gamma/2 sum_j |e_j><e_j|. Not Hermitian when either
// rate is positive.
Operator stirap_decay_hamiltonian(const StirapParams& params, const SpaceDescriptor& space,
                                  double t);

// One amplitude-damping channel |0_j><1_j| per center, all at equal rate.
struct Jump {
  double rate = 0.0;
  Operator op;
};
std::vector<Jump> spin_decay_jumps(double rate, const SpaceDescriptor& space);

// ---------------------------------------------------------------------------
// Prepared time-dependent sources for the integrators
// ---------------------------------------------------------------------------

// Evaluate-at-t Hamiltonian with no hidden state. frequency_scale bounds the
// fastest rate in play (matrix norm plus any explicit time dependence) and
// drives automatic step selection.
struct HamiltonianSource {
  SpaceDescriptor space;
  std::function<void(double, Matrix&)> eval;
  double frequency_scale = 0.0;  // rad/s
  bool constant = false;
  bool hermitian = true;

  static HamiltonianSource from_operator(const Operator& op, double frequency_scale = 0.0);
};

HamiltonianSource raman_interaction_source(const RamanParams& params,
                                           const SpaceDescriptor& space);
HamiltonianSource stirap_source(const StirapParams& params, const SpaceDescriptor& space);
HamiltonianSource stirap_decay_source(const StirapParams& params, const SpaceDescriptor& space);

}  // namespace nvwgm

#endif  // NVWGM_MODEL_HPP
