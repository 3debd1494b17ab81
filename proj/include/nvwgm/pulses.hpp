#ifndef NVWGM_PULSES_HPP
#define NVWGM_PULSES_HPP

#include <stdexcept>

namespace nvwgm {

// Gaussian laser envelope Omega(t) = peak * exp(-(t - center)^2 / waist^2).
struct GaussianPulse {
  double peak = 0.0;    // rad/s
  double center = 0.0;  // s
  double waist = 1.0;   // s

  double value(double t) const;
};

enum class StirapRole { bell, qit };

// A counterintuitive pulse pair: pulse_b precedes pulse_a by `delay`.
// For the Bell role the run stops at the envelope crossing, where the two
// Rabi frequencies are equal; for the transfer role it runs until both
// envelopes have fallen below 1e-3 of the peak.
struct StirapSchedule {
  GaussianPulse pulse_a;
  GaussianPulse pulse_b;
  StirapRole role = StirapRole::qit;
  double t_start = 0.0;  // s
  double t_stop = 0.0;   // s

  double omega_a(double t) const { return pulse_a.value(t); }
  double omega_b(double t) const { return pulse_b.value(t); }
};

// center_b <= 0 picks the default anchor 25/9 * waist, which reproduces the
// 5 ns / 1.8 ns timing ratio of the reference parameter set.
StirapSchedule stirap_schedule(double peak, double waist, double delay, StirapRole role,
                               double center_b = 0.0);

struct AdiabaticityThresholds {
  double min_pulse_area = 5.0;      // peak * waist
  double min_coupling_area = 10.0;  // g * waist
  double min_coupling_ratio = 2.0;  // g / peak
};

struct AdiabaticityReport {
  double pulse_area = 0.0;      // Omega_m * waist
  double coupling_area = 0.0;   // g * waist (weakest coupling)
  double coupling_ratio = 0.0;  // g / Omega_m (weakest coupling, strongest drive)
  bool pulse_area_ok = false;
  bool coupling_area_ok = false;
  bool coupling_ratio_ok = false;
  bool pass = false;
};

AdiabaticityReport adiabaticity_check(double g_min, double peak, double waist,
                                      const AdiabaticityThresholds& thresholds = {});

}  // namespace nvwgm

#endif  // NVWGM_PULSES_HPP
