#include "nvwgm/pulses.hpp"

#include <cmath>

namespace nvwgm {

double GaussianPulse::value(double t) const {
  const double u = (t - center) / waist;
  return peak * std::exp(-u * u);
}

StirapSchedule stirap_schedule(double peak, double waist, double delay, StirapRole role,
                               double center_b) {
  if (peak < 0.0) throw std::invalid_argument("negative pulse peak");
  if (waist <= 0.0) throw std::invalid_argument("pulse waist must be positive");
  if (delay <= 0.0) throw std::invalid_argument("pulse delay must be positive");
  if (center_b <= 0.0) center_b = 25.0 / 9.0 * waist;

  StirapSchedule schedule;
  schedule.role = role;
  schedule.pulse_b = {peak, center_b, waist};
  schedule.pulse_a = {peak, center_b + delay, waist};
  schedule.t_start = 0.0;
  if (role == StirapRole::bell) {
    // Envelope crossing: by symmetry both Gaussians are equal midway
    // between the centers.
    schedule.t_stop = 0.5 * (schedule.pulse_a.center + schedule.pulse_b.center);
  } else {
    // Both envelopes below 1e-3 of the peak once past the late pulse by
    // waist * sqrt(ln 1000).
    schedule.t_stop = schedule.pulse_a.center + waist * std::sqrt(std::log(1e3));
  }
  return schedule;
}

AdiabaticityReport adiabaticity_check(double g_min, double peak, double waist,
                                      const AdiabaticityThresholds& thresholds) {
  AdiabaticityReport report;
  report.pulse_area = peak * waist;
  report.coupling_area = g_min * waist;
  report.coupling_ratio = (peak > 0.0) ? g_min / peak : 0.0;
  report.pulse_area_ok = report.pulse_area >= thresholds.min_pulse_area;
  report.coupling_area_ok = report.coupling_area >= thresholds.min_coupling_area;
  report.coupling_ratio_ok = report.coupling_ratio >= thresholds.min_coupling_ratio;
  report.pass = report.pulse_area_ok && report.coupling_area_ok && report.coupling_ratio_ok;
  return report;
}

}  // namespace nvwgm
