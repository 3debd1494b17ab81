#ifndef NVWGM_SPACE_HPP
#define NVWGM_SPACE_HPP

#include <string>
#include <vector>

#include "nvwgm/types.hpp"

namespace nvwgm {

// Level codes within one site.
inline constexpr int kLevel0 = 0;  // |0>, m_s = 0 ground sublevel
inline constexpr int kLevel1 = 1;  // |1>, m_s = -1 ground sublevel
inline constexpr int kLevelE = 2;  // |e>, optical excited state (3-level sites only)

// Shape of the composite Hilbert space: n_sites sites with levels_per_site
// levels each, followed by one cavity mode truncated at n_max photons.
// Basis ordering is site 1 (x) ... (x) site N (x) cavity, lexicographic
// within each factor, so site 1 is the most significant index digit and the
// photon number the least significant. n_max = 0 gives a trivial (vacuum
// only) cavity factor, i.e. an effectively cavity-free space.
struct SpaceDescriptor {
  int n_sites = 1;
  int levels_per_site = 2;  // 2 (qubit) or 3 (lambda system)
  int n_max = 0;

  static SpaceDescriptor qubits(int n, int n_max = 0) { return {n, 2, n_max}; }
  static SpaceDescriptor lambda_sites(int n, int n_max) { return {n, 3, n_max}; }

  bool valid() const {
    return n_sites >= 1 && (levels_per_site == 2 || levels_per_site == 3) && n_max >= 0;
  }
  int cavity_dim() const { return n_max + 1; }
  long dim() const {
    long d = cavity_dim();
    for (int s = 0; s < n_sites; ++s) d *= levels_per_site;
    return d;
  }
  bool has_cavity() const { return n_max >= 1; }

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

// One basis state: the level of every site plus the photon number.
struct BasisLabel {
  std::vector<int> site_levels;
  int photons = 0;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

void require_valid(const SpaceDescriptor& space);

// Bijection between basis labels and linear indices in the declared ordering.
long basis_index(const SpaceDescriptor& space, const BasisLabel& label);
BasisLabel basis_label(const SpaceDescriptor& space, long index);

// Compact text form, e.g. "10_c0" for |1 0> |0_c>, "e0_c1", or "0001" when
// the cavity factor is trivial. Level 2 prints as 'e'.
std::string format_label(const SpaceDescriptor& space, const BasisLabel& label);

struct StateVector {
  SpaceDescriptor space;
  Vector amps;

  double norm() const { return amps.norm(); }
  double squared_norm() const { return amps.squaredNorm(); }
  void normalize() { amps /= amps.norm(); }
  // norm must sit in (0, 1 + 1e-9]; sub-unit norms arise under
  // non-Hermitian evolution where lost norm is leakage probability.
  bool norm_ok() const {
    double n = norm();
    return n > 0.0 && n <= 1.0 + 1e-9;
  }
};

StateVector basis_state(const SpaceDescriptor& space, const BasisLabel& label);
StateVector zero_state(const SpaceDescriptor& space);

struct DensityMatrix {
  SpaceDescriptor space;
  Matrix mat;

  double trace_real() const { return mat.trace().real(); }
  double hermiticity_error() const;  // max |rho - rho^dag|
  double min_eigenvalue() const;

  static DensityMatrix pure(const StateVector& psi);
};

double overlap_probability(const StateVector& a, const StateVector& b);

}  // namespace nvwgm

#endif  // NVWGM_SPACE_HPP
