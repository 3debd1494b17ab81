#include "nvwgm/space.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace nvwgm {

void require_valid(const SpaceDescriptor& space) {
  if (!space.valid()) {
    throw std::invalid_argument("invalid space descriptor: n_sites=" +
                                std::to_string(space.n_sites) +
                                " levels_per_site=" + std::to_string(space.levels_per_site) +
                                " n_max=" + std::to_string(space.n_max));
  }
}

long basis_index(const SpaceDescriptor& space, const BasisLabel& label) {
  require_valid(space);
  if (static_cast<int>(label.site_levels.size()) != space.n_sites) {
    throw std::invalid_argument("basis label has wrong number of sites");
  }
  long idx = 0;
  for (int level : label.site_levels) {
    if (level < 0 || level >= space.levels_per_site) {
      throw std::invalid_argument("site level out of range: " + std::to_string(level));
    }
    idx = idx * space.levels_per_site + level;
  }
  if (label.photons < 0 || label.photons > space.n_max) {
    throw std::invalid_argument("photon number out of range: " + std::to_string(label.photons));
  }
  return idx * space.cavity_dim() + label.photons;
}

BasisLabel basis_label(const SpaceDescriptor& space, long index) {
  require_valid(space);
  if (index < 0 || index >= space.dim()) {
    throw std::invalid_argument("basis index out of range: " + std::to_string(index));
  }
  BasisLabel label;
  label.photons = static_cast<int>(index % space.cavity_dim());
  long rest = index / space.cavity_dim();
  label.site_levels.assign(space.n_sites, 0);
  for (int s = space.n_sites - 1; s >= 0; --s) {
    label.site_levels[s] = static_cast<int>(rest % space.levels_per_site);
    rest /= space.levels_per_site;
  }
  return label;
}

std::string format_label(const SpaceDescriptor& space, const BasisLabel& label) {
  std::string out;
  for (int level : label.site_levels) out += (level == kLevelE) ? 'e' : char('0' + level);
  if (space.has_cavity()) {
    out += "_c";
    out += std::to_string(label.photons);
  }
  return out;
}

StateVector basis_state(const SpaceDescriptor& space, const BasisLabel& label) {
  StateVector psi = zero_state(space);
  psi.amps[basis_index(space, label)] = 1.0;
  return psi;
}

StateVector zero_state(const SpaceDescriptor& space) {
  require_valid(space);
  return {space, Vector::Zero(space.dim())};
}

double DensityMatrix::hermiticity_error() const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (mat + mat.adjoint()));
  return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return {psi.space, psi.amps * psi.amps.adjoint()};
}

double overlap_probability(const StateVector& a, const StateVector& b) {
  if (a.space != b.space) throw std::invalid_argument("overlap of states on different spaces");
  return std::norm(a.amps.dot(b.amps));
}

}  // namespace nvwgm
