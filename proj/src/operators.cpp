#include "nvwgm/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace nvwgm {

namespace {

void require_site(const SpaceDescriptor& space, int site) {
  if (site < 1 || site > space.n_sites) {
    throw std::invalid_argument("site index out of range: " + std::to_string(site));
  }
}

void require_level(const SpaceDescriptor& space, int level) {
  if (level < 0 || level >= space.levels_per_site) {
    throw std::invalid_argument("level out of range: " + std::to_string(level));
  }
}

}  // namespace

Operator identity(const SpaceDescriptor& space) {
  require_valid(space);
  return {space, Matrix::Identity(space.dim(), space.dim()), true};
}

Operator annihilation(const SpaceDescriptor& space) {
  require_valid(space);
  const long dim = space.dim();
  Matrix mat = Matrix::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) {
    BasisLabel label = basis_label(space, i);
    if (label.photons == 0) continue;
    const double amp = std::sqrt(static_cast<double>(label.photons));
    label.photons -= 1;
    mat(basis_index(space, label), i) = amp;
  }
  return {space, std::move(mat), false};
}

Operator creation(const SpaceDescriptor& space) {
  Operator a = annihilation(space);
  return {space, a.mat.adjoint(), false};
}

Operator photon_number(const SpaceDescriptor& space) {
  require_valid(space);
  const long dim = space.dim();
  Matrix mat = Matrix::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) {
    mat(i, i) = static_cast<double>(basis_label(space, i).photons);
  }
  return {space, std::move(mat), true};
}

Operator spin_transition(const SpaceDescriptor& space, int site, int from_level, int to_level) {
  require_valid(space);
  require_site(space, site);
  require_level(space, from_level);
  require_level(space, to_level);
  const long dim = space.dim();
  Matrix mat = Matrix::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) {
    BasisLabel label = basis_label(space, i);
    if (label.site_levels[site - 1] != from_level) continue;
    label.site_levels[site - 1] = to_level;
    mat(basis_index(space, label), i) = 1.0;
  }
  return {space, std::move(mat), from_level == to_level};
}

Operator site_projector(const SpaceDescriptor& space, int site, int level) {
  return spin_transition(space, site, level, level);
}

Operator cavity_projector(const SpaceDescriptor& space, int n) {
  require_valid(space);
  if (n < 0 || n > space.n_max) {
    throw std::invalid_argument("photon number exceeds truncation: " + std::to_string(n));
  }
  const long dim = space.dim();
  Matrix mat = Matrix::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) {
    if (basis_label(space, i).photons == n) mat(i, i) = 1.0;
  }
  return {space, std::move(mat), true};
}

Operator embed_product(const SpaceDescriptor& space,
                       const std::vector<std::optional<Matrix>>& factors) {
  require_valid(space);
  if (static_cast<int>(factors.size()) != space.n_sites + 1) {
    throw std::invalid_argument("embed_product needs one factor per site plus the cavity");
  }
  Matrix result = Matrix::Ones(1, 1);
  for (int f = 0; f <= space.n_sites; ++f) {
    const long fdim = (f < space.n_sites) ? space.levels_per_site : space.cavity_dim();
    Matrix factor;
    if (factors[f].has_value()) {
      factor = *factors[f];
      if (factor.rows() != fdim || factor.cols() != fdim) {
        throw std::invalid_argument("factor " + std::to_string(f) + " has dimension " +
                                    std::to_string(factor.rows()) + ", expected " +
                                    std::to_string(fdim));
      }
    } else {
      factor = Matrix::Identity(fdim, fdim);
    }
    Matrix next(result.rows() * fdim, result.cols() * fdim);
    for (long i = 0; i < result.rows(); ++i) {
      for (long j = 0; j < result.cols(); ++j) {
        next.block(i * fdim, j * fdim, fdim, fdim) = result(i, j) * factor;
      }
    }
    result = std::move(next);
  }
  return {space, std::move(result), false};
}

Operator apply(const Operator& a, const Operator& b) {
  if (a.space != b.space) throw std::invalid_argument("operator product on different spaces");
  return {a.space, a.mat * b.mat, false};
}

StateVector apply(const Operator& op, const StateVector& psi) {
  if (op.space != psi.space) throw std::invalid_argument("operator applied to foreign state");
  return {psi.space, op.mat * psi.amps};
}

CavityProjection project_cavity(const StateVector& psi, int n) {
  require_valid(psi.space);
  if (n < 0 || n > psi.space.n_max) {
    throw std::invalid_argument("projection photon number exceeds truncation");
  }
  const long dim = psi.space.dim();
  Vector collapsed = Vector::Zero(dim);
  double prob = 0.0;
  for (long i = 0; i < dim; ++i) {
    if (basis_label(psi.space, i).photons != n) continue;
    collapsed[i] = psi.amps[i];
    prob += std::norm(psi.amps[i]);
  }
  if (prob < 1e-300) return {std::nullopt, 0.0};
  collapsed /= std::sqrt(prob);
  return {StateVector{psi.space, std::move(collapsed)}, prob};
}

}  // namespace nvwgm
