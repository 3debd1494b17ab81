#ifndef NVWGM_OPERATORS_HPP
#define NVWGM_OPERATORS_HPP

#include <optional>
#include <vector>

#include "nvwgm/space.hpp"

namespace nvwgm {

// A dense complex matrix acting on the full composite space. Dimensions in
// this package stay at a few hundred, so dense storage is the simple and
// fast choice.
struct Operator {
  SpaceDescriptor space;
  Matrix mat;
  bool hermitian = false;

  double hermiticity_error() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }
};

Operator identity(const SpaceDescriptor& space);

// Cavity ladder operators, identity on all sites: a|n> = sqrt(n)|n-1>.
Operator annihilation(const SpaceDescriptor& space);
Operator creation(const SpaceDescriptor& space);
Operator photon_number(const SpaceDescriptor& space);

// |to><from| on the given site (1-based), identity elsewhere.
Operator spin_transition(const SpaceDescriptor& space, int site, int from_level, int to_level);
Operator site_projector(const SpaceDescriptor& space, int site, int level);

// Projector onto the subspace with exactly n photons.
Operator cavity_projector(const SpaceDescriptor& space, int n);

// Kronecker product of one factor matrix per tensor slot (n_sites site
// factors followed by the cavity factor), in the declared basis ordering.
// An empty optional stands for the identity on that factor.
Operator embed_product(const SpaceDescriptor& space,
                       const std::vector<std::optional<Matrix>>& factors);

Operator apply(const Operator& a, const Operator& b);  // matrix product a*b
StateVector apply(const Operator& op, const StateVector& psi);

// Outcome of measuring the photon number: the collapsed, renormalized state
// (absent when the outcome has zero probability) and the Born probability.
// For sub-unit-norm inputs the probability is the raw squared amplitude, so
// probabilities over all n sum to the input's squared norm.
struct CavityProjection {
  std::optional<StateVector> state;
  double probability = 0.0;
};

CavityProjection project_cavity(const StateVector& psi, int n);

}  // namespace nvwgm

#endif  // NVWGM_OPERATORS_HPP
