#ifndef NVWGM_DYNAMICS_HPP
#define NVWGM_DYNAMICS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nvwgm/model.hpp"

namespace nvwgm {

enum class Method { rk4, rk45 };

struct IntegratorConfig {
  Method method = Method::rk4;
  // Fixed step (s). 0 selects 1 / (50 * frequency scale) automatically.
  double step = 0.0;
  double tolerance = 1e-10;  // rk45 relative error per step
  long max_steps = 50'000'000;
  // Snapshots are kept up to these dimensions; larger runs record
  // reductions only. Density matrices cut off earlier since a snapshot
  // costs dim^2.
  long state_snapshot_max_dim = 256;
  long density_snapshot_max_dim = 64;
  bool force_snapshots = false;
};

// Named per-time scalar extracted during integration. The time is passed
// along so reductions may compare against moving targets.
struct StateReduction {
  std::string name;
  std::function<double(double t, const Vector&)> eval;
};
struct DensityReduction {
  std::string name;
  std::function<double(double t, const Matrix&)> eval;
};

struct Trajectory {
  std::vector<double> times;  // strictly increasing, seconds
  // Norm of the state (or real trace of the density matrix) per time.
  std::vector<double> norms;
  std::vector<std::pair<std::string, std::vector<double>>> reductions;
  std::vector<Vector> states;      // full snapshots, possibly empty
  std::vector<Matrix> densities;   // full snapshots, possibly empty

  const std::vector<double>& reduction(const std::string& name) const;
  bool has_snapshots() const { return !states.empty() || !densities.empty(); }
  void drop_snapshots() {
    states.clear();
    densities.clear();
  }
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, Trajectory partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

std::vector<double> uniform_grid(double t_begin, double t_end, int intervals);

// Solves i dpsi/dt = H(t) psi on the given output grid. Hermitian sources
// keep the norm; non-Hermitian ones lose norm monotonically, and the state
// is deliberately left un-renormalized (lost norm = leakage probability).
Trajectory evolve_state(const HamiltonianSource& h, const StateVector& psi0,
                        const std::vector<double>& grid, const IntegratorConfig& config = {},
                        const std::vector<StateReduction>& reductions = {});

// Solves drho/dt = -i[H, rho] + sum_j rate_j (2 L_j rho L_j^dag
//   - L_j^dag L_j rho - rho L_j^dag L_j), symmetrizing rho every step.
Trajectory evolve_lindblad(const Operator& h, const std::vector<Jump>& jumps,
                           const DensityMatrix& rho0, const std::vector<double>& grid,
                           const IntegratorConfig& config = {},
                           const std::vector<DensityReduction>& reductions = {});

double fidelity(const StateVector& psi, const StateVector& target);
double fidelity(const DensityMatrix& rho, const StateVector& target);

// Population time series of one basis state, computed from snapshots.
std::vector<double> population(const Trajectory& trajectory, const SpaceDescriptor& space,
                               const BasisLabel& label);

// Reduction factories.
StateReduction population_of(const SpaceDescriptor& space, const BasisLabel& label,
                             std::string name = {});
DensityReduction density_population_of(const SpaceDescriptor& space, const BasisLabel& label,
                                       std::string name = {});

}  // namespace nvwgm

#endif  // NVWGM_DYNAMICS_HPP
