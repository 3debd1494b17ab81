#include "nvwgm/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "nvwgm/kernels.hpp"

namespace nvwgm {

namespace {

double infinity_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

void require_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty time grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw std::invalid_argument("time grid must be strictly increasing");
    }
  }
}

void require_config(const IntegratorConfig& config) {
  if (config.step < 0.0) throw std::invalid_argument("integrator step must be positive");
  if (!(config.tolerance > 0.0)) {
    throw std::invalid_argument("integrator tolerance must be positive");
  }
  if (config.max_steps < 1) throw std::invalid_argument("step budget must be positive");
}

template <typename Y>
struct RkScratch {
  Y k1, k2, k3, k4, k5, k6, k7, tmp, err;
  void resize_like(const Y& y) {
    k1.resizeLike(y);
    k2.resizeLike(y);
    k3.resizeLike(y);
    k4.resizeLike(y);
    k5.resizeLike(y);
    k6.resizeLike(y);
    k7.resizeLike(y);
    tmp.resizeLike(y);
    err.resizeLike(y);
  }
};

template <typename Y, typename RhsFn>
void rk4_step(RhsFn& rhs, Y& y, double t, double dt, RkScratch<Y>& s) {
  rhs(t, y, s.k1);
  s.tmp = y + (0.5 * dt) * s.k1;
  rhs(t + 0.5 * dt, s.tmp, s.k2);
  s.tmp = y + (0.5 * dt) * s.k2;
  rhs(t + 0.5 * dt, s.tmp, s.k3);
  s.tmp = y + dt * s.k3;
  rhs(t + dt, s.tmp, s.k4);
  y += (dt / 6.0) * (s.k1 + 2.0 * s.k2 + 2.0 * s.k3 + s.k4);
}

// Dormand-Prince 5(4) embedded pair. Returns the relative error estimate of
// the attempted step; the caller decides acceptance.
template <typename Y, typename RhsFn>
double rk45_attempt(RhsFn& rhs, const Y& y, Y& y_next, double t, double dt, RkScratch<Y>& s) {
  rhs(t, y, s.k1);
  s.tmp = y + dt * (1.0 / 5.0) * s.k1;
  rhs(t + dt / 5.0, s.tmp, s.k2);
  s.tmp = y + dt * ((3.0 / 40.0) * s.k1 + (9.0 / 40.0) * s.k2);
  rhs(t + 3.0 * dt / 10.0, s.tmp, s.k3);
  s.tmp = y + dt * ((44.0 / 45.0) * s.k1 - (56.0 / 15.0) * s.k2 + (32.0 / 9.0) * s.k3);
  rhs(t + 4.0 * dt / 5.0, s.tmp, s.k4);
  s.tmp = y + dt * ((19372.0 / 6561.0) * s.k1 - (25360.0 / 2187.0) * s.k2 +
                    (64448.0 / 6561.0) * s.k3 - (212.0 / 729.0) * s.k4);
  rhs(t + 8.0 * dt / 9.0, s.tmp, s.k5);
  s.tmp = y + dt * ((9017.0 / 3168.0) * s.k1 - (355.0 / 33.0) * s.k2 +
                    (46732.0 / 5247.0) * s.k3 + (49.0 / 176.0) * s.k4 -
                    (5103.0 / 18656.0) * s.k5);
  rhs(t + dt, s.tmp, s.k6);
  y_next = y + dt * ((35.0 / 384.0) * s.k1 + (500.0 / 1113.0) * s.k3 + (125.0 / 192.0) * s.k4 -
                     (2187.0 / 6784.0) * s.k5 + (11.0 / 84.0) * s.k6);
  rhs(t + dt, y_next, s.k7);
  s.err = dt * ((71.0 / 57600.0) * s.k1 - (71.0 / 16695.0) * s.k3 + (71.0 / 1920.0) * s.k4 -
                (17253.0 / 339200.0) * s.k5 + (22.0 / 525.0) * s.k6 - (1.0 / 40.0) * s.k7);
  const double scale = std::max(y.cwiseAbs().maxCoeff(), 1e-30);
  return s.err.cwiseAbs().maxCoeff() / scale;
}

template <typename Y, typename RhsFn, typename PostFn>
void integrate_interval(const IntegratorConfig& config, RhsFn& rhs, PostFn& post, Y& y,
                        double t0, double t1, double dt_hint, long& steps_used,
                        RkScratch<Y>& scratch, const Trajectory& partial) {
  const double span = t1 - t0;
  if (config.method == Method::rk4) {
    const long m = std::max<long>(1, static_cast<long>(std::ceil(span / dt_hint - 1e-12)));
    if (steps_used + m > config.max_steps) {
      throw IntegrationError("step budget exhausted", partial);
    }
    const double dt = span / static_cast<double>(m);
    for (long i = 0; i < m; ++i) {
      rk4_step(rhs, y, t0 + dt * static_cast<double>(i), dt, scratch);
      post(y);
    }
    steps_used += m;
    return;
  }
  double t = t0;
  double dt = std::min(dt_hint, span);
  Y y_next;
  y_next.resizeLike(y);
  while (t < t1 - 1e-15 * std::max(std::abs(t1), 1.0)) {
    dt = std::min(dt, t1 - t);
    if (++steps_used > config.max_steps) {
      throw IntegrationError("step budget exhausted", partial);
    }
    const double err = rk45_attempt(rhs, y, y_next, t, dt, scratch);
    if (err <= config.tolerance) {
      y.swap(y_next);
      post(y);
      t += dt;
    }
    const double grow =
        (err > 0.0) ? 0.9 * std::pow(config.tolerance / err, 0.2) : 5.0;
    dt *= std::clamp(grow, 0.2, 5.0);
    if (!(dt > 1e-18)) {
      throw IntegrationError("adaptive step underflow", partial);
    }
  }
}

template <typename Y>
bool all_finite(const Y& y) {
  return y.allFinite();
}

}  // namespace

const std::vector<double>& Trajectory::reduction(const std::string& name) const {
  for (const auto& [key, values] : reductions) {
    if (key == name) return values;
  }
  throw std::invalid_argument("no reduction named '" + name + "'");
}

std::vector<double> uniform_grid(double t_begin, double t_end, int intervals) {
  if (intervals < 1) throw std::invalid_argument("grid needs at least one interval");
  if (!(t_end > t_begin)) throw std::invalid_argument("grid must span forward in time");
  std::vector<double> grid(intervals + 1);
  const double span = t_end - t_begin;
  for (int k = 0; k <= intervals; ++k) {
    grid[k] = t_begin + span * (static_cast<double>(k) / static_cast<double>(intervals));
  }
  return grid;
}

Trajectory evolve_state(const HamiltonianSource& h, const StateVector& psi0,
                        const std::vector<double>& grid, const IntegratorConfig& config,
                        const std::vector<StateReduction>& reductions) {
  require_grid(grid);
  require_config(config);
  if (psi0.space != h.space || psi0.amps.size() != h.space.dim()) {
    throw std::invalid_argument("initial state does not match the Hamiltonian space");
  }

  const long dim = h.space.dim();
  Matrix hmat(dim, dim);
  h.eval(grid.front(), hmat);

  double scale = h.frequency_scale;
  if (scale <= 0.0) {
    Matrix probe(dim, dim);
    const int samples = std::min<std::size_t>(grid.size(), 17);
    for (int i = 0; i < samples; ++i) {
      const double t = grid[i * (grid.size() - 1) / std::max(1, samples - 1)];
      h.eval(t, probe);
      scale = std::max(scale, infinity_norm(probe));
    }
  }
  const double dt_hint = (config.step > 0.0) ? config.step
                         : (scale > 0.0)     ? 1.0 / (50.0 * scale)
                                             : (grid.back() - grid.front());

  const bool keep = config.force_snapshots || dim <= config.state_snapshot_max_dim;

  Trajectory traj;
  auto record = [&](double t, const Vector& y) {
    traj.times.push_back(t);
    traj.norms.push_back(y.norm());
    for (std::size_t r = 0; r < reductions.size(); ++r) {
      traj.reductions[r].second.push_back(reductions[r].eval(t, y));
    }
    if (keep) traj.states.push_back(y);
  };
  for (const StateReduction& r : reductions) traj.reductions.push_back({r.name, {}});

  Vector y = psi0.amps;
  record(grid.front(), y);

  const bool constant = h.constant;
  auto rhs = [&](double t, const Vector& yy, Vector& dydt) {
    if (!constant) h.eval(t, hmat);
    kernels::matvec(hmat, yy, dydt);
    dydt *= Complex(0.0, -1.0);
  };
  auto post = [](const Vector&) {};

  RkScratch<Vector> scratch;
  scratch.resize_like(y);
  long steps_used = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    integrate_interval(config, rhs, post, y, grid[k - 1], grid[k], dt_hint, steps_used, scratch,
                       traj);
    if (!all_finite(y)) {
      throw IntegrationError("state became non-finite at t=" + std::to_string(grid[k]), traj);
    }
    record(grid[k], y);
  }
  return traj;
}

Trajectory evolve_lindblad(const Operator& h, const std::vector<Jump>& jumps,
                           const DensityMatrix& rho0, const std::vector<double>& grid,
                           const IntegratorConfig& config,
                           const std::vector<DensityReduction>& reductions) {
  require_grid(grid);
  require_config(config);
  if (rho0.space != h.space || rho0.mat.rows() != h.space.dim()) {
    throw std::invalid_argument("initial density matrix does not match the Hamiltonian space");
  }

  const long dim = h.space.dim();
  std::vector<kernels::JumpTerm> terms;
  terms.reserve(jumps.size());
  double decay_scale = 0.0;
  for (const Jump& jump : jumps) {
    if (jump.op.space != h.space) {
      throw std::invalid_argument("jump operator on a different space");
    }
    terms.push_back(kernels::make_jump_term(jump.rate, jump.op.mat));
    decay_scale += 2.0 * jump.rate * infinity_norm(terms.back().dag_op);
  }

  const double scale = infinity_norm(h.mat) + decay_scale;
  const double dt_hint = (config.step > 0.0) ? config.step
                         : (scale > 0.0)     ? 1.0 / (50.0 * scale)
                                             : (grid.back() - grid.front());

  const bool keep = config.force_snapshots || dim <= config.density_snapshot_max_dim;

  Trajectory traj;
  auto record = [&](double t, const Matrix& y) {
    traj.times.push_back(t);
    traj.norms.push_back(y.trace().real());
    for (std::size_t r = 0; r < reductions.size(); ++r) {
      traj.reductions[r].second.push_back(reductions[r].eval(t, y));
    }
    if (keep) traj.densities.push_back(y);
  };
  for (const DensityReduction& r : reductions) traj.reductions.push_back({r.name, {}});

  Matrix y = rho0.mat;
  record(grid.front(), y);

  kernels::LindbladWorkspace lws;
  auto rhs = [&](double, const Matrix& yy, Matrix& dydt) {
    kernels::lindblad_rhs(h.mat, terms, yy, dydt, lws);
  };
  Matrix adj(dim, dim);
  auto post = [&](Matrix& yy) {
    adj = yy.adjoint();
    yy = 0.5 * (yy + adj);
  };

  RkScratch<Matrix> scratch;
  scratch.resize_like(y);
  long steps_used = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    integrate_interval(config, rhs, post, y, grid[k - 1], grid[k], dt_hint, steps_used, scratch,
                       traj);
    if (!all_finite(y)) {
      throw IntegrationError("density matrix became non-finite at t=" + std::to_string(grid[k]),
                             traj);
    }
    record(grid[k], y);
  }
  return traj;
}

double fidelity(const StateVector& psi, const StateVector& target) {
  if (psi.space != target.space) throw std::invalid_argument("fidelity dimension mismatch");
  return std::norm(target.amps.dot(psi.amps));
}

double fidelity(const DensityMatrix& rho, const StateVector& target) {
  if (rho.space != target.space) throw std::invalid_argument("fidelity dimension mismatch");
  return target.amps.dot(rho.mat * target.amps).real();
}

std::vector<double> population(const Trajectory& trajectory, const SpaceDescriptor& space,
                               const BasisLabel& label) {
  const long idx = basis_index(space, label);
  std::vector<double> out;
  if (!trajectory.states.empty()) {
    out.reserve(trajectory.states.size());
    for (const Vector& psi : trajectory.states) out.push_back(std::norm(psi[idx]));
  } else if (!trajectory.densities.empty()) {
    out.reserve(trajectory.densities.size());
    for (const Matrix& rho : trajectory.densities) out.push_back(rho(idx, idx).real());
  } else {
    throw std::invalid_argument("trajectory holds no snapshots");
  }
  return out;
}

StateReduction population_of(const SpaceDescriptor& space, const BasisLabel& label,
                             std::string name) {
  const long idx = basis_index(space, label);
  if (name.empty()) name = "pop_" + format_label(space, label);
  return {std::move(name), [idx](double, const Vector& y) { return std::norm(y[idx]); }};
}

DensityReduction density_population_of(const SpaceDescriptor& space, const BasisLabel& label,
                                       std::string name) {
  const long idx = basis_index(space, label);
  if (name.empty()) name = "pop_" + format_label(space, label);
  return {std::move(name), [idx](double, const Matrix& y) { return y(idx, idx).real(); }};
}

}  // namespace nvwgm
