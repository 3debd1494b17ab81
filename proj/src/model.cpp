#include "nvwgm/model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace nvwgm {

namespace {

double infinity_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

void require_qubit_cavity_space(const SpaceDescriptor& space) {
  require_valid(space);
  if (space.levels_per_site != 2) {
    throw std::invalid_argument("expected a qubit (2-level) space");
  }
  if (!space.has_cavity()) {
    throw std::invalid_argument("expected a space with a cavity factor (n_max >= 1)");
  }
}

void require_stirap_space(const SpaceDescriptor& space) {
  require_valid(space);
  if (space.levels_per_site != 3 || space.n_sites != 2 || !space.has_cavity()) {
    throw std::invalid_argument("expected a 3-level, 2-site space with a cavity factor");
  }
}

}  // namespace

double RamanCenter::eta() const {
  return effective_raman_coupling(g, rabi, laser_detuning, two_photon_detuning);
}

RamanParams RamanParams::uniform(int n, const RamanCenter& center) {
  if (n < 1) throw std::invalid_argument("need at least one center");
  RamanParams params;
  params.centers.assign(n, center);
  return params;
}

RamanParams RamanParams::uniform_from_eta(int n, double eta, double two_photon_detuning,
                                          double g, double laser_detuning) {
  if (eta <= 0.0) throw std::invalid_argument("eta must be positive");
  const double geometry = 1.0 / (laser_detuning + two_photon_detuning) + 1.0 / laser_detuning;
  RamanCenter center;
  center.g = g;
  center.laser_detuning = laser_detuning;
  center.two_photon_detuning = two_photon_detuning;
  center.rabi = eta / (g * geometry);
  return uniform(n, center);
}

bool RamanParams::validity() const {
  for (const RamanCenter& c : centers) {
    if (!c.validity()) return false;
  }
  return !centers.empty();
}

double RamanParams::max_two_photon_detuning() const {
  double out = 0.0;
  for (const RamanCenter& c : centers) out = std::max(out, std::abs(c.two_photon_detuning));
  return out;
}

AdiabaticityReport adiabaticity_check(const StirapParams& params,
                                      const AdiabaticityThresholds& thresholds) {
  const double g_min = std::min(params.g_a, params.g_b);
  const double peak = std::max(params.pulse_a.peak, params.pulse_b.peak);
  const double waist = std::min(params.pulse_a.waist, params.pulse_b.waist);
  return adiabaticity_check(g_min, peak, waist, thresholds);
}

double effective_raman_coupling(double g, double rabi, double laser_detuning,
                                double two_photon_detuning) {
  if (laser_detuning <= 0.0) throw std::invalid_argument("laser detuning must be positive");
  if (laser_detuning + two_photon_detuning <= 0.0) {
    throw std::invalid_argument("Delta + delta must be positive");
  }
  return g * rabi * (1.0 / (laser_detuning + two_photon_detuning) + 1.0 / laser_detuning);
}

double exchange_coupling(double eta, double two_photon_detuning) {
  if (two_photon_detuning == 0.0) {
    throw std::invalid_argument("exchange coupling undefined at zero two-photon detuning");
  }
  return std::abs(eta * eta / two_photon_detuning);
}

double interaction_volume(const PhysicalConstants& constants) {
  return 3.0 * constants.light_speed * constants.wavelength * constants.wavelength /
         (4.0 * kPi * constants.gamma0);
}

double max_coupling(const PhysicalConstants& constants) {
  return constants.gamma0 * constants.field_ratio *
         std::sqrt(interaction_volume(constants) / constants.mode_volume);
}

double cavity_decay_rate(double wavelength, double quality_factor) {
  if (quality_factor <= 0.0) throw std::invalid_argument("quality factor must be positive");
  const double omega = kTwoPi * 299792458.0 / wavelength;
  return omega / quality_factor;
}

double effective_spontaneous_rate(double gamma0, double rabi, double g, double laser_detuning) {
  if (laser_detuning <= 0.0) throw std::invalid_argument("laser detuning must be positive");
  return gamma0 * rabi * g / (laser_detuning * laser_detuning);
}

Operator raman_interaction_hamiltonian(const RamanParams& params, const SpaceDescriptor& space,
                                       double t) {
  HamiltonianSource source = raman_interaction_source(params, space);
  Matrix h;
  source.eval(t, h);
  return {space, std::move(h), true};
}

Operator effective_exchange_hamiltonian(double gamma, const SpaceDescriptor& space) {
  require_valid(space);
  if (space.levels_per_site != 2) {
    throw std::invalid_argument("exchange Hamiltonian lives on a qubit space");
  }
  if (space.n_sites < 2) {
    throw std::invalid_argument("exchange Hamiltonian needs at least two centers");
  }
  const long dim = space.dim();
  Matrix mat = Matrix::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) {
    BasisLabel label = basis_label(space, i);
    int excited = 0;
    for (int level : label.site_levels) excited += (level == kLevel1);
    mat(i, i) += gamma * excited;
    for (int j = 0; j < space.n_sites; ++j) {
      if (label.site_levels[j] != kLevel0) continue;
      for (int k = 0; k < space.n_sites; ++k) {
        if (j == k || label.site_levels[k] != kLevel1) continue;
        BasisLabel flipped = label;
        flipped.site_levels[j] = kLevel1;
        flipped.site_levels[k] = kLevel0;
        mat(basis_index(space, flipped), i) += gamma;
      }
    }
  }
  return {space, std::move(mat), true};
}

Operator stirap_hamiltonian_at(const SpaceDescriptor& space, double g_a, double g_b,
                               double omega_a, double omega_b) {
  require_stirap_space(space);
  const Matrix adag = creation(space).mat;
  const double g[2] = {g_a, g_b};
  const double omega[2] = {omega_a, omega_b};
  Matrix mat = Matrix::Zero(space.dim(), space.dim());
  for (int site = 1; site <= 2; ++site) {
    const Matrix swap_0e = adag * spin_transition(space, site, kLevelE, kLevel0).mat;
    const Matrix drive_e1 = spin_transition(space, site, kLevel1, kLevelE).mat;
    mat += g[site - 1] * (swap_0e + swap_0e.adjoint());
    mat += omega[site - 1] * (drive_e1 + drive_e1.adjoint());
  }
  return {space, std::move(mat), true};
}

Operator stirap_hamiltonian(const StirapParams& params, const SpaceDescriptor& space, double t) {
  return stirap_hamiltonian_at(space, params.g_a, params.g_b, params.pulse_a.value(t),
                               params.pulse_b.value(t));
}

Operator stirap_decay_hamiltonian(const StirapParams& params, const SpaceDescriptor& space,
                                  double t) {
  if (params.kappa < 0.0 || params.gamma_e < 0.0) {
    throw std::invalid_argument("decay rates must be non-negative");
  }
  Operator h = stirap_hamiltonian(params, space, t);
  if (params.kappa > 0.0) {
    h.mat -= kImag * (0.5 * params.kappa) * photon_number(space).mat;
  }
  if (params.gamma_e > 0.0) {
    for (int site = 1; site <= 2; ++site) {
      h.mat -= kImag * (0.5 * params.gamma_e) * site_projector(space, site, kLevelE).mat;
    }
  }
  h.hermitian = !params.has_decay();
  return h;
}

std::vector<Jump> spin_decay_jumps(double rate, const SpaceDescriptor& space) {
  require_valid(space);
  if (rate < 0.0) throw std::invalid_argument("negative decay rate");
  if (space.levels_per_site != 2) {
    throw std::invalid_argument("spin decay jumps live on a qubit space");
  }
  std::vector<Jump> jumps;
  jumps.reserve(space.n_sites);
  for (int site = 1; site <= space.n_sites; ++site) {
    jumps.push_back({rate, spin_transition(space, site, kLevel1, kLevel0)});
  }
  return jumps;
}

HamiltonianSource HamiltonianSource::from_operator(const Operator& op, double frequency_scale) {
  HamiltonianSource source;
  source.space = op.space;
  source.constant = true;
  source.hermitian = op.hermitian;
  source.frequency_scale = (frequency_scale > 0.0) ? frequency_scale : infinity_norm(op.mat);
  source.eval = [mat = op.mat](double, Matrix& h) { h = mat; };
  return source;
}

HamiltonianSource raman_interaction_source(const RamanParams& params,
                                           const SpaceDescriptor& space) {
  require_qubit_cavity_space(space);
  if (params.size() != space.n_sites) {
    throw std::invalid_argument("need one Raman parameter set per center");
  }
  const Matrix adag = creation(space).mat;
  struct Term {
    double eta;
    double delta;
    Matrix raise;  // a^dag sigma_j^-
    Matrix lower;  // a sigma_j^+
  };
  auto terms = std::make_shared<std::vector<Term>>();
  double norm_bound = 0.0;
  double max_delta = 0.0;
  for (int site = 1; site <= space.n_sites; ++site) {
    const RamanCenter& c = params.centers[site - 1];
    Term term;
    term.eta = c.eta();
    term.delta = c.two_photon_detuning;
    term.raise = adag * spin_transition(space, site, kLevel1, kLevel0).mat;
    term.lower = term.raise.adjoint();
    norm_bound += term.eta * (infinity_norm(term.raise) + infinity_norm(term.lower));
    max_delta = std::max(max_delta, std::abs(term.delta));
    terms->push_back(std::move(term));
  }

  HamiltonianSource source;
  source.space = space;
  source.constant = false;
  source.hermitian = true;
  source.frequency_scale = norm_bound + max_delta;
  const long dim = space.dim();
  source.eval = [terms, dim](double t, Matrix& h) {
    h.resize(dim, dim);
    h.setZero();
    for (const Term& term : *terms) {
      const Complex phase = std::exp(-kImag * (term.delta * t));
      h += term.eta * (phase * term.raise + std::conj(phase) * term.lower);
    }
  };
  return source;
}

namespace {

HamiltonianSource stirap_source_impl(const StirapParams& params, const SpaceDescriptor& space,
                                     bool with_decay) {
  require_stirap_space(space);
  if (params.kappa < 0.0 || params.gamma_e < 0.0) {
    throw std::invalid_argument("decay rates must be non-negative");
  }
  Matrix fixed = stirap_hamiltonian_at(space, params.g_a, params.g_b, 0.0, 0.0).mat;
  bool hermitian = true;
  if (with_decay) {
    if (params.kappa > 0.0) {
      fixed -= kImag * (0.5 * params.kappa) * photon_number(space).mat;
      hermitian = false;
    }
    if (params.gamma_e > 0.0) {
      for (int site = 1; site <= 2; ++site) {
        fixed -= kImag * (0.5 * params.gamma_e) * site_projector(space, site, kLevelE).mat;
      }
      hermitian = false;
    }
  }
  Matrix drive_a = stirap_hamiltonian_at(space, 0.0, 0.0, 1.0, 0.0).mat;
  Matrix drive_b = stirap_hamiltonian_at(space, 0.0, 0.0, 0.0, 1.0).mat;

  HamiltonianSource source;
  source.space = space;
  source.constant = false;
  source.hermitian = hermitian;
  source.frequency_scale = infinity_norm(fixed) +
                           params.pulse_a.peak * infinity_norm(drive_a) +
                           params.pulse_b.peak * infinity_norm(drive_b) +
                           1.0 / std::min(params.pulse_a.waist, params.pulse_b.waist);
  source.eval = [fixed = std::move(fixed), drive_a = std::move(drive_a),
                 drive_b = std::move(drive_b), pa = params.pulse_a,
                 pb = params.pulse_b](double t, Matrix& h) {
    h = fixed;
    h += pa.value(t) * drive_a;
    h += pb.value(t) * drive_b;
  };
  return source;
}

}  // namespace

HamiltonianSource stirap_source(const StirapParams& params, const SpaceDescriptor& space) {
  return stirap_source_impl(params, space, false);
}

HamiltonianSource stirap_decay_source(const StirapParams& params, const SpaceDescriptor& space) {
  return stirap_source_impl(params, space, true);
}

}  // namespace nvwgm
