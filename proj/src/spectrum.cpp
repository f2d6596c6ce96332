#include "qcaembed/spectrum.hpp"

#include "qcaembed/lanczos.hpp"

#include "json.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcaembed {

SpinSystem make_spin_system(IsingModel problem, double delta) {
  SpinSystem sys;
  sys.delta.assign(problem.n, delta);
  sys.problem = std::move(problem);
  return sys;
}

std::string_view to_string(DriverCoupling coupling) {
  return coupling == DriverCoupling::outermost ? "outermost" : "whole_group";
}

DriverCoupling parse_driver_coupling(std::string_view text) {
  if (text == "outermost") return DriverCoupling::outermost;
  if (text == "whole_group" || text == "whole-group") return DriverCoupling::whole_group;
  throw std::invalid_argument("driver coupling must be 'outermost' or 'whole_group'");
}

void WireModel::validate() const {
  if (n_left < 1 || n_right < 1) throw std::invalid_argument("wire group sizes must be >= 1");
  if (!(std::abs(p_d1) <= 1.0 && std::abs(p_d2) <= 1.0)) {
    throw std::invalid_argument("driver polarisations must lie in [-1, 1]");
  }
}

SpinSystem build_wire_model(const WireModel& wire) {
  wire.validate();
  const int n = wire.n_left + wire.n_right;
  IsingModel model;
  model.n = n;
  model.h.assign(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    const double j = i + 1 == wire.n_left ? wire.j12 : wire.jc;
    model.couplings.push_back({i, i + 1, j});
  }
  // A +1 driver FM-coupled to a cell contributes h = +1 (see circuit_ising).
  if (wire.driver == DriverCoupling::outermost) {
    model.h[0] = wire.p_d1;
    model.h[n - 1] = wire.p_d2;
  } else {
    for (int i = 0; i < n; ++i) model.h[i] = i < wire.n_left ? wire.p_d1 : wire.p_d2;
  }
  return make_spin_system(std::move(model));
}

namespace {

std::vector<double> problem_diagonal(const SpinSystem& sys) {
  const std::uint64_t dim = std::uint64_t{1} << sys.n();
  std::vector<double> diag(dim);
  simd::diagonal_energies(sys.problem.h, sys.problem.couplings, 0, diag);
  return diag;
}

void check_size(const SpinSystem& sys, int cap) {
  if (sys.n() < 1) throw std::invalid_argument("spin system is empty");
  if (sys.n() > cap) {
    throw std::invalid_argument("spin system has " + std::to_string(sys.n()) + " spins, above the cap of " +
                                std::to_string(cap));
  }
  if (static_cast<int>(sys.delta.size()) != sys.n()) throw std::invalid_argument("delta list does not match spins");
}

Eigen::MatrixXd assemble(const std::vector<double>& diag, const std::vector<double>& flip) {
  const int dim = static_cast<int>(diag.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    h(k, k) = diag[k];
    for (std::size_t i = 0; i < flip.size(); ++i) h(k, k ^ (1 << i)) = flip[i];
  }
  return h;
}

} // namespace

Eigen::MatrixXd dense_hamiltonian(const SpinSystem& sys, double s, const Schedule& schedule) {
  check_size(sys, kDefaultSpinCap);
  auto diag = problem_diagonal(sys);
  for (double& d : diag) d *= 0.5 * schedule.b(s);
  std::vector<double> flip(sys.n());
  for (int i = 0; i < sys.n(); ++i) flip[i] = -0.5 * schedule.a(s) * sys.delta[i];
  return assemble(diag, flip);
}

GapResult min_gap(const SpinSystem& sys, int grid, const Schedule& schedule, int cap) {
  check_size(sys, cap);
  if (grid < 2) throw std::invalid_argument("grid needs at least 2 points");
  const int n = sys.n();
  const int dim = 1 << n;
  const auto base = problem_diagonal(sys);
  GapResult out;
  out.solver = n <= kDenseSpinLimit ? "dense" : "lanczos";
  std::vector<double> diag(dim), flip(n);
  Eigen::VectorXd warm0, warm1;
  Eigen::VectorXd nudge(dim);
  for (int k = 0; k < dim; ++k) nudge[k] = std::cos(0.3 + 1.1 * k);
  nudge.normalize();

  for (int g = 0; g < grid; ++g) {
    const double s = static_cast<double>(g) / (grid - 1);
    for (int k = 0; k < dim; ++k) diag[k] = 0.5 * schedule.b(s) * base[k];
    for (int i = 0; i < n; ++i) flip[i] = -0.5 * schedule.a(s) * sys.delta[i];
    SpectrumPoint p;
    p.s = s;
    if (n <= kDenseSpinLimit) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(assemble(diag, flip), Eigen::EigenvaluesOnly);
      p.e0 = solver.eigenvalues()[0];
      p.e1 = solver.eigenvalues()[1];
    } else {
      LinearOperator op = [&](std::span<const double> x, std::span<double> y) { simd::tfim_apply(diag, flip, x, y); };
      // Warm starts are nudged so a level crossing into another symmetry
      // sector is still found.
      Eigen::VectorXd start0 = warm0.size() ? Eigen::VectorXd(warm0 + 1e-3 * nudge) : Eigen::VectorXd();
      auto ground = lanczos_lowest(op, dim, start0, {});
      Eigen::VectorXd start1 = warm1.size() ? Eigen::VectorXd(warm1 + 1e-3 * nudge) : Eigen::VectorXd();
      auto excited = lanczos_lowest(op, dim, start1, {ground.vector});
      p.e0 = ground.value;
      p.e1 = excited.value;
      warm0 = ground.vector;
      warm1 = excited.vector;
    }
    p.gap = p.e1 - p.e0;
    if (g == 0 || p.gap < out.min_gap) {
      out.min_gap = p.gap;
      out.argmin_s = s;
    }
    out.points.push_back(p);
  }
  return out;
}

double gap_reduction(const WireModel& wire, int grid, const Schedule& schedule, int cap) {
  WireModel unit = wire;
  unit.n_left = unit.n_right = 1;
  const double reference = min_gap(build_wire_model(unit), grid, schedule, cap).min_gap;
  if (!(reference > 0.0)) throw std::invalid_argument("reference gap of the 1,1 wire is zero");
  const double gap = min_gap(build_wire_model(wire), grid, schedule, cap).min_gap;
  return 100.0 * (1.0 - gap / reference);
}

std::string format_spectrum_csv(const GapResult& result) {
  std::ostringstream os;
  os.precision(17);
  os << "s,E0,E1,gap\n";
  for (const auto& p : result.points) os << p.s << ',' << p.e0 << ',' << p.e1 << ',' << p.gap << '\n';
  return os.str();
}

std::string format_spectrum_summary(const GapResult& result, const WireModel* wire, double reduction, int grid,
                                    const Schedule& schedule) {
  nlohmann::ordered_json doc;
  doc["schedule"] = schedule.describe();
  doc["grid"] = grid;
  doc["solver"] = result.solver;
  doc["min_gap"] = result.min_gap;
  doc["argmin_s"] = result.argmin_s;
  if (wire != nullptr) {
    doc["wire"] = {{"n", wire->n_left},   {"m", wire->n_right}, {"j12", wire->j12},
                   {"jc", wire->jc},      {"p_d1", wire->p_d1}, {"p_d2", wire->p_d2},
                   {"driver", std::string(to_string(wire->driver))}};
    doc["gap_reduction_percent"] = reduction;
  }
  return doc.dump(2) + "\n";
}

} // namespace qcaembed
