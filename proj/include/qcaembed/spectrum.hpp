#pragma once

#include "qcaembed/ising.hpp"
#include "qcaembed/simd/kernels.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace qcaembed {

/// Transverse-field Ising system. The annealing Hamiltonian is
///   H(s) = -1/2 A(s) sum_i delta_i X_i + 1/2 B(s) H_P
/// with H_P the classical energy sum_i h_i Z_i + sum J_ij Z_i Z_j.
struct SpinSystem {
  IsingModel problem;
  std::vector<double> delta;  // transverse scale per spin

  int n() const { return problem.n; }
};

SpinSystem make_spin_system(IsingModel problem, double delta = 1.0);

/// Linear schedule A(s) = 1 - s, B(s) = s. No other schedule is offered; it is
/// written into every output.
struct Schedule {
  double a(double s) const { return 1.0 - s; }
  double b(double s) const { return s; }
  std::string describe() const { return "linear: A(s)=1-s, B(s)=s"; }
};

inline constexpr int kDefaultSpinCap = 14;
/// Exact dense diagonalisation up to this many spins; restarted Lanczos above.
inline constexpr int kDenseSpinLimit = 8;

enum class DriverCoupling { outermost, whole_group };

std::string_view to_string(DriverCoupling coupling);
DriverCoupling parse_driver_coupling(std::string_view text);

/// Two groups of strongly coupled cells standing in for single cells: a
/// chain of n_left + n_right spins with intra-group coupling jc and a single
/// j12 bond between the groups. Each group feels its driver as a unit FM
/// field times the driver polarisation, either on its outermost spin or on
/// every spin of the group.
struct WireModel {
  int n_left = 1;
  int n_right = 1;
  double j12 = -1.0;
  double jc = -1.0;
  double p_d1 = 1.0;
  double p_d2 = 1.0;
  DriverCoupling driver = DriverCoupling::whole_group;

  void validate() const;
};

SpinSystem build_wire_model(const WireModel& wire);

/// Dense H(s); for tests and small systems.
Eigen::MatrixXd dense_hamiltonian(const SpinSystem& sys, double s, const Schedule& schedule = {});

struct SpectrumPoint {
  double s = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
  double gap = 0.0;
};

struct GapResult {
  std::vector<SpectrumPoint> points;
  double min_gap = 0.0;
  double argmin_s = 0.0;
  std::string solver;  // dense | lanczos
};

/// Samples grid points s = k / (grid - 1) and records the two lowest levels.
/// Throws std::invalid_argument when n exceeds `cap` or grid < 2.
GapResult min_gap(const SpinSystem& sys, int grid = 201, const Schedule& schedule = {}, int cap = kDefaultSpinCap);

/// 100 (1 - gap(n_left, n_right) / gap(1, 1)) with the same couplings and
/// drivers.
double gap_reduction(const WireModel& wire, int grid = 201, const Schedule& schedule = {},
                     int cap = kDefaultSpinCap);

std::string format_spectrum_csv(const GapResult& result);
std::string format_spectrum_summary(const GapResult& result, const WireModel* wire, double reduction, int grid,
                                    const Schedule& schedule = {});

} // namespace qcaembed
