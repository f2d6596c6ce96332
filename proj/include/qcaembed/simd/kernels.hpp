#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace qcaembed::simd {

// Hot loops shared by the brute-force ground-state search and the
// transverse-field matrix-vector product. Every kernel has a scalar reference
// and, where the CPU allows, an AVX2 variant. Both accumulate in the same
// order, so results agree bit-for-bit (the library is built without fp
// contraction).

struct Coupling {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

enum class Level { scalar, avx2 };

std::string_view to_string(Level level);

/// Level in use. Chosen once from the CPU, overridable with the environment
/// variable QCAEMBED_SIMD=scalar|avx2 (requests the CPU cannot honour fall
/// back to scalar).
Level active_level();
/// Forces a level for the rest of the process; returns the level actually set.
Level set_level(Level level);
bool level_supported(Level level);

/// out[k] = sum_i h[i] s_i + sum_c J_c s_{c.i} s_{c.j} for basis states
/// first .. first + out.size() - 1, where bit i of the state index set means
/// s_i = -1 and clear means s_i = +1.
void diagonal_energies(std::span<const double> h, std::span<const Coupling> couplings, std::uint64_t first,
                       std::span<double> out);

/// y[k] = diag[k] x[k] + sum_i flip[i] x[k ^ (1 << i)]; the transverse-field
/// Hamiltonian in the computational basis. x and y must not alias.
void tfim_apply(std::span<const double> diag, std::span<const double> flip, std::span<const double> x,
                std::span<double> y);

namespace scalar {
void diagonal_energies(std::span<const double> h, std::span<const Coupling> couplings, std::uint64_t first,
                       std::span<double> out);
void tfim_apply(std::span<const double> diag, std::span<const double> flip, std::span<const double> x,
                std::span<double> y);
} // namespace scalar

namespace avx2 {
void diagonal_energies(std::span<const double> h, std::span<const Coupling> couplings, std::uint64_t first,
                       std::span<double> out);
void tfim_apply(std::span<const double> diag, std::span<const double> flip, std::span<const double> x,
                std::span<double> y);
} // namespace avx2

} // namespace qcaembed::simd
