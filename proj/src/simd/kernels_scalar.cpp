#include "qcaembed/simd/kernels.hpp"

#include <vector>

namespace qcaembed::simd::scalar {

void diagonal_energies(std::span<const double> h, std::span<const Coupling> couplings, std::uint64_t first,
                       std::span<double> out) {
  const std::size_t n = h.size();
  std::vector<double> s(n);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::uint64_t state = first + k;
    for (std::size_t i = 0; i < n; ++i) s[i] = (state >> i) & 1U ? -1.0 : 1.0;
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e += h[i] * s[i];
    for (const auto& c : couplings) e += c.value * (s[c.i] * s[c.j]);
    out[k] = e;
  }
}

void tfim_apply(std::span<const double> diag, std::span<const double> flip, std::span<const double> x,
                std::span<double> y) {
  const std::size_t dim = x.size();
  const std::size_t n = flip.size();
  for (std::size_t k = 0; k < dim; ++k) {
    double acc = diag[k] * x[k];
    for (std::size_t i = 0; i < n; ++i) acc += flip[i] * x[k ^ (std::size_t{1} << i)];
    y[k] = acc;
  }
}

} // namespace qcaembed::simd::scalar
