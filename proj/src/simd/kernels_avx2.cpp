#include "qcaembed/simd/kernels.hpp"

#include <immintrin.h>

#include <vector>

namespace qcaembed::simd::avx2 {

void diagonal_energies(std::span<const double> h, std::span<const Coupling> couplings, std::uint64_t first,
                       std::span<double> out) {
  const std::size_t n = h.size();
  const std::size_t count = out.size();
  std::size_t k = 0;
  // Unaligned head and short tails go through the reference kernel.
  while (k < count && (first + k) % 4 != 0) ++k;
  if (k > 0) scalar::diagonal_energies(h, couplings, first, out.subspan(0, k));

  std::vector<__m256d> s(n);
  const __m256d plus = _mm256_set1_pd(1.0);
  const __m256d minus = _mm256_set1_pd(-1.0);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i lanes = _mm256_set_epi64x(3, 2, 1, 0);
  for (; k + 4 <= count; k += 4) {
    const auto base = static_cast<long long>(first + k);
    const __m256i idx = _mm256_add_epi64(_mm256_set1_epi64x(base), lanes);
    for (std::size_t i = 0; i < n; ++i) {
      const __m256i shift = _mm256_set1_epi64x(static_cast<long long>(i));
      const __m256i shifted = _mm256_and_si256(_mm256_srlv_epi64(idx, shift), one);
      const __m256d mask = _mm256_castsi256_pd(_mm256_cmpeq_epi64(shifted, one));
      s[i] = _mm256_blendv_pd(plus, minus, mask);
    }
    __m256d e = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; ++i) e = _mm256_add_pd(e, _mm256_mul_pd(_mm256_set1_pd(h[i]), s[i]));
    for (const auto& c : couplings) {
      e = _mm256_add_pd(e, _mm256_mul_pd(_mm256_set1_pd(c.value), _mm256_mul_pd(s[c.i], s[c.j])));
    }
    _mm256_storeu_pd(out.data() + k, e);
  }
  if (k < count) scalar::diagonal_energies(h, couplings, first + k, out.subspan(k));
}

void tfim_apply(std::span<const double> diag, std::span<const double> flip, std::span<const double> x,
                std::span<double> y) {
  const std::size_t dim = x.size();
  const std::size_t n = flip.size();
  if (n < 2) {
    scalar::tfim_apply(diag, flip, x, y);
    return;
  }
  // dim = 2^n >= 4, so blocks of four never straddle the end. Within a block
  // bit 0 flips swap adjacent lanes and bit 1 flips swap the two halves; higher
  // bits map the whole block onto another aligned block.
  const __m256d f0 = _mm256_set1_pd(flip[0]);
  const __m256d f1 = _mm256_set1_pd(flip[1]);
  for (std::size_t k = 0; k < dim; k += 4) {
    const __m256d xv = _mm256_loadu_pd(x.data() + k);
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(diag.data() + k), xv);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(f0, _mm256_permute_pd(xv, 0b0101)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(f1, _mm256_permute2f128_pd(xv, xv, 0x01)));
    for (std::size_t i = 2; i < n; ++i) {
      const __m256d other = _mm256_loadu_pd(x.data() + (k ^ (std::size_t{1} << i)));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(flip[i]), other));
    }
    _mm256_storeu_pd(y.data() + k, acc);
  }
}

} // namespace qcaembed::simd::avx2
