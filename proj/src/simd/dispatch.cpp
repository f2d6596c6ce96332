#include "qcaembed/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qcaembed::simd {

std::string_view to_string(Level level) { return level == Level::avx2 ? "avx2" : "scalar"; }

bool level_supported(Level level) {
  if (level == Level::scalar) return true;
#if defined(QCAEMBED_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Level detect() {
  if (const char* env = std::getenv("QCAEMBED_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Level::scalar;
    if (want == "avx2") return level_supported(Level::avx2) ? Level::avx2 : Level::scalar;
  }
  return level_supported(Level::avx2) ? Level::avx2 : Level::scalar;
}

std::atomic<int>& current() {
  static std::atomic<int> level{static_cast<int>(detect())};
  return level;
}

} // namespace

Level active_level() { return static_cast<Level>(current().load(std::memory_order_relaxed)); }

Level set_level(Level level) {
  if (!level_supported(level)) level = Level::scalar;
  current().store(static_cast<int>(level), std::memory_order_relaxed);
  return level;
}

void diagonal_energies(std::span<const double> h, std::span<const Coupling> couplings, std::uint64_t first,
                       std::span<double> out) {
#ifdef QCAEMBED_HAVE_AVX2
  if (active_level() == Level::avx2) return avx2::diagonal_energies(h, couplings, first, out);
#endif
  scalar::diagonal_energies(h, couplings, first, out);
}

void tfim_apply(std::span<const double> diag, std::span<const double> flip, std::span<const double> x,
                std::span<double> y) {
#ifdef QCAEMBED_HAVE_AVX2
  if (active_level() == Level::avx2) return avx2::tfim_apply(diag, flip, x, y);
#endif
  scalar::tfim_apply(diag, flip, x, y);
}

} // namespace qcaembed::simd
