#include <cstdlib>
#include <string_view>

#include "kernels/tables.hpp"
#include "ratlab/error.hpp"

namespace ratlab::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_table() {
#if defined(RATLAB_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

// RATLAB_ISA=scalar forces the reference kernels.
const KernelTable& active_table() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* forced = std::getenv("RATLAB_ISA");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    const KernelTable* avx2 = avx2_table();
    return avx2 != nullptr ? *avx2 : scalar_table();
  }();
  return table;
}

namespace {

void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::InvalidArgument, "kernel spans differ in length");
}

}  // namespace

void pair_map_batch(std::span<const double> x, std::span<const double> y, double alpha,
                    std::span<double> w, std::span<double> z, std::span<std::uint8_t> region) {
  require_same(x.size(), y.size());
  require_same(x.size(), w.size());
  require_same(x.size(), z.size());
  require_same(x.size(), region.size());
  active_table().pair_map(x.data(), y.data(), x.size(), alpha, w.data(), z.data(),
                          region.data());
}

void pair_inverse_batch(std::span<const double> w, std::span<const double> z,
                        std::span<double> x, std::span<double> y) {
  require_same(w.size(), z.size());
  require_same(w.size(), x.size());
  require_same(w.size(), y.size());
  active_table().pair_inverse(w.data(), z.data(), w.size(), x.data(), y.data());
}

void pair_inverse_minus_batch(std::span<const double> w, std::span<const double> z,
                              std::span<double> x, std::span<double> y) {
  require_same(w.size(), z.size());
  require_same(w.size(), x.size());
  require_same(w.size(), y.size());
  active_table().pair_inverse_minus(w.data(), z.data(), w.size(), x.data(), y.data());
}

void pair_density_batch(std::span<const double> w, std::span<const double> z, double alpha,
                        double scale, Radicand radicand, std::span<double> out) {
  require_same(w.size(), z.size());
  require_same(w.size(), out.size());
  active_table().pair_density(w.data(), z.data(), w.size(), alpha, scale, radicand,
                              out.data());
}

}  // namespace ratlab::kernels
