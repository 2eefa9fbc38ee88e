#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Batch evaluation of the double-precision pair-map and density formulas over
// structure-of-arrays inputs. Each entry point has a scalar reference and,
// on x86-64, an AVX2 variant picked at runtime. Both variants perform the same
// IEEE operations in the same order (no FMA contraction), so their results are
// bit-identical.

namespace ratlab::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

enum class Radicand : std::uint8_t { AlphaInRadical, PlainRadical };

// Region codes written by pair_map_batch.
inline constexpr std::uint8_t kRegionPlus = 0;
inline constexpr std::uint8_t kRegionMinus = 1;
inline constexpr std::uint8_t kRegionNabla = 2;

struct KernelTable {
  Isa isa;

  // w = 1/(x - y); z = plus or minus branch; region per point.
  void (*pair_map)(const double* x, const double* y, std::size_t n, double alpha,
                   double* w, double* z, std::uint8_t* region);

  // Inverse of the plus branch.
  void (*pair_inverse)(const double* w, const double* z, std::size_t n, double* x, double* y);

  // Inverse of the minus branch.
  void (*pair_inverse_minus)(const double* w, const double* z, std::size_t n, double* x,
                             double* y);

  // Two-branch pair density, scaled by `scale`; 0 outside Lambda_alpha.
  void (*pair_density)(const double* w, const double* z, std::size_t n, double alpha,
                       double scale, Radicand radicand, double* out);
};

const KernelTable& scalar_table();
// nullptr when the CPU (or the build) has no AVX2.
const KernelTable* avx2_table();
// Best table for this CPU.
const KernelTable& active_table();

void pair_map_batch(std::span<const double> x, std::span<const double> y, double alpha,
                    std::span<double> w, std::span<double> z, std::span<std::uint8_t> region);
void pair_inverse_batch(std::span<const double> w, std::span<const double> z,
                        std::span<double> x, std::span<double> y);
void pair_inverse_minus_batch(std::span<const double> w, std::span<const double> z,
                              std::span<double> x, std::span<double> y);
void pair_density_batch(std::span<const double> w, std::span<const double> z, double alpha,
                        double scale, Radicand radicand, std::span<double> out);

}  // namespace ratlab::kernels
