#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string_view>

// Single-block (word length <= 32) trifference counting kernels. All inner
// loops of the exact search, the verifier and the alteration construction
// reduce to: given two fixed words u, w and their difference mask, compute
// popcount(diff(u,w) & diff(u,c) & diff(w,c)) for a batch of candidates c.
// A scalar reference implementation always exists; an AVX2 variant is
// selected at runtime when the CPU supports it. Both must agree bit for bit
// (equivalence-tested).

namespace trif::kern {

// Bit 2j of the mask marks 2-bit lane j as "symbols differ".
inline constexpr std::uint64_t kLaneLsb = 0x5555555555555555ull;

inline std::uint64_t diff_mask(std::uint64_t a, std::uint64_t b) {
  std::uint64_t d = a ^ b;
  return (d | (d >> 1)) & kLaneLsb;
}

// Trifference count of a single triple, given packed blocks.
inline int triple_count(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return std::popcount(diff_mask(a, b) & diff_mask(a, c) & diff_mask(b, c));
}

// Keeps the candidates whose triple with (u, w) triffers in >= m positions.
// cand/ids are parallel arrays; survivors are written in order to out_cand/
// out_ids (which may alias cand/ids). Returns the number kept.
using FilterFn = std::size_t (*)(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                                 const std::uint64_t* cand, const std::uint32_t* ids,
                                 std::size_t count, int m,
                                 std::uint64_t* out_cand, std::uint32_t* out_ids);

// Index of the first candidate whose triple with (u, w) triffers in < m
// positions, or `count` if all pass.
using FirstBadFn = std::size_t (*)(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                                   const std::uint64_t* cand, std::size_t count, int m);

// Minimum triple count over the batch and the first index attaining it.
// count must be >= 1.
struct MinResult {
  int min_count;
  std::size_t argmin;
};
using MinScanFn = MinResult (*)(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                                const std::uint64_t* cand, std::size_t count);

std::size_t filter_scalar(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                          const std::uint64_t* cand, const std::uint32_t* ids,
                          std::size_t count, int m,
                          std::uint64_t* out_cand, std::uint32_t* out_ids);
std::size_t first_bad_scalar(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                             const std::uint64_t* cand, std::size_t count, int m);
MinResult min_scan_scalar(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                          const std::uint64_t* cand, std::size_t count);

#ifdef TRIF_AVX2_TU
std::size_t filter_avx2(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                        const std::uint64_t* cand, const std::uint32_t* ids,
                        std::size_t count, int m,
                        std::uint64_t* out_cand, std::uint32_t* out_ids);
std::size_t first_bad_avx2(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                           const std::uint64_t* cand, std::size_t count, int m);
MinResult min_scan_avx2(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                        const std::uint64_t* cand, std::size_t count);
#endif

FilterFn filter();
FirstBadFn first_bad();
MinScanFn min_scan();

// "scalar", "avx2" or "auto"; returns false if the variant is unavailable.
bool select_kernel(std::string_view name);
std::string_view kernel_name();

}  // namespace trif::kern
