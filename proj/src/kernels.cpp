#include "trif/kernels.hpp"

#include <atomic>

namespace trif::kern {

std::size_t filter_scalar(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                          const std::uint64_t* cand, const std::uint32_t* ids,
                          std::size_t count, int m,
                          std::uint64_t* out_cand, std::uint32_t* out_ids) {
  std::size_t kept = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t c = cand[i];
    int t = std::popcount(t_uw & diff_mask(u, c) & diff_mask(w, c));
    if (t >= m) {
      out_cand[kept] = c;
      out_ids[kept] = ids[i];
      ++kept;
    }
  }
  return kept;
}

std::size_t first_bad_scalar(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                             const std::uint64_t* cand, std::size_t count, int m) {
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t c = cand[i];
    if (std::popcount(t_uw & diff_mask(u, c) & diff_mask(w, c)) < m) return i;
  }
  return count;
}

MinResult min_scan_scalar(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                          const std::uint64_t* cand, std::size_t count) {
  MinResult r{65, 0};
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t c = cand[i];
    int t = std::popcount(t_uw & diff_mask(u, c) & diff_mask(w, c));
    if (t < r.min_count) {
      r.min_count = t;
      r.argmin = i;
      if (t == 0) break;
    }
  }
  return r;
}

namespace {

struct Dispatch {
  FilterFn filter = &filter_scalar;
  FirstBadFn first_bad = &first_bad_scalar;
  MinScanFn min_scan = &min_scan_scalar;
  std::string_view name = "scalar";
};

bool avx2_available() {
#if defined(TRIF_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Dispatch make_dispatch(std::string_view want) {
  Dispatch d;
#ifdef TRIF_AVX2_TU
  if ((want == "auto" || want == "avx2") && avx2_available()) {
    d.filter = &filter_avx2;
    d.first_bad = &first_bad_avx2;
    d.min_scan = &min_scan_avx2;
    d.name = "avx2";
  }
#endif
  return d;
}

Dispatch& current() {
  static Dispatch d = make_dispatch("auto");
  return d;
}

}  // namespace

FilterFn filter() { return current().filter; }
FirstBadFn first_bad() { return current().first_bad; }
MinScanFn min_scan() { return current().min_scan; }

bool select_kernel(std::string_view name) {
  if (name == "scalar") {
    current() = Dispatch{};
    return true;
  }
  if (name == "avx2") {
    if (!avx2_available()) return false;
    current() = make_dispatch("avx2");
    return true;
  }
  if (name == "auto") {
    current() = make_dispatch("auto");
    return true;
  }
  return false;
}

std::string_view kernel_name() { return current().name; }

}  // namespace trif::kern
