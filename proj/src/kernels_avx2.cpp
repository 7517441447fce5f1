// AVX2 variants of the trifference batch kernels. Four candidates per
// iteration; per-lane popcount via the nibble lookup + sad trick.

#include "trif/kernels.hpp"

#if defined(TRIF_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))

#include <immintrin.h>

namespace trif::kern {

namespace {

inline __m256i diff_mask4(__m256i a, __m256i b) {
  const __m256i lane = _mm256_set1_epi64x((long long)kLaneLsb);
  __m256i d = _mm256_xor_si256(a, b);
  return _mm256_and_si256(_mm256_or_si256(d, _mm256_srli_epi64(d, 1)), lane);
}

inline __m256i popcount4(__m256i v) {
  const __m256i nib = _mm256_set1_epi8(0x0f);
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  __m256i lo = _mm256_and_si256(v, nib);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi64(v, 4), nib);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

// Triple counts of (u, w, cand[i..i+3]) as four 64-bit lanes.
inline __m256i counts4(__m256i bu, __m256i bw, __m256i tuw, const std::uint64_t* cand) {
  __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cand));
  __m256i t = _mm256_and_si256(tuw, _mm256_and_si256(diff_mask4(bu, c), diff_mask4(bw, c)));
  return popcount4(t);
}

}  // namespace

std::size_t filter_avx2(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                        const std::uint64_t* cand, const std::uint32_t* ids,
                        std::size_t count, int m,
                        std::uint64_t* out_cand, std::uint32_t* out_ids) {
  const __m256i bu = _mm256_set1_epi64x((long long)u);
  const __m256i bw = _mm256_set1_epi64x((long long)w);
  const __m256i bt = _mm256_set1_epi64x((long long)t_uw);
  const __m256i bm = _mm256_set1_epi64x((long long)m);
  std::size_t kept = 0, i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i cnt = counts4(bu, bw, bt, cand + i);
    // pass iff cnt >= m, i.e. NOT (m > cnt)
    int fail = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(bm, cnt)));
    if (fail == 0) {
      for (int j = 0; j < 4; ++j) {
        out_cand[kept] = cand[i + j];
        out_ids[kept] = ids[i + j];
        ++kept;
      }
    } else {
      for (int j = 0; j < 4; ++j) {
        if (!(fail & (1 << j))) {
          out_cand[kept] = cand[i + j];
          out_ids[kept] = ids[i + j];
          ++kept;
        }
      }
    }
  }
  for (; i < count; ++i) {
    std::uint64_t c = cand[i];
    if (std::popcount(t_uw & diff_mask(u, c) & diff_mask(w, c)) >= m) {
      out_cand[kept] = c;
      out_ids[kept] = ids[i];
      ++kept;
    }
  }
  return kept;
}

std::size_t first_bad_avx2(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                           const std::uint64_t* cand, std::size_t count, int m) {
  const __m256i bu = _mm256_set1_epi64x((long long)u);
  const __m256i bw = _mm256_set1_epi64x((long long)w);
  const __m256i bt = _mm256_set1_epi64x((long long)t_uw);
  const __m256i bm = _mm256_set1_epi64x((long long)m);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i cnt = counts4(bu, bw, bt, cand + i);
    int fail = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(bm, cnt)));
    if (fail) return i + (std::size_t)std::countr_zero((unsigned)fail);
  }
  for (; i < count; ++i) {
    std::uint64_t c = cand[i];
    if (std::popcount(t_uw & diff_mask(u, c) & diff_mask(w, c)) < m) return i;
  }
  return count;
}

MinResult min_scan_avx2(std::uint64_t u, std::uint64_t w, std::uint64_t t_uw,
                        const std::uint64_t* cand, std::size_t count) {
  const __m256i bu = _mm256_set1_epi64x((long long)u);
  const __m256i bw = _mm256_set1_epi64x((long long)w);
  const __m256i bt = _mm256_set1_epi64x((long long)t_uw);
  MinResult r{65, 0};
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256i cnt = counts4(bu, bw, bt, cand + i);
    // running-min update must keep the FIRST attaining index
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), cnt);
    for (int j = 0; j < 4; ++j) {
      if ((int)lanes[j] < r.min_count) {
        r.min_count = (int)lanes[j];
        r.argmin = i + (std::size_t)j;
        if (r.min_count == 0) return r;
      }
    }
  }
  for (; i < count; ++i) {
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

}  // namespace trif::kern

#endif
