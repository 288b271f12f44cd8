// AVX2 backend. Compiled with -mavx2; only reached after the cpuid probe.

#include "arborist/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace arborist::kernels::detail {

namespace {

inline double hmax4(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d m = _mm_max_pd(lo, hi);
  m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
  return _mm_cvtsd_f64(m);
}

// Expand 4 mask bytes into 4 full 64-bit lanes (all-ones where byte != 0).
inline __m256d lane_mask(const std::uint8_t* allow) {
  std::uint32_t packed;
  __builtin_memcpy(&packed, allow, 4);
  __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(packed)));
  __m256i on = _mm256_cmpgt_epi64(wide, _mm256_setzero_si256());
  return _mm256_castsi256_pd(on);
}

// Among slots with w[i] == target, pick the smallest id. `target` is finite.
MaxLoc resolve_ties(const double* w, const std::int32_t* id, const std::uint8_t* allow,
                    std::int32_t n, double target) {
  MaxLoc best;
  best.value = target;
  std::int32_t best_id = kAbsentId;
  __m256d t = _mm256_set1_pd(target);
  std::int32_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(w + i);
    if (allow) v = _mm256_blendv_pd(_mm256_set1_pd(kAbsent), v, lane_mask(allow + i));
    int hit = _mm256_movemask_pd(_mm256_cmp_pd(v, t, _CMP_EQ_OQ));
    while (hit) {
      int lane = __builtin_ctz(static_cast<unsigned>(hit));
      hit &= hit - 1;
      std::int32_t slot = i + lane;
      if (id[slot] < best_id) {
        best_id = id[slot];
        best.index = slot;
      }
    }
  }
  for (; i < n; ++i) {
    if (allow && !allow[i]) continue;
    if (w[i] == target && id[i] < best_id) {
      best_id = id[i];
      best.index = i;
    }
  }
  return best;
}

}  // namespace

MaxLoc avx2_row_argmax(const double* w, const std::int32_t* id, std::int32_t n) {
  __m256d acc = _mm256_set1_pd(kAbsent);
  std::int32_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(w + i));
  double m = hmax4(acc);
  for (; i < n; ++i)
    if (w[i] > m) m = w[i];
  if (m == kAbsent) return MaxLoc{};
  return resolve_ties(w, id, nullptr, n, m);
}

MaxLoc avx2_row_argmax_masked(const double* w, const std::int32_t* id, const std::uint8_t* allow,
                              std::int32_t n) {
  __m256d acc = _mm256_set1_pd(kAbsent);
  __m256d off = _mm256_set1_pd(kAbsent);
  std::int32_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(w + i);
    acc = _mm256_max_pd(acc, _mm256_blendv_pd(off, v, lane_mask(allow + i)));
  }
  double m = hmax4(acc);
  for (; i < n; ++i)
    if (allow[i] && w[i] > m) m = w[i];
  if (m == kAbsent) return MaxLoc{};
  return resolve_ties(w, id, allow, n, m);
}

}  // namespace arborist::kernels::detail

#endif  // x86_64
