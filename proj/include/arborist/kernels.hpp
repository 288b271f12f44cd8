#pragma once

#include <cstdint>
#include <limits>

// Row-reduction kernels for the dense incoming-edge arrays.
//
// A "row" holds the incoming candidates of one node: w[i] is the weight of the
// candidate arriving from slot i and id[i] its tie-break key. Absent slots are
// encoded as w[i] == -inf together with id[i] == INT32_MAX, so a plain
// (weight desc, id asc) lexicographic argmax never selects an absent slot
// unless the whole row is empty.
//
// Two backends implement the same contract: a portable scalar loop and an
// AVX2 variant. The active backend is picked once at startup (cpuid probe,
// overridable via ARBORIST_KERNELS=scalar|avx2).

namespace arborist::kernels {

inline constexpr double kAbsent = -std::numeric_limits<double>::infinity();
inline constexpr std::int32_t kAbsentId = std::numeric_limits<std::int32_t>::max();

struct MaxLoc {
  double value = kAbsent;
  std::int32_t index = -1;  // slot position in the row, -1 when the row is empty

  bool empty() const { return index < 0; }
};

// Argmax by (weight desc, id asc) over the whole row.
MaxLoc row_argmax(const double* w, const std::int32_t* id, std::int32_t n);

// Same, restricted to slots with allow[i] != 0.
MaxLoc row_argmax_masked(const double* w, const std::int32_t* id, const std::uint8_t* allow,
                         std::int32_t n);

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);
bool cpu_supports_avx2();

namespace detail {
MaxLoc scalar_row_argmax(const double* w, const std::int32_t* id, std::int32_t n);
MaxLoc scalar_row_argmax_masked(const double* w, const std::int32_t* id, const std::uint8_t* allow,
                                std::int32_t n);
#if defined(__x86_64__) || defined(_M_X64)
MaxLoc avx2_row_argmax(const double* w, const std::int32_t* id, std::int32_t n);
MaxLoc avx2_row_argmax_masked(const double* w, const std::int32_t* id, const std::uint8_t* allow,
                              std::int32_t n);
#endif
}  // namespace detail

}  // namespace arborist::kernels
