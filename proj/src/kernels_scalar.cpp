#include "arborist/kernels.hpp"

namespace arborist::kernels::detail {

MaxLoc scalar_row_argmax(const double* w, const std::int32_t* id, std::int32_t n) {
  MaxLoc best;
  std::int32_t best_id = kAbsentId;
  for (std::int32_t i = 0; i < n; ++i) {
    if (w[i] > best.value || (w[i] == best.value && id[i] < best_id)) {
      best.value = w[i];
      best.index = i;
      best_id = id[i];
    }
  }
  if (best.value == kAbsent) best = MaxLoc{};
  return best;
}

MaxLoc scalar_row_argmax_masked(const double* w, const std::int32_t* id, const std::uint8_t* allow,
                                std::int32_t n) {
  MaxLoc best;
  std::int32_t best_id = kAbsentId;
  for (std::int32_t i = 0; i < n; ++i) {
    if (!allow[i]) continue;
    if (w[i] > best.value || (w[i] == best.value && id[i] < best_id)) {
      best.value = w[i];
      best.index = i;
      best_id = id[i];
    }
  }
  if (best.value == kAbsent) best = MaxLoc{};
  return best;
}

}  // namespace arborist::kernels::detail
