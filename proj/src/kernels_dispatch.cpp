#include "arborist/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace arborist::kernels {

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

Backend select_backend() {
  const char* env = std::getenv("ARBORIST_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_supports_avx2()) return Backend::avx2;
    if (std::strcmp(env, "auto") != 0) return Backend::scalar;  // unknown or unsupported request
  }
  return cpu_supports_avx2() ? Backend::avx2 : Backend::scalar;
}

const Backend g_backend = select_backend();

}  // namespace

Backend active_backend() { return g_backend; }

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

MaxLoc row_argmax(const double* w, const std::int32_t* id, std::int32_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::avx2) return detail::avx2_row_argmax(w, id, n);
#endif
  return detail::scalar_row_argmax(w, id, n);
}

MaxLoc row_argmax_masked(const double* w, const std::int32_t* id, const std::uint8_t* allow,
                         std::int32_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (g_backend == Backend::avx2) return detail::avx2_row_argmax_masked(w, id, allow, n);
#endif
  return detail::scalar_row_argmax_masked(w, id, allow, n);
}

}  // namespace arborist::kernels
