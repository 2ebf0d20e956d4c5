// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dronesweep/kernels.hpp"

#include <atomic>

namespace dronesweep {
namespace kernels {

namespace {

CountWithinFn resolve(Backend b) {
  switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::Avx2:
      return &count_within_avx2;
#endif
#if defined(__ARM_NEON)
    case Backend::Neon:
      return &count_within_neon;
#endif
    default:
      return &count_within_scalar;
  }
}

std::atomic<Backend> g_backend{detected_backend()};
std::atomic<CountWithinFn> g_fn{resolve(detected_backend())};

}  // namespace

Backend detected_backend() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
#if defined(__ARM_NEON)
  return Backend::Neon;
#endif
  return Backend::Scalar;
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
#if defined(__x86_64__) || defined(_M_X64)
  if (b == Backend::Avx2 && !__builtin_cpu_supports("avx2")) {
    b = Backend::Scalar;
  }
  if (b == Backend::Neon) b = Backend::Scalar;
#elif defined(__ARM_NEON)
  if (b == Backend::Avx2) b = Backend::Scalar;
#else
  b = Backend::Scalar;
#endif
  g_backend.store(b, std::memory_order_relaxed);
  g_fn.store(resolve(b), std::memory_order_relaxed);
}

std::size_t count_within(const double* xs, const double* ys, std::size_t n,
                         double cx, double cy, double r_sq) {
  return g_fn.load(std::memory_order_relaxed)(xs, ys, n, cx, cy, r_sq);
}

}  // namespace kernels
}  // namespace dronesweep
