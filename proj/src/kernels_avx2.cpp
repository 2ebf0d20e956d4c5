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

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace dronesweep {
namespace kernels {

std::size_t count_within_avx2(const double* xs, const double* ys,
                              std::size_t n, double cx, double cy,
                              double r_sq) {
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vcy = _mm256_set1_pd(cy);
  const __m256d vr2 = _mm256_set1_pd(r_sq);
  const __m256d ones = _mm256_set1_pd(1.0);

  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vcx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vcy);
    const __m256d d2 =
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d mask = _mm256_cmp_pd(d2, vr2, _CMP_LE_OQ);
    acc = _mm256_add_pd(acc, _mm256_and_pd(mask, ones));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  std::size_t count =
      static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double dy = ys[i] - cy;
    count += (dx * dx + dy * dy <= r_sq) ? 1 : 0;
  }
  return count;
}

}  // namespace kernels
}  // namespace dronesweep

#endif  // x86_64
