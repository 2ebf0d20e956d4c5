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

#if defined(__ARM_NEON)

#include <arm_neon.h>

namespace dronesweep {
namespace kernels {

std::size_t count_within_neon(const double* xs, const double* ys,
                              std::size_t n, double cx, double cy,
                              double r_sq) {
  const float64x2_t vcx = vdupq_n_f64(cx);
  const float64x2_t vcy = vdupq_n_f64(cy);
  const float64x2_t vr2 = vdupq_n_f64(r_sq);

  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vcx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), vcy);
    const float64x2_t d2 = vfmaq_f64(vmulq_f64(dx, dx), dy, dy);
    const uint64x2_t mask = vcleq_f64(d2, vr2);
    acc = vsubq_u64(acc, vshrq_n_u64(mask, 63));
  }
  std::size_t count =
      static_cast<std::size_t>(vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1));
  for (; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double dy = ys[i] - cy;
    count += (dx * dx + dy * dy <= r_sq) ? 1 : 0;
  }
  return count;
}

}  // namespace kernels
}  // namespace dronesweep

#endif  // __ARM_NEON
