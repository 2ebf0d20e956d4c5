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

namespace dronesweep {
namespace kernels {

std::size_t count_within_scalar(const double* xs, const double* ys,
                                std::size_t n, double cx, double cy,
                                double r_sq) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double dy = ys[i] - cy;
    count += (dx * dx + dy * dy <= r_sq) ? 1 : 0;
  }
  return count;
}

}  // namespace kernels
}  // namespace dronesweep
