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

#ifndef DRONESWEEP_KERNELS_HPP
#define DRONESWEEP_KERNELS_HPP

#include <cstddef>

namespace dronesweep {
namespace kernels {

// Counts points (xs[i], ys[i]) with squared distance to (cx, cy) <= r_sq.
// Boundary-inclusive.
using CountWithinFn = std::size_t (*)(const double* xs, const double* ys,
                                      std::size_t n, double cx, double cy,
                                      double r_sq);

std::size_t count_within_scalar(const double* xs, const double* ys,
                                std::size_t n, double cx, double cy,
                                double r_sq);

#if defined(__x86_64__) || defined(_M_X64)
std::size_t count_within_avx2(const double* xs, const double* ys,
                              std::size_t n, double cx, double cy,
                              double r_sq);
#endif
#if defined(__ARM_NEON)
std::size_t count_within_neon(const double* xs, const double* ys,
                              std::size_t n, double cx, double cy,
                              double r_sq);
#endif

enum class Backend { Scalar, Avx2, Neon };

// Best backend the running CPU supports.
Backend detected_backend();
// Backend currently used by count_within().
Backend active_backend();
// Overrides the dispatch, e.g. to pin the scalar reference in tests.
// Falls back to scalar when the requested backend is unavailable.
void set_backend(Backend b);

// Runtime-dispatched entry point.
std::size_t count_within(const double* xs, const double* ys, std::size_t n,
                         double cx, double cy, double r_sq);

}  // namespace kernels
}  // namespace dronesweep

#endif  // DRONESWEEP_KERNELS_HPP
