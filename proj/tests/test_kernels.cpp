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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstddef>
#include <random>
#include <vector>

#include "dronesweep/kernels.hpp"

using namespace dronesweep;

namespace {

struct Cloud {
  std::vector<double> xs, ys;
};

Cloud random_cloud(std::mt19937_64& rng, std::size_t n, double span) {
  std::uniform_real_distribution<double> u(-span, span);
  Cloud c;
  c.xs.reserve(n);
  c.ys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.xs.push_back(u(rng));
    c.ys.push_back(u(rng));
  }
  return c;
}

}  // namespace

TEST_CASE("scalar kernel counts boundary-inclusive") {
  const std::vector<double> xs{0.0, 3.0, 5.0, -4.0};
  const std::vector<double> ys{0.0, 4.0, 0.0, 3.0};
  // Radius 5 about the origin: all four are at distance <= 5.
  CHECK(kernels::count_within_scalar(xs.data(), ys.data(), xs.size(), 0.0, 0.0,
                                     25.0) == 4);
  // Shrink just below: only the origin point stays.
  CHECK(kernels::count_within_scalar(xs.data(), ys.data(), xs.size(), 0.0, 0.0,
                                     25.0 * (1.0 - 1e-12)) == 1);
  CHECK(kernels::count_within_scalar(xs.data(), ys.data(), 0, 0.0, 0.0,
                                     25.0) == 0);
}

TEST_CASE("all compiled backends agree with the scalar reference") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> cu(-1000.0, 1000.0);
  std::uniform_real_distribution<double> ru(0.1, 800.0);
  for (int trial = 0; trial < 200; ++trial) {
    // Mix of lengths, including the vector-width remainders.
    const std::size_t n = static_cast<std::size_t>(rng() % 67);
    const auto c = random_cloud(rng, n, 1000.0);
    const double cx = cu(rng), cy = cu(rng);
    const double r = ru(rng);
    const std::size_t ref = kernels::count_within_scalar(
        c.xs.data(), c.ys.data(), n, cx, cy, r * r);
#if defined(__x86_64__) || defined(_M_X64)
    CHECK(kernels::count_within_avx2(c.xs.data(), c.ys.data(), n, cx, cy,
                                     r * r) == ref);
#endif
#if defined(__ARM_NEON)
    CHECK(kernels::count_within_neon(c.xs.data(), c.ys.data(), n, cx, cy,
                                     r * r) == ref);
#endif
  }
}

TEST_CASE("backends agree on exact-boundary points") {
  // Points placed exactly on the circle exercise the <= comparison in
  // every implementation identically.
  std::vector<double> xs, ys;
  for (int i = 0; i < 64; ++i) {
    xs.push_back(3.0);
    ys.push_back(4.0);  // distance exactly 5
  }
  const std::size_t ref =
      kernels::count_within_scalar(xs.data(), ys.data(), xs.size(), 0, 0, 25.0);
  CHECK(ref == 64);
#if defined(__x86_64__) || defined(_M_X64)
  CHECK(kernels::count_within_avx2(xs.data(), ys.data(), xs.size(), 0, 0,
                                   25.0) == ref);
#endif
#if defined(__ARM_NEON)
  CHECK(kernels::count_within_neon(xs.data(), ys.data(), xs.size(), 0, 0,
                                   25.0) == ref);
#endif
}

TEST_CASE("runtime dispatch override and restore") {
  const auto detected = kernels::detected_backend();
  kernels::set_backend(kernels::Backend::Scalar);
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);

  std::mt19937_64 rng(5);
  const auto c = random_cloud(rng, 1000, 50.0);
  const std::size_t scalar_count =
      kernels::count_within(c.xs.data(), c.ys.data(), c.xs.size(), 0, 0, 900.0);

  kernels::set_backend(detected);
  CHECK(kernels::active_backend() == detected);
  CHECK(kernels::count_within(c.xs.data(), c.ys.data(), c.xs.size(), 0, 0,
                              900.0) == scalar_count);

  // Requesting an unavailable backend falls back to scalar.
#if !defined(__ARM_NEON)
  kernels::set_backend(kernels::Backend::Neon);
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
#endif
#if !(defined(__x86_64__) || defined(_M_X64))
  kernels::set_backend(kernels::Backend::Avx2);
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
#endif
  kernels::set_backend(detected);
}
