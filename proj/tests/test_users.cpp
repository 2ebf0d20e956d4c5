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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "dronesweep/users.hpp"

using namespace dronesweep;
using geom::ConvexPolygon;
using geom::Point2;

namespace {

constexpr double kPi = std::numbers::pi;

ConvexPolygon square_10km() {
  return ConvexPolygon({{0, 0}, {10000, 0}, {10000, 10000}, {0, 10000}});
}

users::PopulationSpec table_spec() {
  users::PopulationSpec spec{2, 250.0, 0.02, 3e-6, square_10km()};
  return spec;
}

}  // namespace

TEST_CASE("spec validation") {
  auto spec = table_spec();
  CHECK_NOTHROW(spec.validate());
  spec.n_clusters = -1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = table_spec();
  spec.cluster_radius_m = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = table_spec();
  spec.clustered_density = -1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("scenario validator flags the three regime violations") {
  // Baseline regime is clean.
  CHECK(users::validate_scenario(table_spec(), 5, 500.0).empty());

  // Cluster diameter above the coverage radius: error.
  auto wide = table_spec();
  wide.cluster_radius_m = 300.0;
  const auto d1 = users::validate_scenario(wide, 5, 500.0);
  REQUIRE(d1.size() >= 1);
  CHECK(d1[0].severity == users::Diagnostic::Severity::Error);

  // Area too small relative to total drone coverage: warning.
  users::PopulationSpec crowded{
      2, 50.0, 0.02, 3e-6,
      ConvexPolygon({{0, 0}, {3000, 0}, {3000, 3000}, {0, 3000}})};
  const auto d2 = users::validate_scenario(crowded, 5, 500.0);
  REQUIRE(d2.size() >= 1);
  CHECK(d2[0].severity == users::Diagnostic::Severity::Warning);

  // Background swamping the clusters: warning.
  auto noisy = table_spec();
  noisy.background_density = 1e-4;
  const auto d3 = users::validate_scenario(noisy, 5, 500.0);
  REQUIRE(d3.size() >= 1);
  CHECK(d3.back().severity == users::Diagnostic::Severity::Warning);
}

TEST_CASE("generation is deterministic and clusters fit inside the area") {
  const auto spec = table_spec();
  const auto a = users::UserPopulation::generate(spec, 42);
  const auto b = users::UserPopulation::generate(spec, 42);
  REQUIRE(a.size() == b.size());
  const auto ua = a.users();
  const auto ub = b.users();
  for (std::size_t i = 0; i < ua.size(); ++i) {
    CHECK(ua[i].pos.x == ub[i].pos.x);
    CHECK(ua[i].pos.y == ub[i].pos.y);
    CHECK(ua[i].cluster_id == ub[i].cluster_id);
  }
  REQUIRE(a.cluster_centers().size() == 2);
  for (const auto& c : a.cluster_centers()) {
    CHECK(spec.area.contains_disk({c, spec.cluster_radius_m}));
  }
  // Every clustered user lies within R_c of its center; everyone is in
  // the area.
  for (const auto& u : ua) {
    CHECK(spec.area.contains(u.pos));
    if (u.cluster_id >= 0) {
      CHECK(geom::distance(u.pos, a.cluster_centers()[u.cluster_id]) <=
            spec.cluster_radius_m + 1e-9);
    }
  }
  const auto c = users::UserPopulation::generate(spec, 43);
  CHECK(c.size() != a.size());  // overwhelmingly likely for Poisson ~8k
}

TEST_CASE("sample means match the Poisson intensities within 2 percent") {
  auto spec = table_spec();
  spec.n_clusters = 1;
  const double expect_cluster =
      spec.clustered_density * kPi * spec.cluster_radius_m *
      spec.cluster_radius_m;                                // ~3927
  const double expect_bg = spec.background_density * 1e8;   // 300
  double sum_cluster = 0.0, sum_bg = 0.0;
  const int draws = 1000;
  for (int i = 0; i < draws; ++i) {
    const auto pop =
        users::UserPopulation::generate(spec, 1000 + static_cast<std::uint64_t>(i));
    long in_cluster = 0;
    for (const auto& u : pop.users()) {
      if (u.cluster_id >= 0) ++in_cluster;
    }
    sum_cluster += static_cast<double>(in_cluster);
    sum_bg += static_cast<double>(pop.size()) - static_cast<double>(in_cluster);
  }
  CHECK(std::abs(sum_cluster / draws - expect_cluster) <=
        0.02 * expect_cluster);
  CHECK(std::abs(sum_bg / draws - expect_bg) <= 0.02 * expect_bg);
}

TEST_CASE("grid-indexed counting equals brute force on randomized queries") {
  const auto pop = users::UserPopulation::generate(table_spec(), 7);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-2000.0, 12000.0);
  std::uniform_real_distribution<double> r(1.0, 3000.0);
  for (int q = 0; q < 1000; ++q) {
    const geom::Disk d{{u(rng), u(rng)}, r(rng)};
    CHECK(pop.count_in_disk(d) == pop.count_in_disk_brute(d));
  }
}

TEST_CASE("collect_in_disk returns exactly the counted slots") {
  const auto pop = users::UserPopulation::generate(table_spec(), 9);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 10000.0);
  for (int q = 0; q < 50; ++q) {
    const geom::Disk d{{u(rng), u(rng)}, 800.0};
    std::vector<std::uint32_t> slots;
    pop.collect_in_disk(d, slots);
    CHECK(static_cast<long>(slots.size()) == pop.count_in_disk(d));
    for (const auto s : slots) CHECK(s < pop.size());
  }
}

TEST_CASE("counting handles empty and degenerate populations") {
  const auto empty = users::UserPopulation::from_users({}, {});
  CHECK(empty.count_in_disk({{0, 0}, 100.0}) == 0);
  const auto one = users::UserPopulation::from_users({{{5, 5}, -1}}, {});
  CHECK(one.count_in_disk({{5, 5}, 1.0}) == 1);
  CHECK(one.count_in_disk({{50, 50}, 1.0}) == 0);
}

TEST_CASE("csv round trip preserves users and centers") {
  auto spec = table_spec();
  spec.n_clusters = 1;
  const auto pop = users::UserPopulation::generate(spec, 3);
  std::stringstream ss;
  pop.export_csv(ss);
  const auto back = users::UserPopulation::import_csv(ss);
  REQUIRE(back.size() == pop.size());
  REQUIRE(back.cluster_centers().size() == 1);
  const auto ua = pop.users();
  const auto ub = back.users();
  for (std::size_t i = 0; i < ua.size(); ++i) {
    CHECK(ua[i].pos.x == doctest::Approx(ub[i].pos.x).epsilon(1e-9));
    CHECK(ua[i].pos.y == doctest::Approx(ub[i].pos.y).epsilon(1e-9));
    CHECK(ua[i].cluster_id == ub[i].cluster_id);
  }
  // Same counting behavior after the round trip.
  CHECK(pop.count_in_disk({{5000, 5000}, 2000.0}) ==
        back.count_in_disk({{5000, 5000}, 2000.0}));
  std::stringstream bad("1.0,2.0\n");
  CHECK_THROWS_AS(users::UserPopulation::import_csv(bad), std::runtime_error);
}

TEST_CASE("linkage components separate distant groups and drop noise") {
  std::vector<users::User> us;
  // Group A: 20 users in a tight blob near (1000, 1000).
  for (int i = 0; i < 20; ++i) {
    us.push_back({{1000.0 + 3.0 * i, 1000.0 + 2.0 * (i % 5)}, 0});
  }
  // Group B: 15 users chained 40 m apart (transitively linked at 60 m).
  for (int i = 0; i < 15; ++i) {
    us.push_back({{5000.0 + 40.0 * i, 5000.0}, 1});
  }
  // Isolated noise, hundreds of meters from anything.
  us.push_back({{8000.0, 2000.0}, -1});
  us.push_back({{2000.0, 8000.0}, -1});
  const auto pop = users::UserPopulation::from_users(
      us, {{1000, 1000}, {5000, 5000}});

  const auto comps = pop.linkage_components(60.0, 5);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].size() + comps[1].size() == 35);
  // Components are homogeneous: all slots of one component lie in one
  // group (groups are > 60 m apart).
  for (const auto& comp : comps) {
    double lo = 1e18, hi = -1e18;
    for (const auto s : comp) {
      lo = std::min(lo, pop.position(s).x);
      hi = std::max(hi, pop.position(s).x);
    }
    CHECK((hi < 2000.0 || lo > 4000.0));
  }

  // A larger min_size filters the smaller group.
  CHECK(pop.linkage_components(60.0, 16).size() == 1);
  // A tiny link distance splits the 40 m chain apart; only the tight
  // blob survives.
  CHECK(pop.linkage_components(10.0, 15).size() == 1);
}
