#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrergo/common.hpp"
#include "lrergo/lattice.hpp"

using namespace lrergo;

TEST_CASE("region normalization: sorted, deduplicated, lexicographic") {
  Region r({{1, 0}, {0, 1}, {1, 0}, {0, 0}});
  REQUIRE(r.size() == 3);
  CHECK(r.sites()[0] == Site{0, 0});
  CHECK(r.sites()[1] == Site{0, 1});
  CHECK(r.sites()[2] == Site{1, 0});
  CHECK(r.contains(Site{0, 1}));
  CHECK(r.index_of(Site{1, 0}) == 2);
  CHECK(r.index_of(Site{2, 2}) == -1);
}

TEST_CASE("region set operations") {
  Region a({{0}, {1}, {2}});
  Region b({{2}, {3}});
  CHECK(region_union(a, b) == Region({{0}, {1}, {2}, {3}}));
  CHECK(region_intersect(a, b) == Region({{2}}));
  CHECK(region_minus(a, b) == Region({{0}, {1}}));
  CHECK(a.contains(Region({{0}, {2}})));
  CHECK(!a.contains(Region({{0}, {3}})));
}

TEST_CASE("wrapped distance on a periodic chain") {
  Torus t{{8}, Boundary::periodic};
  CHECK(dist(Region({{0}}), Region({{7}}), t) == 1);
  CHECK(dist(Region({{0}}), Region({{4}}), t) == 4);
  CHECK(dist(Region({{0}}), Region({{5}}), t) == 3);
  Torus open{{8}, Boundary::open};
  CHECK(dist(Region({{0}}), Region({{7}}), open) == 7);
  CHECK(dist(Region({{0}}), Region({{7}})) == 7);
}

TEST_CASE("dist errors on empty regions") {
  Torus t{{4}, Boundary::periodic};
  CHECK_THROWS_AS((void)dist(Region(), Region({{0}}), t), std::invalid_argument);
  CHECK_THROWS_AS((void)diam(Region()), std::invalid_argument);
}

TEST_CASE("dist symmetry and the intersection rule (open boundary)") {
  Torus t{{6, 6}, Boundary::open};
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    auto rnd_region = [&] {
      std::vector<Site> sites;
      int n = 1 + static_cast<int>(rng.uniform() * 3);
      for (int i = 0; i < n; ++i)
        sites.push_back({static_cast<int>(rng.uniform() * 6), static_cast<int>(rng.uniform() * 6)});
      return Region(sites);
    };
    Region a = rnd_region(), b = rnd_region();
    CHECK(dist(a, b, t) == dist(b, a, t));
    bool meets = !region_intersect(a, b).empty();
    CHECK((dist(a, b, t) == 0) == meets);
  }
}

TEST_CASE("translation invariance of wrapped distance") {
  Torus t{{5, 7}, Boundary::periodic};
  Region a({{0, 1}, {2, 3}});
  Region b({{4, 0}});
  std::int64_t d0 = dist(a, b, t);
  for (int nx = -6; nx <= 6; nx += 3)
    for (int ny = -6; ny <= 6; ny += 2) {
      Site n{nx, ny};
      CHECK(dist(translate(a, n, t), translate(b, n, t), t) == d0);
    }
}

TEST_CASE("translate wraps on periodic and errors off the open box") {
  Torus per{{8}, Boundary::periodic};
  CHECK(translate(Region({{7}}), Site{1}, per) == Region({{0}}));
  CHECK(translate(Region({{0}}), Site{-1}, per) == Region({{7}}));
  Torus open{{8}, Boundary::open};
  CHECK(translate(Region({{3}}), Site{4}, open) == Region({{7}}));
  CHECK_THROWS_AS(translate(Region({{7}}), Site{1}, open), guard_error);
}

TEST_CASE("ball extension") {
  CHECK(ball_extension(Region({{0}}), 1) == Region({{-1}, {0}, {1}}));
  CHECK(ball_extension(Region({{0, 0}}), 1) ==
        Region({{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}}));
  Torus open{{8}, Boundary::open};
  CHECK(ball_extension(Region({{0}}), 2, open) == Region({{0}, {1}, {2}}));
  Torus per{{4}, Boundary::periodic};
  CHECK(ball_extension(Region({{0}}), 1, per) == Region({{0}, {1}, {3}}));
  // Radius larger than the box covers everything.
  CHECK(ball_extension(Region({{1}}), 5, per) == per.all_sites());
}

TEST_CASE("diam of a ball extension grows by at most 2r") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Site> sites;
    int n = 1 + static_cast<int>(rng.uniform() * 4);
    for (int i = 0; i < n; ++i)
      sites.push_back({static_cast<int>(rng.uniform() * 9) - 4, static_cast<int>(rng.uniform() * 9) - 4});
    Region x(sites);
    int r = static_cast<int>(rng.uniform() * 3);
    CHECK(diam(ball_extension(x, r)) <= diam(x) + 2 * r);
  }
}

TEST_CASE("rational direction keeps an exact unit vector") {
  auto q = RationalDirection::of({2, -1});
  CHECK(q.den == 3);
  CHECK_THROWS_AS(RationalDirection::of({0, 0}), std::invalid_argument);
  // q and 2q define the same ray.
  auto q2 = RationalDirection::of({4, -2});
  for (double t : {0.3, 1.7, 2.9})
    CHECK(ray_point(1.25, q, t) == ray_point(1.25, q2, t));
}

TEST_CASE("ray_point floors componentwise") {
  auto q1 = RationalDirection::of({1});
  CHECK(ray_point(1.5, q1, 2.0) == Site{3});
  CHECK(ray_point(0.5, q1, 3.0) == Site{1});
  CHECK(ray_point(0.0, q1, 10.0) == Site{0});
  auto q2 = RationalDirection::of({1, -1});
  CHECK(ray_point(1.0, q2, 3.0) == Site{1, -2});
}

TEST_CASE("ray breakpoints: integer crossings in the open interval") {
  auto q = RationalDirection::of({1});
  auto bs = ray_breakpoints(0.5, q, 3.0);
  REQUIRE(bs.size() == 1);
  CHECK(bs[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ray_breakpoints(0.0, q, 5.0).empty());
  CHECK(ray_breakpoints(0.5, q, 2.0).empty());  // crossing exactly at T excluded
  auto q2 = RationalDirection::of({1, -1});
  auto bs2 = ray_breakpoints(1.0, q2, 2.0);  // rates +-1/2 cross together
  REQUIRE(bs2.size() == 0);                  // t=2 excluded
  bs2 = ray_breakpoints(1.0, q2, 2.5);
  REQUIRE(bs2.size() == 1);
  CHECK(bs2[0] == doctest::Approx(2.0));
}

TEST_CASE("ray_point is constant between breakpoints and jumps across them") {
  Rng rng(123);
  for (int trial = 0; trial < 25; ++trial) {
    double v = 0.1 + 2.4 * rng.uniform();
    auto q = RationalDirection::of({1 + static_cast<int>(rng.uniform() * 3),
                                    static_cast<int>(rng.uniform() * 5) - 2});
    double T = 1.0 + 4.0 * rng.uniform();
    auto bs = ray_breakpoints(v, q, T);
    std::vector<double> edges{0.0};
    edges.insert(edges.end(), bs.begin(), bs.end());
    edges.push_back(T);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      double a = edges[i], b = edges[i + 1];
      Site p1 = ray_point(v, q, a + 0.25 * (b - a));
      Site p2 = ray_point(v, q, a + 0.5 * (b - a));
      Site p3 = ray_point(v, q, a + 0.75 * (b - a));
      CHECK(p1 == p2);
      CHECK(p2 == p3);
    }
    // Across a breakpoint the index must change.
    for (double bp : bs) {
      Site before = ray_point(v, q, bp - 1e-6);
      Site after = ray_point(v, q, bp + 1e-6);
      CHECK(before != after);
    }
  }
}

TEST_CASE("torus volume, box membership, site enumeration") {
  Torus t{{2, 3}, Boundary::periodic};
  CHECK(t.volume() == 6);
  CHECK(t.all_sites().size() == 6);
  CHECK(t.all_sites().sites()[0] == Site{0, 0});
  CHECK(t.all_sites().sites()[5] == Site{1, 2});
  CHECK(t.in_box(Site{1, 2}));
  CHECK(!t.in_box(Site{2, 0}));
  CHECK(t.wrap(Site{-1, 5}) == Site{1, 2});
}

TEST_CASE("boundary distance for the safe-horizon rule") {
  Torus open{{8}, Boundary::open};
  CHECK(boundary_distance(Region({{0}}), open) == 1);
  CHECK(boundary_distance(Region({{3}}), open) == 4);
  CHECK(boundary_distance(Region({{3}, {7}}), open) == 1);
  Torus per{{8}, Boundary::periodic};
  CHECK_THROWS_AS(boundary_distance(Region({{3}}), per), std::invalid_argument);
}
