#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lrergo {

// One integer coordinate per axis; lexicographic order everywhere.
using Site = std::vector<int>;

std::int64_t l1_norm(const Site& s);
Site site_add(const Site& a, const Site& b);
std::string site_str(const Site& s);

// Finite set of sites, sorted lexicographically and deduplicated.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Site> sites);
  Region(std::initializer_list<Site> sites) : Region(std::vector<Site>(sites)) {}

  const std::vector<Site>& sites() const { return sites_; }
  bool empty() const { return sites_.empty(); }
  std::size_t size() const { return sites_.size(); }
  int dim() const { return sites_.empty() ? 0 : static_cast<int>(sites_[0].size()); }
  bool contains(const Site& s) const;
  bool contains(const Region& other) const;
  // Position of s in the sorted site list; -1 if absent.
  std::ptrdiff_t index_of(const Site& s) const;

  friend bool operator==(const Region& a, const Region& b) { return a.sites_ == b.sites_; }
  friend bool operator<(const Region& a, const Region& b) { return a.sites_ < b.sites_; }

 private:
  std::vector<Site> sites_;
};

Region region_union(const Region& a, const Region& b);
Region region_intersect(const Region& a, const Region& b);
Region region_minus(const Region& a, const Region& b);

enum class Boundary { periodic, open };

// Finite box [0, L_d) per axis; periodic identifies opposite faces.
struct Torus {
  std::vector<int> extent;
  Boundary boundary = Boundary::periodic;

  int dim() const { return static_cast<int>(extent.size()); }
  std::int64_t volume() const;
  bool in_box(const Site& s) const;
  Site wrap(const Site& s) const;  // canonical representative in the box
  Region all_sites() const;
};

// Plain Z^D metric (no torus): min pairwise l1 distance, max pairwise for diam.
// Both error on empty regions.
std::int64_t dist(const Region& a, const Region& b);
std::int64_t dist(const Region& a, const Region& b, const Torus& t);
std::int64_t diam(const Region& a);
std::int64_t diam(const Region& a, const Torus& t);
std::int64_t site_dist(const Site& a, const Site& b, const Torus& t);

// Shift by n. The torus overload wraps when periodic and errors when an open
// image leaves the box.
Region translate(const Region& x, const Site& n);
Region translate(const Region& x, const Site& n, const Torus& t);

// Union of closed l1 balls of radius r; the torus overload clips to the box
// (open) or wraps (periodic).
Region ball_extension(const Region& x, int r);
Region ball_extension(const Region& x, int r, const Torus& t);

// Nearest distance from any site of x to the exterior of an open box; used by
// the certificate safe-horizon rule.
std::int64_t boundary_distance(const Region& x, const Torus& t);

// Direction q in Z^D (not all zero) with the exact rational unit vector
// q / |q|_1 carried as (q_i, den).
struct RationalDirection {
  std::vector<long long> q;
  long long den = 0;  // |q|_1

  static RationalDirection of(std::vector<long long> q);
  int dim() const { return static_cast<int>(q.size()); }
};

// floor(v * unit(q) * t) componentwise.
Site ray_point(double v, const RationalDirection& q, double t);

// All times in (0, T) where some component of v*unit(q)*t crosses an integer;
// sorted, deduplicated at 1e-12.
std::vector<double> ray_breakpoints(double v, const RationalDirection& q, double T);

}  // namespace lrergo
