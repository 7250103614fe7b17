#include "lrergo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "lrergo/common.hpp"

namespace lrergo {

std::int64_t l1_norm(const Site& s) {
  std::int64_t n = 0;
  for (int c : s) n += std::abs(static_cast<std::int64_t>(c));
  return n;
}

Site site_add(const Site& a, const Site& b) {
  if (a.size() != b.size()) throw std::invalid_argument("site_add: dimension mismatch");
  Site r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::string site_str(const Site& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

Region::Region(std::vector<Site> sites) : sites_(std::move(sites)) {
  for (const Site& s : sites_)
    if (s.size() != sites_[0].size()) throw std::invalid_argument("Region: mixed site dimensions");
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

bool Region::contains(const Site& s) const {
  return std::binary_search(sites_.begin(), sites_.end(), s);
}

bool Region::contains(const Region& other) const {
  return std::includes(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end());
}

std::ptrdiff_t Region::index_of(const Site& s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  if (it == sites_.end() || *it != s) return -1;
  return it - sites_.begin();
}

Region region_union(const Region& a, const Region& b) {
  std::vector<Site> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.sites().begin(), a.sites().end(), b.sites().begin(), b.sites().end(),
                 std::back_inserter(out));
  return Region(std::move(out));
}

Region region_intersect(const Region& a, const Region& b) {
  std::vector<Site> out;
  std::set_intersection(a.sites().begin(), a.sites().end(), b.sites().begin(), b.sites().end(),
                        std::back_inserter(out));
  return Region(std::move(out));
}

Region region_minus(const Region& a, const Region& b) {
  std::vector<Site> out;
  std::set_difference(a.sites().begin(), a.sites().end(), b.sites().begin(), b.sites().end(),
                      std::back_inserter(out));
  return Region(std::move(out));
}

std::int64_t Torus::volume() const {
  std::int64_t v = 1;
  for (int L : extent) {
    if (L < 1) throw std::invalid_argument("Torus: extent must be positive");
    v *= L;
  }
  return v;
}

bool Torus::in_box(const Site& s) const {
  if (static_cast<int>(s.size()) != dim()) return false;
  for (int d = 0; d < dim(); ++d)
    if (s[d] < 0 || s[d] >= extent[d]) return false;
  return true;
}

Site Torus::wrap(const Site& s) const {
  if (static_cast<int>(s.size()) != dim()) throw std::invalid_argument("Torus::wrap: dimension mismatch");
  Site r(s.size());
  for (int d = 0; d < dim(); ++d) {
    int m = s[d] % extent[d];
    r[d] = m < 0 ? m + extent[d] : m;
  }
  return r;
}

Region Torus::all_sites() const {
  std::vector<Site> sites;
  sites.reserve(static_cast<std::size_t>(volume()));
  Site cur(dim(), 0);
  for (;;) {
    sites.push_back(cur);
    int d = dim() - 1;
    for (; d >= 0; --d) {
      if (++cur[d] < extent[d]) break;
      cur[d] = 0;
    }
    if (d < 0) break;
  }
  return Region(std::move(sites));
}

namespace {

std::int64_t site_dist_plain(const Site& a, const Site& b) {
  std::int64_t n = 0;
  for (std::size_t d = 0; d < a.size(); ++d)
    n += std::abs(static_cast<std::int64_t>(a[d]) - b[d]);
  return n;
}

template <class PairDist>
std::int64_t min_pairwise(const Region& a, const Region& b, PairDist pd) {
  if (a.empty() || b.empty()) throw std::invalid_argument("dist: empty region");
  std::int64_t best = -1;
  for (const Site& x : a.sites())
    for (const Site& y : b.sites()) {
      std::int64_t d = pd(x, y);
      if (best < 0 || d < best) best = d;
    }
  return best;
}

template <class PairDist>
std::int64_t max_pairwise(const Region& a, PairDist pd) {
  if (a.empty()) throw std::invalid_argument("diam: empty region");
  std::int64_t best = 0;
  for (const Site& x : a.sites())
    for (const Site& y : a.sites()) best = std::max(best, pd(x, y));
  return best;
}

}  // namespace

std::int64_t site_dist(const Site& a, const Site& b, const Torus& t) {
  if (t.boundary == Boundary::open) return site_dist_plain(a, b);
  std::int64_t n = 0;
  for (int d = 0; d < t.dim(); ++d) {
    std::int64_t raw = std::abs(static_cast<std::int64_t>(a[d]) - b[d]) % t.extent[d];
    n += std::min(raw, t.extent[d] - raw);
  }
  return n;
}

std::int64_t dist(const Region& a, const Region& b) {
  return min_pairwise(a, b, site_dist_plain);
}

std::int64_t dist(const Region& a, const Region& b, const Torus& t) {
  return min_pairwise(a, b, [&](const Site& x, const Site& y) { return site_dist(x, y, t); });
}

std::int64_t diam(const Region& a) { return max_pairwise(a, site_dist_plain); }

std::int64_t diam(const Region& a, const Torus& t) {
  return max_pairwise(a, [&](const Site& x, const Site& y) { return site_dist(x, y, t); });
}

Region translate(const Region& x, const Site& n) {
  std::vector<Site> out;
  out.reserve(x.size());
  for (const Site& s : x.sites()) out.push_back(site_add(s, n));
  return Region(std::move(out));
}

Region translate(const Region& x, const Site& n, const Torus& t) {
  std::vector<Site> out;
  out.reserve(x.size());
  for (const Site& s : x.sites()) {
    Site img = site_add(s, n);
    if (t.boundary == Boundary::periodic) {
      img = t.wrap(img);
    } else if (!t.in_box(img)) {
      throw guard_error("translate: image " + site_str(img) + " leaves the open box");
    }
    out.push_back(std::move(img));
  }
  return Region(std::move(out));
}

namespace {

// All sites within l1 distance r of the origin, offset by s.
void add_ball(std::set<Site>& acc, const Site& s, int r) {
  const int D = static_cast<int>(s.size());
  std::vector<int> offs(D, 0);
  // Depth-first over axes with the remaining l1 budget.
  auto rec = [&](auto&& self, int axis, int budget) -> void {
    if (axis == D - 1) {
      for (int v = -budget; v <= budget; ++v) {
        offs[axis] = v;
        Site p(s);
        for (int d = 0; d < D; ++d) p[d] += offs[d];
        acc.insert(std::move(p));
      }
      return;
    }
    for (int v = -budget; v <= budget; ++v) {
      offs[axis] = v;
      self(self, axis + 1, budget - std::abs(v));
    }
  };
  if (D == 0) return;
  rec(rec, 0, r);
}

}  // namespace

Region ball_extension(const Region& x, int r) {
  if (r < 0) throw std::invalid_argument("ball_extension: negative radius");
  std::set<Site> acc;
  for (const Site& s : x.sites()) add_ball(acc, s, r);
  return Region(std::vector<Site>(acc.begin(), acc.end()));
}

Region ball_extension(const Region& x, int r, const Torus& t) {
  Region raw = ball_extension(x, r);
  std::vector<Site> out;
  out.reserve(raw.size());
  for (const Site& s : raw.sites()) {
    if (t.boundary == Boundary::periodic)
      out.push_back(t.wrap(s));
    else if (t.in_box(s))
      out.push_back(s);
  }
  return Region(std::move(out));
}

std::int64_t boundary_distance(const Region& x, const Torus& t) {
  if (x.empty()) throw std::invalid_argument("boundary_distance: empty region");
  if (t.boundary == Boundary::periodic)
    throw std::invalid_argument("boundary_distance: periodic torus has no boundary");
  std::int64_t best = -1;
  for (const Site& s : x.sites())
    for (int d = 0; d < t.dim(); ++d) {
      std::int64_t lo = s[d] + 1;               // to the first site below the box
      std::int64_t hi = t.extent[d] - s[d];     // to the first site above the box
      std::int64_t m = std::min(lo, hi);
      if (best < 0 || m < best) best = m;
    }
  return best;
}

RationalDirection RationalDirection::of(std::vector<long long> q) {
  long long den = 0;
  for (long long c : q) den += std::llabs(c);
  if (den == 0) throw std::invalid_argument("RationalDirection: q must be nonzero");
  RationalDirection r;
  r.q = std::move(q);
  r.den = den;
  return r;
}

Site ray_point(double v, const RationalDirection& q, double t) {
  Site p(q.dim());
  for (int d = 0; d < q.dim(); ++d) {
    double x = v * t * static_cast<double>(q.q[d]) / static_cast<double>(q.den);
    p[d] = static_cast<int>(std::floor(x));
  }
  return p;
}

std::vector<double> ray_breakpoints(double v, const RationalDirection& q, double T) {
  std::vector<double> bs;
  if (T <= 0) return bs;
  for (int d = 0; d < q.dim(); ++d) {
    double rate = std::abs(v * static_cast<double>(q.q[d]) / static_cast<double>(q.den));
    if (rate == 0) continue;
    double step = 1.0 / rate;
    for (long long m = 1;; ++m) {
      double t = static_cast<double>(m) * step;
      if (t >= T - 1e-12) break;
      bs.push_back(t);
    }
  }
  std::sort(bs.begin(), bs.end());
  std::vector<double> out;
  for (double t : bs)
    if (out.empty() || t - out.back() > 1e-12) out.push_back(t);
  return out;
}

}  // namespace lrergo
