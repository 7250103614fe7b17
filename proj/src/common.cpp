#include "lrergo/common.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace lrergo {

std::int64_t dim_cap() {
  static const std::int64_t cap = [] {
    if (const char* env = std::getenv("LR_ERGO_DIM_CAP")) {
      char* end = nullptr;
      long long v = std::strtoll(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::int64_t>(v);
    }
    return static_cast<std::int64_t>(1) << 14;
  }();
  return cap;
}

std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_cplx(const cplx& z) {
  return fmt_num(z.real()) + (z.imag() < 0 ? "" : "+") + fmt_num(z.imag()) + "i";
}

std::uint64_t Rng::next64() {
  // splitmix64; fixed algorithm so streams are identical on every platform.
  s_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0, u2 = 0;
  do {
    u1 = uniform();
  } while (u1 <= 0);
  u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

}  // namespace lrergo
