#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lrergo {

using cplx = std::complex<double>;

// Config-level problems (bad file, unknown key, unresolved observable name,
// volume over the dimension cap). CLI exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Runtime numerical guards (imaginary-time overflow, torus wrap guards,
// quadrature preconditions). CLI exit code 3.
struct guard_error : std::runtime_error {
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

struct dimension_cap_error : config_error {
  explicit dimension_cap_error(const std::string& what) : config_error(what) {}
};

// Hilbert-space dimension ceiling; override with env LR_ERGO_DIM_CAP.
std::int64_t dim_cap();

// Shortest text that round-trips a double exactly; used for every numeric
// value written to CSV/JSON so reruns are byte-identical.
std::string fmt_num(double x);
std::string fmt_cplx(const cplx& z);

// Deterministic RNG: splitmix64 stream plus a hand-rolled Box-Muller, so the
// byte stream does not depend on the standard library's distribution choices.
struct Rng {
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 1) {}
  double uniform();             // [0,1)
  double normal();
  cplx cnormal() { return {normal(), normal()}; }

 private:
  std::uint64_t next64();
  std::uint64_t s_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace lrergo
