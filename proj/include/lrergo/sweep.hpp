#pragma once

#include <iosfwd>

#include "lrergo/ray_average.hpp"

namespace lrergo {

// Which averaging functional a convergence sweep drives towards its
// infinite-horizon limit.
enum class SweepMode { plain, oscillatory, mean_square, moment };

SweepMode sweep_mode_from_name(const std::string& name);
std::string sweep_mode_name(SweepMode m);

struct SweepCell {
  SweepMode mode = SweepMode::plain;
  double v = 0;
  double T = 0;
  cplx value{};
  cplx reference{};  // predicted limit: omega(A)omega(B), 0, omega(A)omega(B), omega(A)^n
  double abs_deviation = 0;
  double quad_error = 0;
  double wall_ms = 0;
};

// Evaluates the chosen functional on every (velocity, horizon) grid point.
// Cells fan out across workers; each cell runs its kernels serially, so the
// merged rows are identical for any worker count.
std::vector<SweepCell> convergence_sweep(const State& s, const EvolutionEngine& eng,
                                         const LocalOperator& a, const LocalOperator& b,
                                         const RaySpec& base_ray,
                                         const std::vector<double>& velocities,
                                         const std::vector<double>& horizons, SweepMode mode,
                                         int moment_power, const QuadratureSpec& quad,
                                         Exec exec = Exec::openmp);

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);

}  // namespace lrergo
