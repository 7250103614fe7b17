#include "lrergo/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace lrergo {

SweepMode sweep_mode_from_name(const std::string& name) {
  if (name == "plain") return SweepMode::plain;
  if (name == "oscillatory") return SweepMode::oscillatory;
  if (name == "mean_square") return SweepMode::mean_square;
  if (name == "moment") return SweepMode::moment;
  throw config_error("unknown sweep mode: " + name);
}

std::string sweep_mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::plain: return "plain";
    case SweepMode::oscillatory: return "oscillatory";
    case SweepMode::mean_square: return "mean_square";
    case SweepMode::moment: return "moment";
  }
  return "plain";
}

std::vector<SweepCell> convergence_sweep(const State& s, const EvolutionEngine& eng,
                                         const LocalOperator& a, const LocalOperator& b,
                                         const RaySpec& base_ray,
                                         const std::vector<double>& velocities,
                                         const std::vector<double>& horizons, SweepMode mode,
                                         int moment_power, const QuadratureSpec& quad, Exec exec) {
  if (velocities.empty() || horizons.empty())
    throw std::invalid_argument("convergence_sweep: empty velocity or horizon grid");
  if (mode == SweepMode::moment && moment_power < 1)
    throw std::invalid_argument("convergence_sweep: moment power must be >= 1");

  cplx ea = expect(s, a), eb = expect(s, b);
  const std::size_t nv = velocities.size(), nt = horizons.size();
  std::vector<SweepCell> cells(nv * nt);

  parallel_for(exec, static_cast<std::int64_t>(cells.size()), [&](std::int64_t idx) {
    const std::size_t iv = static_cast<std::size_t>(idx) / nt;
    const std::size_t it = static_cast<std::size_t>(idx) % nt;
    RaySpec ray = base_ray;
    ray.v = velocities[iv];
    double T = horizons[it];

    SweepCell& c = cells[idx];
    c.mode = mode;
    c.v = ray.v;
    c.T = T;
    auto clock0 = std::chrono::steady_clock::now();
    switch (mode) {
      case SweepMode::plain: {
        AverageResult r = ray_average(s, eng, a, b, ray, T, quad, Exec::serial);
        c.value = r.value;
        c.reference = ea * eb;
        c.quad_error = r.quad_error;
        break;
      }
      case SweepMode::oscillatory: {
        OscillatoryResult r = oscillatory_ray_average(s, eng, a, b, ray, T, quad, Exec::serial);
        c.value = r.connected.value;
        c.reference = cplx{};
        c.quad_error = r.connected.quad_error;
        break;
      }
      case SweepMode::mean_square: {
        ScalarWithError r = mean_square(s, eng, a, b, ray, T, T, quad, Exec::serial);
        c.value = r.value;
        c.reference = ea * eb;
        c.quad_error = r.quad_error;
        break;
      }
      case SweepMode::moment: {
        ScalarWithError r = moment(s, eng, a, ray, T, moment_power, quad, Exec::serial);
        c.value = r.value;
        c.reference = ray.phase_rate() == 0.0 ? cplx(std::pow(ea, moment_power)) : cplx{};
        c.quad_error = r.quad_error;
        break;
      }
    }
    c.abs_deviation = std::abs(c.value - c.reference);
    c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          clock0)
                    .count();
  });
  return cells;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  os << "mode,v,T,value_re,value_im,reference_re,reference_im,abs_deviation,quad_error,wall_ms\n";
  char wall[32];
  for (const auto& c : cells) {
    std::snprintf(wall, sizeof wall, "%.3f", c.wall_ms);
    os << sweep_mode_name(c.mode) << ',' << fmt_num(c.v) << ',' << fmt_num(c.T) << ','
       << fmt_num(c.value.real()) << ',' << fmt_num(c.value.imag()) << ','
       << fmt_num(c.reference.real()) << ',' << fmt_num(c.reference.imag()) << ','
       << fmt_num(c.abs_deviation) << ',' << fmt_num(c.quad_error) << ',' << wall << '\n';
  }
}

}  // namespace lrergo
