#include "lrergo/certify.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace lrergo {

CommutatorCurve commutator_norm_curve(const EvolutionEngine& eng, const LocalOperator& a,
                                      const LocalOperator& b, const std::vector<double>& times,
                                      Exec exec) {
  CommutatorCurve out;
  out.t = times;
  out.norm.resize(times.size());
  parallel_for(exec, static_cast<std::int64_t>(times.size()), [&](std::int64_t i) {
    out.norm[i] = operator_norm(commutator(evolve(eng, a, times[i]), b));
  });
  return out;
}

LRCertificate lr_certificate(const EvolutionEngine& eng, const Interaction& phi,
                             const std::vector<std::pair<LabeledOp, LabeledOp>>& pairs,
                             const std::vector<double>& times, Exec exec) {
  if (pairs.empty() || times.empty())
    throw std::invalid_argument("lr_certificate: need at least one pair and one time");

  LRCertificate cert;
  cert.lambda = phi.lambda;
  cert.interaction_norm_value = interaction_norm(phi, eng.volume);
  cert.velocity = lr_velocity(phi, eng.volume);

  const bool open_box = eng.volume.boundary == Boundary::open;
  const std::size_t nt = times.size();
  cert.rows.resize(pairs.size() * nt);

  parallel_for(exec, static_cast<std::int64_t>(cert.rows.size()), [&](std::int64_t idx) {
    const auto& [la, lb] = pairs[static_cast<std::size_t>(idx) / nt];
    const double t = times[static_cast<std::size_t>(idx) % nt];

    CertificateRow row;
    row.a_id = la.id;
    row.b_id = lb.id;
    row.t = t;
    row.distance = dist(la.op.support, lb.op.support, eng.volume);
    row.empirical = operator_norm(commutator(evolve(eng, la.op, t), lb.op));
    row.rhs = lr_bound_rhs(operator_norm(la.op), operator_norm(lb.op), la.op.support.size(),
                           lb.op.support.size(), eng.site_dim(), phi.lambda,
                           static_cast<double>(row.distance), cert.velocity, t);
    row.satisfied = row.empirical <= row.rhs + 1e-10;
    row.margin = row.rhs - row.empirical;
    if (open_box) {
      auto reach = std::min(boundary_distance(la.op.support, eng.volume),
                            boundary_distance(lb.op.support, eng.volume));
      row.boundary_affected = cert.velocity * std::abs(t) > static_cast<double>(reach);
    }
    cert.rows[idx] = std::move(row);
  });

  cert.all_satisfied = true;
  for (const auto& row : cert.rows)
    if (!row.boundary_affected && !row.satisfied) cert.all_satisfied = false;
  return cert;
}

std::vector<LocalizationRow> localization_curve(const EvolutionEngine& eng, const Interaction& phi,
                                                const LocalOperator& a, double t, int r_max,
                                                double prefactor, Exec exec) {
  if (r_max < 0) throw std::invalid_argument("localization_curve: r_max must be >= 0");
  LocalOperator xt = evolve(eng, a, t);
  const double v = lr_velocity(phi, eng.volume);
  const double amp = 2.0 * prefactor * operator_norm(a) *
                     static_cast<double>(a.support.size()) *
                     std::pow(static_cast<double>(eng.site_dim()),
                              2.0 * static_cast<double>(a.support.size()));

  std::vector<LocalizationRow> rows(static_cast<std::size_t>(r_max) + 1);
  parallel_for(exec, r_max + 1, [&](std::int64_t r) {
    Region onto = ball_extension(a.support, static_cast<int>(r), eng.volume);
    LocalOperator approx = embed(localize(xt, onto), eng.sites());
    LocalizationRow row;
    row.r = static_cast<int>(r);
    row.region_size = onto.size();
    row.empirical = operator_norm(sub(xt, approx));
    row.theoretical = amp * std::exp(-phi.lambda * (static_cast<double>(r) - v * std::abs(t)));
    rows[r] = row;
  });
  return rows;
}

std::vector<AbeliannessRow> abelianness_probe(const EvolutionEngine& eng, const LocalOperator& a,
                                              const LocalOperator& b, const Site& n, double v,
                                              int r_max, Exec exec) {
  if (static_cast<int>(n.size()) != eng.volume.dim())
    throw std::invalid_argument("abelianness_probe: step dimension does not match the lattice");
  if (l1_norm(n) == 0) throw std::invalid_argument("abelianness_probe: step must be nonzero");
  if (r_max < 0) throw std::invalid_argument("abelianness_probe: r_max must be >= 0");
  if (!(v > 0))
    throw std::invalid_argument("abelianness_probe: velocity must be positive (or infinite)");
  if (eng.volume.boundary == Boundary::periodic) {
    for (int d = 0; d < eng.volume.dim(); ++d) {
      long long reach = std::abs(static_cast<long long>(r_max) * n[d]);
      if (2 * reach > eng.volume.extent[d])
        throw guard_error("abelianness_probe: accumulated shift exceeds half the torus extent");
    }
  }

  const double tstep = std::isinf(v) ? 0.0 : static_cast<double>(l1_norm(n)) / v;
  std::vector<AbeliannessRow> rows(static_cast<std::size_t>(r_max) + 1);
  parallel_for(exec, r_max + 1, [&](std::int64_t r) {
    Site shift(n.size());
    for (std::size_t d = 0; d < n.size(); ++d) shift[d] = static_cast<int>(r) * n[d];
    double t = static_cast<double>(r) * tstep;
    LocalOperator moved = translate_op(evolve(eng, a, t), shift, eng.volume);
    rows[r] = {static_cast<int>(r), t, operator_norm(commutator(moved, b))};
  });
  return rows;
}

void write_certificate_json(std::ostream& os, const LRCertificate& c) {
  nlohmann::json j;
  j["lambda"] = c.lambda;
  j["interaction_norm"] = c.interaction_norm_value;
  j["velocity"] = c.velocity;
  j["all_satisfied"] = c.all_satisfied;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : c.rows) {
    j["rows"].push_back({{"a", r.a_id},
                         {"b", r.b_id},
                         {"distance", r.distance},
                         {"t", r.t},
                         {"empirical", r.empirical},
                         {"rhs", r.rhs},
                         {"satisfied", r.satisfied},
                         {"margin", r.margin},
                         {"boundary_affected", r.boundary_affected}});
  }
  os << j.dump(2) << '\n';
}

void write_certificate_table(std::ostream& os, const LRCertificate& c) {
  char line[256];
  std::snprintf(line, sizeof line, "lambda=%s  norm=%s  velocity=%s\n", fmt_num(c.lambda).c_str(),
                fmt_num(c.interaction_norm_value).c_str(), fmt_num(c.velocity).c_str());
  os << line;
  std::snprintf(line, sizeof line, "%-10s %-10s %5s %9s %13s %13s %13s %4s %9s\n", "A", "B",
                "dist", "t", "empirical", "rhs", "margin", "ok", "boundary");
  os << line;
  for (const auto& r : c.rows) {
    std::snprintf(line, sizeof line, "%-10s %-10s %5lld %9.4f %13.6g %13.6g %13.6g %4s %9s\n",
                  r.a_id.c_str(), r.b_id.c_str(), static_cast<long long>(r.distance), r.t,
                  r.empirical, r.rhs, r.margin, r.satisfied ? "yes" : "no",
                  r.boundary_affected ? "yes" : "no");
    os << line;
  }
  os << (c.all_satisfied ? "certificate: satisfied\n" : "certificate: VIOLATED\n");
}

void write_localization_csv(std::ostream& os, const std::vector<LocalizationRow>& rows) {
  os << "r,region_size,empirical,theoretical\n";
  for (const auto& r : rows)
    os << r.r << ',' << r.region_size << ',' << fmt_num(r.empirical) << ','
       << fmt_num(r.theoretical) << '\n';
}

void write_abelianness_csv(std::ostream& os, const std::vector<AbeliannessRow>& rows) {
  os << "r,t,norm\n";
  for (const auto& r : rows)
    os << r.r << ',' << fmt_num(r.t) << ',' << fmt_num(r.norm) << '\n';
}

}  // namespace lrergo
