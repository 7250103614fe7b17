#pragma once

#include <iosfwd>
#include <string>

#include "lrergo/model.hpp"
#include "lrergo/parallel.hpp"
#include "lrergo/states.hpp"

namespace lrergo {

struct LabeledOp {
  std::string id;
  LocalOperator op;
};

// || [tau_t(A), B] || on a time grid; the workhorse behind the certificate.
struct CommutatorCurve {
  std::vector<double> t;
  std::vector<double> norm;
};

CommutatorCurve commutator_norm_curve(const EvolutionEngine& eng, const LocalOperator& a,
                                      const LocalOperator& b, const std::vector<double>& times,
                                      Exec exec = Exec::openmp);

// One (pair, time) check of the commutator bound. `satisfied` compares with a
// 1e-10 slack; `boundary_affected` flags rows of an open box whose light cone
// v|t| reaches the boundary, where the infinite-lattice bound need not apply.
struct CertificateRow {
  std::string a_id, b_id;
  std::int64_t distance = 0;
  double t = 0;
  double empirical = 0;
  double rhs = 0;
  bool satisfied = false;
  double margin = 0;  // rhs - empirical
  bool boundary_affected = false;
};

struct LRCertificate {
  double lambda = 0;
  double interaction_norm_value = 0;
  double velocity = 0;
  std::vector<CertificateRow> rows;
  bool all_satisfied = false;  // over rows that are not boundary-affected
};

LRCertificate lr_certificate(const EvolutionEngine& eng, const Interaction& phi,
                             const std::vector<std::pair<LabeledOp, LabeledOp>>& pairs,
                             const std::vector<double>& times, Exec exec = Exec::openmp);

// Error of compressing tau_t(A) onto the r-ball around its support, against
// the certificate envelope 2 C ||A|| |supp| N^(2|supp|) e^(-lambda (r - v|t|)).
struct LocalizationRow {
  int r = 0;
  std::size_t region_size = 0;
  double empirical = 0;
  double theoretical = 0;
};

std::vector<LocalizationRow> localization_curve(const EvolutionEngine& eng, const Interaction& phi,
                                                const LocalOperator& a, double t, int r_max,
                                                double prefactor = 4.0, Exec exec = Exec::openmp);

// || [iota_{rn}(tau_{r |n|/v}(A)), B] || for r = 0..r_max; decay along a
// space-like sequence. v may be +infinity (no time component).
struct AbeliannessRow {
  int r = 0;
  double t = 0;
  double norm = 0;
};

std::vector<AbeliannessRow> abelianness_probe(const EvolutionEngine& eng, const LocalOperator& a,
                                              const LocalOperator& b, const Site& n, double v,
                                              int r_max, Exec exec = Exec::openmp);

void write_certificate_json(std::ostream& os, const LRCertificate& c);
void write_certificate_table(std::ostream& os, const LRCertificate& c);
void write_localization_csv(std::ostream& os, const std::vector<LocalizationRow>& rows);
void write_abelianness_csv(std::ostream& os, const std::vector<AbeliannessRow>& rows);

}  // namespace lrergo
