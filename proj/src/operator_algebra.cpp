#include "lrergo/operator_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace lrergo {

std::int64_t hilbert_dim(int site_dim, std::size_t n_sites) {
  if (site_dim < 2) throw std::invalid_argument("hilbert_dim: site_dim must be >= 2");
  std::int64_t d = 1;
  for (std::size_t i = 0; i < n_sites; ++i) {
    d *= site_dim;
    if (d > dim_cap())
      throw dimension_cap_error("Hilbert dimension " + std::to_string(site_dim) + "^" +
                                std::to_string(n_sites) + " exceeds the cap " +
                                std::to_string(dim_cap()) + " (LR_ERGO_DIM_CAP overrides)");
  }
  return d;
}

LocalOperator::LocalOperator(Region support_, int site_dim_, Matrix m)
    : support(std::move(support_)), site_dim(site_dim_), mat(std::move(m)) {
  std::int64_t d = hilbert_dim(site_dim, support.size());
  if (mat.rows() != d || mat.cols() != d)
    throw std::invalid_argument("LocalOperator: matrix is " + std::to_string(mat.rows()) + "x" +
                                std::to_string(mat.cols()) + " but the support needs " +
                                std::to_string(d));
}

LocalOperator LocalOperator::identity(const Region& support, int site_dim) {
  std::int64_t d = hilbert_dim(site_dim, support.size());
  return LocalOperator(support, site_dim, Matrix::Identity(d, d));
}

LocalOperator LocalOperator::zero(const Region& support, int site_dim) {
  std::int64_t d = hilbert_dim(site_dim, support.size());
  return LocalOperator(support, site_dim, Matrix::Zero(d, d));
}

namespace {

// Strides of each tensor leg for a sorted region: leg j has stride N^(m-1-j).
std::vector<std::int64_t> leg_strides(int site_dim, std::size_t m) {
  std::vector<std::int64_t> s(m);
  std::int64_t cur = 1;
  for (std::size_t j = m; j-- > 0;) {
    s[j] = cur;
    cur *= site_dim;
  }
  return s;
}

// offsets[i] = target-index contribution of source index i over the chosen
// target legs. legs.size() digits of i (big-endian, base N) map onto
// target strides picked by `target_strides`.
std::vector<std::int64_t> offset_table(int site_dim, const std::vector<std::int64_t>& target_strides) {
  const std::size_t m = target_strides.size();
  std::int64_t dim = 1;
  for (std::size_t i = 0; i < m; ++i) dim *= site_dim;
  std::vector<std::int64_t> off(static_cast<std::size_t>(dim), 0);
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    std::int64_t rest = idx, acc = 0;
    for (std::size_t j = m; j-- > 0;) {
      acc += (rest % site_dim) * target_strides[j];
      rest /= site_dim;
    }
    off[static_cast<std::size_t>(idx)] = acc;
  }
  return off;
}

}  // namespace

LocalOperator embed(const LocalOperator& a, const Region& larger) {
  if (larger == a.support) return a;
  if (!larger.contains(a.support))
    throw std::invalid_argument("embed: target region does not contain the support");
  const int N = a.site_dim;
  const std::size_t mT = larger.size();
  const std::int64_t dimT = hilbert_dim(N, mT);
  const auto stridesT = leg_strides(N, mT);

  std::vector<std::int64_t> supp_strides, rest_strides;
  {
    std::vector<bool> is_supp(mT, false);
    for (const Site& s : a.support.sites()) is_supp[static_cast<std::size_t>(larger.index_of(s))] = true;
    for (std::size_t j = 0; j < mT; ++j)
      (is_supp[j] ? supp_strides : rest_strides).push_back(stridesT[j]);
  }
  const auto offA = offset_table(N, supp_strides);
  const auto offR = offset_table(N, rest_strides);

  Matrix out = Matrix::Zero(dimT, dimT);
  const std::int64_t dimA = a.dim();
  for (std::int64_t b = 0; b < dimA; ++b)
    for (std::int64_t r = 0; r < dimA; ++r) {
      const cplx v = a.mat(r, b);
      if (v == cplx(0.0)) continue;
      for (std::size_t k = 0; k < offR.size(); ++k)
        out(offA[static_cast<std::size_t>(r)] + offR[k], offA[static_cast<std::size_t>(b)] + offR[k]) = v;
    }
  return LocalOperator(larger, N, std::move(out));
}

namespace {

void check_site_dims(const LocalOperator& a, const LocalOperator& b, const char* who) {
  if (a.site_dim != b.site_dim)
    throw std::invalid_argument(std::string(who) + ": site dimension mismatch (" +
                                std::to_string(a.site_dim) + " vs " + std::to_string(b.site_dim) + ")");
}

}  // namespace

LocalOperator compose(const LocalOperator& a, const LocalOperator& b) {
  check_site_dims(a, b, "compose");
  Region u = region_union(a.support, b.support);
  LocalOperator ae = embed(a, u), be = embed(b, u);
  return LocalOperator(u, a.site_dim, ae.mat * be.mat);
}

LocalOperator add(const LocalOperator& a, const LocalOperator& b) {
  check_site_dims(a, b, "add");
  Region u = region_union(a.support, b.support);
  LocalOperator ae = embed(a, u), be = embed(b, u);
  return LocalOperator(u, a.site_dim, ae.mat + be.mat);
}

LocalOperator sub(const LocalOperator& a, const LocalOperator& b) {
  return add(a, scale(-1.0, b));
}

LocalOperator scale(const cplx& c, const LocalOperator& a) {
  return LocalOperator(a.support, a.site_dim, c * a.mat);
}

LocalOperator adjoint(const LocalOperator& a) {
  return LocalOperator(a.support, a.site_dim, a.mat.adjoint());
}

LocalOperator commutator(const LocalOperator& a, const LocalOperator& b) {
  check_site_dims(a, b, "commutator");
  Region u = region_union(a.support, b.support);
  if (region_intersect(a.support, b.support).empty()) return LocalOperator::zero(u, a.site_dim);
  LocalOperator ae = embed(a, u), be = embed(b, u);
  return LocalOperator(u, a.site_dim, ae.mat * be.mat - be.mat * ae.mat);
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  if (m.rows() == 1) return std::abs(m(0, 0));
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double operator_norm(const LocalOperator& a) { return operator_norm(a.mat); }

LocalOperator translate_op(const LocalOperator& a, const Site& n, const Torus& t) {
  Region target = translate(a.support, n, t);
  const int N = a.site_dim;
  const std::size_t m = a.support.size();
  const auto stridesNew = leg_strides(N, target.size());

  // Leg i of the source lands at the sorted position of its translated site.
  std::vector<std::int64_t> image_strides(m);
  for (std::size_t i = 0; i < m; ++i) {
    Site img = site_add(a.support.sites()[i], n);
    if (t.boundary == Boundary::periodic) img = t.wrap(img);
    image_strides[i] = stridesNew[static_cast<std::size_t>(target.index_of(img))];
  }
  const auto newIdx = offset_table(N, image_strides);

  const std::int64_t d = a.dim();
  Matrix out(d, d);
  for (std::int64_t b = 0; b < d; ++b)
    for (std::int64_t r = 0; r < d; ++r)
      out(newIdx[static_cast<std::size_t>(r)], newIdx[static_cast<std::size_t>(b)]) = a.mat(r, b);
  return LocalOperator(target, N, std::move(out));
}

LocalOperator localize(const LocalOperator& a, const Region& onto) {
  Region keep = region_intersect(a.support, onto);
  if (keep == a.support) return a;
  const int N = a.site_dim;
  const std::size_t m = a.support.size();
  const auto strides = leg_strides(N, m);

  std::vector<std::int64_t> keep_strides, tr_strides;
  for (std::size_t j = 0; j < m; ++j) {
    if (keep.contains(a.support.sites()[j]))
      keep_strides.push_back(strides[j]);
    else
      tr_strides.push_back(strides[j]);
  }
  const auto offK = offset_table(N, keep_strides);
  const auto offT = offset_table(N, tr_strides);

  const std::int64_t dimK = static_cast<std::int64_t>(offK.size());
  Matrix out = Matrix::Zero(dimK, dimK);
  for (std::int64_t b = 0; b < dimK; ++b)
    for (std::int64_t r = 0; r < dimK; ++r) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < offT.size(); ++k)
        acc += a.mat(offK[static_cast<std::size_t>(r)] + offT[k],
                     offK[static_cast<std::size_t>(b)] + offT[k]);
      out(r, b) = acc / static_cast<double>(offT.size());
    }
  return LocalOperator(keep, N, std::move(out));
}

cplx trace_of(const LocalOperator& a) { return a.mat.trace(); }

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace lrergo
