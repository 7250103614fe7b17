#include "lrergo/pauli_string.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace lrergo {

Matrix pauli_matrix(char letter) {
  Matrix m(2, 2);
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0); break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
  return m;
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char take() {
    skip_ws();
    if (i >= s.size()) throw std::invalid_argument("pauli string: unexpected end of input");
    return s[i++];
  }
  void expect(char c) {
    char got = take();
    if (got != c)
      throw std::invalid_argument(std::string("pauli string: expected '") + c + "' but found '" + got +
                                  "' in \"" + s + "\"");
  }
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("pauli string: " + why + " in \"" + s + "\"");
  }
};

double parse_real(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.i;
  if (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) ++c.i;
  bool digits = false;
  while (c.i < c.s.size() && (std::isdigit(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '.')) {
    digits = true;
    ++c.i;
  }
  if (c.i < c.s.size() && (c.s[c.i] == 'e' || c.s[c.i] == 'E') && digits) {
    ++c.i;
    if (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) ++c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  }
  if (!digits) c.fail("expected a number");
  return std::stod(c.s.substr(start, c.i - start));
}

// real | real i | real+real i | real-real i | (re,im) | i | -i
cplx parse_complex(Cursor& c) {
  c.skip_ws();
  if (c.peek() == '(') {
    c.take();
    double re = parse_real(c);
    c.expect(',');
    double im = parse_real(c);
    c.expect(')');
    return {re, im};
  }
  double sign = 1.0;
  if (c.peek() == '+' || c.peek() == '-') {
    if (c.take() == '-') sign = -1.0;
    c.skip_ws();
  }
  if (c.peek() == 'i') {
    c.take();
    return {0.0, sign};
  }
  double first = sign * parse_real(c);
  if (c.i < c.s.size() && c.s[c.i] == 'i') {
    ++c.i;
    return {0.0, first};
  }
  c.skip_ws();
  if (c.peek() == '+' || c.peek() == '-') {
    std::size_t save = c.i;
    double s2 = c.take() == '-' ? -1.0 : 1.0;
    c.skip_ws();
    if (c.peek() == 'i') {
      c.take();
      return {first, s2};
    }
    // only an imaginary part may follow; otherwise rewind (not a complex tail)
    std::size_t num_start = c.i;
    double im = 0;
    bool ok = true;
    try {
      im = parse_real(c);
    } catch (const std::invalid_argument&) {
      ok = false;
    }
    if (ok && c.i < c.s.size() && c.s[c.i] == 'i') {
      ++c.i;
      return {first, s2 * im};
    }
    (void)num_start;
    c.i = save;
  }
  return {first, 0.0};
}

Site parse_site(Cursor& c) {
  c.skip_ws();
  Site site;
  if (c.peek() == '(') {
    c.take();
    site.push_back(static_cast<int>(std::llround(parse_real(c))));
    while (c.peek() == ',') {
      c.take();
      site.push_back(static_cast<int>(std::llround(parse_real(c))));
    }
    c.expect(')');
  } else {
    site.push_back(static_cast<int>(std::llround(parse_real(c))));
  }
  return site;
}

Matrix parse_matrix(Cursor& c) {
  c.expect('[');
  std::vector<std::vector<cplx>> rows;
  for (;;) {
    c.expect('[');
    std::vector<cplx> row;
    if (c.peek() != ']') {
      row.push_back(parse_complex(c));
      while (c.peek() == ',') {
        c.take();
        row.push_back(parse_complex(c));
      }
    }
    c.expect(']');
    rows.push_back(std::move(row));
    if (c.peek() == ',') {
      c.take();
      continue;
    }
    break;
  }
  c.expect(']');
  std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) c.fail("matrix must be square");
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) m(r, k) = rows[r][k];
  return m;
}

}  // namespace

PauliString PauliString::parse(const std::string& text) {
  Cursor c{text};
  PauliString ps;

  // Optional leading coefficient terminated by '*'.
  {
    std::size_t save = c.i;
    bool has_coeff = false;
    try {
      cplx z = parse_complex(c);
      c.skip_ws();
      if (c.peek() == '*') {
        c.take();
        ps.coeff = z;
        has_coeff = true;
      }
    } catch (const std::invalid_argument&) {
      has_coeff = false;
    }
    if (!has_coeff) c.i = save;
  }

  int matrix_dim = 0;
  while (!c.done()) {
    char letter = c.take();
    if (!std::isalpha(static_cast<unsigned char>(letter))) c.fail("expected a factor letter");
    c.expect('@');
    Site site = parse_site(c);
    Matrix m;
    if (letter == 'M') {
      c.skip_ws();
      c.expect('=');
      m = parse_matrix(c);
    } else {
      m = pauli_matrix(letter);
    }
    if (matrix_dim == 0)
      matrix_dim = static_cast<int>(m.rows());
    else if (matrix_dim != m.rows())
      c.fail("factors have mismatched site dimensions");
    for (const auto& f : ps.factors)
      if (f.first == site) c.fail("site " + site_str(site) + " appears twice");
    if (!ps.factors.empty() && ps.factors.front().first.size() != site.size())
      c.fail("sites have mixed dimensions");
    ps.factors.emplace_back(std::move(site), std::move(m));
  }
  if (ps.factors.empty()) c.fail("no factors");
  ps.site_dim = matrix_dim;
  return ps;
}

LocalOperator PauliString::to_operator() const {
  std::vector<Site> sites;
  sites.reserve(factors.size());
  for (const auto& f : factors) sites.push_back(f.first);
  Region support(sites);

  // Kron the factors in sorted-site order (big-endian legs).
  Matrix acc = Matrix::Identity(1, 1);
  for (const Site& s : support.sites()) {
    const Matrix* f = nullptr;
    for (const auto& p : factors)
      if (p.first == s) f = &p.second;
    const Matrix& b = *f;
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (Eigen::Index j = 0; j < acc.cols(); ++j)
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = acc(i, j) * b;
    acc = std::move(next);
  }
  return LocalOperator(support, site_dim, coeff * acc);
}

}  // namespace lrergo
