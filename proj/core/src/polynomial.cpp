#include "subcert/polynomial.hpp"

#include <numeric>
#include <stdexcept>

namespace subcert {

PolynomialSymbol::PolynomialSymbol(int n_) : n(n_) {
  if (n < 1) throw std::invalid_argument("PolynomialSymbol: n must be >= 1");
}

PolynomialSymbol PolynomialSymbol::constant(int n, std::complex<double> c) {
  PolynomialSymbol p(n);
  if (c != 0.0) p.terms[std::vector<int>(2 * n, 0)] = c;
  return p;
}

PolynomialSymbol PolynomialSymbol::coordinate(int n, int var) {
  if (var < 0 || var >= 2 * n)
    throw std::invalid_argument("PolynomialSymbol: variable out of range");
  PolynomialSymbol p(n);
  std::vector<int> e(2 * n, 0);
  e[var] = 1;
  p.terms[e] = 1.0;
  return p;
}

PolynomialSymbol PolynomialSymbol::from_quadratic(const QuadraticForm& q) {
  PolynomialSymbol p(q.space.n);
  const int d = q.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const std::complex<double> c = q.Q(i, j);
      if (c == 0.0) continue;
      std::vector<int> e(d, 0);
      e[i] += 1;
      e[j] += 1;
      p.add_term(e, c);
    }
  }
  p.prune();
  return p;
}

int PolynomialSymbol::degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms)
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

bool PolynomialSymbol::is_zero(double tol) const {
  for (const auto& [e, c] : terms)
    if (std::abs(c) > tol) return false;
  return true;
}

void PolynomialSymbol::add_term(const std::vector<int>& expo, std::complex<double> c) {
  if (static_cast<int>(expo.size()) != vars())
    throw std::invalid_argument("PolynomialSymbol: exponent size mismatch");
  auto it = terms.find(expo);
  if (it == terms.end())
    terms.emplace(expo, c);
  else
    it->second += c;
}

PolynomialSymbol PolynomialSymbol::operator+(const PolynomialSymbol& o) const {
  if (o.n != n) throw std::invalid_argument("PolynomialSymbol: mixed n");
  PolynomialSymbol out = *this;
  for (const auto& [e, c] : o.terms) out.add_term(e, c);
  out.prune(0.0);
  return out;
}

PolynomialSymbol PolynomialSymbol::operator-(const PolynomialSymbol& o) const {
  return *this + o.scaled(-1.0);
}

PolynomialSymbol PolynomialSymbol::operator*(const PolynomialSymbol& o) const {
  if (o.n != n) throw std::invalid_argument("PolynomialSymbol: mixed n");
  PolynomialSymbol out(n);
  for (const auto& [ea, ca] : terms) {
    for (const auto& [eb, cb] : o.terms) {
      std::vector<int> e(vars());
      for (int i = 0; i < vars(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  out.prune(0.0);
  return out;
}

PolynomialSymbol PolynomialSymbol::scaled(std::complex<double> c) const {
  PolynomialSymbol out(n);
  if (c == 0.0) return out;
  for (const auto& [e, v] : terms) out.terms[e] = c * v;
  return out;
}

PolynomialSymbol PolynomialSymbol::conjugate() const {
  PolynomialSymbol out(n);
  for (const auto& [e, v] : terms) out.terms[e] = std::conj(v);
  return out;
}

PolynomialSymbol PolynomialSymbol::derivative(int var) const {
  if (var < 0 || var >= vars())
    throw std::invalid_argument("PolynomialSymbol: variable out of range");
  PolynomialSymbol out(n);
  for (const auto& [e, c] : terms) {
    if (e[var] == 0) continue;
    std::vector<int> d = e;
    d[var] -= 1;
    out.add_term(d, c * static_cast<double>(e[var]));
  }
  return out;
}

PolynomialSymbol PolynomialSymbol::laplacian() const {
  PolynomialSymbol out(n);
  for (int v = 0; v < vars(); ++v)
    out = out + derivative(v).derivative(v);
  return out;
}

std::complex<double> PolynomialSymbol::operator()(const Vec& X) const {
  if (X.size() != vars())
    throw std::invalid_argument("PolynomialSymbol: point dimension mismatch");
  std::complex<double> s = 0.0;
  for (const auto& [e, c] : terms) {
    double mono = 1.0;
    for (int i = 0; i < vars(); ++i)
      for (int k = 0; k < e[i]; ++k) mono *= X(i);
    s += c * mono;
  }
  return s;
}

PolynomialSymbol PolynomialSymbol::poisson(const PolynomialSymbol& a,
                                           const PolynomialSymbol& b) {
  if (a.n != b.n) throw std::invalid_argument("PolynomialSymbol: mixed n");
  PolynomialSymbol out(a.n);
  for (int i = 0; i < a.n; ++i) {
    out = out + a.derivative(a.n + i) * b.derivative(i) -
          a.derivative(i) * b.derivative(a.n + i);
  }
  return out;
}

PolynomialSymbol PolynomialSymbol::gradient_dot(const PolynomialSymbol& a,
                                                const PolynomialSymbol& b) {
  if (a.n != b.n) throw std::invalid_argument("PolynomialSymbol: mixed n");
  PolynomialSymbol out(a.n);
  for (int v = 0; v < a.vars(); ++v) out = out + a.derivative(v) * b.derivative(v);
  return out;
}

void PolynomialSymbol::prune(double tol) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::abs(it->second) <= tol)
      it = terms.erase(it);
    else
      ++it;
  }
}

}  // namespace subcert
