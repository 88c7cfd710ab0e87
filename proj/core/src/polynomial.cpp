#include "hypgrowth/polynomial.hpp"

#include <sstream>

namespace hypgrowth::oracle {

PolyInP::PolyInP(std::vector<mpq_class> coefficients) : c_(std::move(coefficients)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void PolyInP::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyInP PolyInP::constant(const mpq_class& c) { return PolyInP({c}); }

PolyInP PolyInP::p() { return PolyInP({mpq_class(0), mpq_class(1)}); }

PolyInP PolyInP::from_counts(const std::vector<std::uint64_t>& counts, std::size_t m) {
  std::vector<mpz_class> out(m + 1, 0);
  std::vector<mpz_class> binom(m + 1);
  for (std::size_t j = 0; j < counts.size() && j <= m; ++j) {
    if (counts[j] == 0) continue;
    mpz_class c;
    mpz_import(c.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &counts[j]);
    // (1-p)^(m-j) = sum_i C(m-j, i) (-p)^i
    const std::size_t n = m - j;
    mpz_class b = 1;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i % 2 == 0)
        out[j + i] += c * b;
      else
        out[j + i] -= c * b;
      b = b * static_cast<unsigned long>(n - i) / static_cast<unsigned long>(i + 1);
    }
  }
  std::vector<mpq_class> q(out.begin(), out.end());
  return PolyInP(std::move(q));
}

mpq_class PolyInP::operator()(const mpq_class& p) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * p + *it;
  return acc;
}

double PolyInP::value(double p) const { return (*this)(mpq_class(p)).get_d(); }

PolyInP PolyInP::derivative() const {
  std::vector<mpq_class> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return PolyInP(std::move(d));
}

PolyInP operator+(const PolyInP& a, const PolyInP& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return PolyInP(std::move(c));
}

PolyInP operator-(const PolyInP& a, const PolyInP& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return PolyInP(std::move(c));
}

PolyInP operator*(const PolyInP& a, const PolyInP& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return PolyInP(std::move(c));
}

std::string PolyInP::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpq_class c = c_[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    c = abs(c);
    if (i == 0 || c != 1) os << c.get_str() << (i > 0 ? "*" : "");
    if (i == 1) os << "p";
    if (i > 1) os << "p^" << i;
  }
  return os.str();
}

}  // namespace hypgrowth::oracle
