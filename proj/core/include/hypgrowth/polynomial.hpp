#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hypgrowth::oracle {

// Polynomial in p with rational coefficients, monomial basis, trailing zeros trimmed.
class PolyInP {
 public:
  PolyInP() = default;
  explicit PolyInP(std::vector<mpq_class> coefficients);

  static PolyInP constant(const mpq_class& c);
  static PolyInP p();
  // sum_j counts[j] p^j (1-p)^(m-j)
  static PolyInP from_counts(const std::vector<std::uint64_t>& counts, std::size_t m);

  const std::vector<mpq_class>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }

  mpq_class operator()(const mpq_class& p) const;
  // Exact evaluation at the binary value of p, rounded once at the end.
  double value(double p) const;
  PolyInP derivative() const;

  friend PolyInP operator+(const PolyInP& a, const PolyInP& b);
  friend PolyInP operator-(const PolyInP& a, const PolyInP& b);
  friend PolyInP operator*(const PolyInP& a, const PolyInP& b);
  friend bool operator==(const PolyInP& a, const PolyInP& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

}  // namespace hypgrowth::oracle
