#ifndef DPO_ALGEBRA_POLYNOMIAL_HPP
#define DPO_ALGEBRA_POLYNOMIAL_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpo/algebra/scalar.hpp"

namespace dpo {

/// Ordered list of variable names. Copies share storage.
///
/// Naming convention used throughout the library: state variables carry the
/// field's state names (x0..x{d-1} when unnamed), a point index is appended as
/// `_k`, and the step and period variables are `dt` and `T`.
class Ring {
 public:
  Ring();
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const;
  const std::string& name(std::size_t index) const;
  const std::vector<std::string>& names() const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// index_of, throwing InputError for unknown names.
  std::size_t require(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  bool operator==(const Ring& other) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Dense exponent vector, one entry per ring variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint64_t degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;
  /// Plain lexicographic comparison of exponent vectors (for use as a map key).
  std::strong_ordering operator<=>(const Monomial&) const = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Term order on monomials of a fixed ring.
///
/// BlockElimination(k): the first k variables form the eliminated block and
/// dominate; degree-reverse-lexicographic is used inside each block.
struct MonomialOrder {
  enum class Kind { Lex, DegRevLex, BlockElimination };

  Kind kind = Kind::DegRevLex;
  std::size_t split = 0;

  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder grevlex() { return {Kind::DegRevLex, 0}; }
  static MonomialOrder block(std::size_t k) { return {Kind::BlockElimination, k}; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool operator==(const MonomialOrder&) const = default;
  std::string describe() const;
};

/// Exact multivariate polynomial over the rationals.
///
/// Terms are stored without zero coefficients, strictly descending under the
/// polynomial's order, so two polynomials are equal iff their term lists are.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Scalar coef;
  };

  Polynomial() = default;
  explicit Polynomial(Ring ring, MonomialOrder order = MonomialOrder::grevlex());

  static Polynomial constant(const Ring& ring, const Scalar& value,
                             MonomialOrder order = MonomialOrder::grevlex());
  static Polynomial variable(const Ring& ring, std::string_view name,
                             MonomialOrder order = MonomialOrder::grevlex());
  /// Combines like terms, drops zeros and sorts.
  static Polynomial from_terms(const Ring& ring, std::vector<Term> terms,
                               MonomialOrder order = MonomialOrder::grevlex());

  const Ring& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::uint64_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  std::uint32_t degree_in(std::string_view var) const;
  /// Total degree counted only over the listed variables.
  std::uint64_t degree_in(std::span<const std::size_t> vars) const;
  /// Variables that occur with positive exponent somewhere.
  std::vector<std::size_t> support() const;

  const Term& leading_term() const;
  /// Coefficient of the monomial, zero if absent.
  Scalar coefficient(const Monomial& mono) const;

  Polynomial with_order(MonomialOrder order) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Scalar& factor);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

  Polynomial pow(unsigned exponent) const;

  bool operator==(const Polynomial& other) const;

  /// Positive rational multiple with coprime integer coefficients.
  Polynomial primitive() const;
  /// Least common multiple of the coefficient denominators.
  Integer denominator_lcm() const;

  /// Exact form, e.g. `x_1 - 1/2*T*y_0`.
  std::string to_string() const;
  /// Canonical dump form: integer-cleared, content removed, `*` explicit, terms in
  /// the active order, e.g. `30*x_1 - 30*x_0 - T*y_1 - T*y_0`.
  std::string canonical_text() const;

 private:
  void normalize();

  Ring ring_;
  MonomialOrder order_ = MonomialOrder::grevlex();
  std::vector<Term> terms_;
};

enum class ArithOp { Add, Sub, Mul };

/// Ring-checked arithmetic; throws InputError on ring mismatch.
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op);

/// Replaces variables by polynomials of `target`. Unmapped variables are carried
/// over by name and must exist in `target`. Throws InputError for keys that are
/// not variables of p's ring.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images,
                      const Ring& target);
/// Same-ring convenience overload.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images);
/// Substitutes scalar values; the remaining variables stay in the same ring.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Scalar>& values);

/// Maps every variable by name into `target`.
Polynomial embed(const Polynomial& p, const Ring& target);

Scalar evaluate(const Polynomial& p, std::span<const Scalar> point);
double evaluate(const Polynomial& p, std::span<const double> point);

Polynomial partial_derivative(const Polynomial& p, std::string_view var);
Polynomial partial_derivative(const Polynomial& p, std::size_t var);

}  // namespace dpo

#endif  // DPO_ALGEBRA_POLYNOMIAL_HPP
