#ifndef DPO_UNIVAR_UPOLY_HPP
#define DPO_UNIVAR_UPOLY_HPP

#include <string>
#include <string_view>
#include <vector>

#include "dpo/algebra/polynomial.hpp"
#include "dpo/algebra/scalar.hpp"

namespace dpo {

/// Dense univariate polynomial over the integers, coefficients in ascending degree.
/// The zero polynomial has no coefficients and degree -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Integer> coeffs);

  static UPoly constant(const Integer& c);
  static UPoly monomial(const Integer& c, std::size_t degree);
  /// Univariate view of p in variable `var`; denominators are cleared with a
  /// positive factor. Throws InputError if p involves any other variable.
  static UPoly from_polynomial(const Polynomial& p, std::size_t var);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Integer>& coeffs() const { return c_; }
  /// Coefficient of T^i, zero beyond the degree.
  Integer coeff(std::size_t i) const;
  const Integer& leading() const;

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const Integer& k);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Integer& k) { return a *= k; }
  bool operator==(const UPoly&) const = default;

  UPoly pow(unsigned e) const;

  /// Non-negative gcd of the coefficients (0 for the zero polynomial).
  Integer content() const;
  /// Divides by the content; additionally flips sign so the leading coefficient is positive.
  UPoly primitive_monic_sign() const;
  /// Divides by the content only, preserving sign.
  UPoly primitive() const;

  UPoly derivative() const;

  /// Multiplicity of the root T = 0.
  std::size_t low_order() const;
  /// Divides by T^m (requires m <= low_order()).
  UPoly shift_down(std::size_t m) const;

  bool is_even() const;
  /// For p(T) = q(T^2), returns q. Requires is_even().
  UPoly even_to_square() const;
  /// For q(S), returns q(T^2).
  UPoly square_to_even() const;

  /// Sign of p(x) evaluated exactly.
  int sign_at(const Scalar& x) const;
  Scalar evaluate(const Scalar& x) const;
  double evaluate(double x) const;

  Polynomial to_polynomial(const Ring& ring, std::size_t var) const;
  std::string to_string(std::string_view var = "T") const;

 private:
  void trim();
  std::vector<Integer> c_;
};

/// a = q*b exactly over Z[T]; throws Error if the division leaves a remainder.
UPoly divide_exact(const UPoly& a, const UPoly& b);
/// lc(b)^(deg a - deg b + 1) * a mod b.
UPoly pseudo_remainder(const UPoly& a, const UPoly& b);
/// Greatest common divisor up to units: primitive, positive leading coefficient.
/// gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
/// Squarefree part p / gcd(p, p'), primitive with positive leading coefficient.
UPoly squarefree_part(const UPoly& p);

}  // namespace dpo

#endif  // DPO_UNIVAR_UPOLY_HPP
