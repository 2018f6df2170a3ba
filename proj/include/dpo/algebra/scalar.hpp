#ifndef DPO_ALGEBRA_SCALAR_HPP
#define DPO_ALGEBRA_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace dpo {

/// Exact rational. Build fractions with ratio(): mpq_class(num, den) is not
/// reduced, and GMP arithmetic assumes reduced operands.
using Scalar = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-7/2", "0.30083", "1e-10", "2.5E3" into an exact rational.
/// Throws InputError on anything else.
Scalar parse_scalar(std::string_view text);

/// Comma-separated list of scalars, e.g. "0,1" or "1,2".
std::vector<Scalar> parse_scalar_list(std::string_view text);

/// num/den in lowest terms with a positive denominator.
Scalar ratio(const Integer& num, const Integer& den);

std::string to_string(const Scalar& value);
std::string to_string(const Integer& value);

double to_double(const Scalar& value);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Exact rational lying within 2^-bits of a finite double (exact for dyadic inputs).
Scalar scalar_from_double(double value);

}  // namespace dpo

#endif  // DPO_ALGEBRA_SCALAR_HPP
