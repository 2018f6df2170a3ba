#ifndef DPO_GROEBNER_GROEBNER_HPP
#define DPO_GROEBNER_GROEBNER_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpo/algebra/polynomial.hpp"

namespace dpo {

struct PolySystem {
  Ring ring;
  std::vector<Polynomial> generators;
  MonomialOrder order = MonomialOrder::grevlex();
};

struct GroebnerBasis {
  std::vector<Polynomial> basis;
  MonomialOrder order;
  bool reduced = false;
};

enum class PairSelection {
  /// Smallest lcm degree first, ties broken by the term order.
  Normal,
  /// Smallest sugar degree first (homogenized-degree bookkeeping).
  Sugar,
};

enum class EliminationMethod {
  /// Single kept variable and zero-dimensional ideal: minimal polynomial of that
  /// variable on the quotient ring, read off a grevlex basis. Otherwise BlockOrder.
  Auto,
  /// Always run Buchberger under the block elimination order.
  BlockOrder,
};

struct GroebnerOptions {
  /// Maximum number of single-term reduction steps before giving up.
  std::size_t reduction_budget = 1'000'000;
  PairSelection selection = PairSelection::Normal;
  EliminationMethod elimination = EliminationMethod::Auto;
  /// Re-check the Buchberger criterion on every basis produced; a violation
  /// throws std::logic_error.
  bool check_postcondition = false;
};

struct GroebnerStats {
  std::size_t reductions = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t pairs_pruned = 0;
  std::size_t max_basis_size = 0;
};

/// Multivariate division remainder over Q: no term of the result is divisible by
/// any leading term of G, and p - result lies in the ideal of G.
Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> G, const MonomialOrder& order);

/// S-polynomial of f and g under `order`.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

/// Reduced Groebner basis (monic, inter-reduced) under S.order.
/// Throws BudgetExhausted when the reduction budget runs out.
GroebnerBasis buchberger(const PolySystem& S, const GroebnerOptions& options = {},
                         GroebnerStats* stats = nullptr);

/// Checks the defining property directly: every S-polynomial of basis pairs
/// reduces to zero modulo the basis.
bool satisfies_buchberger_criterion(const GroebnerBasis& G);

/// Generators of the ideal intersected with Q[keep]. The general method is a block
/// order (eliminated block > kept block, grevlex inside each); see EliminationMethod
/// for the zero-dimensional shortcut. Results are monic and live in S.ring.
std::vector<Polynomial> elimination_ideal(const PolySystem& S, std::span<const std::string> keep,
                                          const GroebnerOptions& options = {},
                                          GroebnerStats* stats = nullptr);

/// Q[vars]/I for a zero-dimensional ideal I, with a grevlex reduced basis and
/// the standard monomials as vector-space basis.
class QuotientAlgebra {
 public:
  /// Returns nullopt when the ideal is not zero-dimensional.
  static std::optional<QuotientAlgebra> build(const PolySystem& S, const GroebnerOptions& options = {},
                                              GroebnerStats* stats = nullptr);

  const Ring& ring() const;
  const GroebnerBasis& basis() const;
  /// Standard monomials in ascending grevlex order; the first one is 1 unless I = (1).
  const std::vector<Monomial>& standard_monomials() const;
  std::size_t dimension() const { return standard_monomials().size(); }
  /// Coordinates of the normal form of p in the standard-monomial basis.
  std::vector<Scalar> coordinates(const Polynomial& p) const;
  /// Column j holds the coordinates of var * b_j.
  std::vector<std::vector<Scalar>> multiplication_matrix(std::size_t var) const;
  /// Monic generator of I ∩ Q[var], ascending coefficients.
  std::vector<Scalar> minimal_polynomial(std::size_t var) const;

 private:
  struct Impl;
  explicit QuotientAlgebra(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

}  // namespace dpo

#endif  // DPO_GROEBNER_GROEBNER_HPP
