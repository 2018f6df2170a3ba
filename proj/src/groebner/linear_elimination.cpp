#include "dpo/groebner/linear_elimination.hpp"

#include <algorithm>
#include <optional>

#include "dpo/error.hpp"

namespace dpo {

namespace {

std::optional<std::size_t> unknown_slot(const Monomial& m, std::span<const std::size_t> unknowns) {
  std::optional<std::size_t> slot;
  for (std::size_t k = 0; k < unknowns.size(); ++k) {
    if (m[unknowns[k]] == 0) continue;
    if (slot || m[unknowns[k]] > 1) throw InputError("system is not linear in the unknowns");
    slot = k;
  }
  return slot;
}

std::size_t bit_size(const UPoly& p) {
  std::size_t s = 0;
  for (const auto& c : p.coeffs()) s += mpz_sizeinbase(c.get_mpz_t(), 2);
  return s;
}

}  // namespace

bool is_linear_in(std::span<const Polynomial> equations, std::span<const std::size_t> unknowns,
                  std::size_t param) {
  for (const auto& eq : equations) {
    for (std::size_t v : eq.support()) {
      if (v != param && std::find(unknowns.begin(), unknowns.end(), v) == unknowns.end()) return false;
    }
    if (eq.degree_in(unknowns) > 1) return false;
  }
  return true;
}

LinearElimination fraction_free_eliminate(std::span<const Polynomial> equations,
                                          std::span<const std::size_t> unknowns, std::size_t param) {
  if (!is_linear_in(equations, unknowns, param))
    throw InputError("fraction_free_eliminate: system is not linear in the unknowns");
  const std::size_t m = unknowns.size();
  const std::size_t rhs = m;

  // Row i encodes sum_j M[i][j] u_j + M[i][rhs] = 0 with entries in Z[param].
  std::vector<std::vector<UPoly>> M;
  for (const auto& eq : equations) {
    const Integer den = eq.denominator_lcm();
    std::vector<std::vector<Integer>> coeffs(m + 1);
    for (const auto& t : eq.terms()) {
      const auto slot = unknown_slot(t.mono, unknowns);
      const std::size_t col = slot ? *slot : rhs;
      const std::size_t e = t.mono[param];
      auto& c = coeffs[col];
      if (c.size() <= e) c.resize(e + 1, Integer(0));
      const Scalar scaled = t.coef * den;
      c[e] += scaled.get_num();
    }
    std::vector<UPoly> row;
    row.reserve(m + 1);
    for (auto& c : coeffs) row.emplace_back(std::move(c));
    M.push_back(std::move(row));
  }

  std::vector<std::size_t> col_perm(m);
  for (std::size_t j = 0; j < m; ++j) col_perm[j] = j;

  LinearElimination out;
  UPoly prev = UPoly::constant(1);
  const std::size_t rows = M.size();
  std::size_t k = 0;
  for (; k < std::min(rows, m); ++k) {
    // pivot of least degree, then least bit size
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < m; ++j) {
        const UPoly& e = M[i][col_perm[j]];
        if (e.is_zero()) continue;
        if (!best) {
          best = {i, j};
          continue;
        }
        const UPoly& b = M[best->first][col_perm[best->second]];
        if (e.degree() < b.degree() || (e.degree() == b.degree() && bit_size(e) < bit_size(b))) best = {i, j};
      }
    if (!best) break;
    std::swap(M[k], M[best->first]);
    std::swap(col_perm[k], col_perm[best->second]);
    const UPoly pivot = M[k][col_perm[k]];
    for (std::size_t i = k + 1; i < rows; ++i) {
      const UPoly factor = M[i][col_perm[k]];
      for (std::size_t jj = k + 1; jj <= m; ++jj) {
        const std::size_t j = jj == m ? rhs : col_perm[jj];
        UPoly v = pivot * M[i][j] - factor * M[k][j];
        M[i][j] = divide_exact(v, prev);
      }
      M[i][col_perm[k]] = UPoly();
    }
    prev = pivot;
  }
  out.rank = k;
  out.leading_minor = prev;
  UPoly g;
  for (std::size_t i = k; i < rows; ++i) {
    const UPoly& c = M[i][rhs];
    if (c.is_zero()) continue;
    out.conditions.push_back(c);
    g = gcd(g, c);
  }
  out.eliminant = g;
  return out;
}

}  // namespace dpo
