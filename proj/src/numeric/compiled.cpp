#include "dpo/numeric/compiled.hpp"

#include <cmath>
#include <map>

#include "dpo/error.hpp"

namespace dpo {

CompiledSystem::CompiledSystem(const std::vector<Polynomial>& polys) {
  if (!polys.empty()) nvars_ = polys.front().ring().size();
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].ring().size() != nvars_) throw InputError("compiled system: mixed rings");
    std::vector<Term> row;
    std::map<std::size_t, std::vector<Term>> partial;
    for (const auto& t : polys[i].terms()) {
      Term term{static_cast<long double>(mpz_get_d(t.coef.get_num_mpz_t())) /
                    static_cast<long double>(mpz_get_d(t.coef.get_den_mpz_t())),
                {}};
      for (std::uint32_t v = 0; v < nvars_; ++v)
        if (t.mono[v]) term.factors.emplace_back(v, t.mono[v]);
      for (std::size_t f = 0; f < term.factors.size(); ++f) {
        Term d = term;
        d.coef *= d.factors[f].second;
        if (--d.factors[f].second == 0) d.factors.erase(d.factors.begin() + static_cast<std::ptrdiff_t>(f));
        partial[term.factors[f].first].push_back(std::move(d));
      }
      row.push_back(std::move(term));
    }
    rows_.push_back(std::move(row));
    for (auto& [col, terms] : partial) partials_.push_back({i, col, std::move(terms)});
  }
}

template <class Real>
Real CompiledSystem::eval(const std::vector<Term>& terms, std::span<const Real> x) {
  Real s = 0;
  for (const auto& t : terms) {
    Real v = static_cast<Real>(t.coef);
    for (const auto& [var, e] : t.factors) {
      const Real b = x[var];
      for (std::uint32_t k = 0; k < e; ++k) v *= b;
    }
    s += v;
  }
  return s;
}

template <class Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> CompiledSystem::value_as(std::span<const Real> x) const {
  if (x.size() != nvars_) throw InputError("compiled system: wrong number of values");
  Eigen::Matrix<Real, Eigen::Dynamic, 1> out(static_cast<Eigen::Index>(rows_.size()));
  for (std::size_t i = 0; i < rows_.size(); ++i) out[static_cast<Eigen::Index>(i)] = eval<Real>(rows_[i], x);
  return out;
}

template <class Real>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> CompiledSystem::jacobian_as(std::span<const Real> x) const {
  if (x.size() != nvars_) throw InputError("compiled system: wrong number of values");
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> J = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>::Zero(
      static_cast<Eigen::Index>(rows_.size()), static_cast<Eigen::Index>(nvars_));
  for (const auto& p : partials_)
    J(static_cast<Eigen::Index>(p.row), static_cast<Eigen::Index>(p.col)) = eval<Real>(p.terms, x);
  return J;
}

template Eigen::Matrix<double, Eigen::Dynamic, 1> CompiledSystem::value_as<double>(std::span<const double>) const;
template Eigen::Matrix<long double, Eigen::Dynamic, 1> CompiledSystem::value_as<long double>(
    std::span<const long double>) const;
template Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic> CompiledSystem::jacobian_as<double>(
    std::span<const double>) const;
template Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> CompiledSystem::jacobian_as<long double>(
    std::span<const long double>) const;

double CompiledSystem::residual(std::span<const double> x) const {
  return rows_.empty() ? 0.0 : value(x).lpNorm<Eigen::Infinity>();
}

}  // namespace dpo
