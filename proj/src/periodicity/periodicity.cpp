#include "dpo/periodicity/periodicity.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "dpo/error.hpp"
#include "dpo/groebner/linear_elimination.hpp"
#include "dpo/univar/sturm.hpp"

namespace dpo {

std::vector<std::size_t> PeriodicityProblem::unknowns() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v + 1 < ring.size(); ++v) out.push_back(v);
  return out;
}

std::vector<Scalar> PeriodicityProblem::pinned_point(std::size_t k) const {
  if (k == 0) return initial;
  if (k == n) return terminal ? *terminal : initial;
  throw InputError("point " + std::to_string(k) + " is not pinned");
}

namespace {

PeriodicityProblem build(const SchemeSystem& scheme, std::size_t n, std::span<const Scalar> start,
                         std::optional<std::span<const Scalar>> end) {
  const std::size_t d = scheme.dimension();
  if (n < 2) throw InputError("periodicity system needs n >= 2");
  if (start.size() != d) throw InputError("initial state has dimension " + std::to_string(start.size()) +
                                          ", model has " + std::to_string(d));
  if (end && end->size() != d) throw InputError("terminal state has wrong dimension");

  PeriodicityProblem P;
  P.scheme = scheme;
  P.n = n;
  P.initial.assign(start.begin(), start.end());
  if (end) P.terminal = std::vector<Scalar>(end->begin(), end->end());

  std::vector<std::string> names;
  for (std::size_t k = 1; k < n; ++k)
    for (const auto& s : scheme.field.state_names()) names.push_back(point_name(s, k));
  names.push_back("T");
  P.ring = Ring(names);

  auto point = [&](std::size_t k, std::size_t i) {
    if (k == 0 || k == n) return Polynomial::constant(P.ring, P.pinned_point(k)[i]);
    return Polynomial::variable(P.ring, names[P.point_var(k, i)]);
  };
  const Polynomial dt = Scalar(1, static_cast<long>(n)) * Polynomial::variable(P.ring, "T");
  for (std::size_t k = 0; k < n; ++k) {
    std::map<std::string, Polynomial> images{{"dt", dt}};
    for (std::size_t i = 0; i < d; ++i) {
      const auto& s = scheme.field.state_names()[i];
      images.emplace(point_name(s, 0), point(k, i));
      images.emplace(point_name(s, 1), point(k + 1, i));
    }
    for (const auto& r : scheme.residuals) P.equations.push_back(substitute(r, images, P.ring).primitive());
  }
  return P;
}

Strategy choose(const PeriodicityProblem& P) {
  const auto unknowns = P.unknowns();
  if (is_linear_in(P.equations, unknowns, P.period_var())) return Strategy::Linear;
  if (P.scheme.kind == SchemeKind::Kahan) return Strategy::MapComposition;
  return Strategy::Groebner;
}

UPoly groebner_eliminant(const PeriodicityProblem& P, const GroebnerOptions& options, GroebnerStats& stats) {
  PolySystem S{P.ring, {}, MonomialOrder::grevlex()};
  for (const auto& e : P.equations)
    if (!e.is_zero()) S.generators.push_back(e);
  if (S.generators.empty()) return UPoly();
  const std::vector<std::string> keep{"T"};
  const auto E = elimination_ideal(S, keep, options, &stats);
  if (E.empty()) return UPoly();
  return UPoly::from_polynomial(E.front(), P.period_var());
}

}  // namespace

PeriodicityProblem build_cyclic_system(const SchemeSystem& scheme, std::size_t n, std::span<const Scalar> x0) {
  return build(scheme, n, x0, std::nullopt);
}

PeriodicityProblem build_boundary_system(const SchemeSystem& scheme, std::size_t n, std::span<const Scalar> x_start,
                                         std::span<const Scalar> x_end) {
  return build(scheme, n, x_start, x_end);
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Groebner: return "groebner";
    case Strategy::Linear: return "linear";
    case Strategy::MapComposition: return "map-composition";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "auto") return Strategy::Auto;
  if (text == "groebner") return Strategy::Groebner;
  if (text == "linear") return Strategy::Linear;
  if (text == "map-composition") return Strategy::MapComposition;
  throw InputError("unknown strategy '" + std::string(text) + "'");
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::RootsFound: return "roots-found";
    case SearchStatus::CertifiedEmpty: return "certified-empty";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
    case SearchStatus::Unconstrained: return "unconstrained";
  }
  return "?";
}

PeriodSearchResult eliminate_to_period(const PeriodicityProblem& P, Strategy strategy,
                                       const PeriodSearchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  PeriodSearchResult res;
  const bool automatic = strategy == Strategy::Auto;
  res.strategy = automatic ? choose(P) : strategy;
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  try {
    if (res.strategy == Strategy::Linear) {
      const auto unknowns = P.unknowns();
      const LinearElimination le = fraction_free_eliminate(P.equations, unknowns, P.period_var());
      res.raw = le.eliminant;
      const std::size_t bad =
          le.leading_minor.is_constant() ? 0 : sturm_count(le.leading_minor, Bound::at(0), Bound::pos_inf());
      if (bad > 0) {
        res.diagnostics = "leading minor vanishes at " + std::to_string(bad) + " positive T";
        if (automatic) {
          res.diagnostics += "; falling back to groebner";
          res.strategy = Strategy::Groebner;
        }
      }
    }
    if (res.strategy == Strategy::MapComposition) {
      if (P.scheme.degree_in_next() != 1)
        throw InputError("map-composition needs a scheme that is linear in the advanced state");
      res.raw = map_composition_eliminant(P, options.max_composition_degree, &res.diagnostics);
    }
    if (res.strategy == Strategy::Groebner) res.raw = groebner_eliminant(P, options.groebner, res.stats);
  } catch (const BudgetExhausted& e) {
    res.status = SearchStatus::BudgetExhausted;
    if (!res.diagnostics.empty()) res.diagnostics += "; ";
    res.diagnostics += e.what();
    res.seconds = elapsed();
    return res;
  }

  if (res.raw.is_zero()) {
    res.status = SearchStatus::Unconstrained;
    res.seconds = elapsed();
    return res;
  }
  res.eliminant = deflate(res.raw);
  res.certificates = isolate_positive_roots(res.eliminant, options.isolation);
  res.status = res.certificates.empty() ? SearchStatus::CertifiedEmpty : SearchStatus::RootsFound;
  res.seconds = elapsed();
  return res;
}

std::vector<ScanEntry> period_scan(const SchemeSystem& scheme, std::size_t n_min, std::size_t n_max,
                                   std::span<const Scalar> x0, Strategy strategy, const PeriodSearchOptions& options,
                                   unsigned threads) {
  if (n_min < 2 || n_max < n_min) throw InputError("period_scan: need 2 <= n_min <= n_max");
  std::vector<ScanEntry> out(n_max - n_min + 1);
  const std::vector<Scalar> start(x0.begin(), x0.end());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) {
      out[i].n = n_min + i;
      try {
        const auto P = build_cyclic_system(scheme, out[i].n, start);
        out[i].result = eliminate_to_period(P, strategy, options);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, out.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace dpo
