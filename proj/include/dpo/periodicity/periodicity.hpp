#ifndef DPO_PERIODICITY_PERIODICITY_HPP
#define DPO_PERIODICITY_PERIODICITY_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpo/groebner/groebner.hpp"
#include "dpo/schemes/schemes.hpp"
#include "dpo/univar/isolate.hpp"
#include "dpo/univar/upoly.hpp"

namespace dpo {

/// The scheme chained over n steps with dt = T/n. Points are x_0, ..., x_{n-1};
/// the cyclic variant closes with x_n = x_0, the boundary variant ends at `terminal`.
/// x_0 is always pinned to `initial`, so the unknowns are x_1..x_{n-1} and T.
struct PeriodicityProblem {
  SchemeSystem scheme;
  std::size_t n = 0;
  std::vector<Scalar> initial;
  std::optional<std::vector<Scalar>> terminal;
  /// Point variables s_k (k = 1..n-1, state-major inside a point), then T.
  Ring ring;
  /// n*d equations, ordered by step then component; integer coefficients.
  std::vector<Polynomial> equations;

  bool is_boundary() const { return terminal.has_value(); }
  std::size_t dimension() const { return scheme.dimension(); }
  std::size_t period_var() const { return ring.size() - 1; }
  /// Ring index of component i of point k, 1 <= k <= n-1.
  std::size_t point_var(std::size_t k, std::size_t i) const { return (k - 1) * dimension() + i; }
  std::vector<std::size_t> unknowns() const;
  /// Exact end point of step k (k = n gives x_0 or the terminal state).
  std::vector<Scalar> pinned_point(std::size_t k) const;
};

PeriodicityProblem build_cyclic_system(const SchemeSystem& scheme, std::size_t n, std::span<const Scalar> x0);
PeriodicityProblem build_boundary_system(const SchemeSystem& scheme, std::size_t n, std::span<const Scalar> x_start,
                                         std::span<const Scalar> x_end);

enum class Strategy { Auto, Groebner, Linear, MapComposition };
std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

enum class SearchStatus {
  RootsFound,
  CertifiedEmpty,
  BudgetExhausted,
  /// The eliminant is identically zero: closure holds on a positive-dimensional set.
  Unconstrained,
};
std::string to_string(SearchStatus s);

struct PeriodSearchOptions {
  GroebnerOptions groebner;
  IsolationOptions isolation;
  /// map-composition gives up once an intermediate polynomial exceeds this degree in T.
  std::size_t max_composition_degree = 20000;
};

struct PeriodSearchResult {
  SearchStatus status = SearchStatus::CertifiedEmpty;
  /// The strategy that produced the eliminant (never Auto).
  Strategy strategy = Strategy::Groebner;
  /// Eliminant in T before deflation; zero when unavailable.
  UPoly raw;
  Eliminant eliminant;
  std::vector<PeriodCertificate> certificates;
  std::string diagnostics;
  GroebnerStats stats;
  double seconds = 0.0;
};

/// Eliminates the point variables and isolates the positive roots in T.
PeriodSearchResult eliminate_to_period(const PeriodicityProblem& problem, Strategy strategy = Strategy::Auto,
                                       const PeriodSearchOptions& options = {});

/// Closure conditions of the n-fold composition of a linearly implicit scheme,
/// with the orbit start pinned and T symbolic. Returns their gcd with the factors
/// that make an intermediate step singular removed.
/// Throws BudgetExhausted when the degree cap is exceeded.
UPoly map_composition_eliminant(const PeriodicityProblem& problem, std::size_t max_degree,
                                std::string* diagnostics = nullptr);

struct ScanEntry {
  std::size_t n = 0;
  std::optional<PeriodSearchResult> result;
  std::string error;
};

/// eliminate_to_period for every n in [n_min, n_max] (cyclic system), spread over
/// `threads` workers (0 = hardware concurrency). Entries are in ascending n.
std::vector<ScanEntry> period_scan(const SchemeSystem& scheme, std::size_t n_min, std::size_t n_max,
                                   std::span<const Scalar> x0, Strategy strategy = Strategy::Auto,
                                   const PeriodSearchOptions& options = {}, unsigned threads = 0);

}  // namespace dpo

#endif  // DPO_PERIODICITY_PERIODICITY_HPP
