#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "stabgap/bath.hpp"
#include "stabgap/errors.hpp"
#include "stabgap/gfunction.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

/// Locality data of one site.
struct SiteLocality {
  std::size_t site = 0;
  std::vector<std::size_t> neighbors;      // N_j: j first, then ascending
  std::vector<std::size_t> support;        // S_j: generators containing j, ascending
  std::vector<std::size_t> intersections;  // |S_j cap S_m| for m = neighbors[i]
  Rational coupling;                       // max J over generators touching N_j
};

struct AdjacencyData {
  std::vector<SiteLocality> sites;
  std::size_t s_star_max = 0;  // max_j |S_j|
  std::size_t s_star_min = 0;  // min_j |S_j|
};

inline AdjacencyData adjacency(const StabilizerModel& model) {
  const std::size_t n = model.n_qubits();
  AdjacencyData out;
  out.sites.resize(n);
  std::vector<std::vector<std::size_t>> supports(n);
  for (std::size_t j = 0; j < n; ++j) supports[j] = model.generators_on(j);
  out.s_star_min = std::numeric_limits<std::size_t>::max();
  for (std::size_t j = 0; j < n; ++j) {
    SiteLocality& s = out.sites[j];
    s.site = j;
    s.support = supports[j];
    std::vector<char> near(n, 0);
    for (auto k : s.support)
      for (auto m : model.support(k)) near[m] = 1;
    s.neighbors.push_back(j);
    for (std::size_t m = 0; m < n; ++m)
      if (near[m] && m != j) s.neighbors.push_back(m);
    Rational jmax;
    for (auto m : s.neighbors) {
      std::size_t shared = 0;
      for (auto k : supports[m]) {
        if (std::binary_search(s.support.begin(), s.support.end(), k)) ++shared;
        jmax = std::max(jmax, model.coupling(k));
      }
      s.intersections.push_back(shared);
    }
    s.coupling = jmax;
    out.s_star_max = std::max(out.s_star_max, s.support.size());
    out.s_star_min = std::min(out.s_star_min, s.support.size());
  }
  return out;
}

/// eps(m,j) = max over nontrivial alpha_j, tau_m of sum_k J_k e_k(alpha_j) e_k(tau_m).
inline Rational epsilon_pair(const StabilizerModel& model, std::size_t m, std::size_t j) {
  const std::size_t n = model.n_qubits();
  if (m >= n || j >= n) throw DimensionError("site out of range");
  Rational best;
  for (auto a : kNontrivialLocalPaulis) {
    const Syndrome ea = model.syndrome(PauliOperator::single(n, j, a));
    for (auto t : kNontrivialLocalPaulis) {
      const Syndrome et = model.syndrome(PauliOperator::single(n, m, t));
      Rational s;
      for (std::size_t k = 0; k < model.n_generators(); ++k)
        if (ea.get(k) && et.get(k)) s += model.coupling(k);
      best = std::max(best, s);
    }
  }
  return best;
}

enum class KappaVariant { simplified, proposition, numeric };

inline std::string to_string(KappaVariant v) {
  switch (v) {
    case KappaVariant::simplified: return "simplified";
    case KappaVariant::proposition: return "proposition";
    case KappaVariant::numeric: return "numeric";
  }
  return "?";
}

inline KappaVariant parse_kappa_variant(const std::string& s) {
  if (s == "simplified") return KappaVariant::simplified;
  if (s == "proposition") return KappaVariant::proposition;
  if (s == "numeric") return KappaVariant::numeric;
  throw ValidationError("unknown kappa variant '" + s + "'");
}

struct KappaReport {
  KappaVariant variant = KappaVariant::simplified;
  double kappa = 0.0;
  std::vector<double> per_site;
  std::size_t argmax = 0;
};

namespace detail {

inline KappaReport finish(KappaVariant v, std::vector<double> per_site) {
  KappaReport r;
  r.variant = v;
  r.per_site = std::move(per_site);
  for (std::size_t j = 0; j < r.per_site.size(); ++j)
    if (r.per_site[j] > r.kappa) {
      r.kappa = r.per_site[j];
      r.argmax = j;
    }
  return r;
}

inline void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be a finite nonnegative number");
}

// sum over pairs l < m of N_j (j first) of term(m): m at position p has p predecessors.
template <class F>
double pair_sum(const SiteLocality& s, F term) {
  double acc = 0.0;
  for (std::size_t p = 1; p < s.neighbors.size(); ++p) acc += static_cast<double>(p) * term(p);
  return acc;
}

}  // namespace detail

/// kappa_j = 3(|N_j|-1) e^{2 beta J |S_j|} sum_{l<m} (e^{2 beta J |S_j cap S_m|} - 1).
inline KappaReport kappa_simplified(const StabilizerModel&, double beta, const AdjacencyData& adj) {
  detail::check_beta(beta);
  std::vector<double> per;
  for (const auto& s : adj.sites) {
    const double bj = 2.0 * beta * s.coupling.to_double();
    const double sum =
        detail::pair_sum(s, [&](std::size_t p) { return std::expm1(bj * static_cast<double>(s.intersections[p])); });
    per.push_back(3.0 * static_cast<double>(s.neighbors.size() - 1) *
                  std::exp(bj * static_cast<double>(s.support.size())) * sum);
  }
  return detail::finish(KappaVariant::simplified, std::move(per));
}

inline KappaReport kappa_simplified(const StabilizerModel& model, double beta) {
  return kappa_simplified(model, beta, adjacency(model));
}

/// Same pair sum with e^{2 beta eps(m,j)} and the exact denominator
/// 1/4 sum_{alpha_j in {I,X,Y,Z}} e^{-2 beta sum_{k in e(alpha_j)} J_k}.
inline KappaReport kappa_proposition(const StabilizerModel& model, double beta, const AdjacencyData& adj) {
  detail::check_beta(beta);
  const std::size_t n = model.n_qubits();
  std::vector<double> per;
  for (const auto& s : adj.sites) {
    double denom = 1.0;
    for (auto a : kNontrivialLocalPaulis) {
      const Syndrome e = model.syndrome(PauliOperator::single(n, s.site, a));
      double w = 0.0;
      for (std::size_t k = 0; k < e.size(); ++k)
        if (e.get(k)) w += model.coupling(k).to_double();
      denom += std::exp(-2.0 * beta * w);
    }
    denom *= 0.25;
    const double sum = detail::pair_sum(s, [&](std::size_t p) {
      return std::expm1(2.0 * beta * epsilon_pair(model, s.neighbors[p], s.site).to_double());
    });
    per.push_back(3.0 * static_cast<double>(s.neighbors.size() - 1) / denom * sum);
  }
  return detail::finish(KappaVariant::proposition, std::move(per));
}

inline KappaReport kappa_proposition(const StabilizerModel& model, double beta) {
  return kappa_proposition(model, beta, adjacency(model));
}

/// Exact operator norms of gamma_j = sum_a G_j(a) P(a) and of
/// d_m gamma_j = gamma_j - ptr_m(gamma_j), maximized over all local patterns on S_j.
struct GammaNorms {
  double gamma = 0.0;
  std::vector<double> derivative;  // aligned with SiteLocality::neighbors
};

inline GammaNorms gamma_norms(const StabilizerModel& model, double beta, const SiteLocality& s,
                              std::size_t pattern_cap = kDefaultLocalPatternCap) {
  const LocalG g(model, s.site, beta, pattern_cap);
  const std::uint64_t total = g.n_patterns();
  std::vector<double> values(total);
  GammaNorms out;
  for (std::uint64_t p = 0; p < total; ++p) {
    values[p] = g.value(p);
    out.gamma = std::max(out.gamma, values[p]);
  }
  const std::size_t n = model.n_qubits();
  for (auto m : s.neighbors) {
    std::array<std::uint64_t, 4> flips{0, 0, 0, 0};
    for (std::size_t a = 0; a < 3; ++a)
      flips[a + 1] = g.local_mask(model, PauliOperator::single(n, m, kNontrivialLocalPaulis[a]));
    double best = 0.0;
    for (std::uint64_t p = 0; p < total; ++p) {
      double avg = 0.0;
      for (auto f : flips) avg += values[p ^ f];
      best = std::max(best, std::abs(values[p] - 0.25 * avg));
    }
    out.derivative.push_back(best);
  }
  return out;
}

/// kappa_j = (|N_j|-1) sum_l 4 ||gamma_j|| sum_{s after l} ||d_s gamma_j||.
///
/// With `optimize_order` the sites after j are arranged by descending
/// derivative norm, which minimizes the double sum over all orderings that
/// keep j first.
inline KappaReport kappa_numeric(const StabilizerModel& model, double beta, const AdjacencyData& adj,
                                 bool optimize_order = false,
                                 std::size_t pattern_cap = kDefaultLocalPatternCap) {
  detail::check_beta(beta);
  std::vector<double> per;
  for (const auto& s : adj.sites) {
    const GammaNorms norms = gamma_norms(model, beta, s, pattern_cap);
    std::vector<double> tail(norms.derivative.begin() + 1, norms.derivative.end());
    if (optimize_order) std::sort(tail.begin(), tail.end(), std::greater<>());
    double sum = 0.0;
    for (std::size_t i = 0; i < tail.size(); ++i) sum += static_cast<double>(i + 1) * tail[i];
    per.push_back(static_cast<double>(s.neighbors.size() - 1) * 4.0 * norms.gamma * sum);
  }
  return detail::finish(KappaVariant::numeric, std::move(per));
}

inline KappaReport kappa_numeric(const StabilizerModel& model, double beta, bool optimize_order = false) {
  return kappa_numeric(model, beta, adjacency(model), optimize_order);
}

inline KappaReport kappa(const StabilizerModel& model, double beta, KappaVariant v, const AdjacencyData& adj) {
  switch (v) {
    case KappaVariant::simplified: return kappa_simplified(model, beta, adj);
    case KappaVariant::proposition: return kappa_proposition(model, beta, adj);
    case KappaVariant::numeric: return kappa_numeric(model, beta, adj);
  }
  throw ValidationError("unknown kappa variant");
}

inline KappaReport kappa(const StabilizerModel& model, double beta, KappaVariant v) {
  return kappa(model, beta, v, adjacency(model));
}

struct CriticalBeta {
  double beta = std::numeric_limits<double>::infinity();  // +infinity when kappa stays below 1
  double kappa_at_root = 0.0;
  bool finite() const noexcept { return std::isfinite(beta); }
};

/// Largest beta with kappa(beta) < 1, by doubling then bisection. `tol` is in
/// units of beta J with J the largest coupling; bisection continues below it
/// until the bracket stops shrinking in floating point.
inline CriticalBeta critical_beta(const StabilizerModel& model, KappaVariant v, double tol = 1e-12,
                                  double max_beta_j = 1e4) {
  const AdjacencyData adj = adjacency(model);
  const double jmax = model.max_coupling().to_double();
  auto f = [&](double b) { return kappa(model, b, v, adj).kappa; };
  double lo = 0.0;
  double hi = 1e-3 / jmax;
  while (f(hi) < 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi * jmax > max_beta_j) return {};
  }
  while ((hi - lo) * jmax > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 1.0 ? lo : hi) = mid;
  }
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 1.0 ? lo : hi) = mid;
  }
  return {lo, f(lo)};
}

/// Linearized root: kappa_j ~ 6 beta J (|N_j|-1) sum_{l<m} |S_j cap S_m|.
inline double first_order_beta_estimate(const StabilizerModel& model) {
  const AdjacencyData adj = adjacency(model);
  double slope = 0.0;
  for (const auto& s : adj.sites) {
    const double pairs =
        detail::pair_sum(s, [&](std::size_t p) { return static_cast<double>(s.intersections[p]); });
    slope = std::max(slope, 6.0 * s.coupling.to_double() * static_cast<double>(s.neighbors.size() - 1) * pairs);
  }
  return slope > 0.0 ? 1.0 / slope : std::numeric_limits<double>::infinity();
}

struct HighTempBound {
  double value = 0.0;  // 1/2 h_min e^{-2 beta J S_*} (1 - kappa), or 0 when kappa >= 1
  double kappa = 0.0;
  KappaVariant variant = KappaVariant::simplified;
  double h_min = 0.0;
  std::size_t s_star_max = 0;
  std::size_t s_star_min = 0;
  bool vacuous = false;  // kappa >= 1
};

inline HighTempBound high_temp_gap_bound(const StabilizerModel& model, const BathSpec& bath,
                                         KappaVariant v = KappaVariant::simplified) {
  const AdjacencyData adj = adjacency(model);
  HighTempBound r;
  r.variant = v;
  r.kappa = kappa(model, bath.beta, v, adj).kappa;
  r.h_min = h_min(model, bath);
  r.s_star_max = adj.s_star_max;
  r.s_star_min = adj.s_star_min;
  if (r.kappa >= 1.0) {
    r.vacuous = true;
    return r;
  }
  const double j = model.max_coupling().to_double();
  r.value = 0.5 * r.h_min * std::exp(-2.0 * bath.beta * j * static_cast<double>(r.s_star_max)) * (1.0 - r.kappa);
  return r;
}

}  // namespace stabgap
