#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "stabgap/analysis.hpp"
#include "stabgap/bath.hpp"
#include "stabgap/coset.hpp"
#include "stabgap/dense.hpp"
#include "stabgap/energy_barrier.hpp"
#include "stabgap/gfunction.hpp"
#include "stabgap/high_temperature.hpp"
#include "stabgap/model_io.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

/// One checked inequality or residual. `margin` is positive when the check
/// passes with room to spare (bound slack, or tolerance minus residual).
struct LedgerEntry {
  std::string name;
  bool pass = false;
  double margin = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::size_t dense_cap = 4;        // dense oracle checks run for N <= dense_cap
  std::uint64_t exhaustive_cap = kDefaultExhaustiveCap;
  std::size_t random_observables = 20;
  std::uint64_t seed = 1;
  std::vector<std::pair<std::string, SiteOrdering>> orderings;  // extra orderings for the low-temperature bound
};

struct VerifyReport {
  std::vector<LedgerEntry> entries;
  double davies_gap = 0.0;
  double heatbath_gap = 0.0;
  bool all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const LedgerEntry& e) { return e.pass; });
  }
};

namespace detail {

inline LedgerEntry residual_entry(std::string name, double residual, double tol) {
  return {std::move(name), residual <= tol, tol - residual, "residual " + std::to_string(residual)};
}

inline LedgerEntry bound_entry(std::string name, double value, double bound, double slack = 1e-12) {
  return {std::move(name), value + slack >= bound, value - bound,
          "value " + std::to_string(value) + " vs bound " + std::to_string(bound)};
}

}  // namespace detail

/// Default orderings checked against the low-temperature bound.
inline std::vector<std::pair<std::string, SiteOrdering>> default_orderings(const StabilizerModel& model) {
  std::vector<std::pair<std::string, SiteOrdering>> out;
  out.emplace_back("lex-zx", lexicographic_zx_ordering(model.n_qubits()));
  out.emplace_back("site-major", site_major_ordering(model.n_qubits()));
  if (const auto l = detect_toric(model)) {
    out.emplace_back("toric-zx", toric_zx_ordering(*l));
    out.emplace_back("toric-xz", toric_zx_ordering(*l, true));
  }
  return out;
}

/// Runs the full inequality and residual suite on one (model, bath) pair.
inline VerifyReport run_verification(const StabilizerModel& model, const BathSpec& bath, VerifyOptions opt = {}) {
  VerifyReport rep;
  auto& L = rep.entries;
  const double beta = bath.beta;

  try {
    validate_bath(model, bath);
    L.push_back({"kms_rates", true, 0.0, "h(-w) = e^{-beta w} h(w) on all realized frequencies"});
  } catch (const ValidationError& e) {
    L.push_back({"kms_rates", false, 0.0, e.what()});
  }

  // Heat-bath weight identity in squared form.
  {
    double worst = 0.0;
    const auto syndromes = model.realized_syndromes();
    for (std::size_t j = 0; j < model.n_qubits(); ++j) {
      const LocalG g(model, j, beta);
      for (auto alpha : kNontrivialLocalPaulis) {
        const PauliOperator p = PauliOperator::single(model.n_qubits(), j, alpha);
        const Syndrome e = model.syndrome(p);
        for (const auto& a : syndromes) {
          const double lhs = g.g_squared(g.project(a ^ e));
          const double rhs = g.g_squared(g.project(a)) * std::exp(beta * model.bohr_frequency(a, p).to_double());
          worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
        }
      }
    }
    L.push_back(detail::residual_entry("g_squared_identity", worst, 1e-12));
  }

  const GapResult gd = coset_gap(model, bath, GeneratorFamily::davies);
  const GapResult gq = coset_gap(model, bath, GeneratorFamily::heatbath);
  rep.davies_gap = gd.gap;
  rep.heatbath_gap = gq.gap;
  L.push_back({"davies_primitive", gd.zero_modes == 1, 0.0, "zero modes " + std::to_string(gd.zero_modes)});
  L.push_back({"heatbath_primitive", gq.zero_modes == 1, 0.0, "zero modes " + std::to_string(gq.zero_modes)});

  if (model.n_qubits() <= opt.dense_cap) {
    for (auto fam : {GeneratorFamily::davies, GeneratorFamily::heatbath}) {
      const std::string tag = to_string(fam);
      const DenseGenerator dg = dense_generator(model, bath, fam, opt.dense_cap);
      const GeneratorResiduals r = generator_residuals(dg.space, model, dg.gibbs, dg.generator);
      L.push_back(detail::residual_entry(tag + "_unitality", r.unitality, 1e-10));
      L.push_back(detail::residual_entry(tag + "_gibbs_fixed_point", r.fixed_point, 1e-10));
      L.push_back(detail::residual_entry(tag + "_detailed_balance", r.detailed_balance, 1e-10));
      L.push_back(detail::residual_entry(tag + "_spectrum_real", r.spectrum_imag, 1e-9));

      const Eigen::MatrixXd form = dg.dirichlet();
      const auto projectors = dense_projectors(dg.space, model);
      const CosetContext ctx(model, bath);
      Eigen::MatrixXcd re = Eigen::MatrixXcd::Zero(form.rows(), form.cols());
      for (const auto& rep_op : coset_representatives(model)) {
        const Eigen::MatrixXcd u = coset_basis(dg.space, model, projectors, rep_op);
        re += u * dirichlet_block(ctx, rep_op, fam).form.cast<cplx>() * u.adjoint();
      }
      L.push_back(detail::residual_entry(tag + "_dense_vs_coset", (re - form.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-10));

      const GapResult dense = dense_gap(dg);
      const double coset = fam == GeneratorFamily::davies ? gd.gap : gq.gap;
      L.push_back(detail::residual_entry(tag + "_gap_dense_vs_coset", std::abs(dense.gap - coset), 1e-9));

      std::mt19937_64 rng(opt.seed);
      std::normal_distribution<double> normal;
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < opt.random_observables; ++i) {
        Eigen::VectorXcd c(form.rows());
        for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = normal(rng);
        const VarianceDirichlet v = variance_and_dirichlet(dg, c, form);
        worst = std::min(worst, v.dirichlet + 1e-10 - coset * v.variance);
      }
      L.push_back({tag + "_poincare", worst >= 0.0, worst,
                   std::to_string(opt.random_observables) + " seeded random Hermitian observables"});
    }
  }

  const double hmin = h_min(model, bath);
  auto orderings = default_orderings(model);
  for (auto& o : opt.orderings) orderings.push_back(o);
  const std::size_t n = model.n_qubits();
  if (2 * n < 63 && (std::uint64_t{1} << (2 * n)) <= opt.exhaustive_cap) {
    for (const auto& [name, ord] : orderings) {
      const MaxPenaltyResult mp = max_penalty_exhaustive(model, ord, opt.exhaustive_cap);
      const double b = low_temp_gap_bound(mp.value, beta, hmin, ord.l_star());
      L.push_back(detail::bound_entry("low_temp_barrier_" + name, gd.gap, b));
    }
  }

  const TauResult tau = tau_and_r(model, bath);
  L.push_back(detail::bound_entry("comparison_davies_vs_heatbath", gd.gap, gq.gap / tau.tau));
  L.push_back(detail::bound_entry("tau_inverse_lower_bound", 1.0 / tau.tau, tau.r_lower));

  const AdjacencyData adj = adjacency(model);
  const double ks = kappa_simplified(model, beta, adj).kappa;
  const double kp = kappa_proposition(model, beta, adj).kappa;
  const double kn = kappa_numeric(model, beta, adj).kappa;
  L.push_back(detail::bound_entry("kappa_proposition_le_simplified", ks, kp));
  L.push_back(detail::bound_entry("kappa_numeric_le_proposition", kp, kn));
  if (kn < 1.0) L.push_back(detail::bound_entry("heatbath_gap_vs_kappa_numeric", gq.gap, 1.0 - kn));
  for (auto v : {KappaVariant::simplified, KappaVariant::numeric}) {
    const HighTempBound hb = high_temp_gap_bound(model, bath, v);
    L.push_back(detail::bound_entry("high_temp_kappa_" + to_string(v), gd.gap, hb.value));
  }
  return rep;
}

}  // namespace stabgap
