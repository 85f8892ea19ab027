#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabgap/errors.hpp"
#include "stabgap/rational.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

/// Gibbs state rho = e^{-beta H}/Z resolved over realized syndromes.
///
/// rho restricted to the range of P(a) is rho_a times the identity, and each
/// P(a) has rank `degeneracy` = 2^{N - rank}.
struct GibbsData {
  double beta = 0.0;
  std::size_t n_qubits = 0;
  std::size_t rank = 0;
  std::vector<Syndrome> syndromes;  // index order of StabilizerModel::syndrome_at
  std::vector<Rational> energies;
  std::vector<double> rho;
  std::vector<double> log_rho;
  double log_z = 0.0;
  double degeneracy = 1.0;
  Rational norm_h;                 // max |eps(a)| over realized a
  double log_rho_inv_norm = 0.0;   // ln(1 / min_a rho_a)

  double rho_inv_norm() const { return std::exp(log_rho_inv_norm); }
  std::size_t size() const noexcept { return rho.size(); }
};

inline GibbsData gibbs_data(const StabilizerModel& model, double beta, std::size_t rank_cap = kDefaultSyndromeRankCap) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be a finite nonnegative number");
  GibbsData g;
  g.beta = beta;
  g.n_qubits = model.n_qubits();
  g.rank = model.rank();
  g.syndromes = model.realized_syndromes(rank_cap);
  g.degeneracy = std::ldexp(1.0, static_cast<int>(model.n_qubits() - model.rank()));
  double e_min = 0.0, e_max = 0.0;
  for (std::size_t i = 0; i < g.syndromes.size(); ++i) {
    g.energies.push_back(model.energy(g.syndromes[i]));
    const double e = g.energies.back().to_double();
    if (i == 0 || e < e_min) e_min = e;
    if (i == 0 || e > e_max) e_max = e;
    const Rational a = g.energies.back().sign() < 0 ? -g.energies.back() : g.energies.back();
    g.norm_h = std::max(g.norm_h, a);
  }
  double sum = 0.0;
  for (const auto& e : g.energies) sum += std::exp(-beta * (e.to_double() - e_min));
  g.log_z = -beta * e_min + std::log(sum) + std::log(g.degeneracy);
  for (const auto& e : g.energies) {
    g.log_rho.push_back(-beta * e.to_double() - g.log_z);
    g.rho.push_back(std::exp(g.log_rho.back()));
  }
  g.log_rho_inv_norm = beta * e_max + g.log_z;
  return g;
}

struct MixingTimeBound {
  double exact = 0.0;        // (1 + 1/2 ln ||rho^{-1}||) / lambda
  double norm_variant = 0.0; // same with ln ||rho^{-1}|| <= N ln 2 + 2 beta ||H||
  double log_rho_inv_norm = 0.0;
  double log_rho_inv_bound = 0.0;
};

/// Upper bound on the time for ||phi(t) - rho||_1 <= e^{-1}, from
/// ||phi(t) - rho||_1 <= sqrt(||rho^{-1}||) e^{-lambda t}.
inline MixingTimeBound mixing_time_bound(double gap, const GibbsData& g) {
  if (!(gap > 0.0)) throw ValidationError("mixing time needs a positive gap");
  MixingTimeBound m;
  m.log_rho_inv_norm = g.log_rho_inv_norm;
  m.log_rho_inv_bound = static_cast<double>(g.n_qubits) * std::log(2.0) + 2.0 * g.beta * g.norm_h.to_double();
  m.exact = (1.0 + 0.5 * m.log_rho_inv_norm) / gap;
  m.norm_variant = (1.0 + 0.5 * m.log_rho_inv_bound) / gap;
  return m;
}

}  // namespace stabgap
