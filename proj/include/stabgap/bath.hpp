#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stabgap/errors.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

enum class RatePreset { glauber, metropolis, custom_table };

inline std::string to_string(RatePreset p) {
  switch (p) {
    case RatePreset::glauber: return "glauber";
    case RatePreset::metropolis: return "metropolis";
    case RatePreset::custom_table: return "custom-table";
  }
  return "?";
}

inline RatePreset parse_rate_preset(const std::string& s) {
  if (s == "glauber") return RatePreset::glauber;
  if (s == "metropolis") return RatePreset::metropolis;
  if (s == "custom-table" || s == "custom") return RatePreset::custom_table;
  throw ValidationError("unknown bath preset '" + s + "'");
}

/// Inverse temperature plus a KMS-consistent transition-rate function h(omega).
///
/// omega > 0 means the system hands energy omega to the bath. Both presets
/// satisfy h(-omega) = e^{-beta omega} h(omega) identically.
struct BathSpec {
  double beta = 0.0;
  RatePreset preset = RatePreset::glauber;
  std::map<Rational, double> table;  // only for custom_table

  static BathSpec glauber(double beta) { return {check_beta(beta), RatePreset::glauber, {}}; }
  static BathSpec metropolis(double beta) { return {check_beta(beta), RatePreset::metropolis, {}}; }
  static BathSpec custom(double beta, std::map<Rational, double> table) {
    return {check_beta(beta), RatePreset::custom_table, std::move(table)};
  }

  double rate(const Rational& omega) const {
    const double w = omega.to_double();
    switch (preset) {
      case RatePreset::glauber: return 1.0 / (1.0 + std::exp(-beta * w));
      case RatePreset::metropolis: return std::min(1.0, std::exp(beta * w));
      case RatePreset::custom_table: {
        auto it = table.find(omega);
        if (it == table.end()) throw ValidationError("rate table has no entry for omega = " + omega.str());
        return it->second;
      }
    }
    return 0.0;
  }

 private:
  static double check_beta(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be a finite nonnegative number");
    return beta;
  }
};

/// Patterns of the realized syndromes restricted to the generator indices `keys`,
/// as bitmasks where bit i is the syndrome bit of keys[i].
inline std::vector<std::uint64_t> realized_local_patterns(const StabilizerModel& model,
                                                          const std::vector<std::size_t>& keys) {
  if (keys.size() > 30) throw ResourceError("local syndrome pattern over more than 30 generators");
  std::vector<std::uint64_t> span;  // reduced basis of the projected space
  for (const auto& b : model.realized_syndrome_basis()) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (b.get(keys[i])) v |= std::uint64_t{1} << i;
    for (auto s : span) v = std::min(v, v ^ s);
    if (v) {
      span.push_back(v);
      std::sort(span.rbegin(), span.rend());
    }
  }
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << span.size());
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << span.size()); ++c) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < span.size(); ++i)
      if ((c >> i) & 1u) v ^= span[i];
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every Bohr frequency omega^{alpha_j}(a) over sites j, nontrivial single-site
/// Paulis alpha_j and realized syndromes a, sorted ascending.
inline std::vector<Rational> realized_bohr_frequencies(const StabilizerModel& model) {
  std::set<Rational> seen;
  for (std::size_t j = 0; j < model.n_qubits(); ++j) {
    for (auto p : kNontrivialLocalPaulis) {
      const Syndrome e = model.syndrome(PauliOperator::single(model.n_qubits(), j, p));
      std::vector<std::size_t> keys;
      for (std::size_t k = 0; k < e.size(); ++k)
        if (e.get(k)) keys.push_back(k);
      for (auto pattern : realized_local_patterns(model, keys)) {
        Rational w;
        for (std::size_t i = 0; i < keys.size(); ++i) {
          const Rational t = model.coupling(keys[i]) * Rational(2);
          w += ((pattern >> i) & 1u) ? t : -t;
        }
        seen.insert(w);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

/// Smallest transition rate over all realized Bohr frequencies.
inline double h_min(const StabilizerModel& model, const BathSpec& bath) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& w : realized_bohr_frequencies(model)) m = std::min(m, bath.rate(w));
  if (!(m > 0.0)) throw ValidationError("transition rates must be positive on every realized Bohr frequency");
  return m;
}

/// Checks positivity and h(-w) = e^{-beta w} h(w) on every realized frequency.
inline void validate_bath(const StabilizerModel& model, const BathSpec& bath, double rel_tol = 1e-12) {
  for (const auto& w : realized_bohr_frequencies(model)) {
    const double hw = bath.rate(w);
    const double hm = bath.rate(-w);
    if (!(hw > 0.0) || !std::isfinite(hw))
      throw ValidationError("rate at omega = " + w.str() + " must be positive and finite");
    const double expect = std::exp(-bath.beta * w.to_double()) * hw;
    if (std::abs(hm - expect) > rel_tol * std::max(std::abs(hm), std::abs(expect)))
      throw ValidationError("rate function violates the KMS condition at omega = " + w.str());
  }
}

}  // namespace stabgap
