#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "stabgap/bath.hpp"
#include "stabgap/errors.hpp"
#include "stabgap/gfunction.hpp"
#include "stabgap/gibbs.hpp"
#include "stabgap/linalg.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

enum class GeneratorFamily { davies, heatbath };

inline std::string to_string(GeneratorFamily f) { return f == GeneratorFamily::davies ? "davies" : "heatbath"; }

inline GeneratorFamily parse_generator_family(const std::string& s) {
  if (s == "davies") return GeneratorFamily::davies;
  if (s == "heatbath" || s == "heat-bath") return GeneratorFamily::heatbath;
  throw ValidationError("unknown generator family '" + s + "'");
}

inline constexpr std::size_t kDefaultCosetRankCap = 20;
inline constexpr std::uint64_t kDefaultCosetCountCap = std::uint64_t{1} << 20;

/// One representative per coset of the stabilizer group in the phase-free
/// Pauli group: vectors with zeros at the pivot columns of the reduced
/// generator span. Index 0 is the identity coset.
inline std::vector<PauliOperator> coset_representatives(const StabilizerModel& model,
                                                        std::uint64_t count_cap = kDefaultCosetCountCap) {
  const std::size_t n = model.n_qubits();
  if (2 * n > 62) throw ResourceError("coset enumeration supports N <= 31");
  auto pack = [&](const PauliOperator& p) { return p.x().low_word() | (p.z().low_word() << n); };
  std::vector<std::uint64_t> basis;
  std::vector<int> pivots;
  for (const auto& g : model.generators()) {
    std::uint64_t v = pack(g);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if ((v >> pivots[i]) & 1u) v ^= basis[i];
    if (!v) continue;
    const int p = std::countr_zero(v);
    for (auto& b : basis)
      if ((b >> p) & 1u) b ^= v;
    basis.push_back(v);
    pivots.push_back(p);
  }
  std::uint64_t pivot_mask = 0;
  for (int p : pivots) pivot_mask |= std::uint64_t{1} << p;
  std::vector<int> free_bits;
  for (int b = 0; b < static_cast<int>(2 * n); ++b)
    if (!((pivot_mask >> b) & 1u)) free_bits.push_back(b);
  if (free_bits.size() >= 63 || (std::uint64_t{1} << free_bits.size()) > count_cap)
    throw ResourceError("coset count 2^" + std::to_string(free_bits.size()) + " exceeds the cap");
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::vector<PauliOperator> reps;
  reps.reserve(std::size_t{1} << free_bits.size());
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << free_bits.size()); ++c) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < free_bits.size(); ++i)
      if ((c >> i) & 1u) v |= std::uint64_t{1} << free_bits[i];
    reps.push_back(PauliOperator::from_words(n, v & mask, v >> n));
  }
  return reps;
}

/// Per-model tables shared by every coset block: syndrome-index shifts of
/// single-site Paulis, heat-bath weights G_j(a), Bohr frequencies and rates.
///
/// Single-site Paulis are indexed I, X, Y, Z (0..3).
class CosetContext {
 public:
  CosetContext(const StabilizerModel& model, const BathSpec& bath, std::size_t rank_cap = kDefaultCosetRankCap)
      : model_(&model), bath_(bath) {
    if (model.rank() > rank_cap)
      throw ResourceError("coset blocks need 2^" + std::to_string(model.rank()) + " syndromes; cap is 2^" +
                          std::to_string(rank_cap));
    gibbs_ = gibbs_data(model, bath.beta, rank_cap);
    const std::size_t n = model.n_qubits();
    const std::size_t dim = gibbs_.size();
    shift_.assign(n, {0, 0, 0, 0});
    g_.assign(n, std::vector<double>(dim));
    omega_.assign(n, std::array<std::vector<Rational>, 4>{});
    rate_.assign(n, std::array<std::vector<double>, 4>{});
    std::map<Rational, double> rates;
    for (std::size_t j = 0; j < n; ++j) {
      const LocalG lg(model, j, bath.beta);
      for (std::size_t a = 0; a < dim; ++a) g_[j][a] = lg.value(lg.project(gibbs_.syndromes[a]));
      for (std::size_t s = 1; s < 4; ++s) {
        const PauliOperator p = PauliOperator::single(n, j, kLocalPaulis[s]);
        shift_[j][s] = model.syndrome_index(model.syndrome(p));
        omega_[j][s].resize(dim);
        rate_[j][s].resize(dim);
        for (std::size_t a = 0; a < dim; ++a) {
          const Rational w = model.bohr_frequency(gibbs_.syndromes[a], p);
          auto it = rates.find(w);
          if (it == rates.end()) it = rates.emplace(w, bath.rate(w)).first;
          omega_[j][s][a] = w;
          rate_[j][s][a] = it->second;
        }
      }
    }
  }

  const StabilizerModel& model() const noexcept { return *model_; }
  const BathSpec& bath() const noexcept { return bath_; }
  const GibbsData& gibbs() const noexcept { return gibbs_; }
  std::size_t dim() const noexcept { return gibbs_.size(); }

  std::uint64_t shift(std::size_t site, std::size_t s) const { return shift_[site][s]; }
  double g(std::size_t site, std::uint64_t a) const { return g_[site][a]; }
  const Rational& omega(std::size_t site, std::size_t s, std::uint64_t a) const { return omega_[site][s][a]; }
  double rate(std::size_t site, std::size_t s, std::uint64_t a) const { return rate_[site][s][a]; }

  /// Syndrome-index shift a -> a xor e(rep).
  std::uint64_t coset_shift(const PauliOperator& rep) const {
    return model_->syndrome_index(model_->syndrome(rep));
  }

  /// theta = +1 if the site-j Pauli commutes with rep, else -1.
  static int theta(const PauliOperator& rep, std::size_t site, std::size_t s) {
    const LocalPauli p = kLocalPaulis[s];
    const bool anti = (x_part(p) && rep.z().get(site)) != (z_part(p) && rep.x().get(site));
    return anti ? -1 : 1;
  }

  /// ln of the block weights w_a = <u_a, u_a>_rho = 2^N sqrt(rho_a rho_{a^gamma}).
  std::vector<double> log_weights(std::uint64_t gshift) const {
    const double ln_d = static_cast<double>(model_->n_qubits()) * std::log(2.0);
    std::vector<double> lw(dim());
    for (std::uint64_t a = 0; a < dim(); ++a)
      lw[a] = ln_d + 0.5 * (gibbs_.log_rho[a] + gibbs_.log_rho[a ^ gshift]);
    return lw;
  }

 private:
  const StabilizerModel* model_;
  BathSpec bath_;
  GibbsData gibbs_;
  std::vector<std::array<std::uint64_t, 4>> shift_;
  std::vector<std::vector<double>> g_;
  std::vector<std::array<std::vector<Rational>, 4>> omega_;
  std::vector<std::array<std::vector<double>, 4>> rate_;
};

/// Dirichlet-form matrix on the span of u_a = 2^{rank/2} P(a) sigma(rep),
/// a ranging over realized syndromes in index order.
struct CosetBlock {
  PauliOperator rep;
  GeneratorFamily family = GeneratorFamily::davies;
  Eigen::MatrixXd form;
  std::vector<double> log_weights;

  /// D^{-1/2} F D^{-1/2} with D = diag(w): similar to -L on the block.
  Eigen::MatrixXd symmetrized() const {
    Eigen::MatrixXd s = form;
    for (Eigen::Index a = 0; a < s.rows(); ++a)
      for (Eigen::Index b = 0; b < s.cols(); ++b)
        s(a, b) *= std::exp(-0.5 * (log_weights[static_cast<std::size_t>(a)] + log_weights[static_cast<std::size_t>(b)]));
    return s;
  }
};

/// Builds the block from the coefficient functions. With a^alpha = a xor e(alpha_j)
/// and a^gamma = a xor e(rep), per site j:
///   heat-bath, alpha in {I,X,Y,Z}:
///     A = 1/8 (G^2(a^alpha) + G^2(a^{alpha gamma})) w_a,  B = 1/4 G(a^alpha) G(a^{alpha gamma}) w_a
///   Davies, alpha in {X,Y,Z}:
///     A = 1/2 (h(omega(a)) + h(omega(a^gamma))) w_a,  B = h(omega(a)) [omega(a) = omega(a^gamma)] w_a
/// and the block is sum A |a><a| - theta B |a><a^alpha|.
inline CosetBlock dirichlet_block(const CosetContext& ctx, const PauliOperator& rep, GeneratorFamily family) {
  const std::size_t n = ctx.model().n_qubits();
  const auto dim = static_cast<Eigen::Index>(ctx.dim());
  const std::uint64_t gs = ctx.coset_shift(rep);
  CosetBlock blk;
  blk.rep = rep;
  blk.family = family;
  blk.log_weights = ctx.log_weights(gs);
  blk.form = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t first = family == GeneratorFamily::heatbath ? 0 : 1;
    for (std::size_t s = first; s < 4; ++s) {
      const std::uint64_t sh = ctx.shift(j, s);
      const int th = CosetContext::theta(rep, j, s);
      for (std::uint64_t a = 0; a < ctx.dim(); ++a) {
        const double w = std::exp(blk.log_weights[a]);
        double coef_a = 0.0, coef_b = 0.0;
        if (family == GeneratorFamily::heatbath) {
          const double g1 = ctx.g(j, a ^ sh), g2 = ctx.g(j, a ^ sh ^ gs);
          coef_a = 0.125 * (g1 * g1 + g2 * g2) * w;
          coef_b = 0.25 * g1 * g2 * w;
        } else {
          coef_a = 0.5 * (ctx.rate(j, s, a) + ctx.rate(j, s, a ^ gs)) * w;
          if (ctx.omega(j, s, a) == ctx.omega(j, s, a ^ gs)) coef_b = ctx.rate(j, s, a) * w;
        }
        const auto ia = static_cast<Eigen::Index>(a);
        blk.form(ia, ia) += coef_a;
        blk.form(ia, static_cast<Eigen::Index>(a ^ sh)) -= th * coef_b;
      }
    }
  }
  return blk;
}

/// Heisenberg generator restricted to the block, L(u_a) = sum_b L_{ba} u_b:
///   heat-bath: L_{a^alpha, a} += 1/4 theta G(a) G(a^gamma) (alpha incl. I), L_{aa} -= 1 per site
///   Davies:    L_{a^alpha, a} += theta h(omega(a^alpha)) [omega(a^alpha) = omega(a^{alpha gamma})],
///              L_{aa} -= 1/2 (h(omega(a)) + h(omega(a^gamma)))
inline Eigen::MatrixXd generator_block(const CosetContext& ctx, const PauliOperator& rep, GeneratorFamily family) {
  const std::size_t n = ctx.model().n_qubits();
  const auto dim = static_cast<Eigen::Index>(ctx.dim());
  const std::uint64_t gs = ctx.coset_shift(rep);
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    if (family == GeneratorFamily::heatbath) {
      for (std::size_t s = 0; s < 4; ++s) {
        const std::uint64_t sh = ctx.shift(j, s);
        const int th = CosetContext::theta(rep, j, s);
        for (std::uint64_t a = 0; a < ctx.dim(); ++a)
          l(static_cast<Eigen::Index>(a ^ sh), static_cast<Eigen::Index>(a)) +=
              0.25 * th * ctx.g(j, a) * ctx.g(j, a ^ gs);
      }
      l.diagonal().array() -= 1.0;
      continue;
    }
    for (std::size_t s = 1; s < 4; ++s) {
      const std::uint64_t sh = ctx.shift(j, s);
      const int th = CosetContext::theta(rep, j, s);
      for (std::uint64_t a = 0; a < ctx.dim(); ++a) {
        const std::uint64_t b = a ^ sh;
        const auto ia = static_cast<Eigen::Index>(a);
        if (ctx.omega(j, s, b) == ctx.omega(j, s, b ^ gs))
          l(static_cast<Eigen::Index>(b), ia) += th * ctx.rate(j, s, b);
        l(ia, ia) -= 0.5 * (ctx.rate(j, s, a) + ctx.rate(j, s, a ^ gs));
      }
    }
  }
  return l;
}

inline std::vector<CosetBlock> dirichlet_blocks(const StabilizerModel& model, const BathSpec& bath,
                                                GeneratorFamily family, std::size_t rank_cap = kDefaultCosetRankCap,
                                                std::uint64_t count_cap = kDefaultCosetCountCap) {
  const CosetContext ctx(model, bath, rank_cap);
  std::vector<CosetBlock> out;
  for (const auto& rep : coset_representatives(model, count_cap)) out.push_back(dirichlet_block(ctx, rep, family));
  return out;
}

/// Columns are the coordinates of u_a = 2^{rank/2} P(a) sigma(rep) in the Pauli
/// basis, so the Pauli-basis form matrix equals U F U^dag.
template <class Space, class Projectors>
Eigen::MatrixXcd coset_basis(const Space& space, const StabilizerModel& model, const Projectors& projectors,
                             const PauliOperator& rep) {
  const Eigen::MatrixXcd sigma = space.pauli(rep);
  const double scale = std::sqrt(std::ldexp(1.0, static_cast<int>(model.rank())));
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(space.n_paulis()), static_cast<Eigen::Index>(projectors.size()));
  for (std::size_t a = 0; a < projectors.size(); ++a)
    u.col(static_cast<Eigen::Index>(a)) = space.coords(Eigen::MatrixXcd(scale * projectors[a] * sigma));
  return u;
}

struct GapResult {
  double gap = 0.0;
  std::size_t zero_modes = 0;
  double largest = 0.0;
  double threshold = 0.0;
  std::size_t witness_block = 0;  // coset index holding the gap eigenvalue (0 for dense)
  std::string method;
};

inline constexpr double kZeroModeRelTol = 1e-9;

/// Smallest eigenvalue above 1e-9 x the largest, over all supplied spectra.
inline GapResult spectral_gap(const std::vector<Eigen::VectorXd>& spectra, std::string method) {
  GapResult r;
  r.method = std::move(method);
  for (const auto& s : spectra)
    if (s.size()) r.largest = std::max(r.largest, s.maxCoeff());
  r.threshold = kZeroModeRelTol * r.largest;
  r.gap = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < spectra.size(); ++b)
    for (Eigen::Index i = 0; i < spectra[b].size(); ++i) {
      const double v = spectra[b](i);
      if (v <= r.threshold) {
        ++r.zero_modes;
      } else if (v < r.gap) {
        r.gap = v;
        r.witness_block = b;
      }
    }
  if (r.zero_modes != 1)
    throw NonPrimitiveError("generator has " + std::to_string(r.zero_modes) +
                            " zero modes; the model/bath pair is not primitive");
  return r;
}

/// Gap from Dirichlet blocks: Jacobi on each symmetrized block.
inline GapResult spectral_gap(const std::vector<CosetBlock>& blocks) {
  std::vector<Eigen::VectorXd> spectra;
  spectra.reserve(blocks.size());
  for (const auto& b : blocks) spectra.push_back(jacobi_eigen(b.symmetrized()).values);
  return spectral_gap(spectra, "coset");
}

/// Coset-path gap without holding all blocks in memory.
inline GapResult coset_gap(const StabilizerModel& model, const BathSpec& bath, GeneratorFamily family,
                           std::size_t rank_cap = kDefaultCosetRankCap,
                           std::uint64_t count_cap = kDefaultCosetCountCap) {
  const CosetContext ctx(model, bath, rank_cap);
  std::vector<Eigen::VectorXd> spectra;
  for (const auto& rep : coset_representatives(model, count_cap))
    spectra.push_back(jacobi_eigen(dirichlet_block(ctx, rep, family).symmetrized()).values);
  return spectral_gap(spectra, "coset");
}

}  // namespace stabgap
