#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "stabgap/bath.hpp"
#include "stabgap/errors.hpp"
#include "stabgap/gfunction.hpp"
#include "stabgap/gibbs.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

inline constexpr std::size_t kDefaultDenseCap = 6;

using cplx = std::complex<double>;

/// Explicit 2^N-dimensional matrices for small models. Basis state |k> has
/// qubit j in bit j of k. Superoperators are written in the Pauli basis
/// sigma_gamma, gamma = x + 2^N z, with coordinates tr[sigma_gamma A]/2^N.
class DenseSpace {
 public:
  explicit DenseSpace(std::size_t n_qubits, std::size_t cap = kDefaultDenseCap) : n_(n_qubits) {
    if (n_qubits > cap || n_qubits > 12)
      throw ResourceError("dense construction needs N <= " + std::to_string(cap) + ", got N = " +
                          std::to_string(n_qubits) + "; use the coset method");
    d_ = std::size_t{1} << n_;
  }

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }
  std::size_t n_paulis() const noexcept { return d_ * d_; }

  static std::uint64_t x_of(std::uint64_t gamma, std::size_t n) { return gamma & ((std::uint64_t{1} << n) - 1); }
  static std::uint64_t z_of(std::uint64_t gamma, std::size_t n) { return gamma >> n; }
  std::uint64_t index(const PauliOperator& p) const { return p.x().low_word() | (p.z().low_word() << n_); }

  /// sigma(x, z) = i^{|x & z|} X^x Z^z.
  Eigen::MatrixXcd pauli(std::uint64_t gamma) const {
    const std::uint64_t x = x_of(gamma, n_), z = z_of(gamma, n_);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d_), static_cast<Eigen::Index>(d_));
    const cplx ph = ipow(std::popcount(x & z));
    for (std::uint64_t k = 0; k < d_; ++k)
      m(static_cast<Eigen::Index>(k ^ x), static_cast<Eigen::Index>(k)) =
          (std::popcount(z & k) & 1) ? -ph : ph;
    return m;
  }
  Eigen::MatrixXcd pauli(const PauliOperator& p) const { return pauli(index(p)); }

  /// Pauli coordinates c_gamma = tr[sigma_gamma m] / 2^N.
  Eigen::VectorXcd coords(const Eigen::MatrixXcd& m) const {
    Eigen::VectorXcd c(static_cast<Eigen::Index>(n_paulis()));
    for (std::uint64_t g = 0; g < n_paulis(); ++g) {
      const std::uint64_t x = x_of(g, n_), z = z_of(g, n_);
      cplx acc = 0.0;
      for (std::uint64_t l = 0; l < d_; ++l) {
        const cplx v = m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l ^ x));
        acc += (std::popcount(z & l) & 1) ? -v : v;
      }
      c(static_cast<Eigen::Index>(g)) = ipow(std::popcount(x & z)) * acc / static_cast<double>(d_);
    }
    return c;
  }

  Eigen::MatrixXcd from_coords(const Eigen::VectorXcd& c) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d_), static_cast<Eigen::Index>(d_));
    for (std::uint64_t g = 0; g < n_paulis(); ++g)
      if (c(static_cast<Eigen::Index>(g)) != cplx(0.0)) m += c(static_cast<Eigen::Index>(g)) * pauli(g);
    return m;
  }

  /// Matrix of a Hermiticity-preserving superoperator; the Pauli-basis entries are real.
  Eigen::MatrixXd superoperator(const std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>& map) const {
    const auto np = static_cast<Eigen::Index>(n_paulis());
    Eigen::MatrixXd out(np, np);
    for (Eigen::Index g = 0; g < np; ++g) out.col(g) = coords(map(pauli(static_cast<std::uint64_t>(g)))).real();
    return out;
  }

  /// Partial trace over one site, re-embedded: ptr_j(A) = 1/2 I_j (x) tr_j A.
  Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& a, std::size_t site) const {
    const std::uint64_t bit = std::uint64_t{1} << site;
    Eigen::MatrixXcd out(a.rows(), a.cols());
    for (std::uint64_t k = 0; k < d_; ++k)
      for (std::uint64_t l = 0; l < d_; ++l) {
        if (((k ^ l) & bit) != 0) {
          out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = 0.0;
          continue;
        }
        const auto k0 = static_cast<Eigen::Index>(k & ~bit), k1 = static_cast<Eigen::Index>(k | bit);
        const auto l0 = static_cast<Eigen::Index>(l & ~bit), l1 = static_cast<Eigen::Index>(l | bit);
        out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = 0.5 * (a(k0, l0) + a(k1, l1));
      }
    return out;
  }

 private:
  static cplx ipow(int k) {
    switch (k & 3) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }

  std::size_t n_ = 0;
  std::size_t d_ = 1;
};

/// P(b) = prod_k (I + (-1)^{b_k} g_k) / 2.
inline Eigen::MatrixXcd dense_projector(const DenseSpace& space, const StabilizerModel& model, const Syndrome& b) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(d, d);
  for (std::size_t k = 0; k < model.n_generators(); ++k) {
    const Eigen::MatrixXcd g = space.pauli(model.generator(k));
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd factor = b.get(k) ? Eigen::MatrixXcd(eye - g) : Eigen::MatrixXcd(eye + g);
    p = 0.5 * p * factor;
  }
  return p;
}

/// Dense projectors of every realized syndrome, in index order.
inline std::vector<Eigen::MatrixXcd> dense_projectors(const DenseSpace& space, const StabilizerModel& model) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& a : model.realized_syndromes()) out.push_back(dense_projector(space, model, a));
  return out;
}

/// Heat-bath generator Q(f) = sum_j (ptr_j(gamma_j f gamma_j) - f), Heisenberg picture,
/// with gamma_j = sum_a G_j(a) P(a).
inline Eigen::MatrixXd heatbath_dense(const StabilizerModel& model, const BathSpec& bath,
                                      std::size_t cap = kDefaultDenseCap) {
  const DenseSpace space(model.n_qubits(), cap);
  const auto projectors = dense_projectors(space, model);
  const auto syndromes = model.realized_syndromes();
  const auto d = static_cast<Eigen::Index>(space.dim());
  std::vector<Eigen::MatrixXcd> gamma;
  for (std::size_t j = 0; j < model.n_qubits(); ++j) {
    const LocalG g(model, j, bath.beta);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 0; i < syndromes.size(); ++i) m += g.value(g.project(syndromes[i])) * projectors[i];
    gamma.push_back(std::move(m));
  }
  return space.superoperator([&](const Eigen::MatrixXcd& f) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t j = 0; j < gamma.size(); ++j)
      out += space.partial_trace(gamma[j] * f * gamma[j], j) - f;
    return out;
  });
}

/// Davies generator with jumps S = sigma^alpha_j Pi_omega, where Pi_omega sums
/// P(a) over realized a with omega^{alpha_j}(a) = omega (exact rational grouping):
/// L(f) = sum h(omega) (S^dag f S - 1/2 {S^dag S, f}).
inline Eigen::MatrixXd davies_dense(const StabilizerModel& model, const BathSpec& bath,
                                    std::size_t cap = kDefaultDenseCap) {
  const DenseSpace space(model.n_qubits(), cap);
  const auto projectors = dense_projectors(space, model);
  const auto syndromes = model.realized_syndromes();
  const auto d = static_cast<Eigen::Index>(space.dim());
  struct Jump {
    Eigen::MatrixXcd s, s_dag, pi;
    double rate;
  };
  std::vector<Jump> jumps;
  for (std::size_t j = 0; j < model.n_qubits(); ++j)
    for (auto alpha : kNontrivialLocalPaulis) {
      const PauliOperator p = PauliOperator::single(model.n_qubits(), j, alpha);
      const Eigen::MatrixXcd sigma = space.pauli(p);
      std::map<Rational, Eigen::MatrixXcd> groups;
      for (std::size_t i = 0; i < syndromes.size(); ++i) {
        const Rational w = model.bohr_frequency(syndromes[i], p);
        auto it = groups.try_emplace(w, Eigen::MatrixXcd::Zero(d, d)).first;
        it->second += projectors[i];
      }
      for (auto& [w, pi] : groups) {
        Jump jump{sigma * pi, {}, pi, bath.rate(w)};
        jump.s_dag = jump.s.adjoint();
        jumps.push_back(std::move(jump));
      }
    }
  return space.superoperator([&](const Eigen::MatrixXcd& f) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& jump : jumps)
      out += jump.rate * (jump.s_dag * f * jump.s - 0.5 * (jump.pi * f + f * jump.pi));
    return out;
  });
}

/// Dense rho^p = sum_a rho_a^p P(a).
inline Eigen::MatrixXcd dense_gibbs_power(const DenseSpace& space, const StabilizerModel& model, const GibbsData& g,
                                          double power) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < g.size(); ++i)
    m += std::exp(power * g.log_rho[i]) * dense_projector(space, model, g.syndromes[i]);
  return m;
}

/// Matrix of f -> rho^p f rho^p in the Pauli basis (real symmetric).
inline Eigen::MatrixXd gibbs_sandwich(const DenseSpace& space, const StabilizerModel& model, const GibbsData& g,
                                      double power) {
  const Eigen::MatrixXcd r = dense_gibbs_power(space, model, g, power);
  return space.superoperator([&](const Eigen::MatrixXcd& f) { return Eigen::MatrixXcd(r * f * r); });
}

/// Dirichlet-form matrix of a generator: E(f) = -tr[rho^{1/2} f^dag rho^{1/2} L(f)] = c^dag E c
/// for f = sum_gamma c_gamma sigma_gamma, i.e. E = -2^N S L with S the rho^{1/2} sandwich.
inline Eigen::MatrixXd dirichlet_dense_from_generator(const Eigen::MatrixXd& generator, const Eigen::MatrixXd& sandwich,
                                                      std::size_t dim) {
  if (generator.rows() != sandwich.rows() || generator.cols() != sandwich.cols())
    throw DimensionError("generator and weight matrices differ in size");
  return -static_cast<double>(dim) * sandwich * generator;
}

/// Structural residuals of a Heisenberg-picture generator in the Pauli basis.
struct GeneratorResiduals {
  double unitality = 0.0;       // max |L(I)|
  double fixed_point = 0.0;     // max |L^*(rho)|
  double detailed_balance = 0.0; // max |E - E^T|
  double spectrum_imag = 0.0;   // max |Im lambda| over the spectrum of L
};

inline GeneratorResiduals generator_residuals(const DenseSpace& space, const StabilizerModel& model,
                                              const GibbsData& g, const Eigen::MatrixXd& generator) {
  GeneratorResiduals r;
  r.unitality = generator.col(0).cwiseAbs().maxCoeff();
  const Eigen::VectorXd rho_c = space.coords(dense_gibbs_power(space, model, g, 1.0)).real();
  r.fixed_point = (generator.transpose() * rho_c).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd e =
      dirichlet_dense_from_generator(generator, gibbs_sandwich(space, model, g, 0.5), space.dim());
  r.detailed_balance = (e - e.transpose()).cwiseAbs().maxCoeff();
  const Eigen::EigenSolver<Eigen::MatrixXd> es(generator, false);
  r.spectrum_imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
  return r;
}

}  // namespace stabgap
