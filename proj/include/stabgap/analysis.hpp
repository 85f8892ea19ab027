#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stabgap/bath.hpp"
#include "stabgap/coset.hpp"
#include "stabgap/dense.hpp"
#include "stabgap/errors.hpp"
#include "stabgap/gfunction.hpp"
#include "stabgap/gibbs.hpp"
#include "stabgap/high_temperature.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

/// Dense generator of one family together with the Gibbs sandwiches needed
/// to symmetrize it.
struct DenseGenerator {
  DenseSpace space;
  GibbsData gibbs;
  GeneratorFamily family;
  Eigen::MatrixXd generator;    // Heisenberg picture, Pauli basis
  Eigen::MatrixXd sqrt_weight;  // f -> rho^{1/2} f rho^{1/2}
  Eigen::MatrixXd quarter;      // f -> rho^{1/4} f rho^{1/4}
  Eigen::MatrixXd inv_quarter;  // f -> rho^{-1/4} f rho^{-1/4}

  /// -2^N rho^{1/2} L rho^{1/2} as a form matrix.
  Eigen::MatrixXd dirichlet() const { return dirichlet_dense_from_generator(generator, sqrt_weight, space.dim()); }

  /// -K L K^{-1} with K the rho^{1/4} sandwich: symmetric and similar to -L.
  Eigen::MatrixXd symmetrized() const {
    const Eigen::MatrixXd s = -quarter * generator * inv_quarter;
    return 0.5 * (s + s.transpose());
  }
};

inline DenseGenerator dense_generator(const StabilizerModel& model, const BathSpec& bath, GeneratorFamily family,
                                      std::size_t cap = kDefaultDenseCap) {
  DenseGenerator g{DenseSpace(model.n_qubits(), cap), gibbs_data(model, bath.beta), family, {}, {}, {}, {}};
  g.generator = family == GeneratorFamily::davies ? davies_dense(model, bath, cap) : heatbath_dense(model, bath, cap);
  g.sqrt_weight = gibbs_sandwich(g.space, model, g.gibbs, 0.5);
  g.quarter = gibbs_sandwich(g.space, model, g.gibbs, 0.25);
  g.inv_quarter = gibbs_sandwich(g.space, model, g.gibbs, -0.25);
  return g;
}

inline GapResult dense_gap(const DenseGenerator& g) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.symmetrized(), Eigen::EigenvaluesOnly);
  return spectral_gap(std::vector<Eigen::VectorXd>{es.eigenvalues()}, "dense");
}

/// Spectral gap of one generator family by either method.
inline GapResult generator_gap(const StabilizerModel& model, const BathSpec& bath, GeneratorFamily family,
                               const std::string& method) {
  if (method == "dense") return dense_gap(dense_generator(model, bath, family));
  if (method == "coset") return coset_gap(model, bath, family);
  throw ValidationError("unknown gap method '" + method + "'");
}

/// tau = max_{j,a} 2 G_j^2(a) / h_min over realized a; lambda_D >= tau^{-1} lambda_Q.
struct TauResult {
  double tau = 0.0;
  double r_lower = 0.0;  // 1/2 h_min e^{-2 beta J S_*}, a lower bound on 1/tau
  double h_min = 0.0;
  std::size_t s_star = 0;
};

inline TauResult tau_and_r(const StabilizerModel& model, const BathSpec& bath) {
  TauResult r;
  r.h_min = h_min(model, bath);
  const auto syndromes = model.realized_syndromes();
  double gmax = 0.0;
  for (std::size_t j = 0; j < model.n_qubits(); ++j) {
    const LocalG g(model, j, bath.beta);
    for (const auto& a : syndromes) gmax = std::max(gmax, g.g_squared(g.project(a)));
  }
  r.tau = 2.0 * gmax / r.h_min;
  r.s_star = adjacency(model).s_star_max;
  r.r_lower = 0.5 * r.h_min * std::exp(-2.0 * bath.beta * model.max_coupling().to_double() *
                                       static_cast<double>(r.s_star));
  return r;
}

struct VarianceDirichlet {
  double variance = 0.0;
  double dirichlet = 0.0;
};

/// Var(f) = tr[rho^{1/2} f^dag rho^{1/2} f] - |tr[rho f]|^2 and E(f) = c^dag E c,
/// for f with Pauli coordinates c.
inline VarianceDirichlet variance_and_dirichlet(const DenseGenerator& g, const Eigen::VectorXcd& c,
                                                const Eigen::MatrixXd& form) {
  const double d = static_cast<double>(g.space.dim());
  const Eigen::VectorXcd wc = g.sqrt_weight.cast<cplx>() * c;
  // tr[rho f] = d * <coords(rho), c>, and coords(rho) is the first column of the sandwich with p = 1/2 at I.
  const cplx mean = d * g.sqrt_weight.col(0).cast<cplx>().dot(c);
  VarianceDirichlet v;
  v.variance = d * c.dot(wc).real() - std::norm(mean);
  v.dirichlet = c.dot(form.cast<cplx>() * c).real();
  return v;
}

inline bool poincare_holds(double gap, const VarianceDirichlet& v, double slack = 1e-10) {
  return gap * v.variance <= v.dirichlet + slack;
}

/// Operator norm of a Hermitian matrix.
inline double operator_norm(const Eigen::MatrixXcd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// |||f||| = sum_k ||f - ptr_k f||. In Pauli coordinates f - ptr_k f keeps the
/// terms with a nontrivial factor on site k.
inline double oscillator_norm(const DenseSpace& space, const Eigen::VectorXcd& c) {
  double total = 0.0;
  const std::size_t n = space.n_qubits();
  for (std::size_t k = 0; k < n; ++k) {
    Eigen::VectorXcd part = Eigen::VectorXcd::Zero(c.size());
    for (std::uint64_t g = 0; g < space.n_paulis(); ++g) {
      const bool on_k = ((DenseSpace::x_of(g, n) | DenseSpace::z_of(g, n)) >> k) & 1u;
      if (on_k) part(static_cast<Eigen::Index>(g)) = c(static_cast<Eigen::Index>(g));
    }
    total += operator_norm(space.from_coords(part));
  }
  return total;
}

struct ErgodicityPoint {
  double t = 0.0;
  double lhs = 0.0;  // ||T_t f - tr(rho f)||
  double rhs = 0.0;  // e^{-(1 - kappa) t} |||f|||
  bool holds = false;
};

/// Evolves f under the heat-bath semigroup e^{tQ} through the eigendecomposition
/// of the symmetrized generator and compares with the oscillator-norm decay.
inline std::vector<ErgodicityPoint> ergodicity_check(const DenseGenerator& q, const Eigen::VectorXcd& c,
                                                     const std::vector<double>& times, double kappa,
                                                     double slack = 1e-10) {
  if (q.family != GeneratorFamily::heatbath) throw ValidationError("ergodicity check needs the heat-bath generator");
  if (!(kappa < 1.0)) throw ValidationError("ergodicity check needs kappa < 1");
  const Eigen::MatrixXd s = q.quarter * q.generator * q.inv_quarter;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (s + s.transpose()));
  const double d = static_cast<double>(q.space.dim());
  const cplx mean = d * q.sqrt_weight.col(0).cast<cplx>().dot(c);
  const double osc = oscillator_norm(q.space, c);
  std::vector<ErgodicityPoint> out;
  for (double t : times) {
    const Eigen::VectorXd decay = (t * es.eigenvalues().array()).exp().matrix();
    const Eigen::MatrixXd prop =
        q.inv_quarter * es.eigenvectors() * decay.asDiagonal() * es.eigenvectors().transpose() * q.quarter;
    Eigen::VectorXcd evolved = prop.cast<cplx>() * c;
    evolved(0) -= mean;
    ErgodicityPoint p;
    p.t = t;
    p.lhs = operator_norm(q.space.from_coords(evolved));
    p.rhs = std::exp(-(1.0 - kappa) * t) * osc;
    p.holds = p.lhs <= p.rhs + slack;
    out.push_back(p);
  }
  return out;
}

}  // namespace stabgap
