#pragma once

// Brute-force reference constructions shared by the unit and acceptance tests.
// Everything here works with explicit 2^N x 2^N matrices built by Kronecker
// products and never touches the library's Pauli-coordinate machinery.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "stabgap/stabgap.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat local(stabgap::LocalPauli p) {
  Mat m(2, 2);
  switch (p) {
    case stabgap::LocalPauli::I: m << 1, 0, 0, 1; break;
    case stabgap::LocalPauli::X: m << 0, 1, 1, 0; break;
    case stabgap::LocalPauli::Z: m << 1, 0, 0, -1; break;
    case stabgap::LocalPauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Site 0 is the leftmost tensor factor.
inline Mat matrix(const stabgap::PauliOperator& p) {
  Mat m = Mat::Identity(1, 1);
  for (std::size_t j = 0; j < p.n_qubits(); ++j) m = kron(m, local(p.at(j)));
  return m;
}

inline std::size_t dim(const stabgap::StabilizerModel& m) { return std::size_t{1} << m.n_qubits(); }

inline Mat hamiltonian(const stabgap::StabilizerModel& m) {
  Mat h = Mat::Zero(dim(m), dim(m));
  for (std::size_t k = 0; k < m.n_generators(); ++k) h -= m.coupling(k).to_double() * matrix(m.generator(k));
  return h;
}

inline Mat projector(const stabgap::StabilizerModel& m, const stabgap::Syndrome& b) {
  const Mat id = Mat::Identity(dim(m), dim(m));
  Mat p = id;
  for (std::size_t k = 0; k < m.n_generators(); ++k) p = p * (0.5 * (id + (b.get(k) ? -1.0 : 1.0) * matrix(m.generator(k))));
  return p;
}

inline Mat gibbs(const stabgap::StabilizerModel& m, double beta) {
  const Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian(m));
  const Eigen::VectorXd w = (-beta * es.eigenvalues().array()).exp().matrix();
  Mat r = es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  return r / r.trace();
}

// Column-major vectorization: vec(A X B) = (B^T kron A) vec(X).
inline Mat left(const Mat& a) { return kron(Mat::Identity(a.rows(), a.rows()), a); }
inline Mat right(const Mat& b) { return kron(b.transpose(), Mat::Identity(b.rows(), b.rows())); }

// Heisenberg-picture Davies generator from explicit jump operators
// S_w = sum_{a : w(a) = w} P(a ^ e(alpha)) sigma P(a), rate h(w).
inline Mat davies(const stabgap::StabilizerModel& m, const stabgap::BathSpec& bath) {
  const std::size_t d = dim(m);
  const auto syn = m.realized_syndromes();
  Mat out = Mat::Zero(d * d, d * d);
  for (std::size_t j = 0; j < m.n_qubits(); ++j)
    for (auto alpha : stabgap::kNontrivialLocalPaulis) {
      const auto p = stabgap::PauliOperator::single(m.n_qubits(), j, alpha);
      const Mat sigma = matrix(p);
      const auto e = m.syndrome(p);
      std::map<stabgap::Rational, Mat> jumps;
      for (const auto& a : syn) {
        const auto w = m.bohr_frequency(a, p);
        auto it = jumps.try_emplace(w, Mat::Zero(d, d)).first;
        it->second += projector(m, a ^ e) * sigma * projector(m, a);
      }
      for (const auto& [w, s] : jumps) {
        const Mat sd = s.adjoint();
        const Mat ss = sd * s;
        out += bath.rate(w) * (left(sd) * right(s) - 0.5 * (left(ss) + right(ss)));
      }
    }
  return out;
}

inline double g_squared(const stabgap::StabilizerModel& m, double beta, std::size_t j, const stabgap::Syndrome& a) {
  double s = 0.0;
  for (auto alpha : stabgap::kLocalPaulis)
    s += std::exp(beta * m.bohr_frequency(a, stabgap::PauliOperator::single(m.n_qubits(), j, alpha)).to_double());
  return 4.0 / s;
}

// Q(f) = sum_j (ptr_j(gamma_j f gamma_j) - f), ptr_j(A) = 1/4 sum_sigma sigma_j A sigma_j.
inline Mat heatbath(const stabgap::StabilizerModel& m, double beta) {
  const std::size_t d = dim(m);
  const auto syn = m.realized_syndromes();
  Mat out = Mat::Zero(d * d, d * d);
  for (std::size_t j = 0; j < m.n_qubits(); ++j) {
    Mat gamma = Mat::Zero(d, d);
    for (const auto& a : syn) gamma += std::sqrt(g_squared(m, beta, j, a)) * projector(m, a);
    Mat ptr = Mat::Zero(d * d, d * d);
    for (auto alpha : stabgap::kLocalPaulis) {
      const Mat s = matrix(stabgap::PauliOperator::single(m.n_qubits(), j, alpha));
      ptr += 0.25 * left(s) * right(s);
    }
    out += ptr * left(gamma) * right(gamma) - Mat::Identity(d * d, d * d);
  }
  return out;
}

inline Eigen::VectorXd sorted_real(const Eigen::VectorXcd& v) {
  Eigen::VectorXd r = v.real();
  std::sort(r.data(), r.data() + r.size());
  return r;
}

// Smallest nonzero |Re lambda| of a generator with a single zero mode.
inline double gap(const Mat& generator) {
  const Eigen::ComplexEigenSolver<Mat> es(generator, false);
  Eigen::VectorXd re = -sorted_real(es.eigenvalues()).reverse();
  std::sort(re.data(), re.data() + re.size());
  const double tol = 1e-9 * std::max(1.0, re.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < re.size(); ++i)
    if (re(i) > tol) return re(i);
  return 0.0;
}

inline stabgap::StabilizerModel single_z() { return stabgap::parse_model("qubits 1\nterm 1 Z\n"); }
inline stabgap::StabilizerModel ising_pair() { return stabgap::build_ising(1, 2, false); }
inline stabgap::StabilizerModel chain3() { return stabgap::build_ising(1, 3, false); }
inline stabgap::StabilizerModel torus2() { return stabgap::build_ising(2, 2, true); }

// A three-qubit model mixing X and Z generators.
inline stabgap::StabilizerModel mixed3() { return stabgap::parse_model("qubits 3\nterm 1 ZZI\nterm 1/2 IZZ\nterm 3/2 XXX\n"); }

}  // namespace oracle
