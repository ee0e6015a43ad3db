#include "dtrine/qmath.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtrine {

bool is_hermitian(const Operator& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

Operator projector(const Ket& v) { return v * v.adjoint(); }

Ket tensor(const Ket& a, const Ket& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Operator tensor(const Operator& a, const Operator& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

EigResult eig_hermitian(const Operator& m) {
  if (!is_hermitian(m, 1e-10)) {
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  const auto n = m.rows();
  EigResult result;
  result.values = solver.eigenvalues().reverse();
  result.vectors = Operator(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    result.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return result;
}

void validate_density(const Operator& rho) {
  if (rho.rows() != rho.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  if (!is_hermitian(rho, 1e-12)) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-12 ||
      std::abs(rho.trace().imag()) > 1e-12) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix must be positive semidefinite");
  }
}

double von_neumann_entropy(const Operator& rho) {
  validate_density(rho);
  Eigen::SelfAdjointEigenSolver<Operator> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda > kEntropyCutoff) entropy -= lambda * std::log2(lambda);
  }
  return std::max(entropy, 0.0);
}

double holevo(std::span<const Operator> states, std::span<const double> priors) {
  if (states.empty() || states.size() != priors.size()) {
    throw std::invalid_argument("holevo: states and priors must match and be nonempty");
  }
  double total = 0.0;
  for (double p : priors) {
    if (p < -1e-12) throw std::invalid_argument("holevo: negative prior");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("holevo: priors must sum to 1");
  }
  const auto dim = states[0].rows();
  Operator mix = Operator::Zero(dim, dim);
  double mean_entropy = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].rows() != dim || states[i].cols() != dim) {
      throw std::invalid_argument("holevo: state dimension mismatch");
    }
    mix += priors[i] * states[i];
    mean_entropy += priors[i] * von_neumann_entropy(states[i]);
  }
  return std::max(von_neumann_entropy(mix) - mean_entropy, 0.0);
}

namespace {

// Pauli matrices in the basis the caller supplies the result in; any
// orthonormal su(2) basis yields the Haar distribution.
const Operator& sigma(int i) {
  static const Operator x = (Operator(2, 2) << 0, 1, 1, 0).finished();
  static const Operator y =
      (Operator(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Operator z = (Operator(2, 2) << 1, 0, 0, -1).finished();
  static const std::array<const Operator*, 3> all = {&x, &y, &z};
  return *all[i];
}

}  // namespace

Operator haar_random_su2(std::mt19937_64& rng) {
  std::array<double, 4> g{};
  double norm2 = 0.0;
  do {
    for (int i = 0; i < 4; i += 2) {
      const double u1 = 1.0 - uniform01(rng);  // (0, 1]
      const double u2 = uniform01(rng);
      const double r = std::sqrt(-2.0 * std::log(u1));
      g[i] = r * std::cos(2.0 * std::numbers::pi * u2);
      g[i + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    norm2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
  } while (norm2 < 1e-12);
  const double norm = std::sqrt(norm2);
  Operator u = (g[0] / norm) * Operator::Identity(2, 2);
  for (int i = 0; i < 3; ++i) {
    u += Complex(0, g[i + 1] / norm) * sigma(i);
  }
  return u;
}

}  // namespace dtrine
