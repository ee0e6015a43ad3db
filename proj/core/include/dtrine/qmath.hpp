#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>

namespace dtrine {

using Complex = std::complex<double>;

// Kets may be unnormalized: squared norms carry probability weight.
using Ket = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;

// Eigenvalues below this are treated as exact zeros in entropy sums.
inline constexpr double kEntropyCutoff = 1e-12;

bool is_hermitian(const Operator& m, double tol = 1e-12);

/// |v><v|, unnormalized.
Operator projector(const Ket& v);

Ket tensor(const Ket& a, const Ket& b);
Operator tensor(const Operator& a, const Operator& b);

struct EigResult {
  Eigen::VectorXd values;  // descending
  Operator vectors;        // column i pairs with values[i]
};

/// Hermitian eigendecomposition; throws std::invalid_argument if the
/// input is not Hermitian within 1e-10.
EigResult eig_hermitian(const Operator& m);

/// Throws std::invalid_argument unless rho is Hermitian, PSD within
/// 1e-10 and unit trace within 1e-12.
void validate_density(const Operator& rho);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const Operator& rho);

/// Holevo quantity chi = S(sum_i p_i rho_i) - sum_i p_i S(rho_i), in bits.
double holevo(std::span<const Operator> states, std::span<const double> priors);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Haar-distributed SU(2) element built from a normalized Gaussian 4-vector.
Operator haar_random_su2(std::mt19937_64& rng);

}  // namespace dtrine
