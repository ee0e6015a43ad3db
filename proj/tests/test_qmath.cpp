#include "doctest.h"

#include "dtrine/channel.hpp"
#include "dtrine/qmath.hpp"
#include "dtrine/trine.hpp"

#include <array>
#include <cmath>
#include <random>
#include <vector>

using namespace dtrine;

namespace {

Ket basis_ket(int dim, int index) {
  Ket v = Ket::Zero(dim);
  v(index) = 1.0;
  return v;
}

// Random mixture of random pure states; a valid density matrix.
Operator random_density(int dim, std::mt19937_64& rng) {
  Operator rho = Operator::Zero(dim, dim);
  double total = 0.0;
  std::vector<double> weights;
  for (int k = 0; k < dim; ++k) {
    weights.push_back(uniform01(rng) + 0.05);
    total += weights.back();
  }
  for (int k = 0; k < dim; ++k) {
    Ket v(dim);
    for (int i = 0; i < dim; ++i) {
      v(i) = Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
    }
    v.normalize();
    rho += (weights[k] / total) * projector(v);
  }
  return rho;
}

}  // namespace

TEST_CASE("tensor products") {
  const Operator id2 = Operator::Identity(2, 2);
  CHECK((tensor(id2, id2) - Operator::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  const Ket zero = basis_ket(2, 0);
  const Ket one = basis_ket(2, 1);
  const Ket zero_one = tensor(zero, one);
  CHECK(zero_one.size() == 4);
  CHECK(std::abs(zero_one(1) - 1.0) == 0.0);
  CHECK(zero_one.cwiseAbs().sum() == doctest::Approx(1.0));

  const Operator pi_a = trine_pom()[0];
  CHECK(tensor(pi_a, pi_a).trace().real() == doctest::Approx(4.0 / 9.0));
}

TEST_CASE("hermitian eigendecomposition") {
  SUBCASE("diagonal input") {
    const Operator m = (Operator(2, 2) << 0.7, 0, 0, 0.3).finished();
    const EigResult eig = eig_hermitian(m);
    CHECK(eig.values(0) == doctest::Approx(0.7));
    CHECK(eig.values(1) == doctest::Approx(0.3));
  }

  SUBCASE("singlet projector is rank one") {
    const EigResult eig = eig_hermitian(projector(singlet_ket()));
    CHECK(eig.values(0) == doctest::Approx(1.0));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(eig.values(i)) < 1e-12);
  }

  SUBCASE("noisy singlet spectrum") {
    const EigResult eig = eig_hermitian(source_state(0.2));
    CHECK(eig.values(0) == doctest::Approx(0.85));
    for (int i = 1; i < 4; ++i) CHECK(eig.values(i) == doctest::Approx(0.05));
  }

  SUBCASE("reconstruction and trace identity on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      const Operator rho = random_density(8, rng);
      const EigResult eig = eig_hermitian(rho);
      const Operator rebuilt =
          eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
      CHECK((rho - rebuilt).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(eig.values.sum() == doctest::Approx(rho.trace().real()).epsilon(1e-10));
    }
  }

  SUBCASE("rejects non-Hermitian input") {
    const Operator m = (Operator(2, 2) << 0, 1, 0, 0).finished();
    CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(projector(singlet_ket())) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(Operator::Identity(4, 4) / 4.0) == doctest::Approx(2.0));

  // Closed-form spectrum of the noisy singlet: (1-eps)+eps/4 and three eps/4.
  const double big = 0.85, small = 0.05;
  const double expected = -big * std::log2(big) - 3.0 * small * std::log2(small);
  CHECK(von_neumann_entropy(source_state(0.2)) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(von_neumann_entropy(source_state(0.2)) == doctest::Approx(0.8476).epsilon(1e-4));

  CHECK_THROWS_AS(von_neumann_entropy(2.0 * Operator::Identity(2, 2)),
                  std::invalid_argument);

  SUBCASE("unitary invariance") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      const Operator rho = random_density(4, rng);
      const Operator u = tensor(haar_random_su2(rng), haar_random_su2(rng));
      CHECK(von_neumann_entropy(u * rho * u.adjoint()) ==
            doctest::Approx(von_neumann_entropy(rho)).epsilon(1e-9));
    }
  }
}

TEST_CASE("holevo quantity") {
  const Operator rho = source_state(0.3);
  const std::vector<Operator> twins = {rho, rho};
  const std::vector<double> half = {0.5, 0.5};
  CHECK(holevo(twins, half) == doctest::Approx(0.0));

  const std::vector<Operator> orthogonal = {projector(basis_ket(2, 0)),
                                            projector(basis_ket(2, 1))};
  CHECK(holevo(orthogonal, half) == doctest::Approx(1.0));

  SUBCASE("bounded by log2 of the state count") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
      const std::vector<Operator> states = {random_density(4, rng),
                                            random_density(4, rng),
                                            random_density(4, rng)};
      const std::vector<double> priors = {0.2, 0.5, 0.3};
      const double chi = holevo(states, priors);
      CHECK(chi >= 0.0);
      CHECK(chi <= std::log2(3.0) + 1e-9);
    }
  }

  SUBCASE("invariant under a common unitary") {
    std::mt19937_64 rng(41);
    const std::vector<Operator> states = {random_density(4, rng),
                                          random_density(4, rng)};
    const std::vector<double> priors = {0.4, 0.6};
    const double before = holevo(states, priors);
    const Operator u = tensor(haar_random_su2(rng), haar_random_su2(rng));
    const std::vector<Operator> rotated = {u * states[0] * u.adjoint(),
                                           u * states[1] * u.adjoint()};
    CHECK(holevo(rotated, priors) == doctest::Approx(before).epsilon(1e-9));
  }

  SUBCASE("input validation") {
    const std::vector<Operator> mismatched = {Operator::Identity(2, 2) / 2.0,
                                              Operator::Identity(4, 4) / 4.0};
    CHECK_THROWS_AS(holevo(mismatched, half), std::invalid_argument);
    const std::vector<double> bad = {0.7, 0.7};
    CHECK_THROWS_AS(holevo(twins, bad), std::invalid_argument);
  }
}

TEST_CASE("haar random su2") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Operator u = haar_random_su2(rng);
    CHECK((u.adjoint() * u - Operator::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(u.determinant() - Complex(1.0, 0.0)) < 1e-12);
  }

  SUBCASE("deterministic for a fixed seed") {
    std::mt19937_64 a(99), b(99);
    CHECK((haar_random_su2(a) - haar_random_su2(b)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("first-moment of |U00|^2 is 1/2") {
    std::mt19937_64 moments(7);
    double mean = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      mean += std::norm(haar_random_su2(moments)(0, 0));
    }
    mean /= n;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(mean - 0.5) < 0.01);
  }
}
