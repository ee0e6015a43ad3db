#include "dtrine/trine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtrine {

char to_char(TrineLetter letter) {
  return static_cast<char>('A' + static_cast<int>(letter));
}

TrineLetter letter_from_char(char c) {
  if (c < 'A' || c > 'C') {
    throw std::invalid_argument("trine letter must be A, B or C");
  }
  return static_cast<TrineLetter>(c - 'A');
}

TrineLetter letter_from_index(int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("trine letter index out of range");
  return static_cast<TrineLetter>(i);
}

TrineLetter third_letter(TrineLetter a, TrineLetter b) {
  if (a == b) throw std::invalid_argument("third_letter: letters must differ");
  return static_cast<TrineLetter>(3 - static_cast<int>(a) - static_cast<int>(b));
}

Complex omega() { return omega_pow(1); }

Complex omega_pow(int n) {
  static const std::array<Complex, 3> powers = {
      Complex(1.0, 0.0),
      Complex(-0.5, std::sqrt(3.0) / 2.0),
      Complex(-0.5, -std::sqrt(3.0) / 2.0),
  };
  return powers[((n % 3) + 3) % 3];
}

Operator pauli_x() {
  return (Operator(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
}

Operator pauli_y() { return (Operator(2, 2) << 1, 0, 0, -1).finished(); }

Operator pauli_z() { return (Operator(2, 2) << 0, 1, 1, 0).finished(); }

std::array<Ket, 3> signal_trine() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::array<Ket, 3> trine;
  for (int j = 0; j < 3; ++j) {
    trine[j] = Ket(2);
    trine[j] << inv_sqrt2 * omega_pow(j), inv_sqrt2 * omega_pow(-j);
  }
  return trine;
}

namespace {

// |abc> with atom 1 the most significant bit, |0> = spin up.
Ket basis8(int a, int b, int c) {
  Ket v = Ket::Zero(8);
  v(4 * a + 2 * b + c) = 1.0;
  return v;
}

}  // namespace

PhysicalKets physical_kets() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  PhysicalKets kets;
  kets.p[0] = inv_sqrt2 * (basis8(0, 0, 1) - basis8(0, 1, 0));
  kets.p[1] = inv_sqrt2 * (basis8(1, 0, 0) - basis8(0, 0, 1));
  kets.p[2] = inv_sqrt2 * (basis8(0, 1, 0) - basis8(1, 0, 0));
  kets.q[0] = inv_sqrt2 * (basis8(1, 0, 1) - basis8(1, 1, 0));
  kets.q[1] = inv_sqrt2 * (basis8(1, 1, 0) - basis8(0, 1, 1));
  kets.q[2] = inv_sqrt2 * (basis8(0, 1, 1) - basis8(1, 0, 1));
  return kets;
}

std::array<Operator, 3> w_operators() {
  const auto kets = physical_kets();
  std::array<Operator, 3> w;
  for (int i = 0; i < 3; ++i) {
    w[i] = projector(kets.p[i]) + projector(kets.q[i]);
  }
  return w;
}

std::array<Ket, 4> signal_idler_basis() {
  const auto kets = physical_kets();
  const double scale = std::sqrt(2.0) / 3.0;
  auto combine = [scale](const std::array<Ket, 3>& t, int sign) {
    // sign +1 recovers the '+' signal component, -1 the '-' one.
    return (scale * (t[0] + omega_pow(-sign) * t[1] + omega_pow(sign) * t[2])).eval();
  };
  // Ordered signal-major: ++, +-, -+, --.
  return {combine(kets.p, +1), combine(kets.q, +1),
          combine(kets.p, -1), combine(kets.q, -1)};
}

Operator j_half_projector() {
  Operator p = Operator::Zero(8, 8);
  for (const auto& b : signal_idler_basis()) p += projector(b);
  return p;
}

std::array<Operator, 3> trine_pom() {
  const auto trine = signal_trine();
  std::array<Operator, 3> pom;
  for (int i = 0; i < 3; ++i) pom[i] = (2.0 / 3.0) * projector(trine[i]);
  return pom;
}

std::array<Operator, 3> physical_pom() {
  const auto w = w_operators();
  const Operator sector = j_half_projector();
  std::array<Operator, 3> pom;
  for (int i = 0; i < 3; ++i) pom[i] = (2.0 / 3.0) * (sector - w[i]);
  return pom;
}

Ket singlet_ket() {
  Ket s = Ket::Zero(4);
  s(1) = 1.0 / std::sqrt(2.0);
  s(2) = -1.0 / std::sqrt(2.0);
  return s;
}

Eigen::Matrix3d joint_probabilities(double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::domain_error("epsilon must lie in [0, 1]");
  }
  const Operator rho = (1.0 - epsilon) * projector(singlet_ket()) +
                       (epsilon / 4.0) * Operator::Identity(4, 4);
  const auto pom = trine_pom();
  Eigen::Matrix3d probs;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      probs(j, k) = (tensor(pom[j], pom[k]) * rho).trace().real();
    }
  }
  return probs;
}

double rff_check(const Operator& u) {
  if (u.rows() != 2 || u.cols() != 2 ||
      (u.adjoint() * u - Operator::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("rff_check: input is not a 2x2 unitary");
  }
  const Operator u3 = tensor(tensor(u, u), u);
  double worst = 0.0;
  for (const auto& w : w_operators()) {
    worst = std::max(worst, (w * u3 - u3 * w).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace dtrine
