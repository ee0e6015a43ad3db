#pragma once

#include "dtrine/qmath.hpp"

#include <array>

namespace dtrine {

enum class TrineLetter : int { A = 0, B = 1, C = 2 };

char to_char(TrineLetter letter);
TrineLetter letter_from_char(char c);
TrineLetter letter_from_index(int i);

/// The letter that is neither a nor b; requires a != b.
TrineLetter third_letter(TrineLetter a, TrineLetter b);

/// omega = exp(i 2 pi / 3).
Complex omega();

/// omega^n for any integer n (reduced mod 3).
Complex omega_pow(int n);

// Signal-qubit Pauli operators in the (|+>, |->) ordering, where |+->
// are the eigenkets of Y = iXZ.  In this representation Y is diagonal
// and the trine lies in the XZ plane of the Bloch sphere.
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

/// The trine (|A>, |B>, |C>) in the signal-qubit space, |j> having
/// (+,-) components (omega^j, omega^-j)/sqrt(2).
std::array<Ket, 3> signal_trine();

struct PhysicalKets {
  std::array<Ket, 3> p;  // (j=1/2, m=+1/2) trine, dimension 8
  std::array<Ket, 3> q;  // (j=1/2, m=-1/2) trine, dimension 8
};

/// The three-qubit kets |p_i>, |q_i>; each triple sums to zero.
PhysicalKets physical_kets();

/// W_i = |p_i><p_i| + |q_i><q_i|, the rank-2 singlet projector on the
/// complementary atom pair.  Rotationally invariant.
std::array<Operator, 3> w_operators();

/// Orthonormal quartet |++>, |+->, |-+>, |--> spanning the j=1/2 sector,
/// ordered signal-major / idler-minor.
std::array<Ket, 4> signal_idler_basis();

/// Rank-4 projector onto the j=1/2 sector (the span of all p/q kets).
Operator j_half_projector();

/// Trine POM on the signal qubit: Pi_i = (2/3)|i><i|, summing to identity.
std::array<Operator, 3> trine_pom();

/// Physical-space POM elements (2/3)(P_{1/2} - W_i); they sum to P_{1/2}.
std::array<Operator, 3> physical_pom();

/// Singlet ket (|+-> - |-+>)/sqrt(2) of two signal qubits (dimension 4).
Ket singlet_ket();

/// Joint letter probabilities tr(Pi_j x Pi_k rho_eps) for the noisy
/// common-source channel; rows index Alice, columns Bob.
Eigen::Matrix3d joint_probabilities(double epsilon);

/// Max entrywise norm of [W_i, u x u x u] over i; < 1e-10 for unitary u.
/// Throws std::invalid_argument if u is not a 2x2 unitary.
double rff_check(const Operator& u);

}  // namespace dtrine
