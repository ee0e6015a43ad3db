#pragma once

#include "dtrine/keygen.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dtrine {

enum class Side { alice, bob };

const char* to_string(KeyCase key_case);
const char* to_string(Side side);

// Seven free parameters of the general source matrix V whose columns
// represent Eve's kets E_1..E_4.
struct GeneralVParams {
  double a1;
  double a2;
  double r1;
  double r2;
  double phi;
  double theta;
  Complex lambda;
  Complex mu;
};

/// V parameters that reproduce rho_eps exactly (lambda = mu = 0,
/// a1 = a2 = sqrt(eps)/2, r1 = r2 = sqrt(2-eps)/2, sin 2theta = (2-2eps)/(2-eps)).
GeneralVParams rho_eps_params(double epsilon);

// Eve's ancilla kets: the four columns E_1..E_4 plus the nine derived
// kets E_jk conditioned on Alice's outcome j and Bob's outcome k.
// All kets are unnormalized; <E_jk|E_jk> equals the joint probability p_jk.
struct AncillaFamily {
  double epsilon;
  std::array<Ket, 4> columns;
  std::array<std::array<Ket, 3>, 3> kets;  // [j][k]

  const Ket& e(int j, int k) const { return kets[j][k]; }
  const Ket& e(TrineLetter j, TrineLetter k) const {
    return kets[static_cast<int>(j)][static_cast<int>(k)];
  }
};

/// Builds the family from explicit V parameters.  Throws
/// std::invalid_argument (with residuals) if the normalization or
/// singlet constraint is violated beyond 1e-8.
AncillaFamily v_matrix_general(const GeneralVParams& params, double epsilon);

/// The symmetric one-parameter family V(c), 0 <= c <= 2 epsilon.
AncillaFamily v_matrix_one_param(double c, double epsilon);

/// Alice and Bob's two-qubit state: partial trace of |S><S| over the
/// ancilla (4x4, ordered |++>,|+->,|-+>,|--> with Alice major).
Operator reduced_ab_state(const AncillaFamily& family);

// One term of a conditioned two-ancilla state: the (alice, bob) letter
// indices of the first and second slot of the pair.
struct PairConfig {
  std::array<int, 2> slot1;
  std::array<int, 2> slot2;
};

/// The six two-slot configurations composing one conditioned state.
/// For the bit case pass the ordered letter pair (j, k); for the trit
/// case pass the letter j (k is ignored).
std::vector<PairConfig> conditioned_state_terms(KeyCase key_case, Side side,
                                                int j, int k = -1);

struct ConditionedState {
  std::string label;  // "AB".."CB" for bit, "A".."C" for trit
  Operator rho;       // 16x16, unit trace
  double weight;      // pre-normalization trace (the state's probability)
};

/// All conditioned two-ancilla states of one (case, side) combination:
/// six ordered-pair states for bit, three letter states for trit.
std::vector<ConditionedState> conditioned_states(const AncillaFamily& family,
                                                 KeyCase key_case, Side side);

/// Holevo bound on Eve's information per key symbol for the hypothesis
/// set labeled by (j, k) (bit: states jk vs kj; trit: all three letters).
double eve_holevo(const AncillaFamily& family, KeyCase key_case, Side side,
                  int j, int k);

/// Same, for the one-parameter family at (c, epsilon) with the canonical
/// letter labels (the family is letter-symmetric).
double eve_holevo(double c, double epsilon, KeyCase key_case, Side side);

struct OptimizeResult {
  double c_star;
  double chi_star;
};

/// argmax of eve_holevo over c in [0, 2 epsilon]: coarse grid plus
/// golden-section refinement to |dc| < 1e-6.
OptimizeResult optimize_c(double epsilon, KeyCase key_case, Side side);

struct ThresholdResult {
  KeyCase key_case;
  Side side;
  double epsilon_star;
  double info;    // I(A:B) of the key stream at the crossing, bits
  double c_star;  // Eve's optimal c at the crossing
};

/// Solves chi*(eps) = I_case(eps) by bisection on [0.01, 0.5] to 1e-4.
/// Throws std::runtime_error if the bracket shows no sign change.
ThresholdResult threshold(KeyCase key_case, Side side);

/// Wootters concurrence of a two-qubit density matrix (in the |+->
/// product basis used throughout).
double concurrence(const Operator& rho4);

/// Positive-partial-transpose test of the one-parameter reduced state;
/// exact for two qubits.  True iff separable.
bool separability_check(double c, double epsilon);

struct CurvePoint {
  double epsilon;
  double i_key;
  double chi_alice;
  double chi_bob;
  double c_star_alice;
  double c_star_bob;
};

/// One sweep row: I_case plus optimized chi and c* for both sides.
CurvePoint curve_point(double epsilon, KeyCase key_case);

/// CSV with header "epsilon,i_key,chi_alice,chi_bob,c_star_alice,c_star_bob".
void write_curves_csv(std::ostream& os, std::span<const CurvePoint> points);

/// JSON object {"case","side","epsilon_star","info","c_star"}.
std::string threshold_result_json(const ThresholdResult& result);

}  // namespace dtrine
