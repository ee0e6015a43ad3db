#include "dtrine/security.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dtrine {

const char* to_string(KeyCase key_case) {
  return key_case == KeyCase::bit ? "bit" : "trit";
}

const char* to_string(Side side) { return side == Side::alice ? "alice" : "bob"; }

GeneralVParams rho_eps_params(double epsilon) {
  NoiseModel noise(epsilon);
  const double e = noise.epsilon;
  GeneralVParams params{};
  params.a1 = params.a2 = 0.5 * std::sqrt(e);
  params.r1 = params.r2 = 0.5 * std::sqrt(2.0 - e);
  params.phi = 0.0;
  params.theta = 0.5 * std::asin((2.0 - 2.0 * e) / (2.0 - e));
  params.lambda = params.mu = 0.0;
  return params;
}

namespace {

// E_jk = (1/3) [ w^(-j-k) E1 + w^(-j+k) E2 + w^(j-k) E3 + w^(j+k) E4 ].
void derive_kets(AncillaFamily& family) {
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      family.kets[j][k] =
          (omega_pow(-j - k) * family.columns[0] + omega_pow(-j + k) * family.columns[1] +
           omega_pow(j - k) * family.columns[2] + omega_pow(j + k) * family.columns[3]) /
          3.0;
    }
  }
}

// Gram relations implied by the observed letter probabilities; every
// construction path must satisfy them.
void check_family(const AncillaFamily& family, double tol) {
  const auto& e = family.columns;
  auto inner = [&](int i, int j) { return e[i].dot(e[j]); };  // <E_i|E_j>

  double worst = 0.0;
  auto track = [&worst](Complex residual) {
    worst = std::max(worst, std::abs(residual));
  };
  track(inner(0, 0) + inner(1, 1) + inner(2, 2) + inner(3, 3) - 1.0);
  track(inner(0, 1) + inner(2, 3));
  track(inner(0, 2) + inner(1, 3));
  track(inner(0, 3));
  track(inner(1, 2) + (1.0 - family.epsilon) / 2.0);
  if (worst > tol) {
    throw std::invalid_argument("ancilla family violates the Gram constraints (residual " +
                                std::to_string(worst) + ")");
  }
}

}  // namespace

AncillaFamily v_matrix_general(const GeneralVParams& params, double epsilon) {
  NoiseModel noise(epsilon);
  const double a1 = params.a1, a2 = params.a2;
  const double r1 = params.r1, r2 = params.r2;
  const Complex lambda = params.lambda, mu = params.mu;
  const Complex phase = std::polar(1.0, params.phi);
  const double sin_t = std::sin(params.theta), cos_t = std::cos(params.theta);

  const double norm_residual =
      (1.0 + std::norm(lambda) + std::norm(mu)) * (a1 * a1 + a2 * a2) + r1 * r1 +
      r2 * r2 - 1.0;
  const Complex singlet_residual = std::conj(lambda) * mu * (a1 * a1 + a2 * a2) +
                                   r1 * r2 * phase * std::sin(2.0 * params.theta) -
                                   (1.0 - noise.epsilon) / 2.0;
  if (std::abs(norm_residual) > 1e-8 || std::abs(singlet_residual) > 1e-8) {
    std::ostringstream msg;
    msg << "V parameters violate the constraints: normalization residual "
        << norm_residual << ", singlet residual (" << singlet_residual.real() << ", "
        << singlet_residual.imag() << ")";
    throw std::invalid_argument(msg.str());
  }

  AncillaFamily family;
  family.epsilon = noise.epsilon;
  family.columns[0] = (Ket(4) << a1, 0, 0, 0).finished();
  family.columns[1] =
      (Ket(4) << lambda * a2, r1 * cos_t, r1 * std::conj(phase) * sin_t, std::conj(mu) * a1)
          .finished();
  family.columns[2] = (Ket(4) << -mu * a2, -r2 * phase * sin_t, -r2 * cos_t,
                       -std::conj(lambda) * a1)
                          .finished();
  family.columns[3] = (Ket(4) << 0, 0, 0, a2).finished();
  derive_kets(family);
  check_family(family, 1e-8);
  return family;
}

AncillaFamily v_matrix_one_param(double c, double epsilon) {
  NoiseModel noise(epsilon);
  if (!(c >= 0.0 && c <= 2.0 * noise.epsilon + 1e-12)) {
    throw std::domain_error("c must lie in [0, 2 epsilon]");
  }
  c = std::min(c, 2.0 * noise.epsilon);
  const double sum = std::sqrt(std::max(0.0, 2.0 - c + 2.0 * (1.0 - noise.epsilon)));
  const double diff = std::sqrt(std::max(0.0, 2.0 - c - 2.0 * (1.0 - noise.epsilon)));
  const double x = 0.5 * (sum + diff);
  const double y = 0.5 * (sum - diff);
  const double root_c = std::sqrt(c);

  AncillaFamily family;
  family.epsilon = noise.epsilon;
  family.columns[0] = (Ket(4) << 0.5 * root_c, 0, 0, 0).finished();
  family.columns[1] = (Ket(4) << 0, 0.5 * x, 0.5 * y, 0).finished();
  family.columns[2] = (Ket(4) << 0, -0.5 * y, -0.5 * x, 0).finished();
  family.columns[3] = (Ket(4) << 0, 0, 0, 0.5 * root_c).finished();
  derive_kets(family);
  check_family(family, 1e-10);
  return family;
}

Operator reduced_ab_state(const AncillaFamily& family) {
  check_family(family, 1e-8);
  // |S> lives in (A x B) x ancilla = C^16 with the ancilla index minor.
  Ket source = Ket::Zero(16);
  for (int i = 0; i < 4; ++i) {
    source.segment(4 * i, 4) = family.columns[i];
  }
  const Operator full = projector(source);
  Operator reduced = Operator::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int m = 0; m < 4; ++m) {
        reduced(i, j) += full(4 * i + m, 4 * j + m);
      }
    }
  }
  return reduced;
}

std::vector<PairConfig> conditioned_state_terms(KeyCase key_case, Side side, int j,
                                                int k) {
  if (key_case == KeyCase::bit) {
    if (j < 0 || j > 2 || k < 0 || k > 2 || j == k) {
      throw std::invalid_argument("bit case needs an ordered pair of distinct letters");
    }
    const int l = 3 - j - k;
    if (side == Side::alice) {
      // Alice concluded Bob's sequence is jk; the last three terms are
      // the configurations in which Bob's actual order was kj.
      return {{{k, j}, {l, k}}, {{l, j}, {j, k}}, {{k, j}, {j, k}},
              {{k, k}, {l, j}}, {{l, k}, {j, j}}, {{k, k}, {j, j}}};
    }
    // Bob's actual sequence is jk; the last three terms are the
    // configurations in which Alice infers the wrong order.
    return {{{k, j}, {l, k}}, {{l, j}, {j, k}}, {{k, j}, {j, k}},
            {{l, j}, {k, k}}, {{j, j}, {l, k}}, {{j, j}, {k, k}}};
  }
  if (j < 0 || j > 2) {
    throw std::invalid_argument("trit case needs a letter index");
  }
  const int a = (j + 1) % 3;
  const int b = (j + 2) % 3;
  if (side == Side::alice) {
    // Alice concluded Bob has letter j twice (her letters are {a, b}).
    return {{{a, j}, {b, j}}, {{b, j}, {a, j}}, {{a, a}, {b, a}},
            {{b, a}, {a, a}}, {{a, b}, {b, b}}, {{b, b}, {a, b}}};
  }
  // Bob actually has letter j twice.
  return {{{a, j}, {b, j}}, {{b, j}, {a, j}}, {{j, j}, {b, j}},
          {{b, j}, {j, j}}, {{j, j}, {a, j}}, {{a, j}, {j, j}}};
}

namespace {

struct RawState {
  Operator rho;
  double weight;
};

RawState build_conditioned(const AncillaFamily& family,
                           const std::vector<PairConfig>& terms) {
  Operator rho = Operator::Zero(16, 16);
  for (const PairConfig& term : terms) {
    const Ket pair_ket = tensor(family.e(term.slot1[0], term.slot1[1]),
                                family.e(term.slot2[0], term.slot2[1]));
    rho += projector(pair_ket);
  }
  const double weight = rho.trace().real();
  if (weight < 1e-300) {
    throw std::runtime_error("conditioned state has vanishing probability");
  }
  return {rho / weight, weight};
}

std::string bit_label(int j, int k) {
  return {to_char(letter_from_index(j)), to_char(letter_from_index(k))};
}

}  // namespace

std::vector<ConditionedState> conditioned_states(const AncillaFamily& family,
                                                 KeyCase key_case, Side side) {
  std::vector<ConditionedState> states;
  if (key_case == KeyCase::bit) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        if (j == k) continue;
        auto raw = build_conditioned(family, conditioned_state_terms(key_case, side, j, k));
        states.push_back({bit_label(j, k), std::move(raw.rho), raw.weight});
      }
    }
  } else {
    for (int j = 0; j < 3; ++j) {
      auto raw = build_conditioned(family, conditioned_state_terms(key_case, side, j));
      states.push_back({std::string{to_char(letter_from_index(j))}, std::move(raw.rho),
                        raw.weight});
    }
  }
  return states;
}

double eve_holevo(const AncillaFamily& family, KeyCase key_case, Side side, int j,
                  int k) {
  std::vector<RawState> hypotheses;
  if (key_case == KeyCase::bit) {
    hypotheses.push_back(build_conditioned(family, conditioned_state_terms(key_case, side, j, k)));
    hypotheses.push_back(build_conditioned(family, conditioned_state_terms(key_case, side, k, j)));
  } else {
    for (int letter = 0; letter < 3; ++letter) {
      hypotheses.push_back(
          build_conditioned(family, conditioned_state_terms(key_case, side, letter)));
    }
  }

  // The letter probabilities pin every state's weight, so the priors
  // derived from the traces must come out uniform.
  double total = 0.0;
  for (const RawState& h : hypotheses) total += h.weight;
  std::vector<Operator> states;
  std::vector<double> priors;
  for (const RawState& h : hypotheses) {
    const double prior = h.weight / total;
    if (std::abs(prior - 1.0 / static_cast<double>(hypotheses.size())) > 1e-9) {
      throw std::logic_error("conditioned-state weights are not uniform");
    }
    states.push_back(h.rho);
    priors.push_back(prior);
  }
  return holevo(states, priors);
}

double eve_holevo(double c, double epsilon, KeyCase key_case, Side side) {
  const AncillaFamily family = v_matrix_one_param(c, epsilon);
  return eve_holevo(family, key_case, side, 0, 1);
}

OptimizeResult optimize_c(double epsilon, KeyCase key_case, Side side) {
  NoiseModel noise(epsilon);
  const double c_max = 2.0 * noise.epsilon;
  auto chi = [&](double c) { return eve_holevo(c, noise.epsilon, key_case, side); };
  if (c_max <= 0.0) return {0.0, chi(0.0)};

  constexpr int kGridPoints = 97;
  double best_c = 0.0;
  double best_chi = -1.0;
  int best_index = 0;
  for (int i = 0; i < kGridPoints; ++i) {
    const double c = c_max * static_cast<double>(i) / (kGridPoints - 1);
    const double value = chi(c);
    if (value > best_chi) {
      best_chi = value;
      best_c = c;
      best_index = i;
    }
  }

  // Golden-section refinement inside the bracket around the grid argmax.
  double lo = c_max * static_cast<double>(std::max(best_index - 1, 0)) / (kGridPoints - 1);
  double hi = c_max * static_cast<double>(std::min(best_index + 1, kGridPoints - 1)) /
              (kGridPoints - 1);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = hi - ratio * (hi - lo);
  double c2 = lo + ratio * (hi - lo);
  double f1 = chi(c1);
  double f2 = chi(c2);
  while (hi - lo > 1e-7) {
    if (f1 > f2) {
      hi = c2;
      c2 = c1;
      f2 = f1;
      c1 = hi - ratio * (hi - lo);
      f1 = chi(c1);
    } else {
      lo = c1;
      c1 = c2;
      f1 = f2;
      c2 = lo + ratio * (hi - lo);
      f2 = chi(c2);
    }
  }
  const double c_mid = 0.5 * (lo + hi);
  const double f_mid = chi(c_mid);
  if (f_mid > best_chi) {
    best_chi = f_mid;
    best_c = c_mid;
  }
  return {best_c, best_chi};
}

ThresholdResult threshold(KeyCase key_case, Side side) {
  auto gap = [&](double epsilon) {
    return optimize_c(epsilon, key_case, side).chi_star -
           mutual_information(epsilon, key_case);
  };
  double lo = 0.01;
  double hi = 0.5;
  if (!(gap(lo) < 0.0 && gap(hi) > 0.0)) {
    throw std::runtime_error("threshold: no sign change on [0.01, 0.5]");
  }
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  const double epsilon_star = 0.5 * (lo + hi);
  return {key_case, side, epsilon_star, mutual_information(epsilon_star, key_case),
          optimize_c(epsilon_star, key_case, side).c_star};
}

double concurrence(const Operator& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) {
    throw std::invalid_argument("concurrence: expected a two-qubit density matrix");
  }
  validate_density(rho4);
  // Spin flip in the |+-> basis: conjugation there flips only the X
  // Bloch component, so X (x) X completes the flip of all three.
  const Operator flip = tensor(pauli_x(), pauli_x());
  const Operator rho_tilde = flip * rho4.conjugate() * flip;

  const EigResult eig = eig_hermitian(rho4);
  Operator sqrt_rho = Operator::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    sqrt_rho += std::sqrt(std::max(eig.values(i), 0.0)) *
                projector(eig.vectors.col(i));
  }
  // Same spectrum as rho * rho_tilde but Hermitian by construction.
  const Operator symmetrized = sqrt_rho * rho_tilde * sqrt_rho;
  const EigResult lambdas = eig_hermitian((symmetrized + symmetrized.adjoint()) / 2.0);
  double c = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double root = std::sqrt(std::max(lambdas.values(i), 0.0));
    c += (i == 0) ? root : -root;
  }
  return std::max(c, 0.0);
}

bool separability_check(double c, double epsilon) {
  const Operator rho = reduced_ab_state(v_matrix_one_param(c, epsilon));
  Operator pt(4, 4);  // partial transpose on Bob's qubit
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int ap = 0; ap < 2; ++ap) {
        for (int bp = 0; bp < 2; ++bp) {
          pt(2 * a + b, 2 * ap + bp) = rho(2 * a + bp, 2 * ap + b);
        }
      }
    }
  }
  return eig_hermitian(pt).values.minCoeff() > -1e-10;
}

CurvePoint curve_point(double epsilon, KeyCase key_case) {
  const OptimizeResult alice = optimize_c(epsilon, key_case, Side::alice);
  const OptimizeResult bob = optimize_c(epsilon, key_case, Side::bob);
  return {epsilon,        mutual_information(epsilon, key_case),
          alice.chi_star, bob.chi_star,
          alice.c_star,   bob.c_star};
}

void write_curves_csv(std::ostream& os, std::span<const CurvePoint> points) {
  os << "epsilon,i_key,chi_alice,chi_bob,c_star_alice,c_star_bob\n";
  for (const CurvePoint& p : points) {
    os << p.epsilon << ',' << p.i_key << ',' << p.chi_alice << ',' << p.chi_bob << ','
       << p.c_star_alice << ',' << p.c_star_bob << '\n';
  }
}

std::string threshold_result_json(const ThresholdResult& result) {
  nlohmann::ordered_json json;
  json["case"] = to_string(result.key_case);
  json["side"] = to_string(result.side);
  json["epsilon_star"] = result.epsilon_star;
  json["info"] = result.info;
  json["c_star"] = result.c_star;
  return json.dump();
}

}  // namespace dtrine
