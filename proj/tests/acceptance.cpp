// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure.  Tolerances are fixed here, not configurable.

#include "dtrine/channel.hpp"
#include "dtrine/keygen.hpp"
#include "dtrine/qmath.hpp"
#include "dtrine/security.hpp"
#include "dtrine/trine.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace dtrine;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << " (" << name
            << "): " << detail << '\n';
  g_failures += !ok;
}

bool within(double value, double target, double tolerance) {
  return std::abs(value - target) <= tolerance;
}

void criterion1_noiseless_rates() {
  const double rate = key_rate(0.0);
  const double limit = shannon_limit(0.0);
  const double ratio = rate / limit;
  const bool ok = within(rate, 0.573, 0.001) && within(limit, 0.58496, 0.0005) &&
                  within(ratio, 0.98, 0.005);
  std::ostringstream detail;
  detail << "key_rate(0)=" << rate << " shannon_limit(0)=" << limit
         << " ratio=" << ratio;
  report(1, "noiseless rates", ok, detail.str());
}

void criterion2_noisy_efficiency() {
  const double ratio = key_rate(0.1) / shannon_limit(0.1);
  std::ostringstream detail;
  detail << "key_rate(0.1)/shannon_limit(0.1)=" << ratio;
  report(2, "noisy efficiency", within(ratio, 0.964, 0.001), detail.str());
}

std::vector<ThresholdResult> criterion3_thresholds() {
  struct Expected {
    KeyCase key_case;
    Side side;
    double epsilon;
    double info;
  };
  const std::array<Expected, 4> expected = {{
      {KeyCase::bit, Side::alice, 0.197, 0.560},
      {KeyCase::bit, Side::bob, 0.170, 0.603},
      {KeyCase::trit, Side::alice, 0.193, 0.618},
      {KeyCase::trit, Side::bob, 0.150, 0.744},
  }};
  std::vector<ThresholdResult> results;
  bool ok = true;
  std::ostringstream detail;
  for (const Expected& want : expected) {
    const ThresholdResult got = threshold(want.key_case, want.side);
    results.push_back(got);
    const bool here = within(got.epsilon_star, want.epsilon, 0.003) &&
                      within(got.info, want.info, 0.005);
    ok &= here;
    detail << to_string(want.key_case) << "/" << to_string(want.side)
           << " eps*=" << got.epsilon_star << " I=" << got.info << "  ";
  }
  report(3, "noise thresholds", ok, detail.str());
  return results;
}

void criterion4_asymmetry(const std::vector<ThresholdResult>& results) {
  auto find = [&](KeyCase kc, Side side) {
    for (const ThresholdResult& result : results) {
      if (result.key_case == kc && result.side == side) return result.epsilon_star;
    }
    return -1.0;
  };
  const double bit_gap = find(KeyCase::bit, Side::alice) - find(KeyCase::bit, Side::bob);
  const double trit_gap =
      find(KeyCase::trit, Side::alice) - find(KeyCase::trit, Side::bob);
  std::ostringstream detail;
  detail << "bit: alice-bob=" << bit_gap << "  trit: alice-bob=" << trit_gap;
  report(4, "eavesdropping asymmetry", bit_gap > 0.0 && trit_gap > 0.0, detail.str());
}

void criterion5_monte_carlo() {
  const std::size_t n = 1000000;
  const std::uint64_t seed = 20240901;
  bool ok = true;
  std::ostringstream detail;
  for (double eps : {0.0, 0.1, 0.3}) {
    const TransmissionRecord record = sample_record(eps, n, seed);

    const Eigen::Matrix3d freq = empirical_joint(record);
    const Eigen::Matrix3d expected = joint_probabilities(eps);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double p = expected(i, j);
        const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        ok &= std::abs(freq(i, j) - p) <= 4.0 * sigma + 1e-12;
      }
    }

    const KeyGenResult keys = generate_keys(record);
    const std::size_t trits = keys.alice.trits.size();
    const std::size_t bits = keys.alice.bits.size();
    const std::size_t pairs = trits + bits;
    const CaseProbabilities cases = case_probabilities(eps);
    const double sigma_case =
        std::sqrt(cases.trit * (1.0 - cases.trit) / static_cast<double>(pairs));
    ok &= std::abs(static_cast<double>(trits) / pairs - cases.trit) <=
          4.0 * sigma_case + 1e-12;

    const SymbolErrorRates rates = symbol_error_rates(eps);
    std::size_t trit_errors = 0;
    Eigen::MatrixXd trit_counts = Eigen::MatrixXd::Zero(3, 3);
    for (std::size_t i = 0; i < trits; ++i) {
      trit_errors += keys.alice.trits[i] != keys.bob.trits[i];
      trit_counts(static_cast<int>(keys.alice.trits[i]),
                  static_cast<int>(keys.bob.trits[i])) += 1.0;
    }
    std::size_t bit_errors = 0;
    Eigen::MatrixXd bit_counts = Eigen::MatrixXd::Zero(2, 2);
    for (std::size_t i = 0; i < bits; ++i) {
      bit_errors += keys.alice.bits[i] != keys.bob.bits[i];
      bit_counts(keys.alice.bits[i], keys.bob.bits[i]) += 1.0;
    }
    const double p_trit_err = 6.0 * rates.trit_wrong;
    const double sigma_trit =
        std::sqrt(p_trit_err * (1.0 - p_trit_err) / static_cast<double>(trits));
    ok &= std::abs(static_cast<double>(trit_errors) / trits - p_trit_err) <=
          4.0 * sigma_trit + 1e-12;
    const double p_bit_err = 2.0 * rates.bit_wrong;
    const double sigma_bit =
        std::sqrt(p_bit_err * (1.0 - p_bit_err) / static_cast<double>(bits));
    ok &= std::abs(static_cast<double>(bit_errors) / bits - p_bit_err) <=
          4.0 * sigma_bit + 1e-12;

    const double emp_trit =
        discrete_mutual_information(trit_counts / static_cast<double>(trits));
    const double emp_bit =
        discrete_mutual_information(bit_counts / static_cast<double>(bits));
    const double dev_trit = std::abs(emp_trit - mutual_information(eps, KeyCase::trit));
    const double dev_bit = std::abs(emp_bit - mutual_information(eps, KeyCase::bit));
    ok &= dev_trit <= 0.005 && dev_bit <= 0.005;
    detail << "eps=" << eps << " dI_trit=" << dev_trit << " dI_bit=" << dev_bit << "  ";
  }
  report(5, "monte carlo consistency", ok, detail.str());
}

void criterion6_structural() {
  bool ok = true;
  std::ostringstream detail;

  const auto w = w_operators();
  Operator w_sum = Operator::Zero(8, 8);
  for (int i = 0; i < 3; ++i) {
    w_sum += w[i];
    ok &= std::abs(w[i].trace().real() - 2.0) < 1e-12;
    for (int j = 0; j < 3; ++j) {
      ok &= std::abs((w[i] * w[j]).trace().real() - (3.0 * (i == j) + 1.0) / 2.0) < 1e-12;
    }
  }
  ok &= (w_sum - 1.5 * j_half_projector()).cwiseAbs().maxCoeff() < 1e-12;
  detail << "W identities " << (ok ? "ok" : "BAD") << "; ";

  std::mt19937_64 rng(7);
  double worst_commutator = 0.0;
  for (int i = 0; i < 100; ++i) {
    worst_commutator = std::max(worst_commutator, rff_check(haar_random_su2(rng)));
  }
  ok &= worst_commutator < 1e-10;
  detail << "max RFF commutator " << worst_commutator << "; ";

  double worst_gram = 0.0;
  for (int ei = 0; ei <= 10; ++ei) {
    const double eps = ei * 0.1;
    for (double t : {0.0, 0.5, 1.0}) {
      const AncillaFamily family = v_matrix_one_param(2.0 * eps * t, eps);
      const auto& e = family.columns;
      double norm_sum = 0.0;
      for (int i = 0; i < 4; ++i) norm_sum += e[i].squaredNorm();
      worst_gram = std::max(worst_gram, std::abs(norm_sum - 1.0));
      worst_gram = std::max(worst_gram, std::abs(e[0].dot(e[1]) + e[2].dot(e[3])));
      worst_gram = std::max(worst_gram, std::abs(e[0].dot(e[2]) + e[1].dot(e[3])));
      worst_gram = std::max(worst_gram, std::abs(e[0].dot(e[3])));
      worst_gram = std::max(
          worst_gram, std::abs(e[1].dot(e[2]) + Complex((1.0 - eps) / 2.0, 0.0)));
    }
  }
  ok &= worst_gram < 1e-10;
  detail << "max Gram residual " << worst_gram << "; ";

  for (Side side : {Side::alice, Side::bob}) {
    std::set<std::array<int, 4>> consumed;
    std::size_t terms = 0;
    bool alice_letters_distinct = true;
    auto absorb = [&](const std::vector<PairConfig>& list) {
      for (const PairConfig& term : list) {
        alice_letters_distinct &= term.slot1[0] != term.slot2[0];
        consumed.insert({term.slot1[0], term.slot1[1], term.slot2[0], term.slot2[1]});
        ++terms;
      }
    };
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        if (j != k) absorb(conditioned_state_terms(KeyCase::bit, side, j, k));
      }
      absorb(conditioned_state_terms(KeyCase::trit, side, j));
    }
    ok &= terms == 54 && consumed.size() == 54 && alice_letters_distinct;
  }
  detail << "54-ket coverage ok; ";

  double worst_rho = 0.0;
  for (int ei = 0; ei <= 10; ++ei) {
    const double eps = ei * 0.1;
    worst_rho = std::max(worst_rho,
                         (reduced_ab_state(v_matrix_one_param(eps, eps)) -
                          source_state(eps))
                             .cwiseAbs()
                             .maxCoeff());
  }
  ok &= worst_rho < 1e-10;
  detail << "c=eps reduction residual " << worst_rho << "; ";

  const double eps = 0.2;
  double min_concurrence = 2.0, max_entropy = -1.0;
  double argmin_c = -1.0, argmax_c = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double c = std::min(i * 1e-3, 2.0 * eps);
    const Operator rho = reduced_ab_state(v_matrix_one_param(c, eps));
    const double conc = concurrence(rho);
    if (conc < min_concurrence) {
      min_concurrence = conc;
      argmin_c = c;
    }
    const double entropy = von_neumann_entropy(rho);
    if (entropy > max_entropy) {
      max_entropy = entropy;
      argmax_c = c;
    }
  }
  ok &= within(argmin_c, 2.0 * eps, 1.5e-3);
  ok &= within(argmax_c, 2.0 * eps - eps * eps, 1.5e-3);
  detail << "argmin C=" << argmin_c << " argmax S=" << argmax_c;

  report(6, "structural suite", ok, detail.str());
}

void criterion7_zero_noise() {
  const double chi_bit = eve_holevo(0.0, 0.0, KeyCase::bit, Side::alice);
  const double chi_trit = eve_holevo(0.0, 0.0, KeyCase::trit, Side::alice);
  const KeyGenResult keys = generate_keys(sample_record(0.0, 100000, 5));
  const bool error_free =
      keys.alice.bits == keys.bob.bits && keys.alice.trits == keys.bob.trits;
  std::ostringstream detail;
  detail << "chi_bit(0)=" << chi_bit << " chi_trit(0)=" << chi_trit
         << " keys error-free=" << (error_free ? "yes" : "no");
  report(7, "zero-noise sanity", chi_bit < 1e-9 && chi_trit < 1e-9 && error_free,
         detail.str());
}

}  // namespace

int main() {
  criterion1_noiseless_rates();
  criterion2_noisy_efficiency();
  const std::vector<ThresholdResult> thresholds = criterion3_thresholds();
  criterion4_asymmetry(thresholds);
  criterion5_monte_carlo();
  criterion6_structural();
  criterion7_zero_noise();
  if (g_failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
  } else {
    std::cout << "acceptance: " << g_failures << " criterion(s) failed\n";
  }
  return g_failures == 0 ? 0 : 1;
}
