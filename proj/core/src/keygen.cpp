#include "dtrine/keygen.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dtrine {

std::vector<SlotPair> pair_slots(const TransmissionRecord& record) {
  std::vector<SlotPair> pairs;
  std::vector<bool> used(record.size(), false);
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i + 1; j < record.size(); ++j) {
      if (!used[j] && record.alice[j] != record.alice[i]) {
        pairs.push_back({i, j});
        used[i] = used[j] = true;
        break;
      }
    }
  }
  return pairs;
}

KeyGenResult generate_keys(const TransmissionRecord& record) {
  KeyGenResult result;
  for (const SlotPair& pair : pair_slots(record)) {
    const TrineLetter a1 = record.alice[pair.first];
    const TrineLetter a2 = record.alice[pair.second];
    const TrineLetter b1 = record.bob[pair.first];
    const TrineLetter b2 = record.bob[pair.second];

    Announcement ann{};
    ann.slots = pair;
    if (b1 == b2) {
      ann.kind = Announcement::Kind::same;
      result.bob.trits.push_back(b1);
      result.alice.trits.push_back(third_letter(a1, a2));
    } else {
      ann.kind = Announcement::Kind::diff;
      const TrineLetter lo = std::min(b1, b2);
      const TrineLetter hi = std::max(b1, b2);
      ann.set = {lo, hi};
      ann.zero = {lo, hi};

      result.bob.bits.push_back(b1 == lo ? 0 : 1);
      // Exactly one order of {lo, hi} avoids both of Alice's letters
      // slot by slot; that order is Bob's sequence in the noiseless case.
      const bool zero_consistent = (lo != a1 && hi != a2);
      assert(zero_consistent != (hi != a1 && lo != a2));
      result.alice.bits.push_back(zero_consistent ? 0 : 1);
    }
    result.announcements.push_back(ann);
  }
  return result;
}

CaseProbabilities case_probabilities(double epsilon) {
  NoiseModel noise(epsilon);
  const double e = noise.epsilon;
  return {(3.0 - e) * (1.0 + e) / 12.0, ((3.0 - e) * (3.0 - e) + 4.0 * e) / 12.0};
}

SymbolErrorRates symbol_error_rates(double epsilon) {
  NoiseModel noise(epsilon);
  const double e = noise.epsilon;
  const double d = (3.0 - e) * (3.0 - e) + 4.0 * e;
  return {
      (3.0 - e) / (9.0 + 9.0 * e),
      2.0 * e / (9.0 + 9.0 * e),
      0.5 * (3.0 - e) * (3.0 - e) / d,
      2.0 * e / d,
  };
}

double mutual_information(double epsilon, KeyCase key_case) {
  NoiseModel noise(epsilon);
  const double e = noise.epsilon;
  if (key_case == KeyCase::trit) {
    double info = (3.0 - e) / (3.0 + 3.0 * e) * std::log2((3.0 - e) / (1.0 + e));
    if (e > 0.0) {
      info += 4.0 * e / (3.0 + 3.0 * e) * std::log2(2.0 * e / (1.0 + e));
    }
    return info;
  }
  const double d = (3.0 - e) * (3.0 - e) + 4.0 * e;
  double info = (3.0 - e) * (3.0 - e) / d * std::log2(2.0 * (3.0 - e) * (3.0 - e) / d);
  if (e > 0.0) {
    info += 4.0 * e / d * std::log2(8.0 * e / d);
  }
  return info;
}

double key_rate(double epsilon) {
  const auto cases = case_probabilities(epsilon);
  return 0.5 * (cases.trit * mutual_information(epsilon, KeyCase::trit) +
                cases.bit * mutual_information(epsilon, KeyCase::bit));
}

double shannon_limit(double epsilon) {
  return discrete_mutual_information(joint_probabilities(epsilon));
}

double discrete_mutual_information(const Eigen::MatrixXd& joint) {
  if (joint.size() == 0 || joint.minCoeff() < -1e-12 ||
      std::abs(joint.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "discrete_mutual_information: input is not a joint distribution");
  }
  const Eigen::VectorXd rows = joint.rowwise().sum();
  const Eigen::VectorXd cols = joint.colwise().sum();
  double info = 0.0;
  for (Eigen::Index r = 0; r < joint.rows(); ++r) {
    for (Eigen::Index c = 0; c < joint.cols(); ++c) {
      const double p = joint(r, c);
      if (p > 0.0) info += p * std::log2(p / (rows(r) * cols(c)));
    }
  }
  return std::max(info, 0.0);
}

void write_bit_key(std::ostream& os, const std::vector<int>& bits) {
  for (int b : bits) os << (b ? '1' : '0');
  os << '\n';
}

void write_trit_key(std::ostream& os, const std::vector<TrineLetter>& trits) {
  for (TrineLetter t : trits) os << to_char(t);
  os << '\n';
}

void write_announcements_jsonl(std::ostream& os,
                               const std::vector<Announcement>& announcements) {
  for (const Announcement& ann : announcements) {
    nlohmann::ordered_json line;
    line["slots"] = {ann.slots.first + 1, ann.slots.second + 1};
    if (ann.kind == Announcement::Kind::same) {
      line["kind"] = "same";
    } else {
      line["kind"] = "diff";
      line["set"] = std::string{to_char(ann.set[0]), to_char(ann.set[1])};
      line["zero"] = std::string{to_char(ann.zero[0]), to_char(ann.zero[1])};
    }
    os << line.dump() << '\n';
  }
}

}  // namespace dtrine
