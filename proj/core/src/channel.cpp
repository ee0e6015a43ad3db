#include "dtrine/channel.hpp"

#include <array>
#include <ostream>
#include <random>
#include <stdexcept>

namespace dtrine {

NoiseModel::NoiseModel(double eps) : epsilon(eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::domain_error("epsilon must lie in [0, 1]");
  }
}

Operator source_state(double epsilon) {
  NoiseModel noise(epsilon);
  return (1.0 - noise.epsilon) * projector(singlet_ket()) +
         (noise.epsilon / 4.0) * Operator::Identity(4, 4);
}

TransmissionRecord sample_record(double epsilon, std::size_t n, std::uint64_t seed) {
  NoiseModel noise(epsilon);
  if (n < 1) throw std::invalid_argument("sample_record: need at least one slot");

  const Eigen::Matrix3d probs = joint_probabilities(noise.epsilon);
  std::array<double, 9> cdf{};
  double acc = 0.0;
  for (int cell = 0; cell < 9; ++cell) {
    acc += probs(cell / 3, cell % 3);
    cdf[cell] = acc;
  }
  cdf[8] = 1.0;

  TransmissionRecord record;
  record.alice.reserve(n);
  record.bob.reserve(n);
  std::mt19937_64 rng(seed);
  for (std::size_t slot = 0; slot < n; ++slot) {
    const double u = uniform01(rng);
    int cell = 0;
    while (cell < 8 && u >= cdf[cell]) ++cell;
    record.alice.push_back(letter_from_index(cell / 3));
    record.bob.push_back(letter_from_index(cell % 3));
  }
  return record;
}

Eigen::Matrix3d empirical_joint(const TransmissionRecord& record) {
  if (record.size() == 0 || record.alice.size() != record.bob.size()) {
    throw std::invalid_argument("empirical_joint: record is empty or misaligned");
  }
  Eigen::Matrix3d counts = Eigen::Matrix3d::Zero();
  for (std::size_t slot = 0; slot < record.size(); ++slot) {
    counts(static_cast<int>(record.alice[slot]),
           static_cast<int>(record.bob[slot])) += 1.0;
  }
  return counts / static_cast<double>(record.size());
}

void write_record_csv(std::ostream& os, const TransmissionRecord& record) {
  os << "slot,alice,bob\n";
  for (std::size_t slot = 0; slot < record.size(); ++slot) {
    os << (slot + 1) << ',' << to_char(record.alice[slot]) << ','
       << to_char(record.bob[slot]) << '\n';
  }
}

}  // namespace dtrine
