#pragma once

#include "dtrine/trine.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace dtrine {

/// Unbiased-noise fraction; construction validates 0 <= epsilon <= 1.
struct NoiseModel {
  explicit NoiseModel(double eps);
  double epsilon;
};

struct TransmissionRecord {
  std::vector<TrineLetter> alice;
  std::vector<TrineLetter> bob;

  std::size_t size() const { return alice.size(); }
};

/// rho_eps = (1-eps)|s><s| + eps/4, the singlet with unbiased noise (4x4).
Operator source_state(double epsilon);

/// n i.i.d. letter pairs drawn from joint_probabilities(epsilon).
/// Deterministic for a fixed seed.  Requires n >= 1.
TransmissionRecord sample_record(double epsilon, std::size_t n, std::uint64_t seed);

/// Letter-pair frequencies (counts / n); throws on an empty record.
Eigen::Matrix3d empirical_joint(const TransmissionRecord& record);

/// CSV with header "slot,alice,bob"; slot numbers are 1-based.
void write_record_csv(std::ostream& os, const TransmissionRecord& record);

}  // namespace dtrine
