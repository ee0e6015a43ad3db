#pragma once

#include "dtrine/channel.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace dtrine {

enum class KeyCase { bit, trit };

struct SlotPair {
  std::size_t first;
  std::size_t second;
};

// Bob's public declaration for one slot pair.  In the trit case he only
// says "same"; the letter itself stays private.  In the bit case he
// announces his unordered letter set and which order encodes bit 0
// (always the alphabetical order here, so the announcement carries no
// information about his actual time order).
struct Announcement {
  SlotPair slots;
  enum class Kind { same, diff } kind;
  std::array<TrineLetter, 2> set;   // diff only, alphabetical
  std::array<TrineLetter, 2> zero;  // diff only, the order recorded as 0
};

struct KeyStreams {
  std::vector<int> bits;
  std::vector<TrineLetter> trits;
};

struct KeyGenResult {
  KeyStreams alice;
  KeyStreams bob;
  std::vector<Announcement> announcements;
};

/// Greedy left-to-right pairing of slots with distinct Alice letters;
/// each slot is used at most once, leftovers stay unpaired.
std::vector<SlotPair> pair_slots(const TransmissionRecord& record);

/// Runs the two-way dual-key procedure over all slot pairs.
KeyGenResult generate_keys(const TransmissionRecord& record);

struct CaseProbabilities {
  double trit;  // (3-eps)(1+eps)/12
  double bit;   // ((3-eps)^2 + 4 eps)/12
};
CaseProbabilities case_probabilities(double epsilon);

// Per-cell probabilities of the key-symbol joint distributions:
// three trit_correct cells + six trit_wrong cells sum to 1, and
// two bit_correct cells + two bit_wrong cells sum to 1.
struct SymbolErrorRates {
  double trit_correct;
  double trit_wrong;
  double bit_correct;
  double bit_wrong;
};
SymbolErrorRates symbol_error_rates(double epsilon);

/// I(A:B) of one key stream, in bits per key symbol.
double mutual_information(double epsilon, KeyCase key_case);

/// (1/2)(p_trit I_trit + p_bit I_bit), bits per qubit pair sent.
double key_rate(double epsilon);

/// Mutual information of the joint letter table itself.
double shannon_limit(double epsilon);

/// I(A:B) of an arbitrary joint probability matrix, in bits.
double discrete_mutual_information(const Eigen::MatrixXd& joint);

void write_bit_key(std::ostream& os, const std::vector<int>& bits);
void write_trit_key(std::ostream& os, const std::vector<TrineLetter>& trits);

/// One JSON object per line: {"slots":[i,j],"kind":"same"} or
/// {"slots":[i,j],"kind":"diff","set":"XY","zero":"XY"}; slots 1-based.
void write_announcements_jsonl(std::ostream& os,
                               const std::vector<Announcement>& announcements);

}  // namespace dtrine
