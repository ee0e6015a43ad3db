#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dtrine/channel.hpp"
#include "dtrine/keygen.hpp"
#include "dtrine/qmath.hpp"
#include "dtrine/security.hpp"
#include "dtrine/trine.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace dtrine;

namespace {

struct GridSpec {
  double start = 0.0;
  double stop = 0.35;
  double step = 0.005;

  std::vector<double> points() const {
    std::vector<double> eps;
    for (int i = 0;; ++i) {
      const double value = start + i * step;
      if (value > stop + 1e-12) break;
      eps.push_back(std::min(value, 1.0));
    }
    return eps;
  }
};

GridSpec parse_grid(const std::string& text) {
  GridSpec grid;
  char colon1 = 0, colon2 = 0;
  std::istringstream is(text);
  if (!(is >> grid.start >> colon1 >> grid.stop >> colon2 >> grid.step) ||
      colon1 != ':' || colon2 != ':' || !is.eof()) {
    throw CLI::ValidationError("--grid", "expected start:stop:step");
  }
  if (grid.step <= 0.0 || grid.start > grid.stop || grid.start < 0.0 || grid.stop > 1.0) {
    throw CLI::ValidationError("--grid", "need 0 <= start <= stop <= 1 and step > 0");
  }
  return grid;
}

double round6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return std::strtod(buffer, nullptr);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  return os;
}

std::vector<KeyCase> selected_cases(const std::string& which) {
  if (which == "bit") return {KeyCase::bit};
  if (which == "trit") return {KeyCase::trit};
  return {KeyCase::bit, KeyCase::trit};
}

std::vector<Side> selected_sides(const std::string& which) {
  if (which == "alice") return {Side::alice};
  if (which == "bob") return {Side::bob};
  return {Side::alice, Side::bob};
}

void print_table(std::ostream& os, const Eigen::Matrix3d& table) {
  os << "          A           B           C\n";
  for (int i = 0; i < 3; ++i) {
    os << static_cast<char>('A' + i);
    for (int j = 0; j < 3; ++j) {
      os << "  " << std::setw(10) << table(i, j);
    }
    os << '\n';
  }
}

int cmd_probs(double epsilon, const std::string& out, const std::string& format) {
  const Eigen::Matrix3d table = joint_probabilities(epsilon);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty()) {
    file = open_output(out);
    os = &file;
  }
  if (format == "csv") {
    *os << "alice,A,B,C\n";
    for (int i = 0; i < 3; ++i) {
      *os << static_cast<char>('A' + i);
      for (int j = 0; j < 3; ++j) *os << ',' << table(i, j);
      *os << '\n';
    }
  } else if (format == "json") {
    nlohmann::ordered_json json;
    json["epsilon"] = round6(epsilon);
    json["letters"] = "ABC";
    for (int i = 0; i < 3; ++i) {
      json["table"].push_back({round6(table(i, 0)), round6(table(i, 1)),
                               round6(table(i, 2))});
    }
    *os << json.dump(2) << '\n';
  } else {
    *os << "joint letter probabilities at epsilon = " << epsilon
        << " (rows Alice, columns Bob)\n";
    print_table(*os, table);
  }
  return 0;
}

int cmd_simulate(double epsilon, std::size_t rounds, std::uint64_t seed,
                 const std::string& out) {
  const TransmissionRecord record = sample_record(epsilon, rounds, seed);
  const KeyGenResult keys = generate_keys(record);
  const std::size_t trits = keys.alice.trits.size();
  const std::size_t bits = keys.alice.bits.size();
  const std::size_t pairs = trits + bits;

  std::cout << "simulate: epsilon=" << epsilon << " rounds=" << rounds
            << " seed=" << seed << "\n\n";
  std::cout << "empirical joint letter frequencies (rows Alice, columns Bob):\n";
  print_table(std::cout, empirical_joint(record));

  const CaseProbabilities cases = case_probabilities(epsilon);
  std::cout << "\npairs formed: " << pairs << "  (trit " << trits << ", bit " << bits
            << ")\n";
  if (pairs > 0) {
    std::cout << "trit fraction: " << static_cast<double>(trits) / pairs
              << "  (analytic " << cases.trit << ")\n";
    std::cout << "bit fraction:  " << static_cast<double>(bits) / pairs
              << "  (analytic " << cases.bit << ")\n";
  }

  const SymbolErrorRates rates = symbol_error_rates(epsilon);
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
  if (trits > 0) {
    std::cout << "trit symbol error rate: " << static_cast<double>(trit_errors) / trits
              << "  (analytic " << 6.0 * rates.trit_wrong << ")\n";
    std::cout << "trit mutual information: "
              << discrete_mutual_information(trit_counts / static_cast<double>(trits))
              << "  (analytic " << mutual_information(epsilon, KeyCase::trit) << ")\n";
  }
  if (bits > 0) {
    std::cout << "bit symbol error rate:  " << static_cast<double>(bit_errors) / bits
              << "  (analytic " << 2.0 * rates.bit_wrong << ")\n";
    std::cout << "bit mutual information:  "
              << discrete_mutual_information(bit_counts / static_cast<double>(bits))
              << "  (analytic " << mutual_information(epsilon, KeyCase::bit) << ")\n";
  }
  std::cout << "key rate (bits per qubit pair): analytic " << key_rate(epsilon)
            << ", Shannon limit " << shannon_limit(epsilon) << "\n";
  std::cout << "key lengths: " << bits << " bits + " << trits
            << " trits on each side\n";

  if (!out.empty()) {
    {
      auto os = open_output(out + ".record.csv");
      write_record_csv(os, record);
    }
    {
      auto os = open_output(out + ".alice.bits");
      write_bit_key(os, keys.alice.bits);
    }
    {
      auto os = open_output(out + ".bob.bits");
      write_bit_key(os, keys.bob.bits);
    }
    {
      auto os = open_output(out + ".alice.trits");
      write_trit_key(os, keys.alice.trits);
    }
    {
      auto os = open_output(out + ".bob.trits");
      write_trit_key(os, keys.bob.trits);
    }
    {
      auto os = open_output(out + ".announcements.jsonl");
      write_announcements_jsonl(os, keys.announcements);
    }
    std::cout << "wrote " << out << ".{record.csv,alice.bits,bob.bits,"
              << "alice.trits,bob.trits,announcements.jsonl}\n";
  }
  return 0;
}

std::string case_file_name(const std::string& base, KeyCase key_case, bool both) {
  if (!both) return base;
  const std::string tag = std::string(".") + to_string(key_case);
  const auto dot = base.find_last_of('.');
  if (dot == std::string::npos || base.find('/', dot) != std::string::npos) {
    return base + tag;
  }
  return base.substr(0, dot) + tag + base.substr(dot);
}

int cmd_curves(const GridSpec& grid, const std::string& which_case,
               const std::string& out) {
  const std::vector<KeyCase> cases = selected_cases(which_case);
  const bool both = cases.size() > 1;
  for (KeyCase kc : cases) {
    std::vector<CurvePoint> points;
    points.reserve(grid.points().size());
    for (double eps : grid.points()) {
      points.push_back(curve_point(eps, kc));
      const CurvePoint& p = points.back();
      std::cout << "eps=" << p.epsilon << "  i_" << to_string(kc) << "=" << p.i_key
                << "  chi_alice=" << p.chi_alice << "  chi_bob=" << p.chi_bob
                << "  key_rate=" << key_rate(eps)
                << "  shannon=" << shannon_limit(eps) << '\n';
    }
    const std::string path = case_file_name(out, kc, both);
    auto os = open_output(path);
    write_curves_csv(os, points);
    std::cout << "wrote " << path << '\n';
  }
  return 0;
}

int cmd_thresholds(const std::string& which_case, const std::string& which_side,
                   const std::string& out) {
  const std::vector<KeyCase> cases = selected_cases(which_case);
  const std::vector<Side> sides = selected_sides(which_side);

  nlohmann::ordered_json report;
  report["results"] = nlohmann::ordered_json::array();
  std::vector<ThresholdResult> results;
  for (KeyCase kc : cases) {
    for (Side side : sides) {
      const ThresholdResult result = threshold(kc, side);
      results.push_back(result);
      std::cerr << "threshold " << to_string(kc) << "/" << to_string(side)
                << ": epsilon*=" << result.epsilon_star << "  I=" << result.info
                << "  c*=" << result.c_star << '\n';
      nlohmann::ordered_json entry =
          nlohmann::ordered_json::parse(threshold_result_json(result));
      entry["epsilon_star"] = round6(result.epsilon_star);
      entry["info"] = round6(result.info);
      entry["c_star"] = round6(result.c_star);
      report["results"].push_back(entry);
    }
  }

  // Alice's key serves as the error-correction reference when present,
  // so her side carries the protocol verdict; the headline is the
  // conservative minimum over the requested key cases.
  const Side reference =
      (std::find(sides.begin(), sides.end(), Side::alice) != sides.end()) ? Side::alice
                                                                          : sides.front();
  double headline = 1.0;
  for (const ThresholdResult& result : results) {
    if (result.side == reference) headline = std::min(headline, result.epsilon_star);
  }
  report["reference_side"] = to_string(reference);
  report["headline_epsilon"] = round6(headline);
  report["note"] =
      "conservative joint bound: minimum threshold over the requested key "
      "cases on the reference side";

  if (!out.empty()) {
    auto os = open_output(out);
    os << report.dump(2) << '\n';
    std::cout << "wrote " << out << '\n';
  } else {
    std::cout << report.dump(2) << '\n';
  }
  return 0;
}

class CheckRunner {
 public:
  template <typename Fn>
  void run(const std::string& name, Fn&& check) {
    bool ok = false;
    std::string detail;
    try {
      ok = check();
    } catch (const std::exception& error) {
      detail = error.what();
    }
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << '\n';
    failures_ += !ok;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

int cmd_verify(double epsilon, int rff_samples, std::uint64_t seed) {
  CheckRunner runner;

  runner.run("W identities: traces and sector sum", [] {
    const auto w = w_operators();
    bool ok = true;
    Operator sum = Operator::Zero(8, 8);
    for (int i = 0; i < 3; ++i) {
      sum += w[i];
      ok &= std::abs(w[i].trace().real() - 2.0) < 1e-12;
      for (int j = 0; j < 3; ++j) {
        const double expected = (3.0 * (i == j) + 1.0) / 2.0;
        ok &= std::abs((w[i] * w[j]).trace().real() - expected) < 1e-12;
      }
    }
    ok &= (sum - 1.5 * j_half_projector()).cwiseAbs().maxCoeff() < 1e-12;
    return ok;
  });

  runner.run("RFF commutators over Haar rotations", [rff_samples, seed] {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < rff_samples; ++i) {
      if (rff_check(haar_random_su2(rng)) >= 1e-10) return false;
    }
    return true;
  });

  runner.run("trine POM completeness and noiseless table", [] {
    const auto pom = trine_pom();
    Operator sum = Operator::Zero(2, 2);
    for (const auto& pi : pom) sum += pi;
    if ((sum - Operator::Identity(2, 2)).cwiseAbs().maxCoeff() >= 1e-12) return false;
    const Eigen::Matrix3d table = joint_probabilities(0.0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double expected = (i == j) ? 0.0 : 1.0 / 6.0;
        if (std::abs(table(i, j) - expected) >= 1e-12) return false;
      }
    }
    return true;
  });

  runner.run("joint table matches the trace formula", [] {
    const auto pom = trine_pom();
    for (int step = 0; step <= 20; ++step) {
      const double eps = step * 0.05;
      const Operator rho = source_state(eps);
      const Eigen::Matrix3d table = joint_probabilities(eps);
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          const double p = (tensor(pom[j], pom[k]) * rho).trace().real();
          if (std::abs(p - table(j, k)) >= 1e-12) return false;
        }
      }
    }
    return true;
  });

  runner.run("Gram constraints of the ancilla families", [] {
    for (int ei = 1; ei <= 10; ++ei) {
      const double eps = ei * 0.1;
      for (double t : {0.0, 0.5, 1.0}) {
        const AncillaFamily family = v_matrix_one_param(2.0 * eps * t, eps);
        double total = 0.0;
        for (int j = 0; j < 3; ++j) {
          for (int k = 0; k < 3; ++k) {
            const double expected =
                (j == k) ? eps / 9.0 : (3.0 - eps) / 18.0;
            if (std::abs(family.e(j, k).squaredNorm() - expected) >= 1e-10) return false;
            total += family.e(j, k).squaredNorm();
          }
        }
        if (std::abs(total - 1.0) >= 1e-10) return false;
      }
    }
    return true;
  });

  runner.run("conditioned states consume 54 distinct kets", [] {
    for (Side side : {Side::alice, Side::bob}) {
      std::set<std::array<int, 4>> consumed;
      std::size_t terms = 0;
      auto absorb = [&](const std::vector<PairConfig>& list) {
        for (const PairConfig& term : list) {
          if (term.slot1[0] == term.slot2[0]) throw std::runtime_error("repeated Alice letter");
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
      if (terms != 54 || consumed.size() != 54) return false;
    }
    return true;
  });

  runner.run("c = epsilon reproduces the noisy singlet", [epsilon] {
    for (double eps : {epsilon, 0.05, 0.25, 0.6}) {
      const Operator rho = reduced_ab_state(v_matrix_one_param(eps, eps));
      if ((rho - source_state(eps)).cwiseAbs().maxCoeff() >= 1e-10) return false;
    }
    return true;
  });

  runner.run("XX and ZZ symmetry of the reduced state", [epsilon] {
    const Operator xx = tensor(pauli_x(), pauli_x());
    const Operator zz = tensor(pauli_z(), pauli_z());
    for (double t : {0.0, 0.5, 1.0}) {
      const Operator rho = reduced_ab_state(v_matrix_one_param(2.0 * epsilon * t, epsilon));
      if ((xx * rho * xx - rho).cwiseAbs().maxCoeff() >= 1e-10) return false;
      if ((zz * rho * zz - rho).cwiseAbs().maxCoeff() >= 1e-10) return false;
    }
    return true;
  });

  runner.run("hypothesis states are letter symmetric", [epsilon] {
    const double c = epsilon;  // interior point of [0, 2 eps]
    const AncillaFamily family = v_matrix_one_param(c, epsilon);
    for (Side side : {Side::alice, Side::bob}) {
      const double reference = eve_holevo(family, KeyCase::bit, side, 0, 1);
      if (std::abs(eve_holevo(family, KeyCase::bit, side, 1, 2) - reference) >= 1e-9) {
        return false;
      }
      if (std::abs(eve_holevo(family, KeyCase::bit, side, 2, 0) - reference) >= 1e-9) {
        return false;
      }
      const auto trit_states = conditioned_states(family, KeyCase::trit, side);
      const Eigen::VectorXd spectrum = eig_hermitian(trit_states[0].rho).values;
      for (const auto& state : trit_states) {
        if ((eig_hermitian(state.rho).values - spectrum).cwiseAbs().maxCoeff() >= 1e-9) {
          return false;
        }
      }
    }
    return true;
  });

  runner.run("zero noise: chi vanishes and keys agree", [seed] {
    if (eve_holevo(0.0, 0.0, KeyCase::bit, Side::alice) >= 1e-9) return false;
    if (eve_holevo(0.0, 0.0, KeyCase::trit, Side::bob) >= 1e-9) return false;
    const KeyGenResult keys = generate_keys(sample_record(0.0, 20000, seed));
    return keys.alice.bits == keys.bob.bits && keys.alice.trits == keys.bob.trits;
  });

  if (runner.failures() == 0) {
    std::cout << "all checks passed\n";
    return 0;
  }
  std::cout << runner.failures() << " check(s) failed\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-trine QKD: reference-frame-free trine states, dual-key "
               "generation and eavesdropper bounds"};
  app.require_subcommand(1);

  double epsilon = 0.1;
  std::size_t rounds = 100000;
  std::uint64_t seed = 12345;
  std::string grid_text = "0:0.35:0.005";
  std::string which_case = "both";
  std::string which_side = "both";
  std::string out;
  std::string format = "table";
  int rff_samples = 100;

  const auto epsilon_check = CLI::Range(0.0, 1.0);
  const auto case_check = CLI::IsMember({"bit", "trit", "both"});
  const auto side_check = CLI::IsMember({"alice", "bob", "both"});

  auto* probs = app.add_subcommand("probs", "print the joint letter-probability table");
  probs->add_option("--epsilon", epsilon, "noise fraction")->check(epsilon_check);
  probs->add_option("--out", out, "output file (default stdout)");
  probs->add_option("--format", format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  auto* simulate =
      app.add_subcommand("simulate", "sample a transmission record and build the dual key");
  simulate->add_option("--epsilon", epsilon, "noise fraction")->check(epsilon_check);
  simulate->add_option("--rounds", rounds, "number of time slots")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
  simulate->add_option("--seed", seed, "64-bit PRNG seed");
  simulate->add_option("--out", out, "prefix for record/key/announcement files");

  auto* curves = app.add_subcommand(
      "curves", "sweep the noise grid: key information vs eavesdropper bounds");
  curves->add_option("--grid", grid_text, "epsilon grid start:stop:step");
  curves->add_option("--case", which_case, "bit, trit or both")->check(case_check);
  curves->add_option("--out", out, "CSV output path (default curves.csv)");

  auto* thresholds =
      app.add_subcommand("thresholds", "solve the noise thresholds chi* = I");
  thresholds->add_option("--case", which_case, "bit, trit or both")->check(case_check);
  thresholds->add_option("--side", which_side, "alice, bob or both")->check(side_check);
  thresholds->add_option("--out", out, "JSON output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the structural self-checks");
  verify->add_option("--epsilon", epsilon, "noise fraction for spot checks")
      ->check(epsilon_check);
  verify->add_option("--rff-samples", rff_samples, "number of Haar rotations")
      ->check(CLI::Range(1, 1000000));
  verify->add_option("--seed", seed, "64-bit PRNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (probs->parsed()) return cmd_probs(epsilon, out, format);
    if (simulate->parsed()) return cmd_simulate(epsilon, rounds, seed, out);
    if (curves->parsed()) {
      return cmd_curves(parse_grid(grid_text), which_case,
                        out.empty() ? "curves.csv" : out);
    }
    if (thresholds->parsed()) return cmd_thresholds(which_case, which_side, out);
    if (verify->parsed()) return cmd_verify(epsilon, rff_samples, seed);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
