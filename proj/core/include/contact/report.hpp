#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "contact/random.hpp"
#include <nlohmann/json.hpp>

namespace contact {

/// Monte Carlo (or exact) estimate of one quantity, with everything needed to
/// reproduce it.
struct ExperimentReport {
  std::string quantity;
  std::optional<double> estimate;  // absent when every replica was censored
  double standard_error = 0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::size_t replicas = 0;
  std::size_t censored = 0;
  Seed seed = 0;
  bool exact = false;
  bool biased_low = false;  // censoring occurred, so a mean is an underestimate
  nlohmann::json config = nlohmann::json::object();
};

enum class Provenance { Default, Calibrated, User };

/// The non-explicit constants, carried as configuration.
struct Constants {
  double c_line = 0.05;
  double c_star = 0.05;
  double c0 = 0.05 / 3;
  double c_coup = 0.05;
  double c_split = 0.5;
  double c_eps = 0.05;
  Provenance provenance = Provenance::Default;

  static Constants defaults() { return {}; }
  /// c0 = min(c_line, c_star) / 3.
  static double derive_c0(double c_line, double c_star);
  void rederive_c0() { c0 = derive_c0(c_line, c_star); }
};

enum class Relation { LessEqual, GreaterEqual };
enum class Verdict { Holds, ViolatedWithinNoise, Violated };

/// Comparison of an estimate against a bound: the claim is `lhs relation rhs`.
struct BoundCheck {
  std::string name;
  double lhs = 0;
  double lhs_se = 0;
  double rhs = 0;
  Relation relation = Relation::LessEqual;
  double margin = 0;  // signed slack; >= 0 means the claim holds at the point estimate
  Verdict verdict = Verdict::Holds;
  bool exact = false;
  std::string note;
};

/// Holds when margin >= -slack; within noise when the shortfall is at most
/// noise_z standard errors beyond the slack.
BoundCheck make_bound_check(std::string name, double lhs, double lhs_se, double rhs, Relation relation,
                            double slack = 0, double noise_z = 3);

std::string to_string(Provenance p);
std::string to_string(Verdict v);

void to_json(nlohmann::json& j, const ExperimentReport& r);
void to_json(nlohmann::json& j, const Constants& c);
void to_json(nlohmann::json& j, const BoundCheck& b);

}  // namespace contact
