#include "contact/report.hpp"

#include <algorithm>

namespace contact {

double Constants::derive_c0(double c_line, double c_star) { return std::min(c_line, c_star) / 3; }

BoundCheck make_bound_check(std::string name, double lhs, double lhs_se, double rhs, Relation relation, double slack,
                            double noise_z) {
  BoundCheck b;
  b.name = std::move(name);
  b.lhs = lhs;
  b.lhs_se = lhs_se;
  b.rhs = rhs;
  b.relation = relation;
  b.margin = relation == Relation::LessEqual ? rhs - lhs : lhs - rhs;
  b.exact = lhs_se == 0;
  if (b.margin >= -slack) {
    b.verdict = Verdict::Holds;
  } else if (b.margin >= -slack - noise_z * lhs_se) {
    b.verdict = Verdict::ViolatedWithinNoise;
  } else {
    b.verdict = Verdict::Violated;
  }
  return b;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Default: return "default";
    case Provenance::Calibrated: return "calibrated";
    case Provenance::User: return "user";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::ViolatedWithinNoise: return "violated-within-noise";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

void to_json(nlohmann::json& j, const ExperimentReport& r) {
  j = nlohmann::json::object();
  j["quantity"] = r.quantity;
  j["estimate"] = r.estimate ? nlohmann::json(*r.estimate) : nlohmann::json(nullptr);
  if (r.exact) {
    j["se"] = "exact";
  } else {
    j["se"] = r.standard_error;
  }
  if (r.ci_low && r.ci_high) j["ci95"] = {*r.ci_low, *r.ci_high};
  j["replicas"] = r.replicas;
  j["censored"] = r.censored;
  j["biased_low"] = r.biased_low;
  j["seed"] = r.seed;
  j["config"] = r.config;
}

void to_json(nlohmann::json& j, const Constants& c) {
  j = {{"c_line", c.c_line}, {"c_star", c.c_star}, {"c0", c.c0},          {"c_coup", c.c_coup},
       {"c_split", c.c_split}, {"c_eps", c.c_eps}, {"provenance", to_string(c.provenance)}};
}

void to_json(nlohmann::json& j, const BoundCheck& b) {
  j = {{"bound", b.name},
       {"lhs", b.lhs},
       {"relation", b.relation == Relation::LessEqual ? "<=" : ">="},
       {"rhs", b.rhs},
       {"margin", b.margin},
       {"verdict", to_string(b.verdict)}};
  if (b.exact) {
    j["lhs_se"] = "exact";
  } else {
    j["lhs_se"] = b.lhs_se;
  }
  if (!b.note.empty()) j["note"] = b.note;
}

}  // namespace contact
