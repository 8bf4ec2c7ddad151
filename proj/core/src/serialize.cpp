#include "nambu/serialize.hpp"

namespace nambu {

namespace {

std::string_view mode_name(CheckMode mode) {
  return mode == CheckMode::kSymbolic ? "symbolic" : "sampled";
}

}  // namespace

Json to_json(const InvariantReport& report) {
  Json j;
  j["label"] = report.label;
  j["mode"] = mode_name(report.mode);
  j["verdict"] = report.pass ? "pass" : "fail";
  if (report.mode == CheckMode::kSymbolic && report.residual_polynomial) {
    j["residual"] = report.residual_polynomial->to_string();
  } else {
    j["residual"] = report.max_residual;
  }
  j["tolerance"] = report.tolerance;
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  Json basis = Json::array();
  for (const auto& p : report.basis) basis.push_back(p.to_string());
  j["basis"] = std::move(basis);
  if (!report.warnings.empty()) j["warnings"] = report.warnings;
  return j;
}

Json to_json(const ConservationReport& report, const Trajectory& trajectory) {
  Json j;
  j["method"] = method_name(trajectory.method);
  j["dt"] = trajectory.dt;
  j["system_hash"] = trajectory.system_hash;
  j["canonical"] = trajectory.has_momentum;
  j["stored_states"] = trajectory.states.size();
  Json quantities = Json::array();
  for (const auto& q : report.quantities) {
    quantities.push_back({{"label", q.label},
                          {"initial", q.initial},
                          {"max_drift", q.max_drift},
                          {"time_of_max_drift", q.time_of_max_drift}});
  }
  j["quantities"] = std::move(quantities);
  return j;
}

Json to_json(const VectorField3& field) {
  Json j = Json::array();
  for (const auto& c : field.components) j.push_back(to_string(c));
  return j;
}

}  // namespace nambu
