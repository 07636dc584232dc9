#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qkd3/infotheory.hpp"
#include "qkd3/verify.hpp"

namespace qkd3 {

/// All renderers are pure functions of their inputs and produce identical
/// bytes on every invocation. Informations and error rates print with six
/// decimals, breakeven fractions with five.

std::string format_metrics_table(const std::vector<MetricsRow>& rows);
std::string format_metrics_csv(const std::vector<MetricsRow>& rows);
nlohmann::ordered_json metrics_json(const std::vector<MetricsRow>& rows);

std::string format_sweep_csv(const std::vector<SweepSeries>& series);
nlohmann::ordered_json sweep_json(const std::vector<SweepSeries>& series);

/// Session summary combining the empirical counters with their analytic
/// targets and z-scores.
struct SessionReport {
    std::string protocol;
    std::string unit;
    std::string eve_kind;
    double intercept_fraction = 0.0;
    SessionStats stats;
    SessionTargets targets;

    double emp_error_rate = 0.0;
    double emp_eve_info = 0.0;
    double emp_sift_rate = 0.0;
    double z_error = 0.0;
    double z_eve_info = 0.0;
    double z_sift = 0.0;
};

SessionReport make_session_report(const Protocol& p, const EveStrategy& eve,
                                  const SessionStats& stats);

std::string format_session_table(const SessionReport& r);
std::string format_session_csv(const SessionReport& r);
nlohmann::ordered_json session_json(const SessionReport& r);

std::string format_rounds_csv(const std::vector<RoundRecord>& records);

std::string format_verify(const VerifyReport& rep);
nlohmann::ordered_json verify_json(const VerifyReport& rep);

}  // namespace qkd3
