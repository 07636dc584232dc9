#include "qkd3/render.hpp"

#include <cmath>
#include <cstdio>

namespace qkd3 {

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    while (s.size() < width) s.push_back(' ');
    return s;
}

}  // namespace

std::string format_metrics_table(const std::vector<MetricsRow>& rows) {
    std::string out;
    out += pad("protocol", 18) + pad("unit", 6) + pad("I_E", 10) + pad("I_B", 10) +
           pad("E_B", 10) + "x\n";
    for (const MetricsRow& r : rows) {
        out += pad(r.protocol, 18) + pad(r.unit, 6) + pad(fixed(r.i_eve, 6), 10) +
               pad(fixed(r.i_bob, 6), 10) + pad(fixed(r.e_bob, 6), 10) +
               fixed(r.x_breakeven, 5) + "\n";
    }
    return out;
}

std::string format_metrics_csv(const std::vector<MetricsRow>& rows) {
    std::string out = "protocol,unit,i_eve,i_bob,e_bob,x_breakeven\n";
    for (const MetricsRow& r : rows)
        out += r.protocol + "," + r.unit + "," + fixed(r.i_eve, 6) + "," + fixed(r.i_bob, 6) +
               "," + fixed(r.e_bob, 6) + "," + fixed(r.x_breakeven, 5) + "\n";
    return out;
}

nlohmann::ordered_json metrics_json(const std::vector<MetricsRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const MetricsRow& r : rows)
        arr.push_back({{"protocol", r.protocol},
                       {"unit", r.unit},
                       {"i_eve", r.i_eve},
                       {"i_bob", r.i_bob},
                       {"e_bob", r.e_bob},
                       {"x_breakeven", r.x_breakeven}});
    return nlohmann::ordered_json{{"rows", arr}};
}

std::string format_sweep_csv(const std::vector<SweepSeries>& series) {
    std::string out = "protocol,unit,x,i_eve,i_bob,x_breakeven\n";
    for (const SweepSeries& s : series)
        for (const SweepPoint& pt : s.points)
            out += s.protocol + "," + s.unit + "," + fixed(pt.x, 6) + "," +
                   fixed(pt.i_eve, 6) + "," + fixed(pt.i_bob, 6) + "," +
                   fixed(s.x_breakeven, 5) + "\n";
    return out;
}

nlohmann::ordered_json sweep_json(const std::vector<SweepSeries>& series) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SweepSeries& s : series) {
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (const SweepPoint& pt : s.points)
            pts.push_back({{"x", pt.x}, {"i_eve", pt.i_eve}, {"i_bob", pt.i_bob}});
        arr.push_back({{"protocol", s.protocol},
                       {"unit", s.unit},
                       {"x_breakeven", s.x_breakeven},
                       {"points", pts}});
    }
    return nlohmann::ordered_json{{"series", arr}};
}

SessionReport make_session_report(const Protocol& p, const EveStrategy& eve,
                                  const SessionStats& stats) {
    SessionReport r;
    r.protocol = p.name;
    r.unit = p.unit;
    r.eve_kind = eve_kind_name(eve.kind);
    r.intercept_fraction = eve.intercepts() ? eve.intercept_fraction : 0.0;
    r.stats = stats;
    r.targets = session_targets(p, eve);

    r.emp_error_rate = stats.empirical_error_rate();
    r.emp_eve_info = stats.empirical_eve_info();
    r.emp_sift_rate = stats.empirical_sift_rate();

    const auto n_sift = static_cast<double>(stats.rounds_sifted);
    const auto n_sent = static_cast<double>(stats.rounds_sent);

    auto binom_z = [](double emp, double target, double n) {
        const double se = std::sqrt(target * (1.0 - target) / n);
        return se > 0.0 ? (emp - target) / se : 0.0;
    };
    if (n_sift > 0) {
        r.z_error = binom_z(r.emp_error_rate, r.targets.error_rate, n_sift);
        const double mean_h = stats.eve_posterior_entropy_sum / n_sift;
        const double var_h =
            std::max(0.0, stats.eve_posterior_entropy_sq_sum / n_sift - mean_h * mean_h);
        const double se = std::sqrt(var_h / n_sift);
        r.z_eve_info = se > 0.0 ? (r.emp_eve_info - r.targets.eve_info) / se : 0.0;
    }
    if (n_sent > 0) r.z_sift = binom_z(r.emp_sift_rate, r.targets.sift_rate, n_sent);
    return r;
}

std::string format_session_table(const SessionReport& r) {
    std::string out;
    out += "protocol           " + r.protocol + " (" + r.unit + "s)\n";
    out += "eve                " + r.eve_kind + ", intercept fraction " +
           fixed(r.intercept_fraction, 6) + "\n";
    out += "seed               " + std::to_string(r.stats.rng_seed) + "\n";
    out += "rounds sent        " + std::to_string(r.stats.rounds_sent) + "\n";
    out += "rounds sifted      " + std::to_string(r.stats.rounds_sifted) + "\n";
    out += "bob symbol errors  " + std::to_string(r.stats.bob_symbol_errors) + "\n";
    out += "eve intercepts     " + std::to_string(r.stats.eve_intercepts) + "\n";
    out += "eve exact rounds   " + std::to_string(r.stats.eve_exact_knowledge) + "\n";
    out += "                   " + pad("empirical", 12) + pad("analytic", 12) + "z\n";
    out += "sift rate          " + pad(fixed(r.emp_sift_rate, 6), 12) +
           pad(fixed(r.targets.sift_rate, 6), 12) + fixed(r.z_sift, 2) + "\n";
    out += "error rate E_B     " + pad(fixed(r.emp_error_rate, 6), 12) +
           pad(fixed(r.targets.error_rate, 6), 12) + fixed(r.z_error, 2) + "\n";
    out += "eve info I_E       " + pad(fixed(r.emp_eve_info, 6), 12) +
           pad(fixed(r.targets.eve_info, 6), 12) + fixed(r.z_eve_info, 2) + "\n";
    return out;
}

std::string format_session_csv(const SessionReport& r) {
    std::string out =
        "protocol,unit,eve,intercept_fraction,seed,rounds_sent,rounds_sifted,"
        "bob_symbol_errors,eve_intercepts,eve_exact_knowledge,"
        "emp_sift_rate,emp_error_rate,emp_eve_info,"
        "target_sift_rate,target_error_rate,target_eve_info\n";
    out += r.protocol + "," + r.unit + "," + r.eve_kind + "," +
           fixed(r.intercept_fraction, 6) + "," + std::to_string(r.stats.rng_seed) + "," +
           std::to_string(r.stats.rounds_sent) + "," + std::to_string(r.stats.rounds_sifted) +
           "," + std::to_string(r.stats.bob_symbol_errors) + "," +
           std::to_string(r.stats.eve_intercepts) + "," +
           std::to_string(r.stats.eve_exact_knowledge) + "," + fixed(r.emp_sift_rate, 6) + "," +
           fixed(r.emp_error_rate, 6) + "," + fixed(r.emp_eve_info, 6) + "," +
           fixed(r.targets.sift_rate, 6) + "," + fixed(r.targets.error_rate, 6) + "," +
           fixed(r.targets.eve_info, 6) + "\n";
    return out;
}

nlohmann::ordered_json session_json(const SessionReport& r) {
    return nlohmann::ordered_json{
        {"protocol", r.protocol},
        {"unit", r.unit},
        {"eve", r.eve_kind},
        {"intercept_fraction", r.intercept_fraction},
        {"stats",
         {{"rounds_sent", r.stats.rounds_sent},
          {"rounds_sifted", r.stats.rounds_sifted},
          {"bob_symbol_errors", r.stats.bob_symbol_errors},
          {"eve_intercepts", r.stats.eve_intercepts},
          {"eve_exact_knowledge", r.stats.eve_exact_knowledge},
          {"eve_posterior_entropy_sum", r.stats.eve_posterior_entropy_sum},
          {"eve_posterior_entropy_sq_sum", r.stats.eve_posterior_entropy_sq_sum},
          {"rng_seed", r.stats.rng_seed}}},
        {"empirical",
         {{"sift_rate", r.emp_sift_rate},
          {"error_rate", r.emp_error_rate},
          {"eve_info", r.emp_eve_info}}},
        {"analytic",
         {{"sift_rate", r.targets.sift_rate},
          {"error_rate", r.targets.error_rate},
          {"eve_info", r.targets.eve_info}}},
        {"z_scores",
         {{"sift_rate", r.z_sift}, {"error_rate", r.z_error}, {"eve_info", r.z_eve_info}}}};
}

std::string format_rounds_csv(const std::vector<RoundRecord>& records) {
    std::string out = "round,sifted,alice_trit,bob_trit,eve_intercepted,eve_correct\n";
    for (const RoundRecord& r : records) {
        out += std::to_string(r.round);
        out += r.sifted ? ",1," : ",0,";
        out += std::to_string(r.alice_trit);
        out += ",";
        out += std::to_string(r.bob_trit);
        out += r.eve_intercepted ? ",1," : ",0,";
        out += r.eve_correct ? "1\n" : "0\n";
    }
    return out;
}

std::string format_verify(const VerifyReport& rep) {
    std::string out;
    for (const VerifyCheck& c : rep.checks) {
        out += c.pass ? "[PASS] " : "[FAIL] ";
        out += c.name;
        if (!c.detail.empty()) out += ": " + c.detail;
        out += "\n";
    }
    out += rep.pass ? "all checks passed\n" : "verification FAILED\n";
    return out;
}

nlohmann::ordered_json verify_json(const VerifyReport& rep) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const VerifyCheck& c : rep.checks)
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return nlohmann::ordered_json{{"pass", rep.pass}, {"checks", arr}};
}

}  // namespace qkd3
