#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qkd3/infotheory.hpp"
#include "qkd3/protocol.hpp"
#include "qkd3/render.hpp"
#include "qkd3/verify.hpp"

namespace {

// exit codes: 0 success, 1 failed check or I/O error, 2 usage error
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

bool emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return true;
    }
    std::ofstream f(out_path, std::ios::binary);
    f << content;
    if (!f) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return false;
    }
    return true;
}

std::string protocol_list() {
    std::string s;
    for (qkd3::ProtocolId id : qkd3::all_protocols()) {
        if (!s.empty()) s += ", ";
        s += qkd3::protocol_name(id);
    }
    return s;
}

qkd3::EveStrategy resolve_strategy(const qkd3::Protocol& p, const std::string& eve_name,
                                   double x) {
    using qkd3::EveKind;
    if (eve_name == "auto") {
        // the 12-vector protocol defaults to passive listening on the rounds
        // Eve does not intercept; the others have nothing to listen for
        if (p.passive_applicable) return qkd3::EveStrategy::mixed(x);
        return qkd3::EveStrategy::intercept_resend(x);
    }
    const auto kind = qkd3::parse_eve_kind(eve_name);
    return qkd3::EveStrategy{*kind, x};
}

int run(int argc, char** argv);

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}

namespace {

int run(int argc, char** argv) {
    CLI::App app{"3-state quantum key distribution: verification, metrics, simulation"};
    app.require_subcommand(1);

    std::string format = "table";
    std::string out_path;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "write output to a file instead of stdout");
    app.fallthrough();

    auto* cmd_verify = app.add_subcommand("verify", "check the state geometry invariants");
    bool dump = false;
    cmd_verify->add_flag("--dump", dump, "emit the built-in state sets as JSON");
    int inject_defect = -1;
    cmd_verify->add_option("--inject-defect", inject_defect)->group("");  // test hook

    app.add_subcommand("metrics", "closed-form eavesdropping metrics for all protocols");

    auto* cmd_sim = app.add_subcommand("simulate", "run a seeded key-distribution session");
    std::string proto_name;
    cmd_sim->add_option("--protocol", proto_name, "one of: " + protocol_list())
        ->required()
        ->check(CLI::Validator(
            [](std::string& v) {
                return qkd3::parse_protocol(v) ? std::string{}
                                               : "unknown protocol '" + v + "'";
            },
            "PROTOCOL"));
    std::uint64_t rounds = 100000;
    cmd_sim->add_option("--rounds", rounds, "number of transmissions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    double intercept_fraction = 1.0;
    cmd_sim->add_option("--intercept-fraction", intercept_fraction,
                        "fraction of particles Eve intercepts")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    std::uint64_t seed = 1;
    cmd_sim->add_option("--seed", seed, "RNG seed")->capture_default_str();
    std::string eve_name = "auto";
    cmd_sim->add_option("--eve", eve_name, "eavesdropping strategy")
        ->check(CLI::IsMember({"auto", "none", "intercept-resend", "ire", "passive-listen",
                               "passive", "mixed"}))
        ->capture_default_str();
    std::string dump_rounds_path;
    cmd_sim->add_option("--dump-rounds", dump_rounds_path, "write the per-round CSV here");

    auto* cmd_sweep = app.add_subcommand("sweep", "information curves vs intercepted fraction");
    std::string sweep_proto = "all";
    cmd_sweep->add_option("--protocol", sweep_proto, "protocol name or 'all'")
        ->check(CLI::Validator(
            [](std::string& v) {
                return (v == "all" || qkd3::parse_protocol(v))
                           ? std::string{}
                           : "unknown protocol '" + v + "'";
            },
            "PROTOCOL"));
    int points = 101;
    cmd_sweep->add_option("--points", points, "grid points including endpoints")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cmd_verify->parsed()) {
            const qkd3::VerifyReport rep = qkd3::run_verify(inject_defect);
            std::string content;
            if (format == "json" || dump) {
                nlohmann::ordered_json j = qkd3::verify_json(rep);
                if (dump) {
                    j["state_sets"] = {{"mub4", qkd3::state_set_json(qkd3::build_mub4())},
                                       {"table21", qkd3::state_set_json(qkd3::build_table1())}};
                }
                content = j.dump(2) + "\n";
            } else {
                content = qkd3::format_verify(rep);
            }
            if (!emit(out_path, content)) return kExitFail;
            return rep.pass ? 0 : kExitFail;
        }

        if (app.get_subcommand("metrics")->parsed()) {
            const auto rows = qkd3::metrics_table();
            std::string content;
            if (format == "csv")
                content = qkd3::format_metrics_csv(rows);
            else if (format == "json")
                content = qkd3::metrics_json(rows).dump(2) + "\n";
            else
                content = qkd3::format_metrics_table(rows);
            return emit(out_path, content) ? 0 : kExitFail;
        }

        if (cmd_sim->parsed()) {
            const qkd3::Protocol p = qkd3::make_protocol(*qkd3::parse_protocol(proto_name));
            const qkd3::EveStrategy eve = resolve_strategy(p, eve_name, intercept_fraction);

            qkd3::SessionStats stats;
            if (!dump_rounds_path.empty()) {
                auto [st, records] = qkd3::run_session_traced(p, eve, rounds, seed);
                stats = st;
                if (!emit(dump_rounds_path, qkd3::format_rounds_csv(records))) return kExitFail;
            } else {
                stats = qkd3::run_session(p, eve, rounds, seed);
            }
            const qkd3::SessionReport rep = qkd3::make_session_report(p, eve, stats);
            std::string content;
            if (format == "csv")
                content = qkd3::format_session_csv(rep);
            else if (format == "json")
                content = qkd3::session_json(rep).dump(2) + "\n";
            else
                content = qkd3::format_session_table(rep);
            return emit(out_path, content) ? 0 : kExitFail;
        }

        if (cmd_sweep->parsed()) {
            std::vector<qkd3::SweepSeries> series;
            if (sweep_proto == "all") {
                for (qkd3::ProtocolId id : qkd3::all_protocols())
                    series.push_back(qkd3::sweep(qkd3::make_protocol(id), points));
            } else {
                series.push_back(
                    qkd3::sweep(qkd3::make_protocol(*qkd3::parse_protocol(sweep_proto)), points));
            }
            std::string content;
            if (format == "json")
                content = qkd3::sweep_json(series).dump(2) + "\n";
            else
                content = qkd3::format_sweep_csv(series);
            return emit(out_path, content) ? 0 : kExitFail;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return 0;
}

}  // namespace
