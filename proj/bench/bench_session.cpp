// Throughput comparison of the serial reference session runner against the
// OpenMP chunked runner, plus an equality check between the two.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstdint>

#include "qkd3/protocol.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t rounds = 2000000;
    if (argc > 1) rounds = std::strtoull(argv[1], nullptr, 10);
    const std::uint64_t seed = 20260810;

    bool all_equal = true;
    for (qkd3::ProtocolId id :
         {qkd3::ProtocolId::Mub4Qutrit, qkd3::ProtocolId::B13V21, qkd3::ProtocolId::B13V12}) {
        const qkd3::Protocol p = qkd3::make_protocol(id);
        const qkd3::EveStrategy eve = p.passive_applicable
                                          ? qkd3::EveStrategy::mixed(1.0)
                                          : qkd3::EveStrategy::intercept_resend(1.0);

        auto t0 = std::chrono::steady_clock::now();
        const qkd3::SessionStats serial = qkd3::run_session_serial(p, eve, rounds, seed);
        const double t_serial = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const qkd3::SessionStats parallel = qkd3::run_session(p, eve, rounds, seed);
        const double t_parallel = seconds_since(t0);

        const bool equal = serial == parallel;
        all_equal = all_equal && equal;
        std::printf("%-18s %9.2f Mrounds/s serial   %9.2f Mrounds/s parallel (x%.2f, %d threads)  %s\n",
                    p.name.c_str(), rounds / t_serial / 1e6, rounds / t_parallel / 1e6,
                    t_serial / t_parallel, qkd3::resolve_threads(),
                    equal ? "results identical" : "RESULTS DIFFER");
    }
    return all_equal ? 0 : 1;
}
