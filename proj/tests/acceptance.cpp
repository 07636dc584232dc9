// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Reference values are the published six-decimal metrics
// this project reproduces.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qkd3/infotheory.hpp"
#include "qkd3/render.hpp"
#include "qkd3/verify.hpp"

using namespace qkd3;

namespace {

struct Criterion {
    std::vector<std::string> issues;
    void expect(bool ok, const std::string& what) {
        if (!ok) issues.push_back(what);
    }
};

int g_failures = 0;

void run_criterion(int number, const std::string& title, double time_budget_s,
                   const std::function<void(Criterion&)>& body) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    body(c);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > time_budget_s) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "runtime %.2fs exceeds budget %.0fs", dt, time_budget_s);
        c.issues.emplace_back(buf);
    }
    if (c.issues.empty()) {
        std::printf("[PASS] criterion %d: %s (%.2fs)\n", number, title.c_str(), dt);
    } else {
        ++g_failures;
        std::printf("[FAIL] criterion %d: %s (%.2fs)\n", number, title.c_str(), dt);
        for (const std::string& s : c.issues) std::printf("       - %s\n", s.c_str());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7f", v);
    return buf;
}

struct Published {
    const char* name;
    double i_eve, i_bob, e_bob, x;
};

// the reference table: I_E, I_B and E_B to six decimals, x to five
const Published kPublished[5] = {
    {"bb84-2basis", 0.500000, 0.188722, 0.250000, 0.68214},
    {"six-state-3basis", 0.333333, 0.081710, 0.333333, 0.68128},
    {"mub4-qutrit", 0.250000, 0.053605, 0.500000, 0.71770},
    {"b13-v12", 0.575142, 0.143418, 0.391738, 0.51007},
    {"b13-v21", 0.442765, 0.150431, 0.385022, 0.68994},
};

std::vector<int> full_pool(const StateSet& s) {
    std::vector<int> pool(static_cast<std::size_t>(s.n_rays()));
    for (int i = 0; i < s.n_rays(); ++i) pool[static_cast<std::size_t>(i)] = i;
    return pool;
}

std::vector<int> cube_pool(const StateSet& s) {
    std::vector<int> pool;
    for (int i = 0; i < s.n_rays(); ++i)
        if (s.columns[i] < 4) pool.push_back(i);
    return pool;
}

}  // namespace

int main() {
    run_criterion(1, "metrics table reproduces the reference values", 1.0, [](Criterion& c) {
        const auto rows = metrics_table();
        c.expect(rows.size() == 5, "expected five rows");
        for (std::size_t i = 0; i < rows.size() && i < 5; ++i) {
            const Published& p = kPublished[i];
            c.expect(rows[i].protocol == p.name, std::string("row name ") + p.name);
            c.expect(std::abs(rows[i].i_eve - p.i_eve) <= 1e-5,
                     std::string(p.name) + " I_E " + fmt(rows[i].i_eve) + " vs " + fmt(p.i_eve));
            c.expect(std::abs(rows[i].i_bob - p.i_bob) <= 1e-5,
                     std::string(p.name) + " I_B " + fmt(rows[i].i_bob) + " vs " + fmt(p.i_bob));
            c.expect(std::abs(rows[i].e_bob - p.e_bob) <= 1e-5,
                     std::string(p.name) + " E_B " + fmt(rows[i].e_bob) + " vs " + fmt(p.e_bob));
            c.expect(std::abs(rows[i].x_breakeven - p.x) <= 5e-5,
                     std::string(p.name) + " x " + fmt(rows[i].x_breakeven) + " vs " + fmt(p.x) +
                         (i == 3 ? " [known: the passive-floor crossing solves to 0.51020; the"
                                   " reference prints 0.51007, which no variant of the model"
                                   " reproduces, while the other four rows match to <1e-5]"
                                 : ""));
        }
    });

    run_criterion(2, "exact structural suite (unbiasedness, census, coloring)", 1.0, [](Criterion& c) {
        const StateSet mub = build_mub4();
        int cross = 0;
        bool unbiased = true;
        for (int i = 0; i < mub.n_rays(); ++i)
            for (int j = i + 1; j < mub.n_rays(); ++j) {
                if (i / 3 == j / 3) {
                    unbiased = unbiased && mub.overlap(i, j) == Rational(0);
                } else {
                    ++cross;
                    unbiased = unbiased && mub.overlap(i, j) == Rational(1, 3);
                }
            }
        c.expect(cross == 54, "54 cross-basis pairs");
        c.expect(unbiased, "overlap exactly 1/3 across bases, 0 within");

        const StateSet t = build_table1();
        c.expect(t.n_rays() == 21 && t.bases.size() == 13, "13 bases over 21 rays");

        std::vector<StateVector> first12;
        for (int i = 0; i < t.n_rays(); ++i)
            if (t.columns[i] < 4) first12.push_back(t.vectors[i]);
        const BasisScan scan = enumerate_bases(first12);
        c.expect(scan.triples.size() == 4, "4 complete bases over the first 12 rays");
        c.expect(scan.pairs.size() == 9, "9 maximal orthogonal pairs over the first 12 rays");

        int m_total = 0;
        for (int m : t.multiplicity) m_total += m;
        c.expect(m_total == 39, "sum of multiplicities is 39");

        const ColoringReport col = verify_coloring(t);
        c.expect(col.pass, "coloring rules hold");
        c.expect(col.ray111_orthogonal_to_third_column,
                 "(1,1,1) orthogonal to the third column");

        const VerifyReport rep = run_verify();
        c.expect(rep.pass, "full verification battery");
    });

    run_criterion(3, "closed forms equal brute-force tuple enumeration", 5.0, [](Criterion& c) {
        const StateSet t = build_table1();
        const auto p21 = full_pool(t);
        const auto p12 = cube_pool(t);

        c.expect(bob_correct_prob(t, p21) == oracle::bob_correct_brute(t, p21),
                 "C (21-ray pool) exact equality");
        c.expect(bob_correct_prob(t, p12) == oracle::bob_correct_brute(t, p12),
                 "C (12-ray pool) exact equality");

        const double d21 = std::abs(eve_info_ire(t, p21) - oracle::eve_info_brute(t, p21));
        c.expect(d21 < 1e-12, "I_E (21-ray pool) within 1e-12, delta " + fmt(d21));
        const double d12 = std::abs(eve_info_ire(t, p12) - oracle::eve_info_brute(t, p12));
        c.expect(d12 < 1e-12, "I_E (12-ray pool) within 1e-12, delta " + fmt(d12));
    });

    run_criterion(4, "passive listening information", 1.0, [](Criterion& c) {
        c.expect(std::abs(passive_info() - 0.255510) <= 5e-7,
                 "passive info " + fmt(passive_info()) + " vs 0.2555100");
        const double gain = passive_event_gain();
        const double expected = 1.0 - std::log(2.0) / std::log(3.0);
        c.expect(std::abs(gain - expected) < 1e-12, "per-event gain is 1 - log3(2)");
    });

    run_criterion(5, "Monte Carlo converges to the analytic error rates", 60.0, [](Criterion& c) {
        const std::uint64_t rounds = 1000000;
        std::uint64_t seed = 20260810;
        for (ProtocolId id : all_protocols()) {
            const Protocol p = make_protocol(id);
            const EveStrategy eve = p.passive_applicable ? EveStrategy::mixed(1.0)
                                                         : EveStrategy::intercept_resend(1.0);
            const SessionStats s = run_session(p, eve, rounds, seed++);
            const double target = 1.0 - to_float(bob_correct_prob(p.set, p.alice_pool));
            const double se =
                std::sqrt(target * (1.0 - target) / static_cast<double>(s.rounds_sifted));
            const double emp = s.empirical_error_rate();
            c.expect(std::abs(emp - target) <= 4.0 * se,
                     std::string(p.name) + " empirical E_B " + fmt(emp) + " vs " + fmt(target) +
                         " (4se = " + fmt(4.0 * se) + ")");

            const SessionStats clean = run_session(p, EveStrategy::none(), rounds, seed++);
            c.expect(clean.bob_symbol_errors == 0,
                     std::string(p.name) + " zero errors without Eve");
        }
    });

    run_criterion(6, "breakeven fractions", 5.0, [](Criterion& c) {
        const auto rows = metrics_table();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Protocol p = make_protocol(all_protocols()[i]);
            const double floor = p.passive_applicable ? passive_info() : 0.0;
            const double x = rows[i].x_breakeven;
            const double residual =
                std::abs(x * rows[i].i_eve + (1.0 - x) * floor - bob_info(x * rows[i].e_bob,
                                                                          p.dimension));
            c.expect(residual < 1e-9,
                     rows[i].protocol + " residual " + fmt(residual) + " at x*");
            c.expect(std::abs(x - kPublished[i].x) <= 5e-5,
                     rows[i].protocol + " x " + fmt(x) + " vs reference " + fmt(kPublished[i].x) +
                         (i == 3 ? " [known discrepancy, see criterion 1]" : ""));
        }
    });

    run_criterion(7, "the four-basis protocol dominates at every matched I_B", 10.0, [](Criterion& c) {
        const int grid = 101;
        const MetricsRow mub = metrics_row(make_protocol(ProtocolId::Mub4Qutrit));
        // invert mub4's I_B(x) curve by bisection (strictly decreasing)
        auto mub_ie_at_ib = [&](double ib) {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                (bob_info(mid * mub.e_bob, 3) >= ib ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi) * mub.i_eve;
        };
        for (ProtocolId id : all_protocols()) {
            if (id == ProtocolId::Mub4Qutrit) continue;
            const Protocol p = make_protocol(id);
            const SweepSeries s = sweep(p, grid);
            for (const SweepPoint& pt : s.points) {
                const double mub_ie = mub_ie_at_ib(pt.i_bob);
                c.expect(mub_ie <= pt.i_eve + 1e-9,
                         std::string(p.name) + " at x=" + fmt(pt.x) + ": mub4 I_E " +
                             fmt(mub_ie) + " exceeds " + fmt(pt.i_eve));
            }
        }
    });

    run_criterion(8, "bit-for-bit determinism across runs and thread counts", 30.0, [](Criterion& c) {
        const Protocol p = make_protocol(ProtocolId::B13V21);
        const EveStrategy eve = EveStrategy::intercept_resend(0.8);
        const SessionStats a = run_session(p, eve, 400000, 77);
        const SessionStats b = run_session(p, eve, 400000, 77);
        c.expect(a == b, "two identical runs");

        const SessionStats serial = run_session_serial(p, eve, 400000, 77);
        c.expect(a == serial, "parallel equals serial reference");

        const SessionStats t1 = run_session(p, eve, 400000, 77, 1);
        const SessionStats t8 = run_session(p, eve, 400000, 77, 8);
        c.expect(t1 == serial && t8 == serial, "1 and 8 workers give identical stats");

        const std::string r1 = format_session_table(make_session_report(p, eve, a));
        const std::string r2 = format_session_table(make_session_report(p, eve, b));
        c.expect(r1 == r2, "rendered reports byte-identical");
    });

    std::printf("%s: %d of 8 criteria failed\n", g_failures == 0 ? "OK" : "RESULT", g_failures);
    return g_failures == 0 ? 0 : 1;
}
