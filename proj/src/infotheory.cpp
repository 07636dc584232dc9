#include "qkd3/infotheory.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qkd3 {

namespace {

double xlog(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double bob_info(double e_b, int dimension) {
    if (!(e_b >= 0.0 && e_b <= 1.0))
        throw std::domain_error("bob_info: error rate outside [0,1]");
    if (dimension != 2 && dimension != 3)
        throw std::domain_error("bob_info: dimension must be 2 or 3");
    const double inv_log_d = 1.0 / std::log(static_cast<double>(dimension));
    // 1 + (1-E) log_d(1-E) + E log_d(E/(d-1)); the error splits evenly
    // over the d-1 wrong symbols.
    double v = 1.0 + xlog(1.0 - e_b) * inv_log_d;
    if (e_b > 0.0)
        v += e_b * std::log(e_b / (dimension - 1)) * inv_log_d;
    return v;
}

MubMetrics mub_ire_metrics(int dimension, int n_bases) {
    if (n_bases < 2) throw std::domain_error("mub_ire_metrics: need at least two bases");
    const Rational wrong_basis(n_bases - 1, n_bases);
    const Rational disturbance(dimension - 1, dimension);
    return {Rational(1, n_bases), wrong_basis * disturbance};
}

Rational bob_correct_prob(const StateSet& s, const std::vector<int>& alice_pool) {
    const int n = s.n_rays();
    const int nb = static_cast<int>(s.bases.size());
    Rational total;
    for (int j : alice_pool)
        for (int mu = 0; mu < n; ++mu) {
            const Rational& p = s.overlap(mu, j);
            if (p.is_zero()) continue;
            total += Rational(s.multiplicity[mu]) * p * p;
        }
    return total / Rational(static_cast<std::int64_t>(alice_pool.size()) * nb);
}

double eve_info_ire(const StateSet& s, const std::vector<int>& alice_pool) {
    const int n = s.n_rays();
    const int nb = static_cast<int>(s.bases.size());
    const int d = s.dimension;

    // aggregate the integer weight of every distinct overlap value first,
    // then take the transcendental part once per value
    std::map<Rational, std::int64_t> weight;
    for (int j : alice_pool)
        for (int mu = 0; mu < n; ++mu) {
            const Rational& p = s.overlap(mu, j);
            if (p.is_zero() || p == Rational(1)) continue;   // p log p vanishes at both ends
            weight[p] += static_cast<std::int64_t>(s.multiplicity[j]) * s.multiplicity[mu];
        }

    const double inv_log_d = 1.0 / std::log(static_cast<double>(d));
    double sum = 0.0;
    for (const auto& [p, w] : weight) {
        const double pf = to_float(p);
        sum += static_cast<double>(w) * pf * std::log(pf) * inv_log_d;
    }
    return 1.0 + sum / (static_cast<double>(d) * nb * nb);
}

double passive_event_gain() { return 1.0 - std::log(2.0) / std::log(3.0); }

double passive_info() { return (9.0 / 13.0) * passive_event_gain(); }

double breakeven_x(double i_eve_active, double e_bob, int dimension, double passive_floor) {
    if (!(i_eve_active > 0.0))
        throw std::invalid_argument("breakeven_x: need positive active information");
    auto gap = [&](double x) {
        return x * i_eve_active + (1.0 - x) * passive_floor - bob_info(x * e_bob, dimension);
    };

    // the solver assumes a single crossing; verify the gap is monotone
    double prev = gap(0.0);
    for (int i = 1; i <= 64; ++i) {
        const double cur = gap(static_cast<double>(i) / 64.0);
        if (cur < prev - 1e-12)
            throw std::runtime_error("breakeven_x: gap function is not monotone");
        prev = cur;
    }
    if (gap(0.0) > 0.0 || gap(1.0) < 0.0)
        throw std::runtime_error("breakeven_x: no sign change on [0,1]");

    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

MetricsRow metrics_row(const Protocol& p) {
    MetricsRow row;
    row.protocol = p.name;
    row.unit = p.unit;
    row.e_bob = 1.0 - to_float(bob_correct_prob(p.set, p.alice_pool));
    row.i_eve = eve_info_ire(p.set, p.alice_pool);
    row.i_bob = bob_info(row.e_bob, p.dimension);
    const double floor = p.passive_applicable ? passive_info() : 0.0;
    row.x_breakeven = breakeven_x(row.i_eve, row.e_bob, p.dimension, floor);
    return row;
}

std::vector<MetricsRow> metrics_table() {
    std::vector<MetricsRow> rows;
    for (ProtocolId id : all_protocols()) rows.push_back(metrics_row(make_protocol(id)));
    return rows;
}

SweepSeries sweep(const Protocol& p, int n_points) {
    if (n_points < 2) throw std::invalid_argument("sweep: need at least two points");
    const MetricsRow row = metrics_row(p);
    const double floor = p.passive_applicable ? passive_info() : 0.0;

    SweepSeries series;
    series.protocol = p.name;
    series.unit = p.unit;
    series.x_breakeven = row.x_breakeven;
    series.points.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double x = static_cast<double>(i) / (n_points - 1);
        SweepPoint pt;
        pt.x = x;
        pt.i_eve = x * row.i_eve + (1.0 - x) * floor;
        pt.i_bob = bob_info(x * row.e_bob, p.dimension);
        series.points.push_back(pt);
    }
    return series;
}

namespace {

// P(alice ray | sifted) under the simulator's 1/M sampling, exact.
Rational sifted_weight(const Protocol& p, std::size_t pool_index) {
    const int j = p.alice_pool[pool_index];
    return p.alice_weights[pool_index] *
           Rational(p.set.multiplicity[j], static_cast<std::int64_t>(p.bob_bases.size())) /
           p.analytic_sift_rate;
}

}  // namespace

double eve_info_sim_expectation(const Protocol& p) {
    const int nb = p.n_bases();
    double total = 0.0;
    for (std::size_t pi = 0; pi < p.alice_pool.size(); ++pi) {
        const int j = p.alice_pool[pi];
        const double wj = to_float(sifted_weight(p, pi));
        const double wb = 1.0 / p.set.multiplicity[j];   // Bob's basis among those containing j
        for (int bi : p.bob_bases) {
            if (p.member_pos[static_cast<std::size_t>(j) * nb + bi] < 0) continue;
            for (int ei : p.eve_bases) {
                const double we = 1.0 / static_cast<double>(p.eve_bases.size());
                for (int mu : p.set.bases[ei].members) {
                    const Rational& prob = p.set.overlap(mu, j);
                    if (prob.is_zero()) continue;
                    const auto& post = p.eve_post[static_cast<std::size_t>(mu) * nb + bi];
                    total += wj * wb * we * to_float(prob) * (1.0 - post.entropy);
                }
            }
        }
    }
    return total;
}

double passive_info_sim_expectation(const Protocol& p) {
    const int nb = p.n_bases();
    double total = 0.0;
    for (std::size_t pi = 0; pi < p.alice_pool.size(); ++pi) {
        const int j = p.alice_pool[pi];
        const double wj = to_float(sifted_weight(p, pi));
        const double wb = 1.0 / p.set.multiplicity[j];
        for (int bi : p.bob_bases) {
            if (p.member_pos[static_cast<std::size_t>(j) * nb + bi] < 0) continue;
            total += wj * wb * (1.0 - p.passive_entropy[bi]);
        }
    }
    return total;
}

SessionTargets session_targets(const Protocol& p, const EveStrategy& eve) {
    eve.validate();
    SessionTargets t;
    t.sift_rate = to_float(p.analytic_sift_rate);
    const double x = eve.intercepts() ? eve.intercept_fraction : 0.0;
    t.error_rate = x * (1.0 - to_float(bob_correct_prob(p.set, p.alice_pool)));
    t.eve_info = x * eve_info_sim_expectation(p);
    if (eve.listens_passively())
        t.eve_info += (1.0 - x) * passive_info_sim_expectation(p);
    return t;
}

}  // namespace qkd3
