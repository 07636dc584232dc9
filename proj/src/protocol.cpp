#include "qkd3/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qkd3 {

namespace {

// Fixed accumulation granularity. Chunk partials are merged in index order,
// which pins the floating-point summation order for every thread count.
constexpr std::uint64_t kChunkRounds = 4096;

constexpr int kMaxBasis = 3;

}  // namespace

const char* protocol_name(ProtocolId id) {
    switch (id) {
        case ProtocolId::Bb84TwoBasis: return "bb84-2basis";
        case ProtocolId::SixStateThreeBasis: return "six-state-3basis";
        case ProtocolId::Mub4Qutrit: return "mub4-qutrit";
        case ProtocolId::B13V12: return "b13-v12";
        case ProtocolId::B13V21: return "b13-v21";
    }
    return "?";
}

std::optional<ProtocolId> parse_protocol(std::string_view name) {
    for (ProtocolId id : all_protocols())
        if (name == protocol_name(id)) return id;
    // short aliases used throughout the docs
    if (name == "bb84") return ProtocolId::Bb84TwoBasis;
    if (name == "six-state") return ProtocolId::SixStateThreeBasis;
    if (name == "mub4") return ProtocolId::Mub4Qutrit;
    return std::nullopt;
}

const std::vector<ProtocolId>& all_protocols() {
    static const std::vector<ProtocolId> ids = {
        ProtocolId::Bb84TwoBasis, ProtocolId::SixStateThreeBasis, ProtocolId::Mub4Qutrit,
        ProtocolId::B13V12, ProtocolId::B13V21};
    return ids;
}

const char* eve_kind_name(EveKind k) {
    switch (k) {
        case EveKind::None: return "none";
        case EveKind::InterceptResend: return "intercept-resend";
        case EveKind::PassiveListen: return "passive-listen";
        case EveKind::Mixed: return "mixed";
    }
    return "?";
}

std::optional<EveKind> parse_eve_kind(std::string_view name) {
    if (name == "none") return EveKind::None;
    if (name == "intercept-resend" || name == "ire") return EveKind::InterceptResend;
    if (name == "passive-listen" || name == "passive") return EveKind::PassiveListen;
    if (name == "mixed") return EveKind::Mixed;
    return std::nullopt;
}

void EveStrategy::validate() const {
    if (!(intercept_fraction >= 0.0 && intercept_fraction <= 1.0))
        throw std::invalid_argument("EveStrategy: intercept fraction outside [0,1]");
}

namespace {

void build_tables(Protocol& p) {
    const StateSet& s = p.set;
    const int n = s.n_rays();
    const int nb = p.n_bases();
    const double inv_log_d = 1.0 / std::log(static_cast<double>(p.dimension));

    // Alice's sampling CDF, weights prop. 1/M_j, exact partial sums.
    Rational z;
    for (int j : p.alice_pool) z += Rational(1, s.multiplicity[j]);
    Rational cum;
    for (int j : p.alice_pool) {
        Rational w = Rational(1, s.multiplicity[j]) / z;
        p.alice_weights.push_back(w);
        cum += w;
        p.alice_cdf.push_back(to_float(cum));
    }
    p.alice_cdf.back() = 1.0;

    p.analytic_sift_rate = Rational();
    for (std::size_t i = 0; i < p.alice_pool.size(); ++i)
        p.analytic_sift_rate +=
            p.alice_weights[i] * Rational(s.multiplicity[p.alice_pool[i]], nb);

    // Measurement CDFs and member positions.
    p.measure_cdf.assign(static_cast<std::size_t>(n) * nb * kMaxBasis, 1.0);
    p.member_pos.assign(static_cast<std::size_t>(n) * nb, -1);
    for (int r = 0; r < n; ++r)
        for (int bi = 0; bi < nb; ++bi) {
            const Basis& b = s.bases[bi];
            Rational acc;
            for (std::size_t pos = 0; pos < b.members.size(); ++pos) {
                acc += s.overlap(r, b.members[pos]);
                p.measure_cdf[(static_cast<std::size_t>(r) * nb + bi) * kMaxBasis + pos] =
                    to_float(acc);
                if (b.members[pos] == r)
                    p.member_pos[static_cast<std::size_t>(r) * nb + bi] = static_cast<int>(pos);
            }
            // outcome probabilities resolve to exactly 1 within each basis
            p.measure_cdf[(static_cast<std::size_t>(r) * nb + bi) * kMaxBasis +
                          b.members.size() - 1] = 1.0;
        }

    std::vector<char> in_pool(n, 0);
    for (int j : p.alice_pool) in_pool[j] = 1;

    // Eve's Bayes posterior per (measurement result, announced basis):
    // priors uniform over the pool members of the announced basis.
    p.eve_post.assign(static_cast<std::size_t>(n) * nb, {});
    for (int mu = 0; mu < n; ++mu)
        for (int bi = 0; bi < nb; ++bi) {
            std::vector<int> cand;
            for (int m : s.bases[bi].members)
                if (in_pool[m]) cand.push_back(m);
            if (cand.empty()) {
                p.eve_post[static_cast<std::size_t>(mu) * nb + bi].possible = false;
                continue;   // a basis with no pool members never sifts
            }
            Rational prior(1, static_cast<std::int64_t>(cand.size()));
            Rational q;
            for (int c : cand) q += prior * s.overlap(mu, c);
            auto& entry = p.eve_post[static_cast<std::size_t>(mu) * nb + bi];
            if (q.is_zero()) {
                entry.possible = false;   // cannot coincide with a sifted round
                continue;
            }
            double h = 0.0;
            for (int c : cand) {
                Rational post = prior * s.overlap(mu, c) / q;
                if (post == Rational(1)) entry.point_mass = true;
                if (!post.is_zero()) {
                    double pf = to_float(post);
                    h -= pf * std::log(pf) * inv_log_d;
                }
            }
            entry.entropy = h;
        }

    // Passive listening: the announcement restricts Alice's ray to the pool
    // members of the announced basis.
    p.passive_entropy.assign(nb, 1.0);
    p.passive_excluded_trit.assign(nb, -1);
    for (int bi = 0; bi < nb; ++bi) {
        int n_cand = 0;
        int excluded = -1;
        for (int m : s.bases[bi].members) {
            if (in_pool[m])
                ++n_cand;
            else
                excluded = s.trits[m];
        }
        if (n_cand == 0) continue;   // never announced on a sifted round
        p.passive_entropy[bi] =
            std::log(static_cast<double>(n_cand)) * inv_log_d;
        if (n_cand == static_cast<int>(s.bases[bi].members.size())) excluded = -1;
        p.passive_excluded_trit[bi] = excluded;
    }
}

Protocol finish_protocol(Protocol p) {
    // every pool vector must be reachable by sifting
    for (int j : p.alice_pool) {
        bool found = false;
        for (int bi : p.bob_bases)
            for (int m : p.set.bases[bi].members) found = found || m == j;
        if (!found)
            throw std::logic_error("protocol: pool vector outside every Bob basis");
    }
    build_tables(p);
    return p;
}

std::vector<int> iota_vec(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

Protocol make_protocol(ProtocolId id) {
    Protocol p;
    p.id = id;
    p.name = protocol_name(id);
    switch (id) {
        case ProtocolId::Bb84TwoBasis:
            p.set = build_bb84();
            p.dimension = 2;
            p.unit = "bit";
            break;
        case ProtocolId::SixStateThreeBasis:
            p.set = build_six_state();
            p.dimension = 2;
            p.unit = "bit";
            break;
        case ProtocolId::Mub4Qutrit:
            p.set = build_mub4();
            p.dimension = 3;
            p.unit = "trit";
            break;
        case ProtocolId::B13V12:
        case ProtocolId::B13V21:
            p.set = build_table1();
            p.dimension = 3;
            p.unit = "trit";
            break;
    }
    if (id == ProtocolId::B13V12) {
        for (int i = 0; i < p.set.n_rays(); ++i)
            if (p.set.columns[i] < 4) p.alice_pool.push_back(i);
        p.passive_applicable = true;
    } else {
        p.alice_pool = iota_vec(p.set.n_rays());
    }
    p.bob_bases = iota_vec(static_cast<int>(p.set.bases.size()));
    p.eve_bases = p.bob_bases;
    return finish_protocol(std::move(p));
}

std::pair<int, int> measure(const StateSet& s, int state_ray, int basis_index, CounterRng& rng) {
    const Basis& b = s.bases.at(static_cast<std::size_t>(basis_index));
    const double u = rng.next_double();
    Rational acc;
    for (std::size_t pos = 0; pos + 1 < b.members.size(); ++pos) {
        acc += s.overlap(state_ray, b.members[pos]);
        if (u < to_float(acc)) return {static_cast<int>(pos), b.members[pos]};
    }
    const int last = static_cast<int>(b.members.size()) - 1;
    return {last, b.members[last]};
}

int measure(const StateVector& state, const std::vector<StateVector>& basis, CounterRng& rng) {
    if (state.is_zero()) throw std::invalid_argument("measure: zero state");
    const double u = rng.next_double();
    Rational acc;
    for (std::size_t pos = 0; pos + 1 < basis.size(); ++pos) {
        acc += overlap_prob(state, basis[pos]);
        if (u < to_float(acc)) return static_cast<int>(pos);
    }
    return static_cast<int>(basis.size()) - 1;
}

std::vector<Rational> eve_posterior(const Protocol& p, int result_ray, int basis_index) {
    const Basis& b = p.set.bases.at(static_cast<std::size_t>(basis_index));
    std::vector<char> in_pool(static_cast<std::size_t>(p.set.n_rays()), 0);
    for (int j : p.alice_pool) in_pool[static_cast<std::size_t>(j)] = 1;

    std::int64_t n_cand = 0;
    for (int m : b.members) n_cand += in_pool[static_cast<std::size_t>(m)];
    if (n_cand == 0) throw std::invalid_argument("eve_posterior: basis has no pool members");

    const Rational prior(1, n_cand);
    Rational q;
    for (int m : b.members)
        if (in_pool[static_cast<std::size_t>(m)]) q += prior * p.set.overlap(result_ray, m);
    if (q.is_zero())
        throw std::invalid_argument("eve_posterior: result is impossible given the announcement");

    std::vector<Rational> post;
    post.reserve(b.members.size());
    for (int m : b.members) {
        if (in_pool[static_cast<std::size_t>(m)])
            post.push_back(prior * p.set.overlap(result_ray, m) / q);
        else
            post.push_back(Rational(0));
    }
    return post;
}

namespace {

inline int sample_cdf(const double* cdf, int n, double u) {
    for (int i = 0; i + 1 < n; ++i)
        if (u < cdf[i]) return i;
    return n - 1;
}

RoundRecord step_round(const Protocol& p, const EveStrategy& eve, std::uint64_t seed,
                       std::uint64_t idx) {
    CounterRng g(seed, idx);
    const int nb = p.n_bases();

    RoundRecord r;
    r.round = idx;

    const int ji = sample_cdf(p.alice_cdf.data(), static_cast<int>(p.alice_cdf.size()),
                              g.next_double());
    r.alice_ray = p.alice_pool[static_cast<std::size_t>(ji)];
    r.alice_trit = p.set.trits[r.alice_ray];

    int carrier = r.alice_ray;
    if (eve.intercepts()) {
        r.eve_intercepted =
            eve.intercept_fraction >= 1.0 || g.next_double() < eve.intercept_fraction;
        if (r.eve_intercepted) {
            r.eve_basis = p.eve_bases[g.next_below(static_cast<std::uint32_t>(p.eve_bases.size()))];
            const Basis& eb = p.set.bases[r.eve_basis];
            const double* cdf =
                &p.measure_cdf[(static_cast<std::size_t>(carrier) * nb + r.eve_basis) * kMaxBasis];
            const int pos = sample_cdf(cdf, static_cast<int>(eb.members.size()), g.next_double());
            r.eve_ray = eb.members[pos];
            r.eve_correct = r.eve_ray == r.alice_ray;
            carrier = r.eve_ray;   // resend the state she found
        }
    }

    r.bob_basis = p.bob_bases[g.next_below(static_cast<std::uint32_t>(p.bob_bases.size()))];
    const Basis& bb = p.set.bases[r.bob_basis];
    {
        const double* cdf =
            &p.measure_cdf[(static_cast<std::size_t>(carrier) * nb + r.bob_basis) * kMaxBasis];
        const int pos = sample_cdf(cdf, static_cast<int>(bb.members.size()), g.next_double());
        r.bob_ray = bb.members[pos];
        r.bob_trit = p.set.trits[r.bob_ray];
    }

    r.sifted = p.member_pos[static_cast<std::size_t>(r.alice_ray) * nb + r.bob_basis] >= 0;
    if (r.sifted) {
        r.error = r.bob_trit != r.alice_trit;
        if (r.eve_intercepted) {
            const auto& entry = p.eve_post[static_cast<std::size_t>(r.eve_ray) * nb + r.bob_basis];
            r.eve_posterior_entropy = entry.entropy;
            r.eve_point_mass = entry.point_mass;
        } else if (eve.listens_passively()) {
            r.eve_posterior_entropy = p.passive_entropy[r.bob_basis];
        } else {
            r.eve_posterior_entropy = 1.0;
        }
    }
    return r;
}

struct ChunkStats {
    std::uint64_t sifted = 0;
    std::uint64_t errors = 0;
    std::uint64_t intercepts = 0;
    std::uint64_t exact = 0;
    double entropy_sum = 0.0;
    double entropy_sq_sum = 0.0;
};

ChunkStats run_chunk(const Protocol& p, const EveStrategy& eve, std::uint64_t seed,
                     std::uint64_t lo, std::uint64_t hi, RoundRecord* records) {
    ChunkStats c;
    for (std::uint64_t i = lo; i < hi; ++i) {
        RoundRecord r = step_round(p, eve, seed, i);
        if (r.eve_intercepted) ++c.intercepts;
        if (r.sifted) {
            ++c.sifted;
            if (r.error) ++c.errors;
            if (r.eve_point_mass) ++c.exact;
            c.entropy_sum += r.eve_posterior_entropy;
            c.entropy_sq_sum += r.eve_posterior_entropy * r.eve_posterior_entropy;
        }
        if (records) records[i] = r;
    }
    return c;
}

SessionStats run_session_impl(const Protocol& p, const EveStrategy& eve, std::uint64_t rounds,
                              std::uint64_t seed, int n_threads, RoundRecord* records) {
    eve.validate();
    if (rounds == 0) throw std::invalid_argument("run_session: rounds must be >= 1");

    const std::uint64_t n_chunks = (rounds + kChunkRounds - 1) / kChunkRounds;
    std::vector<ChunkStats> partial(n_chunks);

#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic) num_threads(n_threads)
#else
    (void)n_threads;
#endif
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(n_chunks); ++ci) {
        const std::uint64_t lo = static_cast<std::uint64_t>(ci) * kChunkRounds;
        const std::uint64_t hi = std::min(rounds, lo + kChunkRounds);
        partial[static_cast<std::size_t>(ci)] = run_chunk(p, eve, seed, lo, hi, records);
    }

    SessionStats s;
    s.rounds_sent = rounds;
    s.rng_seed = seed;
    for (const ChunkStats& c : partial) {
        s.rounds_sifted += c.sifted;
        s.bob_symbol_errors += c.errors;
        s.eve_intercepts += c.intercepts;
        s.eve_exact_knowledge += c.exact;
        s.eve_posterior_entropy_sum += c.entropy_sum;
        s.eve_posterior_entropy_sq_sum += c.entropy_sq_sum;
    }
    return s;
}

}  // namespace

RoundRecord run_round(const Protocol& p, const EveStrategy& eve, std::uint64_t seed,
                      std::uint64_t round_index) {
    eve.validate();
    return step_round(p, eve, seed, round_index);
}

int resolve_threads() {
#ifdef _OPENMP
    if (const char* env = std::getenv("QKD3_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

SessionStats run_session(const Protocol& p, const EveStrategy& eve, std::uint64_t rounds,
                         std::uint64_t seed) {
    return run_session_impl(p, eve, rounds, seed, resolve_threads(), nullptr);
}

SessionStats run_session(const Protocol& p, const EveStrategy& eve, std::uint64_t rounds,
                         std::uint64_t seed, int n_threads) {
    return run_session_impl(p, eve, rounds, seed, std::max(1, n_threads), nullptr);
}

SessionStats run_session_serial(const Protocol& p, const EveStrategy& eve, std::uint64_t rounds,
                                std::uint64_t seed) {
    eve.validate();
    if (rounds == 0) throw std::invalid_argument("run_session: rounds must be >= 1");
    SessionStats s;
    s.rounds_sent = rounds;
    s.rng_seed = seed;
    for (std::uint64_t lo = 0; lo < rounds; lo += kChunkRounds) {
        const ChunkStats c = run_chunk(p, eve, seed, lo, std::min(rounds, lo + kChunkRounds),
                                       nullptr);
        s.rounds_sifted += c.sifted;
        s.bob_symbol_errors += c.errors;
        s.eve_intercepts += c.intercepts;
        s.eve_exact_knowledge += c.exact;
        s.eve_posterior_entropy_sum += c.entropy_sum;
        s.eve_posterior_entropy_sq_sum += c.entropy_sq_sum;
    }
    return s;
}

std::pair<SessionStats, std::vector<RoundRecord>> run_session_traced(
    const Protocol& p, const EveStrategy& eve, std::uint64_t rounds, std::uint64_t seed) {
    std::vector<RoundRecord> records(rounds);
    SessionStats s = run_session_impl(p, eve, rounds, seed, resolve_threads(), records.data());
    return {s, std::move(records)};
}

std::pair<std::string, std::string> sifted_key(const std::vector<RoundRecord>& records) {
    std::string alice, bob;
    for (const RoundRecord& r : records) {
        if (!r.sifted) continue;
        alice.push_back(static_cast<char>('0' + r.alice_trit));
        bob.push_back(static_cast<char>('0' + r.bob_trit));
    }
    return {alice, bob};
}

}  // namespace qkd3
