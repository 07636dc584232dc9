#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qkd3/rng.hpp"
#include "qkd3/statespace.hpp"

namespace qkd3 {

enum class ProtocolId { Bb84TwoBasis, SixStateThreeBasis, Mub4Qutrit, B13V12, B13V21 };

const char* protocol_name(ProtocolId id);
std::optional<ProtocolId> parse_protocol(std::string_view name);
const std::vector<ProtocolId>& all_protocols();

/// One of the five key-distribution protocols: the state set, Alice's
/// vector pool, the basis pools for Bob and Eve, plus the simulation
/// tables derived once from the exact overlap probabilities.
///
/// Alice's sampling weights are proportional to 1/M_j (uniform whenever
/// every ray belongs to a single basis). Sifting keeps a round with
/// probability M_j/B, so this makes the *sifted* rounds uniform over the
/// pool, the ensemble behind the closed-form error rates; uniform sending
/// would over-represent rays that belong to several bases.
struct Protocol {
    ProtocolId id;
    std::string name;
    int dimension = 3;
    std::string unit;                 // "bit" or "trit"
    bool passive_applicable = false;  // incomplete-basis announcements leak a symbol
    StateSet set;
    std::vector<int> alice_pool;
    std::vector<int> bob_bases;       // indices into set.bases
    std::vector<int> eve_bases;

    std::vector<Rational> alice_weights;   // normalized, prop. 1/M_j
    Rational analytic_sift_rate;           // sum_j w_j M_j / B

    // simulation tables
    struct EvePosterior {
        double entropy = 1.0;   // in protocol units
        bool point_mass = false;
        bool possible = true;   // false when the (result, basis) pair cannot be sifted
    };
    std::vector<double> alice_cdf;
    std::vector<double> measure_cdf;        // [ray][basis][pos], padded to 3
    std::vector<int> member_pos;            // [ray][basis] -> position or -1
    std::vector<EvePosterior> eve_post;     // [result ray][announced basis]
    std::vector<double> passive_entropy;    // [announced basis]
    std::vector<int> passive_excluded_trit; // [announced basis], -1 when nothing is excluded

    int n_rays() const { return set.n_rays(); }
    int n_bases() const { return static_cast<int>(set.bases.size()); }
};

Protocol make_protocol(ProtocolId id);

enum class EveKind { None, InterceptResend, PassiveListen, Mixed };

const char* eve_kind_name(EveKind k);
std::optional<EveKind> parse_eve_kind(std::string_view name);

/// Eve's strategy: intercept-resend on a fraction x of the particles,
/// plus (Mixed/PassiveListen) passive listening on the public basis
/// announcements for the rounds she does not touch.
struct EveStrategy {
    EveKind kind = EveKind::None;
    double intercept_fraction = 0.0;

    static EveStrategy none() { return {EveKind::None, 0.0}; }
    static EveStrategy intercept_resend(double x) { return {EveKind::InterceptResend, x}; }
    static EveStrategy passive_listen() { return {EveKind::PassiveListen, 0.0}; }
    static EveStrategy mixed(double x) { return {EveKind::Mixed, x}; }

    bool intercepts() const {
        return (kind == EveKind::InterceptResend || kind == EveKind::Mixed) &&
               intercept_fraction > 0.0;
    }
    bool listens_passively() const {
        return kind == EveKind::PassiveListen || kind == EveKind::Mixed;
    }
    void validate() const;
};

struct RoundRecord {
    std::uint64_t round = 0;
    int alice_ray = -1;
    int alice_trit = -1;
    bool eve_intercepted = false;
    int eve_basis = -1;
    int eve_ray = -1;        // the state Eve found and resent
    int bob_basis = -1;
    int bob_ray = -1;
    int bob_trit = -1;
    bool sifted = false;
    bool error = false;
    bool eve_correct = false;      // intercepted and found exactly Alice's ray
    bool eve_point_mass = false;   // posterior after the round is a point mass
    double eve_posterior_entropy = 1.0;  // protocol units; 1 when Eve learned nothing
};

/// Aggregate of one session. Two sessions with equal (protocol, strategy,
/// rounds, seed) are bit-for-bit identical, independent of thread count:
/// rounds are processed in fixed chunks, each chunk accumulates serially,
/// and chunk partials merge in index order.
struct SessionStats {
    std::uint64_t rounds_sent = 0;
    std::uint64_t rounds_sifted = 0;
    std::uint64_t bob_symbol_errors = 0;
    std::uint64_t eve_intercepts = 0;
    std::uint64_t eve_exact_knowledge = 0;      // sifted rounds with point-mass posterior
    double eve_posterior_entropy_sum = 0.0;     // over sifted rounds, protocol units
    double eve_posterior_entropy_sq_sum = 0.0;
    std::uint64_t rng_seed = 0;

    bool operator==(const SessionStats&) const = default;

    double empirical_error_rate() const {
        return rounds_sifted ? static_cast<double>(bob_symbol_errors) / rounds_sifted : 0.0;
    }
    /// 1 - mean posterior entropy over sifted rounds.
    double empirical_eve_info() const {
        return rounds_sifted ? 1.0 - eve_posterior_entropy_sum / rounds_sifted : 0.0;
    }
    double empirical_sift_rate() const {
        return rounds_sent ? static_cast<double>(rounds_sifted) / rounds_sent : 0.0;
    }
};

/// Projective measurement of a ray onto one of the set's bases: outcome
/// position drawn with the exact overlap probabilities (converted to float
/// only inside the sampler). Returns (position, collapsed ray).
std::pair<int, int> measure(const StateSet& s, int state_ray, int basis_index, CounterRng& rng);

/// Component-level variant for explicitly given vectors.
int measure(const StateVector& state, const std::vector<StateVector>& basis, CounterRng& rng);

/// Eve's exact Bayes posterior over the members of the announced basis,
/// given her measurement collapsed onto result_ray: priors are uniform over
/// the pool members, non-pool members carry probability zero. Entries align
/// with the basis's member list and sum to exactly 1.
std::vector<Rational> eve_posterior(const Protocol& p, int result_ray, int basis_index);

/// One protocol round, reproducible from (seed, round_index) alone.
RoundRecord run_round(const Protocol& p, const EveStrategy& eve, std::uint64_t seed,
                      std::uint64_t round_index);

/// Number of workers the parallel runner would use (QKD3_THREADS env var
/// overrides the OpenMP default). Purely a throughput hint.
int resolve_threads();

SessionStats run_session(const Protocol& p, const EveStrategy& eve, std::uint64_t rounds,
                         std::uint64_t seed);
SessionStats run_session(const Protocol& p, const EveStrategy& eve, std::uint64_t rounds,
                         std::uint64_t seed, int n_threads);

/// Serial reference implementation; identical output to run_session.
SessionStats run_session_serial(const Protocol& p, const EveStrategy& eve, std::uint64_t rounds,
                                std::uint64_t seed);

/// Session with the full per-round trace (for key extraction and dumps).
std::pair<SessionStats, std::vector<RoundRecord>> run_session_traced(
    const Protocol& p, const EveStrategy& eve, std::uint64_t rounds, std::uint64_t seed);

/// Alice's and Bob's symbol strings over the sifted rounds, in order.
std::pair<std::string, std::string> sifted_key(const std::vector<RoundRecord>& records);

}  // namespace qkd3
