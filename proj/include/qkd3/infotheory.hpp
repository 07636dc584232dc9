#pragma once

#include <string>
#include <vector>

#include "qkd3/protocol.hpp"

namespace qkd3 {

/// Bob's mutual information with Alice given his symbol error rate, in the
/// protocol's own unit (bits for dimension 2, trits for dimension 3). The
/// error mass splits evenly over the wrong symbols; 0*log 0 counts as 0.
/// Throws std::domain_error outside [0,1].
double bob_info(double e_b, int dimension);

/// Intercept-resend on mutually unbiased bases, closed form: Eve learns a
/// full symbol iff she guessed the basis (1/n_bases), a wrong basis tells
/// her nothing and randomizes Bob's outcome completely.
struct MubMetrics {
    Rational i_eve;   // 1 / n_bases
    Rational e_bob;   // (1 - 1/n_bases) (1 - 1/dimension)
};
MubMetrics mub_ire_metrics(int dimension, int n_bases);

/// Exact probability that Bob's symbol survives an intercept-resend attack,
/// averaged uniformly over Alice's pool and Eve's bases:
///
///   C = sum_{j in pool} sum_mu M_mu P(mu,j)^2 / (|pool| * B)
///
/// where M_mu counts the bases containing ray mu (Eve reaches mu once per
/// containing basis) and the inner P is squared because the same overlap
/// governs Eve's collapse and Bob's re-measurement. E_B = 1 - C.
Rational bob_correct_prob(const StateSet& s, const std::vector<int>& alice_pool);

/// Eve's information gain from intercept-resend, in protocol units:
///
///   I_E = 1 + sum_{j in pool} sum_mu M_j M_mu P(mu,j) log_d P(mu,j) / (d B^2)
///
/// For fully pooled sets this is exactly the Bayes-posterior entropy
/// average (priors 1/d per announced-basis member, q_mu = 1/d, posterior
/// Q = P); restricting j to a smaller pool restricts the entropy sum to the
/// announced basis's pool members while keeping the 1/(d B^2) weights.
/// Equal-probability terms are aggregated exactly before the single float
/// evaluation. Cross-validated against tuple enumeration in the test suite.
double eve_info_ire(const StateSet& s, const std::vector<int>& alice_pool);

/// Information from passive listening alone (12-vector pool): announcing an
/// incomplete basis eliminates one of the three symbols.
double passive_info();         // (9/13) * (1 - log_3 2)
double passive_event_gain();   // 1 - log_3 2

/// Smallest intercepted fraction at which Eve knows as much as Bob:
/// solves x*i_eve + (1-x)*passive_floor = bob_info(x*e_bob) by bisection
/// (function-value residual below 1e-12; the gap is checked to be monotone
/// on a grid first). Throws std::runtime_error when there is no sign change
/// on (0,1].
double breakeven_x(double i_eve_active, double e_bob, int dimension,
                   double passive_floor = 0.0);

struct MetricsRow {
    std::string protocol;
    std::string unit;
    double i_eve = 0.0;
    double i_bob = 0.0;
    double e_bob = 0.0;
    double x_breakeven = 0.0;
};

MetricsRow metrics_row(const Protocol& p);

/// All five protocols, computed from their state geometry.
std::vector<MetricsRow> metrics_table();

struct SweepPoint {
    double x = 0.0;
    double i_eve = 0.0;
    double i_bob = 0.0;
};

struct SweepSeries {
    std::string protocol;
    std::string unit;
    double x_breakeven = 0.0;
    std::vector<SweepPoint> points;
};

/// Mutual informations on a uniform grid of intercepted fractions,
/// endpoints included: (passive floor, 1) at x=0, the metrics-row values
/// at x=1. n_points must be >= 2.
SweepSeries sweep(const Protocol& p, int n_points);

/// Expected per-round information gain of the *simulated* Eve (realized
/// Bayes posterior, sifted ensemble of the Monte Carlo sampler). This is
/// the honest convergence target for SessionStats::empirical_eve_info; for
/// the multi-membership pools it differs from the normative eve_info_ire
/// average, which weights announced-basis members rather than Alice's
/// sends. Both are reported side by side by the CLI.
double eve_info_sim_expectation(const Protocol& p);

/// Same, for the passive-listening part (non-intercepted sifted rounds).
double passive_info_sim_expectation(const Protocol& p);

/// Analytic targets for a session under the given strategy.
struct SessionTargets {
    double sift_rate = 0.0;
    double error_rate = 0.0;
    double eve_info = 0.0;
};
SessionTargets session_targets(const Protocol& p, const EveStrategy& eve);

}  // namespace qkd3
