#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "marketgame/engine.hpp"
#include "marketgame/payoffs.hpp"
#include "marketgame/simplex.hpp"

namespace marketgame {

/// Worst-case expected log growth of the relative performance of a strategy held
/// at L2 distance >= `separation` from lambda*:
///   f(a) = sup { E ln sum_n lambda^n R_1^n / lambda*^n : lambda in simplex, ||lambda - lambda*|| >= a }.
/// Negative for every feasible a > 0 under linear independence; `value` is the
/// sentinel -1 with feasible = false when no simplex point is that far away.
struct FofA {
    double separation = 0.0;
    double value = -1.0;
    bool feasible = false;
    std::optional<SimplexVector> argmax;
    double saa_std_error = 0.0; // 0 when the expectation is an exact finite sum
    int multistarts = 0;
    std::size_t saa_samples = 0;
    long evaluations = 0;
};

struct ComputeFOptions {
    std::size_t saa_samples = 200000; // frozen common-random-numbers sample (dirichlet only)
    int multistarts = 32;
    int max_iterations = 500;
    double tolerance = 1e-10;
    std::uint64_t seed = 7771;
};

/// Maximize the concave objective over the simplex minus an open ball around
/// lambda*. The optimum lies on the sphere ||lambda - lambda*|| = a intersected
/// with the simplex (moving any feasible point toward lambda* cannot decrease a
/// concave objective), so the search runs on that cap, facets included via
/// projection. Throws LinearDependence when the payoff support is degenerate.
FofA compute_f(const RelativePayoffSpec& relative, double separation,
               const ComputeFOptions& options = {});

/// 1 - (|f(a)| ^ theta) / theta, the asymptotic crossing-time ratio bound.
double theorem2_rhs(const FofA& f, double theta);

/// Wald lower bound on the expected crossing time of any investor.
double lower_tau(double level, double total_initial_wealth, double theta);

/// Upper bound on the expected crossing time of the lambda*-investor: the larger
/// root of theta x - 2 sigma sqrt(x) = ln(level) + theta - ln(Y0 delta epsilon).
double upper_tau(double level, double investor_initial_wealth, double theta, double sigma,
                 double delta, double epsilon);

/// Bound bundle for one game: exact constants plus the crossing-time sandwich.
struct TheoremBounds {
    double theta = 0.0;
    double sigma = 0.0;
    double epsilon = 0.0;
    double delta = 0.0; // epsilon^2 / 256
    double theorem2_rhs_value = 1.0;
    double total_initial_wealth = 0.0;
    double investor_initial_wealth = 0.0;

    double lower(double level) const { return lower_tau(level, total_initial_wealth, theta); }
    double upper(double level) const {
        return upper_tau(level, investor_initial_wealth, theta, sigma, delta, epsilon);
    }
};

TheoremBounds make_theorem_bounds(const GameConfig& config, const std::optional<FofA>& f = {});

/// L2 distance of an investor's constant proportions from lambda*, when the
/// strategy is constant; nullopt for history-dependent rules.
std::optional<double> opponent_separation(const GameConfig& config, std::size_t investor);

/// A sampled market state for conditional-drift tests: the lambda*-investor's
/// share, its realized proportions and the (representative) opponent proportions.
struct DriftState {
    double share = 0.0;            // r_{t-1}
    std::vector<double> lambda;    // investor-1 proportions (on the simplex)
    std::vector<double> opponent;  // opponent proportions; may carry |.| != 1 in
                                   // modified-sequence diagnostics
};

struct DriftEstimate {
    DriftState state;
    double drift = 0.0;        // E[ln(r_t/r_{t-1}) | state], inner Monte Carlo
    double drift_se = 0.0;
    double opponent_drift = 0.0; // same for ln of the opponent share
    double opponent_se = 0.0;
    double lemma1_bound = 0.0; // 1/4 ||lambda - beta/|beta|||^2 - ln|beta|
};

/// Harvest states from simulated paths of the config (two-investor games also get
/// a deterministic spread of initial shares so the sample is not concentrated
/// where everything has converged).
std::vector<DriftState> harvest_drift_states(const GameConfig& config, std::size_t count,
                                             std::uint64_t seed, long max_time = 30,
                                             bool vary_initial_share = true);

/// Fresh-draw conditional drift estimates at the given states. Valid because R_t
/// is independent of the past under the i.i.d. assumption.
std::vector<DriftEstimate> drift_test(const RelativePayoffSpec& relative,
                                      const std::vector<DriftState>& states,
                                      std::size_t inner_samples, std::uint64_t seed);

/// Exact conditional drift at one state (finite-sum payoff specs only).
double exact_drift(const RelativePayoffSpec& relative, const DriftState& state);

/// Inputs for the modified-share recursion: per-step realized proportions of both
/// sides and the relative payoff draws of one two-investor path.
struct SharePathInputs {
    double initial_share = 0.5;
    std::vector<SimplexVector> lambda;
    std::vector<SimplexVector> opponent;
    std::vector<SimplexVector> payoffs;
};

struct ModifiedShareStep {
    double original_share = 0.0; // r_t
    double modified_share = 0.0; // r'_t
    bool fired = false;          // opponent proportions adjusted this step
    double beta_l1 = 1.0;        // |beta'_t|
};

/// The auxiliary share sequence r' with the opponent nudged by delta lambda
/// whenever its smallest proportion dips to epsilon/2 while r' <= 1/2
/// (delta = epsilon^2/256). Verifies r'_t <= r_t and r'_t <= r'_{t-1}/(delta
/// epsilon) at every step.
std::vector<ModifiedShareStep> modified_share_path(const SharePathInputs& inputs, double epsilon);

struct Lemma1Sides {
    double lhs; // sum x^n (ln x^n - ln y^n)
    double rhs; // 1/4 ||x - y/|y|||^2 - ln|y|
};

/// Both sides of the Gibbs-type inequality for positive vectors (x on the simplex).
Lemma1Sides lemma1_check(const SimplexVector& x, std::span<const double> y);

/// Stop at the first step whose log growth factor reaches the threshold.
struct ThresholdStoppingRule {
    double threshold = 0.0;
    long max_time = 100000;
};

struct Lemma2Result {
    double mc_stopped_mean = 0.0; // Monte Carlo E[ln rho_tau]
    double mc_stopped_se = 0.0;
    double mc_tau_mean = 0.0;
    double mc_bound = 0.0; // mu + 2 sigma sqrt(MC E tau)
    bool has_exact = false;
    double exact_stopped = 0.0; // geometric-law closed form (finite support)
    double exact_tau = 0.0;
    double exact_bound = 0.0;
    std::size_t paths = 0;
    std::size_t censored = 0;
};

/// Stopped-variable bound E X_tau <= mu + 2 sigma sqrt(E tau), checked by Monte
/// Carlo and, for finite-support growth, against the geometric closed form.
Lemma2Result lemma2_check(const GrowthSpec& growth, const ThresholdStoppingRule& rule,
                          std::size_t paths, std::uint64_t seed);

struct SurvivalPathStats {
    double min_share = 1.0;          // min_t r_t of the lambda*-investor
    double compensator_final = 0.0;  // C_T
    double sum_sq_rest_share = 0.0;  // sum_t (1 - r_{t-1})^2
    std::vector<long> eta;           // eta_c per grid entry: #{t : r_t < c}
    bool compensator_monotone = true;
};

struct MartingaleReport {
    std::vector<double> c_grid;
    std::vector<SurvivalPathStats> paths;
    std::optional<double> separation; // opponent distance from lambda*, when constant
    std::vector<double> compensator_mean; // mean C_t over paths, t = 1..steps
    std::vector<double> drift_by_time;    // mean exact increment at each step
    std::vector<double> drift_se_by_time; // cross-path standard error of the increment
};

struct SurvivalOptions {
    std::size_t paths = 1000;
    long steps = 1000;
    std::uint64_t seed = 0;
    std::vector<double> c_grid = {0.1, 0.25, 0.5};
};

/// Per-path survival statistics of the lambda*-investor: minimum share, exact
/// compensator of ln r_t, the summed squared opponent share it dominates, and
/// below-c counts. Requires investor 1 to play lambda* and a finite-support
/// payoff spec (the compensator uses exact conditional expectations).
MartingaleReport survival_report(const GameConfig& config, const SurvivalOptions& options);

} // namespace marketgame
