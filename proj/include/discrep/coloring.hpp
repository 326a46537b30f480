#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "discrep/matrix.hpp"
#include "discrep/measures.hpp"
#include "discrep/rng.hpp"

namespace discrep {

/// Partial coloring state: x in [-1,1]^n where coordinates with |x_i| < 1 are
/// live and frozen coordinates hold exactly +-1 (snapped bit-exactly).
struct PartialColoring {
    std::vector<double> x;
    std::vector<int> live;  // ascending; exactly { i : |x_i| < 1 }

    static PartialColoring zeros(int n);
    static PartialColoring from_vector(std::vector<double> values);

    void refresh_live();
};

struct PartialColorResult {
    std::vector<double> gamma;  // indexed by the call's live list
    int iterations = 0;
    int frozen_count = 0;
    double increase_bound = 0.0;  // 4 k lambda_{floor(k/4)+1} from this call's spectrum
};

/// Optional instrumentation filled by partial_color for tests.
struct PartialColorTrace {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors{1, 1};
    std::vector<std::vector<double>> step_vectors;
    std::vector<double> sigmas;
    std::vector<double> betas;
};

/// One deterministic partial-coloring pass: freezes at least half of the live
/// coordinates while staying orthogonal to the top floor(k/4) eigenvectors of
/// C^T C (C = live-column submatrix), so that
///   ||A(x + step)||^2 - ||Ax||^2 <= 4 k lambda_{floor(k/4)+1}.
/// Mutates `state` (frozen coordinates snapped to exact +-1) and advances
/// `ax_cache` by C * gamma. `ax_cache` must equal A x on entry.
PartialColorResult partial_color(const DenseMatrix& a, PartialColoring& state,
                                 std::vector<double>& ax_cache, Rng& rng,
                                 PartialColorTrace* trace = nullptr);

struct SolveStats {
    double disc2 = 0.0;
    double disc_inf = 0.0;
    double wall_time = 0.0;  // seconds
    int partial_color_calls = 0;
    long draws = 0;  // sample_many only
    std::vector<double> per_call_increase;
    std::vector<double> per_call_bound;
};

/// Full coloring by repeated partial coloring from x = 0. The returned
/// coloring satisfies disc2 = O(sqrt(lg n)) times the hereditary
/// L2-discrepancy of A; at most ceil(log2 n) + 1 partial-color calls.
std::pair<ColorVector, SolveStats> l2_minimize(const DenseMatrix& a, Rng& rng);

/// Result of one randomized partial-coloring attempt (liveness band |x| < 1-delta).
struct RandomizedPartialResult {
    std::vector<double> gamma;  // indexed by `live`
    std::vector<int> live;      // the coordinates treated as live by this call
    long iterations = 0;
    int frozen_count = 0;
};

/// Randomized partial coloring: T = ceil(160 / eps^2) steps of eps * v with v
/// Gaussian in a floor(k/4)-dimensional subspace orthogonal to the top
/// eigenvectors and to every nearly-hit coordinate direction,
/// eps = delta / sqrt(c0 * log2(k / delta)). Returns nullopt on failure
/// (expected with constant probability; callers retry). Requires k >= 4.
std::optional<RandomizedPartialResult> partial_color_randomized(const DenseMatrix& a,
                                                                const PartialColoring& state,
                                                                double delta, double c0, Rng& rng);

/// Driver for the randomized variant with delta = 1/n; rounds every
/// coordinate to the nearest of +-1 at the end (ties at 0 go to +1).
/// Throws RetryLimit after 64 consecutive failures of one call. Requires n >= 4.
std::pair<ColorVector, SolveStats> l2_minimize_randomized(const DenseMatrix& a, Rng& rng,
                                                          double c0 = 10.0);

/// Rounds each coordinate to the nearest of +-1; ties at 0 round to +1.
ColorVector round_to_coloring(std::span<const double> x);

/// Uniform random +-1 coloring.
std::pair<ColorVector, SolveStats> sample(const DenseMatrix& a, Rng& rng);

/// Repeated sampling for the given wall-clock budget, keeping the coloring
/// with the smallest disc2. Always completes at least one draw.
std::pair<ColorVector, SolveStats> sample_many(const DenseMatrix& a,
                                               std::chrono::duration<double> budget, Rng& rng);

}  // namespace discrep
