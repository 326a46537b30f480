#pragma once

#include <functional>
#include <span>
#include <vector>

#include "discrep/coloring.hpp"
#include "discrep/matrix.hpp"
#include "discrep/rng.hpp"

namespace discrep {

/// A constrained Gaussian walk inside [-1,1]^n: row constraints
/// |<X - x0, v_j>| <= c_j and variable constraints |X_i| <= 1. Once a
/// constraint comes within delta of its boundary its normal joins a forbidden
/// subspace and the walk stays orthogonal to it.
struct EdgeWalkProblem {
    std::vector<std::vector<double>> rows;  // constraint normals v_j
    std::vector<double> thresholds;         // c_j > 0
    std::vector<double> x0;                 // start, in [-1,1]^n
    double delta = 0.1;
    double gamma_step = 0.0;  // must satisfy 0 < gamma_step <= delta / 10
    long iterations = 0;      // T

    /// delta / (10 sqrt(ln(n m) + 1)); the generic default step size.
    static double default_gamma(int n, int m, double delta);

    void validate() const;
};

struct EdgeWalkOutcome {
    std::vector<double> x;
    std::vector<int> hit_vars;  // i with |X_i| >= 1 - delta
    std::vector<int> hit_rows;  // j with |<X - x0, v_j>| >= c_j - delta
    bool failed = false;        // |hit_rows| reached n
    long steps_taken = 0;
};

/// Runs the walk for up to T iterations (stopping early once the forbidden
/// subspace spans all of R^n, at which point X provably cannot move).
/// Per-iteration work is O(mn + n^2); at most 2n basis insertions total.
/// The optional observer sees (iteration, X) after every step.
EdgeWalkOutcome edge_walk(const EdgeWalkProblem& problem, Rng& rng,
                          const std::function<void(long, std::span<const double>)>& observer = {});

struct SpencerRound {
    int free_before = 0;
    int newly_banded = 0;
    int attempts = 0;
};

struct SpencerStats {
    std::vector<SpencerRound> rounds;
};

/// Low L-infinity discrepancy coloring for m x n matrices with entries
/// bounded by 1 and m >= n: repeated edge walks against the row budget
/// c * sqrt(n * ln(e m / n)). Rounds share that budget (each round's
/// thresholds are the remainder left by the current coloring), so the final
/// point satisfies |<x, row_j>| <= c * sqrt(n * ln(e m / n)) for every row.
/// Returns a partial coloring whose coordinates all lie within delta of +-1.
/// Each round retries failed walks up to 16 times, then throws RoundFailed.
PartialColoring spencer_driver(const DenseMatrix& a, Rng& rng, double c = 8.0,
                               SpencerStats* stats = nullptr);

}  // namespace discrep
