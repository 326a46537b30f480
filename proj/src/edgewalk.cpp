#include "discrep/edgewalk.hpp"

#include <algorithm>
#include <cmath>

#include "discrep/basis.hpp"
#include "discrep/kernels.hpp"

namespace discrep {

double EdgeWalkProblem::default_gamma(int n, int m, double delta) {
    const double cross = std::max(1.0, static_cast<double>(n) * std::max(1, m));
    return delta / (10.0 * std::sqrt(std::log(cross) + 1.0));
}

void EdgeWalkProblem::validate() const {
    const int n = static_cast<int>(x0.size());
    if (n < 1) throw DimensionMismatch("edge walk needs at least one variable");
    if (rows.size() != thresholds.size())
        throw DimensionMismatch("one threshold per constraint row required");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n) throw DimensionMismatch("row normal of wrong length");
    for (double c : thresholds)
        if (!(c > 0.0)) throw Error("thresholds must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0, 1)");
    if (!(gamma_step > 0.0 && gamma_step <= delta / 10.0 + 1e-15))
        throw Error("gamma_step must lie in (0, delta/10]");
    for (double v : x0)
        if (!(std::fabs(v) <= 1.0)) throw Error("x0 must lie in [-1, 1]^n");
    if (iterations < 0) throw Error("iteration count must be nonnegative");
}

EdgeWalkOutcome edge_walk(const EdgeWalkProblem& problem, Rng& rng,
                          const std::function<void(long, std::span<const double>)>& observer) {
    problem.validate();
    const int n = static_cast<int>(problem.x0.size());
    const int m = static_cast<int>(problem.rows.size());

    // Pack row normals for the per-iteration inner products.
    std::vector<double> rows_flat;
    rows_flat.reserve(static_cast<size_t>(m) * n);
    for (const auto& r : problem.rows) rows_flat.insert(rows_flat.end(), r.begin(), r.end());

    std::vector<double> x = problem.x0;
    OrthonormalBasis basis(n);
    std::vector<char> var_hit(n, 0), row_hit(m, 0);
    EdgeWalkOutcome out;

    std::vector<double> diff(n), dots(m), y(n);
    long step = 0;
    for (; step < problem.iterations; ++step) {
        // Newly nearly-hit constraints never leave the forbidden set.
        for (int i = 0; i < n; ++i) {
            if (!var_hit[i] && std::fabs(x[i]) >= 1.0 - problem.delta) {
                var_hit[i] = 1;
                out.hit_vars.push_back(i);
                std::fill(y.begin(), y.end(), 0.0);
                y[i] = 1.0;
                basis.add(y);
            }
        }
        if (m > 0) {
            for (int i = 0; i < n; ++i) diff[i] = x[i] - problem.x0[i];
            kernels::row_dots(rows_flat, m, n, diff, dots);
            for (int j = 0; j < m; ++j) {
                if (!row_hit[j] && std::fabs(dots[j]) >= problem.thresholds[j] - problem.delta) {
                    row_hit[j] = 1;
                    out.hit_rows.push_back(j);
                    basis.add(problem.rows[j]);
                }
            }
        }
        if (static_cast<int>(out.hit_rows.size()) >= n) {
            out.failed = true;
            break;
        }
        if (basis.size() == n) break;  // complement is {0}: X cannot move again

        for (double& g : y) g = rng.next_gaussian();
        std::vector<double> u = basis.project_complement(y);
        for (int i : out.hit_vars) u[i] = 0.0;  // hit coordinates stay put, exactly
        for (int i = 0; i < n; ++i) {
            x[i] += problem.gamma_step * u[i];
            if (x[i] > 1.0) x[i] = 1.0;
            if (x[i] < -1.0) x[i] = -1.0;
        }
        if (observer) observer(step + 1, x);
    }

    out.x = std::move(x);
    out.steps_taken = step;
    return out;
}

PartialColoring spencer_driver(const DenseMatrix& a, Rng& rng, double c, SpencerStats* stats) {
    const int m = a.rows(), n = a.cols();
    if (m < n) throw Error("spencer_driver requires m >= n");
    for (double v : a.data())
        if (std::fabs(v) > 1.0) throw Error("spencer_driver requires entries bounded by 1");

    const double budget = c * std::sqrt(n * std::log(std::exp(1.0) * m / n));

    // Unit-norm row normals; zero rows impose nothing.
    std::vector<std::vector<double>> normals;
    std::vector<double> full_thresholds;
    for (int i = 0; i < m; ++i) {
        const auto row = a.row(i);
        const double norm = kernels::norm2(row);
        if (norm == 0.0) continue;
        std::vector<double> v(row.begin(), row.end());
        for (double& e : v) e /= norm;
        normals.push_back(std::move(v));
        full_thresholds.push_back(budget / norm);
    }

    const double delta = 0.1;
    const double gamma = delta / 10.0;
    const long iterations = static_cast<long>(std::ceil(8.0 / (gamma * gamma)));

    std::vector<double> x(n, 0.0);
    auto banded = [&](double v) { return std::fabs(v) >= 1.0 - delta; };

    while (true) {
        int free_before = 0;
        for (double v : x)
            if (!banded(v)) ++free_before;
        if (free_before == 0) break;

        // Remaining per-row budget given the coloring accumulated so far.
        EdgeWalkProblem problem;
        problem.rows = normals;
        problem.x0 = x;
        problem.delta = delta;
        problem.gamma_step = gamma;
        problem.iterations = iterations;
        problem.thresholds.resize(normals.size());
        for (size_t j = 0; j < normals.size(); ++j) {
            const double used = std::fabs(kernels::dot(normals[j], x));
            problem.thresholds[j] = std::max(full_thresholds[j] - used, 1e-9);
        }

        bool accepted = false;
        int attempts = 0;
        for (; attempts < 16; ++attempts) {
            const EdgeWalkOutcome out = edge_walk(problem, rng);
            if (out.failed) continue;
            int newly = 0;
            for (int i = 0; i < n; ++i)
                if (!banded(x[i]) && banded(out.x[i])) ++newly;
            if (newly * 2 < free_before) continue;  // too few froze; try again
            if (stats) stats->rounds.push_back({free_before, newly, attempts + 1});
            x = out.x;
            accepted = true;
            break;
        }
        if (!accepted) throw RoundFailed("spencer_driver: 16 failed walks in one round");
    }

    return PartialColoring::from_vector(std::move(x));
}

}  // namespace discrep
