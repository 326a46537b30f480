#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "discrep/matrix.hpp"
#include "discrep/rng.hpp"

namespace discrep {

enum class GeneratorKind { Uniform, Corner2D, Halfspace2D };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Uniform;
    int rows = 1;
    int cols = 1;
    uint64_t seed = 0;
};

struct Point {
    double x, y;
};

/// A halfspace bounded by the line through a and b; `above` selects the side.
/// Points exactly on the line count as inside the "above" halfspace.
struct Halfspace {
    Point a, b;
    bool above;

    bool contains(const Point& p) const;
};

/// Entries i.i.d. uniform in {-1, +1}. Draw order: row-major, one sign bit each.
DenseMatrix gen_uniform(int m, int n, Rng& rng);

/// Dominance incidences of m query points over n base points, all uniform in
/// the unit square. Entry (i, j) = 1 iff q_i.x > p_j.x and q_i.y > p_j.y.
/// Draw order: the n base points first (x then y each), then the m queries.
DenseMatrix gen_corner(int m, int n, Rng& rng);
DenseMatrix corner_incidence(const std::vector<Point>& base, const std::vector<Point>& queries);

/// Halfspace incidences over n uniform points. Each halfspace draws: one bit
/// choosing a's edge (0 = left x=0, 1 = top y=1), a's position, one bit for
/// b's edge (0 = right x=1, 1 = bottom y=0), b's position, one bit for the
/// side (0 = above, 1 = below).
DenseMatrix gen_halfspace(int m, int n, Rng& rng);
DenseMatrix halfspace_incidence(const std::vector<Point>& points,
                                const std::vector<Halfspace>& halfspaces);

DenseMatrix generate(const GeneratorSpec& spec);

/// CSV: comma-separated decimal values, one row per line, no header, LF
/// endings. Values print with 17 significant digits, so a round trip is
/// bit exact.
void write_matrix_csv(const DenseMatrix& a, const std::string& path);
DenseMatrix read_matrix_csv(const std::string& path);

}  // namespace discrep
