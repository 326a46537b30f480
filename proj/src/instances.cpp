#include "discrep/instances.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace discrep {

bool Halfspace::contains(const Point& p) const {
    const double dx = b.x - a.x;
    const double cross = dx * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    bool point_above;
    if (dx > 0.0)
        point_above = cross >= 0.0;
    else if (dx < 0.0)
        point_above = cross <= 0.0;
    else
        point_above = p.x <= a.x;  // vertical line; fixed arbitrarily for determinism
    return point_above == above;
}

DenseMatrix gen_uniform(int m, int n, Rng& rng) {
    DenseMatrix a(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.next_sign();
    return a;
}

DenseMatrix corner_incidence(const std::vector<Point>& base, const std::vector<Point>& queries) {
    DenseMatrix a(static_cast<int>(queries.size()), static_cast<int>(base.size()));
    for (size_t i = 0; i < queries.size(); ++i)
        for (size_t j = 0; j < base.size(); ++j)
            a(static_cast<int>(i), static_cast<int>(j)) =
                (queries[i].x > base[j].x && queries[i].y > base[j].y) ? 1.0 : 0.0;
    return a;
}

DenseMatrix gen_corner(int m, int n, Rng& rng) {
    std::vector<Point> base(n), queries(m);
    for (auto& p : base) {
        p.x = rng.next_double();
        p.y = rng.next_double();
    }
    for (auto& q : queries) {
        q.x = rng.next_double();
        q.y = rng.next_double();
    }
    return corner_incidence(base, queries);
}

DenseMatrix halfspace_incidence(const std::vector<Point>& points,
                                const std::vector<Halfspace>& halfspaces) {
    DenseMatrix a(static_cast<int>(halfspaces.size()), static_cast<int>(points.size()));
    for (size_t i = 0; i < halfspaces.size(); ++i)
        for (size_t j = 0; j < points.size(); ++j)
            a(static_cast<int>(i), static_cast<int>(j)) = halfspaces[i].contains(points[j]) ? 1.0 : 0.0;
    return a;
}

DenseMatrix gen_halfspace(int m, int n, Rng& rng) {
    std::vector<Point> points(n);
    for (auto& p : points) {
        p.x = rng.next_double();
        p.y = rng.next_double();
    }
    std::vector<Halfspace> spaces(m);
    for (auto& h : spaces) {
        if (rng.next_bool())
            h.a = {rng.next_double(), 1.0};  // top edge
        else
            h.a = {0.0, rng.next_double()};  // left edge
        if (rng.next_bool())
            h.b = {rng.next_double(), 0.0};  // bottom edge
        else
            h.b = {1.0, rng.next_double()};  // right edge
        h.above = !rng.next_bool();
    }
    return halfspace_incidence(points, spaces);
}

DenseMatrix generate(const GeneratorSpec& spec) {
    Rng rng(spec.seed);
    switch (spec.kind) {
        case GeneratorKind::Uniform:
            return gen_uniform(spec.rows, spec.cols, rng);
        case GeneratorKind::Corner2D:
            return gen_corner(spec.rows, spec.cols, rng);
        case GeneratorKind::Halfspace2D:
            return gen_halfspace(spec.rows, spec.cols, rng);
    }
    throw Error("unknown generator kind");
}

void write_matrix_csv(const DenseMatrix& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    char buf[40];
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
            if (j) out.put(',');
            out << buf;
        }
        out.put('\n');
    }
    if (!out) throw IoError("write failed: " + path);
}

DenseMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);

    std::vector<double> entries;
    long cols = -1;
    long row = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
        ++row;
        long col = 0;
        const char* p = line.data();
        const char* end = p + line.size();
        while (true) {
            ++col;
            const char* comma = p;
            while (comma < end && *comma != ',') ++comma;
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(p, comma, value);
            if (ec != std::errc() || ptr != comma)
                throw ParseError("bad number in CSV", row, col);
            entries.push_back(value);
            if (comma == end) break;
            p = comma + 1;
        }
        if (cols < 0)
            cols = col;
        else if (col != cols)
            throw RaggedRows("CSV rows have differing lengths", row);
    }
    if (row == 0) throw ParseError("CSV file is empty", 0, 0);
    return DenseMatrix(static_cast<int>(row), static_cast<int>(cols), std::move(entries));
}

}  // namespace discrep
