#include "majorant/discretize.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace majorant {

std::string to_string(QuadratureRule rule) { return rule == QuadratureRule::simpson ? "simpson" : "trapezoid"; }

QuadratureRule parse_quadrature_rule(const std::string& name) {
    if (name == "simpson") return QuadratureRule::simpson;
    if (name == "trapezoid") return QuadratureRule::trapezoid;
    throw GridError("unknown quadrature rule '" + name + "'");
}

Grid::Grid(double a, double b, std::size_t n, QuadratureRule rule) : a_(a), b_(b), rule_(rule) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) throw GridError("grid interval must satisfy a < b");
    if (n < 2) throw GridError("grid needs at least two nodes");
    if (rule == QuadratureRule::simpson && (n < 3 || n % 2 == 0)) {
        throw GridError("Simpson's rule needs an odd node count >= 3");
    }
    const double h = (b - a) / static_cast<double>(n - 1);
    nodes_.resize(n);
    for (std::size_t i = 0; i < n; ++i) nodes_[i] = a + h * static_cast<double>(i);
    nodes_.back() = b;

    weights_.assign(n, 0.0);
    if (rule == QuadratureRule::trapezoid) {
        std::fill(weights_.begin(), weights_.end(), h);
        weights_.front() = weights_.back() = 0.5 * h;
    } else {
        const double third = h / 3.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool end = i == 0 || i == n - 1;
            weights_[i] = end ? third : (i % 2 == 1 ? 4.0 * third : 2.0 * third);
        }
    }
    // Push the summation residue into the middle weight so that the
    // weights add up to b - a.
    for (int pass = 0; pass < 4; ++pass) {
        const double residue = (b - a) - std::accumulate(weights_.begin(), weights_.end(), 0.0);
        if (residue == 0.0) break;
        weights_[n / 2] += residue;
    }
}

bool Grid::operator==(const Grid& other) const {
    return a_ == other.a_ && b_ == other.b_ && rule_ == other.rule_ && nodes_.size() == other.nodes_.size();
}

std::vector<double> Grid::sample(const std::function<double(double)>& f) const {
    std::vector<double> out(nodes_.size());
    std::transform(nodes_.begin(), nodes_.end(), out.begin(), f);
    return out;
}

KernelTable::KernelTable(Grid rows, Grid cols, std::vector<double> values)
    : rows_(std::move(rows)), cols_(std::move(cols)), values_(std::move(values)) {
    if (values_.size() != rows_.size() * cols_.size()) throw GridError("kernel table size does not match its grids");
    for (double v : values_) {
        if (!std::isfinite(v)) throw GridError("kernel table contains a non-finite value");
    }
}

KernelTable KernelTable::sample(const Grid& rows, const Grid& cols, const std::function<double(double, double)>& z) {
    std::vector<double> values;
    values.reserve(rows.size() * cols.size());
    for (double t : rows.nodes()) {
        for (double s : cols.nodes()) values.push_back(z(t, s));
    }
    return KernelTable(rows, cols, std::move(values));
}

namespace {

// Index j and fraction theta with x = nodes[j] + theta * (nodes[j+1] - nodes[j]).
std::pair<std::size_t, double> locate(const Grid& g, double x) {
    if (x < g.lower() || x > g.upper()) throw GridError("interpolation point outside the kernel grid");
    const auto nodes = g.nodes();
    const double h = g.length() / static_cast<double>(nodes.size() - 1);
    auto j = static_cast<std::size_t>(std::floor((x - g.lower()) / h));
    j = std::min(j, nodes.size() - 2);
    return {j, (x - nodes[j]) / (nodes[j + 1] - nodes[j])};
}

std::vector<double> parse_row(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            throw GridError("kernel CSV: cannot parse '" + cell + "'");
        }
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
            throw GridError("kernel CSV: cannot parse '" + cell + "'");
        }
        out.push_back(v);
    }
    return out;
}

bool is_blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

Grid grid_from_nodes(const std::vector<double>& nodes, QuadratureRule rule) {
    Grid g(nodes.front(), nodes.back(), nodes.size(), rule);
    const double h = g.length() / static_cast<double>(nodes.size() - 1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (std::abs(nodes[i] - g.nodes()[i]) > 1e-9 * std::max(1.0, h)) {
            throw GridError("kernel CSV: nodes are not uniformly spaced");
        }
    }
    return g;
}

}  // namespace

double KernelTable::interpolate(double t, double s) const {
    const auto [i, u] = locate(rows_, t);
    const auto [l, v] = locate(cols_, s);
    const double z00 = (*this)(i, l);
    const double z01 = (*this)(i, l + 1);
    const double z10 = (*this)(i + 1, l);
    const double z11 = (*this)(i + 1, l + 1);
    return (1 - u) * ((1 - v) * z00 + v * z01) + u * ((1 - v) * z10 + v * z11);
}

KernelTable load_kernel_csv(std::istream& in, const KernelCsvOptions& options) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!is_blank(line)) lines.push_back(line);
    }
    if (lines.empty()) throw GridError("kernel CSV is empty");

    std::string header = lines.front();
    header.erase(std::remove_if(header.begin(), header.end(), [](char c) { return std::isspace(c) != 0; }),
                 header.end());
    if (header == "t,s,value") {
        std::map<double, std::map<double, double>> cells;
        std::vector<double> ts;
        std::vector<double> ss;
        for (std::size_t k = 1; k < lines.size(); ++k) {
            const auto row = parse_row(lines[k]);
            if (row.size() != 3) throw GridError("kernel CSV: triple rows need exactly three fields");
            if (!cells[row[0]].emplace(row[1], row[2]).second) throw GridError("kernel CSV: duplicate node pair");
            ts.push_back(row[0]);
            ss.push_back(row[1]);
        }
        auto unique_sorted = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            return v;
        };
        ts = unique_sorted(ts);
        ss = unique_sorted(ss);
        if (ts.size() < 2 || ss.size() < 2) throw GridError("kernel CSV: need at least two nodes per axis");
        std::vector<double> values;
        values.reserve(ts.size() * ss.size());
        for (double t : ts) {
            const auto& row = cells[t];
            if (row.size() != ss.size()) throw GridError("kernel CSV: triples do not fill a product grid");
            for (double s : ss) {
                const auto it = row.find(s);
                if (it == row.end()) throw GridError("kernel CSV: triples do not fill a product grid");
                values.push_back(it->second);
            }
        }
        return KernelTable(grid_from_nodes(ts, options.rule), grid_from_nodes(ss, options.rule), std::move(values));
    }

    std::vector<double> values;
    std::size_t width = 0;
    for (const auto& line : lines) {
        const auto row = parse_row(line);
        if (width == 0) width = row.size();
        if (row.size() != width) throw GridError("kernel CSV: ragged dense matrix");
        values.insert(values.end(), row.begin(), row.end());
    }
    if (width != lines.size()) throw GridError("kernel CSV: dense matrix must be square");
    Grid g(options.interval_lower, options.interval_upper, width, options.rule);
    return KernelTable(g, g, std::move(values));
}

double quadrature_integrate(const Grid& grid, std::span<const double> samples) {
    if (samples.size() != grid.size()) throw GridError("sample count does not match grid size");
    double s = 0.0;
    const auto w = grid.weights();
    for (std::size_t i = 0; i < samples.size(); ++i) s += w[i] * samples[i];
    return s;
}

double lp_norm(const Grid& grid, std::span<const double> samples, double p) {
    if (samples.size() != grid.size()) throw GridError("sample count does not match grid size");
    if (!(p >= 1.0)) throw GridError("L_p norm needs p >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : samples) m = std::max(m, std::abs(v));
        return m;
    }
    const auto w = grid.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) s += w[i] * std::pow(std::abs(samples[i]), p);
    return std::pow(s, 1.0 / p);
}

namespace {

// Hölder-extremal unit vector for the functional x -> sum w g x in L_alpha,
// returning the functional's norm ||g||_{alpha'}.
double holder_extremal(std::span<const double> w, std::span<const double> g, double alpha, std::vector<double>& x) {
    const double conj = alpha / (alpha - 1.0);
    double s = 0.0;
    for (std::size_t l = 0; l < g.size(); ++l) s += w[l] * std::pow(g[l], conj);
    const double norm = std::pow(s, 1.0 / conj);
    x.assign(g.size(), 0.0);
    if (!(norm > 0.0)) return 0.0;
    for (std::size_t l = 0; l < g.size(); ++l) x[l] = std::pow(g[l] / norm, conj - 1.0);
    return norm;
}

}  // namespace

ZaanenEstimate zaanen_norm_estimate_detailed(const KernelTable& kernel, double alpha, double beta, std::size_t iters) {
    if (!(alpha > 1.0) || !(beta > 1.0)) throw GridError("Zaanen exponents must exceed 1");
    if (iters < 1) throw GridError("Zaanen estimate needs at least one sweep");
    const auto wt = kernel.rows().weights();
    const auto ws = kernel.cols().weights();
    const std::size_t nt = kernel.rows().size();
    const std::size_t ns = kernel.cols().size();

    ZaanenEstimate est;
    std::vector<double> y(nt, std::pow(kernel.rows().length(), -1.0 / beta));
    std::vector<double> x;
    std::vector<double> g(ns);
    std::vector<double> h(nt);
    for (std::size_t sweep = 0; sweep < iters; ++sweep) {
        std::fill(g.begin(), g.end(), 0.0);
        for (std::size_t i = 0; i < nt; ++i) {
            const double wy = wt[i] * y[i];
            for (std::size_t l = 0; l < ns; ++l) g[l] += wy * std::abs(kernel(i, l));
        }
        const double after_x = holder_extremal(ws, g, alpha, x);
        est.history.push_back(after_x);
        if (after_x == 0.0) {
            est.history.push_back(0.0);
            break;
        }
        for (std::size_t i = 0; i < nt; ++i) {
            double acc = 0.0;
            for (std::size_t l = 0; l < ns; ++l) acc += ws[l] * std::abs(kernel(i, l)) * x[l];
            h[i] = acc;
        }
        est.history.push_back(holder_extremal(wt, h, beta, y));
    }
    est.value = est.history.back();
    return est;
}

double zaanen_norm_estimate(const KernelTable& kernel, double alpha, double beta, std::size_t iters) {
    return zaanen_norm_estimate_detailed(kernel, alpha, beta, iters).value;
}

}  // namespace majorant
