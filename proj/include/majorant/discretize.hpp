#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace majorant {

class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class QuadratureRule { trapezoid, simpson };

std::string to_string(QuadratureRule rule);
QuadratureRule parse_quadrature_rule(const std::string& name);

/// Uniform quadrature grid on [a, b].
class Grid {
public:
    /// Simpson needs an odd node count >= 3; trapezoid any count >= 2.
    Grid(double a, double b, std::size_t n, QuadratureRule rule = QuadratureRule::simpson);

    [[nodiscard]] double lower() const { return a_; }
    [[nodiscard]] double upper() const { return b_; }
    [[nodiscard]] double length() const { return b_ - a_; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] QuadratureRule rule() const { return rule_; }
    [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const { return weights_; }

    [[nodiscard]] bool operator==(const Grid& other) const;

    /// Samples `f` at every node.
    [[nodiscard]] std::vector<double> sample(const std::function<double(double)>& f) const;

private:
    double a_;
    double b_;
    QuadratureRule rule_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Values z(t_i, s_l) on a product grid, row-major in t.
class KernelTable {
public:
    KernelTable(Grid rows, Grid cols, std::vector<double> values);

    static KernelTable sample(const Grid& rows, const Grid& cols, const std::function<double(double, double)>& z);

    [[nodiscard]] const Grid& rows() const { return rows_; }
    [[nodiscard]] const Grid& cols() const { return cols_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t l) const { return values_[i * cols_.size() + l]; }
    [[nodiscard]] std::span<const double> values() const { return values_; }

    /// Bilinear interpolation at an arbitrary point of [a,b] x [c,d].
    [[nodiscard]] double interpolate(double t, double s) const;

private:
    Grid rows_;
    Grid cols_;
    std::vector<double> values_;
};

/// Options for reading a kernel table from CSV.
///
/// Two layouts are accepted:
///   - triples: a header line `t,s,value` followed by one row per node
///     pair; the node sets must form a full uniform product grid;
///   - dense: n rows of n comma-separated numbers, row i holding z(t_i, .)
///     on the uniform grid over `interval_lower`..`interval_upper`.
struct KernelCsvOptions {
    QuadratureRule rule = QuadratureRule::simpson;
    double interval_lower = 0.0;
    double interval_upper = 1.0;
};

KernelTable load_kernel_csv(std::istream& in, const KernelCsvOptions& options = {});

/// sum_l w_l f_l.
double quadrature_integrate(const Grid& grid, std::span<const double> samples);

inline constexpr double kSupNorm = std::numeric_limits<double>::infinity();

/// Discrete L_p norm; p = kSupNorm gives the max norm.
double lp_norm(const Grid& grid, std::span<const double> samples, double p);

struct ZaanenEstimate {
    double value = 0.0;
    /// Objective after each half-sweep (x-update, then y-update).
    std::vector<double> history;
};

/// Lower bound for the Zaanen norm
///   sup { sum_i sum_l w_i w_l |z_il| x_l y_i : ||x||_alpha <= 1, ||y||_beta <= 1 }
/// by alternating maximisation, starting from a constant y.
ZaanenEstimate zaanen_norm_estimate_detailed(const KernelTable& kernel, double alpha, double beta,
                                             std::size_t iters = 50);

double zaanen_norm_estimate(const KernelTable& kernel, double alpha, double beta, std::size_t iters = 50);

}  // namespace majorant
