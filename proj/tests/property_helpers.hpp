#pragma once

#include <algorithm>
#include <random>

#include "majorant/iteration.hpp"

namespace majorant::testing {

/// Worst value of ||A(x+h) - Ax|| - (K(r+d) - K(r)) over random samples
/// with ||x - x0|| <= r, ||h|| <= d and r + d <= R.
inline double worst_increment_excess(const OperatorHandle& op, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss;
    const auto& profile = op.profile;
    const double big_r = profile.radius();
    const std::size_t n = op.center.size();

    auto random_with_norm = [&](double length) {
        State v(n);
        for (double& c : v) c = gauss(rng);
        const double norm = op.norm(v);
        for (double& c : v) c *= norm > 0.0 ? length / norm : 0.0;
        return v;
    };

    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples; ++k) {
        const double r = big_r * unit(rng);
        const double d = (big_r - r) * unit(rng);
        State x = random_with_norm(r * unit(rng));
        for (std::size_t i = 0; i < n; ++i) x[i] += op.center[i];
        const State h = random_with_norm(d * unit(rng));
        State xh(x);
        for (std::size_t i = 0; i < n; ++i) xh[i] += h[i];
        const double observed = op.distance(op.apply(xh), op.apply(x));
        const double bound = profile.primitive(std::min(r + d, big_r)) - profile.primitive(r);
        worst = std::max(worst, observed - bound);
    }
    return worst;
}

}  // namespace majorant::testing
