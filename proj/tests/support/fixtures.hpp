#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "swlp/boundary.hpp"
#include "swlp/mesh_state.hpp"

namespace swlp_test {

inline swlp::Grid1D make_grid(std::size_t n, double x_min = 0.0, double x_max = 1.0,
                              std::function<double(double)> z = {}) {
    return swlp::sample_topography({x_min, x_max, n}, z ? z : [](double) { return 0.0; });
}

inline swlp::FlowState uniform_state(std::size_t n, double h, double u) {
    return {std::vector<double>(n, h), std::vector<double>(n, h * u)};
}

inline swlp::FlowState lake_state(const swlp::Grid1D& grid, double level) {
    swlp::FlowState s;
    for (double z : grid.z) {
        s.h.push_back(level - z);
        s.hu.push_back(0.0);
    }
    return s;
}

/// Random smooth-ish state with h in [h_lo, h_hi] and u in [-u_max, u_max].
inline swlp::FlowState random_state(std::mt19937_64& rng, std::size_t n, double h_lo, double h_hi, double u_max) {
    std::uniform_real_distribution<double> H(h_lo, h_hi), U(-u_max, u_max);
    swlp::FlowState s;
    for (std::size_t j = 0; j < n; ++j) {
        const double h = H(rng);
        s.h.push_back(h);
        s.hu.push_back(h * U(rng));
    }
    return s;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace swlp_test
