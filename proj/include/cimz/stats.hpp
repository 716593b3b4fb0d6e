#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cimz {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

// Wilson score interval; well-behaved at p-hat = 0 and 1.
inline Interval wilson_ci(long successes, long trials, double z = 1.959963984540054) {
    if (trials <= 0 || successes < 0 || successes > trials)
        throw std::invalid_argument("wilson_ci: bad counts");
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

namespace detail {
inline std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t k = i;
        while (k + 1 < n && v[idx[k + 1]] == v[idx[i]]) ++k;
        const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(k)) + 1.0;
        for (std::size_t m = i; m <= k; ++m) rank[idx[m]] = avg;
        i = k + 1;
    }
    return rank;
}
} // namespace detail

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("spearman: need two equal-length series, n >= 2");
    const auto rx = detail::average_ranks(x);
    const auto ry = detail::average_ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += rx[i]; my += ry[i]; }
    mx /= n; my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = rx[i] - mx, b = ry[i] - my;
        sxy += a * b; sxx += a * a; syy += b * b;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::domain_error("spearman: a series is constant");
    return sxy / std::sqrt(sxx * syy);
}

} // namespace cimz
