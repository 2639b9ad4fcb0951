#pragma once

// Independent reference implementations used to cross-check the library.
// Deliberately naive: normal equations instead of QR, O(n^2) prefix scans
// instead of running moments, direct formula transcriptions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "windspc/types.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;  // row major

struct OlsResult {
    bool ok = false;
    std::vector<double> beta;
    std::vector<double> se;
    double sse = 0.0;
};

// Solves the normal equations (X^T X) b = X^T y by Gauss-Jordan elimination
// with partial pivoting, also producing (X^T X)^-1 for the standard errors.
inline OlsResult ols_normal_equations(const Matrix& X, const std::vector<double>& y) {
    OlsResult r;
    const std::size_t n = X.size();
    if (n == 0) return r;
    const std::size_t p = X[0].size();
    if (n <= p) return r;

    // A = [X^T X | I], c = X^T y
    std::vector<std::vector<double>> A(p, std::vector<double>(2 * p, 0.0));
    std::vector<double> c(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < p; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += X[i][j] * X[i][k];
            A[j][k] = s;
        }
        A[j][p + j] = 1.0;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += X[i][j] * y[i];
        c[j] = s;
    }

    double scale = 0.0;
    for (std::size_t j = 0; j < p; ++j) scale = std::max(scale, std::fabs(A[j][j]));
    if (scale == 0.0) return r;

    for (std::size_t col = 0; col < p; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < p; ++row) {
            if (std::fabs(A[row][col]) > std::fabs(A[pivot][col])) pivot = row;
        }
        if (std::fabs(A[pivot][col]) < 1e-11 * scale) return r;  // singular
        std::swap(A[col], A[pivot]);
        std::swap(c[col], c[pivot]);
        const double d = A[col][col];
        for (auto& v : A[col]) v /= d;
        c[col] /= d;
        for (std::size_t row = 0; row < p; ++row) {
            if (row == col) continue;
            const double f = A[row][col];
            if (f == 0.0) continue;
            for (std::size_t k = 0; k < 2 * p; ++k) A[row][k] -= f * A[col][k];
            c[row] -= f * c[col];
        }
    }

    r.beta = c;
    r.sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < p; ++j) fit += X[i][j] * r.beta[j];
        r.sse += (y[i] - fit) * (y[i] - fit);
    }
    const double sigma2 = r.sse / static_cast<double>(n - p);
    r.se.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        r.se[j] = std::sqrt(std::max(0.0, sigma2 * A[j][p + j]));
    }
    r.ok = true;
    return r;
}

// Classic two-pass Pearson correlation.
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
        sab += (a[i] - ma) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

// O(n^2) running-correlation profile: recomputes the full prefix at each
// endpoint. Emits (index, rho) for prefixes with at least min_points complete
// pairs and nonzero variance in both variables.
inline std::vector<std::pair<std::size_t, double>> prefix_correlation(
    const std::vector<std::optional<double>>& a, const std::vector<std::optional<double>>& b,
    std::size_t min_points) {
    std::vector<std::pair<std::size_t, double>> profile;
    for (std::size_t end = 0; end < a.size(); ++end) {
        std::vector<double> xa, xb;
        for (std::size_t i = 0; i <= end; ++i) {
            if (a[i] && b[i]) {
                xa.push_back(*a[i]);
                xb.push_back(*b[i]);
            }
        }
        if (xa.size() < min_points) continue;
        const double va = [&] {
            double m = 0.0;
            for (double v : xa) m += v;
            m /= static_cast<double>(xa.size());
            double s = 0.0;
            for (double v : xa) s += (v - m) * (v - m);
            return s;
        }();
        const double vb = [&] {
            double m = 0.0;
            for (double v : xb) m += v;
            m /= static_cast<double>(xb.size());
            double s = 0.0;
            for (double v : xb) s += (v - m) * (v - m);
            return s;
        }();
        if (va <= 0.0 || vb <= 0.0) continue;
        profile.emplace_back(end, std::clamp(pearson(xa, xb), -1.0, 1.0));
    }
    return profile;
}

// Biased ACF estimator: r_k = sum_{t<n-k}(x_t - m)(x_{t+k} - m) / sum (x_t - m)^2.
inline std::vector<double> acf(const std::vector<double>& x, std::size_t max_lag) {
    const std::size_t n = x.size();
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(n);
    double denom = 0.0;
    for (double v : x) denom += (v - m) * (v - m);
    std::vector<double> r(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) num += (x[t] - m) * (x[t + k] - m);
        r[k] = num / denom;
    }
    return r;
}

inline double mallows_cp(double sse_p, std::size_t p, double full_sigma2, std::size_t n) {
    return sse_p / full_sigma2 - static_cast<double>(n) + 2.0 * static_cast<double>(p);
}

// Column-oriented dataset builder for tests: evenly spaced timestamps,
// one optional-valued column per named field.
inline windspc::Dataset make_dataset(
    windspc::Timestamp start, std::int64_t cadence_s,
    const std::vector<std::pair<std::string, std::vector<std::optional<double>>>>& columns) {
    windspc::Dataset d;
    std::size_t n = 0;
    for (const auto& [name, values] : columns) n = std::max(n, values.size());
    for (std::size_t i = 0; i < n; ++i) {
        windspc::ScadaRecord rec;
        rec.timestamp = start + static_cast<std::int64_t>(i) * cadence_s;
        for (const auto& [name, values] : columns) {
            if (i < values.size() && values[i]) {
                windspc::set_field_value(rec, name, *values[i]);
            }
        }
        d.records.push_back(std::move(rec));
    }
    d.refresh_cadence();
    return d;
}

inline std::vector<std::optional<double>> opt(const std::vector<double>& v) {
    return {v.begin(), v.end()};
}

}  // namespace oracle
