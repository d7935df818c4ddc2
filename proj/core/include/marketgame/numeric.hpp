#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

namespace marketgame {

inline double l1_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
}

inline double l2_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double l2_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Dense row-major matrix, sized once; used for investment proportions and holdings.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Streaming mean/variance accumulator (Welford).
struct RunningStats {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
    double stddev() const { return std::sqrt(variance()); }
    double std_error() const {
        return count > 0 ? stddev() / std::sqrt(static_cast<double>(count)) : 0.0;
    }
};

/// Paired accumulator with covariance, for delta-method intervals on ratios of means.
struct PairedStats {
    std::size_t count = 0;
    double mean_x = 0.0, mean_y = 0.0;
    double m2x = 0.0, m2y = 0.0, cxy = 0.0;

    void add(double x, double y) {
        ++count;
        const double n = static_cast<double>(count);
        const double dx = x - mean_x;
        const double dy = y - mean_y;
        mean_x += dx / n;
        mean_y += dy / n;
        m2x += dx * (x - mean_x);
        m2y += dy * (y - mean_y);
        cxy += dx * (y - mean_y);
    }
    double var_x() const { return count > 1 ? m2x / static_cast<double>(count - 1) : 0.0; }
    double var_y() const { return count > 1 ? m2y / static_cast<double>(count - 1) : 0.0; }
    double cov() const { return count > 1 ? cxy / static_cast<double>(count - 1) : 0.0; }

    double ratio() const { return mean_x / mean_y; }
    /// One standard error of mean_x/mean_y by the delta method.
    double ratio_std_error() const {
        if (count < 2 || mean_x == 0.0 || mean_y == 0.0) return 0.0;
        const double n = static_cast<double>(count);
        const double rel = var_x() / (mean_x * mean_x) + var_y() / (mean_y * mean_y)
                         - 2.0 * cov() / (mean_x * mean_y);
        return std::abs(ratio()) * std::sqrt(std::max(rel, 0.0) / n);
    }
};

/// Euclidean projection onto the probability simplex (Duchi et al. style).
inline std::vector<double> project_to_simplex(std::span<const double> y) {
    std::vector<double> u(y.begin(), y.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, tau = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cum += u[i];
        const double t = (cum - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            tau = t;
            k = i + 1;
        }
    }
    (void)k;
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::max(y[i] - tau, 0.0);
    return out;
}

/// Round to 12 significant digits; applied to every aggregate before emission so
/// that output files are reproducible across worker counts.
inline double round_sig12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

inline std::string format_sig12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

} // namespace marketgame
