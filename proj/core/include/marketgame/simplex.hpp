#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace marketgame {

/// Point of the standard N-simplex: nonnegative weights summing to one.
///
/// Construction renormalizes the input (generators produce tiny rounding drift)
/// and rejects negative entries or zero total mass. N >= 2.
class SimplexVector {
public:
    explicit SimplexVector(std::vector<double> weights);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const { return weights_; }
    const std::vector<double>& as_vector() const { return weights_; }

    double min_weight() const;

    bool operator==(const SimplexVector& other) const { return weights_ == other.weights_; }

private:
    std::vector<double> weights_;
};

/// Normalized copy of a nonnegative vector; idempotent on simplex input.
SimplexVector make_simplex(std::vector<double> raw);

} // namespace marketgame
