#include "marketgame/simplex.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "marketgame/errors.hpp"

namespace marketgame {

SimplexVector::SimplexVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.size() < 2) {
        throw InvalidSpec("SimplexVector needs at least 2 coordinates, got " +
                          std::to_string(weights_.size()));
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) { // also catches NaN
            throw NonPositiveMass("SimplexVector coordinate is negative or NaN");
        }
        sum += w;
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw NonPositiveMass("SimplexVector has no positive mass");
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        for (double& w : weights_) w /= sum;
    }
}

double SimplexVector::min_weight() const {
    double m = weights_[0];
    for (double w : weights_) m = std::min(m, w);
    return m;
}

SimplexVector make_simplex(std::vector<double> raw) { return SimplexVector(std::move(raw)); }

} // namespace marketgame
