#include "sft/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sft/rng.hpp"

namespace sft {

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("fit_line: mismatched lengths");
    }
    LinearFit fit;
    fit.points = xs.size();
    if (xs.empty()) {
        return fit;
    }
    if (xs.size() == 1) {
        fit.intercept = ys[0];
        return fit;
    }
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double n = static_cast<double>(xs.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        fit.intercept = my;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median: empty input");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return 0.5 * (values[mid - 1] + values[mid]);
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

} // namespace sft

namespace sft::rng {

std::vector<double> simplex_point(std::mt19937_64& gen, std::size_t n) {
    std::vector<double> weights(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // Exponential via inverse CDF; the argument stays in (0,1].
        weights[i] = -std::log(1.0 - unit(gen));
        if (weights[i] <= 0.0) {
            weights[i] = 1e-300;
        }
        total += weights[i];
    }
    for (double& w : weights) {
        w /= total;
    }
    return weights;
}

} // namespace sft::rng
