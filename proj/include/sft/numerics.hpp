#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sft {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares fit of y against x. Requires xs.size() == ys.size().
// With fewer than two points the fit is degenerate: slope 0, intercept equal
// to the single y value (or 0 when empty), points reporting the count.
LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Median of a nonempty vector (copies and sorts; even length averages the
// middle pair).
double median(std::vector<double> values);

// Format a double exactly enough to round-trip (printf %.17g), so CSV output
// is reproducible byte for byte.
std::string format_double(double value);

} // namespace sft
