#ifndef TERASENSE_PREPROCESS_HPP
#define TERASENSE_PREPROCESS_HPP

#include <vector>

#include "terasense/errors.hpp"

namespace terasense::preprocess {

// Savitzky-Golay window: 2m+1 points, polynomial degree p < 2m+1.
struct SGWindow {
    int half_width = 5;
    int poly_degree = 3;
    void validate() const;
};

// Standard normal variate: per-spectrum zero mean, unit sample std.
std::vector<double> snv(const std::vector<double>& x);

// Rescale to [0, 1].
std::vector<double> minmax(const std::vector<double>& x);

// Least-squares polynomial smoothing. Interior points use the symmetric
// window; boundary points are fit over the truncated one-sided window.
std::vector<double> savitzky_golay(const std::vector<double>& x,
                                   const SGWindow& w);

// Convolution weights for the symmetric interior window, evaluated at the
// window center (exposed for testing against the classic tables).
std::vector<double> savitzky_golay_weights(const SGWindow& w);

} // namespace terasense::preprocess

#endif
