#include "terasense/preprocess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace terasense::preprocess {

void SGWindow::validate() const
{
    if (half_width < 1) throw DomainError("SG window: half width >= 1");
    if (poly_degree < 0) throw DomainError("SG window: degree >= 0");
    if (poly_degree >= 2 * half_width + 1)
        throw DomainError("SG window: degree must be < window size");
}

std::vector<double> snv(const std::vector<double>& x)
{
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("snv: need at least 2 points");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd < 1e-15)
        throw DomainError("snv: degenerate (constant) spectrum");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - mean) / sd;
    return out;
}

std::vector<double> minmax(const std::vector<double>& x)
{
    if (x.size() < 2) throw DomainError("minmax: need at least 2 points");
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi == lo) throw DomainError("minmax: degenerate (constant) spectrum");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - lo) / (hi - lo);
    return out;
}

namespace {

// Value at `eval_offset` of the degree-p least-squares polynomial fit over
// window offsets [lo, hi], expressed as weights on the window samples.
Eigen::VectorXd fit_weights(int lo, int hi, int degree, int eval_offset)
{
    const int npts = hi - lo + 1;
    const int ncoef = std::min(degree + 1, npts);
    Eigen::MatrixXd V(npts, ncoef);
    for (int i = 0; i < npts; ++i) {
        double t = 1.0;
        for (int j = 0; j < ncoef; ++j) {
            V(i, j) = t;
            t *= static_cast<double>(lo + i);
        }
    }
    // Row of the hat matrix at the evaluation point: e^T (V^T V)^-1 V^T.
    Eigen::VectorXd e(ncoef);
    double t = 1.0;
    for (int j = 0; j < ncoef; ++j) {
        e(j) = t;
        t *= static_cast<double>(eval_offset);
    }
    const Eigen::MatrixXd gram = V.transpose() * V;
    return V * gram.ldlt().solve(e);
}

} // namespace

std::vector<double> savitzky_golay_weights(const SGWindow& w)
{
    w.validate();
    Eigen::VectorXd weights =
        fit_weights(-w.half_width, w.half_width, w.poly_degree, 0);
    return {weights.data(), weights.data() + weights.size()};
}

std::vector<double> savitzky_golay(const std::vector<double>& x,
                                   const SGWindow& w)
{
    w.validate();
    const int n = static_cast<int>(x.size());
    const int m = w.half_width;
    if (n < 2 * m + 1)
        throw DomainError("savitzky_golay: window larger than spectrum");

    const std::vector<double> center = savitzky_golay_weights(w);
    std::vector<double> out(x.size());
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(-m, -i);
        const int hi = std::min(m, n - 1 - i);
        if (lo == -m && hi == m) {
            double acc = 0.0;
            for (int k = -m; k <= m; ++k) acc += center[k + m] * x[i + k];
            out[i] = acc;
        } else {
            const Eigen::VectorXd weights = fit_weights(lo, hi, w.poly_degree, 0);
            double acc = 0.0;
            for (int k = lo; k <= hi; ++k) acc += weights(k - lo) * x[i + k];
            out[i] = acc;
        }
    }
    return out;
}

} // namespace terasense::preprocess
