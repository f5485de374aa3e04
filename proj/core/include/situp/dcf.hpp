#pragma once

// Correlation-filter mathematics on spectral feature stacks: Gaussian
// regression targets, the multi-channel linear kernel, dual-space ridge
// regression, detection and the interpolating model update.
//
// The linear kernel is normalized by 1/(W*H*C) wherever it enters training or
// detection, so lambda is independent of grid size and channel count.

#include "situp/feature_stack.hpp"
#include "situp/spectral.hpp"

#include <vector>

namespace situp {

struct GaussianLabels {
    RealGrid grid;
    double sigma = 0.0;
    SpectralGrid spectrum;  // dft2(grid)
};

// Peak 1.0 at the wrapped origin (0, 0).
GaussianLabels gaussian_labels(int w, int h, double sigma);

struct TrackerModel {
    SpectralStack xhat;
    SpectralGrid alphahat;
    double lambda = 0.0;
    double theta = 0.0;

    int width() const noexcept { return alphahat.width; }
    int height() const noexcept { return alphahat.height; }
};

struct Cell {
    int row = 0;
    int col = 0;
    bool operator==(const Cell&) const = default;
};

struct ResponseMap {
    RealGrid grid;
    double apce = 0.0;
    double peak_value = 0.0;
    Cell peak_pos;
};

// sum_c conj(x_c) * z_c, unnormalized.
SpectralGrid linear_kernel_corr(const SpectralStack& x, const SpectralStack& z);

TrackerModel train(const FeatureStack& x, const GaussianLabels& y, double lambda, double theta = 0.0);
TrackerModel train_spectral(const SpectralStack& xhat, const GaussianLabels& y, double lambda, double theta = 0.0);

ResponseMap detect(const TrackerModel& model, const FeatureStack& z);
ResponseMap detect_spectral(const TrackerModel& model, const SpectralStack& zhat);

// Fills peak_value, peak_pos (first maximum in row-major order; (0, 0) for a
// flat grid) and apce.
ResponseMap make_response(RealGrid grid);

struct Displacement {
    int dy = 0;
    int dx = 0;
    bool operator==(const Displacement&) const = default;
};

// Index i maps to i when i <= dim / 2, otherwise to i - dim.
Displacement decode_displacement(Cell peak, int w, int h);

// T <- theta * T_new + (1 - theta) * T, with T_new = train(x_new, y, lambda).
TrackerModel update(const TrackerModel& model, const FeatureStack& x_new, const GaussianLabels& y);
TrackerModel blend(const TrackerModel& model, const TrackerModel& fresh);

// Primal ridge regression with the explicit circulant data matrix whose row i
// is x cyclically advanced by i (row_i[j] = x[(j + i) mod n]), target y[i].
// Solves (X^T X + lambda I) w = X^T y directly. Test-scale only (n <= 64).
std::vector<double> ridge_regression_oracle(const std::vector<double>& x, const std::vector<double>& y, double lambda);

}  // namespace situp
