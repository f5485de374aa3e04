#include "situp/dcf.hpp"

#include "situp/apce.hpp"
#include "situp/error.hpp"

#include <cmath>
#include <string>

namespace situp {

namespace {

int wrapped(int i, int dim) { return i <= dim / 2 ? i : i - dim; }

void require_stack_match(const SpectralStack& x, const SpectralStack& z)
{
    if (x.size() != z.size() || x.empty()) {
        throw Error(ErrorCode::DimensionMismatch,
            "channel count " + std::to_string(x.size()) + " vs " + std::to_string(z.size()));
    }
    for (std::size_t c = 0; c < x.size(); ++c) {
        if (!x[c].same_shape(z[c]) || !x[c].same_shape(x[0])) {
            throw Error(ErrorCode::DimensionMismatch, "channel " + std::to_string(c) + " grid mismatch");
        }
    }
}

SpectralGrid normalized_kernel(const SpectralStack& x, const SpectralStack& z)
{
    SpectralGrid k = linear_kernel_corr(x, z);
    const double scale = 1.0 / (static_cast<double>(k.size()) * static_cast<double>(x.size()));
    for (auto& v : k.data) {
        v *= scale;
    }
    return k;
}

}  // namespace

GaussianLabels gaussian_labels(int w, int h, double sigma)
{
    if (w < 1 || h < 1 || !(sigma > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "gaussian_labels needs positive dimensions and sigma");
    }
    GaussianLabels labels{RealGrid(w, h), sigma, {}};
    const double denom = 2.0 * sigma * sigma;
    for (int r = 0; r < h; ++r) {
        const double dr = wrapped(r, h);
        for (int c = 0; c < w; ++c) {
            const double dc = wrapped(c, w);
            labels.grid.at(r, c) = std::exp(-(dr * dr + dc * dc) / denom);
        }
    }
    labels.spectrum = dft2(labels.grid);
    return labels;
}

SpectralGrid linear_kernel_corr(const SpectralStack& x, const SpectralStack& z)
{
    require_stack_match(x, z);
    SpectralGrid out(x[0].width, x[0].height);
    for (std::size_t c = 0; c < x.size(); ++c) {
        const auto& xc = x[c].data;
        const auto& zc = z[c].data;
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.data[i] += std::conj(xc[i]) * zc[i];
        }
    }
    return out;
}

TrackerModel train_spectral(const SpectralStack& xhat, const GaussianLabels& y, double lambda, double theta)
{
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "lambda must be positive");
    }
    require_stack_match(xhat, xhat);
    if (!xhat[0].same_shape(y.spectrum)) {
        throw Error(ErrorCode::DimensionMismatch, "features and labels differ in grid size");
    }
    const SpectralGrid kxx = normalized_kernel(xhat, xhat);
    TrackerModel model{xhat, SpectralGrid(kxx.width, kxx.height), lambda, theta};
    for (std::size_t i = 0; i < kxx.size(); ++i) {
        model.alphahat.data[i] = y.spectrum.data[i] / (kxx.data[i] + lambda);
    }
    return model;
}

TrackerModel train(const FeatureStack& x, const GaussianLabels& y, double lambda, double theta)
{
    return train_spectral(to_spectral(x), y, lambda, theta);
}

ResponseMap make_response(RealGrid grid)
{
    ResponseMap out;
    out.grid = std::move(grid);
    const auto& g = out.grid;
    out.peak_value = g.data.at(0);
    for (int r = 0; r < g.height; ++r) {
        for (int c = 0; c < g.width; ++c) {
            if (g.at(r, c) > out.peak_value) {
                out.peak_value = g.at(r, c);
                out.peak_pos = {r, c};
            }
        }
    }
    out.apce = apce(out.grid);
    return out;
}

ResponseMap detect_spectral(const TrackerModel& model, const SpectralStack& zhat)
{
    require_stack_match(model.xhat, zhat);
    SpectralGrid response = normalized_kernel(model.xhat, zhat);
    for (std::size_t i = 0; i < response.size(); ++i) {
        response.data[i] *= model.alphahat.data[i];
    }
    return make_response(idft2(response));
}

ResponseMap detect(const TrackerModel& model, const FeatureStack& z)
{
    return detect_spectral(model, to_spectral(z));
}

Displacement decode_displacement(Cell peak, int w, int h)
{
    return {wrapped(peak.row, h), wrapped(peak.col, w)};
}

TrackerModel blend(const TrackerModel& model, const TrackerModel& fresh)
{
    require_stack_match(model.xhat, fresh.xhat);
    const double keep = 1.0 - model.theta;
    const double take = model.theta;
    TrackerModel out = model;
    for (std::size_t c = 0; c < out.xhat.size(); ++c) {
        for (std::size_t i = 0; i < out.xhat[c].size(); ++i) {
            out.xhat[c].data[i] = take * fresh.xhat[c].data[i] + keep * model.xhat[c].data[i];
        }
    }
    for (std::size_t i = 0; i < out.alphahat.size(); ++i) {
        out.alphahat.data[i] = take * fresh.alphahat.data[i] + keep * model.alphahat.data[i];
    }
    return out;
}

TrackerModel update(const TrackerModel& model, const FeatureStack& x_new, const GaussianLabels& y)
{
    return blend(model, train(x_new, y, model.lambda, model.theta));
}

std::vector<double> ridge_regression_oracle(const std::vector<double>& x, const std::vector<double>& y, double lambda)
{
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "ridge oracle needs equal, nonzero lengths");
    }
    std::vector<std::vector<double>> data(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            data[i][j] = x[(j + i) % n];
        }
    }
    // Augmented normal equations [X^T X + lambda I | X^T y].
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                s += data[i][r] * data[i][c];
            }
            a[r][c] = s + (r == c ? lambda : 0.0);
        }
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += data[i][r] * y[i];
        }
        a[r][n] = s;
    }
    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) {
                pivot = r;
            }
        }
        std::swap(a[col], a[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= n; ++c) {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    std::vector<double> w(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = a[i][n];
        for (std::size_t c = i + 1; c < n; ++c) {
            s -= a[i][c] * w[c];
        }
        w[i] = s / a[i][i];
    }
    return w;
}

}  // namespace situp
