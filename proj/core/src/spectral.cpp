#include "situp/spectral.hpp"

#include "situp/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

namespace situp {

template <typename T>
Grid<T>::Grid(int w, int h, T fill)
    : width(w), height(h), data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill)
{
}

template struct Grid<double>;
template struct Grid<Complex>;

namespace {

static_assert(sizeof(Complex) == sizeof(fftw_complex));

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (w, h, sign) and kept for the process.
class PlanCache {
public:
    static PlanCache& instance()
    {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int width, int height, int sign)
    {
        std::lock_guard lock(mutex_);
        auto key = std::make_tuple(width, height, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) {
            return it->second;
        }
        std::vector<Complex> in(static_cast<std::size_t>(width) * height);
        std::vector<Complex> out(in.size());
        fftw_plan plan = fftw_plan_dft_2d(height, width,
            reinterpret_cast<fftw_complex*>(in.data()),
            reinterpret_cast<fftw_complex*>(out.data()),
            sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

private:
    PlanCache() = default;
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const SpectralGrid& in, SpectralGrid& out, int sign)
{
    fftw_plan plan = PlanCache::instance().get(in.width, in.height, sign);
    // FFTW takes a non-const input pointer but does not modify it for
    // out-of-place complex transforms.
    fftw_execute_dft(plan,
        reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data.data())),
        reinterpret_cast<fftw_complex*>(out.data.data()));
}

void require_shape(int width, int height)
{
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::DimensionMismatch,
            "grid dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
    }
}

template <typename T>
void require_same(const Grid<T>& a, const Grid<T>& b, const char* what)
{
    if (!a.same_shape(b)) {
        throw Error(ErrorCode::DimensionMismatch,
            std::string(what) + ": " + std::to_string(a.width) + "x" + std::to_string(a.height) + " vs "
                + std::to_string(b.width) + "x" + std::to_string(b.height));
    }
}

}  // namespace

SpectralGrid dft2(const RealGrid& g)
{
    require_shape(g.width, g.height);
    SpectralGrid in(g.width, g.height);
    std::transform(g.data.begin(), g.data.end(), in.data.begin(), [](double v) { return Complex(v, 0.0); });
    SpectralGrid out(g.width, g.height);
    execute(in, out, FFTW_FORWARD);
    return out;
}

SpectralGrid idft2_complex(const SpectralGrid& g)
{
    require_shape(g.width, g.height);
    SpectralGrid out(g.width, g.height);
    execute(g, out, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& v : out.data) {
        v *= scale;
    }
    return out;
}

double conjugate_asymmetry(const SpectralGrid& g)
{
    double worst = 0.0;
    for (int v = 0; v < g.height; ++v) {
        const int mv = (g.height - v) % g.height;
        for (int u = 0; u < g.width; ++u) {
            const int mu = (g.width - u) % g.width;
            worst = std::max(worst, std::abs(g.at(v, u) - std::conj(g.at(mv, mu))));
        }
    }
    return worst;
}

RealGrid idft2(const SpectralGrid& g)
{
    require_shape(g.width, g.height);
    double magnitude = 1.0;
    for (const auto& v : g.data) {
        magnitude = std::max(magnitude, std::abs(v));
    }
    const double asym = conjugate_asymmetry(g);
    if (asym > kSymmetryTolerance * magnitude) {
        throw Error(ErrorCode::AsymmetricSpectrum,
            "spectrum is not conjugate-symmetric (deviation " + std::to_string(asym) + ")");
    }
    const SpectralGrid full = idft2_complex(g);
    RealGrid out(g.width, g.height);
    std::transform(full.data.begin(), full.data.end(), out.data.begin(), [](const Complex& v) { return v.real(); });
    return out;
}

SpectralGrid hadamard(const SpectralGrid& a, const SpectralGrid& b)
{
    require_same(a, b, "hadamard");
    SpectralGrid out(a.width, a.height);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.data[i] = a.data[i] * b.data[i];
    }
    return out;
}

SpectralGrid conj(const SpectralGrid& a)
{
    SpectralGrid out(a.width, a.height);
    std::transform(a.data.begin(), a.data.end(), out.data.begin(), [](const Complex& v) { return std::conj(v); });
    return out;
}

RealGrid cyclic_shift(const RealGrid& g, int dr, int dc)
{
    RealGrid out(g.width, g.height);
    for (int r = 0; r < g.height; ++r) {
        const int rr = ((r + dr) % g.height + g.height) % g.height;
        for (int c = 0; c < g.width; ++c) {
            const int cc = ((c + dc) % g.width + g.width) % g.width;
            out.at(rr, cc) = g.at(r, c);
        }
    }
    return out;
}

namespace oracle {

SpectralGrid direct_dft2(const RealGrid& g)
{
    require_shape(g.width, g.height);
    SpectralGrid out(g.width, g.height);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int v = 0; v < g.height; ++v) {
        for (int u = 0; u < g.width; ++u) {
            Complex acc(0.0, 0.0);
            for (int r = 0; r < g.height; ++r) {
                for (int c = 0; c < g.width; ++c) {
                    // Reduce the phase index first to keep the argument small.
                    const long long k = (static_cast<long long>(u) * c % g.width) * g.height
                        + (static_cast<long long>(v) * r % g.height) * g.width;
                    const double phase = -two_pi * static_cast<double>(k)
                        / (static_cast<double>(g.width) * g.height);
                    acc += g.at(r, c) * Complex(std::cos(phase), std::sin(phase));
                }
            }
            out.at(v, u) = acc;
        }
    }
    return out;
}

RealGrid cyclic_correlate(const RealGrid& x, const RealGrid& z)
{
    require_same(x, z, "cyclic_correlate");
    RealGrid out(x.width, x.height);
    for (int dr = 0; dr < x.height; ++dr) {
        for (int dc = 0; dc < x.width; ++dc) {
            double acc = 0.0;
            for (int r = 0; r < x.height; ++r) {
                const int zr = (r + dr) % x.height;
                for (int c = 0; c < x.width; ++c) {
                    acc += x.at(r, c) * z.at(zr, (c + dc) % x.width);
                }
            }
            out.at(dr, dc) = acc;
        }
    }
    return out;
}

}  // namespace oracle

}  // namespace situp
