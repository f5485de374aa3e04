#pragma once

// 2-D discrete Fourier transforms and element-wise spectral arithmetic.
//
// Convention: the forward transform is unnormalized and the inverse carries
// the 1/(W*H) factor, so the DC bin of dft2(g) is the plain sum of g and
// idft2(dft2(g)) == g. Any grid size is accepted; nothing is padded.

#include <complex>
#include <cstddef>
#include <vector>

namespace situp {

using Complex = std::complex<double>;

template <typename T>
struct Grid {
    int width = 0;
    int height = 0;
    std::vector<T> data;  // row-major, data[row * width + col]

    Grid() = default;
    Grid(int w, int h, T fill = T{});

    std::size_t size() const noexcept { return data.size(); }
    T& at(int row, int col) { return data[static_cast<std::size_t>(row) * width + col]; }
    const T& at(int row, int col) const { return data[static_cast<std::size_t>(row) * width + col]; }
    bool same_shape(const Grid& other) const noexcept
    {
        return width == other.width && height == other.height;
    }
};

using RealGrid = Grid<double>;
using SpectralGrid = Grid<Complex>;

extern template struct Grid<double>;
extern template struct Grid<Complex>;

// Imaginary residue / conjugate-symmetry tolerance used by idft2, relative to
// max(1, largest bin magnitude).
inline constexpr double kSymmetryTolerance = 1e-8;

SpectralGrid dft2(const RealGrid& g);

// Throws AsymmetricSpectrum when g is not the spectrum of a real grid.
RealGrid idft2(const SpectralGrid& g);

// Complex-to-complex inverse without the symmetry check.
SpectralGrid idft2_complex(const SpectralGrid& g);

SpectralGrid hadamard(const SpectralGrid& a, const SpectralGrid& b);
SpectralGrid conj(const SpectralGrid& a);

// Largest |G[u,v] - conj(G[-u,-v])| over all bins.
double conjugate_asymmetry(const SpectralGrid& g);

// Cyclic shift: out[(r + dr) mod H, (c + dc) mod W] = g[r, c].
RealGrid cyclic_shift(const RealGrid& g, int dr, int dc);

namespace oracle {

// O(N^2) direct-summation DFT. Test-scale only.
SpectralGrid direct_dft2(const RealGrid& g);

// out[d] = sum_i x[i] * z[i + d] with indices wrapped in both axes.
RealGrid cyclic_correlate(const RealGrid& x, const RealGrid& z);

}  // namespace oracle

// Brute-force correlation.
inline RealGrid cyclic_correlate_oracle(const RealGrid& x, const RealGrid& z)
{
    return oracle::cyclic_correlate(x, z);
}

}  // namespace situp
