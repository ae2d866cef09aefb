#pragma once

#include <cstddef>
#include <vector>

#include "expara/types.hpp"

namespace expara {

// Unnormalized forward transform X_m = sum_n x_n exp(-2 pi i m n / N).
cvec dft(const cvec& x);
// Inverse of dft, including the 1/N factor.
cvec idft(const cvec& x);

// Row-major (ny rows of nx) two-dimensional transforms.
cvec dft2(const cvec& x, std::size_t ny, std::size_t nx);
cvec idft2(const cvec& x, std::size_t ny, std::size_t nx);

// Transform each of the rows of a row-major (rows x n) array independently.
cvec dft_rows(const cvec& x, std::size_t rows, std::size_t n);
cvec idft_rows(const cvec& x, std::size_t rows, std::size_t n);

// FFT-ordered integer indices [0..N/2-1, -N/2..-1].
std::vector<int> fft_indices(std::size_t n);
// omega * fft_indices with omega = 2 pi / length.
rvec wavenumbers(std::size_t n, double length);

// True on kept modes |index| <= floor(N/3).
std::vector<bool> dealias_mask(std::size_t n);

struct SpectralGrid {
  int dims = 1;
  std::vector<std::size_t> sizes;
  rvec lengths;
  std::vector<rvec> k;  // per-dimension wavenumbers

  std::size_t size() const;
  double omega(int dim) const;
};

SpectralGrid make_grid_1d(std::size_t n, double length);
SpectralGrid make_grid_2d(std::size_t nx, std::size_t ny, double lx, double ly);

}  // namespace expara
