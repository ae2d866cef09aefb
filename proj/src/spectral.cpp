#include "expara/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "expara/errors.hpp"

namespace expara {

namespace {

// Plans are created once per shape and direction. Planning is not
// thread-safe in FFTW, execution through the new-array interface is.
struct PlanKey {
  std::size_t rows, ny, nx;
  int sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(rows, ny, nx, sign) < std::tie(o.rows, o.ny, o.nx, o.sign);
  }
};

fftw_plan get_plan(const PlanKey& key) {
  static std::mutex mtx;
  static std::map<PlanKey, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  const std::size_t total = key.rows * key.ny * key.nx;
  fftw_complex* in = fftw_alloc_complex(total);
  fftw_complex* out = fftw_alloc_complex(total);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan p;
  if (key.rows > 1) {
    int n = int(key.nx);
    p = fftw_plan_many_dft(1, &n, int(key.rows), in, nullptr, 1, n, out,
                           nullptr, 1, n, key.sign, flags);
  } else if (key.ny > 1) {
    p = fftw_plan_dft_2d(int(key.ny), int(key.nx), in, out, key.sign, flags);
  } else {
    p = fftw_plan_dft_1d(int(key.nx), in, out, key.sign, flags);
  }
  fftw_free(in);
  fftw_free(out);
  if (!p) throw UnsupportedError("FFTW could not plan a transform");
  plans.emplace(key, p);
  return p;
}

cvec run(const cvec& x, PlanKey key, bool normalize) {
  if (x.empty()) throw DomainError("transform of empty vector");
  if (x.size() != key.rows * key.ny * key.nx)
    throw DomainError("transform size mismatch");
  cvec in = x;  // FFTW may scribble on its input for some plans
  cvec out(x.size());
  fftw_execute_dft(get_plan(key), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  if (normalize) {
    const double s = 1.0 / double(key.nx * key.ny);
    for (auto& v : out) v *= s;
  }
  return out;
}

}  // namespace

cvec dft(const cvec& x) { return run(x, {1, 1, x.size(), FFTW_FORWARD}, false); }
cvec idft(const cvec& x) { return run(x, {1, 1, x.size(), FFTW_BACKWARD}, true); }

cvec dft2(const cvec& x, std::size_t ny, std::size_t nx) {
  return run(x, {1, ny, nx, FFTW_FORWARD}, false);
}
cvec idft2(const cvec& x, std::size_t ny, std::size_t nx) {
  return run(x, {1, ny, nx, FFTW_BACKWARD}, true);
}

cvec dft_rows(const cvec& x, std::size_t rows, std::size_t n) {
  return run(x, {rows, 1, n, FFTW_FORWARD}, false);
}
cvec idft_rows(const cvec& x, std::size_t rows, std::size_t n) {
  return run(x, {rows, 1, n, FFTW_BACKWARD}, true);
}

std::vector<int> fft_indices(std::size_t n) {
  std::vector<int> idx(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < n; ++i)
    idx[i] = i < half ? int(i) : int(i) - int(n);
  return idx;
}

rvec wavenumbers(std::size_t n, double length) {
  const double w = 2.0 * std::numbers::pi / length;
  auto idx = fft_indices(n);
  rvec k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = w * idx[i];
  return k;
}

std::vector<bool> dealias_mask(std::size_t n) {
  if (n == 0 || n % 2 != 0)
    throw DomainError("dealias_mask needs an even size, got " + std::to_string(n));
  const int keep = int(n / 3);
  auto idx = fft_indices(n);
  std::vector<bool> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = std::abs(idx[i]) <= keep;
  return m;
}

std::size_t SpectralGrid::size() const {
  std::size_t s = 1;
  for (auto n : sizes) s *= n;
  return s;
}

double SpectralGrid::omega(int dim) const {
  return 2.0 * std::numbers::pi / lengths.at(dim);
}

SpectralGrid make_grid_1d(std::size_t n, double length) {
  SpectralGrid g;
  g.dims = 1;
  g.sizes = {n};
  g.lengths = {length};
  g.k = {wavenumbers(n, length)};
  return g;
}

SpectralGrid make_grid_2d(std::size_t nx, std::size_t ny, double lx, double ly) {
  SpectralGrid g;
  g.dims = 2;
  g.sizes = {nx, ny};
  g.lengths = {lx, ly};
  g.k = {wavenumbers(nx, lx), wavenumbers(ny, ly)};
  return g;
}

}  // namespace expara
