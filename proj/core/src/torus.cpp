#include <fftw3.h>

#include <cmath>
#include <numbers>

#include "fftw_lock.hpp"
#include "lcft/errors.hpp"
#include "lcft/fields/field.hpp"
#include "lcft/fields/rng.hpp"

namespace lcft::fields {
namespace {

int wrap(int k, int n) { return k < n / 2 ? k : k - n; }

bool power_of_two(int n) { return n >= 4 && (n & (n - 1)) == 0; }

}  // namespace

double torus_variance(int n) { return torus_covariance(n, 0.0, 0.0); }

double torus_covariance(int n, double dx, double dy) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const int kx = wrap(i, n);
    for (int j = 0; j < n; ++j) {
      const int ky = wrap(j, n);
      if (kx == 0 && ky == 0) continue;
      const double k2 = double(kx) * kx + double(ky) * ky;
      s += std::cos(2.0 * std::numbers::pi * (kx * dx + ky * dy)) / (2.0 * std::numbers::pi * k2);
    }
  }
  return s;
}

struct TorusSampler::Impl {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

TorusSampler::TorusSampler(int n) : n_(n), impl_(new Impl) {
  if (!power_of_two(n)) throw DomainError("TorusSampler: resolution must be a power of two >= 4");
  sigma2_ = torus_variance(n);
  grid_ = std::make_shared<Grid>();
  grid_->kind = GeometryKind::flat_torus;
  const double h = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      grid_->centers.push_back({i * h, j * h, 0.0});
      grid_->volumes.push_back(h * h);
    }
  }
  const int nc = n / 2 + 1;
  multiplier_.assign(static_cast<std::size_t>(n) * nc, 0.0);
  for (int i = 0; i < n; ++i) {
    const int kx = wrap(i, n);
    for (int j = 0; j < nc; ++j) {
      const int ky = j;
      if (kx == 0 && ky == 0) continue;
      const double k = std::sqrt(double(kx) * kx + double(ky) * ky);
      multiplier_[static_cast<std::size_t>(i) * nc + j] = 1.0 / (n * std::sqrt(2.0 * std::numbers::pi) * k);
    }
  }
  std::lock_guard lock(fftw_planner_mutex());
  double* r = fftw_alloc_real(static_cast<std::size_t>(n) * n);
  fftw_complex* c = fftw_alloc_complex(static_cast<std::size_t>(n) * nc);
  impl_->forward = fftw_plan_dft_r2c_2d(n, n, r, c, FFTW_ESTIMATE);
  impl_->backward = fftw_plan_dft_c2r_2d(n, n, c, r, FFTW_ESTIMATE);
  fftw_free(r);
  fftw_free(c);
}

TorusSampler::~TorusSampler() {
  std::lock_guard lock(fftw_planner_mutex());
  if (impl_->forward) fftw_destroy_plan(impl_->forward);
  if (impl_->backward) fftw_destroy_plan(impl_->backward);
}

void TorusSampler::sample_into(std::uint64_t seed, std::uint64_t index, double* out) const {
  const std::size_t nn = static_cast<std::size_t>(n_) * n_;
  const std::size_t nc = static_cast<std::size_t>(n_) * (n_ / 2 + 1);
  double* r = fftw_alloc_real(nn);
  fftw_complex* c = fftw_alloc_complex(nc);
  SampleRng rng(seed, GeometryKind::flat_torus, n_, index);
  for (std::size_t i = 0; i < nn; ++i) r[i] = rng.normal();
  fftw_execute_dft_r2c(impl_->forward, r, c);
  for (std::size_t i = 0; i < nc; ++i) {
    c[i][0] *= multiplier_[i];
    c[i][1] *= multiplier_[i];
  }
  fftw_execute_dft_c2r(impl_->backward, c, r);
  std::copy(r, r + nn, out);
  fftw_free(r);
  fftw_free(c);
}

FieldSample TorusSampler::sample(std::uint64_t seed, std::uint64_t index) const {
  FieldSample s;
  s.geometry = SurfaceGeometry(GeometryKind::flat_torus, n_);
  s.mode_cutoff = n_ / 2;
  s.seed = seed;
  s.index = index;
  s.grid = grid_;
  s.values.resize(static_cast<std::size_t>(n_) * n_);
  sample_into(seed, index, s.values.data());
  s.sigma2.assign(s.values.size(), sigma2_);
  return s;
}

FieldSample sample_torus(int resolution, std::uint64_t seed, std::uint64_t index) {
  return TorusSampler(resolution).sample(seed, index);
}

}  // namespace lcft::fields
