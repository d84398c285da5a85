#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "lcft/errors.hpp"
#include "lcft/fields/field.hpp"
#include "lcft/fields/rng.hpp"
#include "fftw_lock.hpp"

namespace lcft::fields {

const std::vector<double>& regularized_variance(const FieldSample& sample) { return sample.sigma2; }

double CircleModes::evaluate(double theta) const {
  double s = zero_mode;
  for (int n = 1; n <= n_modes(); ++n) {
    s += (cos_coeffs[n - 1] * std::cos(n * theta) - sin_coeffs[n - 1] * std::sin(n * theta)) /
         std::sqrt(double(n));
  }
  return s;
}

CircleModes sample_circle(int n_modes, std::uint64_t seed, std::uint64_t index,
                          std::optional<ZeroModeWindow> window) {
  if (n_modes < 1) throw DomainError("sample_circle: n_modes must be at least 1");
  SampleRng rng(seed, GeometryKind::circle, n_modes, index);
  CircleModes m;
  m.cos_coeffs.resize(n_modes);
  m.sin_coeffs.resize(n_modes);
  for (int n = 0; n < n_modes; ++n) {
    m.cos_coeffs[n] = rng.normal();
    m.sin_coeffs[n] = rng.normal();
  }
  if (window) {
    if (!(window->hi > window->lo)) throw DomainError("sample_circle: empty zero-mode window");
    m.zero_mode = window->lo + (window->hi - window->lo) * rng.uniform();
  }
  return m;
}

double circle_variance(int n_modes) {
  double s = 0.0;
  for (int n = n_modes; n >= 1; --n) s += 1.0 / n;
  return s;
}

double circle_covariance(int n_modes, double dtheta) {
  double s = 0.0;
  for (int n = n_modes; n >= 1; --n) s += std::cos(n * dtheta) / n;
  return s;
}

struct CircleSampler::Impl {
  fftw_plan plan = nullptr;
};

CircleSampler::CircleSampler(int n_modes, int grid_size)
    : n_modes_(n_modes), grid_size_(grid_size > 0 ? grid_size : 4 * n_modes), impl_(new Impl) {
  if (n_modes < 1) throw DomainError("CircleSampler: n_modes must be at least 1");
  if (grid_size_ <= 2 * n_modes_) throw DomainError("CircleSampler: grid must exceed 2 N points");
  if (grid_size_ < 4) throw DomainError("CircleSampler: grid must have at least 4 points");
  sigma2_ = circle_variance(n_modes_);
  grid_ = std::make_shared<Grid>();
  grid_->kind = GeometryKind::circle;
  const double h = 2.0 * std::numbers::pi / grid_size_;
  for (int j = 0; j < grid_size_; ++j) {
    grid_->centers.push_back({j * h, 0.0, 0.0});
    grid_->volumes.push_back(h);
  }
  std::lock_guard lock(fftw_planner_mutex());
  fftw_complex* in = fftw_alloc_complex(grid_size_ / 2 + 1);
  double* out = fftw_alloc_real(grid_size_);
  impl_->plan = fftw_plan_dft_c2r_1d(grid_size_, in, out, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
}

CircleSampler::~CircleSampler() {
  std::lock_guard lock(fftw_planner_mutex());
  if (impl_->plan) fftw_destroy_plan(impl_->plan);
}

void CircleSampler::synthesize(const CircleModes& modes, double* out) const {
  if (modes.n_modes() != n_modes_) throw DomainError("CircleSampler: mode count mismatch");
  const int nc = grid_size_ / 2 + 1;
  fftw_complex* in = fftw_alloc_complex(nc);
  double* buf = fftw_alloc_real(grid_size_);
  for (int k = 0; k < nc; ++k) in[k][0] = in[k][1] = 0.0;
  in[0][0] = modes.zero_mode;
  for (int n = 1; n <= n_modes_; ++n) {
    const double s = 0.5 / std::sqrt(double(n));
    in[n][0] = modes.cos_coeffs[n - 1] * s;
    in[n][1] = modes.sin_coeffs[n - 1] * s;
  }
  fftw_execute_dft_c2r(impl_->plan, in, buf);
  std::copy(buf, buf + grid_size_, out);
  fftw_free(in);
  fftw_free(buf);
}

FieldSample CircleSampler::sample(std::uint64_t seed, std::uint64_t index) const {
  FieldSample s;
  s.geometry = SurfaceGeometry(GeometryKind::circle, n_modes_);
  s.mode_cutoff = n_modes_;
  s.seed = seed;
  s.index = index;
  s.grid = grid_;
  s.values.resize(grid_size_);
  synthesize(sample_circle(n_modes_, seed, index), s.values.data());
  s.sigma2.assign(grid_size_, sigma2_);
  return s;
}

}  // namespace lcft::fields
