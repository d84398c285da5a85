#include <fftw3.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_legendre.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fftw_lock.hpp"
#include "lcft/errors.hpp"
#include "lcft/fields/field.hpp"
#include "lcft/fields/rng.hpp"

namespace lcft::fields {

double sphere_variance(int l_max) {
  double s = 0.0;
  for (int l = l_max; l >= 1; --l) s += (2.0 * l + 1.0) / (2.0 * l * (l + 1.0));
  return s;
}

void sphere_covariance_many(int l_max, const double* x, std::size_t n, double* out) {
  for (std::size_t k = 0; k < n; ++k) {
    const double c = std::clamp(x[k], -1.0, 1.0);
    double p_prev = 1.0, p = c, s = 0.0;
    for (int l = 1; l <= l_max; ++l) {
      s += (2.0 * l + 1.0) / (2.0 * l * (l + 1.0)) * p;
      const double next = ((2.0 * l + 1.0) * c * p - l * p_prev) / (l + 1.0);
      p_prev = p;
      p = next;
    }
    out[k] = s;
  }
}

double sphere_covariance(int l_max, double cos_angle) {
  double out;
  sphere_covariance_many(l_max, &cos_angle, 1, &out);
  return out;
}

namespace {

std::size_t coefficient_index(int l, int m, bool sine) {
  const std::size_t base = static_cast<std::size_t>(l) * l - 1;
  if (m == 0) return base;
  return base + 2 * static_cast<std::size_t>(m) - (sine ? 0 : 1);
}

}  // namespace

struct SphereSampler::Impl {
  struct ModeTable {
    std::vector<int> even_l, odd_l;  // l with l + m even / odd
    Eigen::MatrixXd even, odd;       // half rings x degrees, scaled harmonics
  };
  std::vector<ModeTable> modes;
  fftw_plan plan = nullptr;
  int half = 0;
  int nc = 0;
};

SphereSampler::SphereSampler(int l_max, SphereGridSpec spec) : l_max_(l_max), impl_(new Impl) {
  if (l_max < 2) throw DomainError("SphereSampler: l_max must be at least 2");
  n_theta_ = spec.n_theta > 0 ? spec.n_theta : 2 * (l_max + 1);
  if (n_theta_ % 2) ++n_theta_;
  n_phi_ = spec.n_phi > 0 ? spec.n_phi : 4 * l_max;
  if (n_phi_ <= 2 * l_max) throw DomainError("SphereSampler: n_phi must exceed 2 l_max");
  if (n_theta_ < l_max + 1) throw DomainError("SphereSampler: n_theta must be at least l_max + 1");
  sigma2_ = sphere_variance(l_max);

  // Gauss-Legendre nodes in x = cos(theta), north (x > 0) first
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(n_theta_);
  std::vector<std::pair<double, double>> nodes(n_theta_);
  for (int i = 0; i < n_theta_; ++i) {
    gsl_integration_glfixed_point(-1.0, 1.0, i, &nodes[i].first, &nodes[i].second, table);
  }
  gsl_integration_glfixed_table_free(table);
  std::sort(nodes.begin(), nodes.end(), [](auto a, auto b) { return a.first > b.first; });
  // exact mirror symmetry for the paired rings
  for (int i = 0; i < n_theta_ / 2; ++i) {
    nodes[n_theta_ - 1 - i].first = -nodes[i].first;
    nodes[n_theta_ - 1 - i].second = nodes[i].second;
  }

  grid_ = std::make_shared<Grid>();
  grid_->kind = GeometryKind::round_sphere;
  grid_->centers.reserve(static_cast<std::size_t>(n_theta_) * n_phi_);
  grid_->volumes.reserve(static_cast<std::size_t>(n_theta_) * n_phi_);
  for (int i = 0; i < n_theta_; ++i) {
    const double x = nodes[i].first;
    const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
    for (int j = 0; j < n_phi_; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi_;
      grid_->centers.push_back({sx * std::cos(phi), sx * std::sin(phi), x});
      grid_->volumes.push_back(nodes[i].second * 2.0 * std::numbers::pi / n_phi_);
    }
  }

  // scaled real-harmonic tables: sqrt(2 pi / (l (l + 1))) N_lm P_lm, times
  // sqrt(2) for m > 0
  const int half = n_theta_ / 2;
  impl_->half = half;
  impl_->nc = n_phi_ / 2 + 1;
  impl_->modes.resize(l_max + 1);
  for (int m = 0; m <= l_max; ++m) {
    auto& t = impl_->modes[m];
    for (int l = std::max(m, 1); l <= l_max; ++l) ((l + m) % 2 == 0 ? t.even_l : t.odd_l).push_back(l);
    t.even.resize(half, static_cast<Eigen::Index>(t.even_l.size()));
    t.odd.resize(half, static_cast<Eigen::Index>(t.odd_l.size()));
  }
  std::vector<double> leg(gsl_sf_legendre_array_n(l_max));
  for (int i = 0; i < half; ++i) {
    gsl_sf_legendre_array_e(GSL_SF_LEGENDRE_SPHARM, l_max, nodes[i].first, 1.0, leg.data());
    for (int m = 0; m <= l_max; ++m) {
      auto& t = impl_->modes[m];
      const double mscale = m > 0 ? std::numbers::sqrt2 : 1.0;
      auto fill = [&](const std::vector<int>& ls, Eigen::MatrixXd& dst) {
        for (std::size_t j = 0; j < ls.size(); ++j) {
          const int l = ls[j];
          dst(i, static_cast<Eigen::Index>(j)) = mscale * std::sqrt(2.0 * std::numbers::pi / (l * (l + 1.0))) *
                                                 leg[gsl_sf_legendre_array_index(l, m)];
        }
      };
      fill(t.even_l, t.even);
      fill(t.odd_l, t.odd);
    }
  }

  std::lock_guard lock(fftw_planner_mutex());
  fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(n_theta_) * impl_->nc);
  double* out = fftw_alloc_real(static_cast<std::size_t>(n_theta_) * n_phi_);
  const int n = n_phi_;
  impl_->plan = fftw_plan_many_dft_c2r(1, &n, n_theta_, in, nullptr, 1, impl_->nc, out, nullptr, 1,
                                       n_phi_, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
}

SphereSampler::~SphereSampler() {
  std::lock_guard lock(fftw_planner_mutex());
  if (impl_->plan) fftw_destroy_plan(impl_->plan);
}

std::size_t SphereSampler::n_coefficients() const noexcept {
  return static_cast<std::size_t>(l_max_ + 1) * (l_max_ + 1) - 1;
}

void SphereSampler::sample_batch(std::uint64_t seed, std::uint64_t first_index, int count,
                                 Eigen::MatrixXd& out) const {
  if (count < 1) throw DomainError("SphereSampler::sample_batch: count must be positive");
  const std::size_t n_cells = grid_->size();
  const int half = impl_->half;
  const int nc = impl_->nc;
  const Eigen::Index ncoef = static_cast<Eigen::Index>(n_coefficients());

  Eigen::MatrixXd coef(ncoef, count);
  for (int b = 0; b < count; ++b) {
    SampleRng rng(seed, GeometryKind::round_sphere, l_max_, first_index + static_cast<std::uint64_t>(b));
    for (Eigen::Index k = 0; k < ncoef; ++k) coef(k, b) = rng.normal();
  }

  // spectra[b][ring][m]
  const std::size_t per_sample = static_cast<std::size_t>(n_theta_) * nc;
  fftw_complex* spec = fftw_alloc_complex(per_sample * count);
  std::fill_n(&spec[0][0], 2 * per_sample * count, 0.0);

  Eigen::MatrixXd ae, ao, re, ro;
  for (int m = 0; m <= l_max_; ++m) {
    const auto& t = impl_->modes[m];
    const int parts = m == 0 ? 1 : 2;
    const int cols = parts * count;
    ae.resize(static_cast<Eigen::Index>(t.even_l.size()), cols);
    ao.resize(static_cast<Eigen::Index>(t.odd_l.size()), cols);
    for (int b = 0; b < count; ++b) {
      for (int p = 0; p < parts; ++p) {
        const bool sine = p == 1;
        for (std::size_t j = 0; j < t.even_l.size(); ++j) {
          ae(static_cast<Eigen::Index>(j), b * parts + p) = coef(static_cast<Eigen::Index>(coefficient_index(t.even_l[j], m, sine)), b);
        }
        for (std::size_t j = 0; j < t.odd_l.size(); ++j) {
          ao(static_cast<Eigen::Index>(j), b * parts + p) = coef(static_cast<Eigen::Index>(coefficient_index(t.odd_l[j], m, sine)), b);
        }
      }
    }
    re.noalias() = t.even * ae;
    ro.noalias() = t.odd * ao;
    const double scale = m == 0 ? 1.0 : 0.5;
    for (int b = 0; b < count; ++b) {
      fftw_complex* s = spec + per_sample * b;
      for (int i = 0; i < half; ++i) {
        const int north = i, south = n_theta_ - 1 - i;
        const double ce = re(i, b * parts), co = ro(i, b * parts);
        s[static_cast<std::size_t>(north) * nc + m][0] = scale * (ce + co);
        s[static_cast<std::size_t>(south) * nc + m][0] = scale * (ce - co);
        if (parts == 2) {
          const double se = re(i, b * parts + 1), so = ro(i, b * parts + 1);
          s[static_cast<std::size_t>(north) * nc + m][1] = -scale * (se + so);
          s[static_cast<std::size_t>(south) * nc + m][1] = -scale * (se - so);
        }
      }
    }
  }

  out.resize(static_cast<Eigen::Index>(n_cells), count);
  double* buf = fftw_alloc_real(n_cells);
  for (int b = 0; b < count; ++b) {
    fftw_execute_dft_c2r(impl_->plan, spec + per_sample * b, buf);
    std::copy(buf, buf + n_cells, out.col(b).data());
  }
  fftw_free(buf);
  fftw_free(spec);
}

FieldSample SphereSampler::sample(std::uint64_t seed, std::uint64_t index) const {
  Eigen::MatrixXd m;
  sample_batch(seed, index, 1, m);
  FieldSample s;
  s.geometry = SurfaceGeometry(GeometryKind::round_sphere, l_max_);
  s.mode_cutoff = l_max_;
  s.seed = seed;
  s.index = index;
  s.grid = grid_;
  s.values.assign(m.data(), m.data() + m.size());
  s.sigma2.assign(s.values.size(), sigma2_);
  return s;
}

FieldSample sample_sphere(int l_max, std::uint64_t seed, std::uint64_t index) {
  return SphereSampler(l_max).sample(seed, index);
}

}  // namespace lcft::fields
