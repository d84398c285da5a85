#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "lcft/errors.hpp"
#include "lcft/virasoro/young.hpp"

namespace lcft::virasoro {

using Rational = boost::multiprecision::cpp_rational;

/// Row-major dense square matrix over an arbitrary field type.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, T(0)) {}

  int rows() const noexcept { return n_; }
  int cols() const noexcept { return n_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_ = 0;
  std::vector<T> data_;
};

/// Shapovalov form at one level, indexed by partitions(level).
template <class T>
struct GramMatrix {
  int level = 0;
  T delta{};
  T c{};
  std::vector<YoungDiagram> basis;
  DenseMatrix<T> entries;
};

/// Descendants of a highest-weight vector |Delta> with central charge c.
/// States are linear combinations of the ordered basis L_{-nu}|Delta>; the
/// action of a single mode L_m is reduced to this basis with
///   [L_n, L_m] = (n - m) L_{n+m} + (c/12)(n^3 - n) delta_{n+m,0}.
/// Results are memoized per instance, so an instance is not thread-safe but
/// separate instances are independent.
template <class T>
class VermaModule {
 public:
  using State = std::map<YoungDiagram, T>;

  VermaModule(T delta, T c) : delta_(std::move(delta)), c_(std::move(c)) {}

  const T& delta() const noexcept { return delta_; }
  const T& central_charge() const noexcept { return c_; }

  /// L_m L_{-nu} |Delta> expanded in the ordered basis.
  const State& apply(int m, const YoungDiagram& nu) {
    const auto key = std::make_pair(m, nu);
    if (auto it = apply_memo_.find(key); it != apply_memo_.end()) return it->second;
    State out = compute_apply(m, nu);
    return apply_memo_.emplace(key, std::move(out)).first->second;
  }

  /// <L_{-a} Delta, L_{-b} Delta> = <Delta| L_{a_k} ... L_{a_1} L_{-b} |Delta>.
  T inner(const YoungDiagram& a, const YoungDiagram& b) {
    if (a.size() != b.size()) return T(0);
    if (a.empty()) return T(1);
    const auto key = std::make_pair(a, b);
    if (auto it = gram_memo_.find(key); it != gram_memo_.end()) return it->second;
    const State& s = apply(a[0], b);
    const YoungDiagram rest = a.tail();
    T sum(0);
    for (const auto& [mu, coeff] : s) sum += coeff * inner(rest, mu);
    gram_memo_.emplace(key, sum);
    return sum;
  }

  GramMatrix<T> gram(int level) {
    GramMatrix<T> g;
    g.level = level;
    g.delta = delta_;
    g.c = c_;
    g.basis = partitions(level);
    const int n = static_cast<int>(g.basis.size());
    g.entries = DenseMatrix<T>(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const T v = inner(g.basis[i], g.basis[j]);
        g.entries(i, j) = v;
        g.entries(j, i) = v;
      }
    }
    return g;
  }

 private:
  static void add_to(State& target, const State& src, const T& scale) {
    for (const auto& [mu, coeff] : src) {
      auto [it, inserted] = target.try_emplace(mu, T(0));
      it->second += scale * coeff;
      if (it->second == T(0)) target.erase(it);
    }
  }

  // L_{-k} applied to a general state.
  State lower(int k, const State& s) {
    State out;
    for (const auto& [mu, coeff] : s) add_to(out, apply(-k, mu), coeff);
    return out;
  }

  State compute_apply(int m, const YoungDiagram& nu) {
    State out;
    if (nu.empty()) {
      if (m == 0) out.emplace(nu, delta_);
      if (m < 0) out.emplace(YoungDiagram{-m}, T(1));
      return out;
    }
    if (m == 0) {
      out.emplace(nu, delta_ + T(nu.size()));
      return out;
    }
    const int n1 = nu[0];
    const YoungDiagram rest = nu.tail();
    if (m < 0) {
      const int k = -m;
      if (k >= n1) {
        out.emplace(nu.prepend(k), T(1));
        return out;
      }
      // L_{-k} L_{-n1} R = L_{-n1} L_{-k} R + (n1 - k) L_{-k-n1} R
      State inner_state = apply(-k, rest);
      out = lower(n1, inner_state);
      add_to(out, apply(-k - n1, rest), T(n1 - k));
      return out;
    }
    // L_m L_{-n1} R = L_{-n1} L_m R + (m + n1) L_{m-n1} R + (c/12)(m^3 - m) delta_{m,n1} R
    if (m > nu.size()) return out;
    State inner_state = apply(m, rest);
    out = lower(n1, inner_state);
    add_to(out, apply(m - n1, rest), T(m + n1));
    if (m == n1) {
      State r;
      r.emplace(rest, T(1));
      add_to(out, r, c_ * T(m * m * m - m) / T(12));
    }
    return out;
  }

  T delta_;
  T c_;
  std::map<std::pair<int, YoungDiagram>, State> apply_memo_;
  std::map<std::pair<YoungDiagram, YoungDiagram>, T> gram_memo_;
};

inline constexpr int kMaxGramLevel = 12;

/// Gram matrix at the given level (0 <= level <= 12).
template <class T>
GramMatrix<T> gram_matrix(int level, const T& delta, const T& c) {
  if (level < 0 || level > kMaxGramLevel) {
    throw DomainError("gram_matrix: level must lie in [0, " + std::to_string(kMaxGramLevel) + "]");
  }
  VermaModule<T> module(delta, c);
  return module.gram(level);
}

/// Matrix element of a primary of weight db between <delta_a| ... and the
/// descendant L_{-w}|delta>, relative to the primary matrix element, for an
/// arbitrary word w = (k_1, ..., k_n) of positive mode numbers:
///   prod_i (delta + k_i db - da + sum_{j > i} k_j).
/// It follows from iterating (n-1) db x^{-n} - x^{1-n} d/dx on the power law
/// x^{da - delta - db}, the rightmost mode acting first, and evaluating at x = 1.
template <class T>
T ward_element(const T& da, const T& db, const T& delta, const std::vector<int>& word) {
  T result(1);
  int suffix = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    result *= delta + T(*it) * db - da + T(suffix);
    suffix += *it;
  }
  return result;
}

/// Exact determinant by Gaussian elimination over a field.
template <class T>
T exact_determinant(DenseMatrix<T> a) {
  const int n = a.rows();
  T det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a(r, col) != T(0)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return T(0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col) == T(0)) continue;
      const T f = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Exact solve a x = b; throws PoleError when a is singular.
template <class T>
std::vector<T> exact_solve(DenseMatrix<T> a, std::vector<T> b) {
  const int n = a.rows();
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a(r, col) != T(0)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw PoleError("exact_solve: singular matrix");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col) == T(0)) continue;
      const T f = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  std::vector<T> x(static_cast<std::size_t>(n), T(0));
  for (int i = n - 1; i >= 0; --i) {
    T s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

}  // namespace lcft::virasoro
