#pragma once

// Brute-force Virasoro vacuum expectation values <Delta| L_{w_1} ... L_{w_n} |Delta>
// for arbitrary mode words, by adjacent transpositions with the commutator.
// Independent of lcft::virasoro's ordered-basis recursion.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

class WordExpectation {
 public:
  WordExpectation(Rational delta, Rational c) : delta_(std::move(delta)), c_(std::move(c)) {}

  Rational operator()(const std::vector<int>& w) {
    if (w.empty()) return 1;
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    Rational result = eval(w);
    memo_.emplace(w, result);
    return result;
  }

 private:
  Rational eval(const std::vector<int>& w) {
    int level = 0;
    for (int m : w) level += m;
    if (level != 0) return 0;
    if (w.front() < 0) return 0;  // <Delta| L_{-n} = 0
    if (w.back() > 0) return 0;   // L_n |Delta> = 0
    if (w.back() == 0) {
      std::vector<int> rest(w.begin(), w.end() - 1);
      return delta_ * (*this)(rest);
    }
    // rightmost nonnegative mode that has a negative mode to its right
    int i = static_cast<int>(w.size()) - 2;
    while (i >= 0 && w[i] < 0) --i;
    // w[i] >= 0 and w[i+1] < 0: swap them
    const int a = w[i], b = w[i + 1];
    std::vector<int> swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    Rational r = (*this)(swapped);
    std::vector<int> merged(w.begin(), w.begin() + i);
    merged.push_back(a + b);
    merged.insert(merged.end(), w.begin() + i + 2, w.end());
    r += Rational(a - b) * (*this)(merged);
    if (a + b == 0) {
      std::vector<int> dropped(w.begin(), w.begin() + i);
      dropped.insert(dropped.end(), w.begin() + i + 2, w.end());
      r += c_ * Rational(a * a * a - a) / 12 * (*this)(dropped);
    }
    return r;
  }

  Rational delta_, c_;
  std::map<std::vector<int>, Rational> memo_;
};

// Gram entry <L_{-a} Delta, L_{-b} Delta> for partitions a, b.
inline Rational gram_entry(WordExpectation& e, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> w(a.rbegin(), a.rend());
  for (int k : b) w.push_back(-k);
  return e(w);
}

// Ward matrix element by iterating D_n = (n-1) db x^{-n} - x^{1-n} d/dx on
// x^p with p = da - delta - db, rightmost mode first, evaluated at x = 1.
// The state is tracked as (coefficient, exponent) of a single monomial.
template <class T>
T ward_iterated(const T& da, const T& db, const T& delta, const std::vector<int>& word) {
  T coeff = 1;
  T exponent = da - delta - db;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int n = *it;
    // D_n x^e = ((n-1) db - e) x^{e-n}
    coeff *= T(n - 1) * db - exponent;
    exponent -= T(n);
  }
  return coeff;
}

}  // namespace oracle
