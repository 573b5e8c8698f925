/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials in ascending-degree storage.
 *
 * Templated on the scalar so the first-integral construction can be replayed
 * in exact rational arithmetic by the tests.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace rotwave::poly {

template <class T>
using Coeffs = std::vector<T>;

template <class T>
[[nodiscard]] T horner(std::span<const T> c, const T& x) {
  T acc{0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class T>
[[nodiscard]] Coeffs<T> derivative(std::span<const T> c) {
  if (c.size() <= 1) return {T{0}};
  Coeffs<T> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * T(static_cast<long>(i));
  return d;
}

/// Antiderivative with zero constant term.
template <class T>
[[nodiscard]] Coeffs<T> antiderivative(std::span<const T> c) {
  Coeffs<T> a(c.size() + 1, T{0});
  for (std::size_t i = 0; i < c.size(); ++i) a[i + 1] = c[i] / T(static_cast<long>(i + 1));
  return a;
}

template <class T>
[[nodiscard]] Coeffs<T> multiply(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) return {};
  Coeffs<T> r(a.size() + b.size() - 1, T{0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

/// Coefficients of p(x) re-expanded in powers of t = x - s (Taylor shift).
template <class T>
[[nodiscard]] Coeffs<T> taylor_shift(std::span<const T> c, const T& s) {
  Coeffs<T> r(c.begin(), c.end());
  const std::size_t n = r.size();
  // Repeated synthetic division by (x - s).
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) r[j - 1] += s * r[j];
  return r;
}

/// (x - s)^n expanded in powers of x.
template <class T>
[[nodiscard]] Coeffs<T> binomial_power(const T& s, int n) {
  Coeffs<T> r{T{1}};
  const Coeffs<T> lin{T{0} - s, T{1}};
  for (int i = 0; i < n; ++i) r = multiply<T>(r, lin);
  return r;
}

template <class T>
void trim(Coeffs<T>& c) {
  while (c.size() > 1 && c.back() == T{0}) c.pop_back();
}

}  // namespace rotwave::poly
