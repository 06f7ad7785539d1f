#pragma once

// Independent reference implementations used only by the tests. None of these
// share code paths with the library: they work from closed forms, partitions,
// brute force or long double trigonometry.

#include "rtc/lie_core.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

struct LieConstants {
  int dimension;
  int dualCoxeter;
  int lengthRatio;
  std::vector<int> highestRoot;
  std::vector<int> highestShortRoot;  // empty when simply laced
};

inline std::vector<int> unit(int rank, int i, int value = 1) {
  std::vector<int> v(rank, 0);
  v[i] = value;
  return v;
}

// Table of basic Lie algebra data.
inline LieConstants constants(rtc::AlgebraId a) {
  const int r = a.rank;
  switch (a.family) {
    case rtc::Family::A: {
      std::vector<int> theta(r, 0);
      theta[0] += 1;
      theta[r - 1] += 1;
      return {r * r + 2 * r, r + 1, 1, theta, {}};
    }
    case rtc::Family::B:
      return {2 * r * r + r, 2 * r - 1, 2, unit(r, 1), unit(r, 0)};
    case rtc::Family::C:
      return {2 * r * r + r, r + 1, 2, unit(r, 0, 2), unit(r, 1)};
    case rtc::Family::D:
      return {2 * r * r - r, 2 * r - 2, 1, unit(r, 1), {}};
    case rtc::Family::E:
      if (r == 6) return {78, 12, 1, unit(6, 5), {}};
      if (r == 7) return {133, 18, 1, unit(7, 0), {}};
      return {248, 30, 1, unit(8, 0), {}};
    case rtc::Family::F:
      return {52, 9, 2, unit(4, 0), unit(4, 3)};
    case rtc::Family::G:
      return {14, 4, 3, unit(2, 0), unit(2, 1)};
  }
  return {};
}

inline std::int64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

inline std::int64_t weyl_order(rtc::AlgebraId a) {
  const int r = a.rank;
  switch (a.family) {
    case rtc::Family::A:
      return factorial(r + 1);
    case rtc::Family::B:
    case rtc::Family::C:
      return (std::int64_t{1} << r) * factorial(r);
    case rtc::Family::D:
      return (std::int64_t{1} << (r - 1)) * factorial(r);
    case rtc::Family::E:
      return r == 6 ? 51840 : r == 7 ? 2903040 : 696729600;
    case rtc::Family::F:
      return 1152;
    case rtc::Family::G:
      return 12;
  }
  return 0;
}

// su(2) fusion at level k (labels are twice the spin).
inline int su2_fusion(int k, int a, int b, int c) {
  if ((a + b + c) % 2) return 0;
  return std::abs(a - b) <= c && c <= std::min(a + b, 2 * k - a - b) ? 1 : 0;
}

// Quantum dimension for sl(r+1) from the partition of the Dynkin labels,
// d = prod_{i<j} sin(pi p (l_i - l_j + j - i)/ell) / sin(pi p (j - i)/ell).
inline long double sl_qdim(const std::vector<int>& labels, int ell, int p) {
  const int n = static_cast<int>(labels.size()) + 1;
  std::vector<int> parts(n, 0);
  for (int i = n - 2; i >= 0; --i) parts[i] = parts[i + 1] + labels[i];
  const long double pi = std::acos(-1.0L);
  long double d = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d *= std::sin(pi * p * (parts[i] - parts[j] + j - i) / ell) / std::sin(pi * p * (j - i) / ell);
  return d;
}

// Number of sl(r+1) level-k integrable weights: C(k + r, r).
inline std::int64_t binomial(int n, int k) {
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Legendre symbol by Euler's criterion, Jacobi symbol by factoring n.
inline int legendre(std::int64_t a, std::int64_t prime) {
  a %= prime;
  if (a < 0) a += prime;
  if (a == 0) return 0;
  std::int64_t result = 1, base = a, e = (prime - 1) / 2;
  while (e) {
    if (e & 1) result = result * base % prime;
    base = base * base % prime;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

inline int jacobi(std::int64_t a, std::int64_t n) {
  int out = 1;
  for (std::int64_t f = 3; n > 1; f += 2) {
    if (f * f > n) f = n;
    while (n % f == 0) {
      out *= legendre(a, f);
      n /= f;
    }
  }
  return out;
}

}  // namespace oracle
