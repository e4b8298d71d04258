// Independent reference implementations used only by the tests.
//
// Everything here works on dense arrays indexed by subset mask and follows the
// textbook formulas literally, without sharing code with the library's
// focal-pair loops.

#ifndef EVFUSE_TESTS_ORACLES_HPP
#define EVFUSE_TESTS_ORACLES_HPP

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "evfuse/belief.hpp"

namespace oracle {

using Dense = std::vector<double>;  // index = subset mask, size 2^M

inline Dense to_dense(const evfuse::Bba& bba) {
  const std::size_t n = std::size_t{1} << bba.frame().size();
  Dense d(n, 0.0);
  for (evfuse::Mask x = 1; x < n; ++x) d[x] = bba.mass(x);
  return d;
}

/// m12(X) for every X, empty set included, by double loop over all subsets.
inline Dense conjunctive(const Dense& m1, const Dense& m2) {
  const std::size_t n = m1.size();
  Dense out(n, 0.0);
  for (std::size_t x1 = 0; x1 < n; ++x1)
    for (std::size_t x2 = 0; x2 < n; ++x2) out[x1 & x2] += m1[x1] * m2[x2];
  return out;
}

/// Two-step Dempster: conjunctive, then divide by 1 - m12(empty).
inline Dense dempster(const Dense& m1, const Dense& m2) {
  Dense c = conjunctive(m1, m2);
  const double k = c[0];
  Dense out(c.size(), 0.0);
  for (std::size_t x = 1; x < c.size(); ++x) out[x] = c[x] / (1.0 - k);
  return out;
}

/// PCR5 term by term: for every non-empty X, m12(X) plus, for every Y != X
/// with X & Y empty, m1(X)^2 m2(Y) / (m1(X) + m2(Y)) + m2(X)^2 m1(Y) / (m2(X)
/// + m1(Y)). Fractions with a zero denominator are discarded.
inline Dense pcr5(const Dense& m1, const Dense& m2) {
  const std::size_t n = m1.size();
  Dense c = conjunctive(m1, m2);
  Dense out(n, 0.0);
  for (std::size_t x = 1; x < n; ++x) {
    double v = c[x];
    for (std::size_t y = 1; y < n; ++y) {
      if (y == x || (x & y) != 0) continue;
      const double d1 = m1[x] + m2[y];
      if (d1 != 0.0) v += m1[x] * m1[x] * m2[y] / d1;
      const double d2 = m2[x] + m1[y];
      if (d2 != 0.0) v += m2[x] * m2[x] * m1[y] / d2;
    }
    out[x] = v;
  }
  return out;
}

/// Truth tables (bit a = f(a)) of all monotone Boolean functions f on m
/// variables with f(0) = 0, i.e. the free-model hyper-power set, found by
/// testing every one of the 2^(2^m) functions.
inline std::set<std::uint32_t> monotone_functions(std::size_t m) {
  const std::uint32_t points = 1u << m;
  const std::uint64_t functions = std::uint64_t{1} << points;
  std::set<std::uint32_t> out;
  for (std::uint64_t f = 0; f < functions; ++f) {
    if (f & 1u) continue;  // f(empty assignment) must be false
    bool monotone = true;
    for (std::uint32_t a = 0; a < points && monotone; ++a) {
      if (!((f >> a) & 1u)) continue;
      for (std::uint32_t i = 0; i < m; ++i) {
        const std::uint32_t up = a | (1u << i);
        if (!((f >> up) & 1u)) {
          monotone = false;
          break;
        }
      }
    }
    if (monotone) out.insert(static_cast<std::uint32_t>(f));
  }
  return out;
}

/// Random BBA with 1..min(2^M - 1, 5) focal elements and Dirichlet-like
/// masses. One draw in ten is a categorical (single focal) assignment.
inline evfuse::Bba random_bba(const evfuse::Frame& frame, std::mt19937_64& rng) {
  const evfuse::Mask full = frame.full();
  std::uniform_int_distribution<evfuse::Mask> pick(1, full);
  std::uniform_int_distribution<int> coin(0, 9);
  std::exponential_distribution<double> weight(1.0);
  std::vector<evfuse::FocalElement> fe;
  if (coin(rng) == 0) {
    fe.push_back({pick(rng), 1.0});
  } else {
    const std::size_t max_focal = std::min<std::size_t>(full, 5);
    std::uniform_int_distribution<std::size_t> count(1, max_focal);
    const std::size_t n = count(rng);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      fe.push_back({pick(rng), weight(rng)});
      total += fe.back().mass;
    }
    for (auto& f : fe) f.mass /= total;
  }
  return evfuse::Bba::from_masses(frame, std::move(fe));
}

}  // namespace oracle

#endif  // EVFUSE_TESTS_ORACLES_HPP
