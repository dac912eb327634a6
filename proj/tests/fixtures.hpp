#pragma once

#include <random>

#include "tsk/engine.hpp"

namespace fx {

using namespace tsk;

inline GroundSet ground(int n, int offset = 1) {
  std::vector<std::string> l;
  for (int i = 0; i < n; ++i) l.push_back(std::to_string(i + offset));
  return GroundSet(l);
}

inline GroundSet letters(int n) {
  std::vector<std::string> l;
  for (int i = 0; i < n; ++i) l.push_back(std::string(1, static_cast<char>('a' + i)));
  return GroundSet(l);
}

inline QVector vec(std::initializer_list<Rational> xs) {
  QVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline SymmetricMap from_rows(const GroundSet& g, std::initializer_list<std::initializer_list<long>> rows) {
  SymmetricMap d(g);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long x : row) d.values(i, j++) = x;
    ++i;
  }
  return d;
}

inline SymmetricMap unit_metric(int n) {
  SymmetricMap d(ground(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) d.set(i, j, 1);
  return d;
}

/// Leaves a,b | c,d; pendant edges 1, internal edge 1.
inline SymmetricMap quartet() {
  return from_rows(letters(4), {{0, 2, 3, 3}, {2, 0, 3, 3}, {3, 3, 0, 2}, {3, 3, 2, 0}});
}

/// 1 on the cycle x-y-u-v-x, 2 on the diagonals.
inline SymmetricMap four_cycle() {
  return from_rows(GroundSet({"x", "y", "u", "v"}), {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
}

inline Rational small_rational(std::mt19937& rng, int num, int den) {
  std::uniform_int_distribution<int> n(0, num), d(1, den);
  return Rational(n(rng), d(rng));
}

}  // namespace fx
