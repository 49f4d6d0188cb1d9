#pragma once

#include <random>

#include "core/model.hpp"

namespace mel::testsupport {

inline Rational random_rational(std::mt19937_64& rng, int max_abs = 9, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_abs, max_abs);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline PerturbationSpec spec_with(int n, std::initializer_list<std::tuple<char, int, int, Rational>>
                                             entries) {
  // side/kind key: 'a' = p+ coefficient, 'b' = q+, 'c' = p-, 'd' = q-
  PerturbationSpec s;
  s.n = n;
  for (const auto& [which, i, j, v] : entries) {
    switch (which) {
      case 'a': s.a_plus[{i, j}] = v; break;
      case 'b': s.b_plus[{i, j}] = v; break;
      case 'c': s.a_minus[{i, j}] = v; break;
      case 'd': s.b_minus[{i, j}] = v; break;
    }
  }
  return s;
}

}  // namespace mel::testsupport
