#pragma once

#include <initializer_list>
#include <random>
#include <string>

#include "doctest.h"
#include "umb/catalog.hpp"
#include "umb/error.hpp"

namespace umb::test {

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Vec uniform_in(const Box& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Vec x(b.lo.size());
  for (int i = 0; i < x.size(); ++i) x(i) = b.lo(i) + U(rng) * (b.hi(i) - b.lo(i));
  return x;
}

// Runs f and reports the library error code it threw, if any.
template <class F>
std::string error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(code_name(e.code()));
  }
  return "none";
}

}  // namespace umb::test
