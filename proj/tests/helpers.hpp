#pragma once

#include "b0box/region.hpp"

#include <initializer_list>

namespace test {

inline b0box::Vector vec(std::initializer_list<double> v) {
  b0box::Vector out(static_cast<b0box::Index>(v.size()));
  b0box::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

inline bool same(const b0box::Vector& a, const b0box::Vector& b) { return a.size() == b.size() && a == b; }

}  // namespace test
