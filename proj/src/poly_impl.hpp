#pragma once

// Dense univariate polynomials over a small finite coefficient field, shared by
// GF(p^l) and by extension fields over GF(q). Coefficients are stored constant
// term first. `Ops` supplies add/sub/mul/inv on coefficient encodings.

#include <cstdint>
#include <vector>

#include "multispread/field.hpp"

namespace mspread::detail {

using Poly = std::vector<Elem>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class Ops>
Poly poly_mul(const Poly& a, const Poly& b, const Ops& ops) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = ops.add(r[i + j], ops.mul(a[i], b[j]));
    }
  }
  trim(r);
  return r;
}

// Remainder of a modulo d (d nonzero, any leading coefficient).
template <class Ops>
Poly poly_rem(Poly a, const Poly& d, const Ops& ops) {
  trim(a);
  const std::size_t dd = d.size() - 1;
  const Elem lead_inv = ops.inv(d.back());
  while (a.size() >= d.size()) {
    const Elem factor = ops.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) a[shift + i] = ops.sub(a[shift + i], ops.mul(factor, d[i]));
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
template <class Ops>
bool poly_irreducible(const Poly& f, std::uint64_t coeff_order, const Ops& ops) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  for (int d = 1; d <= deg / 2; ++d) {
    Poly g(d + 1, 0);
    g[d] = 1;
    while (true) {
      if (poly_rem(f, g, ops).empty()) return false;
      int i = 0;
      while (i < d) {
        if (++g[i] < coeff_order) break;
        g[i] = 0;
        ++i;
      }
      if (i == d) break;
    }
  }
  return true;
}

}  // namespace mspread::detail
