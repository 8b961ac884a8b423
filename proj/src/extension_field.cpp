#include "multispread/extension_field.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "multispread/digits.hpp"
#include "multispread/errors.hpp"
#include "multispread/int_math.hpp"
#include "poly_impl.hpp"

namespace mspread {

namespace {

struct BaseOps {
  const Field* f;
  Elem add(Elem a, Elem b) const { return f->add(a, b); }
  Elem sub(Elem a, Elem b) const { return f->sub(a, b); }
  Elem mul(Elem a, Elem b) const { return f->mul(a, b); }
  Elem inv(Elem a) const { return f->inv(a); }
};

std::vector<Elem> to_digits(std::uint64_t a, std::uint64_t Q) {
  std::vector<Elem> out;
  while (a > 0) {
    out.push_back(static_cast<Elem>(a % Q));
    a /= Q;
  }
  return out;
}

std::uint64_t from_digits(const std::vector<Elem>& d, std::uint64_t Q) {
  std::uint64_t r = 0;
  for (std::size_t i = d.size(); i-- > 0;) r = r * Q + d[i];
  return r;
}

}  // namespace

struct ExtensionField::Impl {
  Field base = Field::of_order(2);
  int M = 1;
  std::uint64_t Q = 2;
  std::uint64_t order = 2;
  std::uint32_t p = 2;
  std::vector<Elem> modulus;
  std::uint64_t mask = 0;
  bool binary = false;  // Q == 2: carry-less fast path

  std::vector<std::uint32_t> exp;
  std::vector<std::uint32_t> log;

  mutable std::once_flag prim_once;
  mutable std::uint64_t primitive = 0;

  std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (binary) {
      std::uint64_t r = 0;
      const std::uint64_t top = std::uint64_t{1} << M;
      while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= mask;
      }
      return r;
    }
    const BaseOps ops{&base};
    auto prod = detail::poly_mul(to_digits(a, Q), to_digits(b, Q), ops);
    return from_digits(detail::poly_rem(std::move(prod), modulus, ops), Q);
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!log.empty()) {
      std::uint64_t s = std::uint64_t{log[a]} + log[b];
      return exp[s];
    }
    return slow_mul(a, b);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!log.empty()) {
      const std::uint64_t n = order - 1;
      return exp[static_cast<std::uint64_t>((static_cast<unsigned __int128>(log[a]) * (e % n)) % n)];
    }
    std::uint64_t r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint64_t order_of(std::uint64_t a) const {
    if (a == 0) return 0;
    std::uint64_t n = order - 1;
    for (auto r : prime_factors(order - 1)) {
      while (n % r == 0 && pow(a, n / r) == 1) n /= r;
    }
    return n;
  }

  std::uint64_t find_primitive() const {
    for (std::uint64_t g = 1; g < order; ++g)
      if (order_of(g) == order - 1) return g;
    return 1;
  }
};

ExtensionField ExtensionField::make(const Field& base, int degree, std::optional<std::uint64_t> modulus,
                                    bool require_primitive) {
  if (degree < 1) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
  const std::uint64_t Q = base.order();
  std::uint64_t order = 1;
  for (int i = 0; i < degree; ++i) {
    if (order > (std::uint64_t{1} << 62) / Q)
      throw Error(Errc::FieldTooLarge, "extension field order does not fit in 62 bits");
    order *= Q;
  }

  using Key = std::tuple<std::uint64_t, std::uint64_t, int, std::uint64_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const Impl>> cache;
  const Key key{Q, base.modulus_mask(), degree, modulus.value_or(0)};
  std::shared_ptr<const Impl> impl;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) impl = it->second;
  }

  if (!impl) {
    auto fresh = std::make_shared<Impl>();
    fresh->base = base;
    fresh->M = degree;
    fresh->Q = Q;
    fresh->order = order;
    fresh->p = base.characteristic();
    fresh->binary = (Q == 2);
    const BaseOps ops{&base};
    if (modulus) {
      if (*modulus < order || *modulus >= 2 * order)
        throw Error(Errc::InvalidModulus, "modulus mask must encode a monic polynomial of degree " +
                                              std::to_string(degree));
      fresh->modulus = to_digits(*modulus, Q);
      if (!detail::poly_irreducible(fresh->modulus, Q, ops))
        throw Error(Errc::ReducibleModulus, "extension modulus is reducible");
    } else {
      for (std::uint64_t cand = order; cand < 2 * order; ++cand) {
        auto poly = to_digits(cand, Q);
        if (detail::poly_irreducible(poly, Q, ops)) {
          fresh->modulus = std::move(poly);
          break;
        }
      }
    }
    fresh->mask = from_digits(fresh->modulus, Q);

    if (order <= kTableLimit && order > 2) {
      const std::uint64_t g = fresh->find_primitive();
      std::call_once(fresh->prim_once, [&] { fresh->primitive = g; });
      fresh->exp.assign(2 * (order - 1), 0);
      fresh->log.assign(order, 0);
      std::uint64_t x = 1;
      for (std::uint64_t i = 0; i < order - 1; ++i) {
        fresh->exp[i] = static_cast<std::uint32_t>(x);
        fresh->exp[i + order - 1] = static_cast<std::uint32_t>(x);
        fresh->log[x] = static_cast<std::uint32_t>(i);
        x = fresh->slow_mul(x, g);
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    impl = cache.emplace(key, std::move(fresh)).first->second;
  }

  ExtensionField f(std::move(impl));
  if (require_primitive && f.multiplicative_order(f.modulus_root()) != order - 1)
    throw Error(Errc::NonPrimitiveModulus, "root of the extension modulus is not primitive");
  return f;
}

const Field& ExtensionField::base() const { return impl_->base; }
int ExtensionField::degree() const { return impl_->M; }
std::uint64_t ExtensionField::order() const { return impl_->order; }
std::uint64_t ExtensionField::modulus_mask() const { return impl_->mask; }
bool ExtensionField::has_tables() const { return !impl_->log.empty(); }

std::uint64_t ExtensionField::add(std::uint64_t a, std::uint64_t b) const {
  return digit_add(a, b, impl_->p);
}
std::uint64_t ExtensionField::sub(std::uint64_t a, std::uint64_t b) const {
  return digit_sub(a, b, impl_->p);
}
std::uint64_t ExtensionField::mul(std::uint64_t a, std::uint64_t b) const { return impl_->mul(a, b); }

std::uint64_t ExtensionField::inv(std::uint64_t a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  return impl_->pow(a, impl_->order - 2);
}

std::uint64_t ExtensionField::pow(std::uint64_t a, std::uint64_t e) const { return impl_->pow(a, e); }

std::uint64_t ExtensionField::scale(Elem c, std::uint64_t a) const {
  if (c == 0 || a == 0) return 0;
  if (c == 1) return a;
  const std::uint64_t Q = impl_->Q;
  std::uint64_t r = 0, pw = 1;
  while (a > 0) {
    r += static_cast<std::uint64_t>(impl_->base.mul(c, static_cast<Elem>(a % Q))) * pw;
    a /= Q;
    pw *= Q;
  }
  return r;
}

std::uint64_t ExtensionField::primitive_element() const {
  std::call_once(impl_->prim_once, [this] { impl_->primitive = impl_->find_primitive(); });
  return impl_->primitive;
}

std::uint64_t ExtensionField::multiplicative_order(std::uint64_t a) const { return impl_->order_of(a); }

std::uint64_t ExtensionField::modulus_root() const {
  if (impl_->M >= 2) return impl_->Q;
  return impl_->base.neg(impl_->modulus[0]);
}

}  // namespace mspread
