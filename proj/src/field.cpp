#include "multispread/field.hpp"

#include <sstream>

#include "multispread/errors.hpp"
#include "multispread/int_math.hpp"
#include "poly_impl.hpp"

namespace mspread {

namespace {

struct PrimeOps {
  std::uint32_t p;
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return (a + p - b) % p; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p);
  }
  Elem inv(Elem a) const {
    // a^(p-2) mod p
    return static_cast<Elem>(powmod(a, p - 2, p));
  }
};

}  // namespace

struct Field::Impl {
  std::uint32_t p = 2;
  int l = 1;
  std::uint32_t q = 2;
  std::vector<Elem> modulus;  // monic, size l+1
  std::uint64_t mask = 0;
  Elem primitive = 1;
  std::vector<Elem> exp;  // size 2(q-1) when tables are present
  std::vector<Elem> log;  // size q

  Elem add(Elem a, Elem b) const {
    if (p == 2) return a ^ b;
    if (l == 1) return (a + b) % p;
    Elem r = 0, pw = 1;
    for (int i = 0; i < l; ++i) {
      r += ((a % p + b % p) % p) * pw;
      a /= p;
      b /= p;
      pw *= p;
    }
    return r;
  }

  Elem neg(Elem a) const {
    if (p == 2) return a;
    if (l == 1) return (p - a) % p;
    Elem r = 0, pw = 1;
    for (int i = 0; i < l; ++i) {
      r += ((p - a % p) % p) * pw;
      a /= p;
      pw *= p;
    }
    return r;
  }

  Elem slow_mul(Elem a, Elem b) const {
    if (l == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p);
    const PrimeOps ops{p};
    auto pa = poly::from_mask(a, p);
    auto pb = poly::from_mask(b, p);
    auto prod = detail::poly_rem(detail::poly_mul(pa, pb, ops), modulus, ops);
    return static_cast<Elem>(poly::to_mask(prod, p));
  }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!log.empty()) return exp[log[a] + log[b]];
    return slow_mul(a, b);
  }

  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!log.empty()) return exp[(static_cast<std::uint64_t>(log[a]) * (e % (q - 1))) % (q - 1)];
    Elem r = 1, b = a;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, b);
      b = slow_mul(b, b);
      e >>= 1;
    }
    return r;
  }

  Elem inv(Elem a) const {
    if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    if (!log.empty()) return exp[(q - 1 - log[a]) % (q - 1)];
    return pow(a, q - 2);
  }

  std::uint64_t order_of(Elem a) const {
    if (a == 0) return 0;
    std::uint64_t n = q - 1;
    for (auto r : prime_factors(q - 1)) {
      while (n % r == 0 && pow(a, n / r) == 1) n /= r;
    }
    return n;
  }
};

namespace poly {

std::vector<Elem> from_mask(std::uint64_t mask, std::uint32_t p) {
  std::vector<Elem> out;
  while (mask > 0) {
    out.push_back(static_cast<Elem>(mask % p));
    mask /= p;
  }
  return out;
}

std::uint64_t to_mask(const std::vector<Elem>& coeffs, std::uint32_t p) {
  std::uint64_t r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * p + coeffs[i];
  return r;
}

bool is_irreducible_mod_p(const std::vector<Elem>& monic, std::uint32_t p) {
  return detail::poly_irreducible(monic, p, PrimeOps{p});
}

}  // namespace poly

Field Field::make(std::uint32_t p, int l, std::optional<std::uint64_t> modulus, bool require_primitive) {
  if (!is_prime(p)) throw Error(Errc::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (l < 1) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < l; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(Errc::FieldTooLarge, "field order exceeds 2^20");
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->l = l;
  impl->q = static_cast<std::uint32_t>(q);

  if (modulus) {
    if (*modulus < q || *modulus >= 2 * q)
      throw Error(Errc::InvalidModulus, "modulus mask must encode a monic polynomial of degree " +
                                            std::to_string(l));
    impl->modulus = poly::from_mask(*modulus, p);
    if (!poly::is_irreducible_mod_p(impl->modulus, p))
      throw Error(Errc::ReducibleModulus, "modulus factors over GF(" + std::to_string(p) + ")");
  } else {
    for (std::uint64_t mask = q; mask < 2 * q; ++mask) {
      auto cand = poly::from_mask(mask, p);
      if (poly::is_irreducible_mod_p(cand, p)) {
        impl->modulus = std::move(cand);
        break;
      }
    }
  }
  impl->mask = poly::to_mask(impl->modulus, p);

  // Primitive element search runs before tables exist (slow multiplication).
  for (Elem g = 1; g < q; ++g) {
    if (impl->order_of(g) == q - 1) {
      impl->primitive = g;
      break;
    }
  }

  if (q <= kTableLimit && q > 2) {
    impl->exp.assign(2 * (q - 1), 0);
    impl->log.assign(q, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      impl->exp[i] = x;
      impl->exp[i + q - 1] = x;
      impl->log[x] = i;
      x = impl->slow_mul(x, impl->primitive);
    }
  }

  Field f(std::move(impl));
  if (require_primitive && f.multiplicative_order(f.modulus_root()) != q - 1)
    throw Error(Errc::NonPrimitiveModulus,
                "root of modulus is not a primitive element of " + f.to_string());
  return f;
}

Field Field::of_order(std::uint64_t q) {
  auto pp = prime_power(q);
  if (pp.p == 0) throw Error(Errc::UnsupportedQ, std::to_string(q) + " is not a prime power");
  return make(pp.p, pp.l);
}

std::uint32_t Field::characteristic() const { return impl_->p; }
int Field::degree() const { return impl_->l; }
std::uint32_t Field::order() const { return impl_->q; }
std::uint64_t Field::modulus_mask() const { return impl_->mask; }
const std::vector<Elem>& Field::modulus() const { return impl_->modulus; }
bool Field::has_tables() const { return !impl_->log.empty(); }

Elem Field::add(Elem a, Elem b) const { return impl_->add(a, b); }
Elem Field::sub(Elem a, Elem b) const { return impl_->add(a, impl_->neg(b)); }
Elem Field::neg(Elem a) const { return impl_->neg(a); }
Elem Field::mul(Elem a, Elem b) const { return impl_->mul(a, b); }
Elem Field::inv(Elem a) const { return impl_->inv(a); }
Elem Field::div(Elem a, Elem b) const { return impl_->mul(a, impl_->inv(b)); }
Elem Field::pow(Elem a, std::uint64_t e) const { return impl_->pow(a, e); }
Elem Field::primitive_element() const { return impl_->primitive; }
std::uint64_t Field::multiplicative_order(Elem a) const { return impl_->order_of(a); }

Elem Field::modulus_root() const {
  if (impl_->l >= 2) return impl_->p;
  return (impl_->p - impl_->modulus[0]) % impl_->p;
}

FieldElement Field::element(Elem value) const { return FieldElement(*this, value); }

bool Field::operator==(const Field& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->p == other.impl_->p && impl_->mask == other.impl_->mask;
}

std::string Field::to_string() const {
  std::ostringstream os;
  os << "GF(" << impl_->q;
  if (impl_->l > 1) os << ", modulus=0x" << std::hex << impl_->mask;
  os << ")";
  return os.str();
}

FieldElement::FieldElement(Field field, Elem value) : field_(std::move(field)), value_(value) {
  if (value_ >= field_.order())
    throw Error(Errc::InvalidArgument, "element encoding out of range for " + field_.to_string());
}

void FieldElement::require_same(const FieldElement& o) const {
  if (field_ != o.field_)
    throw Error(Errc::FieldMismatch, field_.to_string() + " vs " + o.field_.to_string());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(o);
  return {field_, field_.add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(o);
  return {field_, field_.sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(o);
  return {field_, field_.mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same(o);
  return {field_, field_.div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_.neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_.inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }
bool FieldElement::operator==(const FieldElement& o) const {
  return field_ == o.field_ && value_ == o.value_;
}

TraceMap::TraceMap(Field field, int k) : field_(std::move(field)), k_(k) {
  if (k < 1 || field_.degree() % k != 0)
    throw Error(Errc::NonDivisorDegree,
                std::to_string(k) + " does not divide " + std::to_string(field_.degree()));
}

Elem TraceMap::operator()(Elem x) const {
  const std::uint64_t step = ipow(field_.characteristic(), k_);
  Elem sum = x, y = x;
  for (int j = 1; j < field_.degree() / k_; ++j) {
    y = field_.pow(y, step);
    sum = field_.add(sum, y);
  }
  return sum;
}

TraceMap trace_map(const Field& field, int k) { return TraceMap(field, k); }

}  // namespace mspread
