#include "multispread/space.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

#include "multispread/digits.hpp"
#include "multispread/errors.hpp"
#include "multispread/int_math.hpp"

namespace mspread {

Space::Space(Field field, int m) : field_(std::move(field)), q_(field_.order()), p_(field_.characteristic()), m_(m) {
  if (m < 1) throw Error(Errc::InvalidArgument, "ambient dimension must be >= 1");
  size_ = 1;
  for (int i = 0; i < m; ++i) {
    if (size_ > (std::uint64_t{1} << 62) / q_)
      throw Error(Errc::AmbientTooLarge, "q^m does not fit in 62 bits");
    size_ *= q_;
  }
  place_.assign(m, 1);
  for (int i = m - 2; i >= 0; --i) place_[i] = place_[i + 1] * q_;
}

Space Space::over(std::uint64_t q, int m) { return Space(Field::of_order(q), m); }

Elem Space::coord(Vec v, int i) const { return static_cast<Elem>((v / place_[i]) % q_); }

std::vector<Elem> Space::coords(Vec v) const {
  std::vector<Elem> c(m_);
  for (int i = m_ - 1; i >= 0; --i) {
    c[i] = static_cast<Elem>(v % q_);
    v /= q_;
  }
  return c;
}

Vec Space::from_coords(const std::vector<Elem>& c) const {
  if (static_cast<int>(c.size()) != m_) throw Error(Errc::MixedAmbient, "coordinate count differs from m");
  Vec v = 0;
  for (Elem e : c) {
    if (e >= q_) throw Error(Errc::InvalidArgument, "coordinate out of range");
    v = v * q_ + e;
  }
  return v;
}

Vec Space::unit(int i) const { return place_[i]; }
Vec Space::add(Vec a, Vec b) const { return digit_add(a, b, p_); }
Vec Space::sub(Vec a, Vec b) const { return digit_sub(a, b, p_); }
Vec Space::neg(Vec a) const { return digit_neg(a, p_); }

Vec Space::scale(Elem c, Vec v) const {
  if (c == 0) return 0;
  if (c == 1) return v;
  if (field_.is_prime_field()) {
    Vec r = 0, pw = 1;
    while (v > 0) {
      r += ((v % q_) * c % q_) * pw;
      v /= q_;
      pw *= q_;
    }
    return r;
  }
  Vec r = 0, pw = 1;
  while (v > 0) {
    r += static_cast<Vec>(field_.mul(c, static_cast<Elem>(v % q_))) * pw;
    v /= q_;
    pw *= q_;
  }
  return r;
}

Elem Space::dot(Vec a, Vec b) const {
  if (q_ == 2) return std::popcount(a & b) & 1;
  Elem s = 0;
  while (a > 0 && b > 0) {
    s = field_.add(s, field_.mul(static_cast<Elem>(a % q_), static_cast<Elem>(b % q_)));
    a /= q_;
    b /= q_;
  }
  return s;
}

void Space::check(const Subspace& s) const {
  if (s.ambient() != m_ || s.q() != q_)
    throw Error(Errc::MixedAmbient, "subspace of F_" + std::to_string(s.q()) + "^" + std::to_string(s.ambient()) +
                                        " used in F_" + std::to_string(q_) + "^" + std::to_string(m_));
}

Subspace Space::rref(std::vector<std::vector<Elem>> rows) const {
  std::size_t rank = 0;
  for (int col = 0; col < m_ && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    auto& r = rows[rank];
    if (r[col] != 1) {
      const Elem inv = field_.inv(r[col]);
      for (int j = col; j < m_; ++j) r[j] = field_.mul(r[j], inv);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const Elem f = rows[i][col];
      for (int j = col; j < m_; ++j) rows[i][j] = field_.sub(rows[i][j], field_.mul(f, r[j]));
    }
    ++rank;
  }
  std::vector<Vec> out;
  out.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) out.push_back(from_coords(rows[i]));
  return make(std::move(out));
}

Subspace Space::span(const std::vector<Vec>& vectors) const {
  for (Vec v : vectors)
    if (v >= size_) throw Error(Errc::MixedAmbient, "vector " + std::to_string(v) + " outside F_q^m");
  if (q_ == 2) {
    std::vector<Vec> by_top(m_, 0);
    for (Vec v : vectors) {
      while (v != 0) {
        const int top = std::bit_width(v) - 1;
        if (by_top[top] == 0) {
          by_top[top] = v;
          break;
        }
        v ^= by_top[top];
      }
    }
    std::vector<Vec> rows;
    for (int b = m_ - 1; b >= 0; --b)
      if (by_top[b] != 0) rows.push_back(by_top[b]);
    // back-substitute so every pivot column is clear in the other rows
    for (std::size_t i = rows.size(); i-- > 0;) {
      const Vec piv = Vec{1} << (std::bit_width(rows[i]) - 1);
      for (std::size_t j = 0; j < i; ++j)
        if (rows[j] & piv) rows[j] ^= rows[i];
    }
    return make(std::move(rows));
  }
  std::vector<std::vector<Elem>> rows;
  rows.reserve(vectors.size());
  for (Vec v : vectors)
    if (v != 0) rows.push_back(coords(v));
  return rref(std::move(rows));
}

Subspace Space::zero() const { return make({}); }

Subspace Space::full() const {
  std::vector<Vec> rows(place_.begin(), place_.end());
  return make(std::move(rows));
}

Subspace Space::sum(const Subspace& a, const Subspace& b) const {
  check(a);
  check(b);
  std::vector<Vec> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return span(all);
}

std::vector<int> Space::pivots(const Subspace& s) const {
  check(s);
  std::vector<int> out;
  out.reserve(s.dim());
  for (Vec r : s.basis()) {
    int i = 0;
    while (coord(r, i) == 0) ++i;
    out.push_back(i);
  }
  return out;
}

Subspace Space::complement(const Subspace& s) const {
  const auto piv = pivots(s);
  std::vector<bool> is_piv(m_, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Elem>> rows;
  for (int f = 0; f < m_; ++f) {
    if (is_piv[f]) continue;
    std::vector<Elem> x(m_, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = field_.neg(coord(s.basis()[i], f));
    rows.push_back(std::move(x));
  }
  return rref(std::move(rows));
}

Subspace Space::intersect(const Subspace& a, const Subspace& b) const {
  check(a);
  check(b);
  if (a == b) return a;
  return complement(sum(complement(a), complement(b)));
}

Vec Space::reduce(const Subspace& s, Vec v) const {
  check(s);
  if (q_ == 2) {
    for (Vec r : s.basis()) {
      const Vec piv = Vec{1} << (std::bit_width(r) - 1);
      if (v & piv) v ^= r;
    }
    return v;
  }
  for (Vec r : s.basis()) {
    int i = 0;
    while (coord(r, i) == 0) ++i;
    const Elem c = coord(v, i);
    if (c != 0) v = sub(v, scale(c, r));
  }
  return v;
}

bool Space::contains(const Subspace& s, Vec v) const {
  if (v >= size_) throw Error(Errc::MixedAmbient, "vector outside F_q^m");
  return reduce(s, v) == 0;
}

bool Space::includes(const Subspace& big, const Subspace& small) const {
  check(small);
  for (Vec r : small.basis())
    if (reduce(big, r) != 0) return false;
  return true;
}

void Space::for_each_vector(const Subspace& s, const std::function<void(Vec)>& f) const {
  check(s);
  const auto& rows = s.basis();
  const int d = s.dim();
  if (q_ == 2) {
    Vec v = 0;
    f(v);
    const std::uint64_t total = std::uint64_t{1} << d;
    for (std::uint64_t k = 1; k < total; ++k) {
      v ^= rows[std::countr_zero(k)];
      f(v);
    }
    return;
  }
  // multiples[i][c] = c * rows[i]; partial[i] = sum_{j >= i} digit_j * rows[j]
  std::vector<std::vector<Vec>> multiples(d, std::vector<Vec>(q_));
  for (int i = 0; i < d; ++i)
    for (Elem c = 0; c < q_; ++c) multiples[i][c] = scale(c, rows[i]);
  std::vector<Elem> digit(d, 0);
  std::vector<Vec> partial(d + 1, 0);
  while (true) {
    f(partial[0]);
    int i = 0;
    while (i < d && digit[i] == q_ - 1) {
      digit[i] = 0;
      ++i;
    }
    if (i == d) break;
    ++digit[i];
    partial[i] = add(partial[i + 1], multiples[i][digit[i]]);
    for (int j = i - 1; j >= 0; --j) partial[j] = partial[i];
  }
}

std::uint64_t Space::gaussian_binomial(int d) const {
  if (d < 0 || d > m_) return 0;
  // [n, k] = [n-1, k-1] + q^k [n-1, k]
  std::vector<std::int64_t> row(d + 1, 0);
  row[0] = 1;
  for (int n = 1; n <= m_; ++n)
    for (int k = std::min(n, d); k >= 1; --k)
      row[k] = checked_add(row[k - 1], checked_mul(ipow(q_, k), row[k]));
  return static_cast<std::uint64_t>(row[d]);
}

void Space::for_each_subspace(int d, const std::function<void(const Subspace&)>& f) const {
  if (d < 0 || d > m_) throw Error(Errc::InvalidArgument, "subspace dimension out of range");
  if (size_ > kEnumerationLimit) throw Error(Errc::AmbientTooLarge, "q^m exceeds 2^24");
  if (d == 0) {
    f(zero());
    return;
  }
  std::vector<int> piv(d);
  for (int i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    // free slots: (row, column) with column > pivot of the row and not a pivot column
    std::vector<bool> is_piv(m_, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::pair<int, int>> slots;
    for (int r = 0; r < d; ++r)
      for (int c = piv[r] + 1; c < m_; ++c)
        if (!is_piv[c]) slots.emplace_back(r, c);
    std::vector<Elem> val(slots.size(), 0);
    while (true) {
      std::vector<Vec> rows(d);
      for (int r = 0; r < d; ++r) rows[r] = place_[piv[r]];
      for (std::size_t k = 0; k < slots.size(); ++k)
        rows[slots[k].first] += static_cast<Vec>(val[k]) * place_[slots[k].second];
      f(make(std::move(rows)));
      std::size_t k = 0;
      while (k < val.size() && val[k] == q_ - 1) {
        val[k] = 0;
        ++k;
      }
      if (k == val.size()) break;
      ++val[k];
    }
    // next pivot combination
    int i = d - 1;
    while (i >= 0 && piv[i] == m_ - d + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
}

std::vector<Subspace> Space::enumerate_subspaces(int d) const {
  std::vector<Subspace> out;
  for_each_subspace(d, [&](const Subspace& s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  return out;
}

std::string Space::format_vector(Vec v) const {
  if (q_ == 2) {
    std::ostringstream os;
    os << "0x" << std::hex << v;
    return os.str();
  }
  return std::to_string(v);
}

Vec Space::parse_vector(std::string_view text) const {
  Vec v = 0;
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
    base = 16;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(Errc::SyntaxError, "bad vector literal '" + std::string(text) + "'");
  if (v >= size_) throw Error(Errc::MixedAmbient, "vector " + std::string(text) + " outside F_q^m");
  return v;
}

std::string Space::digit_string(Vec v) const {
  const auto c = coords(v);
  std::string out;
  for (int i = 0; i < m_; ++i) {
    if (q_ > 10 && i > 0) out += ':';
    out += std::to_string(c[i]);
  }
  return out;
}

Vec Space::from_digit_string(std::string_view text) const {
  std::vector<Elem> c;
  if (q_ > 10) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = text.find(':', start);
      const auto piece = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
      Elem e = 0;
      auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), e);
      if (ec != std::errc() || ptr != piece.data() + piece.size())
        throw Error(Errc::SyntaxError, "bad coordinate '" + std::string(piece) + "'");
      c.push_back(e);
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  } else {
    for (char ch : text) {
      if (ch == ' ') continue;
      if (ch < '0' || ch > '9') throw Error(Errc::SyntaxError, "bad coordinate digit");
      c.push_back(static_cast<Elem>(ch - '0'));
    }
  }
  return from_coords(c);
}

std::string Space::to_string(const Subspace& s) const {
  std::string out = "<";
  for (std::size_t i = 0; i < s.basis().size(); ++i) {
    if (i > 0) out += ',';
    out += digit_string(s.basis()[i]);
  }
  return out + ">";
}

}  // namespace mspread
