#include "multispread/code_bridge.hpp"

#include <numeric>
#include <optional>
#include <sstream>

#include "multispread/int_math.hpp"

namespace mspread {

Vec CodeMatrix::column(const Space& space, int c) const {
  std::vector<Elem> coords(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) coords[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
  return space.from_coords(coords);
}

std::string CodeParams::k_text() const {
  const std::int64_t g = std::gcd(k_num, k_den);
  std::int64_t num = k_num / g, den = k_den / g;
  if (den == 1) return std::to_string(num);
  std::int64_t d = den;
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  if (d != 1) return std::to_string(num) + "/" + std::to_string(den);
  std::string out = std::to_string(num / den) + ".";
  std::int64_t rem = num % den;
  while (rem != 0) {
    rem *= 10;
    out += static_cast<char>('0' + rem / den);
    rem %= den;
  }
  return out;
}

std::string CodeParams::to_string() const {
  return "[" + std::to_string(n) + "," + k_text() + "," + std::to_string(w) + "]_" + std::to_string(alphabet);
}

namespace {

CodeParams finish(std::uint32_t q, int m, int t, std::int64_t n, std::int64_t mu, std::int64_t w) {
  CodeParams p;
  const std::int64_t big_q = ipow(q, t);
  p.n = n;
  p.k_num = m;
  p.k_den = t;
  p.w = w;
  p.alphabet = static_cast<std::uint64_t>(big_q);
  p.mu = mu;
  p.lambda = checked_add(checked_mul(big_q - 1, n), -checked_mul(mu, ipow(q, m) - 1));
  p.b = checked_mul(n, big_q - 1) - p.lambda;
  p.c = mu;
  p.cr_base = q;
  p.cr_exponent = n * t - m;
  p.rank = m;
  return p;
}

}  // namespace

CodeMatrix generator_matrix(const Multispread& ms) {
  if (ms.mu() == 0) throw Error(Errc::ZeroMu, "mu = 0 gives the zero code");
  const Space& sp = ms.space();
  const int t = ms.t();
  CodeMatrix mat{sp.field(), sp.m(), static_cast<int>(ms.n()), t, {}};
  mat.rows.assign(static_cast<std::size_t>(sp.m()), {});
  for (const auto& [u, k] : ms.members()) {
    for (std::int64_t copy = 0; copy < k; ++copy) {
      for (int c = 0; c < t; ++c) {
        const Vec col = c < u.dim() ? u.basis()[static_cast<std::size_t>(c)] : 0;
        for (int i = 0; i < sp.m(); ++i) mat.rows[static_cast<std::size_t>(i)].push_back(sp.coord(col, i));
      }
    }
  }
  return mat;
}

Multispread multispread_from_matrix(const CodeMatrix& mat) {
  const Space sp(mat.field, mat.m);
  MemberMap members;
  for (int j = 0; j < mat.n; ++j) {
    std::vector<Vec> cols;
    for (int c = 0; c < mat.t; ++c) cols.push_back(mat.column(sp, j * mat.t + c));
    members[sp.span(cols)] += 1;
  }
  return Multispread::verified(sp, std::move(members), mat.t);
}

std::vector<Elem> phi_expand(const Field& field, const std::vector<Elem>& word, int t) {
  if (t < 1 || word.size() % static_cast<std::size_t>(t) != 0)
    throw Error(Errc::WidthNotMultipleOfT,
                "width " + std::to_string(word.size()) + " is not a multiple of t=" + std::to_string(t));
  const std::uint64_t q = field.order();
  const auto count = static_cast<std::uint64_t>(ipow(static_cast<std::int64_t>(q), t));
  std::vector<Elem> out;
  out.reserve(word.size() / static_cast<std::size_t>(t) * (count - 1));
  for (std::size_t base = 0; base < word.size(); base += static_cast<std::size_t>(t)) {
    for (std::uint64_t a = 1; a < count; ++a) {
      Elem sum = 0;
      std::uint64_t digits = a;
      for (int i = 0; i < t; ++i) {
        const auto ai = static_cast<Elem>(digits % q);
        digits /= q;
        sum = field.add(sum, field.mul(ai, word[base + static_cast<std::size_t>(i)]));
      }
      out.push_back(sum);
    }
  }
  return out;
}

CodeMatrix phi_expand(const CodeMatrix& mat) {
  const auto width = ipow(mat.q(), mat.t) - 1;
  CodeMatrix out{mat.field, mat.m, static_cast<int>(mat.n * width), 1, {}};
  for (const auto& row : mat.rows) out.rows.push_back(phi_expand(mat.field, row, mat.t));
  return out;
}

std::int64_t block_weight(const std::vector<Elem>& word, int t) {
  if (t < 1 || word.size() % static_cast<std::size_t>(t) != 0)
    throw Error(Errc::WidthNotMultipleOfT, "width is not a multiple of t");
  std::int64_t w = 0;
  for (std::size_t b = 0; b < word.size(); b += static_cast<std::size_t>(t))
    for (int i = 0; i < t; ++i)
      if (word[b + static_cast<std::size_t>(i)] != 0) {
        ++w;
        break;
      }
  return w;
}

std::int64_t hamming_weight(const std::vector<Elem>& word) {
  std::int64_t w = 0;
  for (Elem e : word) w += e != 0;
  return w;
}

CodeParams check_one_weight(const CodeMatrix& mat) {
  if (mat.m < 1) throw Error(Errc::InvalidArgument, "matrix has no rows");
  const std::uint64_t q = mat.q();
  const std::size_t width = static_cast<std::size_t>(mat.n) * static_cast<std::size_t>(mat.t);
  for (const auto& row : mat.rows)
    if (row.size() != width) throw Error(Errc::WidthNotMultipleOfT, "row width differs from n*t");
  std::uint64_t total = 1;
  for (int i = 0; i < mat.m; ++i) {
    total *= q;
    if (total > (std::uint64_t{1} << 24)) throw Error(Errc::AmbientTooLarge, "more than 2^24 codewords");
  }
  const Space sp(mat.field, mat.m);
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < width; ++c) cols.push_back(mat.column(sp, static_cast<int>(c)));
  const int rank = sp.span(cols).dim();

  const Field& f = mat.field;
  std::vector<Elem> msg(static_cast<std::size_t>(mat.m), 0);
  std::vector<Elem> word(width, 0);
  std::int64_t w = -1;
  Vec w_msg = 0;
  for (std::uint64_t v = 1; v < total; ++v) {
    // Odometer step, last coordinate fastest, applied to the codeword as row deltas.
    for (int i = mat.m - 1; i >= 0; --i) {
      auto& x = msg[static_cast<std::size_t>(i)];
      const Elem next = static_cast<Elem>((x + 1) % q);
      const Elem delta = f.sub(next, x);
      const auto& row = mat.rows[static_cast<std::size_t>(i)];
      for (std::size_t c = 0; c < width; ++c)
        if (row[c] != 0) word[c] = f.add(word[c], f.mul(delta, row[c]));
      x = next;
      if (next != 0) break;
    }
    const std::int64_t bw = block_weight(word, mat.t);
    if (bw == 0) continue;
    if (w < 0) {
      w = bw;
      w_msg = v;
    } else if (bw != w) {
      std::ostringstream os;
      os << "message " << sp.digit_string(w_msg) << " has weight " << w << ", message " << sp.digit_string(v)
         << " has weight " << bw;
      throw NotOneWeightError(w_msg, w, v, bw, os.str());
    }
  }
  if (w < 0) throw Error(Errc::ZeroMu, "every codeword is zero");
  const int t = mat.t;
  std::int64_t mu;
  if (rank >= t) {
    const std::int64_t scale = ipow(static_cast<std::int64_t>(q), rank - t);
    if (w % scale != 0)
      throw Error(Errc::NotOneWeight, "weight " + std::to_string(w) + " is not a multiple of q^(m-t)");
    mu = w / scale;
  } else {
    mu = checked_mul(w, ipow(static_cast<std::int64_t>(q), t - rank));
  }
  CodeParams p = finish(static_cast<std::uint32_t>(q), rank, t, mat.n, mu, w);
  p.rank = rank;
  p.rank_deficient = rank < mat.m;
  return p;
}

CodeParams code_params(const Multispread& ms) {
  const auto& par = ms.params();
  const int diff = par.m - par.t;
  std::int64_t w;
  if (diff >= 0) {
    w = checked_mul(par.mu, ipow(par.q, diff));
  } else {
    w = par.mu / ipow(par.q, -diff);
  }
  return finish(par.q, par.m, par.t, par.n, par.mu, w);
}

CodeMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  const auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++number;
      if (auto h = out.find('#'); h != std::string::npos) out.erase(h);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line) || line.substr(0, line.find_last_not_of(" \t\r") + 1) != "matrix v1")
    throw SyntaxError(number == 0 ? 1 : number, "expected 'matrix v1'");
  if (!next_line(line)) throw SyntaxError(number + 1, "missing header line");
  std::istringstream hs(line);
  std::string tok;
  std::int64_t q = 0, m = 0, n = 0, t = 0;
  std::optional<std::uint64_t> modulus;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw SyntaxError(number, "expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(val, &used, 0);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw SyntaxError(number, "bad integer '" + val + "'");
    }
    if (key == "q") q = static_cast<std::int64_t>(v);
    else if (key == "m") m = static_cast<std::int64_t>(v);
    else if (key == "n") n = static_cast<std::int64_t>(v);
    else if (key == "t") t = static_cast<std::int64_t>(v);
    else if (key == "modulus") modulus = v;
    else throw SyntaxError(number, "unknown header key '" + key + "'");
  }
  if (q == 0 || m < 1 || n < 1 || t < 1 || m > 62 || t > 62)
    throw SyntaxError(number, "header needs q=, m=, n=, t= with positive values");
  const auto pp = prime_power(static_cast<std::uint64_t>(q));
  if (pp.p == 0) throw Error(Errc::UnsupportedQ, std::to_string(q) + " is not a prime power");
  CodeMatrix mat{Field::make(pp.p, pp.l, modulus), static_cast<int>(m), static_cast<int>(n), static_cast<int>(t), {}};
  const auto width = static_cast<std::size_t>(n * t);
  while (next_line(line)) {
    std::istringstream rs(line);
    std::vector<Elem> row;
    while (rs >> tok) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &used, 0);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v >= static_cast<unsigned long>(q))
        throw SyntaxError(number, "bad field element '" + tok + "'");
      row.push_back(static_cast<Elem>(v));
    }
    if (row.size() != width)
      throw SyntaxError(number, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(width));
    mat.rows.push_back(std::move(row));
  }
  if (mat.rows.size() != static_cast<std::size_t>(m))
    throw Error(Errc::InconsistentHeader, "header declares m=" + std::to_string(m) + " but file has " +
                                              std::to_string(mat.rows.size()) + " rows");
  return mat;
}

std::string serialize_matrix(const CodeMatrix& mat) {
  std::ostringstream os;
  os << "matrix v1\nq=" << mat.q() << " m=" << mat.m << " n=" << mat.n << " t=" << mat.t;
  if (!mat.field.is_prime_field()) os << " modulus=0x" << std::hex << mat.field.modulus_mask() << std::dec;
  os << "\n";
  for (const auto& row : mat.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c];
    os << "\n";
  }
  return os.str();
}

}  // namespace mspread
