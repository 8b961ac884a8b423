#include "multispread/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "multispread/errors.hpp"
#include "multispread/int_math.hpp"

namespace mspread {

namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string line(text.substr(pos, end - pos));
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    std::size_t lead = 0;
    while (lead < line.size() && (line[lead] == ' ' || line[lead] == '\t')) ++lead;
    line.erase(0, lead);
    if (!line.empty()) out.push_back({number, std::move(line)});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::uint64_t parse_uint(const std::string& s, int line) {
  std::uint64_t v = 0;
  int base = 10;
  std::string_view sv = s;
  if (sv.size() > 2 && sv[0] == '0' && (sv[1] == 'x' || sv[1] == 'X')) {
    sv.remove_prefix(2);
    base = 16;
  }
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v, base);
  if (ec != std::errc() || ptr != sv.data() + sv.size()) throw SyntaxError(line, "bad integer '" + s + "'");
  return v;
}

std::map<std::string, std::uint64_t> parse_header(const Line& line) {
  std::map<std::string, std::uint64_t> kv;
  for (const auto& tok : tokens(line.text)) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw SyntaxError(line.number, "expected key=value, got '" + tok + "'");
    const auto key = tok.substr(0, eq);
    if (kv.count(key)) throw SyntaxError(line.number, "duplicate key '" + key + "'");
    kv[key] = parse_uint(tok.substr(eq + 1), line.number);
  }
  return kv;
}

struct Parsed {
  Space space;
  std::map<std::string, std::uint64_t> header;
  MemberMap members;
};

Parsed parse_common(std::string_view text, const std::string& magic, const std::vector<std::string>& required) {
  const auto lines = content_lines(text);
  if (lines.empty() || lines[0].text != magic) {
    const int n = lines.empty() ? 1 : lines[0].number;
    throw SyntaxError(n, "expected '" + magic + "'");
  }
  if (lines.size() < 2) throw SyntaxError(lines[0].number + 1, "missing header line");
  auto header = parse_header(lines[1]);
  for (const auto& key : required)
    if (!header.count(key)) throw SyntaxError(lines[1].number, "header lacks '" + key + "='");
  const auto q = header.at("q");
  const auto m = header.at("m");
  const auto pp = prime_power(q);
  if (pp.p == 0) throw Error(Errc::UnsupportedQ, std::to_string(q) + " is not a prime power");
  if (m < 1 || m > 62) throw SyntaxError(lines[1].number, "m out of range");
  std::optional<std::uint64_t> modulus;
  if (header.count("modulus")) modulus = header.at("modulus");
  Space space(Field::make(pp.p, pp.l, modulus), static_cast<int>(m));

  MemberMap members;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto colon = line.text.find(':');
    if (colon == std::string::npos) throw SyntaxError(line.number, "member line lacks ':'");
    const auto head = tokens(line.text.substr(0, colon));
    if (head.empty() || head[0] != "sub") throw SyntaxError(line.number, "member line must start with 'sub'");
    std::int64_t mult = 1;
    for (std::size_t k = 1; k < head.size(); ++k) {
      if (head[k].rfind("mult=", 0) != 0) throw SyntaxError(line.number, "unknown member attribute '" + head[k] + "'");
      mult = static_cast<std::int64_t>(parse_uint(head[k].substr(5), line.number));
      if (mult < 1) throw SyntaxError(line.number, "mult must be >= 1");
    }
    std::vector<Vec> vecs;
    for (const auto& tok : tokens(line.text.substr(colon + 1))) {
      const auto v = parse_uint(tok, line.number);
      if (v >= space.size()) throw SyntaxError(line.number, "vector " + tok + " outside F_q^m");
      vecs.push_back(v);
    }
    members[space.span(vecs)] += mult;
  }
  return {std::move(space), std::move(header), std::move(members)};
}

std::string header_prefix(const Space& space) {
  std::ostringstream os;
  os << "q=" << space.q() << " m=" << space.m();
  if (!space.field().is_prime_field()) os << " modulus=0x" << std::hex << space.field().modulus_mask() << std::dec;
  return os.str();
}

std::string member_lines(const Space& space, const MemberMap& members) {
  std::string out;
  for (const auto& [s, k] : members) {
    out += "sub mult=" + std::to_string(k) + " :";
    for (Vec v : s.basis()) out += " " + space.format_vector(v);
    out += "\n";
  }
  return out;
}

}  // namespace

Multispread parse_multispread(std::string_view text) {
  auto parsed = parse_common(text, "multispread v1", {"q", "m", "t"});
  const auto t = parsed.header.at("t");
  if (t < 1 || t > 62) throw SyntaxError(2, "t out of range");
  auto ms = Multispread::verified(parsed.space, std::move(parsed.members), static_cast<int>(t));
  const auto& p = ms.params();
  const std::pair<const char*, std::int64_t> declared[] = {{"lambda", p.lambda}, {"mu", p.mu}, {"n", p.n}};
  for (const auto& [key, actual] : declared) {
    auto it = parsed.header.find(key);
    if (it != parsed.header.end() && static_cast<std::int64_t>(it->second) != actual)
      throw Error(Errc::InconsistentHeader, std::string("header declares ") + key + "=" +
                                                std::to_string(it->second) + " but members give " +
                                                std::to_string(actual));
  }
  return ms;
}

std::string serialize_multispread(const Multispread& ms) {
  const auto& p = ms.params();
  std::string out = "multispread v1\n";
  out += header_prefix(ms.space()) + " t=" + std::to_string(p.t) + " lambda=" + std::to_string(p.lambda) +
         " mu=" + std::to_string(p.mu) + " n=" + std::to_string(p.n) + "\n";
  return out + member_lines(ms.space(), ms.members());
}

MultifoldPartition parse_partition(std::string_view text) {
  auto parsed = parse_common(text, "partition v1", {"q", "m"});
  auto part = MultifoldPartition::verified(parsed.space, std::move(parsed.members));
  auto it = parsed.header.find("nu");
  if (it != parsed.header.end() && static_cast<std::int64_t>(it->second) != part.nu())
    throw Error(Errc::InconsistentHeader, "header declares nu=" + std::to_string(it->second) +
                                              " but members give " + std::to_string(part.nu()));
  return part;
}

std::string serialize_partition(const MultifoldPartition& part) {
  std::string out = "partition v1\n";
  out += header_prefix(part.space()) + " nu=" + std::to_string(part.nu()) + "\n";
  return out + member_lines(part.space(), part.members());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << content;
}

}  // namespace mspread
