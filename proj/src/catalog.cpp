#include "multispread/catalog.hpp"

#include <array>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "multispread/errors.hpp"
#include "multispread/int_math.hpp"
#include "multispread/io.hpp"

namespace mspread {

namespace {

using Matrix = std::vector<std::vector<Elem>>;

// Generators of the common automorphism group of X1..X4.
const Matrix kX[3] = {
    {{1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 1, 1}},
    {{1, 0, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 1, 0}},
    {{1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}},
};

using Gens = std::vector<std::vector<const char*>>;

const Gens kA = {{"00001", "00010"}, {"10110", "11001"}};
const Gens kB = {{"00111", "01110", "11111"}};
const Gens kBp = {{"10001", "10010", "11111"}};
const Gens kX1 = {{"00001", "00010", "10000"}, {"00101", "01010", "10000"}};
const Gens kX2 = {{"00001", "00100", "10000"}};
const Gens kX3 = {{"10110", "11001", "10000"}};
const Gens kX4 = {{"00111", "01110", "10000"}, {"00101", "01010", "10000"}};

const std::vector<std::vector<const char*>> k20_4 = {
    {"00101", "00012"}, {"10220", "01002"}, {"10011", "01010"}, {"12010", "00120"},
    {"10120", "01211"}, {"10021", "01200"}, {"10020", "01210"}, {"10210", "01021"},
    {"01000", "00111"}, {"10012", "00112"}, {"10021", "01022", "00120"}, {"10002", "01020", "00111"},
    {"10102", "01100", "00010"}, {"10002", "01012", "00121"}, {"10022", "01001", "00121"},
    {"10100", "01001", "00011"}, {"10022", "01011", "00121"}, {"10000", "01010", "00001"},
    {"11100", "00010", "00001"}, {"10100", "01200", "00001"}, {"10010", "01002", "00101"},
    {"10202", "01101", "00011"}, {"10010", "01012", "00121"}, {"10000", "01102", "00010"},
    {"10022", "01020", "00102"}, {"10001", "01022", "00102"}, {"10002", "01021", "00100"},
    {"10011", "01011", "00102"}, {"10012", "01001", "00100"}, {"10202", "01202", "00010"},
    {"10022", "01020", "00100"}, {"10001", "01001", "00100"}, {"10100", "01110", "00001"},
    {"10000", "01011", "00112"}, {"10200", "01102", "00011"}, {"10000", "01000", "00122"},
    {"10010", "01022", "00102"}, {"10001", "01022", "00110"},
};

const std::vector<std::vector<const char*>> k12_5 = {
    {"10112", "01210"}, {"01011", "00111"}, {"10201", "01111"}, {"12010", "00001"},
    {"10000", "01110"}, {"11000", "00102"}, {"10100", "01002", "00010"}, {"10202", "01001", "00011"},
    {"10010", "00120", "00001"}, {"10202", "01002", "00011"}, {"10011", "01011", "00120"},
    {"10021", "01022", "00110"}, {"10001", "01202", "00010"}, {"10002", "00100", "00012"},
    {"10010", "01021", "00110"}, {"10020", "01000", "00110"}, {"10002", "01000", "00111"},
    {"10002", "01002", "00011"}, {"10020", "01022", "00120"}, {"10022", "01001", "00111"},
    {"10001", "01000", "00121"}, {"10022", "01012", "00121"}, {"10021", "01022", "00101"},
    {"10010", "01000", "00101"}, {"10010", "01020", "00101"}, {"10102", "01001", "00012"},
    {"01100", "00010", "00001"}, {"10001", "01202", "00011"}, {"10002", "01000", "00102"},
    {"10020", "01001", "00101"}, {"10000", "01002", "00121"}, {"11001", "00100", "00010"},
    {"10022", "01021", "00102"}, {"10012", "01012", "00112"}, {"10012", "01020", "00122"},
    {"10002", "01020", "00100"}, {"10001", "01010", "00112"}, {"10201", "01202", "00012"},
    {"12000", "00101", "00012"}, {"10022", "01002", "00122"}, {"10011", "01021", "00112"},
    {"10012", "01012", "00100"}, {"10102", "01201", "00010"}, {"10022", "01001", "00100"},
    {"10021", "01020", "00112"}, {"10000", "01011", "00122"}, {"10001", "01010", "00120"},
};

const char* const k9_3 =
    "multispread v1\n"
    "q=2 m=7 t=4\n"
    "sub mult=1 : 0x40 0x20 0x10\n"
    "sub mult=1 : 0x41 0x22 0x14\n"
    "sub mult=1 : 0x42 0x2d 0x1c\n"
    "sub mult=1 : 0x45 0x2c 0x13\n"
    "sub mult=1 : 0x49 0x2e 0x12\n"
    "sub mult=1 : 0x52 0x24 0x0e\n"
    "sub mult=1 : 0x62 0x16 0x09\n"
    "sub mult=1 : 0x65 0x08 0x03\n"
    "sub mult=1 : 0x23 0x19 0x04\n"
    "sub mult=1 : 0x42 0x25 0x15 0x0d\n"
    "sub mult=1 : 0x43 0x21 0x13 0x08\n"
    "sub mult=1 : 0x43 0x27 0x12 0x0c\n"
    "sub mult=1 : 0x44 0x25 0x16 0x0e\n"
    "sub mult=1 : 0x46 0x25 0x11 0x0a\n"
    "sub mult=1 : 0x47 0x23 0x14 0x0c\n"
    "sub mult=1 : 0x40 0x21 0x1a 0x07\n"
    "sub mult=1 : 0x48 0x20 0x11 0x06\n"
    "sub mult=1 : 0x48 0x22 0x11 0x06\n"
    "sub mult=1 : 0x4a 0x21 0x19 0x07\n"
    "sub mult=1 : 0x4c 0x28 0x1a 0x01\n"
    "sub mult=1 : 0x43 0x32 0x0a 0x05\n"
    "sub mult=1 : 0x45 0x34 0x0d 0x02\n"
    "sub mult=1 : 0x54 0x34 0x0c 0x01\n"
    "sub mult=1 : 0x41 0x10 0x0a 0x05\n"
    "sub mult=1 : 0x44 0x15 0x09 0x02\n"
    "sub mult=1 : 0x28 0x04 0x02 0x01\n";

// GF(2^9) = GF(2)[z]/(z^9+z^4+1) with alpha = z; field elements double as
// vectors of F_2^9. Data: exponents of alpha for the coset 3-subspaces and for the
// 4-subspaces V whose F_8^*-multiples are taken.
struct F512Data {
  std::vector<int> cosets;
  std::vector<std::array<int, 4>> vs;
};

const F512Data kPartition = {
    {0, 1, 4, 10, 11, 14, 19, 21, 22, 23, 24, 25, 26, 30, 32, 37, 39, 44, 49, 50, 52, 53, 55, 61, 62, 63, 70, 72},
    {{59, 184, 363, 378}, {3, 81, 235, 332}, {36, 64, 307, 361}},
};

const F512Data k13_2 = {
    {8, 11, 19, 20, 23, 34, 35, 37, 43, 44, 50, 51, 62},
    {{0, 1, 2, 3},
     {7, 9, 453, 167},
     {12, 159, 89, 178},
     {0, 78, 448, 158},
     {3, 442, 225, 86},
     {2, 372, 17, 164},
     {5, 83, 453, 382},
     {1, 150, 444, 374}},
};

const F512Data k12_3 = {
    {0, 2, 4, 25, 32, 36, 50, 56, 62, 66, 68, 72},
    {{12, 13, 191, 346},
     {27, 63, 64, 326},
     {20, 25, 26, 287},
     {54, 55, 96, 487},
     {15, 16, 186, 423},
     {27, 28, 99, 394},
     {2, 48, 59, 378},
     {24, 121, 226, 354},
     {63, 85, 179, 237},
     {31, 41, 97, 362},
     {59, 85, 327, 482},
     {21, 50, 104, 477},
     {18, 30, 93, 280}},
};

// Row vector times matrix.
Vec apply(const Space& sp, const Matrix& mat, Vec v) {
  const auto c = sp.coords(v);
  std::vector<Elem> out(c.size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) {
      out[i] = sp.field().add(out[i], sp.field().mul(mat[j][i], c[j]));
    }
  return sp.from_coords(out);
}

std::set<Subspace> orbit(const Space& sp, const Subspace& start) {
  std::set<Subspace> seen{start};
  std::vector<Subspace> todo{start};
  while (!todo.empty()) {
    Subspace u = todo.back();
    todo.pop_back();
    for (const auto& g : kX) {
      std::vector<Vec> img;
      for (Vec r : u.basis()) img.push_back(apply(sp, g, r));
      Subspace w = sp.span(img);
      if (seen.insert(w).second) todo.push_back(w);
    }
  }
  return seen;
}

Subspace from_strings(const Space& sp, const std::vector<const char*>& vs) {
  std::vector<Vec> rows;
  for (auto s : vs) rows.push_back(sp.from_digit_string(s));
  return sp.span(rows);
}

MemberMap orbit_union(const Space& sp, const std::vector<const Gens*>& parts) {
  std::set<Subspace> all;
  for (auto* gens : parts)
    for (const auto& g : *gens) {
      auto o = orbit(sp, from_strings(sp, g));
      all.insert(o.begin(), o.end());
    }
  MemberMap out;
  for (const auto& u : all) out[u] = 1;
  return out;
}

Multispread x_instance(int which) {
  const Space sp = Space::over(2, 5);
  std::vector<const Gens*> parts;
  switch (which) {
    case 1:
      parts = {&kX1, &kB, &kA};
      break;
    case 2:
      parts = {&kX2, &kB, &kA};
      break;
    case 3:
      parts = {&kX3, &kBp, &kA};
      break;
    default:
      parts = {&kX4, &kBp, &kA};
      break;
  }
  return Multispread::verified(sp, orbit_union(sp, parts), 3);
}

Multispread list_instance(const std::vector<std::vector<const char*>>& data) {
  const Space sp = Space::over(3, 5);
  MemberMap members;
  for (const auto& g : data) members[from_strings(sp, g)] += 1;
  return Multispread::verified(sp, std::move(members), 3);
}

MemberMap f512_members(const F512Data& data) {
  const Field f = Field::make(2, 9, 0x211, true);
  const Space sp = Space::over(2, 9);
  const Elem alpha = 2;
  if (f.multiplicative_order(alpha) != 511)
    throw Error(Errc::NonPrimitiveModulus, "z is not primitive modulo z^9+z^4+1");
  MemberMap members;
  for (int i : data.cosets) {
    std::vector<Vec> rows;
    for (int j = 0; j < 7; ++j) rows.push_back(f.pow(alpha, static_cast<std::uint64_t>(i + 73 * j)));
    members[sp.span(rows)] += 1;
  }
  for (const auto& v : data.vs) {
    for (int j = 0; j < 7; ++j) {
      const Elem beta = f.pow(alpha, static_cast<std::uint64_t>(73 * j));
      std::vector<Vec> rows;
      for (int e : v) rows.push_back(f.mul(beta, f.pow(alpha, static_cast<std::uint64_t>(e))));
      members[sp.span(rows)] += 1;
    }
  }
  return members;
}

const Space& f512_space() {
  static const Space sp = Space::over(2, 9);
  return sp;
}

CatalogInstance build(const std::string& name) {
  CatalogInstance c;
  c.name = name;
  const auto ms = [&](Multispread x) {
    c.title = x.params().to_string();
    c.multispread = std::move(x);
  };
  if (name.size() == 2 && name[0] == 'X' && name[1] >= '1' && name[1] <= '4') {
    ms(x_instance(name[1] - '0'));
  } else if (name == "q3-m5-l20-mu4") {
    ms(list_instance(k20_4));
  } else if (name == "q3-m5-l12-mu5") {
    ms(list_instance(k12_5));
  } else if (name == "q2-m7-l9-mu3") {
    ms(parse_multispread(k9_3));
  } else if (name == "q2-m9-partition") {
    auto part = MultifoldPartition::verified(f512_space(), f512_members(kPartition));
    c.title = part.summary();
    c.partition = std::move(part);
  } else if (name == "q2-m9-l13-mu2") {
    ms(Multispread::verified(f512_space(), f512_members(k13_2), 4));
  } else if (name == "q2-m9-l12-mu3") {
    ms(Multispread::verified(f512_space(), f512_members(k12_3), 4));
  } else {
    throw Error(Errc::UnknownCatalogEntry, "no catalog entry named '" + name + "'");
  }
  return c;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"X1", "X2", "X3", "X4", "q3-m5-l20-mu4", "q3-m5-l12-mu5", "q2-m7-l9-mu3",
          "q2-m9-partition", "q2-m9-l13-mu2", "q2-m9-l12-mu3"};
}

const CatalogInstance& catalog_entry(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, CatalogInstance> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build(name)).first;
  return it->second;
}

std::vector<CatalogInstance> appendix_catalog() {
  std::vector<CatalogInstance> out;
  for (const auto& n : catalog_names()) out.push_back(catalog_entry(n));
  return out;
}

std::vector<CatalogExpectation> catalog_expectations() {
  const auto p = [](std::uint32_t q, int m, int t, std::int64_t l, std::int64_t mu) {
    return MultispreadParams{q, m, t, l, mu, 0};
  };
  return {
      {"X1", p(2, 5, 3, 5, 3), 0, {{2, 5}, {3, 9}}},
      {"X2", p(2, 5, 3, 5, 3), 0, {{2, 5}, {3, 9}}},
      {"X3", p(2, 5, 3, 5, 3), 0, {{2, 5}, {3, 9}}},
      {"X4", p(2, 5, 3, 5, 3), 0, {{2, 5}, {3, 9}}},
      {"q3-m5-l20-mu4", p(3, 5, 3, 20, 4), 0, {{2, 10}, {3, 28}}},
      {"q3-m5-l12-mu5", p(3, 5, 3, 12, 5), 0, {{2, 6}, {3, 41}}},
      {"q2-m7-l9-mu3", p(2, 7, 4, 9, 3), 0, {{3, 9}, {4, 17}}},
      {"q2-m9-partition", p(2, 9, 0, 0, 0), 1, {{3, 28}, {4, 21}}},
      {"q2-m9-l13-mu2", p(2, 9, 4, 13, 2), 0, {{3, 13}, {4, 56}}},
      {"q2-m9-l12-mu3", p(2, 9, 4, 12, 3), 0, {{3, 12}, {4, 91}}},
  };
}

std::string check_catalog_entry(const CatalogExpectation& expected) {
  std::ostringstream err;
  try {
    const auto& c = catalog_entry(expected.name);
    if (expected.nu > 0) {
      if (!c.partition) return "not a partition";
      if (c.partition->nu() != expected.nu) err << "nu=" << c.partition->nu() << " ";
      for (auto [d, k] : expected.dims)
        if (c.partition->count_dim(d) != k) err << "dim " << d << " count " << c.partition->count_dim(d) << " ";
    } else {
      if (!c.multispread) return "not a multispread";
      auto got = c.multispread->params();
      got.n = 0;
      if (!(got == expected.params)) err << "got " << got.to_string() << " ";
      for (auto [d, k] : expected.dims)
        if (c.multispread->count_dim(d) != k) err << "dim " << d << " count " << c.multispread->count_dim(d) << " ";
    }
  } catch (const std::exception& e) {
    return e.what();
  }
  return err.str();
}

}  // namespace mspread
