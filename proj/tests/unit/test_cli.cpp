#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "multispread/cli.hpp"
#include "multispread/io.hpp"

namespace fs = std::filesystem;
using namespace mspread;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run ms(std::vector<std::string> args) {
  args.insert(args.begin(), "ms");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ms_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = (path / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string name(const std::string& n) const { return (path / n).string(); }
};

const char* kExample1 =
    "multispread v1\n"
    "q=2 m=3 t=2\n"
    "sub mult=1 : 0x7\n"
    "sub mult=1 : 0x2 0x1\n"
    "sub mult=1 : 0x4 0x1\n"
    "sub mult=1 : 0x4 0x2\n"
    "sub mult=1 : 0x6 0x3\n";

}  // namespace

TEST_CASE("cli: verify prints the summary of the example multispread") {
  TempDir dir;
  const auto r = ms({"verify", dir.file("example1.ms", kExample1)});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "multispread (1,2;2,3)_2, n=5");
}

TEST_CASE("cli: feasible reports the deciding result and exit code") {
  auto r = ms({"feasible", "--q", "2", "--m", "5", "--t", "4", "--mu", "2"});
  CHECK(r.code == 1);
  CHECK(first_line(r.out) == "INFEASIBLE corollary:c:l2452");

  r = ms({"feasible", "--q", "2", "--m", "3", "--t", "2", "--mu", "2", "--lambda", "1"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out).rfind("FEASIBLE ", 0) == 0);

  r = ms({"feasible", "--q", "2", "--m", "3", "--t", "2", "--mu", "2", "--lambda", "2"});
  CHECK(r.code == 1);
}

TEST_CASE("cli: json and text carry the same facts") {
  const std::vector<std::string> args = {"feasible", "--q", "2", "--m", "5", "--t", "4", "--mu", "2"};
  auto json_args = args;
  json_args.insert(json_args.begin(), {"--format", "json"});
  const auto text = ms(args);
  const auto js = ms(json_args);
  CHECK(js.code == text.code);
  const auto j = nlohmann::ordered_json::parse(js.out);
  CHECK(j.at("status") == "INFEASIBLE");
  CHECK(j.at("reason") == "corollary:c:l2452");
  for (const auto& [k, v] : j.items()) {
    if (k == "status" || k == "reason") continue;
    CAPTURE(k);
    CHECK(text.out.find("  " + k + ": ") != std::string::npos);
  }
  const auto trailing = ms({"feasible", "--q", "2", "--m", "5", "--t", "4", "--mu", "2", "--format", "json"});
  CHECK(trailing.out == js.out);
}

TEST_CASE("cli: lambda-min") {
  auto r = ms({"lambda-min", "--q", "2", "--m", "3", "--t", "2", "--mu", "2"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "LAMBDA_MIN 1");
  r = ms({"lambda-min", "--q", "2", "--m", "5", "--t", "4", "--mu", "2"});
  CHECK(r.code == 1);
}

TEST_CASE("cli: construct output re-verifies") {
  TempDir dir;
  const auto path = dir.name("c.ms");
  auto r = ms({"construct", "--q", "3", "--m", "3", "--t", "2", "--lambda", "2", "--mu", "3", "-o", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# plan: ") != std::string::npos);
  CHECK(first_line(r.out) == "multispread (2,3;2,3)_3, n=10");
  r = ms({"verify", path});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "multispread (2,3;2,3)_3, n=10");

  r = ms({"construct", "--q", "2", "--m", "3", "--t", "2", "--lambda", "1", "--mu", "2"});
  REQUIRE(r.code == 0);
  const auto body = r.out.substr(r.out.find("# plan: "));
  CHECK(parse_multispread(body).params().to_string() == "(1,2;2,3)_2");

  r = ms({"construct", "--q", "2", "--m", "5", "--t", "4", "--lambda", "13", "--mu", "2"});
  CHECK(r.code == 1);
}

TEST_CASE("cli: verify rejects a non-uniform cover with exit 1") {
  TempDir dir;
  const auto bad = dir.file("bad.ms", "multispread v1\nq=2 m=3 t=2\nsub mult=1 : 0x7\nsub mult=1 : 0x2 0x1\n");
  const auto r = ms({"verify", bad});
  CHECK(r.code == 1);
  CHECK(first_line(r.out).rfind("FAIL ", 0) == 0);
}

TEST_CASE("cli: file and usage errors") {
  TempDir dir;
  CHECK(ms({"verify", dir.name("missing.ms")}).code == 65);
  CHECK(ms({"verify", dir.file("junk.ms", "hello\n")}).code == 65);
  CHECK(ms({"verify", dir.file("syntax.ms", "multispread v1\nq=2 m=3 t=2\nsub mult=x : 0x7\n")}).code == 65);
  CHECK(ms({}).code == 64);
  CHECK(ms({"frobnicate"}).code == 64);
  CHECK(ms({"feasible", "--q", "2"}).code == 64);
  CHECK(ms({"--format", "yaml", "catalog", "list"}).code == 64);
  CHECK(ms({"feasible", "--q", "6", "--m", "3", "--t", "2", "--mu", "2"}).code == 64);
  CHECK(ms({"search", "--q", "2", "--m", "3", "--t", "2", "--lambda", "0", "--mu", "1", "--dims", "2"}).code ==
        64);
  CHECK(ms({"--help"}).code == 0);
}

TEST_CASE("cli: dualize both ways") {
  TempDir dir;
  const auto part = dir.name("p.part");
  auto r = ms({"dualize", dir.file("example1.ms", kExample1), "-o", part});
  REQUIRE(r.code == 0);
  CHECK(first_line(r.out) == "partition nu=1 of F_2^3, n=5");
  CHECK(ms({"dualize", part}).code == 64);
  r = ms({"dualize", part, "--t", "2"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "multispread (1,2;2,3)_2, n=5");
}

TEST_CASE("cli: to-code and check-code") {
  TempDir dir;
  const auto mat = dir.name("example1.mat");
  auto r = ms({"to-code", dir.file("example1.ms", kExample1), "-o", mat});
  REQUIRE(r.code == 0);
  CHECK(first_line(r.out) == "code [5,1.5,4]_4");
  r = ms({"check-code", mat});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "ONE-WEIGHT [5,1.5,4]_4");
  CHECK(r.out.find("intersection_array: {14; 2}") != std::string::npos);
  CHECK(ms({"verify", mat}).code == 0);

  const auto two = dir.file("two.mat", "matrix v1\nq=2 m=2 n=2 t=1\n1 0\n0 1\n");
  r = ms({"check-code", two});
  CHECK(r.code == 1);
  CHECK(first_line(r.out) == "NOT-ONE-WEIGHT");
}

TEST_CASE("cli: search outcomes map to exit codes") {
  TempDir dir;
  const auto out = dir.name("s.ms");
  auto r = ms({"search", "--q", "2", "--m", "3", "--t", "2", "--lambda", "1", "--mu", "2", "-o", out});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "FOUND multispread (1,2;2,3)_2, n=5");
  CHECK(ms({"verify", out}).code == 0);

  r = ms({"search", "--q", "2", "--m", "5", "--t", "4", "--lambda", "13", "--mu", "2"});
  CHECK(r.code == 3);
  CHECK(first_line(r.out) == "EXHAUSTED");

  r = ms({"search", "--q", "2", "--m", "5", "--t", "4", "--lambda", "11", "--mu", "4", "--dims", "2:0"});
  CHECK((r.code == 1 || r.code == 3));

  r = ms({"search", "--q", "2", "--m", "5", "--t", "3", "--lambda", "5", "--mu", "3", "--budget", "5"});
  CHECK(r.code == 4);

  r = ms({"search", "--q", "2", "--m", "4", "--t", "2", "--lambda", "0", "--mu", "1", "--group", "singer:5"});
  CHECK(r.code == 0);
}

TEST_CASE("cli: catalog") {
  auto r = ms({"catalog", "verify"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "catalog OK");
  int ok = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) ok += line.find(": OK ") != std::string::npos;
  CHECK(ok == 10);

  r = ms({"catalog", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("X1: (5,3;3,5)_2") != std::string::npos);

  r = ms({"catalog", "show", "q2-m7-l9-mu3"});
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "multispread (9,3;4,7)_2, n=26");
  CHECK(ms({"catalog", "show", "nope"}).code == 64);
}
