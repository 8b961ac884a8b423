#include "multispread/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "multispread/catalog.hpp"
#include "multispread/code_bridge.hpp"
#include "multispread/constructions.hpp"
#include "multispread/errors.hpp"
#include "multispread/feasibility.hpp"
#include "multispread/io.hpp"
#include "multispread/search.hpp"

namespace mspread::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A report is a headline plus ordered facts. Text mode prints the headline,
// then one "key: value" line per fact, then any raw body text; JSON mode
// prints every fact (headline facts included) as one flat object.
class Report {
 public:
  void headline(std::string text) { headline_ = std::move(text); }
  void fact(const std::string& key, Json value, bool in_text = true) {
    facts_.push_back({key, std::move(value), in_text});
  }
  void body(std::string text) { body_ += std::move(text); }

  void print(bool json, std::ostream& out) const {
    if (json) {
      Json obj = Json::object();
      for (const auto& f : facts_) obj[f.key] = f.value;
      out << obj.dump() << "\n";
      return;
    }
    if (!headline_.empty()) out << headline_ << "\n";
    for (const auto& f : facts_)
      if (f.in_text) out << "  " << f.key << ": " << text_of(f.value) << "\n";
    out << body_;
  }

 private:
  struct Fact {
    std::string key;
    Json value;
    bool in_text;
  };

  static std::string text_of(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : " ") + text_of(x);
      return s;
    }
    return v.dump();
  }

  std::string headline_;
  std::vector<Fact> facts_;
  std::string body_;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw DataError("cannot write " + path);
}

// First line that is neither blank nor a comment.
std::string magic_line(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    return line.substr(b, e - b + 1);
  }
  return {};
}

template <class F>
auto parse_input(const std::string& path, const std::string& text, F parse) {
  try {
    return parse(text);
  } catch (const CoverageError&) {
    throw;
  } catch (const Error& e) {
    throw DataError(path + ": " + e.what());
  }
}

Multispread load_multispread(const std::string& path) {
  const auto text = read_text(path);
  if (magic_line(text) != "multispread v1") throw DataError(path + ": not a multispread v1 file");
  try {
    return parse_input(path, text, [](const std::string& s) { return parse_multispread(s); });
  } catch (const CoverageError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string dims_text(const std::map<int, std::int64_t>& dims) {
  std::string s;
  for (const auto& [d, c] : dims) s += (s.empty() ? "" : ",") + std::to_string(d) + ":" + std::to_string(c);
  return s;
}

template <class T>
std::map<int, std::int64_t> dim_counts(const T& obj) {
  std::map<int, std::int64_t> out;
  for (const auto& [u, k] : obj.members()) out[u.dim()] += k;
  return out;
}

void add_params(Report& r, const MultispreadParams& p) {
  r.fact("q", p.q);
  r.fact("m", p.m);
  r.fact("t", p.t);
  r.fact("lambda", p.lambda);
  r.fact("mu", p.mu);
  r.fact("n", p.n);
}

void describe(Report& r, const Multispread& ms) {
  r.fact("kind", "multispread", false);
  r.fact("summary", ms.summary(), false);
  add_params(r, ms.params());
  r.fact("dims", dims_text(dim_counts(ms)));
}

void describe(Report& r, const MultifoldPartition& part) {
  r.fact("kind", "partition", false);
  r.fact("summary", part.summary(), false);
  r.fact("q", part.space().q());
  r.fact("m", part.space().m());
  r.fact("nu", part.nu());
  r.fact("n", part.size());
  r.fact("dims", dims_text(dim_counts(part)));
}

// Writes `text` to `path`, or appends it to the report body when no path is given.
void emit_file(Report& r, const std::optional<std::string>& path, const std::string& key,
               const std::string& text) {
  if (path) {
    write_text(*path, text);
    r.fact("output", *path);
  } else {
    r.fact(key, text, false);
    r.body(text);
  }
}

int status_exit(Status s) {
  switch (s) {
    case Status::Feasible: return kOk;
    case Status::Infeasible: return kInfeasible;
    case Status::Unknown: return kUnknown;
  }
  return kInternal;
}

std::string verdict_line(const Verdict& v) {
  std::string s = status_name(v.status);
  if (!v.reason.empty()) s += " " + v.reason;
  return s;
}

void add_verdict(Report& r, const Verdict& v) {
  r.fact("status", status_name(v.status), false);
  r.fact("reason", v.reason, false);
  if (v.lambda_min) r.fact("lambda_min", *v.lambda_min);
  if (!v.b.empty()) r.fact("b", v.b);
  if (!v.note.empty()) r.fact("note", v.note);
}

std::map<int, std::int64_t> parse_dims(const std::string& text) {
  std::map<int, std::int64_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--dims expects d:count,... but got '" + text + "'");
    try {
      std::size_t used = 0;
      const std::string ds = item.substr(0, colon), cs = item.substr(colon + 1);
      const int d = std::stoi(ds, &used);
      if (used != ds.size()) throw std::invalid_argument(ds);
      const long long c = std::stoll(cs, &used);
      if (used != cs.size() || d < 0 || c < 0) throw std::invalid_argument(cs);
      out[d] = c;
    } catch (const std::logic_error&) {
      throw UsageError("bad --dims entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--dims is empty");
  return out;
}

std::uint64_t parse_group(const std::string& text) {
  const std::string prefix = "singer:";
  if (text.rfind(prefix, 0) != 0) throw UsageError("--group expects singer:ORDER");
  try {
    std::size_t used = 0;
    const auto k = std::stoull(text.substr(prefix.size()), &used);
    if (used != text.size() - prefix.size() || k == 0) throw std::invalid_argument(text);
    return k;
  } catch (const std::logic_error&) {
    throw UsageError("bad group order in '" + text + "'");
  }
}

int default_threads() {
  const char* env = std::getenv("MS_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const int k = std::stoi(env, &used);
    if (used == std::string(env).size() && k >= 1) return k;
  } catch (const std::logic_error&) {
  }
  throw UsageError(std::string("MS_THREADS must be a positive integer, got '") + env + "'");
}

struct Options {
  std::string format = "text";
  std::int64_t q = 0, lambda = 0, mu = 0;
  int m = 0, t = 0;
  std::optional<std::int64_t> lambda_opt;
  std::optional<int> t_opt;
  std::string file, name, dims, group;
  std::optional<std::string> output;
  std::uint64_t budget = 10'000'000, seed = 0;
  std::optional<int> threads;
};

int cmd_feasible(const Options& o, Report& r) {
  const auto v = oracle(o.q, o.m, o.t, o.mu, o.lambda_opt);
  r.headline(verdict_line(v));
  add_verdict(r, v);
  return status_exit(v.status);
}

int cmd_lambda_min(const Options& o, Report& r) {
  const auto v = oracle(o.q, o.m, o.t, o.mu);
  const auto least = min_lambda_existence(o.q, o.m, o.t, o.mu);
  r.fact("congruence_lambda", lambda_min_congruence(o.q, o.m, o.t, o.mu));
  if (v.status == Status::Feasible && least) {
    r.headline("LAMBDA_MIN " + std::to_string(*least));
    r.fact("status", "FEASIBLE", false);
    r.fact("lambda_min", *least, false);
    r.fact("reason", v.reason);
    return kOk;
  }
  r.headline(verdict_line(v));
  add_verdict(r, v);
  return v.status == Status::Feasible ? kUnknown : status_exit(v.status);
}

int cmd_construct(const Options& o, Report& r) {
  const auto v = oracle(o.q, o.m, o.t, o.mu, o.lambda);
  if (v.status != Status::Feasible) {
    r.headline(verdict_line(v));
    add_verdict(r, v);
    return status_exit(v.status);
  }
  const auto c = recipe(o.q, o.m, o.t, o.lambda, o.mu);
  r.fact("plan", c.plan, false);
  std::string plan_text;
  for (const auto& step : c.plan) plan_text += "# plan: " + step + "\n";
  r.body(plan_text);
  r.headline(c.multispread.summary());
  r.fact("reason", v.reason);
  describe(r, c.multispread);
  emit_file(r, o.output, "multispread", serialize_multispread(c.multispread));
  return kOk;
}

int cmd_verify(const Options& o, Report& r) {
  const auto text = read_text(o.file);
  const auto kind = magic_line(text);
  try {
    if (kind == "multispread v1") {
      const auto ms = parse_input(o.file, text, [](const std::string& s) { return parse_multispread(s); });
      r.headline(ms.summary());
      describe(r, ms);
    } else if (kind == "partition v1") {
      const auto part = parse_input(o.file, text, [](const std::string& s) { return parse_partition(s); });
      r.headline(part.summary());
      describe(r, part);
    } else if (kind == "matrix v1") {
      const auto mat = parse_input(o.file, text, [](const std::string& s) { return parse_matrix(s); });
      const auto ms = multispread_from_matrix(mat);
      r.headline(ms.summary());
      describe(r, ms);
    } else {
      throw DataError(o.file + ": unrecognized file type '" + kind + "'");
    }
  } catch (const CoverageError& e) {
    r.headline(std::string("FAIL ") + e.what());
    r.fact("status", "FAIL", false);
    r.fact("error", errc_name(e.code()), false);
    r.fact("vector", e.vector());
    r.fact("got", e.got());
    r.fact("expected", e.expected());
    return kInfeasible;
  }
  r.fact("status", "OK", false);
  return kOk;
}

int cmd_dualize(const Options& o, Report& r) {
  const auto text = read_text(o.file);
  const auto kind = magic_line(text);
  if (kind == "multispread v1") {
    const auto ms = load_multispread(o.file);
    const auto part = dualize(ms);
    r.headline(part.summary());
    describe(r, part);
    emit_file(r, o.output, "partition", serialize_partition(part));
    return kOk;
  }
  if (kind == "partition v1") {
    if (!o.t_opt) throw UsageError("dualizing a partition needs --t");
    const auto part = parse_input(o.file, text, [](const std::string& s) { return parse_partition(s); });
    const auto ms = dualize(part, *o.t_opt);
    r.headline(ms.summary());
    describe(r, ms);
    emit_file(r, o.output, "multispread", serialize_multispread(ms));
    return kOk;
  }
  throw DataError(o.file + ": expected a multispread or partition file");
}

void add_code(Report& r, const CodeParams& p) {
  r.fact("code", p.to_string(), false);
  r.fact("n", p.n);
  r.fact("k", p.k_text());
  r.fact("w", p.w);
  r.fact("alphabet", p.alphabet);
  r.fact("lambda", p.lambda);
  r.fact("mu", p.mu);
  r.fact("intersection_array", "{" + std::to_string(p.b) + "; " + std::to_string(p.c) + "}");
  r.fact("dual_size", std::to_string(p.cr_base) + "^" + std::to_string(p.cr_exponent));
}

int cmd_to_code(const Options& o, Report& r) {
  const auto ms = load_multispread(o.file);
  const auto mat = generator_matrix(ms);
  const auto p = code_params(ms);
  r.headline("code " + p.to_string());
  add_code(r, p);
  std::string text = serialize_matrix(mat);
  if (!o.output) text = "# code " + p.to_string() + "\n" + text;
  emit_file(r, o.output, "matrix", text);
  return kOk;
}

int cmd_check_code(const Options& o, Report& r) {
  const auto text = read_text(o.file);
  const auto mat = parse_input(o.file, text, [](const std::string& s) { return parse_matrix(s); });
  try {
    const auto p = check_one_weight(mat);
    r.headline("ONE-WEIGHT " + p.to_string());
    r.fact("status", "ONE-WEIGHT", false);
    add_code(r, p);
    r.fact("rank", p.rank);
    r.fact("rank_deficient", p.rank_deficient);
    return kOk;
  } catch (const NotOneWeightError& e) {
    r.headline("NOT-ONE-WEIGHT");
    r.fact("status", "NOT-ONE-WEIGHT", false);
    r.fact("message_a", e.first());
    r.fact("weight_a", e.first_weight());
    r.fact("message_b", e.second());
    r.fact("weight_b", e.second_weight());
    return kInfeasible;
  }
}

int cmd_search(const Options& o, Report& r) {
  SearchSpec spec;
  if (o.q < 2 || o.q > static_cast<std::int64_t>(Field::kMaxOrder)) throw UsageError("q out of range");
  Field::of_order(static_cast<std::uint64_t>(o.q));
  spec.q = static_cast<std::uint32_t>(o.q);
  spec.m = o.m;
  spec.t = o.t;
  spec.lambda = o.lambda;
  spec.mu = o.mu;
  if (!o.dims.empty()) spec.dims = parse_dims(o.dims);
  if (!o.group.empty()) spec.group_order = parse_group(o.group);
  spec.budget = o.budget;
  spec.seed = o.seed;
  spec.threads = o.threads ? *o.threads : default_threads();
  if (spec.threads < 1) throw UsageError("--threads must be positive");

  SearchResult res;
  try {
    res = exact_cover_search(spec);
  } catch (const Error& e) {
    if (e.code() != Errc::SpecInconsistent) throw;
    r.headline(std::string("INCONSISTENT ") + e.what());
    r.fact("outcome", "INCONSISTENT", false);
    r.fact("nodes", 0);
    return kInfeasible;
  }
  std::string head = outcome_name(res.outcome);
  if (res.multispread) head += " " + res.multispread->summary();
  r.headline(head);
  r.fact("outcome", outcome_name(res.outcome), false);
  r.fact("nodes", res.nodes);
  std::ostringstream trace;
  trace << "0x" << std::hex << res.trace;
  r.fact("trace", trace.str());
  if (!res.note.empty()) r.fact("note", res.note);
  if (res.multispread) {
    r.fact("dims", dims_text(dim_counts(*res.multispread)));
    emit_file(r, o.output, "multispread", serialize_multispread(*res.multispread));
  }
  switch (res.outcome) {
    case SearchOutcome::Found: return kOk;
    case SearchOutcome::Exhausted: return kExhausted;
    case SearchOutcome::Budget: return kBudget;
  }
  return kInternal;
}

int cmd_catalog_list(Report& r) {
  for (const auto& e : catalog_expectations()) {
    const auto title = e.nu > 0 ? "partition nu=" + std::to_string(e.nu) + " of F_" +
                                      std::to_string(e.params.q) + "^" + std::to_string(e.params.m)
                                : e.params.to_string();
    r.fact(e.name, title);
  }
  return kOk;
}

int cmd_catalog_verify(Report& r) {
  int failures = 0;
  for (const auto& e : catalog_expectations()) {
    std::string problem;
    try {
      problem = check_catalog_entry(e);
    } catch (const std::exception& ex) {
      problem = ex.what();
    }
    if (problem.empty()) {
      r.fact(e.name, "OK " + catalog_entry(e.name).title);
    } else {
      ++failures;
      r.fact(e.name, "FAIL " + problem);
    }
  }
  r.headline(failures == 0 ? "catalog OK" : "catalog FAIL (" + std::to_string(failures) + ")");
  r.fact("failures", failures);
  return failures == 0 ? kOk : kInfeasible;
}

int cmd_catalog_show(const Options& o, Report& r) {
  const auto& entry = catalog_entry(o.name);
  if (entry.multispread) {
    r.headline(entry.multispread->summary());
    describe(r, *entry.multispread);
    emit_file(r, o.output, "multispread", serialize_multispread(*entry.multispread));
  } else {
    r.headline(entry.partition->summary());
    describe(r, *entry.partition);
    emit_file(r, o.output, "partition", serialize_partition(*entry.partition));
  }
  return kOk;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::SpecInconsistent:
    case Errc::NotOneWeight:
      return kInfeasible;
    case Errc::InternalVerifyFailed:
      return kInternal;
    default:
      return kUsage;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multispreads: feasibility, constructions, verification, codes and search", "ms"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));

  auto add_qmt = [&o](CLI::App* sub) {
    sub->add_option("--q", o.q, "Field order")->required();
    sub->add_option("--m", o.m, "Ambient dimension")->required();
    sub->add_option("--t", o.t, "Pseudodimension")->required();
    sub->add_option("--mu", o.mu, "Coverage multiplicity")->required();
  };

  auto* feasible = app.add_subcommand("feasible", "Existence oracle");
  add_qmt(feasible);
  feasible->add_option("--lambda", o.lambda_opt, "Excess at zero");

  auto* lmin = app.add_subcommand("lambda-min", "Least feasible lambda");
  add_qmt(lmin);

  auto* construct = app.add_subcommand("construct", "Build a multispread from the plan");
  add_qmt(construct);
  construct->add_option("--lambda", o.lambda, "Excess at zero")->required();
  construct->add_option("-o,--output", o.output, "Output file");

  auto* verify_cmd = app.add_subcommand("verify", "Verify a multispread, partition or matrix file");
  verify_cmd->add_option("file", o.file)->required();

  auto* dualize_cmd = app.add_subcommand("dualize", "Orthogonal complements");
  dualize_cmd->add_option("file", o.file)->required();
  dualize_cmd->add_option("--t", o.t_opt, "Pseudodimension of the result (partition input)");
  dualize_cmd->add_option("-o,--output", o.output, "Output file");

  auto* to_code = app.add_subcommand("to-code", "Generator matrix of a multispread");
  to_code->add_option("file", o.file)->required();
  to_code->add_option("-o,--output", o.output, "Output file");

  auto* check_code = app.add_subcommand("check-code", "Check a matrix file for one weight");
  check_code->add_option("file", o.file)->required();

  auto* search = app.add_subcommand("search", "Exact cover search");
  add_qmt(search);
  search->add_option("--lambda", o.lambda, "Excess at zero")->required();
  search->add_option("--dims", o.dims, "Member counts d:count,...");
  search->add_option("--group", o.group, "Prescribed automorphisms singer:ORDER");
  search->add_option("--budget", o.budget, "Node budget per first-level branch");
  search->add_option("--seed", o.seed, "Candidate order seed");
  search->add_option("--threads", o.threads, "Worker threads (default MS_THREADS or 1)");
  search->add_option("-o,--output", o.output, "Output file");

  auto* catalog = app.add_subcommand("catalog", "Embedded precomputed instances");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "List entries");
  auto* cat_verify = catalog->add_subcommand("verify", "Verify every entry");
  auto* cat_show = catalog->add_subcommand("show", "Print one entry");
  cat_show->add_option("name", o.name)->required();
  cat_show->add_option("-o,--output", o.output, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Report report;
  int code = kInternal;
  try {
    if (*feasible) code = cmd_feasible(o, report);
    else if (*lmin) code = cmd_lambda_min(o, report);
    else if (*construct) code = cmd_construct(o, report);
    else if (*verify_cmd) code = cmd_verify(o, report);
    else if (*dualize_cmd) code = cmd_dualize(o, report);
    else if (*to_code) code = cmd_to_code(o, report);
    else if (*check_code) code = cmd_check_code(o, report);
    else if (*search) code = cmd_search(o, report);
    else if (*cat_list) code = cmd_catalog_list(report);
    else if (*cat_verify) code = cmd_catalog_verify(report);
    else if (*cat_show) code = cmd_catalog_show(o, report);
  } catch (const UsageError& e) {
    err << "ms: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "ms: " << e.what() << "\n";
    return kDataError;
  } catch (const Error& e) {
    err << "ms: " << e.what() << "\n";
    return exit_for(e);
  }
  report.print(o.format == "json", out);
  return code;
}

}  // namespace mspread::cli
