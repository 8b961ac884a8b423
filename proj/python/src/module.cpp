#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "multispread/catalog.hpp"
#include "multispread/code_bridge.hpp"
#include "multispread/constructions.hpp"
#include "multispread/feasibility.hpp"
#include "multispread/io.hpp"
#include "multispread/search.hpp"

namespace py = pybind11;
using namespace mspread;

namespace {

using MemberList = std::vector<std::pair<std::vector<Vec>, std::int64_t>>;

MemberMap members_from(const Space& space, const MemberList& list) {
  MemberMap out;
  for (const auto& [basis, mult] : list) out[space.span(basis)] += mult;
  return out;
}

MemberList members_to(const MemberMap& members) {
  MemberList out;
  for (const auto& [u, k] : members) out.emplace_back(u.basis(), k);
  return out;
}

py::dict params_dict(const MultispreadParams& p) {
  py::dict d;
  d["q"] = p.q;
  d["m"] = p.m;
  d["t"] = p.t;
  d["lambda"] = p.lambda;
  d["mu"] = p.mu;
  d["n"] = p.n;
  return d;
}

py::dict code_dict(const CodeParams& p) {
  py::dict d;
  d["n"] = p.n;
  d["k"] = p.k_text();
  d["w"] = p.w;
  d["alphabet"] = p.alphabet;
  d["lambda"] = p.lambda;
  d["mu"] = p.mu;
  d["intersection_array"] = py::make_tuple(p.b, p.c);
  d["dual_size"] = py::make_tuple(p.cr_base, p.cr_exponent);
  d["rank"] = p.rank;
  d["rank_deficient"] = p.rank_deficient;
  d["text"] = p.to_string();
  return d;
}

py::object catalog_object(const CatalogInstance& e) {
  if (e.multispread) return py::cast(*e.multispread);
  return py::cast(*e.partition);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multispreads over finite fields";

  py::register_exception<Error>(m, "MultispreadError", PyExc_ValueError);

  py::class_<Multispread>(m, "Multispread")
      .def_property_readonly("q", [](const Multispread& ms) { return ms.params().q; })
      .def_property_readonly("m", [](const Multispread& ms) { return ms.params().m; })
      .def_property_readonly("t", &Multispread::t)
      .def_property_readonly("lam", &Multispread::lambda)
      .def_property_readonly("mu", &Multispread::mu)
      .def_property_readonly("n", &Multispread::n)
      .def_property_readonly("params", [](const Multispread& ms) { return params_dict(ms.params()); })
      .def("members", [](const Multispread& ms) { return members_to(ms.members()); },
           "List of (canonical basis, multiplicity).")
      .def("count_dim", &Multispread::count_dim)
      .def("summary", &Multispread::summary)
      .def("serialize", [](const Multispread& ms) { return serialize_multispread(ms); })
      .def("__repr__", &Multispread::summary);

  py::class_<MultifoldPartition>(m, "Partition")
      .def_property_readonly("q", [](const MultifoldPartition& p) { return p.space().q(); })
      .def_property_readonly("m", [](const MultifoldPartition& p) { return p.space().m(); })
      .def_property_readonly("nu", &MultifoldPartition::nu)
      .def_property_readonly("size", &MultifoldPartition::size)
      .def("members", [](const MultifoldPartition& p) { return members_to(p.members()); })
      .def("count_dim", &MultifoldPartition::count_dim)
      .def("summary", &MultifoldPartition::summary)
      .def("serialize", [](const MultifoldPartition& p) { return serialize_partition(p); })
      .def("__repr__", &MultifoldPartition::summary);

  m.def(
      "multispread",
      [](std::uint64_t q, int dim, int t, const MemberList& members) {
        const auto space = Space::over(q, dim);
        return Multispread::verified(space, members_from(space, members), t);
      },
      py::arg("q"), py::arg("m"), py::arg("t"), py::arg("members"),
      "Verifies members given as (basis vectors, multiplicity) pairs.");
  m.def(
      "partition",
      [](std::uint64_t q, int dim, const MemberList& members) {
        const auto space = Space::over(q, dim);
        return MultifoldPartition::verified(space, members_from(space, members));
      },
      py::arg("q"), py::arg("m"), py::arg("members"));

  m.def("parse_multispread", [](const std::string& s) { return parse_multispread(s); });
  m.def("parse_partition", [](const std::string& s) { return parse_partition(s); });
  m.def("dualize", py::overload_cast<const Multispread&>(&dualize));
  m.def("dualize_partition", py::overload_cast<const MultifoldPartition&, int>(&dualize), py::arg("partition"),
        py::arg("t"));

  m.def("lambda_min_congruence", &lambda_min_congruence, py::arg("q"), py::arg("m"), py::arg("t"), py::arg("mu"));
  m.def("min_lambda_existence", &min_lambda_existence, py::arg("q"), py::arg("m"), py::arg("t"), py::arg("mu"));
  m.def("bi_decomposition", &bi_decomposition, py::arg("q"), py::arg("m"), py::arg("t"), py::arg("mu"));
  m.def(
      "oracle",
      [](std::int64_t q, int dim, int t, std::int64_t mu, std::optional<std::int64_t> lambda) {
        const auto v = oracle(q, dim, t, mu, lambda);
        py::dict d;
        d["status"] = status_name(v.status);
        d["reason"] = v.reason;
        d["lambda_min"] = v.lambda_min;
        d["b"] = v.b;
        d["note"] = v.note;
        return d;
      },
      py::arg("q"), py::arg("m"), py::arg("t"), py::arg("mu"), py::arg("lam") = py::none());

  m.def(
      "recipe",
      [](std::int64_t q, int dim, int t, std::int64_t lambda, std::int64_t mu) {
        auto c = recipe(q, dim, t, lambda, mu);
        return py::make_tuple(c.multispread, c.plan);
      },
      py::arg("q"), py::arg("m"), py::arg("t"), py::arg("lam"), py::arg("mu"),
      "Returns (multispread, plan lines).");
  m.def(
      "fold_spread",
      [](std::uint64_t q, int t, int dim, std::int64_t mu) { return fold_spread(Field::of_order(q), t, dim, mu); },
      py::arg("q"), py::arg("t"), py::arg("m"), py::arg("mu"));
  m.def(
      "desarguesian_46", [](std::uint64_t q, int s) { return desarguesian_46(Field::of_order(q), s); },
      py::arg("q"), py::arg("s"));

  m.def("generator_matrix", [](const Multispread& ms) { return generator_matrix(ms).rows; });
  m.def("code_params", [](const Multispread& ms) { return code_dict(code_params(ms)); });
  m.def(
      "check_one_weight",
      [](std::uint64_t q, int t, const std::vector<std::vector<Elem>>& rows) {
        CodeMatrix mat{Field::of_order(q), static_cast<int>(rows.size()), 0, t, rows};
        const std::size_t width = rows.empty() ? 0 : rows.front().size();
        if (t < 1 || width % static_cast<std::size_t>(t) != 0)
          throw Error(Errc::WidthNotMultipleOfT, "matrix width is not a multiple of t");
        mat.n = static_cast<int>(width / static_cast<std::size_t>(t));
        return code_dict(check_one_weight(mat));
      },
      py::arg("q"), py::arg("t"), py::arg("rows"));

  m.def(
      "exact_cover_search",
      [](std::uint32_t q, int dim, int t, std::int64_t lambda, std::int64_t mu,
         std::optional<std::map<int, std::int64_t>> dims, std::optional<std::uint64_t> group_order,
         std::uint64_t budget, std::uint64_t seed, int threads) {
        SearchSpec spec{q, dim, t, lambda, mu, dims, group_order, budget, seed, threads};
        SearchResult res;
        {
          py::gil_scoped_release release;
          res = exact_cover_search(spec);
        }
        py::dict d;
        d["outcome"] = outcome_name(res.outcome);
        d["nodes"] = res.nodes;
        d["trace"] = res.trace;
        d["note"] = res.note;
        d["multispread"] = res.multispread ? py::cast(*res.multispread) : py::none();
        return d;
      },
      py::arg("q"), py::arg("m"), py::arg("t"), py::arg("lam"), py::arg("mu"), py::arg("dims") = py::none(),
      py::arg("group_order") = py::none(), py::arg("budget") = 10'000'000, py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def("catalog_names", &catalog_names);
  m.def("catalog_entry", [](const std::string& name) { return catalog_object(catalog_entry(name)); });
}
