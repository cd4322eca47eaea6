// Python surface for the core operations. Counts come back as exact python
// ints, rationals as "p/q" strings (convert with fractions.Fraction).

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subposet/chains.hpp"
#include "subposet/extremal.hpp"
#include "subposet/io.hpp"
#include "subposet/nested.hpp"
#include "subposet/verify.hpp"

namespace py = pybind11;
using namespace subposet;

namespace {

py::int_ to_py_int(const BigInt& b) {
  PyObject* obj = PyLong_FromString(b.str().c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Found:
      return "found";
    case Verdict::Absent:
      return "absent";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

Subset subset_from_elements(int n, const std::vector<int>& elements) {
  return Subset::of(n, elements);
}

}  // namespace

PYBIND11_MODULE(_subposet, m) {
  m.doc() = "induced-subposet machinery for the Boolean lattice";

  py::register_exception<CycleError>(m, "CycleError");
  py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
  py::register_exception<IndexError>(m, "IndexError", PyExc_IndexError);
  py::register_exception<NotTreeError>(m, "NotTreeError");
  py::register_exception<NotSaturatedError>(m, "NotSaturatedError");
  py::register_exception<BudgetError>(m, "BudgetError");
  py::register_exception<SizeError>(m, "SizeError");
  py::register_exception<WitnessPlacementError>(m, "WitnessPlacementError");
  py::register_exception<NotChainError>(m, "NotChainError");
  py::register_exception<NotValidatedError>(m, "NotValidatedError");
  py::register_exception<IncompleteStringError>(m, "IncompleteStringError");

  py::class_<Subset>(m, "Subset")
      .def(py::init(&subset_from_elements), py::arg("n"), py::arg("elements"))
      .def_property_readonly("n", &Subset::ground_size)
      .def_property_readonly("weight", &Subset::weight)
      .def("elements", &Subset::elements)
      .def("is_subset_of", &Subset::is_subset_of)
      .def("__le__", &Subset::is_subset_of)
      .def("__lt__", &Subset::is_proper_subset_of)
      .def("__eq__", [](const Subset& a, const Subset& b) { return a == b; })
      .def("__hash__", &Subset::hash)
      .def("__repr__", &Subset::to_string);

  py::class_<Band>(m, "Band")
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def_readonly("lo", &Band::lo)
      .def_readonly("hi", &Band::hi)
      .def("contains", &Band::contains)
      .def("__repr__", [](const Band& b) {
        return "Band(" + std::to_string(b.lo) + ", " + std::to_string(b.hi) + ")";
      });
  m.def("band_bounds", &band_bounds, py::arg("n"));

  py::class_<Poset>(m, "Poset")
      .def_static(
          "from_relations",
          [](int n, const std::vector<std::pair<int, int>>& pairs,
             const std::vector<std::string>& labels) {
            return Poset::from_relations(n, pairs, labels);
          },
          py::arg("n"), py::arg("pairs"), py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("n", &Poset::size)
      .def("less", &Poset::less)
      .def("labels", &Poset::labels)
      .def("__repr__", [](const Poset& p) {
        return "Poset(n=" + std::to_string(p.size()) + ")";
      });

  m.def(
      "make_named_poset",
      [](const std::string& name, int p1, int p2) { return make_named_poset(name, p1, p2); },
      py::arg("name"), py::arg("p1") = -1, py::arg("p2") = -1);

  m.def("hasse_covers", &hasse_covers);
  m.def(
      "analyze",
      [](const Poset& p, int k) {
        auto a = analyze(p, k);
        py::dict d;
        d["height"] = a.height;
        d["tree_hasse"] = a.tree_hasse;
        d["k_saturated"] = a.k_saturated;
        return d;
      },
      py::arg("poset"), py::arg("k"));
  m.def("saturate", &saturate);
  m.def("decompose", [](const Poset& p) {
    py::list out;
    for (const auto& st : decompose(p)) {
      py::dict d;
      d["interval"] = st.interval;
      d["anchor"] = st.anchor;
      d["leaf"] = st.leaf;
      d["direction"] = st.direction == ZoneSide::Below ? "below" : "above";
      d["remaining"] = st.remaining;
      d["kept"] = st.kept;
      out.append(std::move(d));
    }
    return out;
  });
  m.def(
      "find_poset_embedding",
      [](const Poset& host, const Poset& pattern, bool induced) -> py::object {
        auto r = find_poset_embedding(host, pattern, induced);
        if (!r) return py::none();
        return py::cast(r->image);
      },
      py::arg("host"), py::arg("pattern"), py::arg("induced") = true);

  py::class_<Family>(m, "Family")
      .def_static(
          "explicit",
          [](int n, const std::vector<std::vector<int>>& sets) {
            std::vector<Subset> verts;
            verts.reserve(sets.size());
            for (const auto& s : sets) verts.push_back(Subset::of(n, s));
            return Family::explicit_family(std::move(verts), n);
          },
          py::arg("n"), py::arg("sets"))
      .def_static(
          "from_subsets",
          [](int n, std::vector<Subset> verts) {
            return Family::explicit_family(std::move(verts), n);
          },
          py::arg("n"), py::arg("subsets"))
      .def_property_readonly("n", &Family::ground_size)
      .def("__len__", &Family::size)
      .def("__contains__", &Family::contains)
      .def("vertices", [](const Family& f) { return f.vertices(); })
      .def("__repr__", [](const Family& f) {
        return "Family(n=" + std::to_string(f.ground_size()) +
               (f.is_explicit() ? ", size=" + std::to_string(f.size()) : ", oracle") + ")";
      });

  m.def("middle_levels", &middle_levels, py::arg("n"), py::arg("t"));
  m.def("all_vertices", [](int n) { return all_vertices(n); });

  m.def(
      "down_up_set",
      [](const Subset& v, const std::string& dir, int n) {
        return down_up_set(v, dir == "up" ? Direction::Up : Direction::Down, n);
      },
      py::arg("v"), py::arg("direction"), py::arg("n"));
  m.def(
      "forbidden_zone",
      [](const Subset& v, const Family& s, const std::string& side, int n, const Band& band) {
        return forbidden_zone(v, s, side == "above" ? ZoneSide::Above : ZoneSide::Below, n,
                              band);
      },
      py::arg("v"), py::arg("witness"), py::arg("side"), py::arg("n"), py::arg("band"));

  m.def(
      "chains_through_count",
      [](const std::vector<Subset>& q, int n) { return to_py_int(chains_through_count(q, n)); },
      py::arg("markers"), py::arg("n"));
  m.def(
      "lym_sum",
      [](const Family& f, int n) { return rational_to_string(lym_sum(f, n)); },
      py::arg("family"), py::arg("n"));
  m.def(
      "count_marked_chains",
      [](const Family& f, int k, int n) { return to_py_int(count_marked_chains(f, k, n)); },
      py::arg("family"), py::arg("k"), py::arg("n"));
  m.def(
      "count_marked_chains_oracle",
      [](const Family& f, int k, int n) {
        return to_py_int(count_marked_chains_oracle(f, k, n));
      },
      py::arg("family"), py::arg("k"), py::arg("n"));
  m.def(
      "marker_histogram",
      [](const Family& f, int n) {
        py::dict d;
        for (const auto& [x, c] : marker_histogram(f, n).counts) {
          d[py::int_(x)] = to_py_int(c);
        }
        return d;
      },
      py::arg("family"), py::arg("n"));
  m.def(
      "density_check",
      [](const Family& f, int k, const std::string& epsilon, int n) {
        auto r = density_check(f, k, parse_rational(epsilon), n);
        py::dict d;
        d["hypothesis_met"] = r.hypothesis_met;
        d["count"] = to_py_int(r.count);
        d["bound"] = rational_to_string(r.bound);
        d["holds"] = r.holds;
        return d;
      },
      py::arg("family"), py::arg("k"), py::arg("epsilon"), py::arg("n"));

  m.def("gamma", &gamma_factor, py::arg("n"), py::arg("h"));
  m.def(
      "zone_hit_prob",
      [](const Subset& v, const Family& s, const std::string& side, int n, const Band& band,
         const std::string& mode, std::uint64_t trials, std::uint64_t seed, int workers) {
        auto r = zone_hit_prob(v, s, side == "above" ? ZoneSide::Above : ZoneSide::Below, n,
                               band, mode == "exact" ? ProbMode::Exact : ProbMode::MonteCarlo,
                               trials, seed, workers);
        py::dict d;
        d["estimate"] = r.estimate;
        d["std_error"] = r.std_error;
        d["hits"] = r.hits;
        d["trials"] = r.trials;
        return d;
      },
      py::arg("v"), py::arg("witness"), py::arg("side"), py::arg("n"), py::arg("band"),
      py::arg("mode") = "exact", py::arg("trials") = 10000, py::arg("seed") = 1,
      py::arg("workers") = 1);

  m.def(
      "build_nested",
      [](const Family& f, int k, int h, const std::string& epsilon, int n, const Band& band,
         const Family& pool) {
        auto build = build_nested(f, k, h, parse_rational(epsilon), n, band, pool);
        py::list iterations;
        for (const auto& state : build.states) {
          py::dict it;
          it["iteration"] = state.iteration;
          it["marked_count"] = to_py_int(state.marked_count);
          py::list chains;
          for (const auto& cs : state.chains) {
            py::dict cj;
            cj["x"] = cs.markers.size();
            cj["b"] = cs.bad_all.size();
            cj["markers"] = cs.markers;
            cj["removed"] = cs.bad_all;
            cj["chain_class"] = cs.chain_class == ChainClass::EmptyMarkers ? "empty"
                                : cs.chain_class == ChainClass::LowBadShare ? "low_bad_share"
                                                                            : "high_bad_share";
            chains.append(std::move(cj));
          }
          it["chains"] = std::move(chains);
          iterations.append(std::move(it));
        }
        py::dict d;
        d["k"] = build.k;
        d["h"] = build.h;
        d["c_constant"] = build.c_constant;
        d["iterations"] = std::move(iterations);
        return d;
      },
      py::arg("family"), py::arg("k"), py::arg("h"), py::arg("epsilon"), py::arg("n"),
      py::arg("band"), py::arg("pool"));

  py::class_<Embedding>(m, "Embedding")
      .def_readonly("image", &Embedding::image)
      .def_readonly("induced", &Embedding::induced)
      .def_readonly("validated", &Embedding::validated)
      .def("__repr__", [](const Embedding& e) {
        return "Embedding(size=" + std::to_string(e.image.size()) + ")";
      });

  py::class_<SearchBudget>(m, "SearchBudget")
      .def(py::init<>())
      .def_readwrite("node_limit", &SearchBudget::node_limit)
      .def_readwrite("time_limit_ms", &SearchBudget::time_limit_ms)
      .def_readwrite("backtrack_limit", &SearchBudget::backtrack_limit);

  m.def(
      "find_copy_oracle",
      [](const Family& f, int n, const Poset& h, bool induced, const SearchBudget& budget) {
        auto r = find_copy_oracle(f, n, h, induced, budget);
        py::dict d;
        d["verdict"] = verdict_name(r.verdict);
        d["nodes"] = r.nodes;
        d["embedding"] = r.embedding ? py::cast(*r.embedding) : py::none().cast<py::object>();
        return d;
      },
      py::arg("family"), py::arg("n"), py::arg("poset"), py::arg("induced") = true,
      py::arg("budget") = SearchBudget{});
  m.def(
      "find_copy_guided",
      [](const Family& f, int n, const Poset& h, const SearchBudget& budget, const Band& band,
         std::uint64_t seed) {
        auto r = find_copy_guided(f, n, h, budget, band, seed);
        py::dict d;
        d["verdict"] = verdict_name(r.verdict);
        d["nodes"] = r.nodes;
        d["embedding"] = r.embedding ? py::cast(*r.embedding) : py::none().cast<py::object>();
        return d;
      },
      py::arg("family"), py::arg("n"), py::arg("poset"), py::arg("budget") = SearchBudget{},
      py::arg("band"), py::arg("seed") = 1);
  m.def(
      "la_exact",
      [](int n, const Poset& h, bool induced, const SearchBudget& budget) {
        auto r = la_exact(n, h, induced, budget);
        py::dict d;
        d["verdict"] = r.verdict == Verdict::Found ? "optimal" : "indeterminate";
        d["value"] = r.value;
        d["witness"] = r.witness;
        d["nodes"] = r.nodes;
        return d;
      },
      py::arg("n"), py::arg("poset"), py::arg("induced") = true,
      py::arg("budget") = SearchBudget{});
  m.def(
      "construction_avoidance_check",
      [](int n, const Poset& h, int t, const SearchBudget& budget) {
        auto r = construction_avoidance_check(n, h, t, budget);
        py::dict d;
        d["verdict"] = verdict_name(r.oracle_verdict);
        d["avoided"] = r.avoided;
        return d;
      },
      py::arg("n"), py::arg("poset"), py::arg("t"), py::arg("budget") = SearchBudget{});
  m.def(
      "hm_certificate",
      [](const Embedding& e, int m_param) {
        auto c = hm_certificate(e, m_param);
        py::dict d;
        d["spread"] = c.spread;
        d["holds"] = c.holds;
        return d;
      },
      py::arg("embedding"), py::arg("m"));

  m.attr("__version__") = SUBPOSET_VERSION;
}
