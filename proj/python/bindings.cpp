#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "infmax/dcg.hpp"
#include "infmax/fixtures.hpp"
#include "infmax/graph.hpp"
#include "infmax/greedy.hpp"
#include "infmax/influence.hpp"
#include "infmax/scenarios.hpp"

namespace py = pybind11;
using namespace infmax;

namespace {

// pybind11 holders cannot be pointers to const; the graph is never mutated.
using GraphPtr = std::shared_ptr<DirectedGraph>;

GraphPtr builtin(const std::string& name) {
    if (name == "fig1") return std::make_shared<DirectedGraph>(fixtures::fig1_network());
    if (name == "a1_15node") return std::make_shared<DirectedGraph>(fixtures::a1_15node());
    throw std::invalid_argument("unknown builtin graph: " + name);
}

GraphPtr from_arcs(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    std::vector<Arc> arcs;
    for (const auto& [u, v] : pairs) arcs.push_back(Arc{u, v});
    return std::make_shared<DirectedGraph>(DirectedGraph::from_arcs(n, std::move(arcs)));
}

std::vector<double> per_arc(const DirectedGraph& g, const py::object& p) {
    if (py::isinstance<py::float_>(p) || py::isinstance<py::int_>(p)) {
        return std::vector<double>(g.num_arcs(), p.cast<double>());
    }
    auto v = p.cast<std::vector<double>>();
    if (v.size() != g.num_arcs()) throw std::invalid_argument("need one value per arc");
    return v;
}

SeedSet seeds_of(const std::vector<NodeId>& ids) { return SeedSet(ids); }

std::vector<NodeId> members(const SeedSet& s) { return {s.members().begin(), s.members().end()}; }

}  // namespace

PYBIND11_MODULE(_infmax, m) {
    m.doc() = "Influence maximization over live-arc scenarios";

    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            parse_error(e.what());
        } catch (const std::length_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<DirectedGraph, GraphPtr>(m, "Graph")
        .def_static(
            "from_edge_list",
            [](const std::string& text, bool undirected) {
                return std::make_shared<DirectedGraph>(
                    parse_edge_list_string(text, undirected ? EdgeMode::undirected : EdgeMode::directed));
            },
            py::arg("text"), py::arg("undirected") = false)
        .def_static("from_arcs", &from_arcs, py::arg("num_nodes"), py::arg("arcs"))
        .def_static("builtin", &builtin, py::arg("name"))
        .def_property_readonly("num_nodes", &DirectedGraph::num_nodes)
        .def_property_readonly("num_arcs", &DirectedGraph::num_arcs)
        .def_property_readonly("labels",
                               [](const DirectedGraph& g) {
                                   return std::vector<std::int64_t>(g.labels().begin(), g.labels().end());
                               })
        .def("arcs",
             [](const DirectedGraph& g) {
                 std::vector<std::pair<NodeId, NodeId>> out;
                 for (const auto& a : g.arcs()) out.emplace_back(a.tail, a.head);
                 return out;
             })
        .def("serialize", [](const DirectedGraph& g) { return serialize(g); })
        .def("__repr__", [](const DirectedGraph& g) {
            return "<Graph n=" + std::to_string(g.num_nodes()) + " m=" + std::to_string(g.num_arcs()) + ">";
        });

    py::class_<ScenarioSet>(m, "ScenarioSet")
        .def("__len__", &ScenarioSet::size)
        .def_property_readonly("graph",
                               [](const ScenarioSet& s) { return std::const_pointer_cast<DirectedGraph>(s.graph_ptr()); })
        .def_property_readonly("weights",
                               [](const ScenarioSet& s) {
                                   std::vector<double> w;
                                   for (const auto& sc : s.scenarios()) w.push_back(sc.weight());
                                   return w;
                               })
        .def("live_arcs",
             [](const ScenarioSet& s, std::size_t i) {
                 if (i >= s.size()) throw std::out_of_range("scenario index out of range");
                 return std::vector<ArcId>(s[i].live_arcs().begin(), s[i].live_arcs().end());
             })
        .def("to_text",
             [](const ScenarioSet& s) {
                 std::ostringstream out;
                 write_scenarios(out, s);
                 return out.str();
             })
        .def("__eq__", [](const ScenarioSet& a, const ScenarioSet& b) { return a == b; });

    m.def(
        "sample_ic",
        [](const GraphPtr& g, const py::object& p, std::size_t count, std::uint64_t seed, std::size_t workers) {
            return sample_ic(g, per_arc(*g, p), count, seed, workers);
        },
        py::arg("graph"), py::arg("p"), py::arg("count"), py::arg("seed"), py::arg("workers") = 1);
    m.def(
        "sample_lt",
        [](const GraphPtr& g, std::size_t count, std::uint64_t seed, const py::object& weights, std::size_t workers) {
            const auto w = weights.is_none() ? lt_default_weights(*g) : per_arc(*g, weights);
            return sample_lt(g, w, count, seed, workers);
        },
        py::arg("graph"), py::arg("count"), py::arg("seed"), py::arg("weights") = py::none(), py::arg("workers") = 1);
    m.def(
        "enumerate_ic", [](const GraphPtr& g, double p) { return enumerate_ic(g, p); }, py::arg("graph"), py::arg("p"));
    m.def("all_live", [](const GraphPtr& g) { return all_live(g); }, py::arg("graph"));

    m.def(
        "expected_spread",
        [](const ScenarioSet& set, const std::vector<NodeId>& seeds, std::size_t workers) {
            return expected_spread(set, seeds_of(seeds), workers);
        },
        py::arg("scenarios"), py::arg("seeds"), py::arg("workers") = 1);

    py::class_<SolveReport>(m, "Report")
        .def_property_readonly("seeds", [](const SolveReport& r) { return members(r.seeds); })
        .def_readonly("objective", &SolveReport::objective)
        .def_readonly("bound", &SolveReport::bound)
        .def_readonly("gap", &SolveReport::gap)
        .def_readonly("cuts_total", &SolveReport::cuts_total)
        .def_property_readonly("cuts_by_family",
                               [](const SolveReport& r) {
                                   std::map<std::string, std::size_t> out;
                                   for (const auto& [f, c] : r.cuts_by_family) out[to_string(f)] = c;
                                   return out;
                               })
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("wall_ms", &SolveReport::wall_ms)
        .def_property_readonly("termination", [](const SolveReport& r) { return to_string(r.termination); })
        .def("__repr__", [](const SolveReport& r) {
            std::ostringstream out;
            out << "<Report objective=" << r.objective << " bound=" << r.bound << " seeds=[";
            for (std::size_t i = 0; i < r.seeds.size(); ++i) out << (i ? ", " : "") << r.seeds.members()[i];
            out << "]>";
            return out.str();
        });

    m.def("greedy", &run_greedy, py::arg("scenarios"), py::arg("k"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "dcg",
        [](const ScenarioSet& set, std::size_t k, const std::string& family, bool warm_start, bool singlecut,
           double epsilon, double master_gap, double time_limit, std::size_t workers) {
            DcgOptions o;
            o.cut_family = cut_family_from_string(family);
            o.warm_start_empty_set = warm_start;
            o.aggregation = singlecut ? Aggregation::singlecut : Aggregation::multicut;
            o.epsilon = epsilon;
            o.master_rel_gap = master_gap;
            o.time_limit_seconds = time_limit;
            o.workers = workers;
            py::gil_scoped_release release;
            return run_dcg(set, k, o);
        },
        py::arg("scenarios"), py::arg("k"), py::arg("family") = "submodular", py::arg("warm_start") = false,
        py::arg("singlecut") = false, py::arg("epsilon") = 0.0, py::arg("master_gap") = 0.01,
        py::arg("time_limit") = 0.0, py::arg("workers") = 1);
    m.def("k1_exact", &k1_exact, py::arg("scenarios"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("brute_force", &brute_force_opt, py::arg("scenarios"), py::arg("k"), py::arg("max_subsets") = 10'000'000,
          py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
}
