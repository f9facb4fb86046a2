#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "coevo/analysis.hpp"
#include "coevo/dynamics.hpp"
#include "coevo/experiments.hpp"
#include "coevo/io.hpp"
#include "coevo/network.hpp"

namespace py = pybind11;
using namespace coevo;

namespace {

OpinionProfile profile(const std::vector<double>& o) { return OpinionProfile{o, 0}; }

RelationNetwork network_from(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    RelationNetwork net(n);
    for (auto [i, j] : edges) {
        if (i >= n || j >= n) throw py::index_error("edge endpoint out of range");
        net.set_link(i, j, true);
    }
    return net;
}

py::list matrix_rows(const DistanceMatrix& d) {
    py::list rows;
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::vector<double> row(d.size());
        for (std::size_t j = 0; j < d.size(); ++j) row[j] = d(i, j);
        rows.append(py::cast(row));
    }
    return rows;
}

DistanceMatrix matrix_from(const std::vector<double>& o) { return distance_matrix(profile(o)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Co-evolving opinion and relationship network simulator";

    py::enum_<NetworkKind>(m, "NetworkKind")
        .value("complete", NetworkKind::Complete)
        .value("scale_free", NetworkKind::ScaleFree)
        .value("community", NetworkKind::Community);
    m.def("parse_network_kind", [](const std::string& s) { return parse_network_kind(s); });

    py::enum_<ConfigErrorKind>(m, "ConfigErrorKind")
        .value("InvalidBounds", ConfigErrorKind::InvalidBounds)
        .value("InvalidSize", ConfigErrorKind::InvalidSize)
        .value("InvalidPersistence", ConfigErrorKind::InvalidPersistence);

    // The message starts with the ConfigErrorKind name.
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NotStable>(m, "NotStable", PyExc_RuntimeError);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](std::size_t n, double epsilon, double phi, int p, NetworkKind network_kind,
                         std::uint64_t seed, std::size_t max_steps) {
                 return SimConfig{n, epsilon, phi, p, network_kind, seed, max_steps};
             }),
             py::arg("n") = 10, py::arg("epsilon") = 0.5, py::arg("phi") = 0.1, py::arg("p") = 2,
             py::arg("network_kind") = NetworkKind::Complete, py::arg("seed") = 0,
             py::arg("max_steps") = 1'000'000)
        .def_readwrite("n", &SimConfig::n)
        .def_readwrite("epsilon", &SimConfig::epsilon)
        .def_readwrite("phi", &SimConfig::phi)
        .def_readwrite("p", &SimConfig::p)
        .def_readwrite("network_kind", &SimConfig::network_kind)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("max_steps", &SimConfig::max_steps);
    m.def("validate_config", &validate_config);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream_id") = 0)
        .def("uniform01", &RngStream::uniform01)
        .def("uniform_index", &RngStream::uniform_index)
        .def_property_readonly("draws", &RngStream::draws);

    py::class_<RelationNetwork>(m, "RelationNetwork")
        .def(py::init(&network_from), py::arg("n"), py::arg("edges"))
        .def_static("complete", &RelationNetwork::complete)
        .def("__len__", &RelationNetwork::size)
        .def("linked", &RelationNetwork::linked)
        .def("degrees", &RelationNetwork::degrees)
        .def("edge_count", &RelationNetwork::edge_count)
        .def("edges", &RelationNetwork::edges)
        .def(py::self == py::self);

    py::class_<InitialCondition>(m, "InitialCondition")
        .def_readonly("network", &InitialCondition::network)
        .def_property_readonly("opinions", [](const InitialCondition& ic) { return ic.opinions.opinions; });

    auto gen = [](InitialCondition (*f)(std::size_t, RngStream&)) {
        return [f](std::size_t n, std::uint64_t seed, std::uint64_t stream_id) {
            RngStream rng(seed, stream_id);
            return f(n, rng);
        };
    };
    m.def("gen_complete", gen(&gen_complete), py::arg("n"), py::arg("seed"), py::arg("stream_id") = 0);
    m.def("gen_scale_free", gen(&gen_scale_free), py::arg("n"), py::arg("seed"), py::arg("stream_id") = 0);
    m.def("gen_community", gen(&gen_community), py::arg("n"), py::arg("seed"), py::arg("stream_id") = 0);

    m.def("distance_matrix", [](const std::vector<double>& o) { return matrix_rows(matrix_from(o)); });
    m.def("is_stable", [](const std::vector<double>& o, double epsilon, double phi) {
        return is_stable(matrix_from(o), epsilon, phi);
    });
    m.def("negotiable_set", [](const std::vector<double>& o, std::size_t i, double epsilon, double phi) {
        return negotiable_set(i, matrix_from(o), epsilon, phi);
    });
    m.def(
        "recommend",
        [](const std::vector<double>& o, double epsilon, double phi, RngStream& rng) -> py::object {
            const auto pair = recommend(matrix_from(o), epsilon, phi, rng);
            if (!pair) return py::none();
            return py::make_tuple(pair->i, pair->j);
        },
        py::arg("opinions"), py::arg("epsilon"), py::arg("phi"), py::arg("rng"));
    m.def("convergence_params", [](std::size_t k_i, std::size_t k_j, int p) {
        const auto a = convergence_params(k_i, k_j, p);
        return std::make_pair(a.alpha_i, a.alpha_j);
    });
    m.def("update_pair", &update_pair);

    py::class_<InteractionRecord>(m, "InteractionRecord")
        .def_readonly("t", &InteractionRecord::t)
        .def_readonly("i", &InteractionRecord::i)
        .def_readonly("j", &InteractionRecord::j)
        .def_readonly("d_before", &InteractionRecord::d_before)
        .def_readonly("k_i", &InteractionRecord::k_i)
        .def_readonly("k_j", &InteractionRecord::k_j)
        .def_readonly("alpha_i", &InteractionRecord::alpha_i)
        .def_readonly("alpha_j", &InteractionRecord::alpha_j)
        .def_readonly("o_i_before", &InteractionRecord::o_i_before)
        .def_readonly("o_j_before", &InteractionRecord::o_j_before)
        .def_readonly("o_i_after", &InteractionRecord::o_i_after)
        .def_readonly("o_j_after", &InteractionRecord::o_j_after);

    py::class_<RunTrace>(m, "RunTrace")
        .def_readonly("config", &RunTrace::config)
        .def_readonly("initial", &RunTrace::initial)
        .def_readonly("records", &RunTrace::records)
        .def_readonly("T", &RunTrace::T)
        .def_property_readonly("stable",
                               [](const RunTrace& t) { return t.terminated == Termination::Stable; })
        .def_property_readonly("final_opinions", [](const RunTrace& t) { return t.final_opinions.opinions; })
        .def_readonly("final_network", &RunTrace::final_network)
        .def_readonly("cycle_period", &RunTrace::cycle_period);

    m.def("run", py::overload_cast<const SimConfig&, std::uint64_t>(&run), py::arg("config"),
          py::arg("stream_id") = 0, py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_from",
        [](const SimConfig& cfg, const std::vector<double>& opinions, const RelationNetwork& net,
           std::uint64_t stream_id) {
            RngStream rng(cfg.seed, stream_id);
            return run_from(validate_config(cfg), InitialCondition{net, profile(opinions)}, rng);
        },
        py::arg("config"), py::arg("opinions"), py::arg("network"), py::arg("stream_id") = 0);
    m.def("replay", [](const std::vector<double>& initial, const std::vector<InteractionRecord>& records) {
        return replay(profile(initial), records).opinions;
    });

    m.def("extract_clusters", [](const std::vector<double>& o, double epsilon, double phi) {
        return extract_clusters(profile(o), epsilon, phi).clusters;
    });
    m.def("aggregate", [](const std::vector<double>& o, const std::vector<std::size_t>& degrees) {
        return aggregate(profile(o), degrees);
    });
    m.def("trace_stats", [](const RunTrace& t) {
        const auto s = trace_stats(t);
        py::dict d;
        d["T"] = s.T;
        d["m"] = s.m;
        d["aggregate"] = s.aggregate;
        d["spread"] = s.spread;
        return d;
    });

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("n_values", &SweepSpec::n_values)
        .def_readwrite("epsilon_values", &SweepSpec::epsilon_values)
        .def_readwrite("phi_values", &SweepSpec::phi_values)
        .def_readwrite("p_values", &SweepSpec::p_values)
        .def_readwrite("networks", &SweepSpec::networks)
        .def_readwrite("replicates", &SweepSpec::replicates)
        .def_readwrite("base_seed", &SweepSpec::base_seed)
        .def_readwrite("max_steps", &SweepSpec::max_steps)
        .def_readwrite("threads", &SweepSpec::threads);
    m.def("default_steps_spec", &default_steps_spec, py::arg("desk_scale") = false);
    m.def("default_clusters_spec", &default_clusters_spec, py::arg("desk_scale") = false);

    py::class_<CellResult>(m, "CellResult")
        .def_property_readonly("network", [](const CellResult& r) { return r.cell.network; })
        .def_property_readonly("n", [](const CellResult& r) { return r.cell.n; })
        .def_property_readonly("p", [](const CellResult& r) { return r.cell.p; })
        .def_property_readonly("epsilon", [](const CellResult& r) { return r.cell.epsilon; })
        .def_property_readonly("phi", [](const CellResult& r) { return r.cell.phi; })
        .def_readonly("replicates", &CellResult::replicates)
        .def_readonly("cap_hits", &CellResult::cap_hits)
        .def_readonly("mean_T", &CellResult::mean_T)
        .def_readonly("std_T", &CellResult::std_T)
        .def_readonly("mean_m", &CellResult::mean_m)
        .def_readonly("std_m", &CellResult::std_m);
    m.def(
        "sweep_steps", [](const SweepSpec& s) { return sweep_steps(s); }, py::call_guard<py::gil_scoped_release>());
    m.def(
        "sweep_clusters", [](const SweepSpec& s) { return sweep_clusters(s); },
        py::call_guard<py::gil_scoped_release>());

    m.def("trace_to_json", &io::trace_to_json, py::arg("trace"), py::arg("indent") = -1);
    m.def("trace_from_json", &io::trace_from_json);
}
