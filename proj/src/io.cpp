#include "coevo/io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace coevo::io {

using nlohmann::json;

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
    out << kTraceHeader << '\n';
    for (const auto& r : trace.records) {
        out << r.t << ',' << r.i + 1 << ',' << r.j + 1 << ',' << format_real(r.d_before) << ',' << r.k_i << ','
            << r.k_j << ',' << format_real(r.alpha_i) << ',' << format_real(r.alpha_j) << ','
            << format_real(r.o_i_after) << ',' << format_real(r.o_j_after) << '\n';
    }
}

void write_steps_csv(std::ostream& out, const std::vector<CellResult>& rows) {
    out << kStepsHeader << '\n';
    for (const auto& r : rows) {
        out << to_string(r.cell.network) << ',' << r.cell.n << ',' << r.cell.p << ',' << format_real(r.cell.epsilon)
            << ',' << format_real(r.cell.phi) << ',' << r.replicates << ',' << format_real(r.mean_T) << ','
            << format_real(r.std_T) << ',' << r.cap_hits << '\n';
    }
}

void write_clusters_csv(std::ostream& out, const std::vector<CellResult>& rows) {
    out << kClustersHeader << '\n';
    for (const auto& r : rows) {
        out << to_string(r.cell.network) << ',' << r.cell.n << ',' << format_real(r.cell.epsilon) << ','
            << format_real(r.cell.phi) << ',' << r.cell.p << ',' << r.replicates << ',' << format_real(r.mean_m)
            << ',' << format_real(r.std_m) << ',' << r.cap_hits << '\n';
    }
}

namespace {

json edges_json(const RelationNetwork& net) {
    json out = json::array();
    for (auto [i, j] : net.edges()) out.push_back({i + 1, j + 1});
    return out;
}

RelationNetwork network_from_json(std::size_t n, const json& edges) {
    RelationNetwork net(n);
    for (const auto& e : edges) {
        const auto i = e.at(0).get<std::size_t>();
        const auto j = e.at(1).get<std::size_t>();
        if (i < 1 || j < 1 || i > n || j > n || i == j) throw std::runtime_error("trace json: bad edge");
        net.set_link(i - 1, j - 1, true);
    }
    return net;
}

}  // namespace

std::string trace_to_json(const RunTrace& trace, int indent) {
    const SimConfig& c = trace.config;
    json doc;
    doc["config"] = {{"n", c.n},
                     {"epsilon", c.epsilon},
                     {"phi", c.phi},
                     {"p", c.p},
                     {"network", std::string(to_string(c.network_kind))},
                     {"seed", c.seed},
                     {"max_steps", c.max_steps}};
    doc["initial"] = {{"opinions", trace.initial.opinions.opinions}, {"edges", edges_json(trace.initial.network)}};
    json records = json::array();
    for (const auto& r : trace.records) {
        records.push_back({{"t", r.t},
                           {"i", r.i + 1},
                           {"j", r.j + 1},
                           {"d_before", r.d_before},
                           {"k_i", r.k_i},
                           {"k_j", r.k_j},
                           {"alpha_i", r.alpha_i},
                           {"alpha_j", r.alpha_j},
                           {"o_i_before", r.o_i_before},
                           {"o_j_before", r.o_j_before},
                           {"o_i_after", r.o_i_after},
                           {"o_j_after", r.o_j_after}});
    }
    doc["records"] = std::move(records);
    doc["T"] = trace.T;
    doc["terminated"] = trace.terminated == Termination::Stable ? "stable" : "cap_hit";
    doc["final"] = {{"opinions", trace.final_opinions.opinions}, {"edges", edges_json(trace.final_network)}};
    // nlohmann emits shortest round-trip representations for doubles.
    return doc.dump(indent);
}

RunTrace trace_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        RunTrace trace;
        const json& c = doc.at("config");
        trace.config.n = c.at("n").get<std::size_t>();
        trace.config.epsilon = c.at("epsilon").get<double>();
        trace.config.phi = c.at("phi").get<double>();
        trace.config.p = c.at("p").get<int>();
        trace.config.network_kind = parse_network_kind(c.at("network").get<std::string>());
        trace.config.seed = c.at("seed").get<std::uint64_t>();
        trace.config.max_steps = c.at("max_steps").get<std::size_t>();
        const std::size_t n = trace.config.n;

        trace.initial.opinions.opinions = doc.at("initial").at("opinions").get<std::vector<double>>();
        if (trace.initial.opinions.size() != n) throw std::runtime_error("trace json: initial opinions length != n");
        trace.initial.network = network_from_json(n, doc.at("initial").at("edges"));

        for (const auto& r : doc.at("records")) {
            InteractionRecord rec{};
            rec.t = r.at("t").get<std::size_t>();
            rec.i = r.at("i").get<std::size_t>() - 1;
            rec.j = r.at("j").get<std::size_t>() - 1;
            if (rec.i >= n || rec.j >= n) throw std::runtime_error("trace json: record index out of range");
            rec.d_before = r.at("d_before").get<double>();
            rec.k_i = r.at("k_i").get<std::size_t>();
            rec.k_j = r.at("k_j").get<std::size_t>();
            rec.alpha_i = r.at("alpha_i").get<double>();
            rec.alpha_j = r.at("alpha_j").get<double>();
            rec.o_i_before = r.at("o_i_before").get<double>();
            rec.o_j_before = r.at("o_j_before").get<double>();
            rec.o_i_after = r.at("o_i_after").get<double>();
            rec.o_j_after = r.at("o_j_after").get<double>();
            trace.records.push_back(rec);
        }
        trace.T = doc.at("T").get<std::size_t>();
        const auto term = doc.at("terminated").get<std::string>();
        trace.terminated = term == "stable" ? Termination::Stable : Termination::CapHit;
        trace.final_opinions.opinions = doc.at("final").at("opinions").get<std::vector<double>>();
        trace.final_opinions.t = trace.T;
        trace.final_network = network_from_json(n, doc.at("final").at("edges"));
        return trace;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("trace json: ") + e.what());
    }
}

}  // namespace coevo::io
