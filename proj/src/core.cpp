#include "coevo/core.hpp"

#include <sstream>

namespace coevo {

std::string_view to_string(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::Complete: return "complete";
        case NetworkKind::ScaleFree: return "scale_free";
        case NetworkKind::Community: return "community";
    }
    return "unknown";
}

NetworkKind parse_network_kind(std::string_view name) {
    if (name == "complete") return NetworkKind::Complete;
    if (name == "scale_free" || name == "scale-free" || name == "scalefree") return NetworkKind::ScaleFree;
    if (name == "community") return NetworkKind::Community;
    throw std::invalid_argument("unknown network kind: " + std::string(name));
}

std::string_view to_string(ConfigErrorKind kind) {
    switch (kind) {
        case ConfigErrorKind::InvalidBounds: return "InvalidBounds";
        case ConfigErrorKind::InvalidSize: return "InvalidSize";
        case ConfigErrorKind::InvalidPersistence: return "InvalidPersistence";
    }
    return "Unknown";
}

ConfigError::ConfigError(ConfigErrorKind kind, const std::string& detail)
    : std::invalid_argument(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

SimConfig validate_config(const SimConfig& cfg) {
    // NaN fails every comparison below, so it is rejected as well.
    if (!(cfg.phi > 0.0 && cfg.phi < cfg.epsilon && cfg.epsilon <= 1.0)) {
        std::ostringstream msg;
        msg << "require 0 < phi < epsilon <= 1 (phi=" << cfg.phi << ", epsilon=" << cfg.epsilon << ")";
        throw ConfigError(ConfigErrorKind::InvalidBounds, msg.str());
    }
    if (cfg.n < 2) {
        throw ConfigError(ConfigErrorKind::InvalidSize, "n must be at least 2");
    }
    if (cfg.network_kind == NetworkKind::Community && (cfg.n % 2 != 0 || cfg.n < 4)) {
        throw ConfigError(ConfigErrorKind::InvalidSize, "community network needs an even n >= 4");
    }
    if (cfg.network_kind == NetworkKind::ScaleFree && cfg.n <= kScaleFreeSeed) {
        throw ConfigError(ConfigErrorKind::InvalidSize, "scale-free network needs n > 4");
    }
    if (cfg.p < 2) {
        throw ConfigError(ConfigErrorKind::InvalidPersistence, "persistence p must be at least 2");
    }
    return cfg;
}

RelationNetwork RelationNetwork::complete(std::size_t n) {
    RelationNetwork net(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) net.adj_[i * n + j] = 1;
    return net;
}

void RelationNetwork::set_link(std::size_t i, std::size_t j, bool value) {
    if (i == j) return;
    adj_[i * n_ + j] = value;
    adj_[j * n_ + i] = value;
}

std::size_t RelationNetwork::degree(std::size_t i) const {
    std::size_t k = 0;
    for (std::size_t j = 0; j < n_; ++j) k += adj_[i * n_ + j];
    return k;
}

std::vector<std::size_t> RelationNetwork::degrees() const {
    std::vector<std::size_t> k(n_);
    for (std::size_t i = 0; i < n_; ++i) k[i] = degree(i);
    return k;
}

std::size_t RelationNetwork::edge_count() const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) total += adj_[i * n_ + j];
    return total;
}

std::vector<std::pair<std::size_t, std::size_t>> RelationNetwork::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (adj_[i * n_ + j]) out.emplace_back(i, j);
    return out;
}

namespace {

std::uint64_t mix_stream_seed(std::uint64_t seed, std::uint64_t stream_id) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x9E3779B97F4A7C15ULL));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(mix_stream_seed(seed, stream_id)) {}

RngStream::result_type RngStream::operator()() {
    ++draws_;
    return engine_();
}

double RngStream::uniform01() {
    // 53 high bits -> [0, 1)
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::uniform_index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(*this);
}

double RngStream::normal(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(*this);
}

RngStream derive_stream(std::uint64_t seed, std::uint64_t stream_id) { return RngStream(seed, stream_id); }

}  // namespace coevo
