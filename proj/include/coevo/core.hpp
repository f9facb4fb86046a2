#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coevo {

enum class NetworkKind { Complete, ScaleFree, Community };

std::string_view to_string(NetworkKind kind);
/// Accepts "complete", "scale_free" (or "scale-free", "scalefree"), "community".
NetworkKind parse_network_kind(std::string_view name);

/// Number of seed vertices (and links per inserted vertex) of the scale-free generator.
inline constexpr std::size_t kScaleFreeSeed = 4;

struct SimConfig {
    std::size_t n = 10;
    double epsilon = 0.5;  ///< bound of confidence
    double phi = 0.1;      ///< bound of consensus
    int p = 2;             ///< persistence degree
    NetworkKind network_kind = NetworkKind::Complete;
    std::uint64_t seed = 0;
    std::size_t max_steps = 1'000'000;
};

enum class ConfigErrorKind { InvalidBounds, InvalidSize, InvalidPersistence };

std::string_view to_string(ConfigErrorKind kind);

class ConfigError : public std::invalid_argument {
public:
    ConfigError(ConfigErrorKind kind, const std::string& detail);
    ConfigErrorKind kind() const noexcept { return kind_; }

private:
    ConfigErrorKind kind_;
};

/// Returns `cfg` unchanged or throws ConfigError naming the first violated rule.
/// Checks run in the order bounds, size, persistence.
SimConfig validate_config(const SimConfig& cfg);

struct OpinionProfile {
    std::vector<double> opinions;
    std::size_t t = 0;

    std::size_t size() const noexcept { return opinions.size(); }
    double operator[](std::size_t i) const { return opinions[i]; }
};

/// Symmetric, loop-free boolean adjacency over n individuals.
///
/// The invariants are maintained by the mutators: `set_link(i, j, v)` writes
/// both (i, j) and (j, i) and ignores the diagonal.
class RelationNetwork {
public:
    RelationNetwork() = default;
    explicit RelationNetwork(std::size_t n) : n_(n), adj_(n * n, 0) {}

    static RelationNetwork complete(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    bool linked(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
    void set_link(std::size_t i, std::size_t j, bool value);

    std::size_t degree(std::size_t i) const;
    std::vector<std::size_t> degrees() const;
    std::size_t edge_count() const;
    /// Canonical (i < j) list of links.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    bool operator==(const RelationNetwork&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> adj_;
};

/// SplitMix64 finalizer. Used for every seed derivation in the project.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Order-sensitive combination of two 64-bit words.
constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept {
    return splitmix64(h ^ (splitmix64(v) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2)));
}

/// Deterministic random stream.
///
/// Engine: std::mt19937_64 seeded with
/// `splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x9E3779B97F4A7C15))`.
/// Satisfies UniformRandomBitGenerator so it plugs into <random> distributions.
/// Reproducibility is guaranteed within one build (distributions from <random>
/// are implementation-defined across standard libraries).
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    static constexpr result_type min() noexcept { return std::numeric_limits<result_type>::min(); }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    /// Number of raw 64-bit words drawn so far.
    std::uint64_t draws() const noexcept { return draws_; }

    double uniform01();                         ///< [0, 1)
    std::size_t uniform_index(std::size_t n);   ///< {0, ..., n-1}, n > 0
    double normal(double mean, double stddev);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

RngStream derive_stream(std::uint64_t seed, std::uint64_t stream_id);

}  // namespace coevo
