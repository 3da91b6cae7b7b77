#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace baggy {

enum class Errc {
    Malformed,
    Disconnected,
    TooFewEdges,
    EmptyBag,
    NotPartition,
    NotTree,
    EdgeUncovered,
    TooLarge,
    SizeLimit,
    InvalidTree,
    InconsistentMonomial,
    Degenerate,
};

constexpr std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::Malformed: return "Malformed";
    case Errc::Disconnected: return "Disconnected";
    case Errc::TooFewEdges: return "TooFewEdges";
    case Errc::EmptyBag: return "EmptyBag";
    case Errc::NotPartition: return "NotPartition";
    case Errc::NotTree: return "NotTree";
    case Errc::EdgeUncovered: return "EdgeUncovered";
    case Errc::TooLarge: return "TooLarge";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::InvalidTree: return "InvalidTree";
    case Errc::InconsistentMonomial: return "InconsistentMonomial";
    case Errc::Degenerate: return "Degenerate";
    }
    return "Unknown";
}

/// Undirected edge {u, v} of a pattern graph, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::optional<Edge> edge = std::nullopt)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), edge_(edge) {}

    Errc code() const noexcept { return code_; }

    /// The offending edge, set for EdgeUncovered.
    const std::optional<Edge>& edge() const noexcept { return edge_; }

private:
    Errc code_;
    std::optional<Edge> edge_;
};

/// Result of a validity check: empty means ok.
using Status = std::optional<Error>;

inline void throw_if_error(const Status& status) {
    if (status) {
        throw *status;
    }
}

} // namespace baggy
