#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace aco {

/// Tour and edge lengths. TSPLIB EUC_2D rounds to the nearest integer.
using Length = std::int64_t;

using DistanceMatrix = Eigen::Matrix<Length, Eigen::Dynamic, Eigen::Dynamic>;
using Coordinates = Eigen::Matrix<double, Eigen::Dynamic, 2>;

enum class EdgeWeightType { Euc2D };

/// A symmetric TSP instance. Row i of `coords` holds TSPLIB node i + 1.
struct Instance {
    std::string name;
    std::string comment;
    EdgeWeightType edge_weight_type = EdgeWeightType::Euc2D;
    Coordinates coords;

    int dimension() const { return static_cast<int>(coords.rows()); }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.name == b.name && a.comment == b.comment &&
               a.edge_weight_type == b.edge_weight_type && a.coords.rows() == b.coords.rows() &&
               a.coords == b.coords;
    }
};

class ParseError : public std::runtime_error {
public:
    enum class Kind {
        MalformedHeader,
        MissingKeyword,
        UnsupportedType,
        UnsupportedEdgeWeightType,
        CoordinateCountMismatch,
        NonNumericCoordinate,
        BadNodeId,
        TooFewCities,
    };

    ParseError(Kind kind, int line, const std::string& what);

    Kind kind() const noexcept { return kind_; }
    /// 1-based line number in the parsed document.
    int line() const noexcept { return line_; }

private:
    Kind kind_;
    int line_;
};

/// Parses the EUC_2D subset of TSPLIB. Header keys may appear in any order and
/// both "KEY: value" and "KEY : value" spacings are accepted.
Instance parse_instance(std::string_view text);

/// Reads and parses a TSPLIB file. Throws std::runtime_error if unreadable.
Instance load_instance(const std::filesystem::path& path);

/// Serializes back to TSPLIB text; parse_instance(to_tsplib(x)) == x.
std::string to_tsplib(const Instance& inst);

/// TSPLIB nint(sqrt(dx^2 + dy^2)). Throws std::out_of_range on a bad index.
Length distance(const Instance& inst, int i, int j);

DistanceMatrix build_distance_matrix(const Instance& inst);

/// Distances of zero between distinct cities get this heuristic value.
inline constexpr double kMaxHeuristic = 1e6;

/// eta_ij = 1 / d_ij off the diagonal, clamped to kMaxHeuristic; zero diagonal.
Eigen::MatrixXd heuristic_matrix(const DistanceMatrix& distances);

}  // namespace aco
