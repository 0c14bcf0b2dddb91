#include "aco/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace aco {

ParseError::ParseError(Kind kind, int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

namespace {

using Kind = ParseError::Kind;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) tokens.push_back(s.substr(i, j - i));
        i = j;
    }
    return tokens;
}

template <typename T>
std::optional<T> parse_number(std::string_view token) {
    T value{};
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) return std::nullopt;
    }
    return value;
}

void check_index(const Instance& inst, int i) {
    if (i < 0 || i >= inst.dimension())
        throw std::out_of_range("city index " + std::to_string(i) + " outside [0, " +
                                std::to_string(inst.dimension()) + ")");
}

}  // namespace

Instance parse_instance(std::string_view text) {
    Instance inst;
    std::optional<int> dimension;
    bool have_edge_type = false;
    bool in_coords = false;
    bool saw_coord_section = false;
    int coord_section_line = 0;
    int rows = 0;
    std::vector<bool> seen;
    int line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;

        if (upper(line) == "EOF") break;

        if (in_coords) {
            auto tokens = split_ws(line);
            if (tokens.size() != 3)
                throw ParseError(Kind::NonNumericCoordinate, line_no,
                                 "expected \"<id> <x> <y>\", got \"" + std::string(line) + "\"");
            auto id = parse_number<long long>(tokens[0]);
            auto x = parse_number<double>(tokens[1]);
            auto y = parse_number<double>(tokens[2]);
            if (!id || !x || !y)
                throw ParseError(Kind::NonNumericCoordinate, line_no,
                                 "non-numeric coordinate row \"" + std::string(line) + "\"");
            ++rows;
            if (rows > *dimension)
                throw ParseError(Kind::CoordinateCountMismatch, line_no,
                                 "more coordinate rows than DIMENSION " +
                                     std::to_string(*dimension));
            if (*id < 1 || *id > *dimension || seen[*id - 1])
                throw ParseError(Kind::BadNodeId, line_no,
                                 "node id " + std::string(tokens[0]) + " is out of range or repeated");
            seen[*id - 1] = true;
            inst.coords(*id - 1, 0) = *x;
            inst.coords(*id - 1, 1) = *y;
            continue;
        }

        std::string_view key = line;
        std::string_view value;
        if (auto colon = line.find(':'); colon != std::string_view::npos) {
            key = trim(line.substr(0, colon));
            value = trim(line.substr(colon + 1));
        }
        const std::string ukey = upper(key);

        if (ukey == "NODE_COORD_SECTION") {
            if (!dimension)
                throw ParseError(Kind::MissingKeyword, line_no,
                                 "NODE_COORD_SECTION before DIMENSION");
            if (!have_edge_type)
                throw ParseError(Kind::MissingKeyword, line_no,
                                 "NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
            in_coords = true;
            saw_coord_section = true;
            coord_section_line = line_no;
            inst.coords.setZero(*dimension, 2);
            seen.assign(*dimension, false);
            continue;
        }
        if (line.find(':') == std::string_view::npos)
            throw ParseError(Kind::MalformedHeader, line_no,
                             "expected \"KEY: value\", got \"" + std::string(line) + "\"");

        if (ukey == "NAME") {
            inst.name = std::string(value);
        } else if (ukey == "COMMENT") {
            inst.comment = std::string(value);
        } else if (ukey == "TYPE") {
            if (upper(value) != "TSP")
                throw ParseError(Kind::UnsupportedType, line_no,
                                 "unsupported TYPE \"" + std::string(value) + "\"");
        } else if (ukey == "DIMENSION") {
            auto d = parse_number<int>(value);
            if (!d || *d <= 0)
                throw ParseError(Kind::MalformedHeader, line_no,
                                 "DIMENSION is not a positive integer: \"" + std::string(value) + "\"");
            if (*d < 3)
                throw ParseError(Kind::TooFewCities, line_no,
                                 "DIMENSION " + std::to_string(*d) + " is below 3");
            dimension = *d;
        } else if (ukey == "EDGE_WEIGHT_TYPE") {
            if (upper(value) != "EUC_2D")
                throw ParseError(Kind::UnsupportedEdgeWeightType, line_no,
                                 "unsupported EDGE_WEIGHT_TYPE \"" + std::string(value) + "\"");
            inst.edge_weight_type = EdgeWeightType::Euc2D;
            have_edge_type = true;
        } else if (key.empty()) {
            throw ParseError(Kind::MalformedHeader, line_no, "empty header key");
        }
        // Other specification keys (DISPLAY_DATA_TYPE, ...) carry nothing we use.
    }

    if (!dimension) throw ParseError(Kind::MissingKeyword, line_no, "missing DIMENSION");
    if (!have_edge_type) throw ParseError(Kind::MissingKeyword, line_no, "missing EDGE_WEIGHT_TYPE");
    if (!saw_coord_section)
        throw ParseError(Kind::MissingKeyword, line_no, "missing NODE_COORD_SECTION");
    if (rows != *dimension)
        throw ParseError(Kind::CoordinateCountMismatch, line_no,
                         "DIMENSION " + std::to_string(*dimension) + " but " +
                             std::to_string(rows) + " coordinate rows after line " +
                             std::to_string(coord_section_line));
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string to_tsplib(const Instance& inst) {
    std::string out;
    out += "NAME: " + inst.name + "\n";
    out += "TYPE: TSP\n";
    if (!inst.comment.empty()) out += "COMMENT: " + inst.comment + "\n";
    out += "DIMENSION: " + std::to_string(inst.dimension()) + "\n";
    out += "EDGE_WEIGHT_TYPE: EUC_2D\n";
    out += "NODE_COORD_SECTION\n";
    char buf[64];
    for (int i = 0; i < inst.dimension(); ++i) {
        out += std::to_string(i + 1);
        for (int c = 0; c < 2; ++c) {
            // Shortest round-trip representation.
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, inst.coords(i, c));
            out += ' ';
            out.append(buf, end);
        }
        out += '\n';
    }
    out += "EOF\n";
    return out;
}

Length distance(const Instance& inst, int i, int j) {
    check_index(inst, i);
    check_index(inst, j);
    const double dx = inst.coords(i, 0) - inst.coords(j, 0);
    const double dy = inst.coords(i, 1) - inst.coords(j, 1);
    return static_cast<Length>(std::sqrt(dx * dx + dy * dy) + 0.5);
}

DistanceMatrix build_distance_matrix(const Instance& inst) {
    const int n = inst.dimension();
    DistanceMatrix d = DistanceMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = distance(inst, i, j);
    return d;
}

Eigen::MatrixXd heuristic_matrix(const DistanceMatrix& distances) {
    const Eigen::Index n = distances.rows();
    Eigen::MatrixXd eta(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == j)
                eta(i, j) = 0.0;
            else
                eta(i, j) = distances(i, j) > 0 ? 1.0 / static_cast<double>(distances(i, j))
                                                : kMaxHeuristic;
        }
    return eta;
}

}  // namespace aco
