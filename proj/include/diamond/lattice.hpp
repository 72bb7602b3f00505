// Copyright 2025 The diamond-circuits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace diamond {

enum class Family : uint8_t { Diamond, Standard };
enum class Variant : uint8_t { Odd, EvenA, EvenB, NotApplicable };
enum class QubitRole : uint8_t { Data, MeasureZLike, MeasureXLike };
enum class PauliType : uint8_t { X, Z };

/// Integer lattice coordinate, x growing right and y growing down. Data
/// qubits sit on (odd, odd), measure qubits and plaquette/face centers on
/// (even, even).
struct Coord {
    int x = 0;
    int y = 0;
    auto operator<=>(const Coord&) const = default;
};

/// A weight-3 gauge operator of the diamond mid-cycle state: one measure
/// qubit (the apex) and the two data qubits it reads for one face. `round`
/// is the 1-based position in the period-4 schedule at which the apex
/// extracts this triangle.
struct Triangle {
    PauliType type;
    Coord apex;
    Coord d0, d1;  // d0 < d1
    Coord face;
    bool standalone = false;
    int round = 0;
};

/// A standard-code plaquette: measure qubit at `center`, 2 or 4 data qubits.
struct Plaquette {
    PauliType type;
    Coord center;
    std::vector<Coord> data;  // sorted
};

struct Stabilizer {
    PauliType type;
    enum class Kind : uint8_t {
        BoundaryWeight3,
        SuperstabilizerWeight6,
        BulkWeight4,
        BoundaryWeight2,
    } kind;
    std::vector<Coord> support;  // sorted
    // Indices into Layout::triangles for the two paired gauges; -1 for
    // unpaired stabilizers.
    int gauge_a = -1;
    int gauge_b = -1;

    int weight() const { return (int)support.size(); }
};

struct LineCount {
    int64_t qubit_lines = 0;
    int64_t coupler_lines = 0;
    int64_t total = 0;
};

/// Geometric description of one code instance. Construction is pure; the
/// value is immutable by convention and safe to share across threads.
struct Layout {
    int distance = 0;
    Family family = Family::Diamond;
    Variant variant = Variant::Odd;

    std::vector<Coord> data_qubits;     // (x,y)-lex sorted
    std::vector<Coord> measure_qubits;  // (x,y)-lex sorted
    std::map<Coord, QubitRole> roles;
    std::vector<std::pair<Coord, Coord>> couplers;  // normalized, sorted
    std::vector<Stabilizer> stabilizers;
    std::vector<std::pair<int, int>> gauge_pairs;  // triangle index pairs

    std::vector<Triangle> triangles;    // diamond family only
    std::vector<Plaquette> plaquettes;  // standard family only

    // Qubit indexing shared with generated circuits: all qubits in
    // (x,y)-lex order.
    std::vector<Coord> qubit_coords;
    std::map<Coord, int> qubit_index;

    int grid_extent() const { return 2 * distance; }

    bool is_data(Coord c) const {
        auto it = roles.find(c);
        return it != roles.end() && it->second == QubitRole::Data;
    }
    bool has_qubit(Coord c) const { return roles.count(c) != 0; }

    int index_of(Coord c) const {
        auto it = qubit_index.find(c);
        if (it == qubit_index.end()) throw std::invalid_argument("no qubit at given coord");
        return it->second;
    }
};

namespace detail {

inline void finish_indexing(Layout& lay) {
    lay.qubit_coords.clear();
    for (const auto& [c, r] : lay.roles) lay.qubit_coords.push_back(c);
    std::sort(lay.qubit_coords.begin(), lay.qubit_coords.end());
    for (size_t i = 0; i < lay.qubit_coords.size(); i++) {
        lay.qubit_index[lay.qubit_coords[i]] = (int)i;
    }
    std::sort(lay.data_qubits.begin(), lay.data_qubits.end());
    std::sort(lay.measure_qubits.begin(), lay.measure_qubits.end());
    std::sort(lay.couplers.begin(), lay.couplers.end());
}

}  // namespace detail

/// Builds the diamond (Lieb-lattice) layout. Odd d follows the distance-5
/// reference geometry; even d has two variants distinguished by which
/// measure-qubit subgrid is dropped (A: weight-3 stabilizers at all four
/// corners, the default; B: weight-6 at all four corners).
inline Layout build_diamond_layout(int d, Variant variant) {
    if (d < 2) throw std::invalid_argument("diamond layout needs d >= 2");
    bool odd = d % 2 == 1;
    if (odd && variant != Variant::Odd) {
        throw std::invalid_argument("odd distance uses Variant::Odd");
    }
    if (!odd && variant == Variant::Odd) {
        throw std::invalid_argument("even distance needs Variant::EvenA or Variant::EvenB");
    }

    Layout lay;
    lay.distance = d;
    lay.family = Family::Diamond;
    lay.variant = variant;
    const int n = 2 * d;

    // Measure sublattice residue of (x+y) mod 4. Odd d and variant B keep
    // residue 2; variant A keeps residue 0 (whose corner slots are dropped).
    const int measure_res = (variant == Variant::EvenA) ? 0 : 2;

    for (int x = 1; x < n; x += 2) {
        for (int y = 1; y < n; y += 2) {
            lay.data_qubits.push_back({x, y});
            lay.roles[{x, y}] = QubitRole::Data;
        }
    }
    auto is_corner = [&](Coord c) {
        return (c.x == 0 || c.x == n) && (c.y == 0 || c.y == n);
    };
    for (int x = 0; x <= n; x += 2) {
        for (int y = 0; y <= n; y += 2) {
            Coord c{x, y};
            if ((x + y) % 4 != measure_res || is_corner(c)) continue;
            lay.measure_qubits.push_back(c);
            // Bulk apexes alternate bases over the cycle; boundary columns are
            // pinned: x-boundary apexes always measure Z-like, y-boundary X-like.
            QubitRole role = QubitRole::MeasureZLike;
            if (y == 0 || y == n) role = QubitRole::MeasureXLike;
            lay.roles[c] = role;
        }
    }

    auto in_grid = [&](Coord c) { return c.x >= 1 && c.x <= n - 1 && c.y >= 1 && c.y <= n - 1; };
    auto has_measure = [&](Coord c) {
        auto it = lay.roles.find(c);
        return it != lay.roles.end() && it->second != QubitRole::Data;
    };

    // Triangles: per apex, up to two Z-triangles (data one column west/east)
    // and two X-triangles (data one row north/south).
    std::map<std::pair<Coord, PauliType>, std::vector<int>> face_tris;
    for (Coord a : lay.measure_qubits) {
        struct Probe {
            PauliType type;
            Coord d0, d1, face;
            int round;
        };
        Probe probes[4] = {
            {PauliType::Z, {a.x - 1, a.y - 1}, {a.x - 1, a.y + 1}, {a.x - 2, a.y}, 1},
            {PauliType::Z, {a.x + 1, a.y - 1}, {a.x + 1, a.y + 1}, {a.x + 2, a.y}, 2},
            {PauliType::X, {a.x - 1, a.y - 1}, {a.x + 1, a.y - 1}, {a.x, a.y - 2}, 3},
            {PauliType::X, {a.x - 1, a.y + 1}, {a.x + 1, a.y + 1}, {a.x, a.y + 2}, 4},
        };
        for (const auto& p : probes) {
            if (!in_grid(p.d0) || !in_grid(p.d1)) continue;
            if (p.face.x < 0 || p.face.x > n || p.face.y < 0 || p.face.y > n) continue;
            Triangle t{p.type, a, std::min(p.d0, p.d1), std::max(p.d0, p.d1), p.face, false,
                       p.round};
            face_tris[{p.face, p.type}].push_back((int)lay.triangles.size());
            lay.triangles.push_back(t);
        }
    }

    // Pair triangles across each face: two triangles of the same type on one
    // face form a weight-6 superstabilizer; a lone triangle is a boundary
    // weight-3 stabilizer.
    for (auto& [key, tris] : face_tris) {
        if (tris.size() == 2) {
            const Triangle& ta = lay.triangles[tris[0]];
            const Triangle& tb = lay.triangles[tris[1]];
            Stabilizer s;
            s.type = key.second;
            s.kind = Stabilizer::Kind::SuperstabilizerWeight6;
            s.support = {ta.apex, ta.d0, ta.d1, tb.apex, tb.d0, tb.d1};
            std::sort(s.support.begin(), s.support.end());
            s.gauge_a = tris[0];
            s.gauge_b = tris[1];
            lay.stabilizers.push_back(s);
            lay.gauge_pairs.push_back({tris[0], tris[1]});
        } else {
            Triangle& t = lay.triangles[tris[0]];
            t.standalone = true;
            Stabilizer s;
            s.type = key.second;
            s.kind = Stabilizer::Kind::BoundaryWeight3;
            s.support = {t.apex, t.d0, t.d1};
            std::sort(s.support.begin(), s.support.end());
            lay.stabilizers.push_back(s);
        }
    }

    // Couplers: every (apex, data) edge used by some triangle.
    std::set<std::pair<Coord, Coord>> edges;
    for (const auto& t : lay.triangles) {
        edges.insert({std::min(t.apex, t.d0), std::max(t.apex, t.d0)});
        edges.insert({std::min(t.apex, t.d1), std::max(t.apex, t.d1)});
    }
    lay.couplers.assign(edges.begin(), edges.end());

    detail::finish_indexing(lay);
    return lay;
}

/// Builds the standard rotated surface code layout: d^2 data qubits and
/// d^2-1 measure qubits, weight-4 bulk and weight-2 boundary stabilizers.
inline Layout build_standard_layout(int d) {
    if (d < 2) throw std::invalid_argument("standard layout needs d >= 2");
    Layout lay;
    lay.distance = d;
    lay.family = Family::Standard;
    lay.variant = Variant::NotApplicable;
    const int n = 2 * d;

    for (int x = 1; x < n; x += 2) {
        for (int y = 1; y < n; y += 2) {
            lay.data_qubits.push_back({x, y});
            lay.roles[{x, y}] = QubitRole::Data;
        }
    }

    auto in_grid = [&](Coord c) { return c.x >= 1 && c.x <= n - 1 && c.y >= 1 && c.y <= n - 1; };
    for (int x = 0; x <= n; x += 2) {
        for (int y = 0; y <= n; y += 2) {
            PauliType type = ((x + y) / 2) % 2 == 1 ? PauliType::Z : PauliType::X;
            std::vector<Coord> data;
            for (Coord dq : {Coord{x - 1, y - 1}, Coord{x + 1, y - 1}, Coord{x - 1, y + 1},
                             Coord{x + 1, y + 1}}) {
                if (in_grid(dq)) data.push_back(dq);
            }
            if (data.size() < 2) continue;
            if (data.size() == 2) {
                // Boundary plaquettes: X-type survive on the top/bottom rows,
                // Z-type on the left/right columns.
                bool top_bottom = (y == 0 || y == n);
                bool left_right = (x == 0 || x == n);
                if (top_bottom && type != PauliType::X) continue;
                if (left_right && type != PauliType::Z) continue;
            }
            Coord c{x, y};
            lay.measure_qubits.push_back(c);
            lay.roles[c] =
                type == PauliType::Z ? QubitRole::MeasureZLike : QubitRole::MeasureXLike;
            std::sort(data.begin(), data.end());
            lay.plaquettes.push_back({type, c, data});

            Stabilizer s;
            s.type = type;
            s.kind = data.size() == 4 ? Stabilizer::Kind::BulkWeight4
                                      : Stabilizer::Kind::BoundaryWeight2;
            s.support = data;
            lay.stabilizers.push_back(s);
        }
    }

    std::set<std::pair<Coord, Coord>> edges;
    for (const auto& p : lay.plaquettes) {
        for (Coord dq : p.data) {
            edges.insert({std::min(p.center, dq), std::max(p.center, dq)});
        }
    }
    lay.couplers.assign(edges.begin(), edges.end());

    detail::finish_indexing(lay);
    return lay;
}

/// Control-line budget of a layout: one line per qubit plus one per coupler,
/// readout excluded. Exact finite-size counts from enumeration.
inline LineCount line_count(const Layout& lay) {
    LineCount lc;
    lc.qubit_lines = (int64_t)lay.roles.size();
    lc.coupler_lines = (int64_t)lay.couplers.size();
    lc.total = lc.qubit_lines + lc.coupler_lines;
    return lc;
}

/// Structured JSON export of a layout for visualization tooling.
inline std::string layout_to_json(const Layout& lay) {
    std::ostringstream out;
    auto coord = [&](Coord c) {
        return "[" + std::to_string(c.x) + "," + std::to_string(c.y) + "]";
    };
    out << "{\n  \"family\": \"" << (lay.family == Family::Diamond ? "diamond" : "standard")
        << "\",\n  \"distance\": " << lay.distance << ",\n  \"variant\": \"";
    switch (lay.variant) {
        case Variant::Odd: out << "odd"; break;
        case Variant::EvenA: out << "even-a"; break;
        case Variant::EvenB: out << "even-b"; break;
        case Variant::NotApplicable: out << "n/a"; break;
    }
    out << "\",\n  \"qubits\": [";
    bool first = true;
    for (const auto& c : lay.qubit_coords) {
        if (!first) out << ", ";
        first = false;
        const char* role = "data";
        if (lay.roles.at(c) == QubitRole::MeasureZLike) role = "measure-z-like";
        if (lay.roles.at(c) == QubitRole::MeasureXLike) role = "measure-x-like";
        out << "{\"coord\": " << coord(c) << ", \"role\": \"" << role << "\"}";
    }
    out << "],\n  \"couplers\": [";
    first = true;
    for (const auto& [a, b] : lay.couplers) {
        if (!first) out << ", ";
        first = false;
        out << "[" << coord(a) << "," << coord(b) << "]";
    }
    out << "],\n  \"stabilizers\": [";
    first = true;
    for (const auto& s : lay.stabilizers) {
        if (!first) out << ", ";
        first = false;
        out << "{\"type\": \"" << (s.type == PauliType::Z ? "Z" : "X") << "\", \"weight\": "
            << s.weight() << ", \"support\": [";
        for (size_t i = 0; i < s.support.size(); i++) {
            if (i) out << ",";
            out << coord(s.support[i]);
        }
        out << "]}";
    }
    out << "]\n}\n";
    return out.str();
}

}  // namespace diamond
