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

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diamond {

/// Instruction kinds understood by the circuit IR.
///
/// RZ/RX are Z-/X-basis resets, MZ/MX the matching measurements. POLYGON is a
/// visualization annotation carried through parsing and serialization but
/// ignored by every semantic pass.
enum class Op : uint8_t {
    RZ,
    RX,
    MZ,
    MX,
    CX,
    TICK,
    DETECTOR,
    OBSERVABLE_INCLUDE,
    POLYGON,
};

inline const char* op_name(Op op) {
    switch (op) {
        case Op::RZ: return "R";
        case Op::RX: return "RX";
        case Op::MZ: return "M";
        case Op::MX: return "MX";
        case Op::CX: return "CX";
        case Op::TICK: return "TICK";
        case Op::DETECTOR: return "DETECTOR";
        case Op::OBSERVABLE_INCLUDE: return "OBSERVABLE_INCLUDE";
        case Op::POLYGON: return "POLYGON";
    }
    return "?";
}

/// A measurement-record reference. Parsers store the relative offset as
/// written and the absolute measurement index it resolved to.
struct RecRef {
    int64_t offset = 0;  // strictly negative, relative to the record end
    int64_t abs = -1;    // resolved absolute measurement index

    bool operator==(const RecRef& o) const { return offset == o.offset && abs == o.abs; }
};

struct QubitDecl {
    int32_t index = 0;
    double x = 0;
    double y = 0;

    bool operator==(const QubitDecl& o) const { return index == o.index && x == o.x && y == o.y; }
};

struct Instruction {
    Op op = Op::TICK;
    std::vector<int32_t> qubits;  // gate targets, or polygon vertices
    std::vector<RecRef> recs;     // DETECTOR / OBSERVABLE_INCLUDE targets
    std::vector<double> args;     // detector coord tag, polygon rgba, observable index

    bool operator==(const Instruction& o) const {
        return op == o.op && qubits == o.qubits && recs == o.recs && args == o.args;
    }
};

struct Diagnostic {
    size_t instruction_index = 0;
    std::string reason;
};

/// An ordered stabilizer circuit over indexed, coordinate-tagged qubits.
/// Immutable by convention once built; all passes treat it as a value.
struct Circuit {
    std::vector<QubitDecl> qubits;
    std::vector<Instruction> instructions;

    int64_t measurement_count() const {
        int64_t n = 0;
        for (const auto& ins : instructions) {
            if (ins.op == Op::MZ || ins.op == Op::MX) n += (int64_t)ins.qubits.size();
        }
        return n;
    }

    int32_t max_qubit_index() const {
        int32_t m = -1;
        for (const auto& q : qubits) m = std::max(m, q.index);
        for (const auto& ins : instructions) {
            for (int32_t t : ins.qubits) m = std::max(m, t);
        }
        return m;
    }

    /// Flat measurement record: (qubit, basis-is-x, instruction index).
    struct MeasurementInfo {
        int32_t qubit;
        bool is_x;
        size_t instruction;
    };
    std::vector<MeasurementInfo> measurement_record() const {
        std::vector<MeasurementInfo> rec;
        for (size_t i = 0; i < instructions.size(); i++) {
            const auto& ins = instructions[i];
            if (ins.op == Op::MZ || ins.op == Op::MX) {
                for (int32_t q : ins.qubits) rec.push_back({q, ins.op == Op::MX, i});
            }
        }
        return rec;
    }

    /// Measurement layers: maximal runs of M/MX instructions, with interleaved
    /// annotations (detectors, observables) allowed inside a run. Each entry
    /// is the ordered list of (qubit, is_x) pairs in record order.
    std::vector<std::vector<std::pair<int32_t, bool>>> measurement_layers() const {
        std::vector<std::vector<std::pair<int32_t, bool>>> out;
        bool in_layer = false;
        for (const auto& ins : instructions) {
            if (ins.op == Op::MZ || ins.op == Op::MX) {
                if (!in_layer) {
                    out.emplace_back();
                    in_layer = true;
                }
                for (int32_t q : ins.qubits) out.back().emplace_back(q, ins.op == Op::MX);
            } else if (ins.op == Op::DETECTOR || ins.op == Op::OBSERVABLE_INCLUDE ||
                       ins.op == Op::POLYGON) {
                // annotations do not break a measurement layer
            } else {
                in_layer = false;
            }
        }
        return out;
    }

    /// Detectors resolved to sets of absolute measurement indices.
    std::vector<std::set<int64_t>> resolved_detectors() const {
        std::vector<std::set<int64_t>> out;
        for (const auto& ins : instructions) {
            if (ins.op != Op::DETECTOR) continue;
            std::set<int64_t> s;
            for (const auto& r : ins.recs) s.insert(r.abs);
            out.push_back(std::move(s));
        }
        return out;
    }

    /// Observable supports resolved to absolute measurement indices, indexed
    /// by observable id.
    std::vector<std::set<int64_t>> resolved_observables() const {
        std::vector<std::set<int64_t>> out;
        for (const auto& ins : instructions) {
            if (ins.op != Op::OBSERVABLE_INCLUDE) continue;
            size_t id = ins.args.empty() ? 0 : (size_t)ins.args[0];
            if (out.size() <= id) out.resize(id + 1);
            for (const auto& r : ins.recs) {
                if (out[id].count(r.abs)) {
                    out[id].erase(r.abs);
                } else {
                    out[id].insert(r.abs);
                }
            }
        }
        return out;
    }

    bool operator==(const Circuit& o) const {
        return qubits == o.qubits && instructions == o.instructions;
    }
};

enum class CircuitFormat { StimText, Crumble };

namespace detail {

inline std::string fmt_double(double v) {
    if (v == (int64_t)v) return std::to_string((int64_t)v);
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

[[noreturn]] inline void parse_fail(size_t line, size_t col, const std::string& why) {
    throw std::invalid_argument("parse error at line " + std::to_string(line) + ", column " +
                                std::to_string(col) + ": " + why);
}

struct Cursor {
    std::string_view text;
    size_t pos = 0;
    size_t line = 1;
    size_t col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        char c = text[pos++];
        if (c == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
        return c;
    }
    void skip_spaces() {
        while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) take();
    }
    double take_number() {
        skip_spaces();
        size_t start = pos;
        size_t c0 = col, l0 = line;
        if (!done() && (peek() == '-' || peek() == '+')) take();
        bool any = false;
        while (!done() && (isdigit((unsigned char)peek()) || peek() == '.')) {
            take();
            any = true;
        }
        if (!any) parse_fail(l0, c0, "expected a number");
        return std::stod(std::string(text.substr(start, pos - start)));
    }
};

inline Op op_from_name(const std::string& name, size_t line, size_t col) {
    if (name == "R") return Op::RZ;
    if (name == "RX") return Op::RX;
    if (name == "M") return Op::MZ;
    if (name == "MX") return Op::MX;
    if (name == "CX") return Op::CX;
    if (name == "TICK") return Op::TICK;
    if (name == "DETECTOR" || name == "DT") return Op::DETECTOR;
    if (name == "OBSERVABLE_INCLUDE" || name == "OI") return Op::OBSERVABLE_INCLUDE;
    if (name == "POLYGON") return Op::POLYGON;
    parse_fail(line, col, "unknown instruction name '" + name + "'");
}

inline bool op_takes_recs(Op op) { return op == Op::DETECTOR || op == Op::OBSERVABLE_INCLUDE; }

}  // namespace detail

/// Parses the newline-delimited text format. One instruction per line;
/// "#" starts a comment; "NAME(args) targets..."; targets are decimal qubit
/// indices or rec[-k] record references. Record references are resolved to
/// absolute measurement indices as they are read.
inline Circuit parse_stim_text(std::string_view text) {
    Circuit c;
    std::map<int32_t, std::pair<double, double>> coords;
    int64_t nmeas = 0;
    size_t line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        line_no++;
        start = end + 1;
        std::string lstr(raw);
        size_t hash = lstr.find('#');
        if (hash != std::string::npos) lstr.resize(hash);
        size_t a = lstr.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = lstr.find_last_not_of(" \t\r");
        lstr = lstr.substr(a, b - a + 1);

        size_t i = 0;
        auto fail = [&](const std::string& why) { detail::parse_fail(line_no, i + a + 1, why); };
        std::string name;
        while (i < lstr.size() && (isalpha((unsigned char)lstr[i]) || lstr[i] == '_')) name += lstr[i++];
        if (name.empty()) fail("expected instruction name");

        std::vector<double> args;
        if (i < lstr.size() && lstr[i] == '(') {
            i++;
            while (true) {
                size_t j = lstr.find_first_of(",)", i);
                if (j == std::string::npos) fail("unterminated argument list");
                std::string tok = lstr.substr(i, j - i);
                try {
                    args.push_back(std::stod(tok));
                } catch (...) {
                    fail("bad numeric argument '" + tok + "'");
                }
                i = j + 1;
                if (lstr[j] == ')') break;
            }
        }

        if (name == "QUBIT_COORDS") {
            if (args.size() != 2) fail("QUBIT_COORDS needs exactly two arguments");
            while (i < lstr.size() && isspace((unsigned char)lstr[i])) i++;
            size_t j = i;
            while (j < lstr.size() && isdigit((unsigned char)lstr[j])) j++;
            if (j == i) fail("QUBIT_COORDS needs a qubit index");
            int32_t q = (int32_t)std::stol(lstr.substr(i, j - i));
            if (coords.count(q)) fail("duplicate qubit declaration " + std::to_string(q));
            coords[q] = {args[0], args[1]};
            c.qubits.push_back({q, args[0], args[1]});
            continue;
        }

        Instruction ins;
        ins.op = detail::op_from_name(name, line_no, 1);
        ins.args = std::move(args);
        while (i < lstr.size()) {
            while (i < lstr.size() && isspace((unsigned char)lstr[i])) i++;
            if (i >= lstr.size()) break;
            if (lstr.compare(i, 4, "rec[") == 0) {
                size_t j = lstr.find(']', i);
                if (j == std::string::npos) fail("unterminated rec[...]");
                int64_t off = std::stoll(lstr.substr(i + 4, j - i - 4));
                if (off >= 0) fail("record references must be negative offsets");
                if (nmeas + off < 0) fail("record reference out of range");
                if (!detail::op_takes_recs(ins.op)) fail("instruction cannot take record targets");
                ins.recs.push_back({off, nmeas + off});
                i = j + 1;
            } else if (isdigit((unsigned char)lstr[i])) {
                size_t j = i;
                while (j < lstr.size() && isdigit((unsigned char)lstr[j])) j++;
                if (detail::op_takes_recs(ins.op)) fail("instruction takes only record targets");
                ins.qubits.push_back((int32_t)std::stol(lstr.substr(i, j - i)));
                i = j;
            } else {
                fail(std::string("unexpected character '") + lstr[i] + "'");
            }
        }
        if (ins.op == Op::MZ || ins.op == Op::MX) nmeas += (int64_t)ins.qubits.size();
        c.instructions.push_back(std::move(ins));
    }
    return c;
}

/// Parses the URL-fragment format: instructions separated by ";", targets
/// joined by "_", qubit declarations "Q(x,y)i", detectors
/// "DT(x,y,t)rec[-a]_rec[-b]", observables "OI(k)rec[...]", polygons
/// "POLYGON(r,g,b,a)i_j_k". A leading "circuit=" is accepted and skipped.
inline Circuit parse_crumble(std::string_view fragment) {
    if (fragment.substr(0, 8) == "circuit=") fragment.remove_prefix(8);
    Circuit c;
    std::set<int32_t> declared;
    int64_t nmeas = 0;
    size_t pos = 0;
    size_t token_no = 0;
    while (pos <= fragment.size()) {
        size_t end = fragment.find(';', pos);
        if (end == std::string_view::npos) end = fragment.size();
        std::string tok(fragment.substr(pos, end - pos));
        bool last = end == fragment.size();
        pos = end + 1;
        token_no++;
        if (tok.empty()) {
            if (last) break;
            detail::parse_fail(1, token_no, "dangling separator");
        }
        auto fail = [&](const std::string& why) { detail::parse_fail(1, token_no, why); };

        size_t i = 0;
        std::string name;
        while (i < tok.size() && isupper((unsigned char)tok[i])) name += tok[i++];
        if (name.empty()) fail("malformed token '" + tok + "'");

        std::vector<double> args;
        if (i < tok.size() && tok[i] == '(') {
            i++;
            while (true) {
                size_t j = tok.find_first_of(",)", i);
                if (j == std::string::npos) fail("unterminated argument list");
                try {
                    args.push_back(std::stod(tok.substr(i, j - i)));
                } catch (...) {
                    fail("bad numeric argument");
                }
                i = j + 1;
                if (tok[j] == ')') break;
            }
        }

        if (name == "Q") {
            if (args.size() != 2) fail("Q needs two coordinates");
            if (i >= tok.size()) fail("Q needs a qubit index");
            int32_t q = (int32_t)std::stol(tok.substr(i));
            if (declared.count(q)) fail("duplicate qubit declaration");
            declared.insert(q);
            c.qubits.push_back({q, args[0], args[1]});
            continue;
        }

        Instruction ins;
        ins.op = detail::op_from_name(name, 1, token_no);
        ins.args = std::move(args);
        // remaining text: _-joined targets (absent for TICK)
        std::string rest = tok.substr(i);
        if (!rest.empty()) {
            if (rest[0] != '_' && rest.compare(0, 4, "rec[") != 0 &&
                !isdigit((unsigned char)rest[0])) {
                fail("malformed targets");
            }
            size_t j = 0;
            while (j < rest.size()) {
                if (rest[j] == '_') j++;
                if (rest.compare(j, 4, "rec[") == 0) {
                    size_t k = rest.find(']', j);
                    if (k == std::string::npos) fail("unterminated rec[...]");
                    int64_t off = std::stoll(rest.substr(j + 4, k - j - 4));
                    if (off >= 0) fail("record references must be negative");
                    if (nmeas + off < 0) fail("record reference beyond available record");
                    if (!detail::op_takes_recs(ins.op)) fail("instruction cannot take records");
                    ins.recs.push_back({off, nmeas + off});
                    j = k + 1;
                } else {
                    size_t k = j;
                    while (k < rest.size() && isdigit((unsigned char)rest[k])) k++;
                    if (k == j) fail("malformed token near '" + rest.substr(j) + "'");
                    if (detail::op_takes_recs(ins.op)) fail("instruction takes only records");
                    ins.qubits.push_back((int32_t)std::stol(rest.substr(j, k - j)));
                    j = k;
                }
            }
        }
        if (ins.op == Op::MZ || ins.op == Op::MX) nmeas += (int64_t)ins.qubits.size();
        c.instructions.push_back(std::move(ins));
        if (last) break;
    }
    return c;
}

/// Serializes a circuit. parse(serialize(c)) is structurally identical to c,
/// and output bytes depend only on the circuit value.
inline std::string serialize(const Circuit& c, CircuitFormat format) {
    std::ostringstream out;
    if (format == CircuitFormat::StimText) {
        for (const auto& q : c.qubits) {
            out << "QUBIT_COORDS(" << detail::fmt_double(q.x) << ", " << detail::fmt_double(q.y)
                << ") " << q.index << "\n";
        }
        for (const auto& ins : c.instructions) {
            out << op_name(ins.op);
            if (!ins.args.empty()) {
                out << "(";
                for (size_t i = 0; i < ins.args.size(); i++) {
                    if (i) out << ", ";
                    out << detail::fmt_double(ins.args[i]);
                }
                out << ")";
            }
            for (int32_t q : ins.qubits) out << " " << q;
            for (const auto& r : ins.recs) out << " rec[" << r.offset << "]";
            out << "\n";
        }
        return out.str();
    }
    // crumble
    bool first = true;
    auto sep = [&]() {
        if (!first) out << ";";
        first = false;
    };
    for (const auto& q : c.qubits) {
        sep();
        out << "Q(" << detail::fmt_double(q.x) << "," << detail::fmt_double(q.y) << ")" << q.index;
    }
    for (const auto& ins : c.instructions) {
        sep();
        const char* nm = op_name(ins.op);
        if (ins.op == Op::DETECTOR) nm = "DT";
        if (ins.op == Op::OBSERVABLE_INCLUDE) nm = "OI";
        out << nm;
        if (!ins.args.empty()) {
            out << "(";
            for (size_t i = 0; i < ins.args.size(); i++) {
                if (i) out << ",";
                out << detail::fmt_double(ins.args[i]);
            }
            out << ")";
        }
        // The first target follows the argument list directly; without an
        // argument list it is '_'-separated from the name, like later targets.
        bool need_sep = ins.args.empty();
        for (int32_t q : ins.qubits) {
            if (need_sep) out << "_";
            need_sep = true;
            out << q;
        }
        for (const auto& r : ins.recs) {
            if (need_sep) out << "_";
            need_sep = true;
            out << "rec[" << r.offset << "]";
        }
    }
    return out.str();
}

/// Structural validation. Empty result iff all Circuit invariants hold.
inline std::vector<Diagnostic> validate(const Circuit& c) {
    std::vector<Diagnostic> out;
    std::set<int32_t> declared;
    for (const auto& q : c.qubits) {
        if (!declared.insert(q.index).second) {
            out.push_back({0, "duplicate qubit index " + std::to_string(q.index)});
        }
    }
    int64_t nmeas = 0;
    std::vector<Circuit::MeasurementInfo> record = c.measurement_record();
    std::set<int32_t> layer_used;  // qubits touched by gates since the last TICK
    for (size_t i = 0; i < c.instructions.size(); i++) {
        const auto& ins = c.instructions[i];
        auto bad = [&](const std::string& why) { out.push_back({i, why}); };
        if (ins.op == Op::TICK) {
            layer_used.clear();
            continue;
        }
        if (ins.op == Op::DETECTOR || ins.op == Op::OBSERVABLE_INCLUDE) {
            if (!ins.qubits.empty()) bad("targets must be record references only");
            for (const auto& r : ins.recs) {
                if (r.offset >= 0 || r.abs < 0 || r.abs >= (int64_t)record.size() ||
                    r.abs != nmeas + r.offset) {
                    bad("record reference out of range");
                }
            }
            continue;
        }
        if (ins.op == Op::POLYGON) continue;
        std::set<int32_t> seen;
        for (int32_t q : ins.qubits) {
            if (!declared.count(q)) bad("undeclared qubit " + std::to_string(q));
            if (!seen.insert(q).second) bad("qubit targeted twice in one instruction");
            if (!layer_used.insert(q).second) {
                bad("qubit " + std::to_string(q) + " used twice within one TICK layer");
            }
        }
        if (ins.op == Op::CX && ins.qubits.size() % 2 != 0) {
            bad("CX needs an even number of targets");
        }
        if (ins.op == Op::MZ || ins.op == Op::MX) nmeas += (int64_t)ins.qubits.size();
    }
    return out;
}

}  // namespace diamond
