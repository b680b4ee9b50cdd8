#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ufg/circuit.hpp"
#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/hypergraph.hpp"
#include "ufg/longcode.hpp"
#include "ufg/rational.hpp"

namespace ufg {

namespace detail {

inline std::vector<std::string> tokens_of(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

/// Non-empty, non-comment lines.
inline std::vector<std::vector<std::string>> content_lines(std::string_view text) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        auto t = tokens_of(line);
        if (t.empty() || t[0][0] == 'c') continue;
        out.push_back(std::move(t));
    }
    return out;
}

inline std::uint64_t parse_count(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(std::string("bad ") + what + " '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ParseError(std::string(what) + " out of range");
    }
}

inline std::int64_t parse_int(const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParseError("bad literal '" + s + "'");
    }
    if (used != s.size()) throw ParseError("bad literal '" + s + "'");
    return v;
}

/// Reads "a b c 0 [w p/q]" into the integer slots and the weight.
inline std::pair<std::vector<std::int64_t>, Rational> parse_clause_line(const std::vector<std::string>& t,
                                                                         std::size_t lineno) {
    std::vector<std::int64_t> lits;
    std::size_t i = 0;
    bool closed = false;
    for (; i < t.size(); ++i) {
        std::int64_t v = parse_int(t[i]);
        if (v == 0) {
            closed = true;
            ++i;
            break;
        }
        lits.push_back(v);
    }
    if (!closed) throw ParseError("clause line " + std::to_string(lineno) + " is not 0-terminated");
    Rational w = 1;
    if (i < t.size()) {
        if (t[i] != "w" || i + 2 != t.size()) throw ParseError("clause line " + std::to_string(lineno) + ": trailing tokens");
        w = parse_rational(t[i + 1]);
        if (w < 0) throw ParseError("negative weight on clause line " + std::to_string(lineno));
    }
    return {std::move(lits), std::move(w)};
}

}  // namespace detail

/// "p wcnf n m kind" then one "lits 0 w p/q" line per clause. Plain "p cnf n m" reads as unweighted SAT.
inline std::string emit_cnf(const CnfFormula& f) {
    std::string out = "p wcnf " + std::to_string(f.n) + " " + std::to_string(f.clauses.size()) + " " + to_string(f.kind) + "\n";
    for (const auto& c : f.clauses) {
        for (Literal l : c.slots) out += std::to_string(l.dimacs()) + " ";
        out += "0 w " + to_string(c.weight) + "\n";
    }
    return out;
}

inline CnfFormula parse_cnf(std::string_view text) {
    auto lines = detail::content_lines(text);
    if (lines.empty()) throw ParseError("missing header");
    const auto& h = lines[0];
    CnfFormula f;
    std::uint64_t m = 0;
    if (h.size() == 5 && h[0] == "p" && h[1] == "wcnf") {
        f.kind = parse_kind(h[4]);
    } else if (h.size() == 4 && h[0] == "p" && h[1] == "cnf") {
        f.kind = Kind::Sat;
    } else {
        throw ParseError("malformed header");
    }
    auto n = detail::parse_count(h[2], "variable count");
    if (n > 0xFFFFFFFFULL) throw ParseError("variable count out of range");
    f.n = static_cast<std::uint32_t>(n);
    m = detail::parse_count(h[3], "clause count");
    if (lines.size() - 1 != m)
        throw ParseError("header says " + std::to_string(m) + " clauses, found " + std::to_string(lines.size() - 1));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [lits, w] = detail::parse_clause_line(lines[i], i);
        if (lits.empty()) throw ParseError("empty clause on line " + std::to_string(i));
        Clause c;
        c.weight = std::move(w);
        for (auto v : lits) {
            std::int64_t a = v < 0 ? -v : v;
            if (a > f.n) throw ParseError("literal " + std::to_string(v) + " out of range");
            c.slots.push_back({static_cast<std::uint32_t>(a), v < 0});
        }
        f.clauses.push_back(std::move(c));
    }
    return f;
}

/// "p fgraph n m kind" then unsigned slot tuples.
inline std::string emit_fgraph(const FactorGraph& g) {
    std::string out = "p fgraph " + std::to_string(g.n) + " " + std::to_string(g.slots.size()) + " " + to_string(g.kind) + "\n";
    for (std::size_t i = 0; i < g.slots.size(); ++i) {
        for (auto v : g.slots[i]) out += std::to_string(v) + " ";
        out += "0 w " + to_string(g.weights[i]) + "\n";
    }
    return out;
}

inline FactorGraph parse_fgraph(std::string_view text) {
    auto lines = detail::content_lines(text);
    if (lines.empty()) throw ParseError("missing header");
    const auto& h = lines[0];
    if (h.size() != 5 || h[0] != "p" || h[1] != "fgraph") throw ParseError("malformed header");
    FactorGraph g;
    auto n = detail::parse_count(h[2], "variable count");
    if (n > 0xFFFFFFFFULL) throw ParseError("variable count out of range");
    g.n = static_cast<std::uint32_t>(n);
    auto m = detail::parse_count(h[3], "clause count");
    g.kind = parse_kind(h[4]);
    if (lines.size() - 1 != m) throw ParseError("clause count does not match the header");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [vars, w] = detail::parse_clause_line(lines[i], i);
        if (vars.empty()) throw ParseError("empty clause on line " + std::to_string(i));
        std::vector<std::uint32_t> slot;
        for (auto v : vars) {
            if (v < 1 || v > g.n) throw ParseError("variable " + std::to_string(v) + " out of range");
            slot.push_back(static_cast<std::uint32_t>(v));
        }
        g.slots.push_back(std::move(slot));
        g.weights.push_back(std::move(w));
    }
    return g;
}

/// "p template count" then one '+' or '-' per slot, one clause's slots per line when the graph is known.
inline std::string emit_template(const PolarityTemplate& t, const FactorGraph* g = nullptr) {
    std::string out = "p template " + std::to_string(t.bits.size()) + "\n";
    std::size_t pos = 0;
    auto put = [&](std::size_t count) {
        for (std::size_t j = 0; j < count; ++j, ++pos) out += (j ? " " : "") + std::string(t.bits[pos] ? "-" : "+");
        out += "\n";
    };
    if (g && g->slot_count() == t.bits.size()) {
        for (const auto& s : g->slots) put(s.size());
    } else if (!t.bits.empty()) {
        put(t.bits.size());
    }
    return out;
}

inline PolarityTemplate parse_template(std::string_view text) {
    auto lines = detail::content_lines(text);
    if (lines.empty()) throw ParseError("missing header");
    const auto& h = lines[0];
    if (h.size() != 3 || h[0] != "p" || h[1] != "template") throw ParseError("malformed header");
    auto count = detail::parse_count(h[2], "slot count");
    PolarityTemplate t;
    for (std::size_t i = 1; i < lines.size(); ++i)
        for (const auto& tok : lines[i]) {
            if (tok == "+" || tok == "+1")
                t.bits.push_back(0);
            else if (tok == "-" || tok == "-1")
                t.bits.push_back(1);
            else
                throw ParseError("bad template token '" + tok + "'");
        }
    if (t.bits.size() != count)
        throw ParseError("template lists " + std::to_string(t.bits.size()) + " signs, header says " + std::to_string(count));
    return t;
}

/// Joins a factor graph and a template back into a formula (length-checked).
inline CnfFormula join(const FactorGraph& g, const PolarityTemplate& t) { return apply_polarities(g, t); }

// JSON forms. Rationals are strings "p/q" so they stay exact.

inline nlohmann::json poly_to_json(const GF2Poly& p) {
    nlohmann::json mons = nlohmann::json::array();
    for (const auto& m : p.monomials()) mons.push_back({m.lo.vertex, m.lo.bit, m.hi.vertex, m.hi.bit});
    return {{"constant", p.constant()}, {"monomials", mons}};
}

inline GF2Poly poly_from_json(const nlohmann::json& j) {
    std::vector<Monomial> mons;
    for (const auto& m : j.at("monomials")) {
        if (m.size() != 4) throw ParseError("monomial needs 4 integers");
        mons.push_back(Monomial::of(Coord{m[0].get<std::uint32_t>(), m[1].get<std::uint32_t>()},
                                    Coord{m[2].get<std::uint32_t>(), m[3].get<std::uint32_t>()}));
    }
    return GF2Poly::from(std::move(mons), j.at("constant").get<bool>());
}

inline nlohmann::json hypergraph_to_json(const ConstraintHypergraph& h) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : h.edges) {
        nlohmann::json je{{"verts", e.verts}, {"weight", to_string(e.weight)}};
        nlohmann::json polys = nlohmann::json::array();
        for (const auto& p : e.polys) polys.push_back(poly_to_json(p));
        je["polys"] = polys;
        if (e.table) je["table"] = *e.table;
        edges.push_back(std::move(je));
    }
    return {{"vertex_count", h.vertex_count}, {"k", h.k}, {"edges", edges}};
}

inline ConstraintHypergraph hypergraph_from_json(const nlohmann::json& j) {
    try {
        ConstraintHypergraph h;
        h.vertex_count = j.at("vertex_count").get<std::uint32_t>();
        h.k = j.at("k").get<std::uint32_t>();
        for (const auto& je : j.at("edges")) {
            HyperEdge e;
            e.verts = je.at("verts").get<std::vector<std::uint32_t>>();
            e.weight = parse_rational(je.at("weight").get<std::string>());
            for (const auto& p : je.at("polys")) e.polys.push_back(poly_from_json(p));
            if (je.contains("table")) e.table = je.at("table").get<std::vector<std::uint8_t>>();
            h.edges.push_back(std::move(e));
        }
        h.validate();
        return h;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("bad hypergraph JSON: ") + ex.what());
    }
}

inline nlohmann::json template_to_json(const CircuitTemplate& t) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : t.fg.slots) slots.push_back(s);
    nlohmann::json weights = nlohmann::json::array();
    for (const auto& w : t.fg.weights) weights.push_back(to_string(w));
    return {{"n", t.n},
            {"m", t.m},
            {"w", t.w},
            {"variables", t.fg.n},
            {"slots", slots},
            {"weights", weights},
            {"base", t.base.bits},
            {"input_clause", t.input_clause},
            {"wire_var", t.wire_var}};
}

inline CircuitTemplate template_from_json(const nlohmann::json& j) {
    try {
        CircuitTemplate t;
        t.n = j.at("n").get<std::uint32_t>();
        t.m = j.at("m").get<std::uint32_t>();
        t.w = j.at("w").get<std::uint32_t>();
        t.fg.n = j.at("variables").get<std::uint32_t>();
        t.fg.kind = Kind::Sat;
        t.fg.slots = j.at("slots").get<std::vector<std::vector<std::uint32_t>>>();
        for (const auto& w : j.at("weights")) t.fg.weights.push_back(parse_rational(w.get<std::string>()));
        t.base.bits = j.at("base").get<std::vector<std::uint8_t>>();
        t.input_clause = j.at("input_clause").get<std::vector<std::uint32_t>>();
        t.wire_var = j.at("wire_var").get<std::vector<std::uint32_t>>();
        if (t.fg.weights.size() != t.fg.slots.size() || t.base.bits.size() != t.fg.slot_count())
            throw ParseError("circuit template lengths do not match");
        if (t.input_clause.size() != std::size_t(3) * t.m * t.w) throw ParseError("circuit template input count mismatch");
        return t;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("bad circuit template JSON: ") + ex.what());
    }
}

/// Long-code table blob: u32 n, u32 basis count (little endian), then (u32 h, u32 b) per basis pair,
/// then the table packed 8 entries per byte, entry f at bit f%8 of byte f/8.
struct LongCodeBlob {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> basis;
    std::vector<std::uint8_t> table;

    friend bool operator==(const LongCodeBlob&, const LongCodeBlob&) = default;
};

namespace detail {
inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
}
inline std::uint32_t get_u32(std::string_view in, std::size_t at) {
    if (at + 4 > in.size()) throw ParseError("truncated long-code blob");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<unsigned char>(in[at + i])) << (8 * i);
    return v;
}
}  // namespace detail

inline std::string emit_blob(const LongCodeBlob& b) {
    if (b.table.size() != function_count(b.n)) throw Error("blob table length does not match n");
    std::string out;
    detail::put_u32(out, b.n);
    detail::put_u32(out, static_cast<std::uint32_t>(b.basis.size()));
    for (auto [h, bit] : b.basis) {
        detail::put_u32(out, h);
        detail::put_u32(out, bit);
    }
    std::string packed((b.table.size() + 7) / 8, '\0');
    for (std::size_t f = 0; f < b.table.size(); ++f)
        if (b.table[f]) packed[f / 8] = static_cast<char>(packed[f / 8] | (1 << (f % 8)));
    return out + packed;
}

inline LongCodeBlob parse_blob(std::string_view in) {
    LongCodeBlob b;
    b.n = detail::get_u32(in, 0);
    if (b.n > kLongCodeCap) throw ParseError("long-code blob n exceeds the cap");
    const std::uint32_t count = detail::get_u32(in, 4);
    if (count > 32) throw ParseError("long-code blob basis too large");
    std::size_t at = 8;
    for (std::uint32_t i = 0; i < count; ++i, at += 8) {
        std::uint32_t bit = detail::get_u32(in, at + 4);
        if (bit > 1) throw ParseError("folding constant must be 0 or 1");
        b.basis.emplace_back(detail::get_u32(in, at), static_cast<std::uint8_t>(bit));
    }
    const std::size_t entries = function_count(b.n);
    if (in.size() != at + (entries + 7) / 8) throw ParseError("long-code blob has the wrong length");
    for (std::size_t f = 0; f < entries; ++f)
        b.table.push_back((static_cast<unsigned char>(in[at + f / 8]) >> (f % 8)) & 1U);
    return b;
}

}  // namespace ufg
