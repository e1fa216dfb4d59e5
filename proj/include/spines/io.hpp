#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "spines/complex.hpp"
#include "spines/errors.hpp"
#include "spines/layered.hpp"
#include "spines/simplex.hpp"

namespace spines {

using ordered_json = nlohmann::ordered_json;

/// Maximal simplices in writer order: dimension descending, then
/// lexicographic on the vertex sequence.
inline std::vector<simplex> maximal_cells(const simplicial_complex& k) {
    std::vector<simplex> out;
    for (const simplex& s : k.cells()) {
        if (k.is_principal(s)) out.push_back(s);
    }
    std::sort(out.begin(), out.end(), [](const simplex& a, const simplex& b) {
        if (a.dim() != b.dim()) return a.dim() > b.dim();
        return a.vertices() < b.vertices();
    });
    return out;
}

inline ordered_json complex_to_json(const simplicial_complex& k) {
    ordered_json doc;
    doc["simplices"] = ordered_json::array();
    for (const simplex& s : maximal_cells(k)) doc["simplices"].push_back(s.vertices());
    return doc;
}

inline ordered_json divided_to_json(const divided_complex& d) {
    ordered_json doc = complex_to_json(d.complex());
    doc["singular_vertices"] = d.singular_vertices();
    return doc;
}

/// Serializes with a stable layout: two-space indent and a trailing newline.
inline std::string to_json_text(const ordered_json& doc) {
    return doc.dump(2) + "\n";
}

namespace io_detail {

template <typename Range>
void append_id_list(std::string& out, const Range& ids) {
    out += '[';
    bool first = true;
    for (auto v : ids) {
        if (!first) out += ", ";
        first = false;
        out += std::to_string(v);
    }
    out += ']';
}

}  // namespace io_detail

/// Complex document with one simplex per line, e.g.
///   { "simplices": [\n    [0, 1, 2],\n    [3]\n  ] }
/// Equivalent JSON to complex_to_json, laid out for human review.
inline std::string complex_json_text(const simplicial_complex& k) {
    std::string out = "{\n  \"simplices\": [";
    bool first = true;
    for (const simplex& s : maximal_cells(k)) {
        out += first ? "\n    " : ",\n    ";
        first = false;
        io_detail::append_id_list(out, s.vertices());
    }
    out += first ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

inline std::string divided_json_text(const divided_complex& d) {
    std::string out = "{\n  \"simplices\": [";
    bool first = true;
    for (const simplex& s : maximal_cells(d.complex())) {
        out += first ? "\n    " : ",\n    ";
        first = false;
        io_detail::append_id_list(out, s.vertices());
    }
    out += first ? "],\n" : "\n  ],\n";
    out += "  \"singular_vertices\": ";
    io_detail::append_id_list(out, d.singular_vertices());
    out += "\n}\n";
    return out;
}

inline ordered_json parse_json(std::istream& in, const std::string& source) {
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(source, 0, e.what());
    }
}

namespace io_detail {

inline std::vector<simplex> simplices_from_json(const ordered_json& doc,
                                                const std::string& source) {
    if (!doc.is_object() || !doc.contains("simplices") ||
        !doc["simplices"].is_array())
        throw parse_error(source, 0, "expected an object with a \"simplices\" array");
    std::vector<simplex> maximal;
    for (const auto& entry : doc["simplices"]) {
        if (!entry.is_array())
            throw parse_error(source, 0, "each simplex must be an array of vertex ids");
        std::vector<simplex::vertex_id> verts;
        for (const auto& v : entry) {
            if (!v.is_number_integer())
                throw parse_error(source, 0, "vertex ids must be integers");
            verts.push_back(v.get<simplex::vertex_id>());
        }
        maximal.emplace_back(std::move(verts));  // validates the simplex
    }
    return maximal;
}

}  // namespace io_detail

inline simplicial_complex complex_from_json(const ordered_json& doc,
                                            const std::string& source = "<input>") {
    return simplicial_complex::from_maximal(
        io_detail::simplices_from_json(doc, source));
}

inline bool has_singular_vertices(const ordered_json& doc) {
    return doc.is_object() && doc.contains("singular_vertices");
}

/// Requires the "singular_vertices" key; plain complex files are rejected
/// so that a missing stratification cannot silently mean "empty".
inline divided_complex divided_from_json(const ordered_json& doc,
                                         const std::string& source = "<input>") {
    simplicial_complex k = complex_from_json(doc, source);
    if (!has_singular_vertices(doc))
        throw parse_error(source, 0,
                          "missing \"singular_vertices\" (use [] for an empty set)");
    if (!doc["singular_vertices"].is_array())
        throw parse_error(source, 0, "\"singular_vertices\" must be an array");
    std::set<simplex::vertex_id> singular;
    for (const auto& v : doc["singular_vertices"]) {
        if (!v.is_number_integer())
            throw parse_error(source, 0, "singular vertex ids must be integers");
        singular.insert(v.get<simplex::vertex_id>());
    }
    return divided_complex(std::move(k), std::move(singular));
}

inline simplicial_complex read_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return complex_from_json(parse_json(in, path), path);
}

inline divided_complex read_divided_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return divided_from_json(parse_json(in, path), path);
}

/// One compact JSON object per line: {"kind","free","principal"}.
inline std::string collapse_log_to_jsonl(const collapse_log& log) {
    std::string out;
    for (const collapse_entry& e : log) {
        ordered_json line;
        line["kind"] = stratum_name(e.kind);
        line["free"] = e.free.vertices();
        line["principal"] = e.principal.vertices();
        out += line.dump();
        out += '\n';
    }
    return out;
}

inline collapse_log collapse_log_from_jsonl(std::istream& in,
                                            const std::string& source = "<input>") {
    collapse_log log;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ordered_json doc;
        try {
            doc = ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw parse_error(source, lineno, e.what());
        }
        if (!doc.is_object() || !doc.contains("kind") || !doc.contains("free") ||
            !doc.contains("principal"))
            throw parse_error(source, lineno,
                              "expected {\"kind\",\"free\",\"principal\"}");
        auto kind = stratum_from_name(doc["kind"].get<std::string>());
        if (!kind)
            throw parse_error(source, lineno,
                              "unknown collapse kind '" +
                                  doc["kind"].get<std::string>() + "'");
        auto read_simplex = [&](const char* key) {
            std::vector<simplex::vertex_id> verts;
            if (!doc[key].is_array())
                throw parse_error(source, lineno,
                                  std::string(key) + " must be an array");
            for (const auto& v : doc[key]) {
                if (!v.is_number_integer())
                    throw parse_error(source, lineno, "vertex ids must be integers");
                verts.push_back(v.get<simplex::vertex_id>());
            }
            return simplex(std::move(verts));
        };
        log.push_back({*kind, read_simplex("free"), read_simplex("principal")});
    }
    return log;
}

inline collapse_log read_collapse_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return collapse_log_from_jsonl(in, path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw error("failed writing " + path);
}

}  // namespace spines
