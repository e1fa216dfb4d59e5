#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spines/complex.hpp"
#include "spines/io.hpp"
#include "spines/layered.hpp"

namespace spines {

/// Structured summary of one pipeline run.  Every field that was produced is
/// serialized; absent optionals are omitted from the JSON.
struct run_report {
    std::string command;
    std::string input;

    std::vector<std::size_t> cells_before;
    std::vector<std::size_t> cells_after;

    /// Elementary collapse counts keyed by kind name ("S", "C",
    /// "intermediate" for layered runs; "elementary" for ordinary runs).
    std::vector<std::pair<std::string, std::size_t>> collapse_counts;

    std::optional<phase_timings> phases;

    /// Betti tables as emitted by the homology command.
    std::vector<ordered_json> betti_tables;

    /// Results of structural checks, if any were requested.
    ordered_json checks = ordered_json::object();

    std::size_t total_collapses() const {
        std::size_t n = 0;
        for (const auto& [_, c] : collapse_counts) n += c;
        return n;
    }
};

inline std::vector<std::size_t> cell_counts(const simplicial_complex& k) {
    return k.counts_by_dim();
}

inline ordered_json report_to_json(const run_report& r) {
    ordered_json doc;
    doc["command"] = r.command;
    doc["input"] = r.input;
    if (!r.cells_before.empty()) doc["cells_before"] = r.cells_before;
    if (!r.cells_after.empty()) {
        // Pad with zeros so before/after line up dimension by dimension even
        // when the collapse removed every top-dimensional cell.
        std::vector<std::size_t> after = r.cells_after;
        if (after.size() < r.cells_before.size())
            after.resize(r.cells_before.size(), 0);
        doc["cells_after"] = after;
    }
    if (!r.collapse_counts.empty()) {
        ordered_json counts = ordered_json::object();
        for (const auto& [name, c] : r.collapse_counts) counts[name] = c;
        doc["collapses"] = counts;
    }
    if (r.phases) {
        ordered_json ph = ordered_json::object();
        ph["s_ms"] = r.phases->s_ms;
        ph["c1_ms"] = r.phases->c1_ms;
        ph["intermediate_ms"] = r.phases->intermediate_ms;
        ph["c2_ms"] = r.phases->c2_ms;
        doc["phase_timings_ms"] = ph;
    }
    if (!r.betti_tables.empty()) doc["betti"] = r.betti_tables;
    if (!r.checks.empty()) doc["checks"] = r.checks;
    return doc;
}

inline ordered_json betti_table_json(const std::string& perversity_name, int codim,
                                     const std::vector<int>& betti) {
    ordered_json doc;
    doc["perversity"] = perversity_name;
    doc["codim"] = codim;
    doc["betti"] = betti;
    return doc;
}

}  // namespace spines
