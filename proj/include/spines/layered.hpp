#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spines/complex.hpp"
#include "spines/errors.hpp"
#include "spines/simplex.hpp"

namespace spines {

namespace detail {
struct layered_access;
}

/// A complex together with a distinguished set of singular vertices.
class divided_complex {
public:
    divided_complex(simplicial_complex k, std::set<simplex::vertex_id> singular)
        : k_(std::move(k)), singular_(std::move(singular)) {
        if (k_.empty())
            throw invalid_argument_error("divided complex needs a nonempty complex");
        for (simplex::vertex_id v : singular_) {
            if (!k_.contains(simplex{v}))
                throw invalid_argument_error(
                    "singular vertex " + std::to_string(v) +
                    " is not a vertex of the complex");
        }
    }

    const simplicial_complex& complex() const { return k_; }
    const std::set<simplex::vertex_id>& singular_vertices() const { return singular_; }

private:
    simplicial_complex k_;
    std::set<simplex::vertex_id> singular_;
};

/// Which stratum a simplex belongs to: entirely singular vertices (s),
/// entirely ordinary vertices (c), or a mix (intermediate).
enum class stratum { s, c, intermediate };

inline const char* stratum_name(stratum k) {
    switch (k) {
        case stratum::s: return "S";
        case stratum::c: return "C";
        case stratum::intermediate: return "intermediate";
    }
    return "?";
}

inline std::optional<stratum> stratum_from_name(const std::string& name) {
    if (name == "S") return stratum::s;
    if (name == "C") return stratum::c;
    if (name == "intermediate") return stratum::intermediate;
    return std::nullopt;
}

struct collapse_entry {
    stratum kind;
    simplex free;
    simplex principal;

    bool operator==(const collapse_entry&) const = default;
};

using collapse_log = std::vector<collapse_entry>;

/// A complex stratified by a singular vertex set: every simplex is
/// classified by whether its vertices are all singular, all ordinary, or
/// mixed. Only stratifications arising this way are supported; explicit
/// strata are accepted but validated against the induced classification.
class layered_complex {
public:
    static layered_complex associate(const divided_complex& d) {
        return layered_complex(d.complex(), d.singular_vertices());
    }

    /// Accepts explicit strata c and s only when they coincide with the
    /// classification induced by s's vertex set; otherwise throws
    /// invalid_argument_error.
    static layered_complex from_strata(const simplicial_complex& k,
                                       const simplicial_complex& c,
                                       const simplicial_complex& s) {
        for (const simplicial_complex* sub : {&c, &s}) {
            for (const simplex& cell : sub->cells()) {
                if (!k.contains(cell))
                    throw not_subcomplex_error("stratum simplex " + cell.to_string() +
                                               " is not in the complex");
            }
        }
        std::set<simplex::vertex_id> singular;
        for (simplex::vertex_id v : s.vertex_set()) singular.insert(v);
        layered_complex candidate(k, singular);
        for (const simplex& cell : k.cells()) {
            stratum cls = candidate.class_of(cell);
            bool in_s = s.contains(cell);
            bool in_c = c.contains(cell);
            if ((cls == stratum::s) != in_s || (cls == stratum::c) != in_c)
                throw invalid_argument_error(
                    "strata are not induced by a singular vertex set (simplex " +
                    cell.to_string() + ")");
        }
        return candidate;
    }

    const simplicial_complex& complex() const { return k_; }
    const std::set<simplex::vertex_id>& singular_vertices() const { return singular_; }

    stratum class_of(const simplex& cell) const {
        int nsing = count_singular(cell);
        if (nsing == 0) return stratum::c;
        if (nsing == cell.dim() + 1) return stratum::s;
        return stratum::intermediate;
    }

    /// All simplices of the given stratum, in canonical order.
    std::vector<simplex> stratum_cells(stratum which) const {
        std::vector<simplex> out;
        for (const simplex& cell : k_.cells()) {
            if (class_of(cell) == which) out.push_back(cell);
        }
        return out;
    }

    int count_singular(const simplex& cell) const {
        int n = 0;
        for (simplex::vertex_id v : cell.vertices()) {
            if (singular_.count(v)) ++n;
        }
        return n;
    }

    /// The divided complex for the current (possibly collapsed) state;
    /// singular vertices that were removed are dropped.
    divided_complex to_divided() const {
        std::set<simplex::vertex_id> live;
        for (simplex::vertex_id v : singular_) {
            if (k_.contains(simplex{v})) live.insert(v);
        }
        return divided_complex(k_, live);
    }

    bool operator==(const layered_complex& other) const {
        return k_ == other.k_ && singular_ == other.singular_;
    }

private:
    layered_complex(simplicial_complex k, std::set<simplex::vertex_id> singular)
        : k_(std::move(k)), singular_(std::move(singular)) {}

    friend struct detail::layered_access;

    simplicial_complex k_;
    std::set<simplex::vertex_id> singular_;
};

inline std::vector<simplex> intermediate_simplices(const layered_complex& l) {
    return l.stratum_cells(stratum::intermediate);
}

/// Whether the free pair (s, p) may be collapsed without disturbing the
/// stratification: every singular-stratum face of p must already be a
/// proper face of s. Uses the closed-form criterion for induced strata.
inline bool is_admissible(const layered_complex& l, const simplex& s,
                          const simplex& p) {
    // Singular vertices of p must form a proper subset of s's vertices.
    const auto& sv = s.vertices();
    bool proper = false;
    for (simplex::vertex_id v : sv) {
        if (!l.singular_vertices().count(v)) {
            proper = true;
            break;
        }
    }
    if (!proper) return false;
    for (simplex::vertex_id v : p.vertices()) {
        if (l.singular_vertices().count(v) &&
            !std::binary_search(sv.begin(), sv.end(), v))
            return false;
    }
    return true;
}

/// Reference definition of admissibility by explicit face enumeration;
/// equivalent to is_admissible and kept for cross-checking.
inline bool is_admissible_by_enumeration(const layered_complex& l,
                                         const simplex& s, const simplex& p) {
    for (const simplex& t : p.proper_faces()) {
        if (l.class_of(t) == stratum::s && !t.is_proper_face_of(s)) return false;
    }
    return true;
}

namespace detail {

struct layered_access {
    static simplicial_complex& mutable_complex(layered_complex& l) { return l.k_; }
    static layered_complex make(simplicial_complex k,
                                std::set<simplex::vertex_id> singular) {
        return layered_complex(std::move(k), std::move(singular));
    }
};

/// Whether the free pair (cell, p) is a collapse of the requested kind:
/// an S- or C-collapse stays inside its stratum, an intermediate collapse
/// must be admissible.
inline bool pair_matches(const layered_complex& l, stratum kind,
                         const simplex& cell, const simplex& p) {
    switch (kind) {
        case stratum::s: return l.class_of(p) == stratum::s;
        case stratum::c: return l.class_of(p) == stratum::c;
        case stratum::intermediate: return is_admissible(l, cell, p);
    }
    return false;
}

/// First applicable collapse pair of the given kind in scan order.
inline std::optional<collapse_entry> find_pair(const layered_complex& l,
                                               stratum kind) {
    std::vector<simplex> candidates = l.stratum_cells(kind);
    std::sort(candidates.begin(), candidates.end(), scan_order{});
    for (const simplex& cell : candidates) {
        std::optional<simplex> p = l.complex().free_face_principal(cell);
        if (!p) continue;
        if (pair_matches(l, kind, cell, *p)) return collapse_entry{kind, cell, *p};
    }
    return std::nullopt;
}

}  // namespace detail

/// Applies the first applicable collapse of the given kind, if any,
/// returning the new complex and the removed pair.
inline std::optional<std::pair<layered_complex, collapse_entry>>
layered_collapse_step(const layered_complex& l, stratum kind) {
    std::optional<collapse_entry> entry = detail::find_pair(l, kind);
    if (!entry) return std::nullopt;
    layered_complex out = l;
    detail::collapse_access::remove_pair(detail::layered_access::mutable_complex(out),
                                         entry->free, entry->principal);
    return std::make_pair(std::move(out), *entry);
}

inline std::optional<std::pair<layered_complex, collapse_entry>> s_collapse_step(
    const layered_complex& l) {
    return layered_collapse_step(l, stratum::s);
}

inline std::optional<std::pair<layered_complex, collapse_entry>> c_collapse_step(
    const layered_complex& l) {
    return layered_collapse_step(l, stratum::c);
}

inline std::optional<std::pair<layered_complex, collapse_entry>>
intermediate_collapse_step(const layered_complex& l) {
    return layered_collapse_step(l, stratum::intermediate);
}

/// True iff no S-, C-, or intermediate collapse applies.
inline bool verify_no_layered_collapse(const layered_complex& l) {
    return !detail::find_pair(l, stratum::s) &&
           !detail::find_pair(l, stratum::c) &&
           !detail::find_pair(l, stratum::intermediate);
}

struct spine_options {
    /// When set, candidate order within each phase is shuffled (phase order
    /// is fixed); results stay equivalent but the removed pairs differ.
    std::optional<std::uint64_t> seed;
    /// Check the stratification invariants around every step and verify the
    /// final complex; throws spines::error on violation.
    bool validate = false;
};

struct phase_timings {
    double s_ms = 0.0;
    double c1_ms = 0.0;
    double intermediate_ms = 0.0;
    double c2_ms = 0.0;

    double total_ms() const { return s_ms + c1_ms + intermediate_ms + c2_ms; }
};

struct layered_spine_result {
    layered_complex complex;
    collapse_log log;
    phase_timings timings;

    std::size_t count(stratum kind) const {
        std::size_t n = 0;
        for (const collapse_entry& e : log) {
            if (e.kind == kind) ++n;
        }
        return n;
    }
};

namespace detail {

inline void check_invariant(bool ok, const std::string& what) {
    if (!ok) throw error("structural invariant violated: " + what);
}

template <typename Clock = std::chrono::steady_clock>
double ms_since(typename Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Runs one exhaustive phase of kind-restricted collapses on l in place.
inline void run_phase(layered_complex& l, stratum kind, collapse_log& log,
                      std::mt19937_64* rng, bool validate) {
    simplicial_complex& k = layered_access::mutable_complex(l);
    std::set<simplex> fixed_before;  // strata that this phase must not touch
    auto untouched_strata = [&]() {
        std::set<simplex> out;
        for (const simplex& cell : k.cells()) {
            stratum cls = l.class_of(cell);
            if (kind == stratum::intermediate) {
                if (cls != stratum::intermediate) out.insert(cell);
            } else {
                if (cls == stratum::intermediate) out.insert(cell);
            }
        }
        return out;
    };
    exhaust_collapses(
        k, [&]() { return l.stratum_cells(kind); },
        [&](const simplex& cell, const simplex& p) {
            if (!pair_matches(l, kind, cell, p)) return false;
            if (validate) {
                check_invariant(p.dim() == cell.dim() + 1,
                                "principal coface must have dimension one higher");
                fixed_before = untouched_strata();
            }
            return true;
        },
        [&](const simplex& cell, const simplex& p) {
            log.push_back({kind, cell, p});
            if (validate) {
                check_invariant(
                    fixed_before == untouched_strata(),
                    kind == stratum::intermediate
                        ? "intermediate collapse changed the S or C stratum"
                        : "S/C collapse changed the intermediate stratum");
            }
        },
        rng);
}

}  // namespace detail

/// Collapses l to its spine: exhaust S-collapses, then C-collapses, then
/// admissible intermediate collapses, then C-collapses again. Deterministic
/// scan order unless a seed is given.
inline layered_spine_result layered_spine(const layered_complex& l,
                                          const spine_options& opts = {}) {
    using clock = std::chrono::steady_clock;
    layered_spine_result res{l, {}, {}};
    std::optional<std::mt19937_64> rng;
    if (opts.seed) rng.emplace(*opts.seed);
    std::mt19937_64* rng_ptr = rng ? &*rng : nullptr;

    auto t0 = clock::now();
    detail::run_phase(res.complex, stratum::s, res.log, rng_ptr, opts.validate);
    res.timings.s_ms = detail::ms_since(t0);

    t0 = clock::now();
    detail::run_phase(res.complex, stratum::c, res.log, rng_ptr, opts.validate);
    res.timings.c1_ms = detail::ms_since(t0);

    t0 = clock::now();
    detail::run_phase(res.complex, stratum::intermediate, res.log, rng_ptr,
                      opts.validate);
    res.timings.intermediate_ms = detail::ms_since(t0);
    if (opts.validate) {
        detail::check_invariant(!detail::find_pair(res.complex, stratum::s),
                                "an S-collapse applies after the intermediate phase");
    }

    t0 = clock::now();
    detail::run_phase(res.complex, stratum::c, res.log, rng_ptr, opts.validate);
    res.timings.c2_ms = detail::ms_since(t0);
    if (opts.validate) {
        detail::check_invariant(
            !detail::find_pair(res.complex, stratum::intermediate),
            "an intermediate collapse applies after the final C phase");
        detail::check_invariant(verify_no_layered_collapse(res.complex),
                                "final complex still admits a layered collapse");
    }
    return res;
}

inline layered_spine_result layered_spine(const divided_complex& d,
                                          const spine_options& opts = {}) {
    return layered_spine(layered_complex::associate(d), opts);
}

/// Re-applies a recorded collapse log step by step, verifying that each
/// entry names a free pair of the recorded kind in the current complex.
/// Throws illegal_collapse_error on any mismatch.
inline layered_complex replay_log(const layered_complex& start,
                                  const collapse_log& log) {
    layered_complex cur = start;
    simplicial_complex& k = detail::layered_access::mutable_complex(cur);
    std::size_t step = 0;
    for (const collapse_entry& e : log) {
        ++step;
        auto fail = [&](const std::string& why) {
            throw illegal_collapse_error("replay step " + std::to_string(step) +
                                         ": " + why);
        };
        if (!k.contains(e.free)) fail("free face " + e.free.to_string() + " missing");
        std::optional<simplex> p = k.free_face_principal(e.free);
        if (!p) fail("face " + e.free.to_string() + " is not free");
        if (*p != e.principal)
            fail("principal mismatch for " + e.free.to_string() + ": expected " +
                 e.principal.to_string() + ", found " + p->to_string());
        if (!detail::pair_matches(cur, e.kind, e.free, *p))
            fail("pair is not a valid " + std::string(stratum_name(e.kind)) +
                 "-collapse");
        detail::collapse_access::remove_pair(k, e.free, *p);
    }
    return cur;
}

}  // namespace spines
