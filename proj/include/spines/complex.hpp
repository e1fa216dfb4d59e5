#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spines/errors.hpp"
#include "spines/simplex.hpp"

namespace spines {

class simplicial_complex;

namespace detail {
/// Grants the collapse engines access to in-place pair removal so that spine
/// loops do not copy the complex per elementary step. From the caller's
/// perspective every public operation is still a pure query or returns a new
/// complex.
struct collapse_access;
}  // namespace detail

/// A finite abstract simplicial complex: a face-closed set of simplices with
/// a per-vertex incidence index for coface queries.
class simplicial_complex {
public:
    simplicial_complex() = default;

    /// Builds the face closure of the given maximal simplices.
    /// Throws invalid_argument_error on an empty input list.
    static simplicial_complex from_maximal(const std::vector<simplex>& maximal) {
        if (maximal.empty())
            throw invalid_argument_error("a complex needs at least one simplex");
        simplicial_complex k;
        for (const simplex& s : maximal) {
            k.insert_with_faces(s);
        }
        return k;
    }

    bool empty() const { return cells_.empty(); }

    std::size_t size() const { return cells_.size(); }

    /// Dimension of the complex; -1 when empty.
    int dim() const { return cells_.empty() ? -1 : cells_.rbegin()->dim(); }

    bool contains(const simplex& s) const { return cells_.count(s) > 0; }

    const std::set<simplex>& cells() const { return cells_; }

    /// Number of simplices per dimension, indexed 0..dim().
    std::vector<std::size_t> counts_by_dim() const {
        std::vector<std::size_t> counts(static_cast<std::size_t>(dim() + 1), 0);
        for (const simplex& s : cells_) counts[static_cast<std::size_t>(s.dim())]++;
        return counts;
    }

    /// Sorted list of vertex ids present in the complex.
    std::vector<simplex::vertex_id> vertex_set() const {
        std::vector<simplex::vertex_id> out;
        for (const simplex& s : cells_) {
            if (s.dim() > 0) break;
            out.push_back(s.vertices()[0]);
        }
        return out;
    }

    /// All t in the complex with s a proper face of t, in canonical order.
    /// Throws missing_simplex_error if s is not a member.
    std::vector<simplex> proper_cofaces(const simplex& s) const {
        require_member(s);
        std::vector<simplex> out;
        for_each_proper_coface(s, [&](const simplex& t) { out.push_back(t); });
        std::sort(out.begin(), out.end());
        return out;
    }

    /// True iff s is not a proper face of any member.
    bool is_principal(const simplex& s) const {
        require_member(s);
        return count_proper_cofaces(s, 1) == 0;
    }

    /// If s has exactly one proper coface p, returns p (then p is principal
    /// and dim p = dim s + 1); otherwise nothing.
    std::optional<simplex> free_face_principal(const simplex& s) const {
        require_member(s);
        return free_principal_unchecked(s);
    }

    /// Returns the complex with the free pair {s, Princ(s)} removed.
    /// Throws illegal_collapse_error if s is not free.
    simplicial_complex elementary_collapse(const simplex& s) const {
        require_member(s);
        std::optional<simplex> p = free_principal_unchecked(s);
        if (!p)
            throw illegal_collapse_error("simplex " + s.to_string() +
                                         " is not free");
        simplicial_complex out = *this;
        out.remove_pair(s, *p);
        return out;
    }

    /// True iff every simplex is a face of (or equal to) an n-simplex and
    /// every (n-1)-simplex has exactly two n-dimensional cofaces.
    bool is_pseudomanifold(int n) const {
        return !pseudomanifold_witness(n).has_value();
    }

    /// First simplex (canonical order) violating the pseudomanifold
    /// condition for dimension n, or nothing if the condition holds.
    std::optional<simplex> pseudomanifold_witness(int n) const {
        if (cells_.empty())
            throw invalid_argument_error("pseudomanifold check on empty complex");
        if (n < 0) throw invalid_argument_error("pseudomanifold dimension must be >= 0");
        for (const simplex& s : cells_) {
            if (s.dim() > n) return s;
            if (s.dim() < n) {
                bool covered = false;
                for_each_proper_coface(s, [&](const simplex& t) {
                    if (t.dim() == n) covered = true;
                });
                if (!covered) return s;
            }
            if (s.dim() == n - 1) {
                int ncofaces = 0;
                for_each_proper_coface(s, [&](const simplex& t) {
                    if (t.dim() == n) ++ncofaces;
                });
                if (ncofaces != 2) return s;
            }
        }
        return std::nullopt;
    }

    /// True iff every simplex of k whose vertices all lie in l's vertex set
    /// belongs to l. Throws not_subcomplex_error when l is not a subcomplex.
    static bool is_full_subcomplex(const simplicial_complex& k,
                                   const simplicial_complex& l) {
        return !fullness_witness(k, l).has_value();
    }

    /// First simplex of k witnessing non-fullness of l, or nothing.
    static std::optional<simplex> fullness_witness(const simplicial_complex& k,
                                                   const simplicial_complex& l) {
        for (const simplex& s : l.cells_) {
            if (!k.contains(s))
                throw not_subcomplex_error("simplex " + s.to_string() +
                                           " of L is not in K");
        }
        std::set<simplex::vertex_id> lverts;
        for (simplex::vertex_id v : l.vertex_set()) lverts.insert(v);
        for (const simplex& s : k.cells_) {
            bool inside = true;
            for (simplex::vertex_id v : s.vertices()) {
                if (!lverts.count(v)) {
                    inside = false;
                    break;
                }
            }
            if (inside && !l.contains(s)) return s;
        }
        return std::nullopt;
    }

    bool operator==(const simplicial_complex& other) const {
        return cells_ == other.cells_;
    }

private:
    friend struct detail::collapse_access;

    void insert_with_faces(const simplex& s) {
        if (insert_cell(s)) {
            for (const simplex& f : s.proper_faces()) insert_cell(f);
        }
    }

    bool insert_cell(const simplex& s) {
        auto [it, fresh] = cells_.insert(s);
        if (fresh) {
            for (simplex::vertex_id v : s.vertices()) by_vertex_[v].push_back(&*it);
        }
        return fresh;
    }

    void remove_cell(const simplex& s) {
        auto it = cells_.find(s);
        if (it == cells_.end()) return;
        const simplex* ptr = &*it;
        for (simplex::vertex_id v : s.vertices()) {
            auto& bucket = by_vertex_[v];
            bucket.erase(std::remove(bucket.begin(), bucket.end(), ptr), bucket.end());
            if (bucket.empty()) by_vertex_.erase(v);
        }
        cells_.erase(it);
    }

    /// Removes a free pair; callers guarantee p is the unique proper coface
    /// of s, so face closure is preserved.
    void remove_pair(const simplex& s, const simplex& p) {
        remove_cell(p);
        remove_cell(s);
    }

    void require_member(const simplex& s) const {
        if (!contains(s))
            throw missing_simplex_error("simplex " + s.to_string() +
                                        " is not in the complex");
    }

    template <typename Fn>
    void for_each_proper_coface(const simplex& s, Fn&& fn) const {
        // Scan the smallest incidence bucket among s's vertices.
        const std::vector<const simplex*>* best = nullptr;
        for (simplex::vertex_id v : s.vertices()) {
            auto it = by_vertex_.find(v);
            if (it == by_vertex_.end()) return;
            if (!best || it->second.size() < best->size()) best = &it->second;
        }
        if (!best) return;
        for (const simplex* t : *best) {
            if (s.is_proper_face_of(*t)) fn(*t);
        }
    }

    /// Counts proper cofaces but stops once the count exceeds `cap`.
    int count_proper_cofaces(const simplex& s, int cap) const {
        int n = 0;
        const std::vector<const simplex*>* best = nullptr;
        for (simplex::vertex_id v : s.vertices()) {
            auto it = by_vertex_.find(v);
            if (it == by_vertex_.end()) return 0;
            if (!best || it->second.size() < best->size()) best = &it->second;
        }
        if (!best) return 0;
        for (const simplex* t : *best) {
            if (s.is_proper_face_of(*t)) {
                if (++n > cap) return n;
            }
        }
        return n;
    }

    std::optional<simplex> free_principal_unchecked(const simplex& s) const {
        std::optional<simplex> unique;
        int n = 0;
        const std::vector<const simplex*>* best = nullptr;
        for (simplex::vertex_id v : s.vertices()) {
            auto it = by_vertex_.find(v);
            if (it == by_vertex_.end()) return std::nullopt;
            if (!best || it->second.size() < best->size()) best = &it->second;
        }
        if (!best) return std::nullopt;
        for (const simplex* t : *best) {
            if (s.is_proper_face_of(*t)) {
                if (++n > 1) return std::nullopt;
                unique = *t;
            }
        }
        if (n != 1) return std::nullopt;
        if (unique->dim() != s.dim() + 1)
            throw error("free face " + s.to_string() +
                        " has a principal coface of unexpected dimension " +
                        std::to_string(unique->dim()) +
                        " (face closure violated)");
        return unique;
    }

    std::set<simplex> cells_;
    std::unordered_map<simplex::vertex_id, std::vector<const simplex*>> by_vertex_;

public:
    simplicial_complex(const simplicial_complex& other) : cells_(other.cells_) {
        rebuild_index();
    }

    simplicial_complex& operator=(const simplicial_complex& other) {
        if (this != &other) {
            cells_ = other.cells_;
            rebuild_index();
        }
        return *this;
    }

    simplicial_complex(simplicial_complex&&) = default;
    simplicial_complex& operator=(simplicial_complex&&) = default;

private:
    void rebuild_index() {
        by_vertex_.clear();
        for (const simplex& s : cells_) {
            for (simplex::vertex_id v : s.vertices()) by_vertex_[v].push_back(&s);
        }
    }
};

namespace detail {

struct collapse_access {
    static void remove_pair(simplicial_complex& k, const simplex& s, const simplex& p) {
        k.remove_pair(s, p);
    }
};

/// One exhaustive run of elementary collapses over candidates accepted by
/// `eligible`. Scans pass snapshots in scan_order (or a seeded shuffle),
/// keeps scanning within a pass after each collapse, and repeats passes
/// until none applies. `eligible(s, p)` decides whether the free pair may
/// be collapsed; `record(s, p)` is invoked after each removal.
template <typename Candidates, typename Eligible, typename Record>
void exhaust_collapses(simplicial_complex& k, Candidates&& candidates,
                       Eligible&& eligible, Record&& record,
                       std::mt19937_64* rng) {
    bool progressed = true;
    while (progressed) {
        progressed = false;
        std::vector<simplex> snapshot = candidates();
        if (rng) {
            std::shuffle(snapshot.begin(), snapshot.end(), *rng);
        } else {
            std::sort(snapshot.begin(), snapshot.end(), scan_order{});
        }
        for (const simplex& s : snapshot) {
            if (!k.contains(s)) continue;
            std::optional<simplex> p = k.free_face_principal(s);
            if (!p) continue;
            if (!eligible(s, *p)) continue;
            collapse_access::remove_pair(k, s, *p);
            record(s, *p);
            progressed = true;
        }
    }
}

}  // namespace detail

/// Result of an exhaustive ordinary collapse run.
struct ordinary_spine_result {
    simplicial_complex complex;
    std::vector<std::pair<simplex, simplex>> pairs;
};

/// Collapses free pairs until none remains, recording the removed pairs.
/// With a seed, candidate order is shuffled per pass (the reachable spines
/// differ as sets but are homotopy equivalent); without one the
/// deterministic scan order is used.
inline ordinary_spine_result ordinary_spine_run(
    const simplicial_complex& k,
    std::optional<std::uint64_t> seed = std::nullopt) {
    if (k.empty()) throw invalid_argument_error("spine of empty complex");
    ordinary_spine_result res{k, {}};
    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);
    detail::exhaust_collapses(
        res.complex,
        [&]() {
            return std::vector<simplex>(res.complex.cells().begin(),
                                        res.complex.cells().end());
        },
        [](const simplex&, const simplex&) { return true; },
        [&](const simplex& s, const simplex& p) { res.pairs.emplace_back(s, p); },
        rng ? &*rng : nullptr);
    return res;
}

/// The spine of k under the deterministic collapse order: the result of
/// collapsing until no free simplex remains.
inline simplicial_complex ordinary_spine(const simplicial_complex& k) {
    return ordinary_spine_run(k).complex;
}

}  // namespace spines
