#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "spines/errors.hpp"

namespace spines {

/// An abstract simplex: a nonempty, strictly increasing sequence of
/// non-negative integer vertex ids. dim() = number of vertices - 1.
///
/// Construction canonicalizes (sorts) its input and rejects empty vertex
/// sets, duplicate vertices and negative ids with malformed_simplex_error.
class simplex {
public:
    using vertex_id = std::int32_t;

    explicit simplex(std::vector<vertex_id> vertices) : verts_(std::move(vertices)) {
        canonicalize();
    }

    simplex(std::initializer_list<vertex_id> vertices) : verts_(vertices) {
        canonicalize();
    }

    int dim() const { return static_cast<int>(verts_.size()) - 1; }

    const std::vector<vertex_id>& vertices() const { return verts_; }

    bool contains_vertex(vertex_id v) const {
        return std::binary_search(verts_.begin(), verts_.end(), v);
    }

    /// True iff this is a face of t (subset of t's vertex set; includes t itself).
    bool is_face_of(const simplex& t) const {
        return std::includes(t.verts_.begin(), t.verts_.end(), verts_.begin(), verts_.end());
    }

    /// True iff this is a proper face of t (face and not equal).
    bool is_proper_face_of(const simplex& t) const {
        return verts_.size() < t.verts_.size() && is_face_of(t);
    }

    /// The codimension-1 faces (empty for a vertex).
    std::vector<simplex> facets() const {
        std::vector<simplex> out;
        if (dim() == 0) return out;
        out.reserve(verts_.size());
        for (std::size_t skip = 0; skip < verts_.size(); ++skip) {
            std::vector<vertex_id> f;
            f.reserve(verts_.size() - 1);
            for (std::size_t i = 0; i < verts_.size(); ++i) {
                if (i != skip) f.push_back(verts_[i]);
            }
            out.emplace_back(std::move(f));
        }
        return out;
    }

    /// All proper faces (every nonempty proper subset of the vertex set).
    /// Guarded against pathological dimensions to keep 2^n enumeration sane.
    std::vector<simplex> proper_faces() const {
        if (verts_.size() > 24) {
            throw invalid_argument_error(
                "simplex dimension " + std::to_string(dim()) +
                " too large for face enumeration");
        }
        std::vector<simplex> out;
        const std::uint32_t full = (1u << verts_.size()) - 1u;
        for (std::uint32_t mask = 1; mask < full; ++mask) {
            std::vector<vertex_id> f;
            for (std::size_t i = 0; i < verts_.size(); ++i) {
                if (mask & (1u << i)) f.push_back(verts_[i]);
            }
            out.emplace_back(std::move(f));
        }
        return out;
    }

    /// Canonical container order: by dimension, then lexicographic on vertices.
    std::strong_ordering operator<=>(const simplex& other) const {
        if (verts_.size() != other.verts_.size())
            return verts_.size() <=> other.verts_.size();
        return std::lexicographical_compare_three_way(
            verts_.begin(), verts_.end(), other.verts_.begin(), other.verts_.end());
    }

    bool operator==(const simplex& other) const = default;

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(verts_[i]);
        }
        s += "}";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const simplex& s) {
        return os << s.to_string();
    }

private:
    void canonicalize() {
        if (verts_.empty())
            throw malformed_simplex_error("empty simplex is not allowed");
        std::sort(verts_.begin(), verts_.end());
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            if (verts_[i] < 0)
                throw malformed_simplex_error("negative vertex id " +
                                              std::to_string(verts_[i]));
            if (i > 0 && verts_[i] == verts_[i - 1])
                throw malformed_simplex_error("duplicate vertex id " +
                                              std::to_string(verts_[i]));
        }
    }

    std::vector<vertex_id> verts_;
};

/// Scan order used by all collapse loops: ascending dimension, then
/// descending lexicographic on the canonical vertex sequence. The library's
/// deterministic outputs are pinned to this order.
struct scan_order {
    bool operator()(const simplex& a, const simplex& b) const {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return std::lexicographical_compare(b.vertices().begin(), b.vertices().end(),
                                            a.vertices().begin(), a.vertices().end());
    }
};

}  // namespace spines
