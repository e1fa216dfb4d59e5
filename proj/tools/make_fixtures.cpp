// Generates and verifies the shipped test fixtures under tests/data.
//
// Every fixture is checked against its expected collapse counts and Betti
// numbers before being written; generation aborts on any mismatch.  The
// geometric fixtures are produced by deterministic searches (fixed seeds),
// so regenerating the files is reproducible bit for bit.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spines/complex.hpp"
#include "spines/homology.hpp"
#include "spines/io.hpp"
#include "spines/layered.hpp"
#include "spines/perversity.hpp"
#include "spines/rips.hpp"
#include "spines/simplex.hpp"

namespace {

using spines::divided_complex;
using spines::perversity;
using spines::simplex;
using spines::simplicial_complex;

void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error("fixture verification failed: " + what);
}

simplex sx(std::initializer_list<int> verts) {
    return simplex(std::vector<int>(verts));
}

std::string format_point(const std::vector<double>& p, int decimals) {
    std::ostringstream out;
    char buf[64];
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.*f", decimals, p[i]);
        if (i) out << ' ';
        out << buf;
    }
    return out.str();
}

std::vector<int> betti_of(const divided_complex& d, int codim, const perversity& p) {
    auto fc = spines::filtered_complex::from_divided(d, codim);
    return spines::intersection_betti(fc, p);
}

// --------------------------------------------------------------------------
// Tetrahedron with two singular vertices: the smallest complex whose
// stratified collapse uses both intermediate and C steps.

void make_tetra(const std::string& dir) {
    divided_complex d(simplicial_complex::from_maximal({sx({0, 1, 2, 3})}), {0, 1});
    auto res = spines::layered_spine(d);

    spines::collapse_log expected_log = {
        {spines::stratum::intermediate, sx({0, 1, 3}), sx({0, 1, 2, 3})},
        {spines::stratum::intermediate, sx({1, 3}), sx({1, 2, 3})},
        {spines::stratum::intermediate, sx({0, 3}), sx({0, 2, 3})},
        {spines::stratum::c, sx({3}), sx({2, 3})},
    };
    expect(res.log == expected_log, "tetra collapse sequence");
    expect(res.complex.complex() ==
               simplicial_complex::from_maximal({sx({0, 1, 2})}),
           "tetra spine");
    expect(spines::verify_no_layered_collapse(res.complex), "tetra spine is final");

    spines::write_text_file(dir + "/tetra412.json", spines::divided_json_text(d));
    std::cerr << "tetra412: ok\n";
}

// --------------------------------------------------------------------------
// Cone over a hexagon with a singular apex: codimension-2 fixture with
// known intersection Betti numbers for the zero and minus-one perversities.

void make_hexagon_cone(const std::string& dir) {
    std::vector<simplex> tris;
    for (int i = 0; i < 6; ++i) tris.push_back(sx({i, (i + 1) % 6, 6}));
    divided_complex d(simplicial_complex::from_maximal(tris), {6});

    auto res = spines::layered_spine(d);
    expect(res.log.empty(), "hexagon cone is its own stratified spine");
    expect(spines::ordinary_spine(d.complex()).size() == 1,
           "hexagon cone collapses to a point without strata");

    expect(betti_of(d, 2, perversity::zero()) == std::vector<int>{1, 0, 0},
           "hexagon cone zero-perversity betti");
    expect(betti_of(d, 2, perversity::minus_one()) == std::vector<int>{1, 1, 0},
           "hexagon cone minus-one-perversity betti");

    spines::write_text_file(dir + "/hexagon_cone.json", spines::divided_json_text(d));
    std::cerr << "hexagon_cone: ok\n";
}

// --------------------------------------------------------------------------
// Figure eight: 12 points in the plane whose Rips complex at threshold 1 is
// exactly a prescribed graph plus three triangles; collapsing it yields two
// circles joined at the singular vertex 0.

struct fig8_design {
    static constexpr int n = 12;
    std::vector<std::pair<int, int>> edges = {
        {0, 1}, {0, 2}, {0, 5}, {0, 6}, {0, 7}, {0, 11}, {1, 2}, {2, 3},
        {3, 4}, {4, 5}, {2, 4}, {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11}};
    std::vector<std::array<int, 3>> triangles = {{0, 1, 2}, {0, 6, 7}, {2, 3, 4}};

    bool adjacent(int a, int b) const {
        for (auto [x, y] : edges)
            if ((x == a && y == b) || (x == b && y == a)) return true;
        return false;
    }

    simplicial_complex complex() const {
        std::vector<simplex> cells;
        for (auto [a, b] : edges) cells.push_back(sx({a, b}));
        for (auto& t : triangles) cells.push_back(sx({t[0], t[1], t[2]}));
        return simplicial_complex::from_maximal(cells);
    }
};

double dist2d(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

/// Positive when some pair violates the separation targets lo (edges must be
/// closer than lo) and hi (non-edges must be farther than hi).
double layout_energy(const fig8_design& design,
                     const std::array<std::array<double, 2>, 12>& pts, double lo,
                     double hi) {
    double e = 0.0;
    for (int i = 0; i < fig8_design::n; ++i) {
        for (int j = i + 1; j < fig8_design::n; ++j) {
            double d = dist2d(pts[i], pts[j]);
            double gap = design.adjacent(i, j) ? d - lo : hi - d;
            if (gap > 0) e += gap * gap;
        }
    }
    return e;
}

/// Smallest slack against the hard thresholds 0.97 / 1.03 around the Rips
/// threshold 1; non-negative means every pair is safely classified.
double layout_margin(const fig8_design& design,
                     const std::array<std::array<double, 2>, 12>& pts) {
    double margin = 1e9;
    for (int i = 0; i < fig8_design::n; ++i) {
        for (int j = i + 1; j < fig8_design::n; ++j) {
            double d = dist2d(pts[i], pts[j]);
            margin = std::min(margin,
                              design.adjacent(i, j) ? 0.97 - d : d - 1.03);
        }
    }
    return margin;
}

void make_fig8(const std::string& dir) {
    fig8_design design;
    // Two loops around the shared vertex 0: the five-vertex loop occupies the
    // left half-plane, the six-vertex loop sits on a heptagon to the right.
    std::array<std::array<double, 2>, 12> pts = {{
        {0.0, 0.0},
        {-0.4945, -0.8229},   // 1
        {-0.7767, -0.5644},   // 2
        {-1.5500, -0.7500},   // 3
        {-1.5000, 0.0000},    // 4
        {-0.7864, 0.5506},    // 5
        {0.2575, 0.9155},     // 6
        {1.1341, 1.2849},     // 7
        {1.9694, 0.8301},     // 8
        {2.1345, -0.1065},    // 9
        {1.5053, -0.8196},    // 10
        {0.5557, -0.7722},    // 11
    }};

    std::mt19937_64 rng(988);
    std::normal_distribution<double> step(0.0, 1.0);
    std::uniform_int_distribution<int> pick(1, fig8_design::n - 1);
    double energy = layout_energy(design, pts, 0.94, 1.06);
    double sigma = 0.05;
    for (int iter = 0; iter < 400000 && energy > 0.0; ++iter) {
        int v = pick(rng);
        auto old = pts[v];
        pts[v][0] += sigma * step(rng);
        pts[v][1] += sigma * step(rng);
        double e = layout_energy(design, pts, 0.94, 1.06);
        if (e <= energy) {
            energy = e;
        } else {
            pts[v] = old;
        }
        if (iter % 20000 == 19999) sigma = std::max(0.004, sigma * 0.7);
    }
    expect(energy == 0.0, "figure-eight layout search converged");

    // Round to four decimals; the remaining slack dominates rounding error.
    spines::point_cloud cloud;
    for (auto& p : pts) {
        double x = std::round(p[0] * 1e4) / 1e4;
        double y = std::round(p[1] * 1e4) / 1e4;
        cloud.points.push_back({x, y});
        p = {x, y};
    }
    expect(layout_margin(design, pts) >= 0.03, "figure-eight separation margin");

    simplicial_complex expected = design.complex();
    simplicial_complex rips = spines::vietoris_rips(cloud, {1.0, 3});
    expect(rips == expected, "figure-eight Rips complex matches the design");
    expect(rips.counts_by_dim() == std::vector<std::size_t>{12, 16, 3},
           "figure-eight cell counts");

    divided_complex d = spines::to_divided(rips, {0});
    auto res = spines::layered_spine(d);
    expect(res.count(spines::stratum::s) == 0 &&
               res.count(spines::stratum::c) == 2 &&
               res.count(spines::stratum::intermediate) == 2,
           "figure-eight collapse counts (2 C, 2 intermediate)");
    divided_complex spined = res.complex.to_divided();
    expect(spined.complex().counts_by_dim() == std::vector<std::size_t>{11, 12},
           "figure-eight spine counts");
    expect(spines::verify_no_layered_collapse(res.complex),
           "figure-eight spine is final");

    expect(betti_of(spined, 1, perversity::zero()) == std::vector<int>{1, 2},
           "figure-eight spine zero-perversity betti");
    expect(betti_of(spined, 1, perversity::minus_one()) == std::vector<int>{2, 0},
           "figure-eight spine minus-one-perversity betti");
    expect(betti_of(d, 2, perversity::zero()) == std::vector<int>{2, 0, 0},
           "figure-eight unspined zero-perversity betti");
    expect(betti_of(d, 2, perversity::minus_one()) == std::vector<int>{2, 0, 0},
           "figure-eight unspined minus-one-perversity betti");

    std::string points_text;
    for (const auto& p : cloud.points) points_text += format_point(p, 4) + "\n";
    spines::write_text_file(dir + "/fig8_points.txt", points_text);
    spines::write_text_file(dir + "/fig8_singular.txt", "0\n");
    spines::write_text_file(dir + "/fig8_rips.json", spines::divided_json_text(d));
    spines::write_text_file(dir + "/fig8_spine.json",
                            spines::divided_json_text(spined));

    // Round-trip: the shipped text files rebuild the identical complex.
    spines::point_cloud reread =
        spines::read_points_file(dir + "/fig8_points.txt");
    expect(spines::vietoris_rips(reread, {1.0, 3}) == expected,
           "figure-eight points round-trip");
    std::cerr << "fig8: ok (margin " << layout_margin(design, pts) << ")\n";
}

// --------------------------------------------------------------------------
// Pinched torus: an 8 x 67 vertex grid closed up by two fans through the
// pinch vertex 0, decorated with collapsible material so that the stratified
// collapse performs exactly 978 C and 11 intermediate steps.

struct pinched_design {
    static constexpr int rows = 8;
    static constexpr int cols = 67;

    static int id(int u, int v) {
        int w = ((v % cols) + cols) % cols;
        return 1 + (u - 1) * cols + w;
    }
    static int c1(int v) { return id(1, v); }
    static int c8(int v) { return id(8, v); }

    // Decoration sites.  Long-diagonal tetrahedra sit over interior quads;
    // fan-chord tetrahedra sit over consecutive spoke triangles; fins and
    // spikes hang off existing cells.  All sites are pairwise disjoint.
    std::vector<std::pair<int, int>> horiz_sites = {
        {3, 8}, {3, 16}, {3, 24}, {3, 32}, {3, 40}, {3, 48}, {3, 56}, {3, 64},
        {5, 8}, {5, 16}, {5, 24}, {5, 32}, {5, 40}, {5, 48}, {5, 56}, {5, 64}};
    std::vector<std::pair<int, int>> spoke_sites = {
        {1, 20}, {1, 50}, {8, 10}, {8, 30}, {8, 50}};
    std::vector<std::array<int, 2>> sigma_sites = {{10, 12}, {40, 42}};

    simplicial_complex full() const {
        std::vector<simplex> cells;
        for (int u = 1; u <= rows - 1; ++u) {
            for (int v = 0; v < cols; ++v) {
                cells.push_back(
                    sx({id(u, v), id(u + 1, v), id(u + 1, v + 1), id(u, v + 1)}));
            }
        }
        for (int v = 0; v < cols; ++v) {
            cells.push_back(sx({0, c1(v), c1(v + 1)}));
            cells.push_back(sx({0, c8(v), c8(v + 1)}));
        }
        for (auto [u, v] : horiz_sites) {
            cells.push_back(
                sx({id(u, v), id(u + 1, v), id(u, v + 1), id(u + 1, v - 1)}));
        }
        for (auto [row, i] : spoke_sites) {
            cells.push_back(
                sx({0, id(row, i), id(row, i + 1), id(row, i + 2)}));
        }
        for (auto [a, b] : sigma_sites) {
            cells.push_back(sx({0, c1(a), c1(b)}));
        }
        cells.push_back(sx({0, c1(60), 537}));        // fin over a spoke
        cells.push_back(sx({212, 213, 538}));         // fins over grid edges
        cells.push_back(sx({289, 290, 539}));
        cells.push_back(sx({232, 540}));              // spikes
        cells.push_back(sx({309, 541}));
        cells.push_back(sx({386, 542}));
        return simplicial_complex::from_maximal(cells);
    }
};

void make_pinched(const std::string& dir) {
    pinched_design design;
    simplicial_complex full = design.full();
    expect(full.counts_by_dim() == std::vector<std::size_t>{543, 2109, 2057, 490},
           "pinched torus full cell counts");

    divided_complex d(full, {0});
    auto res = spines::layered_spine(d);
    expect(res.count(spines::stratum::s) == 0, "pinched torus has no S collapses");
    expect(res.count(spines::stratum::c) == 978, "pinched torus C collapse count");
    expect(res.count(spines::stratum::intermediate) == 11,
           "pinched torus intermediate collapse count");
    divided_complex spined = res.complex.to_divided();
    expect(spined.complex().counts_by_dim() ==
               std::vector<std::size_t>{537, 1610, 1074},
           "pinched torus spine cell counts");
    expect(spines::verify_no_layered_collapse(res.complex),
           "pinched torus spine is final");

    expect(betti_of(spined, 2, perversity::zero()) == std::vector<int>{1, 0, 1},
           "pinched torus spine zero-perversity betti");
    expect(spines::ordinary_betti(spined.complex()) == std::vector<int>{1, 1, 1},
           "pinched torus spine ordinary betti");
    expect(spines::normalized_betti(betti_of(d, 2, perversity::zero())) ==
               std::vector<int>({1, 0, 1}),
           "pinched torus full-complex betti agrees with the spine");

    spines::write_text_file(dir + "/pinched_torus.json",
                            spines::divided_json_text(d));
    std::cerr << "pinched_torus: ok\n";
}

// --------------------------------------------------------------------------
// Cone sample: 34 points near the cone x^2 + y^2 = 9 (z-1)^2 plus the apex,
// searched over sampling seeds and thresholds until the stratified collapse
// performs exactly 93 C and 4 intermediate steps on a 3-dimensional complex
// whose stratified spine is a triangulated cone on a circle.
//
// Points are rejection-sampled on the surface band with a minimum pairwise
// separation: without it the samples crowd the apex, higher-dimensional
// cliques appear before the complex has grown, and the collapse count
// plateaus far below the target.

spines::point_cloud sample_cone(std::uint64_t seed) {
    constexpr double min_sep = 0.18;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> xy(-1.0, 1.0);
    std::uniform_real_distribution<double> zd(0.0, 1.0);
    spines::point_cloud cloud;
    while (cloud.points.size() < 34) {
        double x = xy(rng), y = xy(rng), z = zd(rng);
        if (std::abs(x * x + y * y - 9.0 * (z - 1.0) * (z - 1.0)) > 0.001)
            continue;
        bool ok = x * x + y * y + (z - 1.0) * (z - 1.0) >= min_sep * min_sep;
        for (const auto& p : cloud.points) {
            if (!ok) break;
            double dx = p[0] - x, dy = p[1] - y, dz = p[2] - z;
            if (dx * dx + dy * dy + dz * dz < min_sep * min_sep) ok = false;
        }
        if (ok) cloud.points.push_back({x, y, z});
    }
    cloud.points.push_back({0.0, 0.0, 1.0});  // apex, vertex id 34
    return cloud;
}

void make_cone(const std::string& dir) {
    for (std::uint64_t seed = 0; seed < 50000; ++seed) {
        if (seed % 1000 == 0 && seed > 0)
            std::cerr << "cone search: seed " << seed << "\n";
        spines::point_cloud cloud = sample_cone(seed);

        // Every pairwise distance is a critical threshold; scanning them in
        // order visits each achievable complex exactly once.  The window of
        // interest starts when the complex reaches dimension 3 and ends when
        // a 4-dimensional clique appears or the complex outgrows the target.
        std::vector<double> dists;
        for (std::size_t a = 0; a < cloud.size(); ++a)
            for (std::size_t b = a + 1; b < cloud.size(); ++b)
                dists.push_back(cloud.distance(a, b));
        std::sort(dists.begin(), dists.end());

        for (std::size_t i = 0; i < dists.size(); ++i) {
            double eps = dists[i];
            if (eps < 0.10) continue;
            simplicial_complex k = spines::vietoris_rips(cloud, {eps, 4});
            if (k.dim() > 3 || k.size() > 400) break;
            if (k.dim() != 3 || k.size() < 180) continue;
            divided_complex d = spines::to_divided(k, {34});
            auto res = spines::layered_spine(d);
            if (res.count(spines::stratum::c) != 93 ||
                res.count(spines::stratum::intermediate) != 4 ||
                res.count(spines::stratum::s) != 0)
                continue;

            // The spine must be a 2-dimensional cone on a circle and the
            // complex itself contractible, so the fixture demonstrates what
            // the stratified collapse preserves and the ordinary one loses.
            divided_complex sp = res.complex.to_divided();
            if (sp.complex().dim() != 2) continue;
            auto fc = spines::filtered_complex::from_divided(sp, 2);
            if (spines::intersection_betti(fc, perversity::zero()) !=
                    std::vector<int>{1, 0, 0} ||
                spines::intersection_betti(fc, perversity::minus_one()) !=
                    std::vector<int>{1, 1, 0})
                continue;
            if (spines::ordinary_spine(k).size() != 1) continue;

            // Pick a short decimal threshold strictly inside the gap to the
            // next pairwise distance, so rounding the shipped coordinates to
            // six decimals cannot change the complex.
            double next = (i + 1 < dists.size()) ? dists[i + 1] : eps + 1.0;
            if (next - eps < 2e-4) continue;
            double shipped_eps = std::round((eps + next) / 2 * 1e4) / 1e4;
            if (shipped_eps <= eps + 5e-5 || shipped_eps >= next - 5e-5)
                shipped_eps = std::round((eps + next) / 2 * 1e6) / 1e6;
            expect(shipped_eps > eps && shipped_eps < next,
                   "cone threshold fits inside the critical gap");

            std::string points_text;
            for (const auto& p : cloud.points)
                points_text += format_point(p, 6) + "\n";
            spines::write_text_file(dir + "/cone_points.txt", points_text);
            spines::write_text_file(dir + "/cone_singular.txt", "34\n");
            {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%g\n", shipped_eps);
                spines::write_text_file(dir + "/cone_epsilon.txt", buf);
            }
            spines::write_text_file(dir + "/cone_rips.json",
                                    spines::divided_json_text(d));

            // The shipped text files must rebuild the identical complex.
            spines::point_cloud reread =
                spines::read_points_file(dir + "/cone_points.txt");
            simplicial_complex again =
                spines::vietoris_rips(reread, {shipped_eps, 3});
            expect(again == k, "cone points round-trip");
            auto res2 = spines::layered_spine(spines::to_divided(again, {34}));
            expect(res2.count(spines::stratum::c) == 93 &&
                       res2.count(spines::stratum::intermediate) == 4,
                   "cone collapse counts after round-trip");

            std::cerr << "cone: ok (seed " << seed << ", epsilon "
                      << shipped_eps << ", cells";
            for (std::size_t c : k.counts_by_dim()) std::cerr << ' ' << c;
            std::cerr << ", spine " << sp.complex().size() << " cells)\n";
            return;
        }
    }
    throw std::runtime_error("cone search exhausted without a match");
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "tests/data";
    try {
        make_tetra(dir);
        make_hexagon_cone(dir);
        make_fig8(dir);
        make_pinched(dir);
        make_cone(dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "all fixtures written to " << dir << '\n';
    return 0;
}
