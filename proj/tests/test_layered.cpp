#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "spines/layered.hpp"
#include "test_util.hpp"

using spines::collapse_entry;
using spines::collapse_log;
using spines::divided_complex;
using spines::layered_complex;
using spines::simplex;
using spines::simplicial_complex;
using spines::stratum;

namespace {

simplicial_complex closure(std::initializer_list<simplex> maximal) {
    return simplicial_complex::from_maximal(std::vector<simplex>(maximal));
}

layered_complex tetra_with_singular_edge() {
    return layered_complex::associate(
        divided_complex(closure({{0, 1, 2, 3}}), {0, 1}));
}

simplicial_complex hexagon_cone() {
    std::vector<simplex> fan;
    for (int i = 0; i < 6; ++i) fan.push_back(simplex{i, (i + 1) % 6, 6});
    return simplicial_complex::from_maximal(fan);
}

}  // namespace

TEST_CASE("divided complex validation") {
    auto k = closure({{0, 1, 2}});
    CHECK_NOTHROW(divided_complex(k, {0, 2}));
    CHECK_NOTHROW(divided_complex(k, {}));
    CHECK_THROWS_AS(divided_complex(k, {5}), spines::invalid_argument_error);
    CHECK_THROWS_AS(divided_complex(simplicial_complex{}, {}),
                    spines::invalid_argument_error);
}

TEST_CASE("stratum classification") {
    auto l = tetra_with_singular_edge();
    CHECK(l.class_of(simplex{0, 1}) == stratum::s);
    CHECK(l.class_of(simplex{0}) == stratum::s);
    CHECK(l.class_of(simplex{2, 3}) == stratum::c);
    CHECK(l.class_of(simplex{0, 2}) == stratum::intermediate);
    CHECK(l.class_of(simplex{0, 1, 2, 3}) == stratum::intermediate);
    CHECK(l.stratum_cells(stratum::s).size() == 3);
    CHECK(l.stratum_cells(stratum::c).size() == 3);
    CHECK(spines::intermediate_simplices(l).size() == 9);
}

TEST_CASE("explicit strata accepted only when induced") {
    auto k = closure({{0, 1, 2, 3}});
    auto good = layered_complex::from_strata(k, closure({{2, 3}}), closure({{0, 1}}));
    CHECK(good == tetra_with_singular_edge());

    // C misses simplices that the induced classification requires.
    CHECK_THROWS_AS(layered_complex::from_strata(k, closure({{2, 3}}), closure({{0}})),
                    spines::invalid_argument_error);
    // Stratum that is not even a subcomplex.
    CHECK_THROWS_AS(layered_complex::from_strata(k, closure({{2, 3}}), closure({{7}})),
                    spines::not_subcomplex_error);
}

TEST_CASE("admissibility closed form matches enumeration") {
    auto l = tetra_with_singular_edge();
    simplex tetra{0, 1, 2, 3};
    CHECK(spines::is_admissible(l, simplex{0, 1, 3}, tetra));
    CHECK_FALSE(spines::is_admissible(l, simplex{1, 2, 3}, tetra));
    CHECK_FALSE(spines::is_admissible(l, simplex{0, 2, 3}, tetra));
    CHECK_FALSE(spines::is_admissible(l, simplex{0, 1}, simplex{0, 1, 2}));
    CHECK(spines::is_admissible(l, simplex{1, 3}, simplex{1, 2, 3}));
    CHECK_FALSE(spines::is_admissible(l, simplex{2, 3}, simplex{1, 2, 3}));

    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 150; ++trial) {
        auto d = testutil::random_divided(rng);
        auto lr = layered_complex::associate(d);
        for (const simplex& s : lr.complex().cells()) {
            for (const simplex& p : lr.complex().proper_cofaces(s)) {
                CHECK(spines::is_admissible(lr, s, p) ==
                      spines::is_admissible_by_enumeration(lr, s, p));
            }
        }
    }
}

TEST_CASE("single-step collapse operations") {
    auto l = tetra_with_singular_edge();
    CHECK_FALSE(spines::s_collapse_step(l).has_value());
    CHECK_FALSE(spines::c_collapse_step(l).has_value());
    auto step = spines::intermediate_collapse_step(l);
    REQUIRE(step.has_value());
    CHECK(step->second ==
          collapse_entry{stratum::intermediate, simplex{0, 1, 3}, simplex{0, 1, 2, 3}});
    CHECK(step->first.complex().size() == 13);
    CHECK(l.complex().size() == 15);  // input untouched
}

TEST_CASE("layered spine of the tetrahedron with one singular edge") {
    auto l = tetra_with_singular_edge();
    auto res = spines::layered_spine(l, {.seed = std::nullopt, .validate = true});

    collapse_log expected = {
        {stratum::intermediate, simplex{0, 1, 3}, simplex{0, 1, 2, 3}},
        {stratum::intermediate, simplex{1, 3}, simplex{1, 2, 3}},
        {stratum::intermediate, simplex{0, 3}, simplex{0, 2, 3}},
        {stratum::c, simplex{3}, simplex{2, 3}},
    };
    CHECK(res.log == expected);
    CHECK(res.count(stratum::s) == 0);
    CHECK(res.count(stratum::c) == 1);
    CHECK(res.count(stratum::intermediate) == 3);
    CHECK(res.complex.complex() == closure({{0, 1, 2}}));
    CHECK(res.complex.complex().size() == 7);
    CHECK(spines::verify_no_layered_collapse(res.complex));

    // The unlayered collapse would go all the way down to a point.
    CHECK(spines::ordinary_spine(l.complex()).size() == 1);
}

TEST_CASE("cone over a hexagon with singular apex is its own spine") {
    auto l = layered_complex::associate(divided_complex(hexagon_cone(), {6}));
    auto res = spines::layered_spine(l, {.seed = std::nullopt, .validate = true});
    CHECK(res.log.empty());
    CHECK(res.complex == l);
    CHECK(spines::verify_no_layered_collapse(l));
    CHECK(spines::ordinary_spine(l.complex()).size() == 1);
}

TEST_CASE("empty singular set reduces to the ordinary spine") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 150; ++trial) {
        auto k = testutil::random_complex(rng);
        auto ordinary = spines::ordinary_spine_run(k);
        auto res = spines::layered_spine(divided_complex(k, {}),
                                         {.seed = std::nullopt, .validate = true});
        CHECK(res.complex.complex() == ordinary.complex);
        REQUIRE(res.log.size() == ordinary.pairs.size());
        for (std::size_t i = 0; i < res.log.size(); ++i) {
            CHECK(res.log[i].kind == stratum::c);
            CHECK(res.log[i].free == ordinary.pairs[i].first);
            CHECK(res.log[i].principal == ordinary.pairs[i].second);
        }
    }
}

TEST_CASE("randomized runs keep the structural invariants") {
    std::mt19937_64 rng(987);
    for (int trial = 0; trial < 200; ++trial) {
        auto d = testutil::random_divided(rng);
        auto res = spines::layered_spine(d, {.seed = std::nullopt, .validate = true});
        CHECK(d.complex().size() - 2 * res.log.size() == res.complex.complex().size());
        CHECK(testutil::euler_characteristic(d.complex()) ==
              testutil::euler_characteristic(res.complex.complex()));
        CHECK(spines::verify_no_layered_collapse(res.complex));
        // Phase order is respected in the recorded log: S-collapses come
        // before the first intermediate collapse, and no intermediate
        // collapse follows the final C run's tail.
        bool seen_intermediate = false;
        for (const collapse_entry& e : res.log) {
            if (e.kind == stratum::intermediate) seen_intermediate = true;
            if (e.kind == stratum::s) CHECK_FALSE(seen_intermediate);
        }
    }
}

TEST_CASE("seeded runs reach equivalent spines") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        auto d = testutil::random_divided(rng);
        auto base = spines::layered_spine(d, {.seed = std::nullopt, .validate = true});
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            auto res = spines::layered_spine(d, {.seed = seed, .validate = true});
            CHECK(testutil::euler_characteristic(res.complex.complex()) ==
                  testutil::euler_characteristic(base.complex.complex()));
            CHECK(spines::verify_no_layered_collapse(res.complex));
        }
    }
}

TEST_CASE("collapse log replay") {
    auto l = tetra_with_singular_edge();
    auto res = spines::layered_spine(l);
    auto replayed = spines::replay_log(l, res.log);
    CHECK(replayed == res.complex);

    collapse_log reordered = {res.log[3], res.log[0], res.log[1], res.log[2]};
    CHECK_THROWS_AS(spines::replay_log(l, reordered), spines::illegal_collapse_error);

    collapse_log wrong_kind = res.log;
    wrong_kind[0].kind = stratum::s;
    CHECK_THROWS_AS(spines::replay_log(l, wrong_kind), spines::illegal_collapse_error);

    collapse_log wrong_principal = res.log;
    wrong_principal[1].principal = simplex{0, 1, 2};
    CHECK_THROWS_AS(spines::replay_log(l, wrong_principal),
                    spines::illegal_collapse_error);

    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        auto d = testutil::random_divided(rng);
        auto lr = layered_complex::associate(d);
        auto run = spines::layered_spine(lr);
        CHECK(spines::replay_log(lr, run.log) == run.complex);
    }
}

TEST_CASE("stratum names round-trip") {
    for (stratum k : {stratum::s, stratum::c, stratum::intermediate}) {
        auto back = spines::stratum_from_name(spines::stratum_name(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
    CHECK_FALSE(spines::stratum_from_name("bogus").has_value());
}
