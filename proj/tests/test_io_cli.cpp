// Serialization layer and command-line frontend: JSON round-trips, writer
// byte-determinism, and subprocess checks of the installed subcommands.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spines/complex.hpp"
#include "spines/errors.hpp"
#include "spines/homology.hpp"
#include "spines/io.hpp"
#include "spines/layered.hpp"
#include "spines/report.hpp"
#include "spines/rips.hpp"
#include "spines/simplex.hpp"

#include "test_util.hpp"

namespace {

using spines::divided_complex;
using spines::ordered_json;
using spines::simplex;
using spines::simplicial_complex;

simplicial_complex make_complex(std::initializer_list<std::initializer_list<int>> maximal) {
    std::vector<simplex> cells;
    for (const auto& verts : maximal) cells.emplace_back(std::vector<int>(verts));
    return simplicial_complex::from_maximal(cells);
}

struct command_result {
    int exit_code = -1;
    std::string out;
};

/// Runs a shell command, capturing stdout; stderr goes to the given file or
/// is discarded.
command_result run_command(const std::string& cmd) {
    command_result res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string cli() { return SPINES_CLI_PATH; }

std::string temp_dir() {
    static std::string dir = [] {
        std::string tmpl = "/tmp/spines_cli_test_XXXXXX";
        char* made = mkdtemp(tmpl.data());
        REQUIRE(made != nullptr);
        return std::string(made);
    }();
    return dir;
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = temp_dir() + "/" + name;
    spines::write_text_file(path, text);
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("complex json round-trips through maximal simplices") {
    simplicial_complex k = make_complex({{0, 1, 2}, {2, 3}, {4}});
    ordered_json doc = spines::complex_to_json(k);
    simplicial_complex back = spines::complex_from_json(doc);
    CHECK(back == k);

    // Writer lists maximal simplices only, dimension-descending then
    // lexicographic.
    std::vector<std::vector<int>> listed = doc["simplices"];
    std::vector<std::vector<int>> expected = {{0, 1, 2}, {2, 3}, {4}};
    CHECK(listed == expected);
}

TEST_CASE("complex writer orders same-dimension simplices lexicographically") {
    simplicial_complex k = make_complex({{2, 5}, {0, 7}, {1, 3}});
    std::vector<std::vector<int>> listed = spines::complex_to_json(k)["simplices"];
    std::vector<std::vector<int>> expected = {{0, 7}, {1, 3}, {2, 5}};
    CHECK(listed == expected);
}

TEST_CASE("divided json keeps the singular vertex set") {
    divided_complex d(make_complex({{0, 1, 2}, {2, 3}}), {0, 3});
    ordered_json doc = spines::divided_to_json(d);
    divided_complex back = spines::divided_from_json(doc);
    CHECK(back.complex() == d.complex());
    CHECK(back.singular_vertices() == d.singular_vertices());
}

TEST_CASE("compact text writers emit valid equivalent json") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        divided_complex d = testutil::random_divided(rng, {});
        std::string text = spines::divided_json_text(d);
        std::istringstream in(text);
        ordered_json doc = spines::parse_json(in, "<text>");
        divided_complex back = spines::divided_from_json(doc);
        CHECK(back.complex() == d.complex());
        CHECK(back.singular_vertices() == d.singular_vertices());
        // Stable layout: serializing twice gives identical bytes.
        CHECK(spines::divided_json_text(back) == text);

        std::string plain = spines::complex_json_text(d.complex());
        std::istringstream pin(plain);
        CHECK(spines::complex_from_json(spines::parse_json(pin, "<text>")) ==
              d.complex());
    }
}

TEST_CASE("malformed complex documents are rejected with the source name") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return spines::divided_from_json(spines::parse_json(in, "bad.json"),
                                         "bad.json");
    };
    CHECK_THROWS_AS(parse("not json"), spines::parse_error);
    CHECK_THROWS_AS(parse("[]"), spines::parse_error);
    CHECK_THROWS_AS(parse("{\"simplices\": 3}"), spines::parse_error);
    CHECK_THROWS_AS(parse("{\"simplices\": [[0, \"x\"]]}"), spines::parse_error);
    CHECK_THROWS_AS(parse("{\"simplices\": [[0, 1]]}"), spines::parse_error);
    CHECK_THROWS_AS(
        parse("{\"simplices\": [[0, 1]], \"singular_vertices\": 0}"),
        spines::parse_error);
    CHECK_THROWS_AS(parse("{\"simplices\": [[0, 0]]}"), spines::malformed_simplex_error);
    CHECK_THROWS_AS(parse("{\"simplices\": []}"), spines::invalid_argument_error);
    try {
        parse("{\"simplices\": [[");
    } catch (const spines::parse_error& e) {
        CHECK(e.source() == "bad.json");
    }
}

TEST_CASE("collapse log round-trips through json lines") {
    divided_complex d(make_complex({{0, 1, 2, 3}}), {0, 1});
    auto res = spines::layered_spine(d);
    REQUIRE_FALSE(res.log.empty());
    std::string jsonl = spines::collapse_log_to_jsonl(res.log);
    std::istringstream in(jsonl);
    spines::collapse_log back = spines::collapse_log_from_jsonl(in, "<log>");
    CHECK(back == res.log);
    // The round-tripped log replays on the original complex.
    auto replayed = spines::replay_log(spines::layered_complex::associate(d), back);
    CHECK(replayed.complex() == res.complex.complex());
}

TEST_CASE("collapse log reader reports bad lines") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return spines::collapse_log_from_jsonl(in, "log.jsonl");
    };
    CHECK_THROWS_AS(parse("{\"kind\":\"C\"}\n"), spines::parse_error);
    CHECK_THROWS_AS(parse("nonsense\n"), spines::parse_error);
    CHECK_THROWS_AS(
        parse("{\"kind\":\"Q\",\"free\":[0],\"principal\":[0,1]}\n"),
        spines::parse_error);
    try {
        parse("{\"kind\":\"C\",\"free\":[0],\"principal\":[0,1]}\nboom\n");
        FAIL("expected parse_error");
    } catch (const spines::parse_error& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("report json carries counts and the collapse arithmetic") {
    divided_complex d(make_complex({{0, 1, 2, 3}}), {0, 1});
    auto res = spines::layered_spine(d);
    spines::run_report report;
    report.command = "spine";
    report.input = "<memory>";
    report.cells_before = d.complex().counts_by_dim();
    report.cells_after = res.complex.complex().counts_by_dim();
    report.collapse_counts = {
        {"S", res.count(spines::stratum::s)},
        {"C", res.count(spines::stratum::c)},
        {"intermediate", res.count(spines::stratum::intermediate)},
    };
    report.phases = res.timings;

    std::size_t before = 0, after = 0;
    for (auto c : report.cells_before) before += c;
    for (auto c : report.cells_after) after += c;
    CHECK(before - 2 * report.total_collapses() == after);
    CHECK(report.total_collapses() == res.log.size());

    ordered_json doc = spines::report_to_json(report);
    CHECK(doc["command"] == "spine");
    CHECK(doc["collapses"]["intermediate"].get<std::size_t>() ==
          res.count(spines::stratum::intermediate));
    CHECK(doc.contains("phase_timings_ms"));
}

TEST_CASE("cli: build then spine then ih pipeline") {
    // Unit square, diagonal-free at epsilon 1: one 1-cycle.
    std::string pts = write_temp("square.txt", "0 0\n1 0\n1 1\n0 1\n");
    std::string sing = write_temp("square_sing.txt", "0\n");
    std::string built = temp_dir() + "/square.json";

    auto build = run_command(cli() + " build " + pts + " --epsilon 1 --max-dim 2" +
                             " --singular " + sing + " --out " + built +
                             " 2>/dev/null");
    REQUIRE(build.exit_code == 0);
    divided_complex d = spines::read_divided_file(built);
    CHECK(d.complex().counts_by_dim() == std::vector<std::size_t>{4, 4});
    CHECK(d.singular_vertices() == std::set<spines::simplex::vertex_id>{0});

    std::string spined = temp_dir() + "/square_spine.json";
    std::string log_path = temp_dir() + "/square.jsonl";
    auto spine = run_command(cli() + " spine " + built + " --layered --out " +
                             spined + " --log " + log_path + " 2>/dev/null");
    REQUIRE(spine.exit_code == 0);
    // The square boundary is its own spine: no free edges.
    CHECK(spines::read_divided_file(spined).complex() == d.complex());
    CHECK(slurp(log_path).empty());

    auto ih = run_command(cli() + " ih " + spined +
                          " --codim 1 --perversity zero 2>/dev/null");
    REQUIRE(ih.exit_code == 0);
    ordered_json table = ordered_json::parse(ih.out);
    CHECK(table["perversity"] == "zero");
    CHECK(table["codim"] == 1);
    CHECK(table["betti"] == ordered_json::array({1, 1}));
}

TEST_CASE("cli: spine report invariant and log replayability") {
    divided_complex d(make_complex({{0, 1, 2, 3}, {2, 3, 4}, {4, 5}}), {0, 1});
    std::string input = write_temp("blob.json", spines::divided_json_text(d));
    std::string out = temp_dir() + "/blob_spine.json";
    std::string log_path = temp_dir() + "/blob.jsonl";
    std::string report_path = temp_dir() + "/blob_report.json";

    auto res = run_command(cli() + " spine " + input + " --layered --validate" +
                           " --out " + out + " --log " + log_path + " --report " +
                           report_path + " 2>/dev/null");
    REQUIRE(res.exit_code == 0);

    ordered_json report = ordered_json::parse(slurp(report_path));
    std::size_t before = 0, after = 0;
    for (auto c : report["cells_before"]) before += c.get<std::size_t>();
    for (auto c : report["cells_after"]) after += c.get<std::size_t>();
    std::size_t collapses = 0;
    for (auto& [key, value] : report["collapses"].items())
        collapses += value.get<std::size_t>();
    CHECK(before - 2 * collapses == after);

    spines::collapse_log log = spines::read_collapse_log_file(log_path);
    CHECK(log.size() == collapses);
    auto replayed = spines::replay_log(spines::layered_complex::associate(d), log);
    CHECK(replayed.complex() == spines::read_divided_file(out).complex());
}

TEST_CASE("cli: ordinary spine matches the library result") {
    simplicial_complex k = make_complex({{0, 1, 2, 3}});
    std::string input = write_temp("tetra.json", spines::complex_json_text(k));
    auto res = run_command(cli() + " spine " + input + " --ordinary 2>/dev/null");
    REQUIRE(res.exit_code == 0);
    std::istringstream in(res.out);
    simplicial_complex spined =
        spines::complex_from_json(spines::parse_json(in, "<out>"));
    CHECK(spined == spines::ordinary_spine(k));
    CHECK(spined.size() == 1);
}

TEST_CASE("cli: byte-identical outputs across repeated runs") {
    std::mt19937_64 rng(424242);
    divided_complex d = testutil::random_divided(rng, {10, 8, 5});
    std::string input = write_temp("rand.json", spines::divided_json_text(d));
    for (const std::string& mode : {std::string("--layered --seed 99"),
                                    std::string("--layered"),
                                    std::string("--ordinary")}) {
        auto a = run_command(cli() + " spine " + input + " " + mode + " 2>/dev/null");
        auto b = run_command(cli() + " spine " + input + " " + mode + " 2>/dev/null");
        REQUIRE(a.exit_code == 0);
        CHECK(a.out == b.out);
    }
    auto a = run_command(cli() + " ih " + input + " --codim 1 --perversity zero" +
                         " --perversity lower-middle 2>/dev/null");
    auto b = run_command(cli() + " ih " + input + " --codim 1 --perversity zero" +
                         " --perversity lower-middle 2>/dev/null");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cli: ih defaults, multiple perversities, force-nonfull flag") {
    divided_complex d(make_complex({{0, 1, 2, 3}}), {0, 1});
    std::string input = write_temp("ihdef.json", spines::divided_json_text(d));

    // Geometric codimension: dim K - dim S = 3 - 1 = 2.
    auto res = run_command(cli() + " ih " + input + " 2>/dev/null");
    REQUIRE(res.exit_code == 0);
    ordered_json table = ordered_json::parse(res.out);
    CHECK(table["codim"] == 2);
    CHECK(table["perversity"] == "zero");

    auto multi = run_command(cli() + " ih " + input +
                             " --codim 1 --perversity zero --perversity top" +
                             " --perversity 1:0,2:1,default:2 2>/dev/null");
    REQUIRE(multi.exit_code == 0);
    ordered_json tables = ordered_json::parse(multi.out);
    REQUIRE(tables.is_array());
    REQUIRE(tables.size() == 3);
    CHECK(tables[0]["perversity"] == "zero");
    CHECK(tables[1]["perversity"] == "top");
    CHECK(tables[2]["perversity"] == "1:0,2:1,default:2");

    auto forced = run_command(cli() + " ih " + input +
                              " --codim 2 --force-nonfull 2>/dev/null");
    REQUIRE(forced.exit_code == 0);
    ordered_json ftable = ordered_json::parse(forced.out);
    CHECK(ftable["fullness_assumed"] == true);

    auto bad = run_command(cli() + " ih " + input +
                           " --codim 1 --perversity bogus >/dev/null 2>&1");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli: check pseudomanifold and fullness with witnesses") {
    // Hollow triangle: a 1-pseudomanifold.
    simplicial_complex hollow = make_complex({{0, 1}, {0, 2}, {1, 2}});
    std::string hollow_path = write_temp("hollow.json", spines::complex_json_text(hollow));
    auto good = run_command(cli() + " check " + hollow_path +
                            " --pseudomanifold 2>/dev/null");
    REQUIRE(good.exit_code == 0);
    ordered_json doc = ordered_json::parse(good.out);
    CHECK(doc["pseudomanifold"]["n"] == 1);
    CHECK(doc["pseudomanifold"]["ok"] == true);
    CHECK_FALSE(doc["pseudomanifold"].contains("witness"));

    // Full triangle in dimension 2: edges have a single 2-coface.
    simplicial_complex full = make_complex({{0, 1, 2}});
    std::string full_path = write_temp("full.json", spines::complex_json_text(full));
    auto bad = run_command(cli() + " check " + full_path +
                           " --pseudomanifold --fullness 2>/dev/null");
    REQUIRE(bad.exit_code == 0);  // not strict: reports, exits 0
    doc = ordered_json::parse(bad.out);
    CHECK(doc["pseudomanifold"]["ok"] == false);
    CHECK(doc["pseudomanifold"]["witness"] == ordered_json::array({0, 1}));
    CHECK(doc["fullness"]["ok"] == true);

    auto strict = run_command(cli() + " check " + full_path +
                              " --pseudomanifold --strict >/dev/null 2>&1");
    CHECK(strict.exit_code == 4);
}

TEST_CASE("cli: export writes the 2-skeleton with coordinates") {
    std::string pts = write_temp("exp.txt", "0 0\n1 0\n0.5 1\n");
    simplicial_complex k = make_complex({{0, 1, 2}});
    std::string input = write_temp("exp.json", spines::complex_json_text(k));
    auto res = run_command(cli() + " export " + input + " --points " + pts +
                           " 2>/dev/null");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out ==
          "# vertices 3\n"
          "v 0 0 0\n"
          "v 1 0 0\n"
          "v 0.5 1 0\n"
          "l 1 2\n"
          "l 1 3\n"
          "l 2 3\n"
          "f 1 2 3\n");

    // A vertex id with no matching point is a data error.
    simplicial_complex wide = make_complex({{0, 9}});
    std::string wide_path = write_temp("wide.json", spines::complex_json_text(wide));
    auto bad = run_command(cli() + " export " + wide_path + " --points " + pts +
                           " >/dev/null 2>&1");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("cli: usage and data errors have distinct exit codes") {
    std::string pts = write_temp("eps.txt", "0 0\n1 0\n");
    CHECK(run_command(cli() + " >/dev/null 2>&1").exit_code == 2);
    CHECK(run_command(cli() + " build " + pts + " --epsilon 0 >/dev/null 2>&1")
              .exit_code == 2);
    CHECK(run_command(cli() + " build " + pts + " >/dev/null 2>&1").exit_code == 2);
    CHECK(run_command(cli() + " spine missing.json --layered >/dev/null 2>&1")
              .exit_code == 3);
    std::string bad_json = write_temp("bad.json", "{\"simplices\": [[0,");
    CHECK(run_command(cli() + " ih " + bad_json + " >/dev/null 2>&1").exit_code == 3);
    std::string plain = write_temp("plain.json", "{\"simplices\": [[0, 1]]}\n");
    CHECK(run_command(cli() + " spine " + plain + " --layered >/dev/null 2>&1")
              .exit_code == 3);
    CHECK(run_command(cli() + " check " + plain + " >/dev/null 2>&1").exit_code == 2);
    CHECK(run_command(cli() + " --help >/dev/null 2>&1").exit_code == 0);
}
