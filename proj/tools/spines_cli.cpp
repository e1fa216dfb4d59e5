// Command-line frontend: build (points -> complex), spine (collapse),
// ih (intersection Betti numbers), check (structural predicates),
// export (flat geometry listing).
//
// Exit codes: 0 success, 2 usage error, 3 data/parse error,
// 4 failed check under --strict.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spines/complex.hpp"
#include "spines/errors.hpp"
#include "spines/homology.hpp"
#include "spines/io.hpp"
#include "spines/layered.hpp"
#include "spines/perversity.hpp"
#include "spines/report.hpp"
#include "spines/rips.hpp"
#include "spines/simplex.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_data = 3;
constexpr int exit_check_failed = 4;

/// Writes text to the --out path, or stdout when no path was given.
void emit(const std::optional<std::string>& out_path, const std::string& text) {
    if (out_path) {
        spines::write_text_file(*out_path, text);
    } else {
        std::cout << text;
    }
}

void log_counts(const spines::simplicial_complex& k, const std::string& label) {
    std::ostringstream line;
    line << label << ":";
    for (std::size_t c : k.counts_by_dim()) line << ' ' << c;
    std::cerr << line.str() << '\n';
}

struct build_options {
    std::string points_file;
    std::string complex_file;
    std::string singular_file;
    double epsilon = 0.0;
    int max_dim = 2;
    std::optional<std::string> out;
};

int run_build(const build_options& opt) {
    std::optional<spines::divided_complex> d;
    if (!opt.complex_file.empty()) {
        std::ifstream in(opt.complex_file);
        if (!in) throw spines::parse_error(opt.complex_file, 0, "cannot open file");
        spines::ordered_json loaded = spines::parse_json(in, opt.complex_file);
        spines::simplicial_complex k =
            spines::complex_from_json(loaded, opt.complex_file);
        std::set<spines::simplex::vertex_id> singular;
        if (spines::has_singular_vertices(loaded))
            singular = spines::divided_from_json(loaded, opt.complex_file)
                           .singular_vertices();
        if (!opt.singular_file.empty()) {
            for (auto v : spines::read_singular_ids_file(opt.singular_file))
                singular.insert(v);
        }
        d.emplace(std::move(k), std::move(singular));
    } else {
        spines::point_cloud cloud = spines::read_points_file(opt.points_file);
        spines::rips_params params;
        params.epsilon = opt.epsilon;
        params.max_dim = opt.max_dim;
        spines::simplicial_complex k = spines::vietoris_rips(cloud, params);
        std::vector<spines::simplex::vertex_id> singular_ids;
        if (!opt.singular_file.empty())
            singular_ids = spines::read_singular_ids_file(opt.singular_file);
        d = spines::to_divided(k, singular_ids);
    }
    log_counts(d->complex(), "cells by dimension");
    emit(opt.out, spines::divided_json_text(*d));
    return exit_ok;
}

struct spine_cmd_options {
    std::string complex_file;
    bool layered = false;
    bool ordinary = false;
    std::optional<std::uint64_t> seed;
    bool validate = false;
    std::optional<std::string> out;
    std::optional<std::string> log_path;
    std::optional<std::string> report_path;
};

void emit_report(const spines::run_report& report,
                 const std::optional<std::string>& path) {
    std::string text = spines::to_json_text(spines::report_to_json(report));
    if (path) {
        spines::write_text_file(*path, text);
    } else {
        std::cerr << text;
    }
}

int run_spine(const spine_cmd_options& opt) {
    spines::run_report report;
    report.command = "spine";
    report.input = opt.complex_file;

    if (opt.layered) {
        spines::divided_complex d = spines::read_divided_file(opt.complex_file);
        report.cells_before = d.complex().counts_by_dim();
        spines::spine_options sopt;
        sopt.seed = opt.seed;
        sopt.validate = opt.validate;
        spines::layered_spine_result res = spines::layered_spine(d, sopt);
        spines::divided_complex spined = res.complex.to_divided();
        report.cells_after = spined.complex().counts_by_dim();
        report.collapse_counts = {
            {"S", res.count(spines::stratum::s)},
            {"C", res.count(spines::stratum::c)},
            {"intermediate", res.count(spines::stratum::intermediate)},
        };
        report.phases = res.timings;
        if (opt.log_path)
            spines::write_text_file(*opt.log_path,
                                    spines::collapse_log_to_jsonl(res.log));
        emit(opt.out, spines::divided_json_text(spined));
        emit_report(report, opt.report_path);
        return exit_ok;
    }

    spines::simplicial_complex k = spines::read_complex_file(opt.complex_file);
    report.cells_before = k.counts_by_dim();
    spines::ordinary_spine_result res = spines::ordinary_spine_run(k, opt.seed);
    report.cells_after = res.complex.counts_by_dim();
    report.collapse_counts = {{"elementary", res.pairs.size()}};
    if (opt.log_path) {
        std::string lines;
        for (const auto& [free, principal] : res.pairs) {
            spines::ordered_json entry;
            entry["kind"] = "elementary";
            entry["free"] = free.vertices();
            entry["principal"] = principal.vertices();
            lines += entry.dump();
            lines += '\n';
        }
        spines::write_text_file(*opt.log_path, lines);
    }
    emit(opt.out, spines::complex_json_text(res.complex));
    emit_report(report, opt.report_path);
    return exit_ok;
}

struct ih_options {
    std::string complex_file;
    std::optional<int> codim;
    std::vector<std::string> perversities;
    std::optional<int> ambient_dim;
    bool force_nonfull = false;
    std::optional<std::string> out;
};

int run_ih(const ih_options& opt) {
    std::ifstream in(opt.complex_file);
    if (!in) throw spines::parse_error(opt.complex_file, 0, "cannot open file");
    spines::ordered_json loaded = spines::parse_json(in, opt.complex_file);
    spines::simplicial_complex k = spines::complex_from_json(loaded, opt.complex_file);
    std::set<spines::simplex::vertex_id> singular;
    if (spines::has_singular_vertices(loaded))
        singular = spines::divided_from_json(loaded, opt.complex_file)
                       .singular_vertices();

    int codim = 1;
    if (opt.codim) {
        codim = *opt.codim;
    } else if (!singular.empty()) {
        codim = spines::filtered_complex::geometric_codim(k, singular);
        std::cerr << "no --codim given; using geometric codimension " << codim
                  << '\n';
    }

    std::vector<spines::perversity> perversities;
    for (const std::string& spec : opt.perversities)
        perversities.push_back(spines::perversity::parse(spec));
    if (perversities.empty()) perversities.push_back(spines::perversity::zero());

    spines::simplicial_complex s_complex;  // empty unless singular vertices exist
    if (!singular.empty()) {
        std::vector<spines::simplex> cells;
        for (const spines::simplex& cell : k.cells()) {
            bool inside = true;
            for (auto v : cell.vertices())
                if (!singular.count(v)) { inside = false; break; }
            if (inside) cells.push_back(cell);
        }
        s_complex = spines::simplicial_complex::from_maximal(cells);
    }
    spines::filtered_complex fc = spines::filtered_complex::make(
        k, s_complex, codim, opt.ambient_dim, opt.force_nonfull);

    std::vector<spines::ordered_json> tables;
    for (const spines::perversity& p : perversities) {
        std::vector<int> betti = spines::intersection_betti(fc, p);
        spines::ordered_json table =
            spines::betti_table_json(p.name(), codim, betti);
        if (fc.fullness_assumed()) table["fullness_assumed"] = true;
        tables.push_back(std::move(table));
    }
    spines::ordered_json doc;
    if (tables.size() == 1) {
        doc = tables.front();
    } else {
        doc = spines::ordered_json::array();
        for (auto& t : tables) doc.push_back(std::move(t));
    }
    emit(opt.out, spines::to_json_text(doc));
    return exit_ok;
}

struct check_options {
    std::string complex_file;
    bool pseudomanifold = false;
    int pseudomanifold_n = -1;  // -1: default to dim K
    bool fullness = false;
    bool strict = false;
    std::optional<std::string> out;
};

int run_check(const check_options& opt) {
    std::ifstream in(opt.complex_file);
    if (!in) throw spines::parse_error(opt.complex_file, 0, "cannot open file");
    spines::ordered_json loaded = spines::parse_json(in, opt.complex_file);
    spines::simplicial_complex k = spines::complex_from_json(loaded, opt.complex_file);

    bool all_ok = true;
    spines::ordered_json doc;
    if (opt.pseudomanifold) {
        int n = opt.pseudomanifold_n >= 0 ? opt.pseudomanifold_n : k.dim();
        auto witness = k.pseudomanifold_witness(n);
        spines::ordered_json entry;
        entry["n"] = n;
        entry["ok"] = !witness.has_value();
        if (witness) {
            entry["witness"] = witness->vertices();
            all_ok = false;
        }
        doc["pseudomanifold"] = entry;
    }
    if (opt.fullness) {
        std::set<spines::simplex::vertex_id> singular;
        if (spines::has_singular_vertices(loaded))
            singular = spines::divided_from_json(loaded, opt.complex_file)
                           .singular_vertices();
        spines::ordered_json entry;
        if (singular.empty()) {
            entry["ok"] = true;
        } else {
            std::vector<spines::simplex> cells;
            for (const spines::simplex& cell : k.cells()) {
                bool inside = true;
                for (auto v : cell.vertices())
                    if (!singular.count(v)) { inside = false; break; }
                if (inside) cells.push_back(cell);
            }
            auto s = spines::simplicial_complex::from_maximal(cells);
            auto witness = spines::simplicial_complex::fullness_witness(k, s);
            entry["ok"] = !witness.has_value();
            if (witness) {
                entry["witness"] = witness->vertices();
                all_ok = false;
            }
        }
        doc["fullness"] = entry;
    }
    emit(opt.out, spines::to_json_text(doc));
    if (!all_ok && opt.strict) return exit_check_failed;
    return exit_ok;
}

struct export_options {
    std::string complex_file;
    std::string points_file;
    std::optional<std::string> out;
};

int run_export(const export_options& opt) {
    spines::simplicial_complex k = spines::read_complex_file(opt.complex_file);
    spines::point_cloud cloud = spines::read_points_file(opt.points_file);
    if (cloud.dimension() > 3)
        throw spines::invalid_argument_error(
            "cannot export " + std::to_string(cloud.dimension()) +
            "-dimensional points; at most 3 coordinates are supported");

    std::vector<spines::simplex::vertex_id> used;
    for (auto v : k.vertex_set()) {
        if (v < 0 || static_cast<std::size_t>(v) >= cloud.size())
            throw spines::invalid_argument_error(
                "vertex id " + std::to_string(v) + " has no point (cloud has " +
                std::to_string(cloud.size()) + " points)");
        used.push_back(v);
    }

    std::ostringstream body;
    body << "# vertices " << used.size() << '\n';
    std::vector<std::size_t> index_of(cloud.size(), 0);
    for (std::size_t i = 0; i < used.size(); ++i) {
        index_of[static_cast<std::size_t>(used[i])] = i + 1;  // OBJ is 1-based
        const auto& p = cloud.points[static_cast<std::size_t>(used[i])];
        body << 'v';
        for (std::size_t c = 0; c < 3; ++c) {
            body << ' ';
            if (c < p.size())
                body << p[c];
            else
                body << 0;
        }
        body << '\n';
    }
    for (const spines::simplex& cell : k.cells()) {
        if (cell.dim() == 1) {
            body << 'l';
            for (auto v : cell.vertices())
                body << ' ' << index_of[static_cast<std::size_t>(v)];
            body << '\n';
        } else if (cell.dim() == 2) {
            body << 'f';
            for (auto v : cell.vertices())
                body << ' ' << index_of[static_cast<std::size_t>(v)];
            body << '\n';
        }
    }
    emit(opt.out, body.str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simplicial spines and two-strata intersection homology"};
    app.require_subcommand(1);

    build_options build_opt;
    auto* build = app.add_subcommand(
        "build", "build a Vietoris-Rips complex from points, or load one");
    build->add_option("points", build_opt.points_file,
                      "points file, one point per line");
    auto* eps = build->add_option("--epsilon", build_opt.epsilon,
                                  "closed diameter threshold (> 0)")
                    ->check(CLI::PositiveNumber);
    build->add_option("--max-dim", build_opt.max_dim,
                      "largest simplex dimension kept")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    build->add_option("--singular", build_opt.singular_file,
                      "file of singular vertex ids, one per line");
    auto* bypass = build->add_option("--complex", build_opt.complex_file,
                                     "load an existing complex JSON instead");
    build->add_option("--out", build_opt.out, "output path (default stdout)");

    spine_cmd_options spine_opt;
    auto* spine = app.add_subcommand("spine", "collapse a complex to a spine");
    spine->add_option("complex", spine_opt.complex_file, "complex JSON file")
        ->required();
    auto* layered_flag = spine->add_flag("--layered", spine_opt.layered,
                                         "stratified collapse (S, C, "
                                         "intermediate phases)");
    auto* ordinary_flag = spine->add_flag("--ordinary", spine_opt.ordinary,
                                          "plain elementary collapse");
    layered_flag->excludes(ordinary_flag);
    spine->add_option("--seed", spine_opt.seed,
                      "shuffle candidate order with this seed");
    spine->add_flag("--validate", spine_opt.validate,
                    "check structural invariants around every step");
    spine->add_option("--out", spine_opt.out, "spine JSON path (default stdout)");
    spine->add_option("--log", spine_opt.log_path,
                      "write the collapse log as JSON lines");
    spine->add_option("--report", spine_opt.report_path,
                      "write the run report JSON (default stderr)");

    ih_options ih_opt;
    auto* ih = app.add_subcommand("ih", "intersection Betti numbers over GF(2)");
    ih->add_option("complex", ih_opt.complex_file, "complex JSON file")->required();
    ih->add_option("--codim", ih_opt.codim,
                   "formal codimension of the singular set (default geometric)")
        ->check(CLI::PositiveNumber);
    ih->add_option("--perversity", ih_opt.perversities,
                   "named (zero, minus-one, lower-middle, top) or a table "
                   "\"k:v,...,default:v\"; repeatable");
    ih->add_option("--ambient-dim", ih_opt.ambient_dim,
                   "ambient dimension n (default dim K)");
    ih->add_flag("--force-nonfull", ih_opt.force_nonfull,
                 "skip the fullness requirement; vertex counting is then an "
                 "approximation and the output is flagged");
    ih->add_option("--out", ih_opt.out, "output path (default stdout)");

    check_options check_opt;
    auto* check = app.add_subcommand("check", "structural predicates with witnesses");
    check->add_option("complex", check_opt.complex_file, "complex JSON file")
        ->required();
    std::string pm_value;
    auto* pm = check->add_option("--pseudomanifold", pm_value,
                                 "check the pseudomanifold property in "
                                 "dimension N (default dim K)")
                   ->expected(0, 1);
    check->add_flag("--fullness", check_opt.fullness,
                    "check that the singular subcomplex is full");
    check->add_flag("--strict", check_opt.strict,
                    "exit with status 4 when a check fails");
    check->add_option("--out", check_opt.out, "output path (default stdout)");

    export_options export_opt;
    auto* exp = app.add_subcommand(
        "export", "flat OBJ-like listing of the 2-skeleton with coordinates");
    exp->add_option("complex", export_opt.complex_file, "complex JSON file")
        ->required();
    exp->add_option("--points", export_opt.points_file,
                    "points file the vertex ids index into")
        ->required();
    exp->add_option("--out", export_opt.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return exit_usage;
    }

    // Cross-option constraints that CLI11 cannot express declaratively.
    if (build->parsed()) {
        bool have_points = !build_opt.points_file.empty();
        bool have_complex = bypass->count() > 0;
        if (have_points == have_complex) {
            std::cerr << "build: give either a points file or --complex\n";
            return exit_usage;
        }
        if (have_points && eps->count() == 0) {
            std::cerr << "build: --epsilon is required with a points file\n";
            return exit_usage;
        }
    }
    if (spine->parsed() && spine_opt.layered == spine_opt.ordinary) {
        std::cerr << "spine: exactly one of --layered or --ordinary is required\n";
        return exit_usage;
    }
    if (ih->parsed()) {
        for (const std::string& spec : ih_opt.perversities) {
            try {
                (void)spines::perversity::parse(spec);
            } catch (const spines::invalid_argument_error& e) {
                std::cerr << "ih: " << e.what() << '\n';
                return exit_usage;
            }
        }
    }
    if (check->parsed()) {
        check_opt.pseudomanifold = pm->count() > 0;
        if (!pm_value.empty()) {
            bool digits = pm_value.find_first_not_of("0123456789") == std::string::npos;
            if (!digits || pm_value.size() > 6) {
                std::cerr << "check: --pseudomanifold needs a dimension >= 0\n";
                return exit_usage;
            }
            check_opt.pseudomanifold_n = std::stoi(pm_value);
        }
        if (!check_opt.pseudomanifold && !check_opt.fullness) {
            std::cerr << "check: nothing to check; pass --pseudomanifold and/or "
                         "--fullness\n";
            return exit_usage;
        }
    }

    try {
        if (build->parsed()) return run_build(build_opt);
        if (spine->parsed()) return run_spine(spine_opt);
        if (ih->parsed()) return run_ih(ih_opt);
        if (check->parsed()) return run_check(check_opt);
        if (exp->parsed()) return run_export(export_opt);
    } catch (const spines::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const spines::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return exit_usage;
}
