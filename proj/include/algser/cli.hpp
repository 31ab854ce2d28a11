#pragma once

/**
 * @file cli.hpp
 * @brief The algser command line: expand, implicitize, henselize, certify, oracle, selftest.
 *
 * Exit codes: 0 success, 1 negative mathematical result, 2 input, precision
 * or root error, 3 budget exceeded.
 */

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algser/errors.hpp"
#include "algser/expansion.hpp"
#include "algser/henselization.hpp"
#include "algser/io.hpp"
#include "algser/newton_oracle.hpp"
#include "algser/wilczynski.hpp"

namespace algser::cli {

enum ExitCode : int { ok = 0, negative = 1, bad_input = 2, over_budget = 3 };

struct RunConfig {
    std::string poly_path;
    std::string series_path;
    std::string seed_path;
    std::string shape_path;
    std::string output_path;
    std::string method = "fs";
    std::size_t dx = 0;
    std::size_t dy = 0;
    std::size_t count = 0;
    std::size_t k = 0;
    std::uint64_t budget = NodeBudget::default_limit;
    std::size_t minor_budget = ReconstructOptions{}.minor_budget;
};

inline constexpr const char* budget_env = "ALGSER_BUDGET";

struct Outcome {
    io::json body;
    int code = ok;
};

namespace detail {

inline io::json minor_json(const MinorIndex& m) {
    io::json j;
    j["rows"] = m.rows;
    j["cols"] = io::json::array();
    for (const auto& e : m.cols) j["cols"].push_back({e.i, e.j});
    return j;
}

inline const char* status_name(Reconstruction::Status s) {
    switch (s) {
    case Reconstruction::Status::certified: return "certified";
    case Reconstruction::Status::full_rank: return "full_rank";
    case Reconstruction::Status::no_certified_candidate: return "no_certified_candidate";
    }
    return "unknown";
}

} // namespace detail

inline Outcome cmd_expand(const RunConfig& cfg) {
    const auto p = io::poly_from_json(io::read_file(cfg.poly_path));
    const auto seed = io::series_from_json(io::read_file(cfg.seed_path)).tail();
    const auto rep = expand_root(p, seed, cfg.count, parse_expand_method(cfg.method), cfg.budget);
    io::json j;
    j["k0"] = rep.k0;
    j["k"] = rep.k;
    if (rep.polynomial_root) {
        j["polynomial_root"] = true;
    } else {
        j["i_k"] = rep.i_k;
        if (rep.fs || rep.closed) j["omega0"] = rep.omega0.str();
    }
    j["seed"] = io::rat_list(rep.seed);
    j["seed_extended"] = rep.seed_extended;
    j["first_index"] = rep.k + 2;
    if (rep.fs) j["fs"] = io::rat_list(*rep.fs);
    if (rep.closed) j["closed"] = io::rat_list(*rep.closed);
    if (rep.newton) j["newton"] = io::rat_list(*rep.newton);
    j["agree"] = rep.agree();
    return {j, rep.agree() ? ok : negative};
}

inline Outcome cmd_implicitize(const RunConfig& cfg) {
    const auto c = io::series_from_json(io::read_file(cfg.series_path));
    const SupportShape shape = cfg.shape_path.empty() ? SupportShape::full_box(cfg.dx, cfg.dy)
                                                      : io::shape_from_json(io::read_file(cfg.shape_path));
    ReconstructOptions opts;
    opts.minor_budget = cfg.minor_budget;
    const auto r = reconstruct(shape, c, cfg.dx, cfg.dy, opts);
    io::json j;
    if (r.poly) {
        j = io::poly_to_json(*r.poly);
        j["certified"] = true;
        j["conditional"] = r.conditional;
        if (r.minor) j["minor"] = detail::minor_json(*r.minor);
        if (r.excluded) j["excluded"] = {r.excluded->i, r.excluded->j};
    } else {
        j["algebraic"] = false;
        j["certified"] = false;
    }
    j["status"] = detail::status_name(r.status);
    j["rank"] = r.rank;
    j["columns"] = r.columns;
    j["depth"] = r.depth;
    j["minors_tried"] = r.minors_tried;
    return {j, r.poly ? ok : negative};
}

inline Outcome cmd_henselize(const RunConfig& cfg) {
    const auto p = io::poly_from_json(io::read_file(cfg.poly_path));
    const auto c = io::series_from_json(io::read_file(cfg.seed_path));
    const auto h = henselize(p, c, cfg.k);
    io::json j;
    j["k"] = h.k;
    if (h.polynomial_root) {
        j["polynomial_root"] = true;
        j["z"] = io::rat_list(h.z);
        return {j, ok};
    }
    j["k0"] = h.k0;
    j["i_k"] = h.i_k;
    j["omega0"] = h.omega0.str();
    j["b"] = io::json::array();
    for (const auto& [e, v] : h.eq.q().terms()) j["b"].push_back(io::json{{"l", e.i}, {"m", e.j}, {"c", v.str()}});
    return {j, ok};
}

inline Outcome cmd_certify(const RunConfig& cfg) {
    const auto p = io::poly_from_json(io::read_file(cfg.poly_path));
    const auto c = io::series_from_json(io::read_file(cfg.series_path));
    const std::size_t dx = cfg.dx ? cfg.dx : p.dx();
    const std::size_t dy = cfg.dy ? cfg.dy : p.dy();
    const auto rep = certify_report(p, c, dx, dy);
    io::json j;
    j["certified"] = rep.certified;
    j["tau"] = rep.tau;
    if (rep.residual_order) j["residual_order"] = *rep.residual_order;
    else j["residual_order"] = nullptr;
    return {j, rep.certified ? ok : negative};
}

inline Outcome cmd_oracle(const RunConfig& cfg) {
    const auto p = io::poly_from_json(io::read_file(cfg.poly_path));
    const auto seed = io::series_from_json(io::read_file(cfg.seed_path)).tail();
    const auto lift = newton_lift(p, seed, cfg.count);
    return {io::series_to_json(lift.series), ok};
}

/// Built-in fixtures; each check records pass/fail.
inline Outcome cmd_selftest(const RunConfig& cfg) {
    io::json checks = io::json::array();
    bool all = true;
    const auto check = [&](const std::string& name, const std::function<bool()>& fn) {
        bool pass = false;
        std::string detail;
        try {
            pass = fn();
        } catch (const std::exception& e) {
            detail = e.what();
        }
        all = all && pass;
        io::json c{{"name", name}, {"pass", pass}};
        if (!detail.empty()) c["error"] = detail;
        checks.push_back(c);
    };

    // y^2 + x^2 y^2 - 2 x^2 y - x^2 and its root through (1, 1).
    const BivarPoly e4{{{0, 2}, Rat(1)}, {{2, 0}, Rat(-1)}, {{2, 1}, Rat(-2)}, {{2, 2}, Rat(1)}};
    const std::vector<Rat> e4_seed{Rat(1), Rat(1)};
    const auto rat_vec = [](std::initializer_list<long> v) {
        std::vector<Rat> out;
        for (long x : v) out.emplace_back(x);
        return out;
    };

    check("newton root of the quartic example", [&] {
        const auto t = newton_lift(e4, e4_seed, 5).series.tail();
        return t == std::vector<Rat>{Rat(1), Rat(1), Rat(0), Rat(-1), Rat(-1) / Rat(2)};
    });
    check("k0 and omega0 of the quartic example", [&] {
        const auto c = newton_lift(e4, e4_seed, 8).series;
        const auto k0 = find_k0(e4, c);
        return k0 == 0 && omega0_closed(e4, c, 0, order_sequence(e4, c, 1).i(0)) == Rat(2);
    });
    check("three-way agreement on the quartic example", [&] {
        const auto rep = expand_root(e4, e4_seed, 6, ExpandMethod::all, cfg.budget);
        return rep.agree() && rep.newton->at(0) == Rat(0) && rep.newton->at(1) == Rat(-1);
    });
    check("reconstruction of the quartic from 16 terms", [&] {
        const auto c = newton_lift(e4, e4_seed, 16).series;
        const auto r = reconstruct(SupportShape::full_box(2, 2), c, 2, 2);
        return r.poly && *r.poly == normalized(e4);
    });
    check("Catalan numbers from y = x + y^2", [&] {
        const ReducedHenselEq q(BivarPoly{{{1, 0}, Rat(1)}, {{0, 2}, Rat(1)}});
        return fs_expand(q, 7).tail() == rat_vec({1, 1, 2, 5, 14, 42, 132});
    });
    check("branches sharing four terms", [&] {
        const BivarPoly a{{{0, 1}, Rat(1)}, {{1, 0}, Rat(-1)}};
        const BivarPoly b{{{0, 1}, Rat(1)}, {{1, 0}, Rat(-1)}, {{5, 0}, Rat(-1)}};
        const BivarPoly p = a * b;
        const auto c = newton_lift(p, rat_vec({1, 0, 0, 0, 1}), 12).series;
        const auto rep = expand_root(p, rat_vec({1, 0, 0, 0, 1, 0}), 4, ExpandMethod::all, cfg.budget);
        return find_k0(p, c) == 4 && rep.agree();
    });
    check("certificate rejects a perturbed series", [&] {
        auto c = newton_lift(e4, e4_seed, 8).series.dense();
        c[4] += Rat(1);
        return !certify(e4, TruncatedSeries::from_dense(c), 2, 2);
    });
    check("fraction-free determinant", [&] {
        const RatMatrix m{{Rat(2), Rat(0)}, {Rat(7), Rat(4)}};
        return bareiss_det(m) == Rat(8) && determinant(m) == Rat(8);
    });

    io::json j;
    j["checks"] = checks;
    j["passed"] = all;
    return {j, all ? ok : negative};
}

/// Parses argv, runs one subcommand and writes its JSON result.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact power-series tools for algebraic series"};
    app.require_subcommand(1);
    RunConfig cfg;
    if (const char* env = std::getenv(budget_env)) {
        try {
            cfg.budget = std::stoull(env);
        } catch (const std::exception&) {
            err << "error: " << budget_env << " must be a positive integer\n";
            return bad_input;
        }
    }
    app.add_option("--budget", cfg.budget, "Enumeration node budget")->check(CLI::PositiveNumber);
    app.add_option("-o,--output", cfg.output_path, "Write the JSON result to this file");

    auto* expand = app.add_subcommand("expand", "Coefficients of a simple root past its seed");
    expand->add_option("--poly", cfg.poly_path)->required()->check(CLI::ExistingFile);
    expand->add_option("--seed", cfg.seed_path)->required()->check(CLI::ExistingFile);
    expand->add_option("--count", cfg.count)->required()->check(CLI::PositiveNumber);
    expand->add_option("--method", cfg.method)->check(CLI::IsMember({"fs", "closed", "newton", "all"}));

    auto* implicitize = app.add_subcommand("implicitize", "Recover a polynomial from series coefficients");
    implicitize->add_option("--series", cfg.series_path)->required()->check(CLI::ExistingFile);
    implicitize->add_option("--dx", cfg.dx)->required()->check(CLI::PositiveNumber);
    implicitize->add_option("--dy", cfg.dy)->required()->check(CLI::PositiveNumber);
    implicitize->add_option("--shape", cfg.shape_path)->check(CLI::ExistingFile);
    implicitize->add_option("--minor-budget", cfg.minor_budget)->check(CLI::PositiveNumber);

    auto* hens = app.add_subcommand("henselize", "Reduced Henselian equation for the tail of a root");
    hens->add_option("--poly", cfg.poly_path)->required()->check(CLI::ExistingFile);
    hens->add_option("--seed", cfg.seed_path)->required()->check(CLI::ExistingFile);
    hens->add_option("--k", cfg.k)->required();

    auto* cert = app.add_subcommand("certify", "Check P(x, y) = 0 from 2 dx dy terms");
    cert->add_option("--poly", cfg.poly_path)->required()->check(CLI::ExistingFile);
    cert->add_option("--series", cfg.series_path)->required()->check(CLI::ExistingFile);
    cert->add_option("--dx", cfg.dx)->check(CLI::PositiveNumber);
    cert->add_option("--dy", cfg.dy)->check(CLI::PositiveNumber);

    auto* oracle = app.add_subcommand("oracle", "Newton lifting of a root to a given precision");
    oracle->add_option("--poly", cfg.poly_path)->required()->check(CLI::ExistingFile);
    oracle->add_option("--seed", cfg.seed_path)->required()->check(CLI::ExistingFile);
    oracle->add_option("--count", cfg.count)->required()->check(CLI::PositiveNumber);

    auto* selftest = app.add_subcommand("selftest", "Run the built-in fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }

    Outcome res;
    try {
        if (*expand) res = cmd_expand(cfg);
        else if (*implicitize) res = cmd_implicitize(cfg);
        else if (*hens) res = cmd_henselize(cfg);
        else if (*cert) res = cmd_certify(cfg);
        else if (*oracle) res = cmd_oracle(cfg);
        else if (*selftest) res = cmd_selftest(cfg);
    } catch (const budget_error& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return over_budget;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }

    const std::string text = res.body.dump(2) + "\n";
    if (cfg.output_path.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.output_path);
        if (!f) {
            err << "error: cannot write '" << cfg.output_path << "'\n";
            return bad_input;
        }
        f << text;
    }
    return res.code;
}

} // namespace algser::cli
