#pragma once

// The coalg command line: verify, homology, truncate, preserve, search.
//
// Exit codes: 0 success or green report, 1 failed check, red report or
// counterexample found, 2 usage error, 3 parse or validation error.  All
// output goes through the given streams, so the whole tool can be driven
// in-process.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coalg/io.hpp"
#include "coalg/transfer.hpp"

namespace coalg {

enum ExitCode : int { exit_ok = 0, exit_red = 1, exit_usage = 2, exit_invalid = 3 };

namespace cli {

struct UsageError : Error {
    using Error::Error;
};

inline std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("expected a range a..b, got '" + text + "'");
    try {
        std::size_t u1 = 0, u2 = 0;
        const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
        int lo = std::stoi(a, &u1), hi = std::stoi(b, &u2);
        if (u1 != a.size() || u2 != b.size()) throw UsageError("");
        if (lo > hi) throw UsageError("range '" + text + "' is empty");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw UsageError("expected a range a..b, got '" + text + "'");
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

inline void print_checks(std::ostream& out, const AxiomReport& r) {
    for (const auto& c : r.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (c.witness) out << ": degree " << c.witness->degree << ", " << c.witness->basis;
        out << "\n";
    }
}

template <ExactField K>
int verify(const Workspace<K>& ws, const std::string& name, std::ostream& out) {
    auto run = [&](const std::string& n) -> bool {
        AxiomReport r;
        const auto section = ws.section_of(n);
        if (section == "complexes") r.add("d^2 = 0", std::nullopt);
        else if (section == "chain_maps") r.add("chain-map", std::nullopt);
        else if (section == "comonoids") r = check_comonoid(ws.comonoids.at(n).value);
        else if (section == "comodules") r = check_comodule(ws.comodules.at(n).value);
        else if (section == "monoids") r = check_monoid(ws.monoids.at(n).value);
        else if (section == "modules") r = check_right_module(ws.modules.at(n).value);
        else if (section == "corings") r = check_coring(ws.corings.at(n).value);
        else r = check_coring_comodule(ws.coring_comodules.at(n).value);
        out << n << " (" << section << "): " << (r.ok() ? "valid" : "invalid") << "\n";
        print_checks(out, r);
        return r.ok();
    };
    if (!name.empty()) {
        if (!ws.contains(name)) throw UsageError("no declaration named '" + name + "'");
        return run(name) ? exit_ok : exit_red;
    }
    bool ok = true;
    auto all = [&](const auto& table) {
        for (auto& [n, unused] : table) ok = run(n) && ok;
    };
    all(ws.complexes);
    all(ws.chain_maps);
    all(ws.comonoids);
    all(ws.comodules);
    all(ws.monoids);
    all(ws.modules);
    all(ws.corings);
    all(ws.coring_comodules);
    return ok ? exit_ok : exit_red;
}

template <ExactField K>
const ChainComplex<K>& complex_named(const Workspace<K>& ws, const std::string& name) {
    auto it = ws.complexes.find(name);
    if (it == ws.complexes.end()) throw UsageError("no complex named '" + name + "'");
    return it->second;
}

template <ExactField K>
int homology_command(const Workspace<K>& ws, const std::string& name, std::optional<std::pair<int, int>> range,
                     std::ostream& out) {
    const auto& x = complex_named(ws, name);
    auto h = homology(x);
    int lo = 0, hi = -1;
    if (range) {
        std::tie(lo, hi) = *range;
    } else if (!x.module().is_zero()) {
        lo = *x.module().min_degree();
        hi = *x.module().max_degree();
    }
    for (int i = lo; i <= hi; ++i) {
        out << "H_" << i << " = " << h.dim(i);
        if (h.dim(i) > 0) {
            out << ":";
            for (const auto& l : h.module.labels(i)) out << " " << l;
        }
        out << "\n";
    }
    return exit_ok;
}

template <ExactField K>
int truncate_command(const Workspace<K>& ws, const std::string& name, int n, const std::string& out_path,
                     std::ostream& out) {
    const auto& x = complex_named(ws, name);
    auto t = truncate(x, n);
    Workspace<K> result(ws.field);
    const std::string lname = "L_" + std::to_string(n) + "(" + name + ")";
    const std::string qname = "q_" + std::to_string(n) + "(" + name + ")";
    result.complexes.emplace(name, x);
    result.complexes.emplace(lname, t.complex);
    result.chain_maps.emplace(qname, ChainMapEntry<K>{name, lname, t.q});
    auto text = emit_workspace(result);
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
    return exit_ok;
}

template <ExactField K>
PreservationReport report_for(const Workspace<K>& ws, const std::string& name, int n) {
    const auto section = ws.section_of(name);
    if (section == "comonoids") return preservation_report(ws.comonoids.at(name).value, n);
    if (section == "comodules") return preservation_report(ws.comodules.at(name).value, n);
    if (section == "coring_comodules") return preservation_report(ws.coring_comodules.at(name).value, n);
    if (section.empty()) throw UsageError("no declaration named '" + name + "'");
    throw UsageError("'" + name + "' is not a comonoid, comodule or coring comodule");
}

/// Workspace holding a search hit, with the structure itself named "S".
template <ExactField K>
Workspace<K> hit_workspace(const K& f, const AnyStructure<K>& s) {
    Workspace<K> ws(f);
    if (auto* c = std::get_if<Comonoid<K>>(&s)) {
        ws.complexes.emplace("X", c->carrier);
        ws.comonoids.emplace("S", ComonoidEntry<K>{"X", *c});
    } else if (auto* m = std::get_if<Comodule<K>>(&s)) {
        ws.complexes.emplace("B", m->coalgebra.carrier);
        ws.complexes.emplace("M", m->carrier);
        ws.comonoids.emplace("coalgebra", ComonoidEntry<K>{"B", m->coalgebra});
        ws.comodules.emplace("S", ComoduleEntry<K>{"coalgebra", "M", *m});
    } else {
        const auto& cm = std::get<CoringComodule<K>>(s);
        ws.complexes.emplace("A", cm.coring.algebra.carrier);
        ws.complexes.emplace("B", cm.coring.carrier);
        ws.complexes.emplace("M", cm.module.carrier);
        ws.monoids.emplace("algebra", MonoidEntry<K>{"A", cm.coring.algebra});
        ws.corings.emplace("coring", CoringEntry<K>{"algebra", "B", cm.coring});
        ws.modules.emplace("module", ModuleEntry<K>{"algebra", "M", cm.module});
        ws.coring_comodules.emplace("S", CoringComoduleEntry<K>{"coring", "module", cm});
    }
    return ws;
}

template <ExactField K>
int search_command(const K& f, const SearchConfig& cfg, ReportFormat format, const std::string& out_path,
                   std::ostream& out) {
    auto result = search_counterexample(f, cfg);
    if (!result.hit) {
        out << "no counterexample in " << result.trials_run << " trials (" << result.valid_candidates
            << " valid candidates)\n";
        return exit_ok;
    }
    out << "counterexample at trial " << result.hit->trial << " (" << result.valid_candidates
        << " valid candidates)\n";
    out << emit_report(result.hit->report, format);
    auto ws = hit_workspace(f, result.hit->structure);
    if (out_path.empty())
        out << emit_workspace(ws);
    else
        write_file(out_path, emit_workspace(ws));
    return exit_red;
}

inline AnyWorkspace load(const std::string& path, bool validate) {
    return parse_workspace(read_file(path), ParseOptions{validate});
}

}  // namespace cli

/// Runs the tool on argv; never throws.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact chain complexes, truncations and transferred coalgebra structure", "coalg"};
    app.require_subcommand(1);

    std::string file, name, format_name = "text", out_path, window = "-1..0", range, mode = "comonoid",
                                policy_name = "any", field_name = "Q";
    int n = 0, max_dim = 2, trials = 1000;
    std::uint64_t seed = 0;
    bool no_validate = false;

    auto* verify = app.add_subcommand("verify", "run the base checker on a declaration (all when --name is absent)");
    verify->add_option("file", file, "workspace file")->required();
    verify->add_option("--name", name, "declaration to check");
    verify->add_flag("--no-validate", no_validate, "skip load-time validation");

    auto* hom = app.add_subcommand("homology", "homology of a complex with cycle representatives");
    hom->add_option("file", file, "workspace file")->required();
    hom->add_option("--name", name, "complex")->required();
    hom->add_option("--range", range, "degrees a..b");
    hom->add_flag("--no-validate", no_validate, "skip load-time validation");

    auto* trunc = app.add_subcommand("truncate", "write L_n X and q_n as a workspace");
    trunc->add_option("file", file, "workspace file")->required();
    trunc->add_option("--name", name, "complex")->required();
    trunc->add_option("-n", n, "truncation degree")->required();
    trunc->add_option("--out", out_path, "output file (default: stdout)");
    trunc->add_flag("--no-validate", no_validate, "skip load-time validation");

    auto* pres = app.add_subcommand("preserve", "preservation report for a structure along q_n");
    pres->add_option("file", file, "workspace file")->required();
    pres->add_option("--name", name, "comonoid, comodule or coring comodule")->required();
    pres->add_option("-n", n, "truncation degree")->required();
    pres->add_option("--format", format_name, "text or json")->check(CLI::IsMember({"text", "json"}));
    pres->add_flag("--no-validate", no_validate, "skip load-time validation");

    auto* search = app.add_subcommand("search", "seeded search for a structure that truncation breaks");
    search->add_option("--mode", mode, "comonoid, comodule or coring-comodule")
        ->check(CLI::IsMember({"comonoid", "comodule", "coring-comodule"}));
    search->add_option("-n", n, "truncation degree")->required();
    search->add_option("--window", window, "degree window a..b");
    search->add_option("--max-dim", max_dim, "maximum dimension per degree")->check(CLI::Range(0, 6));
    search->add_option("--trials", trials, "number of candidates")->check(CLI::PositiveNumber);
    search->add_option("--seed", seed, "random seed (COALG_SEED overrides)");
    search->add_option("--policy", policy_name, "degree hypotheses: any, respect or violate")
        ->check(CLI::IsMember({"any", "respect", "violate"}));
    search->add_option("--field", field_name, "Q or a prime p");
    search->add_option("--format", format_name, "text or json")->check(CLI::IsMember({"text", "json"}));
    search->add_option("--out", out_path, "file for the counterexample workspace");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "coalg: " << e.what() << "\n";
        return exit_usage;
    }

    const auto format = format_name == "json" ? ReportFormat::json : ReportFormat::text;
    try {
        if (app.got_subcommand(search)) {
            SearchConfig cfg;
            cfg.mode = *parse_kind(mode);
            cfg.n = n;
            std::tie(cfg.window_lo, cfg.window_hi) = cli::parse_range(window);
            cfg.max_dim = max_dim;
            cfg.trials = trials;
            cfg.seed = seed;
            if (const char* env = std::getenv("COALG_SEED")) {
                try {
                    cfg.seed = std::stoull(env);
                } catch (const std::logic_error&) {
                    throw cli::UsageError("COALG_SEED must be a non-negative integer");
                }
            }
            cfg.policy = policy_name == "respect"   ? HypothesisPolicy::respect
                         : policy_name == "violate" ? HypothesisPolicy::violate
                                                    : HypothesisPolicy::any;
            if (field_name == "Q") return cli::search_command(Rationals{}, cfg, format, out_path, out);
            std::uint32_t p = 0;
            try {
                p = static_cast<std::uint32_t>(std::stoul(field_name));
            } catch (const std::logic_error&) {
                throw cli::UsageError("--field must be Q or a prime");
            }
            if (!PrimeField::is_prime(p)) throw cli::UsageError("--field must be Q or a prime");
            return cli::search_command(PrimeField(p), cfg, format, out_path, out);
        }

        auto ws = cli::load(file, !no_validate);
        return std::visit(
            [&](const auto& w) -> int {
                if (app.got_subcommand(verify)) return cli::verify(w, name, out);
                if (app.got_subcommand(hom)) {
                    std::optional<std::pair<int, int>> r;
                    if (!range.empty()) r = cli::parse_range(range);
                    return cli::homology_command(w, name, r, out);
                }
                if (app.got_subcommand(trunc)) return cli::truncate_command(w, name, n, out_path, out);
                auto report = cli::report_for(w, name, n);
                out << emit_report(report, format);
                return report.green() ? exit_ok : exit_red;
            },
            ws);
    } catch (const cli::UsageError& e) {
        err << "coalg: " << e.what() << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        err << "coalg: " << e.what() << "\n";
        return exit_invalid;
    } catch (const SchemaError& e) {
        err << "coalg: " << e.what() << "\n";
        return exit_invalid;
    } catch (const ValidationError& e) {
        err << "coalg: " << e.what() << "\n";
        return exit_invalid;
    } catch (const BaseStructureInvalid& e) {
        err << "coalg: " << e.what() << "\n";
        return exit_invalid;
    } catch (const Error& e) {
        err << "coalg: " << e.what() << "\n";
        return exit_invalid;
    }
}

}  // namespace coalg
