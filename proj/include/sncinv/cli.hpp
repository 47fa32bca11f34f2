#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sncinv/catalog.hpp"
#include "sncinv/json_io.hpp"
#include "sncinv/verify.hpp"
#include "sncinv/verify_io.hpp"

namespace sncinv::cli {

// Exit codes: 0 success, 1 domain error (invalid model, inadmissible
// center, failed verification), 2 parse error (files or command line).
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitParse = 2;

namespace clidetail {

inline std::vector<std::uint64_t> read_seed_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw ParseError(filename + ": cannot open seed file");
    std::vector<std::uint64_t> seeds;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        try {
            std::size_t pos = 0;
            const std::uint64_t seed = std::stoull(line, &pos);
            if (pos != line.size()) throw std::invalid_argument(line);
            seeds.push_back(seed);
        } catch (const std::exception&) {
            throw ParseError(filename + ":" + std::to_string(lineno) + ": bad seed '" + line + "'");
        }
    }
    return seeds;
}

inline SncModel load_model(const std::string& filename) {
    return model_from_json(load_json_file(filename), filename);
}

} // namespace clidetail

struct Options {
    bool json = false;
    int mod_power = 2;
};

inline int cmd_validate(const std::string& model_file, const Options& opt, std::ostream& out) {
    const SncModel model = clidetail::load_model(model_file);
    const std::vector<std::string> violations = validate(model);
    if (opt.json) {
        out << Json{{"valid", violations.empty()}, {"violations", violations}}.dump(2) << "\n";
    } else if (violations.empty()) {
        out << "valid: " << model.components.size() << " components, " << model.strata.size()
            << " strata\n";
    } else {
        for (const auto& v : violations) out << "violation: " << v << "\n";
    }
    return violations.empty() ? kExitOk : kExitDomain;
}

inline int cmd_invariant(const std::string& model_file, const std::optional<std::string>& datum_file,
                         const std::optional<std::string>& assign_file, std::optional<long long> q,
                         const Options& opt, std::ostream& out) {
    const SncModel model = clidetail::load_model(model_file);
    {
        const auto violations = validate(model);
        if (!violations.empty()) throw DomainError(model_file + ": invalid model: " + violations.front());
    }
    ConstructibleDatum datum = datum_file
                                   ? datum_from_json(load_json_file(*datum_file), *datum_file)
                                   : full_fiber_datum(model);

    const TruncatedFormalClass s1 = serre(model, datum);
    const TruncatedFormalClass st = serre_tilde(model, datum, opt.mod_power);

    Json j;
    j["serre"] = truncated_formal_to_json(s1);
    j["serre_tilde"] = truncated_formal_to_json(st);
    if (!opt.json) {
        out << "serre (mod (L-1)): " << s1.str() << "\n";
        out << "serre~ (mod (L-1)^" << opt.mod_power << "): " << st.str() << "\n";
    }

    if (assign_file) {
        const SymbolAssignment assign = assignment_from_json(load_json_file(*assign_file), *assign_file);
        const TruncatedClass value = substitute(st, assign);
        if (!opt.json) out << "substituted: " << value.str() << "\n";
        Json coeffs = Json::array();
        for (const auto& c : value.coeffs()) coeffs.push_back(format_rational(c));
        j["substituted"] = std::move(coeffs);
        if (q) {
            const ResidueReport report = specialize(st, assign, *q);
            Json specialization;
            specialization["q"] = report.q;
            specialization["exact_value"] = format_rational(report.exact_value);
            specialization["canonical"] = report.canonical;
            if (report.residue) {
                specialization["residue"] = format_rational(Rational(*report.residue));
                specialization["residue_mod"] = format_rational(Rational(BigInt(report.q - 1)));
            } else {
                specialization["residue_error"] = report.residue_error;
            }
            j["specialization"] = std::move(specialization);
            if (!opt.json) {
                out << "value at L=" << *q << ": " << format_rational(report.exact_value);
                if (!report.canonical) out << " (exact rational; no canonical residue at power >= 2)";
                out << "\n";
                if (report.residue)
                    out << "residue of mod-(L-1) part: " << *report.residue << " (mod " << (*q - 1)
                        << ")\n";
                else
                    out << "residue unavailable: " << report.residue_error << "\n";
            }
        }
    }
    if (opt.json) out << j.dump(2) << "\n";
    return kExitOk;
}

inline int cmd_blowup(const std::string& model_file, const std::string& center_file,
                      const std::optional<std::string>& datum_file, const std::string& out_prefix,
                      const Options& opt, std::ostream& out) {
    const SncModel model = clidetail::load_model(model_file);
    const Center center = center_from_json(load_json_file(center_file), center_file);
    std::optional<ConstructibleDatum> datum;
    if (datum_file) datum = datum_from_json(load_json_file(*datum_file), *datum_file);

    const BlowupResult res = blow_up(model, center, datum);

    const Json log = Json{{"contains", std::vector<ComponentId>(res.log.contains.begin(), res.log.contains.end())},
                          {"codim", res.log.codim},
                          {"a0", res.log.a0}};
    save_json_file(out_prefix + ".model.json", model_to_json(res.new_model));
    save_json_file(out_prefix + ".log.json", log);
    if (res.transported) save_json_file(out_prefix + ".datum.json", datum_to_json(*res.transported));

    if (opt.json) {
        Json j{{"a0", res.log.a0},
               {"model_file", out_prefix + ".model.json"},
               {"log_file", out_prefix + ".log.json"}};
        if (res.transported) j["datum_file"] = out_prefix + ".datum.json";
        out << j.dump(2) << "\n";
    } else {
        out << "blown up along " << key_str(res.log.contains) << ", codim " << res.log.codim
            << ", a0 = " << res.log.a0 << "\n";
        out << "wrote " << out_prefix << ".model.json";
        if (res.transported) out << ", " << out_prefix << ".datum.json";
        out << ", " << out_prefix << ".log.json\n";
    }
    return kExitOk;
}

inline int cmd_verify(const std::vector<std::uint64_t>& seeds, int chain_length, bool probe,
                      const GenParams& params, const std::optional<std::string>& report_file,
                      const Options& opt, std::ostream& out) {
    Json report = Json::array();
    int failures = 0;
    int trials = 0;

    if (probe) {
        const RefineFamily family{3, 3, 2, 4};
        const ProbeOutcome outcome = probe_family(family, opt.mod_power);
        if (opt.json) {
            out << Json{{"mod_power", outcome.modulus_power},
                        {"trials", outcome.trials},
                        {"failures", outcome.failures},
                        {"failed", outcome.failed_labels}}
                       .dump(2)
                << "\n";
        } else {
            out << "probe at power " << outcome.modulus_power << ": " << outcome.failures << " of "
                << outcome.trials << " moves break invariance\n";
            for (const auto& label : outcome.failed_labels) out << "  " << label << "\n";
        }
        return kExitOk;  // probe mode reports, never fails
    }

    if (chain_length > 0) {
        for (const std::uint64_t seed : seeds) {
            const Chain chain = random_chain(seed, chain_length, params);
            const auto reports = chain_blowups(chain.model, chain.datum, chain.moves, opt.mod_power);
            const auto reports_n1 = chain_blowups(chain.model, chain.datum, chain.moves, 1);
            for (std::size_t step = 0; step < reports.size(); ++step) {
                ++trials;
                const bool ok = reports[step].equal && reports_n1[step].equal;
                if (!ok) ++failures;
                report.push_back(Json{{"seed", seed},
                                      {"step", step},
                                      {"params", params_to_json(params)},
                                      {"equal_n1", reports_n1[step].equal},
                                      {"equal_n2", reports[step].equal},
                                      {"mod_power", opt.mod_power},
                                      {"a0", reports[step].move_log.a0},
                                      {"lhs", truncated_formal_to_json(reports[step].lhs)},
                                      {"rhs", truncated_formal_to_json(reports[step].rhs)}});
            }
        }
    } else {
        for (const std::uint64_t seed : seeds) {
            ++trials;
            const TrialResult trial = run_trial(seed, params, opt.mod_power);
            if (!(trial.equal_n1 && trial.equal_n)) ++failures;
            report.push_back(trial_to_json(trial));
        }
    }

    if (report_file) save_json_file(*report_file, report);
    if (opt.json) {
        out << Json{{"trials", trials}, {"failures", failures}}.dump(2) << "\n";
    } else {
        out << trials << " trials at power " << opt.mod_power << ", " << failures << " failures\n";
    }
    return failures == 0 ? kExitOk : kExitDomain;
}

inline int cmd_catalog(const std::string& type, std::optional<int> param,
                       const std::optional<std::string>& out_file, std::ostream& out) {
    const CatalogEntry entry = make_catalog_entry(type, param);
    const Json j = model_to_json(entry.model);
    if (out_file) save_json_file(*out_file, j);
    else out << j.dump(2) << "\n";
    return kExitOk;
}

inline int cmd_solve(std::optional<int> bound, bool refine, const Options& opt, std::ostream& out) {
    const CoefficientSystem sys =
        refine ? refine_search(opt.mod_power < 3 ? 3 : opt.mod_power, RefineFamily{})
               : solve_pair_coefficients(bound.value_or(5));

    const char* status = sys.status == SolveStatus::Unique          ? "unique"
                         : sys.status == SolveStatus::Underdetermined ? "underdetermined"
                                                                      : "inconsistent";
    if (opt.json) {
        Json determined = Json::object();
        for (const auto& [name, value] : sys.determined) determined[name] = format_rational(value);
        out << Json{{"unknowns", sys.unknowns.size()},
                    {"equations", sys.equations.size()},
                    {"status", status},
                    {"determined", determined},
                    {"free_count", sys.free_count},
                    {"certificate", sys.certificate}}
                   .dump(2)
            << "\n";
        return kExitOk;
    }
    out << sys.unknowns.size() << " unknowns, " << sys.equations.size() << " equations, status: "
        << status << "\n";
    for (const auto& [name, value] : sys.determined)
        out << "  " << name << " = " << format_rational(value) << "\n";
    if (sys.free_count > 0) out << "  (" << sys.free_count << " unknowns unconstrained)\n";
    if (!sys.certificate.empty()) {
        out << "minimal infeasible instance set:\n";
        for (const auto& label : sys.certificate) out << "  " << label << "\n";
    }
    return kExitOk;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact invariants of snc degeneration models"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.json, "machine-readable output");
    app.add_option("--mod-power", opt.mod_power, "truncation power n of (L-1)")->capture_default_str();

    auto* validate_cmd = app.add_subcommand("validate", "check a model file");
    std::string model_file;
    validate_cmd->add_option("model", model_file, "model JSON file")->required();

    auto* invariant_cmd = app.add_subcommand("invariant", "compute the invariants of a model");
    std::string inv_model;
    std::optional<std::string> inv_datum, inv_assign;
    std::optional<long long> inv_q;
    invariant_cmd->add_option("model", inv_model, "model JSON file")->required();
    invariant_cmd->add_option("--datum", inv_datum, "constructible datum file (default: full fiber)");
    auto* assign_opt = invariant_cmd->add_option("--assign", inv_assign, "symbol assignment file");
    invariant_cmd->add_option("--q", inv_q, "residue field size for specialization")->needs(assign_opt);

    auto* blowup_cmd = app.add_subcommand("blowup", "blow up a model along a center");
    std::string bl_model, bl_center, bl_out = "blowup_out";
    std::optional<std::string> bl_datum;
    blowup_cmd->add_option("model", bl_model, "model JSON file")->required();
    blowup_cmd->add_option("center", bl_center, "center JSON file")->required();
    blowup_cmd->add_option("--datum", bl_datum, "datum to transport (needs on_center)");
    blowup_cmd->add_option("--out", bl_out, "output file prefix")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "randomized invariance checks");
    std::optional<std::string> vf_seeds, vf_report;
    std::uint64_t vf_seed = 1;
    int vf_trials = 100, vf_chain = 0;
    bool vf_probe = false;
    GenParams vf_params;
    verify_cmd->add_option("--seeds", vf_seeds, "file with one seed per line");
    verify_cmd->add_option("--seed", vf_seed, "first seed")->capture_default_str();
    verify_cmd->add_option("--trials", vf_trials, "number of consecutive seeds")->capture_default_str();
    verify_cmd->add_option("--chain", vf_chain, "chain length (0 = single moves)")->capture_default_str();
    verify_cmd->add_flag("--probe", vf_probe, "run the deep-stratum family probe (reports, never fails)");
    verify_cmd->add_option("--report", vf_report, "write the JSON trial report here");
    verify_cmd->add_option("--max-components", vf_params.max_components)->capture_default_str();
    verify_cmd->add_option("--max-multiplicity", vf_params.max_multiplicity)->capture_default_str();
    verify_cmd->add_option("--max-codim", vf_params.max_codim)->capture_default_str();

    auto* catalog_cmd = app.add_subcommand("catalog", "emit a built-in degeneration model");
    std::string ct_type;
    std::optional<int> ct_param;
    std::optional<std::string> ct_out;
    catalog_cmd->add_option("--type", ct_type, "I_n, I0*, In*, II*, III*, IV*")->required();
    catalog_cmd->add_option("--param", ct_param, "parameter n where the type needs one");
    catalog_cmd->add_option("--out", ct_out, "output model file (default: stdout)");

    auto* solve_cmd = app.add_subcommand("solve", "exact coefficient systems");
    std::optional<int> sv_bound;
    bool sv_refine = false;
    solve_cmd->add_option("--bound", sv_bound, "multiplicity bound for the pair system");
    solve_cmd->add_flag("--refine", sv_refine, "search for a deeper refinement (power >= 3)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(model_file, opt, out);
        if (invariant_cmd->parsed())
            return cmd_invariant(inv_model, inv_datum, inv_assign, inv_q, opt, out);
        if (blowup_cmd->parsed()) return cmd_blowup(bl_model, bl_center, bl_datum, bl_out, opt, out);
        if (verify_cmd->parsed()) {
            std::vector<std::uint64_t> seeds;
            if (vf_seeds) seeds = clidetail::read_seed_file(*vf_seeds);
            else
                for (int i = 0; i < vf_trials; ++i) seeds.push_back(vf_seed + static_cast<std::uint64_t>(i));
            return cmd_verify(seeds, vf_chain, vf_probe, vf_params, vf_report, opt, out);
        }
        if (catalog_cmd->parsed()) return cmd_catalog(ct_type, ct_param, ct_out, out);
        if (solve_cmd->parsed()) return cmd_solve(sv_bound, sv_refine, opt, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    err << "error: no command\n";
    return kExitParse;
}

} // namespace sncinv::cli
