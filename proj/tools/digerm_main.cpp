// digerm: branching/merging spaces and homology of directed cell complexes.
//
// Inputs are JSON files carrying a top-level "format" key ("precubical" or
// "globular"), or builtin generators addressed as builtin:globe:N,
// builtin:cube:N, builtin:<name> for the example catalog.

#include <CLI11.hpp>

#include "digerm/fuzz.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace digerm;

struct Input {
    std::optional<PrecubicalSet> precubical;
    std::optional<GlobularComplex> globular;

    GlobularComplex realized() const
    {
        if (globular)
            return *globular;
        return realize(*precubical);
    }
};

Input load_input(const std::string& spec)
{
    Input in;
    if (spec.rfind("builtin:", 0) == 0) {
        std::string rest = spec.substr(8);
        if (rest.rfind("globe:", 0) == 0) {
            in.globular = globe(std::stoi(rest.substr(6)));
            return in;
        }
        if (rest.rfind("cube:", 0) == 0) {
            in.precubical = gen_cube(std::stoi(rest.substr(5)));
            return in;
        }
        in.precubical = gen_example(rest);
        return in;
    }
    std::ifstream f(spec);
    if (!f)
        throw InputError("cannot read input file '" + spec + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const std::exception& e) {
        throw InputError("input '" + spec + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("format") || !j.at("format").is_string())
        throw InputError("input '" + spec + "' needs a top-level \"format\" key");
    const std::string format = j.at("format").get<std::string>();
    if (format == "precubical")
        in.precubical = parse_precubical(j);
    else if (format == "globular")
        in.globular = parse_globular(j);
    else
        throw InputError("unknown format '" + format + "' (expected precubical|globular)");
    return in;
}

std::vector<SubdivisionOp> load_ops(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw InputError("cannot read op-sequence file '" + path + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const std::exception& e) {
        throw InputError("op sequence '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_ops(j);
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw InputError("cannot write '" + path + "'");
    f << text;
}

std::string homology_table(const std::map<int, HomologyGroup>& h, const std::string& name,
                           const std::string& symbol)
{
    std::ostringstream out;
    out << name << " homology\n";
    for (const auto& [deg, grp] : h)
        out << "  H_" << deg << symbol << " = " << grp.str() << "\n";
    return out.str();
}

int threads_from_env()
{
    const char* env = std::getenv("DIGERM_THREADS");
    if (!env)
        return 1;
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"branching and merging homology of directed cell complexes"};
    app.require_subcommand(1);

    std::string input_spec, ops_path, dot_path, state_id;
    bool only_branching = false, only_merging = false, as_json = false;
    std::uint64_t seed = 0;
    int count = 100;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", input_spec, "input file or builtin:<name>")->required();
    };

    CLI::App* cmd_validate = app.add_subcommand("validate", "check structural invariants");
    add_input(cmd_validate);
    cmd_validate->add_flag("--json", as_json, "machine-readable report");

    CLI::App* cmd_realize =
        app.add_subcommand("realize", "turn a precubical set into a globular complex");
    add_input(cmd_realize);

    CLI::App* cmd_homology =
        app.add_subcommand("homology", "branching and merging homology tables");
    add_input(cmd_homology);
    cmd_homology->add_flag("--branching", only_branching, "branching side only");
    cmd_homology->add_flag("--merging", only_merging, "merging side only");
    cmd_homology->add_flag("--json", as_json, "JSON output");

    CLI::App* cmd_subdivide =
        app.add_subcommand("subdivide", "apply an op sequence and print the result");
    add_input(cmd_subdivide);
    cmd_subdivide->add_option("--ops", ops_path, "op-sequence JSON file")->required();

    CLI::App* cmd_check = app.add_subcommand(
        "check-invariance", "compare homology before/after an op sequence");
    add_input(cmd_check);
    cmd_check->add_option("--ops", ops_path, "op-sequence JSON file")->required();
    cmd_check->add_flag("--json", as_json, "JSON report");

    CLI::App* cmd_oracle = app.add_subcommand(
        "oracle", "compare the germ-side and flow-side boundary matrices");
    add_input(cmd_oracle);
    cmd_oracle->add_flag("--json", as_json, "JSON report");

    CLI::App* cmd_dot =
        app.add_subcommand("export-dot", "DOT rendering of branching 1-skeletons");
    add_input(cmd_dot);
    cmd_dot->add_option("--state", state_id, "restrict to one state");
    cmd_dot->add_flag("--merging", only_merging, "merging side instead");
    cmd_dot->add_option("--dot", dot_path, "output path (default stdout)");
    cmd_dot->add_flag("--json", as_json, "dump the cell complexes as JSON instead of DOT");

    CLI::App* cmd_fuzz = app.add_subcommand(
        "fuzz", "randomized invariance and oracle battery (deterministic per seed; "
                "DIGERM_THREADS caps parallelism)");
    cmd_fuzz->add_option("--seed", seed, "base seed")->required();
    cmd_fuzz->add_option("--count", count, "number of instances")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_validate->parsed()) {
            Input in = load_input(input_spec);
            ValidationReport rep =
                in.precubical ? validate(*in.precubical) : validate_complex(*in.globular);
            if (as_json)
                std::cout << rep.to_json().dump(2) << "\n";
            else
                std::cout << rep.str();
            return rep.ok() ? 0 : 1;
        }
        if (cmd_realize->parsed()) {
            Input in = load_input(input_spec);
            if (!in.precubical)
                throw InputError("realize expects a precubical input");
            std::cout << emit_json(realize(*in.precubical)).dump(2) << "\n";
            return 0;
        }
        if (cmd_homology->parsed()) {
            Input in = load_input(input_spec);
            GlobularComplex x = in.realized();
            const bool both = only_branching == only_merging;
            json out;
            std::string text;
            if (both || only_branching) {
                auto h = branching_homology(x);
                out["branching"] = homology_to_json(h);
                text += homology_table(h, "branching", "^-");
            }
            if (both || only_merging) {
                auto h = merging_homology(x);
                out["merging"] = homology_to_json(h);
                text += homology_table(h, "merging", "^+");
            }
            std::cout << (as_json ? out.dump(2) + "\n" : text);
            return 0;
        }
        if (cmd_subdivide->parsed()) {
            Input in = load_input(input_spec);
            SubdivisionPipeline pipe = in.precubical
                                           ? SubdivisionPipeline::from(*in.precubical)
                                           : SubdivisionPipeline::from(*in.globular);
            auto ops = load_ops(ops_path);
            for (std::size_t i = 0; i < ops.size(); ++i) {
                try {
                    pipe.apply(ops[i]);
                } catch (const InputError& e) {
                    throw InputError("op " + std::to_string(i + 1) + " [" +
                                     ops[i].describe() + "]: " + e.what());
                }
            }
            if (pipe.precubical)
                std::cout << emit_json(*pipe.precubical).dump(2) << "\n";
            else
                std::cout << emit_json(*pipe.globular).dump(2) << "\n";
            return 0;
        }
        if (cmd_check->parsed()) {
            Input in = load_input(input_spec);
            auto ops = load_ops(ops_path);
            InvarianceReport rep = in.precubical ? check_invariance(*in.precubical, ops)
                                                 : check_invariance(*in.globular, ops);
            if (as_json)
                std::cout << rep.to_json().dump(2) << "\n";
            else
                std::cout << rep.str();
            return rep.pass ? 0 : 1;
        }
        if (cmd_oracle->parsed()) {
            Input in = load_input(input_spec);
            OracleReport rep = oracle_check(in.realized());
            if (as_json) {
                std::cout << rep.to_json().dump(2) << "\n";
            } else if (rep.pass) {
                std::cout << "PASS (" << rep.states_checked << " states)\n";
            } else {
                std::cout << "FAIL (" << rep.mismatches.size() << " mismatches)\n";
                for (const auto& m : rep.mismatches)
                    std::cout << "  state " << m.state << " degree " << m.degree << " entry ("
                              << m.row << "," << m.col << "): germ " << m.lhs << " vs flow "
                              << m.rhs << "\n";
            }
            return rep.pass ? 0 : 1;
        }
        if (cmd_dot->parsed()) {
            Input in = load_input(input_spec);
            GlobularComplex x = in.realized();
            if (only_merging)
                x = op(x);
            const char* side = only_merging ? "merging" : "branching";
            std::string out;
            if (as_json) {
                json j = json::object();
                if (!state_id.empty()) {
                    j[state_id] = dump_json(branching_space(x, state_id));
                } else {
                    for (const auto& [alpha, cw] : branching_spaces(x))
                        j[alpha] = dump_json(cw);
                }
                out = j.dump(2) + "\n";
            } else if (!state_id.empty()) {
                out = to_dot(branching_space(x, state_id),
                             std::string(side) + "." + state_id);
            } else {
                for (const auto& [alpha, cw] : branching_spaces(x))
                    out += to_dot(cw, std::string(side) + "." + alpha);
            }
            write_text(dot_path, out);
            return 0;
        }
        if (cmd_fuzz->parsed()) {
            FuzzOptions opt;
            opt.seed = seed;
            opt.count = count;
            opt.threads = threads_from_env();
            FuzzSummary sum = run_fuzz(opt);
            std::cout << "fuzz: seed=" << seed << " instances=" << sum.instances
                      << " failures=" << sum.failures << "\n";
            for (const auto& log : sum.failure_logs)
                std::cout << log;
            return sum.failures == 0 ? 0 : 1;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
