// qident: run identity checks and emit JSON/CSV reports.
//
//   qident list
//   qident run --config cfg.json [--parallelism N] [--out report.json] [--csv report.csv]
//   qident run --case ID [--seed S] [--samples K] [--tol T] [--param name=value]...
//
// Exit status: 0 all pass, 1 any fail or error, 2 bad configuration.

#include "qident/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace qident;
using nlohmann::json;

namespace {

const char* kind_name(ParamKind k)
{
    switch (k) {
    case ParamKind::Complex: return "complex";
    case ParamKind::Integer: return "integer";
    case ParamKind::PartitionKind: return "partition";
    case ParamKind::ComplexVector: return "complex[]";
    }
    return "?";
}

void list_cases()
{
    for (const CaseInfo& c : registry()) {
        std::cout << c.id << "  (tol " << c.default_tol << ")  " << c.description << "\n   ";
        for (const ParamSpec& p : c.schema) std::cout << ' ' << p.name << ':' << kind_name(p.kind);
        std::cout << '\n';
    }
}

// name=value; value is JSON ([0.3,0.1], 3, {"qpow":-2}, [2,1]) or a bare
// partition/number string.
std::pair<std::string, json> split_param(const std::string& s)
{
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects name=value, got '" + s + "'");
    const std::string name = s.substr(0, eq), text = s.substr(eq + 1);
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded()) v = text;
    return {name, v};
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"q-series and W-function identity checker"};
    app.require_subcommand(1);

    app.add_subcommand("list", "list identity cases and their parameters");

    auto* run = app.add_subcommand("run", "run identity checks");
    std::string config_path, out_path, csv_path, case_id;
    unsigned parallelism = 1;
    std::uint64_t seed = 0;
    long samples = 1;
    double tol = 0;
    std::vector<std::string> params;
    run->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    run->add_option("--parallelism", parallelism, "worker threads")->check(CLI::Range(1u, 1024u));
    run->add_option("--out", out_path, "write the JSON report here (default: stdout)");
    run->add_option("--csv", csv_path, "also write a CSV summary");
    auto* case_opt = run->add_option("--case", case_id, "single case id");
    run->add_option("--seed", seed, "base seed");
    run->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
    run->add_option("--tol", tol, "tolerance (default: per case)");
    run->add_option("--param", params, "fixed parameter name=value (repeatable)");
    case_opt->excludes(run->get_option("--config"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (app.got_subcommand("list")) {
        list_cases();
        return 0;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            json j = json::parse(f, nullptr, false);
            if (j.is_discarded()) throw ConfigError("config is not valid JSON");
            cfg = parse_config(j);
        } else if (!case_id.empty()) {
            json c{{"case", case_id}, {"seed", seed}, {"samples", samples}};
            if (tol > 0) c["tol"] = tol;
            json p = json::object();
            for (const std::string& s : params) {
                auto [name, value] = split_param(s);
                p[name] = value;
            }
            c["params"] = p;
            cfg = parse_config(json{{"seed", seed}, {"cases", json::array({c})}});
        } else {
            throw ConfigError("run needs --config or --case");
        }

        const auto runs = run_all(cfg, parallelism);
        const std::string doc = report_document(runs, cfg).dump(2) + "\n";
        if (out_path.empty())
            std::cout << doc;
        else
            write_file(out_path, doc);
        if (!csv_path.empty()) write_file(csv_path, to_csv(runs));
        long bad = 0;
        for (const auto& r : runs)
            if (r.status != Status::Pass) {
                ++bad;
                std::cerr << r.case_id << " sample " << r.sample << ": " << to_string(r.status)
                          << (r.message.empty() ? "" : " (" + r.message + ")") << '\n';
            }
        std::cerr << runs.size() - bad << "/" << runs.size() << " passed\n";
        return bad == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
