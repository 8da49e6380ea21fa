// cubapprox: classify, construct, estimate and verify approximation
// constants of rational points on cubic hypersurfaces.

#include "cubapprox/error.hpp"
#include "cubapprox/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace cubapprox;

struct Invocation {
    std::string problem_file;
    std::string out_dir;
    std::map<std::string, std::string> overrides;  // file key -> value
};

void add_common(CLI::App* sub, Invocation& inv) {
    sub->add_option("problem", inv.problem_file, "problem file with key=value lines")->check(CLI::ExistingFile);
    sub->add_option("-o,--out", inv.out_dir, "directory for report.json, points.csv, envelope.tsv");
    for (const char* key : {"form", "point", "place", "height_bound", "seed", "attempts", "search_bound", "epsilons", "window",
                            "filter", "gamma", "liouville_bounds", "threads"}) {
        std::string flag = "--" + std::string(key);
        for (auto& ch : flag)
            if (ch == '_') ch = '-';
        sub->add_option_function<std::string>(
            flag, [&inv, k = std::string(key)](const std::string& v) { inv.overrides[k] = v; },
            "overrides the '" + std::string(key) + "' key");
    }
}

ProblemSpec load(const Invocation& inv) {
    ProblemSpec spec;
    if (!inv.problem_file.empty()) {
        std::ifstream in(inv.problem_file);
        std::stringstream text;
        text << in.rdbuf();
        try {
            spec = parse_problem(text.str());
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, inv.problem_file + ": " + std::string(e.what()).substr(12));
        }
    }
    for (auto& [k, v] : inv.overrides) {
        try {
            set_option(spec, k, v);
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, "--" + k + ": " + std::string(e.what()).substr(12));
        }
    }
    return spec;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximation constants of rational points on cubic hypersurfaces"};
    app.require_subcommand(1);
    Invocation inv;
    std::map<std::string, RunReport (*)(const ProblemSpec&)> runners{
        {"classify", run_classify}, {"construct", run_construct}, {"estimate", run_estimate},
        {"liouville", run_liouville}, {"report", run_report},
    };
    std::map<std::string, std::string> help{
        {"classify", "predicted alpha with certificates"},
        {"construct", "classification plus the curve of best approximation for the case"},
        {"estimate", "enumerate to height_bound and estimate alpha empirically"},
        {"liouville", "minimum of H * dist^gamma off the tangent section"},
        {"report", "all stages and the verdict"},
    };
    for (auto& [name, run] : runners) add_common(app.add_subcommand(name, help[name]), inv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::string name = app.get_subcommands().front()->get_name();
    try {
        ProblemSpec spec = load(inv);
        RunReport rep = runners.at(name)(spec);
        std::string json = to_json(rep).dump(2) + "\n";
        std::cout << json;
        if (!inv.out_dir.empty()) {
            std::filesystem::path dir(inv.out_dir);
            std::filesystem::create_directories(dir);
            write_file(dir / "report.json", json);
            if (rep.estimate) {
                write_file(dir / "points.csv", points_csv(rep));
                write_file(dir / "envelope.tsv", envelope_tsv(rep));
            }
        }
        if (rep.verdict) std::cerr << name << ": verdict " << to_string(rep.verdict->kind) << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "cubapprox " << name << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::ParseError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "cubapprox " << name << ": " << e.what() << "\n";
        return 1;
    }
}
