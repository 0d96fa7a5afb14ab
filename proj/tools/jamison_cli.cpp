// Command-line front end: one subcommand per task, each taking a problem
// spec file and writing canonical reports.
//
// Exit codes: 0 success, 2 parse/validation, 3 budget exceeded, 4 internal.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "jamison/pipeline.hpp"

namespace {

struct CommonOptions {
    std::string spec_path;
    std::string out_dir = "out";
    std::string format = "all";
    long long seed = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--spec", opt.spec_path, "problem spec file")->required();
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--format", opt.format, "json|csv|text|all")
        ->check(CLI::IsMember({"json", "csv", "text", "all"}));
    cmd->add_option("--seed", opt.seed, "override the spec seed");
}

int run(const CommonOptions& opt, jamison::Task task) {
    using namespace jamison;
    try {
        ProblemSpec spec = parse_spec(opt.spec_path);
        spec.task = task;
        if (opt.seed >= 0) spec.seed = static_cast<std::uint64_t>(opt.seed);
        Report report = run_pipeline(spec);
        auto written = emit_report(report, opt.out_dir, opt.format);
        for (const auto& w : written) std::cout << "wrote " << w << "\n";
        if (report.cache_hit) std::cout << "cache hit (" << report.hash << ")\n";
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error (line " << e.line << "): " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error [" << e.field << "]: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "jamison: decide and certify the Jamison property of sequences in countably "
        "infinite discrete abelian groups"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        jamison::Task task;
    };
    const Sub subs[] = {
        {"verdict", "run the full decision pipeline", jamison::Task::Verdict},
        {"epsilon", "explore separation scales: witness schedule plus grid bound", jamison::Task::Epsilon},
        {"weight", "build the weight table and check its operator bounds", jamison::Task::Weight},
        {"repnorm", "renorming and translation norm checks", jamison::Task::Repnorm},
        {"tree", "gap chain and character tree construction", jamison::Task::Tree},
        {"oracle", "residue orbit of the sequence modulo q", jamison::Task::Oracle},
    };
    CommonOptions opts[6];
    int rc[6] = {-1, -1, -1, -1, -1, -1};
    for (int i = 0; i < 6; ++i) {
        auto* cmd = app.add_subcommand(subs[i].name, subs[i].help);
        add_common(cmd, opts[i]);
        cmd->callback([&, i]() { rc[i] = run(opts[i], subs[i].task); });
    }
    CLI11_PARSE(app, argc, argv);
    for (int i = 0; i < 6; ++i)
        if (rc[i] >= 0) return rc[i];
    return 4;
}
