#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mixdae/error.hpp"
#include "mixdae/pipeline.hpp"

namespace {

using namespace mixdae;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) fail(ErrorKind::ParseError, "cannot write '" + path + "'");
    out << content;
}

int exit_code_for(const Error &e) {
    switch (e.kind) {
        case ErrorKind::ParseError:
            return 3;
        case ErrorKind::NoPerfectMatching:
        case ErrorKind::SingularMatrix:
        case ErrorKind::SingularTightMatrix:
        case ErrorKind::IterationOverrun:
            return 2;
        default:
            return 1;
    }
}

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
    if (const char *env = std::getenv("MIXDAE_SEED")) return std::strtoull(env, nullptr, 10);
    return fallback;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"index reduction for linear DAEs with mixed polynomial coefficient matrices"};
    app.require_subcommand(1);

    std::string input_path, output_path, trace_path, dc = "auto", format = "json";
    std::uint64_t seed = seed_from_env_or(mixdae::oracle::kDefaultSeed);
    bool with_index = false;
    int trials = 2;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("input", input_path, "problem file (JSON)")->required();
        cmd->add_option("--seed", seed, "seed for the randomized oracles");
        cmd->add_option("--dc", dc, "dimensional-consistency path: auto|on|off")
            ->check(CLI::IsMember({"auto", "on", "off"}));
        cmd->add_option("--trials", trials, "trials for the randomized deg-det oracle");
    };

    CLI::App *reduce = app.add_subcommand("reduce", "tighten and apply the dummy-derivative reduction");
    add_common(reduce);
    reduce->add_option("-o,--output", output_path, "result file (default stdout)");
    reduce->add_option("--trace", trace_path, "also write the per-iteration trace to this path");
    reduce->add_flag("--index", with_index, "report the differentiation index of the input (diagnostic)");
    reduce->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

    CLI::App *check = app.add_subcommand("check", "report delta-hat, tightness and the deg-det estimate");
    add_common(check);
    check->add_flag("--index", with_index, "also report the differentiation index (n <= 12)");

    CLI::App *trace = app.add_subcommand("trace", "run the tightness loop and dump the trace");
    add_common(trace);
    trace->add_option("-o,--output", output_path, "trace file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    pipeline::Options opts;
    opts.seed = seed;
    opts.with_index = with_index;
    opts.trials = trials;
    opts.dc = dc == "on" ? relax::DcMode::On : dc == "off" ? relax::DcMode::Off : relax::DcMode::Auto;

    try {
        DaeSystem input = io::parse_problem(read_file(input_path));
        if (reduce->parsed()) {
            auto outcome = pipeline::run_reduce(input, opts);
            write_output(output_path,
                         format == "text" ? pipeline::result_text(outcome) : pipeline::result_json(outcome));
            if (!trace_path.empty())
                write_output(trace_path, pipeline::trace_json(outcome.tight, outcome.tight.system));
        } else if (check->parsed()) {
            auto outcome = pipeline::run_check(input, opts);
            std::cout << pipeline::check_text(outcome);
        } else if (trace->parsed()) {
            DaeSystem lm = pipeline::to_lm(input);
            auto tight = relax::tighten(lm, opts.dc);
            write_output(output_path, pipeline::trace_json(tight, tight.system));
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
