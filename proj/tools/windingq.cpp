#include "windingq/errors.hpp"
#include "windingq/output.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitComputation = 3;

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw windingq::IoFailure("cannot open " + path);
    os << text;
    if (!os)
        throw windingq::IoFailure("cannot write " + path);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact special L-value ratios and congruence data for J0(N)"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "Analyse the cuspidal homology of X0(N)");
    long level = 0;
    std::string only_class, json_path, csv_path, cache_dir;
    long bound = 0;
    long max_prime = 97;
    bool assume_irreducible = false;
    analyze->add_option("N", level, "Level")->required();
    analyze->add_option("--class", only_class, "Report only this class label");
    analyze->add_option("--json", json_path, "Write the JSON report to this path");
    analyze->add_option("--csv", csv_path, "Write a CSV summary to this path");
    analyze->add_option("--cache", cache_dir, "Cache directory (default: $WINDINGQ_CACHE)");
    analyze->add_option("--bound", bound, "Hecke bound (default: Sturm bound)")->check(CLI::NonNegativeNumber);
    analyze->add_option("--max-prime", max_prime, "Largest prime used to separate classes")
        ->check(CLI::Range(2L, 100000L));
    analyze->add_flag("--assume-irreducible", assume_irreducible,
                      "Treat residual representations as irreducible when no criterion applies");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    if (level < 1) {
        std::cerr << "windingq: level must be a positive integer\n";
        return kExitInvalid;
    }

    windingq::AnalyzeOptions opts;
    opts.bound = bound;
    opts.max_prime = max_prime;
    opts.assume_irreducible = assume_irreducible;
    if (!only_class.empty())
        opts.only_class = only_class;
    if (!cache_dir.empty()) {
        opts.cache_dir = cache_dir;
    } else if (const char* env = std::getenv("WINDINGQ_CACHE"); env && *env) {
        opts.cache_dir = env;
    }

    try {
        const windingq::AnalysisReport rep = windingq::analyze(level, opts);
        if (!json_path.empty())
            write_file(json_path, windingq::to_json(rep).dump(2) + "\n");
        if (!csv_path.empty())
            write_file(csv_path, windingq::to_csv(rep));
        std::cout << windingq::to_table(rep);
    } catch (const windingq::Error& e) {
        std::cerr << "windingq: " << e.what() << '\n';
        return kExitComputation;
    } catch (const std::exception& e) {
        std::cerr << "windingq: internal: " << e.what() << '\n';
        return kExitComputation;
    }
    return 0;
}
