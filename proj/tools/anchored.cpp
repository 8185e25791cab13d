#include "anchored/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace anchored;
    CLI::App app{"anchored: Halpern, Nesterov and extra-anchored gradient schemes"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", scale = "small", suite = "all";
    std::optional<std::uint64_t> seed;
    std::optional<long> iters;

    auto* run = app.add_subcommand("run", "run one scheme on one instance and write trace.csv and report.txt");
    run->add_option("--config", config_path, "key/value config file")->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "instance seed");
    run->add_option("--iters", iters, "iteration count");
    run->add_option("--out", out_dir, "output directory");

    auto* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", suite, "lemmas|equivalence|bounds|all");
    verify->add_option("--scale", scale, "small|paper");
    verify->add_option("--seed", seed, "instance seed");
    verify->add_option("--config", config_path, "unused; accepted for uniformity");
    verify->add_option("--out", out_dir, "output directory");

    std::string which;
    auto* figure = app.add_subcommand("figure", "reproduce a numerical example");
    figure->add_option("which", which, "exam1|exam2")->required();
    figure->add_option("--scale", scale, "small|paper");
    figure->add_option("--seed", seed, "instance seed");
    figure->add_option("--iters", iters, "iteration count");
    figure->add_option("--out", out_dir, "output directory");

    auto* list = app.add_subcommand("list-schemes", "print compatible scheme/schedule pairs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            KeyValueConfig kv = config_path.empty() ? KeyValueConfig{} : KeyValueConfig::load(config_path);
            RunConfig cfg = run_config_from(kv);
            if (seed) cfg.seed = *seed;
            if (iters) cfg.iters = *iters;
            if (run->count("--out") || !kv.has("output.dir")) cfg.out_dir = out_dir;
            return cmd_run(cfg, std::cout);
        }
        if (verify->parsed())
            return cmd_verify(parse_suite(suite), parse_scale(scale), seed.value_or(7), out_dir, std::cout);
        if (figure->parsed())
            return cmd_figure(parse_figure(which), parse_scale(scale), seed.value_or(7), iters, out_dir,
                              std::cout);
        if (list->parsed()) {
            list_schemes(std::cout);
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
