#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char **argv)
{
    using namespace opencospan::cli;

    CLI::App app{"Compose, convert and simulate open systems built from cospans."};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(opencospan::model_format_version));

    std::vector<std::string> files;
    std::string output;
    std::string to;
    std::string config;
    std::vector<std::string> laws;
    std::string kind;

    auto *compose = app.add_subcommand("compose", "Compose open systems left to right (gluing by pushout).");
    compose->add_option("files", files, "Model files, composed in order")->required()->expected(2, -1);
    compose->add_option("-o,--out", output, "Output file (default stdout)");

    auto *tensor = app.add_subcommand("tensor", "Place open systems side by side (disjoint union).");
    tensor->add_option("files", files, "Model files")->required()->expected(2, -1);
    tensor->add_option("-o,--out", output, "Output file (default stdout)");

    auto *convert = app.add_subcommand("convert", "Translate between structured and decorated cospans.");
    convert->add_option("file", files, "Model file")->required()->expected(1);
    convert->add_option("--to", to, "Target representation")
        ->required()
        ->check(CLI::IsMember({"structured", "decorated"}));
    convert->add_option("-o,--out", output, "Output file (default stdout)");

    auto *gray = app.add_subcommand("graybox", "Mass-action dynamics of an open Petri net with rates.");
    gray->add_option("file", files, "Model file")->required()->expected(1);
    gray->add_option("-o,--out", output, "Output file (default stdout)");

    auto *sim = app.add_subcommand("simulate", "Integrate the open rate equation with RK4.");
    sim->add_option("file", files, "Model file (dynam or petri_rates)")->required()->expected(1);
    sim->add_option("--config", config, "Simulation config JSON")->required();
    sim->add_option("--out", output, "CSV output file (default stdout)");

    auto *check = app.add_subcommand("check", "Check laws on a model, a pair of models or a function.");
    check->add_option("files", files, "One or two model files, or one function file")->required()->expected(1, 2);
    check->add_option("--laws", laws, "validate,roundtrip,unitors,iso,companion,graybox")->delimiter(',');
    check->add_option("--kind", kind, "Restrict the companion law to one theory")
        ->check(CLI::IsMember({"graph", "lgraph", "petri", "petri_rates", "dynam"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return io_failure;
    }

    if (*compose) {
        return cmd_compose(files, output, std::cout, std::cerr);
    }
    if (*tensor) {
        return cmd_tensor(files, output, std::cout, std::cerr);
    }
    if (*convert) {
        return cmd_convert(files.front(), to, output, std::cout, std::cerr);
    }
    if (*gray) {
        return cmd_graybox(files.front(), output, std::cout, std::cerr);
    }
    if (*sim) {
        return cmd_simulate(files.front(), config, output, std::cout, std::cerr);
    }
    return cmd_check(files, laws, kind, std::cout, std::cerr);
}
