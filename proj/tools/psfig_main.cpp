#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psfig/cli.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Render PSTricks pictures to SVG"};
    app.option_defaults()->always_capture_default();

    psfig::CliConfig config;
    std::string out_dir;
    std::vector<std::string> formats{"svg"};
    bool lenient = false;

    app.add_option("input", config.input_path, "Input .tex file")->required();
    app.add_option("--out-dir", out_dir, "Output directory (default: the input's directory)");
    app.add_option("--formats", formats, "Comma separated subset of svg,json")
        ->delimiter(',')
        ->check(CLI::IsMember({"svg", "json"}));
    app.add_option("--tension", config.tension, "Closed curve tension in [0, 1)")->check(CLI::Range(0.0, 1.0));
    app.add_option("--precision", config.precision, "Decimal places in SVG output")->check(CLI::Range(1, 12));
    app.add_option("--margin", config.margin_units, "Extra viewport margin, in picture units")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--lenient", lenient, "Skip unknown commands with a warning");
    app.add_flag("--dump-ast", config.dump_ast, "Print the parsed commands");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return psfig::kExitInput;
    }

    if (!out_dir.empty())
        config.out_dir = out_dir;
    config.strict = !lenient;
    config.svg = config.json = false;
    for (const auto &f : formats) {
        if (f == "svg")
            config.svg = true;
        else
            config.json = true;
    }
    return psfig::run(config, std::cout, std::cerr);
}
