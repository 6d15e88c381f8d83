#include "psfig/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "psfig/curve.hpp"
#include "psfig/parser.hpp"
#include "psfig/resolver.hpp"
#include "psfig/svg.hpp"

namespace psfig {

namespace fs = std::filesystem;

namespace {

struct OutputFile {
    fs::path path;
    std::string content;
};

std::string where(SourcePos pos) { return std::to_string(pos.line) + ":" + std::to_string(pos.column); }

void dump_ast(const DocumentTree &doc, std::ostream &out) {
    out << "unit " << format_number(doc.unit.value) << unit_tag(doc.unit.unit) << "\n";
    for (std::size_t k = 0; k < doc.pictures.size(); ++k) {
        const Picture &pic = doc.pictures[k];
        out << "picture " << k + 1 << " (" << format_number(pic.bbox_lo.x) << "," << format_number(pic.bbox_lo.y)
            << ")(" << format_number(pic.bbox_hi.x) << "," << format_number(pic.bbox_hi.y) << ")\n";
        for (const auto &[command, pos] : pic.commands)
            out << "  " << where(pos) << "  " << to_source(command) << "\n";
    }
}

/// Writes every file to a temporary name first and renames only once all
/// writes succeeded. On failure nothing new is left behind.
bool commit(const std::vector<OutputFile> &files, std::ostream &err) {
    std::vector<fs::path> temps;
    auto cleanup = [&](const std::vector<fs::path> &paths) {
        std::error_code ec;
        for (const auto &p : paths)
            fs::remove(p, ec);
    };
    for (const auto &file : files) {
        fs::path temp = file.path.parent_path() / ("." + file.path.filename().string() + ".tmp");
        std::ofstream stream(temp, std::ios::binary | std::ios::trunc);
        if (stream)
            temps.push_back(temp);
        stream << file.content;
        stream.close();
        if (!stream) {
            err << "error: cannot write " << file.path.string() << "\n";
            cleanup(temps);
            return false;
        }
    }
    std::vector<fs::path> renamed;
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::error_code ec;
        fs::rename(temps[i], files[i].path, ec);
        if (ec) {
            err << "error: cannot write " << files[i].path.string() << ": " << ec.message() << "\n";
            cleanup(renamed);
            cleanup(temps);
            return false;
        }
        renamed.push_back(files[i].path);
    }
    return true;
}

std::string read_file(const fs::path &path, bool &ok) {
    std::ifstream in(path, std::ios::binary);
    ok = static_cast<bool>(in);
    if (!ok)
        return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    ok = !in.bad();
    return buf.str();
}

} // namespace

int run(const CliConfig &config, std::ostream &out, std::ostream &err) {
    if (!config.svg && !config.json) {
        err << "error: no output format selected\n";
        return kExitInput;
    }
    if (!(config.tension >= 0.0 && config.tension < 1.0)) {
        err << "error: tension must be in [0, 1)\n";
        return kExitInput;
    }
    if (config.precision < 1 || config.precision > 12) {
        err << "error: precision must be in [1, 12]\n";
        return kExitInput;
    }
    if (!(config.margin_units >= 0.0)) {
        err << "error: margin must be non-negative\n";
        return kExitInput;
    }

    bool ok = false;
    std::string text = fs::is_directory(config.input_path) ? std::string{} : read_file(config.input_path, ok);
    if (!ok) {
        err << "error: cannot read " << config.input_path.string() << "\n";
        return kExitInput;
    }

    DocumentTree doc;
    try {
        doc = parse_document(text, ParseOptions{config.strict});
    } catch (const ParseError &e) {
        err << "error: " << e.line() << ":" << e.column() << ": " << e.message() << "\n";
        err << "  " << e.snippet() << "\n";
        return kExitInput;
    }

    if (config.dump_ast)
        dump_ast(doc, out);

    std::vector<RenderedPicture> rendered;
    try {
        for (auto &picture : resolve_document(doc)) {
            RenderedPicture r{std::move(picture), {}};
            r.chains = expand_curves(r.picture, config.tension);
            rendered.push_back(std::move(r));
        }
    } catch (const ResolveError &e) {
        err << "error: " << where(e.pos()) << ": " << e.message() << "\n";
        return kExitResolve;
    } catch (const CurveError &e) {
        err << "error: picture " << rendered.size() + 1 << ": " << e.what() << "\n";
        return kExitResolve;
    }

    const std::string stem = config.input_path.stem().string();
    fs::path out_dir = config.out_dir.value_or(config.input_path.parent_path());
    if (out_dir.empty())
        out_dir = ".";

    std::vector<OutputFile> files;
    if (config.svg) {
        SvgConfig svg{config.precision, config.margin_units};
        for (std::size_t k = 0; k < rendered.size(); ++k) {
            files.push_back({out_dir / (stem + "-" + std::to_string(k + 1) + ".svg"),
                             emit_svg(rendered[k].picture, rendered[k].chains, svg)});
        }
    }
    if (config.json)
        files.push_back({out_dir / (stem + ".resolved.json"), emit_resolved_json(convert_dimension(doc.unit), rendered)});

    if (!files.empty()) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec || !fs::is_directory(out_dir)) {
            err << "error: cannot create output directory " << out_dir.string() << "\n";
            return kExitOutput;
        }
        if (!commit(files, err))
            return kExitOutput;
    }

    out << config.input_path.filename().string() << ": " << rendered.size() << " pictures, unit "
        << format_number(doc.unit.value) << unit_tag(doc.unit.unit) << "\n";
    for (const auto &w : doc.warnings)
        out << "warning: " << where(w.pos) << ": " << w.message << "\n";
    for (std::size_t k = 0; k < rendered.size(); ++k) {
        const ResolvedPicture &pic = rendered[k].picture;
        std::size_t curves = rendered[k].chains.size();
        out << "picture " << k + 1 << ": " << pic.elements.size() << " elements (" << pic.elements.size() - curves
            << " polylines, " << curves << " closed curves), " << pic.nodes.size() << " nodes, "
            << pic.nodes.warnings().size() << " warnings\n";
        for (const auto &w : pic.nodes.warnings())
            out << "  warning: " << where(w.pos) << ": " << w.message << "\n";
    }
    for (const auto &file : files)
        out << "wrote " << file.path.string() << "\n";
    return kExitOk;
}

} // namespace psfig
