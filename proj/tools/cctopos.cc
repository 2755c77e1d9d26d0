#include <cctopos/workspace.hh>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {
    std::string read_file(const std::string & path)
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw cctopos::Error(cctopos::ErrorKind::UnknownName, "cannot read '" + path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return text.str();
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"Adjoint-string calculator for finite presheaf topoi"};
    std::vector<std::string> files;
    std::string format = "json";
    std::string command;
    std::vector<std::string> arguments;
    std::vector<std::string> battery;
    cctopos::CommandOptions options;

    app.add_option("-f,--file", files, "DSL source file (repeatable)")->required()->allow_extra_args(false);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--budget", options.budget.max_nodes, "Search node budget");
    app.add_option("--battery", battery, "Extra battery presheaves")->delimiter(',')->allow_extra_args(false);
    app.add_option("--seed", options.seed, "Reserved; output does not depend on it");
    app.add_option("command", command, "Command")->required();
    app.add_option("arguments", arguments, "Command arguments");
    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        // Usage errors are input errors; --help exits 0.
        return app.exit(e) == 0 ? 0 : 3;
    }
    options.battery = battery;

    auto fmt = format == "text" ? cctopos::Format::text : cctopos::Format::json;
    std::vector<cctopos::SourceFile> sources;
    cctopos::Report report;
    try {
        for (auto & path : files)
            sources.push_back({path, read_file(path)});
        auto digest = cctopos::input_digest(sources);
        try {
            auto workspace = cctopos::load_workspace(sources, options.budget);
            report = cctopos::run_command(workspace, command, arguments, options);
            report.input_digest = digest;
        }
        catch (const cctopos::Error & e) {
            report = cctopos::input_error_report(command, arguments, digest, e);
        }
    }
    catch (const cctopos::Error & e) {
        report = cctopos::input_error_report(command, arguments, "", e);
    }
    std::cout << cctopos::emit_report(report, fmt);
    return report.exit_code();
}
