#pragma once

#include <cctopos/check.hh>
#include <cctopos/dsl.hh>
#include <cctopos/family.hh>
#include <cctopos/sitespace.hh>

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cctopos {

inline constexpr std::string_view tool_version = "0.1.0";

/// Resolved declarations. Names share one namespace; everything has been
/// validated by its owning module.
struct Workspace {
    dsl::Document document;
    /// Declaration kind by name, e.g. "category", "presheaf".
    std::map<std::string, std::string> kinds;
    /// Categories, including those from monoids, posets, free categories,
    /// cones and opposites.
    std::map<std::string, CategoryPtr> categories;
    std::map<std::string, FinMonoid> monoids;
    /// Categories declared with `cone`.
    std::map<std::string, InitialExtension> extensions;
    std::map<std::string, Presheaf> presheaves;
    /// Base category name of each presheaf.
    std::map<std::string, std::string> presheaf_base;
    std::map<std::string, FiniteSite> sites;
    std::map<std::string, FinSpace> spaces;
    std::map<std::string, FamilyObject> families;
    std::map<std::string, std::string> family_base;
};

/// Throws DuplicateName, UnresolvedReference or ValidationError as LocatedError.
[[nodiscard]] Workspace resolve(dsl::Document document, const SearchBudget & budget = {});

struct SourceFile {
    std::string path;
    std::string text;
};

/// Parses and resolves the files as one document, in order.
[[nodiscard]] Workspace load_workspace(const std::vector<SourceFile> & files, const SearchBudget & budget = {});

[[nodiscard]] std::string input_digest(const std::vector<SourceFile> & files);

struct Report {
    std::string command;
    std::vector<std::string> arguments;
    std::string input_digest;
    std::string version{tool_version};
    CheckList checks;
    nlohmann::json values = nlohmann::json::object();
    /// Set when the command could not run; error_kind is the ErrorKind name.
    std::optional<std::string> error;
    std::optional<std::string> error_kind;
    bool input_error = false;

    /// 3 for input errors, 1 if any check failed, 2 if any was refused, else 0.
    [[nodiscard]] int exit_code() const;
};

struct CommandOptions {
    SearchBudget budget;
    std::vector<std::string> battery;
    std::uint64_t seed = 0;
};

inline const std::vector<std::string> & command_names()
{
    static const std::vector<std::string> names{
        "validate", "classify", "container", "omega", "pi0", "sections", "gamma", "reflect", "fam", "site", "space", "props", "battery"};
    return names;
}

/// Runs one command. Errors are captured in the report, never thrown.
[[nodiscard]] Report run_command(const Workspace & workspace, const std::string & command, const std::vector<std::string> & arguments,
    const CommandOptions & options = {});

/// A report for input that failed to load.
[[nodiscard]] Report input_error_report(const std::string & command, const std::vector<std::string> & arguments, const std::string & digest,
    const Error & error);

enum class Format { json, text };

[[nodiscard]] std::string emit_report(const Report & report, Format format);

} // namespace cctopos
