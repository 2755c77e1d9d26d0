#include <catch_amalgamated.hpp>

#include <cctopos/workspace.hh>

#include <cstdio>
#include <sys/wait.h>

using namespace cctopos;

namespace {

struct Run {
    std::string out;
    int status = -1;
};

Run run(const std::string & args)
{
    std::string command = std::string(CCTOPOS_CLI) + " " + args + " 2>/dev/null";
    Run result;
    FILE * pipe = popen(command.c_str(), "r");
    REQUIRE(pipe);
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0)
        result.out.append(buffer, n);
    int raw = pclose(pipe);
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return result;
}

std::string corpus(const std::string & name)
{
    return std::string("-f ") + CCTOPOS_CORPUS + "/" + name;
}

} // namespace

TEST_CASE("classify the walking arrow")
{
    auto r = run(corpus("arrow.topos") + " classify A");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    auto & v = j.at("values");
    CHECK(v.at("ax2") == true);
    CHECK(v.at("ax_minus2") == true);
    CHECK(v.at("ax_inf") == false);
    CHECK(v.at("string_length") == "5");
    for (auto key : {"ax2", "ax_minus2", "ax_inf", "connected", "witnesses"})
        CHECK(v.contains(key));
    for (auto key : {"command", "input_digest", "version", "checks", "values"})
        CHECK(j.contains(key));
    CHECK(j.at("exit_code") == 0);
}

TEST_CASE("props on F2 include the fixed-point check")
{
    auto r = run(corpus("monoids.topos") + " props F2");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    bool found = false;
    for (auto & check : j.at("checks")) {
        CHECK(check.at("status") == "pass");
        found = found || check.at("name") == "pi0 = global sections on battery";
    }
    CHECK(found);
}

TEST_CASE("exit codes")
{
    CHECK(run(corpus("arrow.topos") + " pi0 Nope").status == 3);
    CHECK(run(corpus("arrow.topos") + " frobnicate").status == 3);
    CHECK(run(corpus("shapes.topos") + " props Discrete2").status == 2);
    CHECK(run(corpus("spaces.topos") + " space Indiscrete").status == 2);
    CHECK(run(corpus("spaces.topos") + " space Sierpinski").status == 0);
    CHECK(run("-f /nonexistent/file.topos classify A").status == 3);
    CHECK(run(corpus("arrow.topos") + " --budget 10 battery A").status == 2);
}

TEST_CASE("text format distinguishes refusals from failures")
{
    auto r = run(corpus("shapes.topos") + " props Discrete2 --format text");
    CHECK(r.out.find("REFUSED") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("exit codes depend only on the report")
{
    Report report;
    CHECK(report.exit_code() == 0);
    report.checks.refuse("x", "no container");
    CHECK(report.exit_code() == 2);
    report.checks.add("y", false, "witness");
    CHECK(report.exit_code() == 1);
    report.input_error = true;
    CHECK(report.exit_code() == 3);
}

TEST_CASE("output is deterministic")
{
    for (auto args : {"arrow.topos classify A", "arrow.topos battery A", "monoids.topos props F2", "shapes.topos gamma Chain2 x y z",
             "families.topos fam Split PointCone"}) {
        std::string line(args);
        auto split = line.find(' ');
        auto full = corpus(line.substr(0, split)) + line.substr(split);
        auto first = run(full), second = run(full);
        INFO(line);
        CHECK(first.out == second.out);
        CHECK(first.status == second.status);
        CHECK(run(full + " --seed 7").out == first.out);
    }
}
