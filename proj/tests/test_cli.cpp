// End-to-end checks of the command-line binary: each case drives the real
// executable through a shell, captures stdout and the exit status, and pins
// the JSON fields, formats, and error codes of the public interface.
//
// Usage: cli_tests <path-to-mahler-binary>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string g_binary;
int g_failures = 0;
int g_checks = 0;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    RunResult r;
    std::string cmd = g_binary + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        std::cerr << "popen failed for: " << cmd << "\n";
        std::exit(99);
    }
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void expect(bool ok, const std::string& label) {
    ++g_checks;
    if (ok) {
        std::cout << "ok - " << label << "\n";
    } else {
        ++g_failures;
        std::cout << "FAIL - " << label << "\n";
    }
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

json parse(const RunResult& r, const std::string& label) {
    try {
        return json::parse(r.out);
    } catch (const json::exception&) {
        expect(false, label + ": stdout is valid JSON");
        return json::object();
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <mahler-binary>\n";
        return 99;
    }
    g_binary = argv[1];

    {
        RunResult r = run("--version");
        expect(r.exit_code == 0, "--version exits 0");
        expect(r.out.find("0.1.0") != std::string::npos, "--version reports the version");
    }

    {
        RunResult r = run("radix 729");
        expect(r.exit_code == 0, "radix 729 exits 0");
        json j = parse(r, "radix 729");
        expect(j.value("command", "") == "radix", "radix report names its command");
        expect(j.value("d", 0) == 3, "radix 729 base is 3");
        expect(j.value("j", 0) == 6, "radix 729 exponent is 6");
    }

    {
        expect(run("radix 1").exit_code == 2, "radix 1 is invalid input (exit 2)");
        expect(run("radix -- -8").exit_code == 2, "negative radix argument is invalid (exit 2)");
    }

    {
        RunResult r = run("radix 1296 --format csv");
        expect(r.exit_code == 0, "csv format exits 0");
        expect(starts_with(r.out, "key,value"), "csv output starts with its header");
        expect(r.out.find("\nd,6\n") != std::string::npos, "csv carries the base row");
        expect(r.out.find("\nj,4\n") != std::string::npos, "csv carries the exponent row");
    }

    {
        RunResult r = run("radix 729 --format text");
        expect(r.exit_code == 0, "text format exits 0");
        expect(r.out.find("command: radix") != std::string::npos,
               "text output lists the command line");
        expect(r.out.find("d: 3") != std::string::npos, "text output lists the base");
    }

    {
        RunResult r = run("eval-number");
        expect(r.exit_code == 0, "eval-number with defaults exits 0");
        json j = parse(r, "eval-number");
        std::string re = j.contains("value") ? j["value"].value("re", "") : "";
        expect(starts_with(re, "2.381966011250105"),
               "default reciprocal-sum value matches the reference digits");
        expect(j.value("skipped_terms", -1) == 0, "no terms are skipped for the default family");
    }

    {
        RunResult r =
            run("eval --spec '{\"kind\":\"gamma\",\"r\":2,\"mu\":1,"
                "\"coeffs\":{\"geometric\":\"1\"}}' --z 1/2");
        expect(r.exit_code == 0, "eval of the geometric gamma series exits 0");
        json j = parse(r, "eval gamma");
        std::string re = j.contains("value") ? j["value"].value("re", "") : "";
        expect(starts_with(re, "0.8164215090218931"),
               "gamma series value at 1/2 matches the reference digits");
        expect(j.contains("value") && j["value"].value("im", "x") == "0",
               "gamma series value at a real point is real");
    }

    {
        RunResult r = run("classify --preset fibonacci-lucas");
        expect(r.exit_code == 0, "classify exits 0");
        json j = parse(r, "classify");
        expect(j.value("verdict", "") == "exceptional", "paired preset is exceptional");
        expect(j.contains("removals") && j["removals"].size() == 1 &&
                   j["removals"][0] == "F_(0,2)",
               "classify reports the removed subscript pair");
        expect(j.contains("cases") && j["cases"].size() == 1 && j["cases"][0].value("case", 0) == 1,
               "classify reports the firing case");
    }

    {
        RunResult r = run("relations --values '[\"1\",\"1/2\"]'");
        expect(r.exit_code == 0, "relations exits 0 on a detected relation");
        json j = parse(r, "relations");
        expect(j.value("found", false), "relation between 1 and 1/2 is found");
        expect(j.contains("coefficients") && j["coefficients"].size() == 2 &&
                   j["coefficients"][0] == "1" && j["coefficients"][1] == "-2",
               "relation coefficients are normalized to (1, -2)");
    }

    {
        RunResult r = run(
            "minpoly --value '{\"type\":\"quad\",\"a\":\"7/2\",\"b\":\"-1/2\",\"D\":5}'");
        expect(r.exit_code == 0, "minpoly exits 0");
        json j = parse(r, "minpoly");
        expect(j.value("found", false), "minimal polynomial is found");
        expect(j.contains("coefficients") && j["coefficients"].size() == 3 &&
                   j["coefficients"][0] == "11" && j["coefficients"][1] == "-7" &&
                   j["coefficients"][2] == "1",
               "minimal polynomial is x^2 - 7x + 11");
    }

    {
        RunResult a = run("verify --suite feq --seed 3");
        RunResult b = run("verify --suite feq --seed 3");
        expect(a.exit_code == 0, "verify feq exits 0");
        expect(!a.out.empty() && a.out == b.out, "verify output is byte-identical per seed");
        json j = parse(a, "verify feq");
        expect(j.value("passed", false), "verify feq passes");
        expect(j.value("suite", "") == "feq" && j.value("seed", -1) == 3,
               "verify report embeds suite and seed");

        RunResult c = run("verify --suite feq --seed 4");
        expect(c.exit_code == 0 && c.out != a.out, "changing the seed changes the report");
    }

    {
        expect(run("frobnicate").exit_code == 2, "unknown subcommand exits 2");
        expect(run("eval --spec '{\"kind\":'").exit_code == 2, "malformed JSON exits 2");
        expect(run("verify --suite nope").exit_code == 2, "unknown suite exits 2");
        expect(run("eval --spec '{\"kind\":\"gamma\",\"r\":2,\"mu\":1,"
                   "\"coeffs\":{\"geometric\":\"1\"}}' --z 2")
                       .exit_code == 2,
               "evaluation outside the unit disc is invalid input (exit 2)");
        expect(run("eval --spec '{\"kind\":\"phi\",\"r\":2,\"pole\":\"1/4\","
                   "\"coeffs\":{\"geometric\":\"1\"}}' --z 1/2")
                       .exit_code == 1,
               "a pole collision is a computational failure (exit 1)");
    }

    std::cout << "cli checks: " << g_checks << ", failures: " << g_failures << "\n";
    return g_failures == 0 ? 0 : 1;
}
