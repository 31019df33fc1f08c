// Acceptance gate: runs the validation engine's twelve checks against the
// reference setup and prints one PASS/FAIL line per criterion.
//
//   acceptance [--check N] [--profile full|quick] [--seed S] [--workers W]
//
// Exit status is 0 only if every requested check passes.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "irsnoma/model.hpp"
#include "irsnoma/validation.hpp"

int main(int argc, char** argv) {
    using namespace irsnoma;
    validation::ValidationOptions opts;  // full profile, reference seed
    std::vector<int> ids;

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const auto next = [&]() -> const char* {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "missing value after %s\n", arg.c_str());
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--check") {
            ids.push_back(std::atoi(next()));
        } else if (arg == "--profile") {
            const std::string v = next();
            if (v == "full") {
                opts.profile = validation::Profile::Full;
            } else if (v == "quick") {
                opts.profile = validation::Profile::Quick;
            } else {
                std::fprintf(stderr, "unknown profile '%s'\n", v.c_str());
                return 2;
            }
        } else if (arg == "--seed") {
            opts.seed = std::strtoull(next(), nullptr, 10);
        } else if (arg == "--workers") {
            opts.workers = static_cast<unsigned>(std::strtoul(next(), nullptr, 10));
        } else {
            std::fprintf(stderr, "unknown argument '%s'\n", arg.c_str());
            return 2;
        }
    }
    if (ids.empty())
        for (int id = 1; id <= 12; ++id) ids.push_back(id);

    const SystemParams base;  // reference setup
    bool all_pass = true;
    for (int id : ids) {
        const auto c = validation::run_validation_check(id, base, opts);
        all_pass = all_pass && c.pass;
        std::printf("ACCEPTANCE %02d %s %s: %s\n", c.id, c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.detail.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
