#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsnoma/mcsim.hpp"
#include "irsnoma/model.hpp"

namespace irsnoma::cli {

// Parse failure with position diagnostics; what() renders
// "<source>:<line>: [<section>] <key>: <message>".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string source, std::size_t line, std::string section, std::string key,
                std::string message);

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }
    const std::string& section() const { return section_; }
    const std::string& key() const { return key_; }

private:
    std::string source_;
    std::size_t line_;
    std::string section_;
    std::string key_;
};

enum class SweepScheme { Noma, Oma, Fdr };

struct MetricSet {
    bool op = false;
    bool er = false;
    bool asymptote = false;
    bool floor = false;
    bool ceiling = false;

    bool any() const { return op || er || asymptote || floor || ceiling; }
};

struct SweepSpec {
    Direction direction = Direction::Downlink;
    std::vector<SweepScheme> schemes;  // canonical order NOMA, OMA, FDR
    SnrAxis snr_grid;
    MetricSet metrics;
    std::optional<mcsim::McConfig> mc;  // required when FDR is requested
    mcsim::FdrParams fdr;
    std::string output_base = "sweep";  // writes <base>.csv and <base>.json
    std::size_t quad_order = 100;

    // Cross-field rules: nonempty schemes and metrics, valid grid, FDR => mc.
    void validate() const;
};

struct AppConfig {
    SystemParams params;
    SweepSpec sweep;
};

// Sections: [params], [sweep], [mc], [fdr]. '#' or ';' start comments.
// Setting only one of alpha_near/alpha_far completes the other to sum 1.
AppConfig parse_config_text(const std::string& text, const std::string& source_name);
AppConfig parse_config_file(const std::string& path);

const char* to_string(SweepScheme s);
const char* to_string(Direction d);

}  // namespace irsnoma::cli
