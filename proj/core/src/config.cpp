#include "irsnoma/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace irsnoma::cli {

namespace {

std::string format_error(const std::string& source, std::size_t line, const std::string& section,
                         const std::string& key, const std::string& message) {
    std::ostringstream os;
    os << source << ":" << line << ": ";
    if (!section.empty()) os << "[" << section << "] ";
    if (!key.empty()) os << key << ": ";
    os << message;
    return os.str();
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Parse position carried through the key handlers so every failure points at
// the offending line and field.
struct Cursor {
    const std::string* source;
    std::size_t line;
    const std::string* section;
    const std::string* key;

    [[noreturn]] void fail(const std::string& message) const {
        throw ConfigError(*source, line, *section, *key, message);
    }
};

double parse_double(const Cursor& c, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
        c.fail("expected a finite number, got '" + v + "'");
    return x;
}

std::uint64_t parse_uint(const Cursor& c, const std::string& v) {
    char* end = nullptr;
    if (!v.empty() && v[0] == '-') c.fail("expected a nonnegative integer, got '" + v + "'");
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        c.fail("expected a nonnegative integer, got '" + v + "'");
    return static_cast<std::uint64_t>(x);
}

bool parse_bool(const Cursor& c, const std::string& v) {
    const std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    c.fail("expected a boolean (true/false), got '" + v + "'");
}

std::vector<double> parse_snr_grid(const Cursor& c, const std::string& v) {
    std::vector<double> pts;
    if (v.find(':') != std::string::npos) {
        // start:step:stop, inclusive
        std::vector<std::string> parts;
        std::string item;
        std::istringstream is(v);
        while (std::getline(is, item, ':')) parts.push_back(trim(item));
        if (parts.size() != 3) c.fail("range must be start:step:stop, got '" + v + "'");
        const double start = parse_double(c, parts[0]);
        const double step = parse_double(c, parts[1]);
        const double stop = parse_double(c, parts[2]);
        if (!(step > 0)) c.fail("range step must be positive");
        if (stop < start) c.fail("range stop must be >= start");
        for (double x = start; x <= stop + 1e-9 * std::max(1.0, std::fabs(stop)); x += step)
            pts.push_back(x);
    } else {
        for (const std::string& item : split_list(v)) pts.push_back(parse_double(c, item));
    }
    if (pts.empty()) c.fail("SNR grid must not be empty");
    return pts;
}

}  // namespace

ConfigError::ConfigError(std::string source, std::size_t line, std::string section,
                         std::string key, std::string message)
    : std::runtime_error(format_error(source, line, section, key, message)),
      source_(std::move(source)),
      line_(line),
      section_(std::move(section)),
      key_(std::move(key)) {}

const char* to_string(SweepScheme s) {
    switch (s) {
        case SweepScheme::Noma: return "NOMA";
        case SweepScheme::Oma: return "OMA";
        case SweepScheme::Fdr: return "FDR";
    }
    return "?";
}

const char* to_string(Direction d) {
    return d == Direction::Downlink ? "downlink" : "uplink";
}

void SweepSpec::validate() const {
    if (schemes.empty())
        throw std::invalid_argument("sweep: schemes must not be empty");
    if (!metrics.any())
        throw std::invalid_argument("sweep: metrics must not be empty");
    snr_grid.validate();
    if (quad_order < 1)
        throw std::invalid_argument("sweep: quad_order must be >= 1");
    const bool has_fdr =
        std::find(schemes.begin(), schemes.end(), SweepScheme::Fdr) != schemes.end();
    if (has_fdr && !mc.has_value())
        throw std::invalid_argument(
            "sweep: the FDR baseline has no closed form and requires an [mc] section");
}

AppConfig parse_config_text(const std::string& text, const std::string& source_name) {
    AppConfig cfg;
    bool saw_alpha_near = false;
    bool saw_alpha_far = false;

    std::string section;
    std::string key;
    Cursor cur{&source_name, 0, &section, &key};

    std::istringstream is(text);
    std::string raw;
    while (std::getline(is, raw)) {
        ++cur.line;
        key.clear();
        std::string line = raw;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') cur.fail("unterminated section header '" + line + "'");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section != "params" && section != "sweep" && section != "mc" &&
                section != "fdr")
                cur.fail("unknown section '" + section + "' (expected params, sweep, mc, fdr)");
            if (section == "mc" && !cfg.sweep.mc) cfg.sweep.mc.emplace();
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) cur.fail("expected 'key = value', got '" + line + "'");
        key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) cur.fail("empty key");
        if (value.empty()) cur.fail("empty value");
        if (section.empty()) cur.fail("key outside any section");

        if (section == "params") {
            SystemParams& p = cfg.params;
            if (key == "dist_near") p.dist_near = parse_double(cur, value);
            else if (key == "dist_bs_irs") p.dist_bs_irs = parse_double(cur, value);
            else if (key == "dist_irs_far") p.dist_irs_far = parse_double(cur, value);
            else if (key == "pl_exp_near") p.pl_exp_near = parse_double(cur, value);
            else if (key == "pl_exp_bs_irs") p.pl_exp_bs_irs = parse_double(cur, value);
            else if (key == "pl_exp_irs_far") p.pl_exp_irs_far = parse_double(cur, value);
            else if (key == "m_bs_irs") p.m_bs_irs = parse_double(cur, value);
            else if (key == "m_irs_far") p.m_irs_far = parse_double(cur, value);
            else if (key == "n_elements") p.n_elements = static_cast<std::size_t>(parse_uint(cur, value));
            else if (key == "amp_reflect") p.amp_reflect = parse_double(cur, value);
            else if (key == "alpha_near") { p.alpha_near = parse_double(cur, value); saw_alpha_near = true; }
            else if (key == "alpha_far") { p.alpha_far = parse_double(cur, value); saw_alpha_far = true; }
            else if (key == "rate_near_bps") p.rate_near_bps = parse_double(cur, value);
            else if (key == "rate_far_bps") p.rate_far_bps = parse_double(cur, value);
            else if (key == "bandwidth_hz") p.bandwidth_hz = parse_double(cur, value);
            else cur.fail("unknown key in [params]");
        } else if (section == "sweep") {
            SweepSpec& s = cfg.sweep;
            if (key == "direction") {
                const std::string v = lower(value);
                if (v == "downlink") s.direction = Direction::Downlink;
                else if (v == "uplink") s.direction = Direction::Uplink;
                else cur.fail("direction must be downlink or uplink, got '" + value + "'");
            } else if (key == "schemes") {
                bool noma = false, oma = false, fdr = false;
                for (const std::string& item : split_list(value)) {
                    const std::string v = lower(item);
                    if (v == "noma") noma = true;
                    else if (v == "oma") oma = true;
                    else if (v == "fdr") fdr = true;
                    else cur.fail("unknown scheme '" + item + "' (expected NOMA, OMA, FDR)");
                }
                s.schemes.clear();
                if (noma) s.schemes.push_back(SweepScheme::Noma);
                if (oma) s.schemes.push_back(SweepScheme::Oma);
                if (fdr) s.schemes.push_back(SweepScheme::Fdr);
                if (s.schemes.empty()) cur.fail("schemes list must not be empty");
            } else if (key == "snr_db") {
                s.snr_grid.points_db = parse_snr_grid(cur, value);
            } else if (key == "metrics") {
                s.metrics = MetricSet{};
                for (const std::string& item : split_list(value)) {
                    const std::string v = lower(item);
                    if (v == "op") s.metrics.op = true;
                    else if (v == "er") s.metrics.er = true;
                    else if (v == "asymptote") s.metrics.asymptote = true;
                    else if (v == "floor") s.metrics.floor = true;
                    else if (v == "ceiling") s.metrics.ceiling = true;
                    else cur.fail("unknown metric '" + item +
                                  "' (expected OP, ER, asymptote, floor, ceiling)");
                }
                if (!s.metrics.any()) cur.fail("metrics list must not be empty");
            } else if (key == "output") {
                std::string base = value;
                for (const char* ext : {".csv", ".json"}) {
                    const std::size_t n = std::string(ext).size();
                    if (base.size() > n && base.compare(base.size() - n, n, ext) == 0)
                        base.erase(base.size() - n);
                }
                s.output_base = base;
            } else if (key == "quad_order") {
                s.quad_order = static_cast<std::size_t>(parse_uint(cur, value));
            } else {
                cur.fail("unknown key in [sweep]");
            }
        } else if (section == "mc") {
            if (!cfg.sweep.mc) cfg.sweep.mc.emplace();
            mcsim::McConfig& m = *cfg.sweep.mc;
            if (key == "trials") m.trials = parse_uint(cur, value);
            else if (key == "seed") m.seed = parse_uint(cur, value);
            else if (key == "workers") m.workers = static_cast<unsigned>(parse_uint(cur, value));
            else if (key == "antithetic") m.antithetic = parse_bool(cur, value);
            else cur.fail("unknown key in [mc]");
        } else {  // fdr
            mcsim::FdrParams& f = cfg.sweep.fdr;
            if (key == "power_split") f.power_split = parse_double(cur, value);
            else if (key == "si_m") f.si_m = parse_double(cur, value);
            else if (key == "si_residual_gain") f.si_residual_gain = parse_double(cur, value);
            else cur.fail("unknown key in [fdr]");
        }
    }

    if (saw_alpha_near && !saw_alpha_far) cfg.params.alpha_far = 1.0 - cfg.params.alpha_near;
    if (saw_alpha_far && !saw_alpha_near) cfg.params.alpha_near = 1.0 - cfg.params.alpha_far;
    return cfg;
}

AppConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, 0, "", "", "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace irsnoma::cli
