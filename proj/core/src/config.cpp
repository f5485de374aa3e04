#include "situp/error.hpp"
#include "situp/tracker.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace situp {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view key)
{
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidConfig, "bad number '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

int parse_int(std::string_view text, std::string_view key)
{
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidConfig, "bad integer '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

bool parse_bool(std::string_view text, std::string_view key)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw Error(ErrorCode::InvalidConfig, "bad boolean '" + std::string(text) + "' for " + std::string(key));
}

std::vector<std::string_view> split_commas(std::string_view text)
{
    std::vector<std::string_view> out;
    while (!text.empty()) {
        const auto pos = text.find(',');
        out.push_back(trim(text.substr(0, pos)));
        if (pos == std::string_view::npos) {
            break;
        }
        text.remove_prefix(pos + 1);
    }
    return out;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text)
{
    std::vector<double> out;
    for (auto item : split_commas(text)) {
        if (!item.empty()) {
            out.push_back(parse_double(item, "list"));
        }
    }
    return out;
}

TrackerConfig parse_config(std::string_view text)
{
    TrackerConfig cfg;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "lambda") {
            cfg.lambda = parse_double(value, key);
        } else if (key == "theta") {
            cfg.theta = parse_double(value, key);
        } else if (key == "padding") {
            cfg.padding = parse_double(value, key);
        } else if (key == "sigma_factor") {
            cfg.sigma_factor = parse_double(value, key);
        } else if (key == "cell") {
            cfg.features.cell = parse_int(value, key);
        } else if (key == "pool") {
            cfg.pool = ScalePool(parse_number_list(value));
        } else if (key == "features") {
            cfg.features.hog = cfg.features.color_names = cfg.features.gray = false;
            for (auto name : split_commas(value)) {
                if (name == "hog") {
                    cfg.features.hog = true;
                } else if (name == "cn") {
                    cfg.features.color_names = true;
                } else if (name == "gray") {
                    cfg.features.gray = true;
                } else {
                    throw Error(ErrorCode::InvalidConfig, "unknown feature '" + std::string(name) + "'");
                }
            }
        } else if (key == "template_cap") {
            cfg.template_cap = parse_int(value, key);
        } else if (key == "criterion") {
            cfg.criterion = parse_criterion(value);
        } else if (key == "two_pass") {
            cfg.two_pass = parse_bool(value, key);
        } else {
            throw Error(ErrorCode::InvalidConfig, "unknown config key '" + std::string(key) + "'");
        }
    }
    cfg.validate();
    return cfg;
}

TrackerConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const TrackerConfig& cfg)
{
    std::ostringstream out;
    out << std::setprecision(17);
    out << "lambda = " << cfg.lambda << '\n';
    out << "theta = " << cfg.theta << '\n';
    out << "padding = " << cfg.padding << '\n';
    out << "sigma_factor = " << cfg.sigma_factor << '\n';
    out << "cell = " << cfg.features.cell << '\n';
    out << "pool = ";
    for (std::size_t i = 0; i < cfg.pool.size(); ++i) {
        out << (i ? "," : "") << cfg.pool[i];
    }
    out << '\n';
    std::vector<std::string> feats;
    if (cfg.features.hog) {
        feats.emplace_back("hog");
    }
    if (cfg.features.color_names) {
        feats.emplace_back("cn");
    }
    if (cfg.features.gray) {
        feats.emplace_back("gray");
    }
    out << "features = ";
    for (std::size_t i = 0; i < feats.size(); ++i) {
        out << (i ? "," : "") << feats[i];
    }
    out << '\n';
    out << "template_cap = " << cfg.template_cap << '\n';
    out << "criterion = " << to_string(cfg.criterion) << '\n';
    out << "two_pass = " << (cfg.two_pass ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace situp
