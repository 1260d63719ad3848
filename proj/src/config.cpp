#include "tagrec/config.hpp"

#include <fstream>
#include <stdexcept>

#include "tagrec/io.hpp"

namespace tagrec {

std::map<std::string, std::string> load_key_value_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());

    std::map<std::string, std::string> config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t");
        line = line.substr(first, last - first + 1);

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(path, line_no, "expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(path, line_no, "empty key");
        if (!config.emplace(key, value).second)
            throw ParseError(path, line_no, "duplicate key '" + key + "'");
    }
    return config;
}

namespace {

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        int parsed = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer for " + key + ": '" + value + "'");
    }
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + value + "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config: bad boolean for " + key + ": '" + value + "'");
}

}  // namespace

void apply_config(const std::map<std::string, std::string>& config, TrainConfig& train,
                  OptConfig& opt) {
    for (const auto& [key, value] : config) {
        if (key == "dim")
            train.dim = to_int(key, value);
        else if (key == "window")
            train.window = to_int(key, value);
        else if (key == "min_count")
            train.min_count = to_int(key, value);
        else if (key == "iterations")
            train.iterations = to_int(key, value);
        else if (key == "negative_samples")
            train.negative_samples = to_int(key, value);
        else if (key == "learning_rate_start")
            train.learning_rate_start = to_double(key, value);
        else if (key == "seed") {
            train.seed = static_cast<std::uint64_t>(to_int(key, value));
            opt.seed = train.seed;
        } else if (key == "objective")
            opt.objective = metric_from_string(value);
        else if (key == "strategy")
            opt.strategy = strategy_from_string(value);
        else if (key == "range_lo")
            opt.range_lo = to_double(key, value);
        else if (key == "range_hi")
            opt.range_hi = to_double(key, value);
        else if (key == "grid_step")
            opt.grid_step = to_double(key, value);
        else if (key == "ga_population")
            opt.ga_population = to_int(key, value);
        else if (key == "ga_generations")
            opt.ga_generations = to_int(key, value);
        else if (key == "ga_range")
            opt.ga_range = to_bool(key, value);
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

}  // namespace tagrec
