#include "config.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace opdeloc::cli {

namespace {

const char* const kFigureModels = "full; ws(k=1,p=0.1); ws(k=1,p=0.9); ws(k=2,p=0.1); ws(k=2,p=0.9)";

// Line of `key` inside `[section]`, for error messages.
int locate(const std::filesystem::path& path, const std::string& section, const std::string& key) {
    std::ifstream in(path);
    std::string line, current;
    for (int n = 1; std::getline(in, line); ++n) {
        const auto s = boost::trim_copy(line);
        if (s.empty() || s[0] == ';' || s[0] == '#') continue;
        if (s.front() == '[' && s.back() == ']') {
            current = boost::trim_copy(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (current == section && eq != std::string::npos && boost::trim_copy(s.substr(0, eq)) == key) return n;
    }
    return 0;
}

}  // namespace

Config::Config() {
    values_["general"] = {{"seed", "20240611"}, {"realizations", "200"}, {"threads", "0"}, {"out", "out"}};
    values_["ck-curves"] = {{"L", "12"},
                            {"models", kFigureModels},
                            {"sizes", "1, half"},
                            {"t_max", "10"},
                            {"dt", "0.05"},
                            {"krylov_dim", "0"}};
    values_["ratio-scaling"] = {{"L", "8, 10, 12, 14, 16"},
                                {"models", kFigureModels},
                                {"t_lo", "0.5"},
                                {"t_hi", "2.0"},
                                {"dt", "0.05"}};
    values_["battery"] = {{"L", "4, 6, 8, 10, 12"},
                          {"models", "full; ws(k=1,p=0.1); ws(k=1,p=0.9)"},
                          {"axes", "x, z"},
                          {"t_max", "12"},
                          {"dt", "0.05"},
                          {"path", "determinant"},
                          {"perturbative", "true"}};
    values_["validate"] = {{"star_L", "4, 8, 12"}, {"star_realizations", "2000"}, {"oracle_L", "4, 6, 8"},
                           {"bridge_realizations", "400"}, {"qmc_points", "200000"}};
}

Config Config::load(const std::filesystem::path& path) {
    Config cfg;
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path.string(), tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(e.filename() + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw ConfigError(path.string() + ":" + std::to_string(locate(path, "", section)) + ": key '" + section +
                              "' must belong to a section");
        }
        const auto known = cfg.values_.find(section);
        if (known == cfg.values_.end())
            throw ConfigError(path.string() + ": unknown section [" + section + "]");
        for (const auto& [key, value] : body) {
            if (!known->second.count(key))
                throw ConfigError(path.string() + ":" + std::to_string(locate(path, section, key)) +
                                  ": unknown key '" + key + "' in section [" + section + "]");
            known->second[key] = value.data();
        }
    }
    cfg.origin_ = path.string();
    return cfg;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    values_.at(section).at(key) = value;
}

std::string Config::text(const std::string& section, const std::string& key) const {
    return values_.at(section).at(key);
}

int Config::integer(const std::string& section, const std::string& key) const {
    try {
        return boost::lexical_cast<int>(boost::trim_copy(text(section, key)));
    } catch (const boost::bad_lexical_cast&) {
        throw ConfigError(origin_ + ": [" + section + "] " + key + " must be an integer");
    }
}

double Config::real(const std::string& section, const std::string& key) const {
    try {
        return boost::lexical_cast<double>(boost::trim_copy(text(section, key)));
    } catch (const boost::bad_lexical_cast&) {
        throw ConfigError(origin_ + ": [" + section + "] " + key + " must be a number");
    }
}

bool Config::flag(const std::string& section, const std::string& key) const {
    const auto v = boost::to_lower_copy(boost::trim_copy(text(section, key)));
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(origin_ + ": [" + section + "] " + key + " must be true or false");
}

std::vector<std::string> Config::words(const std::string& section, const std::string& key) const {
    std::vector<std::string> parts;
    const auto raw = text(section, key);
    boost::split(parts, raw, boost::is_any_of(","));
    std::vector<std::string> out;
    for (auto& p : parts) {
        boost::trim(p);
        if (!p.empty()) out.push_back(p);
    }
    return out;
}

std::vector<int> Config::integers(const std::string& section, const std::string& key) const {
    std::vector<int> out;
    for (const auto& w : words(section, key)) {
        try {
            out.push_back(boost::lexical_cast<int>(w));
        } catch (const boost::bad_lexical_cast&) {
            throw ConfigError(origin_ + ": [" + section + "] " + key + ": '" + w + "' is not an integer");
        }
    }
    return out;
}

std::vector<GraphFamily> Config::models(const std::string& section, const std::string& key) const {
    std::vector<std::string> parts;
    const auto raw = text(section, key);
    boost::split(parts, raw, boost::is_any_of(";"));
    std::vector<GraphFamily> out;
    for (auto& p : parts) {
        boost::trim(p);
        if (p.empty()) continue;
        try {
            out.push_back(parse_model(p));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(origin_ + ": [" + section + "] " + key + ": " + e.what());
        }
    }
    return out;
}

Metadata Config::metadata(const std::string& section) const {
    Metadata m;
    for (const auto& s : {std::string("general"), section})
        for (const auto& [k, v] : values_.at(s)) {
            // runtime knobs that cannot change the numbers
            if (s == "general" && (k == "threads" || k == "out")) continue;
            m.emplace_back(s + "." + k, v);
        }
    return m;
}

GraphFamily parse_model(const std::string& label) {
    GraphFamily f;
    if (label == "full" || label == "complete") return f;
    if (label == "star") {
        f.kind = GraphFamily::Kind::star;
        return f;
    }
    if (label == "ring") {
        f.kind = GraphFamily::Kind::ring;
        return f;
    }
    static const std::regex ws(R"(ws\(\s*k\s*=\s*(\d+)\s*,\s*p\s*=\s*([0-9.eE+-]+)\s*\))");
    std::smatch m;
    if (!std::regex_match(label, m, ws)) throw std::invalid_argument("unknown model '" + label + "'");
    f.kind = GraphFamily::Kind::watts_strogatz;
    f.ws.half_degree = std::stoi(m[1]);
    f.ws.rewire_prob = std::stod(m[2]);
    return f;
}

}  // namespace opdeloc::cli
