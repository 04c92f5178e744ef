#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "ficogarch/cogarch.hpp"
#include "ficogarch/errors.hpp"
#include "ficogarch/kernels.hpp"
#include "ficogarch/levy.hpp"

namespace ficli {

/// Flat key-value configuration with [section] headers and '#' comments.
class Config {
public:
    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ficogarch::spec_error("config: cannot open " + path);
        Config cfg;
        std::string line, section;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
            };
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ficogarch::spec_error("config: expected key = value, got '" + line + "'");
            cfg.values_[section + "." + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_str(const std::string& key, const std::string& fallback = "") const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_num(const std::string& key, std::optional<double> fallback = {}) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            if (fallback) return *fallback;
            throw ficogarch::spec_error("config: missing key " + key);
        }
        try {
            return std::stod(it->second);
        } catch (...) {
            throw ficogarch::spec_error("config: bad numeric value for " + key);
        }
    }

    const std::map<std::string, std::string>& items() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

inline ficogarch::LevySpec levy_spec_from(const Config& cfg, const std::string& section) {
    ficogarch::LevySpec spec;
    spec.drift = cfg.get_num(section + ".drift", 0.0);
    spec.gaussian_var = cfg.get_num(section + ".gaussian_var", 0.0);
    const std::string jump = cfg.get_str(section + ".jump", "none");
    if (jump == "compound_poisson") {
        ficogarch::CompoundPoisson cp;
        cp.rate = cfg.get_num(section + ".rate");
        const std::string dist = cfg.get_str(section + ".jump_dist", "normal");
        if (dist == "normal")
            cp.size = ficogarch::NormalJumps{cfg.get_num(section + ".jump_mean", 0.0),
                                             cfg.get_num(section + ".jump_var", 1.0)};
        else if (dist == "exponential")
            cp.size = ficogarch::ExponentialJumps{cfg.get_num(section + ".jump_rate")};
        else if (dist == "constant")
            cp.size = ficogarch::ConstantJumps{cfg.get_num(section + ".jump_value")};
        else
            throw ficogarch::spec_error("config: unknown jump_dist " + dist);
        spec.jumps = cp;
    } else if (jump != "none") {
        throw ficogarch::spec_error("config: unknown jump law " + jump);
    }
    return spec;
}

inline ficogarch::KernelSpec kernel_spec_from(const Config& cfg, const std::string& section) {
    ficogarch::KernelSpec k;
    const std::string family = cfg.get_str(section + ".family", "modified_mvn");
    if (family == "modified_mvn")
        k.family = ficogarch::KernelFamily::ModifiedMvN;
    else if (family == "mvn")
        k.family = ficogarch::KernelFamily::MvN;
    else if (family == "mg")
        k.family = ficogarch::KernelFamily::MG;
    else
        throw ficogarch::spec_error("config: unknown kernel family " + family);
    k.d = cfg.get_num(section + ".d");
    k.a = cfg.get_num(section + ".a", 1.0);
    return k;
}

inline ficogarch::FicogarchParams ficogarch_params_from(const Config& cfg) {
    ficogarch::FicogarchParams p;
    p.alpha0 = cfg.get_num("model.alpha0");
    p.alpha1 = cfg.get_num("model.alpha1");
    p.beta1 = cfg.get_num("model.beta1");
    p.kernel = kernel_spec_from(cfg, "kernel");
    p.driver = levy_spec_from(cfg, "driver");
    const std::string s0 = cfg.get_str("model.sigma0_sq", "stationary");
    if (s0 != "stationary") p.sigma0_sq = std::stod(s0);
    p.g0 = cfg.get_num("model.g0", 0.0);
    return p;
}

}  // namespace ficli
