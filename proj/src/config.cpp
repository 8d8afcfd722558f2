#include "levysup/config.hpp"
#include "levysup/errors.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace levysup {

namespace {

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

class KeyMap {
  public:
    explicit KeyMap(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key.empty() || val.empty())
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": empty key or value");
            if (!entries_.emplace(key, val).second)
                throw ConfigError("config: duplicate key '" + key + "'");
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string take_string(const std::string& key, const std::string& dflt) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return dflt;
        const std::string v = it->second;
        entries_.erase(it);
        return v;
    }

    double take_real(const std::string& key, double dflt) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return dflt;
        const std::string v = it->second;
        entries_.erase(it);
        std::size_t pos = 0;
        double x;
        try {
            x = std::stod(v, &pos);
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' is not a number");
        }
        if (pos != v.size() || !std::isfinite(x))
            throw ConfigError("config: key '" + key + "' must be a finite number");
        return x;
    }

    double require_real(const std::string& key) {
        if (!has(key)) throw ConfigError("config: missing key '" + key + "'");
        return take_real(key, 0.0);
    }

    long take_count(const std::string& key, long dflt) {
        const double x = take_real(key, static_cast<double>(dflt));
        const long n = static_cast<long>(x);
        if (static_cast<double>(n) != x || n < 0)
            throw ConfigError("config: key '" + key +
                              "' must be a nonnegative integer");
        return n;
    }

    void finish() const {
        if (!entries_.empty())
            throw ConfigError("config: unknown key '" + entries_.begin()->first +
                              "'");
    }

  private:
    std::map<std::string, std::string> entries_;
};

std::vector<long> parse_n_list(const std::string& text) {
    std::vector<long> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("config: empty entry in n_list");
        try {
            out.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw ConfigError("config: bad entry in n_list: '" + item + "'");
        }
    }
    return out;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    KeyMap keys(text);
    RunConfig cfg;

    cfg.model.gamma = keys.take_real("model.gamma", 0.0);
    cfg.model.sigma = keys.take_real("model.sigma", 0.0);
    const std::string jumps = keys.take_string("model.jumps", "none");
    if (jumps == "none") {
        cfg.model.jumps = NoJumps{};
    } else if (jumps == "cp_normal") {
        cfg.model.jumps = CompoundPoisson{
            keys.require_real("model.rate"),
            NormalJump{keys.take_real("model.jump_mu", 0.0),
                       keys.require_real("model.jump_sd")}};
    } else if (jumps == "cp_dexp") {
        cfg.model.jumps = CompoundPoisson{
            keys.require_real("model.rate"),
            DoubleExponentialJump{keys.require_real("model.jump_p"),
                                  keys.require_real("model.jump_eta_plus"),
                                  keys.require_real("model.jump_eta_minus")}};
    } else if (jumps == "cp_pointmass") {
        cfg.model.jumps =
            CompoundPoisson{keys.require_real("model.rate"),
                            PointMassJump{keys.require_real("model.jump_value")}};
    } else if (jumps == "vg") {
        cfg.model.jumps = VarianceGamma{keys.take_real("model.theta", 0.0),
                                        keys.require_real("model.vg_sigma"),
                                        keys.require_real("model.vg_nu")};
    } else if (jumps == "stable") {
        cfg.model.jumps = StableJumps{keys.require_real("model.alpha"),
                                      keys.require_real("model.scale"),
                                      keys.take_real("model.skew", 0.0)};
    } else {
        throw ConfigError("config: unknown model.jumps '" + jumps + "'");
    }
    try {
        cfg.model.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    cfg.market.s0 = keys.take_real("market.s0", 100.0);
    cfg.market.r = keys.take_real("market.r", 0.0);
    cfg.market.delta = keys.take_real("market.delta", 0.0);
    cfg.market.T = keys.take_real("market.T", 1.0);

    cfg.has_option = keys.has("option.kind");
    if (cfg.has_option) {
        const std::string kind = keys.take_string("option.kind", "");
        if (kind == "lookback_put")
            cfg.option.kind = OptionKind::lookback_put;
        else if (kind == "lookback_call")
            cfg.option.kind = OptionKind::lookback_call;
        else if (kind == "hindsight_call")
            cfg.option.kind = OptionKind::hindsight_call;
        else if (kind == "hindsight_put")
            cfg.option.kind = OptionKind::hindsight_put;
        else
            throw ConfigError("config: unknown option.kind '" + kind + "'");
        if (keys.has("option.strike"))
            cfg.option.strike = keys.take_real("option.strike", 0.0);
        cfg.option.extremum = keys.take_real("option.extremum", 0.0);
        cfg.option.k_index = keys.take_count("option.k_index", 0);
        cfg.option.n = keys.take_count("option.n", 1);
    }

    if (keys.has("study.n_list"))
        cfg.n_list = parse_n_list(keys.take_string("study.n_list", ""));
    cfg.paths = keys.take_count("study.paths", cfg.paths);
    cfg.seed = static_cast<std::uint64_t>(keys.take_count("study.seed", 1));
    cfg.engine = keys.take_string("study.engine", cfg.engine);
    if (cfg.engine != "spitzer" && cfg.engine != "mc")
        throw ConfigError("config: study.engine must be 'spitzer' or 'mc'");
    cfg.t = keys.take_real("study.t", cfg.t);
    cfg.quad.abs_tol = keys.take_real("study.abs_tol", cfg.quad.abs_tol);
    cfg.quad.rel_tol = keys.take_real("study.rel_tol", cfg.quad.rel_tol);
    cfg.out_path = keys.take_string("output.path", "");

    keys.finish();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace levysup
