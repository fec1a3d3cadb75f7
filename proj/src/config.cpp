#include "searchstop/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "searchstop/errors.hpp"

namespace searchstop {

namespace {

using nlohmann::json;

Pmf pmf_from_json(const json& node, const std::string& key) {
    if (!node.is_array())
        throw ConfigError("'" + key + "' must be an array of probabilities");
    std::vector<double> probs;
    probs.reserve(node.size());
    for (const json& entry : node) {
        if (!entry.is_number())
            throw ConfigError("'" + key + "' entries must be numbers");
        probs.push_back(entry.get<double>());
    }
    try {
        return Pmf(std::move(probs));
    } catch (const Error& e) {
        throw ConfigError("'" + key + "': " + e.what());
    }
}

double number_field(const json& doc, const std::string& key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc.at(key).is_number())
        throw ConfigError("'" + key + "' must be a number");
    return doc.at(key).get<double>();
}

std::int64_t integer_field(const json& doc, const std::string& key, std::int64_t fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc.at(key).is_number_integer())
        throw ConfigError("'" + key + "' must be an integer");
    return doc.at(key).get<std::int64_t>();
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    static const std::set<std::string> known_keys = {
        "scheme", "locations", "pi",      "mu",     "ground_truth", "a",
        "rho1",   "rho2",      "b",       "a_bar",  "a_prime",      "nu",
        "trials", "seed",      "threads", "out",    "max_outer_steps",
        "thresholds"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (!known_keys.contains(key))
            throw ConfigError("unknown config key '" + key + "'");
    }

    for (const char* required : {"scheme", "locations", "pi", "ground_truth"})
        if (!doc.contains(required))
            throw ConfigError(std::string("missing required config key '") + required + "'");

    if (!doc.at("scheme").is_string())
        throw ConfigError("'scheme' must be a string");
    const std::string scheme_text = doc.at("scheme").get<std::string>();
    const bool paired = scheme_text == "paired";
    const Scheme scheme = paired ? Scheme::adaptive : scheme_from_name(scheme_text);

    const std::int64_t locations = integer_field(doc, "locations", 0);
    if (locations < 2) throw ConfigError("'locations' must be an integer >= 2");

    const Pmf pi = pmf_from_json(doc.at("pi"), "pi");

    bool all_hypotheses = false;
    std::size_t ground_truth = 0;
    const json& gt = doc.at("ground_truth");
    if (gt.is_string()) {
        const std::string text = gt.get<std::string>();
        if (text == "absent")
            ground_truth = 0;
        else if (text == "all")
            all_hypotheses = true;
        else
            throw ConfigError("'ground_truth' must be a location index, \"absent\", or \"all\"");
    } else if (gt.is_number_integer()) {
        const std::int64_t value = gt.get<std::int64_t>();
        if (value < 0 || value > locations)
            throw ConfigError("'ground_truth' must lie in 0..locations");
        ground_truth = static_cast<std::size_t>(value);
    } else {
        throw ConfigError("'ground_truth' must be a location index, \"absent\", or \"all\"");
    }

    // mu may be omitted only when no run can involve a present target and no
    // scheme needs the target model; it then defaults to pi, which the
    // universal schemes never look at.
    if (!doc.contains("mu") &&
        (all_hypotheses || ground_truth != 0 || scheme == Scheme::oracle))
        throw ConfigError("'mu' is required when a target can be present or the scheme is oracle");
    const Pmf mu = doc.contains("mu") ? pmf_from_json(doc.at("mu"), "mu") : pi;

    EnvSpec env{static_cast<std::size_t>(locations), ground_truth, mu, pi};

    BatchSpec batch{};
    batch.scheme = scheme;
    batch.env = env;
    batch.a = number_field(doc, "a", batch.a);
    batch.rho1 = number_field(doc, "rho1", batch.rho1);
    batch.rho2 = number_field(doc, "rho2", batch.rho2);
    batch.b = number_field(doc, "b", batch.b);
    batch.a_bar = number_field(doc, "a_bar", batch.a_bar);
    batch.a_prime = number_field(doc, "a_prime", batch.a_prime);
    batch.nu = number_field(doc, "nu", batch.nu);
    batch.max_outer_steps = integer_field(doc, "max_outer_steps", batch.max_outer_steps);

    // The scheme's own threshold must be given explicitly unless a sweep grid
    // will overwrite it anyway.
    const bool has_grid = doc.contains("thresholds");
    if (!has_grid && !paired) {
        const char* key = scheme == Scheme::adaptive    ? "a"
                          : scheme == Scheme::nonadaptive ? "a_bar"
                                                          : "a_prime";
        if (!doc.contains(key))
            throw ConfigError(std::string("missing '") + key + "' for scheme " +
                              scheme_text);
    }
    if (paired && !has_grid)
        throw ConfigError("scheme \"paired\" requires a 'thresholds' grid");

    ExperimentConfig cfg;
    cfg.batch = std::move(batch);
    cfg.paired = paired;
    cfg.all_hypotheses = all_hypotheses;

    if (has_grid) {
        const json& grid = doc.at("thresholds");
        if (!grid.is_array() || grid.size() < 2)
            throw ConfigError("'thresholds' must be an array of at least two values");
        for (const json& entry : grid) {
            if (!entry.is_number())
                throw ConfigError("'thresholds' entries must be numbers");
            cfg.thresholds.push_back(entry.get<double>());
        }
    }

    const std::int64_t trials = integer_field(doc, "trials", cfg.trials);
    if (trials < 1) throw ConfigError("'trials' must be >= 1");
    cfg.trials = trials;

    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_integer())
            throw ConfigError("'seed' must be an integer");
        cfg.master_seed = doc.at("seed").get<std::uint64_t>();
    }

    const std::int64_t threads = integer_field(doc, "threads", cfg.threads);
    if (threads < 1 || threads > 4096) throw ConfigError("'threads' must lie in 1..4096");
    cfg.threads = static_cast<unsigned>(threads);

    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) throw ConfigError("'out' must be a string");
        cfg.out_dir = doc.at("out").get<std::string>();
    }

    validate_experiment(cfg);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot read config file " + path);
    std::ostringstream text;
    text << file.rdbuf();
    return parse_config_text(text.str());
}

void validate_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ConfigError("'trials' must be >= 1");
    if (cfg.threads < 1) throw ConfigError("'threads' must be >= 1");

    auto validate_batch = [&](const BatchSpec& spec) {
        if (cfg.all_hypotheses) {
            // Every hypothesis runs; an absent and a present target exercise
            // all preconditions (locations 2..M validate identically to 1).
            BatchSpec variant = spec;
            variant.env.ground_truth = 0;
            variant.validate();
            variant.env.ground_truth = 1;
            variant.validate();
        } else {
            spec.validate();
        }
    };

    auto validate_grid = [&](BatchSpec spec) {
        for (const double threshold : cfg.thresholds) {
            spec.set_threshold(threshold);
            validate_batch(spec);
        }
    };

    if (cfg.paired) {
        if (cfg.all_hypotheses)
            throw ConfigError("paired sweeps need a single 'ground_truth'");
        if (cfg.thresholds.empty())
            throw ConfigError("paired sweeps need a 'thresholds' grid");
        BatchSpec adaptive = cfg.batch;
        adaptive.scheme = Scheme::adaptive;
        validate_grid(adaptive);
        BatchSpec nonadaptive = cfg.batch;
        nonadaptive.scheme = Scheme::nonadaptive;
        validate_grid(nonadaptive);
        return;
    }
    if (!cfg.thresholds.empty()) {
        if (cfg.all_hypotheses)
            throw ConfigError("threshold sweeps need a single 'ground_truth'");
        validate_grid(cfg.batch);
        return;
    }
    validate_batch(cfg.batch);
}

std::string config_echo_text(const ExperimentConfig& cfg) {
    json doc;
    doc["scheme"] = cfg.paired ? "paired" : scheme_name(cfg.batch.scheme);
    doc["locations"] = cfg.batch.env.num_locations;
    doc["pi"] = cfg.batch.env.pi.probs();
    doc["mu"] = cfg.batch.env.mu.probs();
    if (cfg.all_hypotheses)
        doc["ground_truth"] = "all";
    else
        doc["ground_truth"] = cfg.batch.env.ground_truth;
    doc["a"] = cfg.batch.a;
    doc["rho1"] = cfg.batch.rho1;
    doc["rho2"] = cfg.batch.rho2;
    doc["b"] = cfg.batch.b;
    doc["a_bar"] = cfg.batch.a_bar;
    doc["a_prime"] = cfg.batch.a_prime;
    doc["nu"] = cfg.batch.nu;
    doc["max_outer_steps"] = cfg.batch.max_outer_steps;
    if (!cfg.thresholds.empty()) doc["thresholds"] = cfg.thresholds;
    doc["trials"] = cfg.trials;
    doc["seed"] = cfg.master_seed;
    doc["threads"] = cfg.threads;
    doc["out"] = cfg.out_dir;
    return doc.dump(2);
}

}  // namespace searchstop
