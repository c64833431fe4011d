// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ucclab/ansatz.hpp"
#include "ucclab/vqe.hpp"

namespace ucclab {

/// Raised on malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One experiment: fixture(s), ansatz recipe, ordering strategy, optimizer
/// settings, ensemble/restart counts, output directory. Fully serializable;
/// a config plus fixture bytes determines every numeric output.
///
/// Text format: one `key = value` per line, '#' starts a comment. Unknown
/// keys are configuration errors.
struct ExperimentConfig {
    std::string fixture;  // single-point FCIDUMP path
    std::string manifest; // per-system manifest for scans

    PoolKind ansatz = PoolKind::uccsd;
    int k = 1;
    AnsatzForm form = AnsatzForm::trotterized;
    int trotter_n = 1;
    OrderingKind ordering = OrderingKind::random_shuffle;
    std::uint64_t seed = 1;
    int ensemble_size = 100;

    int restarts = 1;
    InitSpec init;            // zeros for trotterized runs; untrotterized
    bool init_explicit = false; // restarts default to uniform(-0.5, 0.5)

    VqeOptions vqe;

    bool scan_sgo = false;     // include an SGO column in scans
    bool scan_untrot = false;  // include an untrotterized column in scans

    int threads = 0; // 0 = hardware concurrency
    std::string out_dir = "out";

    static ExperimentConfig from_stream(std::istream& in);
    static ExperimentConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        return from_stream(in);
    }

    /// Untrotterized restarted optimizations default to uniform random
    /// starts; trotterized runs start at zero unless told otherwise.
    void apply_form_defaults() {
        if (!init_explicit && form == AnsatzForm::untrotterized && restarts > 1)
            init.kind = InitSpec::Kind::uniform;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["fixture"] = fixture;
        j["manifest"] = manifest;
        j["ansatz"] = pool_kind_name(ansatz);
        j["k"] = k;
        j["form"] = form_name(form);
        j["trotter_n"] = trotter_n;
        j["ordering"] = ordering_kind_name(ordering);
        j["seed"] = seed;
        j["ensemble_size"] = ensemble_size;
        j["restarts"] = restarts;
        j["init"] = init.kind == InitSpec::Kind::zeros ? "zeros" : "uniform";
        j["init_low"] = init.low;
        j["init_high"] = init.high;
        j["gtol"] = vqe.bfgs.gtol;
        j["max_iter"] = vqe.bfgs.max_iterations;
        j["wolfe_c1"] = vqe.bfgs.wolfe_c1;
        j["wolfe_c2"] = vqe.bfgs.wolfe_c2;
        j["fd_step"] = vqe.fd_step;
        j["exp_sum_tol"] = vqe.exp_sum_tol;
        j["scan_sgo"] = scan_sgo;
        j["scan_untrot"] = scan_untrot;
        j["threads"] = threads;
        j["out"] = out_dir;
        return j;
    }
};

inline ExperimentConfig ExperimentConfig::from_stream(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw ConfigError("config line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail("empty key or value");

        try {
            if (key == "fixture") cfg.fixture = value;
            else if (key == "manifest") cfg.manifest = value;
            else if (key == "ansatz") {
                if (value == "uccsd") cfg.ansatz = PoolKind::uccsd;
                else if (value == "kupccgsd") cfg.ansatz = PoolKind::kupccgsd;
                else fail("ansatz must be uccsd or kupccgsd");
            } else if (key == "k") cfg.k = std::stoi(value);
            else if (key == "form") {
                if (value == "trotterized") cfg.form = AnsatzForm::trotterized;
                else if (value == "untrotterized") cfg.form = AnsatzForm::untrotterized;
                else fail("form must be trotterized or untrotterized");
            } else if (key == "trotter_n") cfg.trotter_n = std::stoi(value);
            else if (key == "ordering") cfg.ordering = ordering_kind_from_name(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "ensemble_size") cfg.ensemble_size = std::stoi(value);
            else if (key == "restarts") cfg.restarts = std::stoi(value);
            else if (key == "init") {
                if (value == "zeros") cfg.init.kind = InitSpec::Kind::zeros;
                else if (value == "uniform") cfg.init.kind = InitSpec::Kind::uniform;
                else fail("init must be zeros or uniform");
                cfg.init_explicit = true;
            } else if (key == "init_low") cfg.init.low = std::stod(value);
            else if (key == "init_high") cfg.init.high = std::stod(value);
            else if (key == "gtol") cfg.vqe.bfgs.gtol = std::stod(value);
            else if (key == "max_iter") cfg.vqe.bfgs.max_iterations = std::stoi(value);
            else if (key == "wolfe_c1") cfg.vqe.bfgs.wolfe_c1 = std::stod(value);
            else if (key == "wolfe_c2") cfg.vqe.bfgs.wolfe_c2 = std::stod(value);
            else if (key == "fd_step") cfg.vqe.fd_step = std::stod(value);
            else if (key == "exp_sum_tol") cfg.vqe.exp_sum_tol = std::stod(value);
            else if (key == "scan_sgo") cfg.scan_sgo = value == "on" || value == "true" || value == "1";
            else if (key == "scan_untrot")
                cfg.scan_untrot = value == "on" || value == "true" || value == "1";
            else if (key == "threads") cfg.threads = std::stoi(value);
            else if (key == "out") cfg.out_dir = value;
            else fail("unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            fail(std::string("bad value for '") + key + "': " + e.what());
        }
    }
    if (cfg.k < 1) throw ConfigError("k must be >= 1");
    if (cfg.trotter_n < 1) throw ConfigError("trotter_n must be >= 1");
    if (cfg.ensemble_size < 1) throw ConfigError("ensemble_size must be >= 1");
    if (cfg.restarts < 1) throw ConfigError("restarts must be >= 1");
    cfg.apply_form_defaults();
    return cfg;
}

} // namespace ucclab
