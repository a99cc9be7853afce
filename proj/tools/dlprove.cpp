/* Copyright 2026 The dlprover Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dlprover/arith.hpp"
#include "dlprover/model.hpp"
#include "dlprover/parser.hpp"
#include "dlprover/printer.hpp"
#include "dlprover/prooftree.hpp"
#include "dlprover/server.hpp"

using namespace dlp;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ProveArgs {
    std::string model;
    std::string tactic;
    bool automatic = false;
    double timeout = 0;
    bool json = false;
};

json counterexample_json(const Sequent& s, double timeout) {
    arith::Options o;
    o.timeout_seconds = timeout;
    auto r = arith::counterexample(s, o);
    if (const auto* w = std::get_if<arith::Witness>(&r)) {
        json values = json::object();
        for (const auto& [v, q] : *w) values[v] = to_string(q);
        return {{"result", "witness"}, {"witness", values}, {"text", arith::to_string(*w)}};
    }
    if (const auto* u = std::get_if<arith::Unsupported>(&r)) return {{"result", "unsupported"}, {"reason", u->reason}};
    return {{"result", "none"}};
}

int prove(const ProveArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    Model model = [&] {
        try {
            return parse_model(slurp(a.model));
        } catch (const ModelError& e) {
            throw std::runtime_error(a.model + ": " + e.what());
        }
    }();
    prooftree::ProofTree tree(model.problem);
    tactics::Options opts;
    opts.timeout_seconds = a.timeout;
    opts.qe_timeout_seconds = a.timeout;
    std::vector<std::string> errors;

    if (!a.tactic.empty()) {
        tactics::Tactic script;
        try {
            script = tactics::parse_tactic(slurp(a.tactic));
        } catch (const tactics::TacticParseError& e) {
            throw std::runtime_error(a.tactic + ": " + e.what());
        }
        try {
            tree.record_step(0, script, prooftree::Provenance::Tactic, false, opts);
        } catch (const tactics::TacticError& e) {
            errors.push_back(e.what());
        }
    }
    if (a.automatic) {
        for (auto leaf : tree.open_leaves()) {
            try {
                tree.record_step(leaf, tactics::Tactic::atom("auto"), prooftree::Provenance::Auto, false, opts);
            } catch (const tactics::TacticError& e) {
                if (std::string(e.what()).find("no progress") == std::string::npos) errors.push_back(e.what());
            }
        }
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json open = json::array();
    for (auto leaf : tree.open_leaves()) {
        const auto& n = tree.node(leaf);
        open.push_back({{"node", leaf},
                        {"label", n.label},
                        {"sequent", to_string(n.sequent)},
                        {"counterexample", counterexample_json(n.sequent, a.timeout)}});
        ++tree.metrics().counterexample_invocations;
    }
    std::size_t steps = 0;
    for (const auto& [id, n] : tree.nodes()) steps += n.step.has_value();

    if (a.json) {
        json out = {{"model", a.model},
                    {"status", tree.proved() ? "proved" : "open"},
                    {"proved", tree.proved()},
                    {"steps", steps},
                    {"tactic", tactics::print_tactic(tree.extract_tactic())},
                    {"open_goals", open},
                    {"errors", errors},
                    {"tree", tree.to_json()},
                    {"metrics", tree.metrics().to_json(seconds)},
                    {"seconds", seconds}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& e : errors) std::cerr << "tactic failed: " << e << "\n";
        std::cout << (tree.proved() ? "proved" : "not proved") << ": " << a.model << " (" << steps << " steps, "
                  << seconds << " s)\n";
        if (!tree.proved()) {
            std::cout << "open goals:\n";
            for (const auto& g : open) {
                std::cout << "  " << g["sequent"].get<std::string>() << "\n";
                const auto& c = g["counterexample"];
                if (c["result"] == "witness")
                    std::cout << "    counterexample: " << c["text"].get<std::string>() << "\n";
                else if (c["result"] == "unsupported")
                    std::cout << "    counterexample search unsupported: " << c["reason"].get<std::string>() << "\n";
            }
        }
    }
    return tree.proved() ? 0 : 1;
}

server::HttpServer* running = nullptr;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interactive prover for differential dynamic logic"};
    app.require_subcommand(1);

    ProveArgs pa;
    auto* prove_cmd = app.add_subcommand("prove", "Prove the problem of a model file");
    prove_cmd->add_option("model", pa.model, "Model file (.mdl)")->required()->check(CLI::ExistingFile);
    prove_cmd->add_option("--tactic", pa.tactic, "Tactic script (.tac)")->check(CLI::ExistingFile);
    prove_cmd->add_flag("--auto", pa.automatic, "Run automatic proof search on the remaining goals");
    prove_cmd->add_option("--timeout", pa.timeout, "Time limit in seconds (0: none)");
    prove_cmd->add_flag("--json", pa.json, "Print a machine-readable result");

    server::Config cfg = server::Config::from_env();
    std::string bind;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP proof service");
    serve_cmd->add_option("--bind", bind, "host:port (default from DLPROVER_BIND or 127.0.0.1:8080)");
    serve_cmd->add_option("--data", cfg.data_dir, "Data directory (default from DLPROVER_DATA_DIR)");
    serve_cmd->add_option("--qe-timeout", cfg.qe_timeout_seconds, "Per-call QE time limit in seconds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prove_cmd) return prove(pa);
        if (!bind.empty()) {
            auto colon = bind.rfind(':');
            if (colon == std::string::npos) {
                cfg.port = std::stoi(bind);
            } else {
                if (colon > 0) cfg.host = bind.substr(0, colon);
                cfg.port = std::stoi(bind.substr(colon + 1));
            }
        }
        server::Service service(cfg);
        server::HttpServer http(service);
        running = &http;
        std::signal(SIGINT, [](int) {
            if (running) running->stop();
        });
        std::signal(SIGTERM, [](int) {
            if (running) running->stop();
        });
        std::cerr << "serving on " << cfg.host << ":" << cfg.port << " with data in " << cfg.data_dir << "\n";
        if (!http.listen(cfg.host, cfg.port)) {
            std::cerr << "cannot listen on " << cfg.host << ":" << cfg.port << "\n";
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
