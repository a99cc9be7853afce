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

#ifndef DLPROVER_SERVER_HPP
#define DLPROVER_SERVER_HPP

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "dlprover/model.hpp"
#include "dlprover/prooftree.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace dlp::server {

struct Config {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path data_dir = "dlprover-data";
    double qe_timeout_seconds = 5;
    double tactic_timeout_seconds = 60;

    // DLPROVER_BIND (host:port or port), DLPROVER_DATA_DIR, DLPROVER_QE_TIMEOUT.
    static Config from_env();
};

struct Response {
    int status = 200;
    nlohmann::json body;
    std::string text;  // sent as text/plain instead of body when non-empty
};

struct ModelEntry {
    std::string id;
    Model model;
};

struct Job {
    std::string id;
    std::string proof;
    std::atomic<bool> cancel{false};
    std::atomic<bool> finished{false};
    std::mutex mutex;
    Response result;  // guarded by mutex once finished
    std::thread worker;
};

struct Session {
    std::string id;
    std::string model_id;
    prooftree::ProofTree tree;
    std::mutex writer;  // single writer per session
    std::mutex state;   // guards reads of tree against the writer
    std::filesystem::path journal;

    Session(std::string id_, std::string model, prooftree::ProofTree t)
        : id(std::move(id_)), model_id(std::move(model)), tree(std::move(t)) {}
};

// The REST API without a transport; the HTTP server routes into handle().
class Service {
public:
    explicit Service(Config cfg);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    Response handle(const std::string& method, const std::string& path,
                    const std::map<std::string, std::string>& query, const std::string& body);

    const Config& config() const { return cfg_; }

private:
    Config cfg_;
    std::mutex registry_;  // guards models_, sessions_, jobs_, counters
    std::map<std::string, std::shared_ptr<ModelEntry>> models_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::map<std::string, std::shared_ptr<Job>> jobs_;
    std::size_t next_model_ = 1;
    std::size_t next_proof_ = 1;
    std::size_t next_job_ = 1;

    void load();
    std::shared_ptr<ModelEntry> find_model(const std::string& id);
    std::shared_ptr<Session> find_session(const std::string& id);
    void append_journal(Session& s, const std::vector<prooftree::JournalEntry>& entries);

    Response post_model(const std::string& body);
    Response get_model(const std::string& id);
    Response list_models();
    Response post_proof(const std::string& model_id);
    Response get_proof(const std::string& id);
    Response get_goals(const std::string& id);
    Response apply(const std::string& id, const std::string& goal, const std::string& body);
    Response suggestions(const std::string& id, const std::string& goal, const std::string& pos);
    Response counterexample(const std::string& id, const std::string& goal);
    Response prune(const std::string& id, const std::string& body, bool undo);
    Response tactic(const std::string& id);
    Response tree(const std::string& id);
    Response metrics(const std::string& id);
    Response path(const std::string& id, const std::string& node);
    Response get_job(const std::string& id);
    Response cancel_job(const std::string& id);
};

// Rendering of one proof state: goals with position-annotated formulas.
nlohmann::json goals_json(const prooftree::ProofTree& t);

// Blocks serving HTTP until stop() is called from another thread.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    bool listen(const std::string& host, int port);
    int bind_any_port(const std::string& host);  // returns the port
    bool listen_after_bind();
    void stop();

private:
    Service& service_;
    std::unique_ptr<httplib::Server> http_;
};

}  // namespace dlp::server

#endif
