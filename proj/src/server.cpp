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

#include "dlprover/server.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dlprover/arith.hpp"
#include "dlprover/parser.hpp"
#include "dlprover/printer.hpp"
#include "httplib.h"

namespace dlp::server {

using nlohmann::json;
using prooftree::JournalEntry;
using prooftree::ProofTree;
using tactics::Tactic;

namespace fs = std::filesystem;

Config Config::from_env() {
    Config c;
    if (const char* bind = std::getenv("DLPROVER_BIND")) {
        std::string b = bind;
        auto colon = b.rfind(':');
        if (colon == std::string::npos) {
            c.port = std::stoi(b);
        } else {
            if (colon > 0) c.host = b.substr(0, colon);
            c.port = std::stoi(b.substr(colon + 1));
        }
    }
    if (const char* dir = std::getenv("DLPROVER_DATA_DIR")) c.data_dir = dir;
    if (const char* t = std::getenv("DLPROVER_QE_TIMEOUT")) c.qe_timeout_seconds = std::stod(t);
    return c;
}

namespace {

Response error(int status, const std::string& kind, const std::string& message, json extra = json::object()) {
    json body = {{"kind", kind}, {"message", message}};
    for (auto& [k, v] : extra.items()) body[k] = v;
    return {status, body, {}};
}

Response not_found(const std::string& what) { return error(404, "not_found", what + " not found"); }

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> out;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '/'))
        if (!part.empty()) out.push_back(part);
    return out;
}

std::optional<std::size_t> parse_index(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) return std::nullopt;
    return std::stoul(s);
}

std::size_t numeric_suffix(const std::string& id) {
    auto n = parse_index(id.substr(1));
    return n ? *n : 0;
}

json formula_json(const Formula& f, Side side, int index) {
    Rendering r = render(f);
    json spans = json::array();
    for (const auto& s : r.spans)
        spans.push_back({{"position", Position{side, index, s.path}.to_string()}, {"begin", s.begin}, {"end", s.end}});
    return {{"text", r.text}, {"position", Position{side, index, {}}.to_string()}, {"spans", spans}};
}

const char* kind_name(DisplayKind k) {
    switch (k) {
        case DisplayKind::Axiom:
            return "axiom";
        case DisplayKind::Rule:
            return "rule";
        case DisplayKind::RuleWithInput:
            return "rule_with_input";
    }
    return "rule";
}

json model_json(const ModelEntry& m) {
    json inv = json::array();
    for (const auto& f : m.model.invariants) inv.push_back(to_string(f));
    return {{"id", m.id},
            {"variables", m.model.variables},
            {"problem", to_string(m.model.problem)},
            {"invariants", inv},
            {"source", m.model.source}};
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << text;
    }
    fs::rename(tmp, p);
}

}  // namespace

json goals_json(const ProofTree& t) {
    json goals = json::array();
    auto leaves = t.open_leaves();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const auto& n = t.node(leaves[i]);
        json ante = json::array(), succ = json::array();
        for (std::size_t k = 0; k < n.sequent.ante.size(); ++k)
            ante.push_back(formula_json(n.sequent.ante[k], Side::Ante, static_cast<int>(k + 1)));
        for (std::size_t k = 0; k < n.sequent.succ.size(); ++k)
            succ.push_back(formula_json(n.sequent.succ[k], Side::Succ, static_cast<int>(k + 1)));
        goals.push_back({{"index", i},
                         {"node", n.id},
                         {"label", n.label},
                         {"sequent", to_string(n.sequent)},
                         {"ante", ante},
                         {"succ", succ}});
    }
    return {{"status", t.proved() ? "proved" : "open"}, {"goals", goals}};
}

// --- service ----------------------------------------------------------------------

Service::Service(Config cfg) : cfg_(std::move(cfg)) {
    fs::create_directories(cfg_.data_dir / "models");
    fs::create_directories(cfg_.data_dir / "proofs");
    load();
}

Service::~Service() {
    std::vector<std::shared_ptr<Job>> jobs;
    {
        std::lock_guard lock(registry_);
        for (auto& [id, j] : jobs_) jobs.push_back(j);
    }
    for (auto& j : jobs) {
        j->cancel = true;
        if (j->worker.joinable()) j->worker.join();
    }
}

void Service::load() {
    std::vector<fs::path> model_files, proof_files;
    for (const auto& e : fs::directory_iterator(cfg_.data_dir / "models"))
        if (e.path().extension() == ".mdl") model_files.push_back(e.path());
    for (const auto& e : fs::directory_iterator(cfg_.data_dir / "proofs"))
        if (e.path().extension() == ".json") proof_files.push_back(e.path());
    auto by_number = [](const fs::path& a, const fs::path& b) {
        return numeric_suffix(a.stem().string()) < numeric_suffix(b.stem().string());
    };
    std::sort(model_files.begin(), model_files.end(), by_number);
    std::sort(proof_files.begin(), proof_files.end(), by_number);

    for (const auto& p : model_files) {
        std::string id = p.stem().string();
        try {
            models_[id] = std::make_shared<ModelEntry>(ModelEntry{id, parse_model(read_file(p))});
        } catch (const std::exception&) {
            continue;
        }
        next_model_ = std::max(next_model_, numeric_suffix(id) + 1);
    }
    for (const auto& p : proof_files) {
        std::string id = p.stem().string();
        next_proof_ = std::max(next_proof_, numeric_suffix(id) + 1);
        json meta = json::parse(read_file(p), nullptr, false);
        if (meta.is_discarded()) continue;
        auto model = models_.find(meta.value("model", ""));
        if (model == models_.end()) continue;
        auto s = std::make_shared<Session>(id, model->first, ProofTree(model->second->model.problem));
        s->journal = cfg_.data_dir / "proofs" / (id + ".prf.jsonl");
        std::ifstream in(s->journal);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            // A torn last line from a crash mid-write was never acknowledged.
            if (j.is_discarded()) break;
            s->tree.apply(JournalEntry::from_json(j));
        }
        std::size_t earlier = 0;
        for (const auto& [sid, other] : sessions_) earlier += other->model_id == s->model_id;
        s->tree.metrics().reproof_attempts = earlier;
        sessions_[id] = s;
    }
}

std::shared_ptr<ModelEntry> Service::find_model(const std::string& id) {
    std::lock_guard lock(registry_);
    auto it = models_.find(id);
    return it == models_.end() ? nullptr : it->second;
}

std::shared_ptr<Session> Service::find_session(const std::string& id) {
    std::lock_guard lock(registry_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

void Service::append_journal(Session& s, const std::vector<JournalEntry>& entries) {
    if (entries.empty()) return;
    std::string text;
    for (const auto& e : entries) text += e.to_json().dump() + "\n";
    int fd = ::open(s.journal.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) throw std::runtime_error("cannot open journal " + s.journal.string());
    const char* p = text.data();
    std::size_t left = text.size();
    while (left > 0) {
        ssize_t n = ::write(fd, p, left);
        if (n < 0) {
            ::close(fd);
            throw std::runtime_error("cannot write journal " + s.journal.string());
        }
        p += n;
        left -= static_cast<std::size_t>(n);
    }
    ::fsync(fd);
    ::close(fd);
}

Response Service::handle(const std::string& method, const std::string& path,
                         const std::map<std::string, std::string>& query, const std::string& body) {
    auto seg = split_path(path);
    auto is = [&](std::initializer_list<const char*> shape) {
        if (seg.size() != shape.size()) return false;
        std::size_t i = 0;
        for (const char* s : shape) {
            if (std::string(s) != "*" && seg[i] != s) return false;
            ++i;
        }
        return true;
    };
    try {
        if (method == "GET" && is({"health"})) return {200, {{"status", "ok"}}, {}};
        if (method == "POST" && is({"models"})) return post_model(body);
        if (method == "GET" && is({"models"})) return list_models();
        if (method == "GET" && is({"models", "*"})) return get_model(seg[1]);
        if (method == "POST" && is({"models", "*", "proofs"})) return post_proof(seg[1]);
        if (method == "GET" && is({"proofs", "*"})) return get_proof(seg[1]);
        if (method == "GET" && is({"proofs", "*", "goals"})) return get_goals(seg[1]);
        if (method == "POST" && is({"proofs", "*", "goals", "*", "apply"})) return apply(seg[1], seg[3], body);
        if (method == "GET" && is({"proofs", "*", "goals", "*", "suggestions"})) {
            auto it = query.find("pos");
            return suggestions(seg[1], seg[3], it == query.end() ? "" : it->second);
        }
        if (method == "POST" && is({"proofs", "*", "goals", "*", "counterexample"})) return counterexample(seg[1], seg[3]);
        if (method == "POST" && is({"proofs", "*", "prune"})) return prune(seg[1], body, false);
        if (method == "POST" && is({"proofs", "*", "undo"})) return prune(seg[1], body, true);
        if (method == "GET" && is({"proofs", "*", "tactic"})) return tactic(seg[1]);
        if (method == "GET" && is({"proofs", "*", "tree"})) return tree(seg[1]);
        if (method == "GET" && is({"proofs", "*", "metrics"})) return metrics(seg[1]);
        if (method == "GET" && is({"proofs", "*", "paths", "*"})) return this->path(seg[1], seg[3]);
        if (method == "GET" && is({"jobs", "*"})) return get_job(seg[1]);
        if (method == "POST" && is({"jobs", "*", "cancel"})) return cancel_job(seg[1]);
        return not_found("route " + method + " " + path);
    } catch (const std::exception& e) {
        return error(500, "internal", e.what());
    }
}

Response Service::post_model(const std::string& body) {
    std::optional<Model> m;
    try {
        m = parse_model(body);
    } catch (const ModelError& e) {
        return error(422, "parse", e.what(), {{"line", e.line()}});
    }
    std::shared_ptr<ModelEntry> entry;
    {
        std::lock_guard lock(registry_);
        std::string id = "m" + std::to_string(next_model_++);
        entry = std::make_shared<ModelEntry>(ModelEntry{id, std::move(*m)});
        write_file(cfg_.data_dir / "models" / (id + ".mdl"), body);
        models_[id] = entry;
    }
    Response r{201, model_json(*entry), {}};
    return r;
}

Response Service::get_model(const std::string& id) {
    auto m = find_model(id);
    if (!m) return not_found("model " + id);
    return {200, model_json(*m), {}};
}

Response Service::list_models() {
    std::lock_guard lock(registry_);
    json out = json::array();
    for (const auto& [id, m] : models_) out.push_back({{"id", id}, {"problem", to_string(m->model.problem)}});
    return {200, out, {}};
}

Response Service::post_proof(const std::string& model_id) {
    auto m = find_model(model_id);
    if (!m) return not_found("model " + model_id);
    std::shared_ptr<Session> s;
    {
        std::lock_guard lock(registry_);
        std::string id = "p" + std::to_string(next_proof_++);
        s = std::make_shared<Session>(id, model_id, ProofTree(m->model.problem));
        s->journal = cfg_.data_dir / "proofs" / (id + ".prf.jsonl");
        std::size_t earlier = 0;
        for (const auto& [sid, other] : sessions_) earlier += other->model_id == model_id;
        s->tree.metrics().reproof_attempts = earlier;
        write_file(cfg_.data_dir / "proofs" / (id + ".json"), json{{"model", model_id}}.dump());
        std::ofstream touch(s->journal, std::ios::app);
        sessions_[id] = s;
    }
    json out = goals_json(s->tree);
    out["id"] = s->id;
    out["model"] = model_id;
    return {201, out, {}};
}

Response Service::get_proof(const std::string& id) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);
    std::lock_guard lock(s->state);
    return {200,
            {{"id", s->id},
             {"model", s->model_id},
             {"status", s->tree.proved() ? "proved" : "open"},
             {"open_goals", s->tree.open_leaves().size()},
             {"conjecture", to_string(s->tree.node(0).sequent)}},
            {}};
}

Response Service::get_goals(const std::string& id) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);
    std::lock_guard lock(s->state);
    return {200, goals_json(s->tree), {}};
}

Response Service::apply(const std::string& id, const std::string& goal, const std::string& body) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);

    // Validate the request before touching the session.
    json b = json::parse(body, nullptr, false);
    if (b.is_discarded() || !b.is_object()) return error(400, "bad_request", "body must be a JSON object");
    if (!b.contains("tactic") || !b["tactic"].is_string()) return error(400, "bad_request", "missing tactic");
    std::string text = b["tactic"];
    std::vector<std::string> inputs;
    if (b.contains("inputs")) {
        if (!b["inputs"].is_array()) return error(400, "bad_request", "inputs must be a list of strings");
        for (const auto& i : b["inputs"]) {
            if (!i.is_string()) return error(400, "bad_request", "inputs must be a list of strings");
            inputs.push_back(i.get<std::string>());
        }
    }
    for (const auto& in : inputs) {
        try {
            parse_formula(in);
        } catch (const ParseError& e) {
            return error(422, "parse", std::string("input \"") + in + "\": " + e.what());
        }
    }
    tactics::Locator loc;
    if (b.contains("position") && !b["position"].is_null()) {
        try {
            std::string p = b["position"].is_string() ? b["position"].get<std::string>()
                                                      : std::to_string(b["position"].get<int>());
            loc = tactics::Locator::fixed(Position::parse(p));
        } catch (const std::exception& e) {
            return error(422, "parse", std::string("bad position: ") + e.what());
        }
    }
    Tactic t;
    const auto& names = tactics::atom_names();
    bool is_atom = std::find(names.begin(), names.end(), text) != names.end();
    if (is_atom) {
        t = Tactic::atom(text, inputs, loc);
    } else {
        if (!inputs.empty() || loc.kind != tactics::LocatorKind::None)
            return error(422, "parse", "inputs and position need a single tactic name, not " + text);
        try {
            t = tactics::parse_tactic(text);
        } catch (const tactics::TacticParseError& e) {
            return error(422, "parse", e.what(), {{"offset", e.offset()}});
        }
    }
    prooftree::Provenance prov = is_atom ? prooftree::Provenance::Click : prooftree::Provenance::Tactic;
    if (b.contains("provenance")) {
        try {
            prov = prooftree::provenance_from_string(b["provenance"].get<std::string>());
        } catch (const std::exception& e) {
            return error(400, "bad_request", e.what());
        }
    }
    bool dialog = b.value("dialog", false);
    bool async = b.value("async", false);
    auto g = parse_index(goal);
    if (!g) return not_found("goal " + goal);

    std::unique_lock writer(s->writer, std::try_to_lock);
    if (!writer.owns_lock()) return error(409, "conflict", "another change to proof " + id + " is in progress");
    std::size_t leaf;
    {
        std::lock_guard lock(s->state);
        auto leaves = s->tree.open_leaves();
        if (*g >= leaves.size()) return not_found("goal " + goal);
        leaf = leaves[*g];
    }

    auto job = std::make_shared<Job>();
    auto run = [this, s, t, leaf, prov, dialog, job]() -> Response {
        ProofTree copy = [&] {
            std::lock_guard lock(s->state);
            return s->tree;
        }();
        std::size_t before = copy.journal().size();
        tactics::Options opts;
        opts.timeout_seconds = cfg_.tactic_timeout_seconds;
        opts.qe_timeout_seconds = cfg_.qe_timeout_seconds;
        opts.cancel = &job->cancel;
        std::vector<std::size_t> added;
        try {
            auto entries = copy.record_step(leaf, t, prov, dialog, opts);
            for (const auto& e : entries) added.push_back(e.node);
        } catch (const tactics::TacticError& e) {
            json extra = {{"diagnostics", copy.diagnostics()}, {"goal", e.goal() ? json(*e.goal()) : json(nullptr)}};
            if (e.position()) extra["position"] = e.position()->to_string();
            std::lock_guard lock(s->state);
            s->tree.metrics().failed_steps += 1;
            return error(422, copy.diagnostics().empty() ? "inapplicable" : "clash", e.what(), extra);
        }
        append_journal(*s, std::vector<JournalEntry>(copy.journal().begin() + static_cast<long>(before),
                                                     copy.journal().end()));
        json out;
        {
            std::lock_guard lock(s->state);
            s->tree = std::move(copy);
            out = goals_json(s->tree);
            out["diagnostics"] = s->tree.diagnostics();
        }
        out["expanded"] = added;
        return {200, out, {}};
    };

    if (!async) return run();

    {
        std::lock_guard lock(registry_);
        job->id = "j" + std::to_string(next_job_++);
        job->proof = id;
        jobs_[job->id] = job;
    }
    job->worker = std::thread([job, run, w = std::move(writer)]() mutable {
        Response r = run();
        w.unlock();
        std::lock_guard lock(job->mutex);
        job->result = std::move(r);
        job->finished = true;
    });
    return {202, {{"job", job->id}, {"status", "running"}}, {}};
}

Response Service::get_job(const std::string& id) {
    std::shared_ptr<Job> job;
    {
        std::lock_guard lock(registry_);
        auto it = jobs_.find(id);
        if (it == jobs_.end()) return not_found("job " + id);
        job = it->second;
    }
    if (!job->finished) return {200, {{"job", id}, {"status", "running"}}, {}};
    std::lock_guard lock(job->mutex);
    return {200,
            {{"job", id},
             {"status", job->result.status == 200 ? "done" : "failed"},
             {"code", job->result.status},
             {"result", job->result.body}},
            {}};
}

Response Service::cancel_job(const std::string& id) {
    std::shared_ptr<Job> job;
    {
        std::lock_guard lock(registry_);
        auto it = jobs_.find(id);
        if (it == jobs_.end()) return not_found("job " + id);
        job = it->second;
    }
    job->cancel = true;
    return {200, {{"job", id}, {"status", job->finished ? "done" : "canceling"}}, {}};
}

Response Service::suggestions(const std::string& id, const std::string& goal, const std::string& pos_text) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);
    Position pos;
    try {
        pos = Position::parse(pos_text);
    } catch (const std::exception& e) {
        return error(422, "parse", std::string("bad position: ") + e.what());
    }
    Sequent seq;
    {
        std::lock_guard lock(s->state);
        auto leaves = s->tree.open_leaves();
        auto g = parse_index(goal);
        if (!g || *g >= leaves.size()) return not_found("goal " + goal);
        seq = s->tree.node(leaves[*g]).sequent;
    }
    try {
        subexpr_at(seq, pos);
    } catch (const PositionError& e) {
        return error(422, "position", e.what());
    }
    json out = json::array();
    for (const auto& sg : tactics::suggest(seq, pos)) {
        json inputs = json::array();
        for (const auto& in : sg.inputs)
            inputs.push_back({{"name", in.name}, {"kind", in.kind}, {"default", in.default_value}});
        out.push_back({{"tactic", sg.tactic},
                       {"display", sg.display},
                       {"display_kind", kind_name(sg.display_kind)},
                       {"conclusion", sg.conclusion},
                       {"premises", sg.premises},
                       {"inputs", inputs},
                       {"position", pos.to_string()}});
    }
    return {200, out, {}};
}

Response Service::counterexample(const std::string& id, const std::string& goal) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);
    Sequent seq;
    {
        std::lock_guard lock(s->state);
        auto leaves = s->tree.open_leaves();
        auto g = parse_index(goal);
        if (!g || *g >= leaves.size()) return not_found("goal " + goal);
        seq = s->tree.node(leaves[*g]).sequent;
        ++s->tree.metrics().counterexample_invocations;
    }
    arith::Options opts;
    opts.timeout_seconds = cfg_.qe_timeout_seconds;
    auto r = arith::counterexample(seq, opts);
    if (const auto* w = std::get_if<arith::Witness>(&r)) {
        json values = json::object();
        for (const auto& [v, q] : *w) values[v] = to_string(q);
        return {200, {{"result", "witness"}, {"witness", values}}, {}};
    }
    if (const auto* u = std::get_if<arith::Unsupported>(&r))
        return {200, {{"result", "unsupported"}, {"reason", u->reason}}, {}};
    return {200, {{"result", "none"}}, {}};
}

Response Service::prune(const std::string& id, const std::string& body, bool undo) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);
    std::size_t node = 0;
    if (!undo) {
        json b = json::parse(body, nullptr, false);
        if (b.is_discarded() || !b.contains("node") || !b["node"].is_number_unsigned())
            return error(400, "bad_request", "body must be {\"node\": <id>}");
        node = b["node"].get<std::size_t>();
    }
    std::unique_lock writer(s->writer, std::try_to_lock);
    if (!writer.owns_lock()) return error(409, "conflict", "another change to proof " + id + " is in progress");
    ProofTree copy = [&] {
        std::lock_guard lock(s->state);
        return s->tree;
    }();
    std::size_t before = copy.journal().size();
    try {
        if (undo)
            copy.undo();
        else
            copy.prune(node);
    } catch (const std::out_of_range& e) {
        return not_found("node " + std::to_string(node));
    } catch (const std::logic_error& e) {
        return error(422, "inapplicable", e.what());
    }
    append_journal(*s, std::vector<JournalEntry>(copy.journal().begin() + static_cast<long>(before),
                                                 copy.journal().end()));
    std::lock_guard lock(s->state);
    s->tree = std::move(copy);
    return {200, s->tree.to_json(), {}};
}

Response Service::tactic(const std::string& id) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);
    std::lock_guard lock(s->state);
    return {200, nullptr, tactics::print_tactic(s->tree.extract_tactic()) + "\n"};
}

Response Service::tree(const std::string& id) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);
    std::lock_guard lock(s->state);
    return {200, s->tree.to_json(), {}};
}

Response Service::metrics(const std::string& id) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);
    std::lock_guard lock(s->state);
    return {200, s->tree.metrics().to_json(s->tree.wall_seconds()), {}};
}

Response Service::path(const std::string& id, const std::string& node) {
    auto s = find_session(id);
    if (!s) return not_found("proof " + id);
    auto n = parse_index(node);
    std::lock_guard lock(s->state);
    if (!n || !s->tree.contains(*n)) return not_found("node " + node);
    auto p = s->tree.deduction_path(*n);
    json links = json::array();
    for (const auto& l : p.links) links.push_back({{"node", l.node}, {"taken", l.taken}, {"others", l.others}});
    json groups = json::array();
    for (const auto& [b, e] : p.groups) groups.push_back({b, e});
    return {200, {{"nodes", p.nodes}, {"links", links}, {"groups", groups}}, {}};
}

// --- HTTP -----------------------------------------------------------------------

HttpServer::HttpServer(Service& service) : service_(service), http_(std::make_unique<httplib::Server>()) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> query;
        for (const auto& [k, v] : req.params) query[k] = v;
        Response r = service_.handle(req.method, req.path, query, req.body);
        res.status = r.status;
        if (!r.text.empty())
            res.set_content(r.text, "text/plain; charset=utf-8");
        else
            res.set_content(r.body.dump(), "application/json");
    };
    http_->set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    http_->Get(R"(/.*)", handler);
    http_->Post(R"(/.*)", handler);
    http_->Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) { return http_->listen(host, port); }

int HttpServer::bind_any_port(const std::string& host) { return http_->bind_to_any_port(host); }

bool HttpServer::listen_after_bind() { return http_->listen_after_bind(); }

void HttpServer::stop() { http_->stop(); }

}  // namespace dlp::server
