/*
 * Copyright (C) 2026 CCRM developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "core/io.hpp"

#include "core/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ccrm::io {

using nlohmann::json;

std::string format_double(double value)
{
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        throw UsageError("failed to format a double");
    }
    return std::string(buffer, end);
}

std::string trust_csv(const sim::SimulationTrace& trace)
{
    std::string out = "step,agent_i,agent_j,trust,social_tag\n";
    for (const sim::StepSnap& snap : trace.steps) {
        for (const sim::EdgeSnap& edge : snap.edges) {
            out += std::to_string(snap.step);
            out += ',';
            out += trace.agent_ids[edge.i];
            out += ',';
            out += trace.agent_ids[edge.j];
            out += ',';
            out += format_double(edge.trust);
            out += ',';
            out += net::social_name(edge.tag);
            out += '\n';
        }
    }
    return out;
}

namespace {

json event_json(const sim::SimulationTrace& trace, const sim::TraceEvent& event)
{
    json payload = json::object();
    if (event.subject >= 0) {
        payload["agent"] = trace.agent_ids[event.subject];
    }
    if (event.other >= 0) {
        payload["other"] = trace.agent_ids[event.other];
    }
    if (event.type == sim::EventType::edge_removed) {
        payload["trust"] = event.value;
    }
    if (event.type == sim::EventType::selection || event.type == sim::EventType::instatement) {
        payload["score"] = event.value;
    }
    if (!event.group.empty()) {
        json members = json::array();
        for (int member : event.group) {
            members.push_back(trace.agent_ids[member]);
        }
        payload["agents"] = std::move(members);
    }
    if (!event.group_values.empty()) {
        payload["scores"] = event.group_values;
    }
    return json{{"step", event.step}, {"event_type", std::string(sim::event_name(event.type))},
                {"payload", std::move(payload)}};
}

sim::EventType parse_event_type(const std::string& name)
{
    for (int k = 0; k <= static_cast<int>(sim::EventType::node_removed); ++k) {
        if (sim::event_name(static_cast<sim::EventType>(k)) == name) {
            return static_cast<sim::EventType>(k);
        }
    }
    throw DataError("unknown event type '" + name + "'");
}

const std::array<std::string_view, 4> kStageNames = {"stable", "intervention", "who-done-it",
                                                     "cooldown"};

net::Stage parse_stage(const std::string& name)
{
    for (std::size_t k = 0; k < kStageNames.size(); ++k) {
        if (kStageNames[k] == name) {
            return static_cast<net::Stage>(k);
        }
    }
    throw DataError("unknown stage '" + name + "'");
}

net::Mindset parse_mindset(const std::string& name)
{
    if (name == "neutral") {
        return net::Mindset::neutral;
    }
    if (name == "chaotic") {
        return net::Mindset::chaotic;
    }
    if (name == "uncertain") {
        return net::Mindset::uncertain;
    }
    throw DataError("unknown mindset '" + name + "'");
}

} // namespace

std::string events_jsonl(const sim::SimulationTrace& trace)
{
    std::string out;
    for (const sim::TraceEvent& event : trace.events) {
        out += event_json(trace, event).dump();
        out += '\n';
    }
    return out;
}

std::string trace_jsonl(const sim::SimulationTrace& trace)
{
    std::string out;
    json header;
    header["type"] = "header";
    header["agents"] = trace.agent_ids;
    header["horizon"] = trace.horizon;
    header["removal_step"] = trace.removal_step ? json(*trace.removal_step) : json(nullptr);
    header["conclave_step"] = trace.conclave_step ? json(*trace.conclave_step) : json(nullptr);
    header["instatement_step"] =
        trace.instatement_step ? json(*trace.instatement_step) : json(nullptr);
    header["removed_agent"] = trace.removed_agent;
    out += header.dump();
    out += '\n';

    for (const sim::StepSnap& snap : trace.steps) {
        json line;
        line["type"] = "step";
        line["step"] = snap.step;
        line["stage"] = std::string(net::stage_name(snap.stage));
        json agents = json::array();
        for (const sim::AgentSnap& agent : snap.agents) {
            agents.push_back(json::array({agent.agent, std::string(net::role_name(agent.role)),
                                          agent.capitals.criminal, agent.capitals.violence,
                                          agent.capitals.financial,
                                          std::string(net::mindset_name(agent.mindset)),
                                          agent.activity == net::Activity::searching, agent.orphan}));
        }
        line["agents"] = std::move(agents);
        json edges = json::array();
        for (const sim::EdgeSnap& edge : snap.edges) {
            edges.push_back(json::array(
                {edge.i, edge.j, edge.trust, std::string(net::social_name(edge.tag))}));
        }
        line["edges"] = std::move(edges);
        out += line.dump();
        out += '\n';
    }
    for (const sim::TraceEvent& event : trace.events) {
        json line = event_json(trace, event);
        line["type"] = "event";
        // Keep raw indices so the parse is exact.
        line["subject"] = event.subject;
        line["other"] = event.other;
        line["value"] = event.value;
        line["group"] = event.group;
        line["group_values"] = event.group_values;
        out += line.dump();
        out += '\n';
    }
    return out;
}

sim::SimulationTrace parse_trace_jsonl(const std::string& text)
{
    sim::SimulationTrace trace;
    std::istringstream stream(text);
    std::string line;
    bool have_header = false;
    while (std::getline(stream, line)) {
        if (line.empty()) {
            continue;
        }
        json doc;
        std::string type;
        try {
            doc = json::parse(line);
            type = doc.value("type", "");
        }
        catch (const json::exception& error) {
            throw DataError(std::string("trace line is not valid JSON: ") + error.what());
        }
        try {
        if (type == "header") {
            trace.agent_ids = doc.at("agents").get<std::vector<std::string>>();
            trace.horizon = doc.value("horizon", 0);
            if (!doc.at("removal_step").is_null()) {
                trace.removal_step = doc.at("removal_step").get<int>();
            }
            if (!doc.at("conclave_step").is_null()) {
                trace.conclave_step = doc.at("conclave_step").get<int>();
            }
            if (!doc.at("instatement_step").is_null()) {
                trace.instatement_step = doc.at("instatement_step").get<int>();
            }
            trace.removed_agent = doc.value("removed_agent", -1);
            have_header = true;
        }
        else if (type == "step") {
            sim::StepSnap snap;
            snap.step = doc.at("step").get<int>();
            snap.stage = parse_stage(doc.at("stage").get<std::string>());
            for (const json& entry : doc.at("agents")) {
                sim::AgentSnap agent;
                agent.agent = entry.at(0).get<int>();
                agent.role = net::parse_role(entry.at(1).get<std::string>());
                agent.capitals.criminal = entry.at(2).get<double>();
                agent.capitals.violence = entry.at(3).get<double>();
                agent.capitals.financial = entry.at(4).get<double>();
                agent.mindset = parse_mindset(entry.at(5).get<std::string>());
                agent.activity =
                    entry.at(6).get<bool>() ? net::Activity::searching : net::Activity::normal;
                agent.orphan = entry.at(7).get<bool>();
                snap.agents.push_back(agent);
            }
            for (const json& entry : doc.at("edges")) {
                sim::EdgeSnap edge;
                edge.i = entry.at(0).get<int>();
                edge.j = entry.at(1).get<int>();
                edge.trust = entry.at(2).get<double>();
                edge.tag = net::parse_social(entry.at(3).get<std::string>());
                snap.edges.push_back(edge);
            }
            trace.steps.push_back(std::move(snap));
        }
        else if (type == "event") {
            sim::TraceEvent event;
            event.step = doc.at("step").get<int>();
            event.type = parse_event_type(doc.at("event_type").get<std::string>());
            event.subject = doc.value("subject", -1);
            event.other = doc.value("other", -1);
            event.value = doc.value("value", 0.0);
            if (doc.contains("group")) {
                event.group = doc.at("group").get<std::vector<int>>();
            }
            if (doc.contains("group_values")) {
                event.group_values = doc.at("group_values").get<std::vector<double>>();
            }
            trace.events.push_back(std::move(event));
        }
        else {
            throw DataError("trace line with unknown type '" + type + "'");
        }
        }
        catch (const json::exception& error) {
            throw DataError(std::string("malformed trace line: ") + error.what());
        }
    }
    if (!have_header || trace.steps.empty()) {
        throw DataError("trace file is missing its header or steps");
    }
    return trace;
}

std::string eval_log_csv(const std::vector<cal::EvalRecord>& log)
{
    std::string out = "iteration";
    for (const std::string& name : cal::param_names()) {
        out += ',';
        out += name;
    }
    out += ",f,runs\n";
    for (const cal::EvalRecord& record : log) {
        out += std::to_string(record.iteration);
        for (double value : record.theta) {
            out += ',';
            out += format_double(value);
        }
        out += ',';
        out += format_double(record.value);
        out += ',';
        out += std::to_string(record.runs);
        out += '\n';
    }
    return out;
}

std::vector<cal::EvalRecord> parse_eval_log_csv(const std::string& text)
{
    std::vector<cal::EvalRecord> log;
    std::istringstream stream(text);
    std::string line;
    if (!std::getline(stream, line)) {
        throw DataError("evaluation log is empty");
    }
    while (std::getline(stream, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string field;
        std::vector<std::string> row;
        while (std::getline(fields, field, ',')) {
            row.push_back(field);
        }
        if (row.size() != 2 + cal::kDim + 1) {
            throw DataError("evaluation log row with " + std::to_string(row.size()) + " fields");
        }
        cal::EvalRecord record;
        try {
            record.iteration = std::stoi(row[0]);
            for (int d = 0; d < cal::kDim; ++d) {
                record.theta[d] = std::stod(row[1 + d]);
            }
            record.value = std::stod(row[1 + cal::kDim]);
            record.runs = std::stoi(row[2 + cal::kDim]);
        }
        catch (const std::exception&) {
            throw DataError("malformed evaluation log row: " + line);
        }
        log.push_back(record);
    }
    if (log.empty()) {
        throw DataError("evaluation log holds no rows");
    }
    return log;
}

std::string landscape_csv(const cal::LandscapeSlice& slice)
{
    std::string out = "x,y,f_raw,f_smoothed\n";
    for (std::size_t row = 0; row < slice.raw.rows; ++row) {
        for (std::size_t col = 0; col < slice.raw.cols; ++col) {
            out += format_double(slice.xs[col]);
            out += ',';
            out += format_double(slice.ys[row]);
            out += ',';
            out += format_double(slice.raw.at(row, col));
            out += ',';
            out += format_double(slice.smoothed.at(row, col));
            out += '\n';
        }
    }
    return out;
}

std::string profile_csv(const ana::ProfilePoints& points)
{
    std::string out = "bin_center,mean,sem,smoothed,count\n";
    for (std::size_t k = 0; k < points.centers.size(); ++k) {
        out += format_double(points.centers[k]);
        out += ',';
        out += format_double(points.means[k]);
        out += ',';
        out += format_double(points.sems[k]);
        out += ',';
        out += format_double(points.smoothed[k]);
        out += ',';
        out += std::to_string(points.counts[k]);
        out += '\n';
    }
    return out;
}

json case_score_json(const stmt::CaseScore& score)
{
    json statements = json::array();
    for (const stmt::StatementScore& entry : score.per_statement) {
        statements.push_back(
            {{"id", entry.id}, {"achieved", entry.achieved}, {"max", entry.max.str()}});
    }
    return json{{"case", score.case_id},
                {"achieved", score.achieved},
                {"max", score.max.str()},
                {"max_value", score.max.to_double()},
                {"failed_count", score.failed_count},
                {"per_statement", std::move(statements)}};
}

json theta_json(const cal::Theta& theta)
{
    json doc = json::object();
    for (int d = 0; d < cal::kDim; ++d) {
        doc[cal::param_names()[d]] = theta[d];
    }
    return doc;
}

cal::Theta theta_from_json(const json& doc)
{
    cal::Theta theta = cal::default_theta();
    if (!doc.is_object()) {
        throw DataError("parameter document must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        theta[cal::param_index(key)] = value.get<double>();
    }
    return theta;
}

json bounds_json(const cal::ParamSpace& space)
{
    json doc = json::object();
    for (int d = 0; d < cal::kDim; ++d) {
        doc[cal::param_names()[d]] = json::array({space.lower[d], space.upper[d]});
    }
    return doc;
}

cal::ParamSpace bounds_from_json(const json& doc)
{
    cal::ParamSpace space;
    if (!doc.is_object()) {
        throw DataError("bounds document must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        const int index = cal::param_index(key);
        if (!value.is_array() || value.size() != 2) {
            throw DataError("bounds." + key + ": expected [lower, upper]");
        }
        space.lower[index] = value.at(0).get<double>();
        space.upper[index] = value.at(1).get<double>();
        if (!(space.lower[index] < space.upper[index])) {
            throw DataError("bounds." + key + ": lower must be below upper");
        }
    }
    return space;
}

json validation_json(const ana::ValidationReport& report)
{
    json cases = json::array();
    for (const stmt::CaseScore& score : report.case_scores) {
        cases.push_back(case_score_json(score));
    }
    return json{{"cases", std::move(cases)},
                {"validation_fraction", report.validation_fraction},
                {"training_fraction", report.training_fraction},
                {"difference", report.difference},
                {"similar", report.similar}};
}

json sensitivity_json(const ana::SensitivityReport& report)
{
    json global = json::array();
    for (const ana::GlobalSensitivity& entry : report.global_by_param) {
        global.push_back({{"param", cal::param_names()[entry.param]},
                          {"ci_width", entry.ci_width},
                          {"samples", entry.sampled_values.size()}});
    }
    json local = json::array();
    for (const ana::LocalSensitivity& entry : report.local_by_param) {
        local.push_back({{"param", cal::param_names()[entry.param]},
                         {"delta_plus", entry.delta_plus},
                         {"delta_minus", entry.delta_minus}});
    }
    json global_rank = json::array();
    for (int param : report.global_ranking) {
        global_rank.push_back(cal::param_names()[param]);
    }
    json local_rank = json::array();
    for (int param : report.local_ranking) {
        local_rank.push_back(cal::param_names()[param]);
    }
    return json{{"global", std::move(global)},
                {"local", std::move(local)},
                {"global_ranking", std::move(global_rank)},
                {"local_ranking", std::move(local_rank)}};
}

json uq_json(const ana::UqResult& result)
{
    json samples = json::array();
    for (const ana::UqSample& sample : result.samples) {
        samples.push_back({{"theta", theta_json(sample.theta)},
                           {"objective", sample.objective},
                           {"weight", sample.weight},
                           {"replacement", sample.replacement_id.empty() ? "none" : sample.replacement_id},
                           {"time_to_replacement", sample.time_to_replacement},
                           {"final_mean_trust", sample.final_mean_trust}});
    }
    return json{{"samples", std::move(samples)},
                {"replacement_frequency", result.replacement_frequency},
                {"mean_time_to_replacement", result.mean_time_to_replacement},
                {"mean_final_trust", result.mean_final_trust}};
}

json baseline_json(const ana::BaselineResult& result)
{
    return json{{"random_scores", result.random_scores},
                {"theta_star_score", result.theta_star_score},
                {"p_value", result.p_value},
                {"significant", result.significant}};
}

json expertise_json(const std::vector<scen::DomainScore>& scores)
{
    json rows = json::array();
    for (const scen::DomainScore& row : scores) {
        rows.push_back({{"domain", row.domain}, {"score", row.score}, {"included", row.included}});
    }
    return json{{"domains", std::move(rows)}};
}

void parse_expertise_csv(const std::string& text, std::vector<std::string>& domains,
                         std::vector<std::vector<int>>& matrix)
{
    domains.clear();
    matrix.clear();
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string field;
        std::vector<std::string> row;
        while (std::getline(fields, field, ',')) {
            row.push_back(field);
        }
        if (row.size() < 2) {
            throw DataError("expertise table row needs a name and at least one entry: " + line);
        }
        std::vector<int> entries;
        bool header = false;
        for (std::size_t k = 1; k < row.size(); ++k) {
            if (row[k] == "0" || row[k] == "1") {
                entries.push_back(row[k] == "1" ? 1 : 0);
            }
            else if (domains.empty() && matrix.empty()) {
                header = true; // a first row of column labels is allowed
                break;
            }
            else {
                throw DataError("expertise table entry must be 0 or 1: '" + row[k] + "'");
            }
        }
        if (header) {
            continue;
        }
        domains.push_back(row[0]);
        matrix.push_back(std::move(entries));
    }
    if (domains.empty()) {
        throw DataError("expertise table holds no domain rows");
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw DataError("cannot read file: " + path);
    }
    std::ostringstream content;
    content << stream.rdbuf();
    return content.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    if (!stream) {
        throw DataError("cannot write file: " + path);
    }
    stream << content;
}

} // namespace ccrm::io
