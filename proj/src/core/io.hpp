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
#ifndef CCRM_IO_H
#define CCRM_IO_H

#include "core/analysis.hpp"
#include "core/calibrate.hpp"
#include "core/statements.hpp"
#include "core/trace.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ccrm::io {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal form; the same double always prints the same.
std::string format_double(double value);

/// Per-step trust table: step, agent_i, agent_j, trust, social_tag.
std::string trust_csv(const sim::SimulationTrace& trace);

/// One {step, event_type, payload} object per line.
std::string events_jsonl(const sim::SimulationTrace& trace);

/// Full trace (header, per-step snapshots, events), one JSON object per line.
std::string trace_jsonl(const sim::SimulationTrace& trace);
sim::SimulationTrace parse_trace_jsonl(const std::string& text);

std::string eval_log_csv(const std::vector<cal::EvalRecord>& log);
std::vector<cal::EvalRecord> parse_eval_log_csv(const std::string& text);

std::string landscape_csv(const cal::LandscapeSlice& slice);
std::string profile_csv(const ana::ProfilePoints& points);

nlohmann::json case_score_json(const stmt::CaseScore& score);
nlohmann::json theta_json(const cal::Theta& theta);
cal::Theta theta_from_json(const nlohmann::json& doc);
nlohmann::json bounds_json(const cal::ParamSpace& space);
cal::ParamSpace bounds_from_json(const nlohmann::json& doc);
nlohmann::json validation_json(const ana::ValidationReport& report);
nlohmann::json sensitivity_json(const ana::SensitivityReport& report);
nlohmann::json uq_json(const ana::UqResult& result);
nlohmann::json baseline_json(const ana::BaselineResult& result);
nlohmann::json expertise_json(const std::vector<scen::DomainScore>& scores);

/// Domains-by-experts 0/1 table; first column holds the domain name.
void parse_expertise_csv(const std::string& text, std::vector<std::string>& domains,
                         std::vector<std::vector<int>>& matrix);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace ccrm::io

#endif // CCRM_IO_H
