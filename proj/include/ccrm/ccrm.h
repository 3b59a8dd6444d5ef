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

/*
 * C interface of the criminal-network replacement simulator and its
 * calibration toolkit. All functions return CCRM_OK on success; on failure
 * they return a status code and leave a message readable through
 * ccrm_last_error() (thread-local, valid until the next failing call on the
 * same thread). Strings returned through char** are heap-allocated and must
 * be released with ccrm_string_free().
 *
 * JSON configuration conventions:
 *   params  {"beta":0.5,"kappa":1.0,"gamma":0.3,"tau":0.01,"psi":3,
 *            "phi":1,"zeta":0.75}                      (subset allowed)
 *   bounds  {"beta":[0,1], ...}                        (subset allowed)
 *   every operation accepts "seed" and honors it deterministically.
 */
#ifndef CCRM_CCRM_H
#define CCRM_CCRM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ccrm_status {
    CCRM_OK = 0,
    CCRM_ERR_USAGE = 1,    /* arguments outside a function's contract */
    CCRM_ERR_DATA = 2,     /* malformed or inconsistent input data */
    CCRM_ERR_INTERNAL = 3  /* unexpected failure */
} ccrm_status;

typedef struct ccrm_scenario ccrm_scenario;
typedef struct ccrm_trace ccrm_trace;

const char* ccrm_version(void);
const char* ccrm_last_error(void);
void ccrm_string_free(char* text);

/* ---- scenarios ------------------------------------------------------- */

ccrm_status ccrm_scenario_parse(const char* json_text, ccrm_scenario** out);
ccrm_status ccrm_scenario_builtin(const char* case_id, ccrm_scenario** out);
/* Canonical document form; parse(print(s)) reproduces s byte for byte. */
ccrm_status ccrm_scenario_print(const ccrm_scenario* scenario, char** out_text);
ccrm_status ccrm_scenario_id(const ccrm_scenario* scenario, char** out_text);
void ccrm_scenario_free(ccrm_scenario* scenario);

/* Seeded random split of n items: {"train":[...],"holdout":[...]}. */
ccrm_status ccrm_split_holdout(size_t count, double fraction, uint64_t seed, char** out_json);

/* Expertise table CSV (domain,entry,entry,...) -> per-domain scores JSON. */
ccrm_status ccrm_expertise(const char* table_csv, char** out_json);

/* ---- simulation ------------------------------------------------------ */

ccrm_status ccrm_simulate(const ccrm_scenario* scenario, const char* params_json, uint64_t seed,
                          ccrm_trace** out);
ccrm_status ccrm_trace_to_jsonl(const ccrm_trace* trace, char** out_text);
ccrm_status ccrm_trace_parse_jsonl(const char* text, ccrm_trace** out);
ccrm_status ccrm_trace_events_jsonl(const ccrm_trace* trace, char** out_text);
ccrm_status ccrm_trace_trust_csv(const ccrm_trace* trace, char** out_text);
void ccrm_trace_free(ccrm_trace* trace);

/* kind: "training", "validation" or "both". Returns case-score JSON. */
ccrm_status ccrm_score(const ccrm_scenario* scenario, const ccrm_trace* trace, const char* kind,
                       char** out_json);

/* ---- calibration and analysis ---------------------------------------- */

/*
 * config: {"iterations":3000,"runs":48,"seed":0,"jobs":1,"bounds":{...},
 *          "start":{...},"a_scale":0.1,"c_scale":0.1,"alpha":0.602,
 *          "gamma":0.101,"stability":300,"chains":1}
 * Returns {"optimum":{...},"objective":value,"chains":[...]} plus the full
 * evaluation log as CSV.
 */
ccrm_status ccrm_calibrate(const ccrm_scenario* const* scenarios, size_t count,
                           const char* config_json, char** out_json, char** out_log_csv);

/* config: {"runs":48,"seed":0,"tolerance":0.25}; theta over defaults. */
ccrm_status ccrm_validate(const ccrm_scenario* const* holdout, size_t holdout_count,
                          const ccrm_scenario* const* training, size_t training_count,
                          const char* theta_json, const char* config_json, char** out_json);

/* config: {"samples":40,"runs":8,"seed":0,"jobs":1,"bounds":{...}} */
ccrm_status ccrm_sensitivity(const ccrm_scenario* const* scenarios, size_t count,
                             const char* theta_json, const char* config_json, char** out_json);

/* config: {"samples":200,"runs":4,"seed":0,"frozen":["psi"],"bounds":{...}} */
ccrm_status ccrm_uq(const ccrm_scenario* const* scenarios, size_t count, const char* theta_json,
                    const char* config_json, char** out_json);

/* config: {"models":200,"runs":4,"seed":0,"jobs":1,"bounds":{...}} */
ccrm_status ccrm_baseline(const ccrm_scenario* const* scenarios, size_t count,
                          const char* theta_json, const char* config_json, char** out_json);

/* config: {"grid":33,"span":0.5,"sigma":0.1,"runs":8,"seed":0,"bounds":{...}} */
ccrm_status ccrm_landscape(const ccrm_scenario* const* scenarios, size_t count,
                           const char* theta_json, const char* config_json, char** out_csv);

/* Bin a calibration evaluation log along one parameter. */
ccrm_status ccrm_profile(const char* eval_log_csv, const char* param_name, int bins,
                         const char* bounds_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* CCRM_CCRM_H */
