/* Copyright 2026 The qs3 Authors
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

/* C interface of the qs3 library: construction of 3-quasi-Sasakian
 * manifolds from the built-in catalog or from JSON spec files, numerical
 * verification of their structure and curvature identities at sampled
 * points, and classification by constant horizontal sectional curvature.
 *
 * All functions returning qs3_status leave their outputs untouched on
 * failure; qs3_last_error() then carries a message for the calling thread.
 * Objects are created and released strictly through this interface.
 */

#ifndef QS3_QS3_H_
#define QS3_QS3_H_

#include <stdint.h>

#if defined(_WIN32)
#define QS3_API __declspec(dllexport)
#else
#define QS3_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Zero is success; the rest mirror the library's error conditions. */
typedef enum qs3_status {
  QS3_OK = 0,
  QS3_ERR_INVALID_ARGUMENT = 1,
  QS3_ERR_DIMENSION_MISMATCH = 2,
  QS3_ERR_SINGULAR_EVALUATION = 3,
  QS3_ERR_SINGULAR_SYSTEM = 4,
  QS3_ERR_DOMAIN = 5,
  QS3_ERR_NON_SPD_METRIC = 6,
  QS3_ERR_DEGENERATE_INPUT = 7,
  QS3_ERR_STRUCTURE_DEFECT = 8,
  QS3_ERR_NOT_3QS = 9,
  QS3_ERR_INDETERMINATE_RANK = 10,
  QS3_ERR_INCONSISTENT_RESULT = 11,
  QS3_ERR_BAD_SPEC = 12,
  QS3_ERR_IO = 13,
  QS3_ERR_NULL_POINTER = 98,
  QS3_ERR_INTERNAL = 99
} qs3_status;

typedef struct qs3_manifold qs3_manifold;
typedef struct qs3_report qs3_report;

/* Knobs for one verification run; identical configs on the same library
 * version yield byte-identical report JSON. */
typedef struct qs3_run_config {
  int points;    /* sampled chart points                  (default 16)   */
  int trials;    /* argument draws per check per point    (default 8)    */
  uint64_t seed; /* root of every random stream           (default 42)   */
  double tol;    /* pass bound on normalized residuals    (default 1e-8) */
  int fd_check;  /* nonzero adds difference-quotient rows (default 1)    */
} qs3_run_config;

#define QS3_VERDICT_THREE_C_SASAKIAN 0
#define QS3_VERDICT_THREE_COSYMPLECTIC 1
#define QS3_VERDICT_NON_CONSTANT 2

typedef struct qs3_classification {
  int verdict;    /* one of the QS3_VERDICT_ constants */
  double c;       /* transverse constant from the Reeb brackets */
  double k_value; /* the constant horizontal curvature, when one exists */
  double k_min;   /* extremes over the sampled horizontal sections */
  double k_max;
  int n_planes;   /* sections inspected */
} qs3_classification;

QS3_API const char* qs3_version(void);

/* Message of the most recent failing call on this thread, or "". */
QS3_API const char* qs3_last_error(void);

QS3_API void qs3_run_config_init(qs3_run_config* cfg);

/* Resolves a built-in catalog name ("flat7", "sphere7", "csasakian7:c=4",
 * "product11", ...) first, then the path of a JSON spec file. */
QS3_API qs3_status qs3_manifold_open(const char* name_or_path, qs3_manifold** out);
QS3_API qs3_status qs3_manifold_from_spec_json(const char* json_text, qs3_manifold** out);
QS3_API void qs3_manifold_close(qs3_manifold* m);
QS3_API int qs3_manifold_dim(const qs3_manifold* m);
QS3_API const char* qs3_manifold_name(const qs3_manifold* m);

/* Runs the full check slate.  A report is produced even when checks fail;
 * only configuration or evaluation setup problems return an error. */
QS3_API qs3_status qs3_check(const qs3_manifold* m, const qs3_run_config* cfg, qs3_report** out);
QS3_API int qs3_report_all_passed(const qs3_report* r);
QS3_API int qs3_report_check_count(const qs3_report* r);
QS3_API int qs3_report_failed_count(const qs3_report* r);
/* Serializes the report; free the string with qs3_string_free. */
QS3_API qs3_status qs3_report_to_json(const qs3_report* r, char** out);
QS3_API void qs3_report_free(qs3_report* r);

/* Classifies by constant horizontal sectional curvature from points sampled
 * in the chart (fewer than 8 requested points are topped up to 8).  Evidence
 * contradicting the trichotomy returns QS3_ERR_INCONSISTENT_RESULT.  A tol
 * of zero or below selects the default 1e-6. */
QS3_API qs3_status qs3_classify(const qs3_manifold* m, int points, uint64_t seed, double tol,
                                qs3_classification* out);

/* JSON array of the built-in catalog: [{"name","dim","summary"}, ...]. */
QS3_API qs3_status qs3_catalog_json(char** out);

QS3_API void qs3_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QS3_QS3_H_ */
