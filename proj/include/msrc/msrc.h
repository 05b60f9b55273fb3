/*
 * Copyright 2026 The msrc Authors
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
#ifndef MSRC_MSRC_H_
#define MSRC_MSRC_H_

/* C interface to the msrc library: MSR erasure codes with optimal repair
 * bandwidth, plus their small-sub-packetization replicated variant.
 *
 * Symbols are uint16_t field elements (values < q). A node's payload for
 * `stripes` independent codewords is stripes*N symbols laid out stripe by
 * stripe. All functions return MSRC_OK or an error status; the message of
 * the last failure on the calling thread is available from
 * msrc_last_error(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MSRC_BUILDING)
#    define MSRC_API __declspec(dllexport)
#  else
#    define MSRC_API __declspec(dllimport)
#  endif
#else
#  define MSRC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define MSRC_MAX_NODES 256

typedef enum msrc_status {
  MSRC_OK = 0,
  MSRC_E_INVALID_ARGUMENT = 1,
  MSRC_E_NOT_PRIME_POWER = 2,
  MSRC_E_TOO_LARGE = 3,
  MSRC_E_DIVISION_BY_ZERO = 4,
  MSRC_E_DIMENSION_MISMATCH = 5,
  MSRC_E_SINGULAR = 6,
  MSRC_E_OUT_OF_RANGE = 7,
  MSRC_E_ODD_LENGTH = 8,
  MSRC_E_BAD_DEGREE = 9,
  MSRC_E_FIELD_TOO_SMALL = 10,
  MSRC_E_INSUFFICIENT_NODES = 11,
  MSRC_E_BAD_HELPER_SET = 12,
  MSRC_E_INCONSISTENT = 13,
  MSRC_E_INTERNAL = 14,
  MSRC_E_BAD_SYMBOL = 15
} msrc_status;

typedef enum msrc_construction {
  MSRC_C1 = 1,
  MSRC_C2 = 2
} msrc_construction;

typedef enum msrc_corruption {
  MSRC_CORRUPT_NONE = 0,
  /* lambda[m][0] := lambda[0][0] (paired nodes collide) */
  MSRC_CORRUPT_PAIRED = 1,
  /* lambda[0][1] := lambda[0][0] (values within a node collide) */
  MSRC_CORRUPT_WITHIN_NODE = 2
} msrc_corruption;

typedef struct msrc_options {
  uint32_t q;          /* 0 picks the smallest valid field */
  int byte_mode;       /* nonzero: q must be a prime >= 257 */
  int shorten;         /* C1 only: build from (n+1, k+1, d+1) and pin a node */
  int corruption;      /* msrc_corruption, for negative tests only */
} msrc_options;

typedef struct msrc_code msrc_code;

typedef struct msrc_info {
  uint32_t construction;
  uint32_t n, k, d, s, r, w, m;
  uint32_t N;
  uint32_t p, e, q;
  uint32_t primitive;
  int shortened;
  /* cut-set bound on repair download, exact rational */
  int64_t optimal_num, optimal_den;
  /* symbols one repair downloads */
  uint64_t repair_bandwidth;
  /* relative excess over the bound (0 for C1) */
  int64_t epsilon_num, epsilon_den;
} msrc_info;

typedef struct msrc_repair_report {
  uint32_t failed;
  uint32_t helper_count;
  uint32_t helpers[MSRC_MAX_NODES];
  uint64_t downloads[MSRC_MAX_NODES]; /* per helper, for all stripes */
  uint64_t bandwidth;                 /* per stripe */
  int64_t optimal_num, optimal_den;   /* per stripe */
} msrc_repair_report;

typedef struct msrc_verify_report {
  uint64_t lambda_violations;
  uint64_t subsets_total, subsets_checked, subsets_failed;
  int subsets_exhaustive;
  uint64_t factorization_checked, factorization_failed;
  uint64_t identity_checked, identity_failed;
  uint64_t structure_checked, structure_failed;
  uint64_t repairs_total, repairs_checked, repairs_failed;
  int ok;
} msrc_verify_report;

MSRC_API const char* msrc_status_string(msrc_status status);
/* Message of the most recent failure on this thread; empty if none. */
MSRC_API const char* msrc_last_error(void);

/* C1: (n, k, d) with s ignored. C2: (n', k', n'-1) base parameters and
 * replication factor s. */
MSRC_API msrc_status msrc_code_create(msrc_construction construction, uint32_t n, uint32_t k,
                                      uint32_t d, uint32_t s, const msrc_options* options,
                                      msrc_code** out);
MSRC_API void msrc_code_destroy(msrc_code* code);
MSRC_API msrc_status msrc_code_get_info(const msrc_code* code, msrc_info* info);

/* Smallest admissible q for the parameters (see msrc_code_create). */
MSRC_API msrc_status msrc_smallest_valid_q(msrc_construction construction, uint32_t n, uint32_t k,
                                           uint32_t d, uint32_t s, int byte_mode, uint32_t* q);

/* nodes[0..k) hold data on input; nodes[k..n) receive parity. */
MSRC_API msrc_status msrc_encode(const msrc_code* code, size_t stripes, uint16_t* const* nodes);

/* available lists node indices whose payload in `nodes` is valid; every
 * other node is rewritten. Fails with MSRC_E_INCONSISTENT if surplus
 * available nodes disagree with the decoded data. */
MSRC_API msrc_status msrc_reconstruct(const msrc_code* code, size_t stripes,
                                      const uint32_t* available, size_t count,
                                      uint16_t* const* nodes);

/* Rewrites nodes[failed] from helper downloads only. helper_count = 0
 * means every surviving node (the only choice for C2). report may be NULL. */
MSRC_API msrc_status msrc_repair(const msrc_code* code, size_t stripes, uint32_t failed,
                                 const uint32_t* helpers, size_t helper_count,
                                 uint16_t* const* nodes, msrc_repair_report* report);

/* *valid is set to 1 when every stripe satisfies the parity checks. */
MSRC_API msrc_status msrc_check_residual(const msrc_code* code, size_t stripes,
                                         const uint16_t* const* nodes, int* valid);

/* Full property check. log, when non-NULL, receives a summary line and up
 * to a few witness lines, truncated to log_size. */
MSRC_API msrc_status msrc_verify(const msrc_code* code, msrc_verify_report* report, char* log,
                                 size_t log_size);

#ifdef __cplusplus
}
#endif

#endif /* MSRC_MSRC_H_ */
