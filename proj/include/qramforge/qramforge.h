/*
 * Copyright 2026 The qramforge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to qramforge: synthesis of the binary-tree access circuit,
 * resource metrics, sparse simulation and verification.
 *
 * Every fallible call returns a qf_status. On failure the message is
 * available from qf_last_error() (per thread, valid until the next call on
 * that thread). Strings returned through char** out-parameters are owned by
 * the caller and released with qf_string_free().
 */

#ifndef QRAMFORGE_QRAMFORGE_H_
#define QRAMFORGE_QRAMFORGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QRAMFORGE_BUILDING_LIBRARY)
#define QF_API __declspec(dllexport)
#else
#define QF_API __declspec(dllimport)
#endif
#else
#define QF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qf_status {
    QF_OK = 0,
    QF_ERR_INVALID_PARAMETER = 1,
    QF_ERR_RESOURCE_LIMIT = 2,
    QF_ERR_STRUCTURE = 3,
    QF_ERR_SHAPE = 4,
    QF_ERR_SCHEMA = 5,
    QF_ERR_CONFIGURATION = 6,
    QF_ERR_INTERNAL = 7
} qf_status;

typedef enum qf_variant { QF_VARIANT_SEQUENTIAL = 0, QF_VARIANT_FANOUT = 1 } qf_variant;

typedef enum qf_family {
    QF_FAMILY_QRAM = 0,
    QF_FAMILY_LOOKUP = 1,
    QF_FAMILY_ROTATION = 2,
    QF_FAMILY_RANDOM = 3
} qf_family;

typedef enum qf_phase { QF_PHASE_ACCESS = 0, QF_PHASE_DOWN = 1, QF_PHASE_RUN = 2, QF_PHASE_UP = 3 } qf_phase;

/* Opaque handles. */
typedef struct qf_instance qf_instance;
typedef struct qf_circuit qf_circuit;

/*
 * Problem parameters. The family fixes the register shape: qram uses
 * k_z = m, lookup k_z = 0, rotation a 1-qubit result with k_z = m, random
 * the given k (per leaf when k_len == 2^n, otherwise k_uniform for all).
 */
typedef struct qf_instance_params {
    uint32_t n;
    uint32_t m;
    const uint32_t *k;
    size_t k_len;
    uint32_t k_uniform;
    qf_family family;
    uint64_t seed;
    uint32_t declared_depth;
} qf_instance_params;

typedef struct qf_synth_options {
    qf_variant variant;
    uint32_t block_size; /* 0: ceil(sqrt(m)) */
    int include_preparation;
} qf_synth_options;

typedef struct qf_ancilla_counts {
    uint64_t life;
    uint64_t adr;
    uint64_t res;
    uint64_t mem;
    uint64_t total; /* life + adr + res */
} qf_ancilla_counts;

typedef struct qf_metrics {
    uint64_t depth;
    uint64_t width;
    uint64_t moments;
    uint64_t qubits;
    uint64_t gates_x;
    uint64_t gates_cnot;
    uint64_t gates_toffoli;
    uint64_t gates_fredkin;
    uint64_t gates_opaque;
    uint64_t gates_total;
    uint32_t n;
    uint32_t m;
    uint32_t copies_per_node;
    qf_ancilla_counts ancillas;
} qf_metrics;

typedef struct qf_verify_options {
    int exhaustive;         /* nonzero: exhaustive case set, else `cases` random cases */
    size_t cases;           /* random cases, or minimum per address when exhaustive */
    uint64_t seed;
    double fidelity_tolerance;
    double residual_tolerance;
    int check_superposition; /* also run address-superposition linearity */
    size_t superposition_cases;
    int check_variants;      /* also compare sequential against fan-out */
} qf_verify_options;

QF_API const char *qf_version(void);
QF_API const char *qf_last_error(void);
QF_API void qf_string_free(char *text);

QF_API void qf_instance_params_init(qf_instance_params *params);
QF_API void qf_synth_options_init(qf_synth_options *options);
QF_API void qf_verify_options_init(qf_verify_options *options);

/* Closed-form register counts; `k` holds 2^n entries. */
QF_API qf_status qf_ancilla_counts_compute(uint32_t n, uint32_t m, const uint32_t *k, size_t k_len,
                                           qf_ancilla_counts *out);

/* Builds the per-leaf unitaries (small m only). */
QF_API qf_status qf_instance_create(const qf_instance_params *params, qf_instance **out);
/* Instance from a circuit: its embedded matrices, or its recorded family and seed. */
QF_API qf_status qf_instance_from_circuit(const qf_circuit *circuit, qf_instance **out);
QF_API void qf_instance_free(qf_instance *instance);
QF_API qf_status qf_instance_summary(const qf_instance *instance, char **out);

/* Synthesizes one phase from the family's register shape; no matrices needed. */
QF_API qf_status qf_synthesize(const qf_instance_params *params, const qf_synth_options *options, qf_phase phase,
                               qf_circuit **out);
QF_API void qf_circuit_free(qf_circuit *circuit);

QF_API qf_status qf_circuit_metrics(const qf_circuit *circuit, qf_metrics *out);
/* With `instance` non-NULL the matrices are embedded in the document. */
QF_API qf_status qf_circuit_to_json(const qf_circuit *circuit, const qf_instance *instance, char **out);
QF_API qf_status qf_circuit_from_json(const char *text, qf_circuit **out);
QF_API qf_status qf_circuit_to_qasm(const qf_circuit *circuit, char **out);
QF_API qf_status qf_circuit_layout_json(const qf_circuit *circuit, char **out);

/*
 * Runs `circuit` on a basis input (mem may be NULL for all zero). Any of the
 * outputs may be NULL: the full state JSON, the state restricted to the data
 * registers (address, result, mem) and the ancilla residual probability.
 */
QF_API qf_status qf_simulate(const qf_circuit *circuit, const qf_instance *instance, uint64_t address,
                             uint64_t result, const uint64_t *mem, size_t mem_len, char **state_json,
                             char **data_state_json, double *ancilla_residual);

/* Checks the access circuit against the direct oracle. `passed` is set to 1
 * when every selected check passes. */
QF_API qf_status qf_verify(const qf_instance *instance, const qf_synth_options *options,
                           const qf_verify_options *verify, char **report_json, char **report_table, int *passed);

/* Checks a supplied access circuit (for instance one read from a file)
 * against the oracle. With `instance` NULL the unitaries are rebuilt from the
 * circuit's embedded matrices or its recorded family and seed. */
QF_API qf_status qf_verify_circuit(const qf_circuit *circuit, const qf_instance *instance,
                                   const qf_verify_options *verify, char **report_json, char **report_table,
                                   int *passed);

#ifdef __cplusplus
}
#endif

#endif /* QRAMFORGE_QRAMFORGE_H_ */
