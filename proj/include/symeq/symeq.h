#ifndef SYMEQ_SYMEQ_H
#define SYMEQ_SYMEQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SYMEQ_API __declspec(dllexport)
#else
#define SYMEQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum symeq_status {
    SYMEQ_OK = 0,
    SYMEQ_E_INVALID_ARGUMENT = 1,
    SYMEQ_E_INVALID_CODEWORD = 2,
    SYMEQ_E_UNDEFINED_DISTANCE = 3,
    SYMEQ_E_OUT_OF_RANGE = 4,
    SYMEQ_E_PARSE = 5,
    SYMEQ_E_IO = 6,
    SYMEQ_E_CONSTRUCTION_FAILED = 7,
    SYMEQ_E_ENUMERATION_CAP = 8,
    SYMEQ_E_NO_WITNESS = 9,
    SYMEQ_E_INVALID_PLAN = 10,
    SYMEQ_E_FRAMING = 11,
    SYMEQ_E_INTERNAL = 100
} symeq_status;

/* Message of the last failure on the calling thread; never NULL. */
SYMEQ_API const char* symeq_last_error(void);
SYMEQ_API const char* symeq_status_name(symeq_status status);

typedef struct symeq_code symeq_code;
typedef struct symeq_text symeq_text;

SYMEQ_API const char* symeq_text_data(const symeq_text* text);
SYMEQ_API size_t symeq_text_size(const symeq_text* text);
SYMEQ_API void symeq_text_free(symeq_text* text);

/* ---- codes ---- */

SYMEQ_API symeq_status symeq_code_read(const char* path, symeq_code** out);
SYMEQ_API symeq_status symeq_code_parse(const char* text, symeq_code** out);
/* symbols holds size * n entries, word after word. id may be NULL. */
SYMEQ_API symeq_status symeq_code_create(int n, int q, size_t size, const uint8_t* symbols,
                                         const char* id, symeq_code** out);
SYMEQ_API void symeq_code_free(symeq_code* code);

SYMEQ_API symeq_status symeq_code_shape(const symeq_code* code, int* n, int* q, size_t* size);
SYMEQ_API const char* symeq_code_id(const symeq_code* code);
SYMEQ_API symeq_status symeq_code_word(const symeq_code* code, size_t index, uint8_t* out);
/* Code file text, preceded by any provenance comments. */
SYMEQ_API symeq_status symeq_code_format(const symeq_code* code, symeq_text** out);
SYMEQ_API symeq_status symeq_code_write(const symeq_code* code, const char* path);

typedef struct symeq_class {
    int bounded_symbol_weight;
    int constant_composition;
    int constant_partition;
    int minimum_symbol_weight;
    int equitable;
    int fpa;
    int injection;
    int permutation;
} symeq_class;

SYMEQ_API symeq_status symeq_code_classify(const symeq_code* code, symeq_class* out);
SYMEQ_API symeq_status symeq_code_min_distance(const symeq_code* code, int* d);
/* e_table receives q entries, E(1..q). capability is 0 when E(q) < d. */
SYMEQ_API symeq_status symeq_code_profile(const symeq_code* code, int d, int* e_table, int* capability);
SYMEQ_API symeq_status symeq_code_windowed_profile(const symeq_code* code, const int* durations,
                                                   size_t count, int* e_table);
SYMEQ_API symeq_status symeq_f_star(int n, int q, int e, int* out);

/* ---- constructions ---- */

typedef enum symeq_build_kind {
    SYMEQ_BUILD_PARTITION = 0,
    SYMEQ_BUILD_INJECTION = 1,
    SYMEQ_BUILD_RS_COSET = 2,
    SYMEQ_BUILD_RS_SUBCODE = 3
} symeq_build_kind;

typedef struct symeq_build_params {
    symeq_build_kind kind;
    int n;                   /* RS kinds: n = q - 1 when 0 */
    int q;
    int d_min;
    size_t size;
    int r;                   /* symbol weight bound, 0 = none */
    const int* partition;    /* PARTITION only */
    size_t partition_len;
    int k;                   /* RS dimension, 0 = n - d_min + 1 */
    uint64_t seed;
    uint64_t budget;         /* 0 = default */
    int relax_partition;
} symeq_build_params;

SYMEQ_API symeq_status symeq_construct(const symeq_build_params* params, symeq_code** out);
SYMEQ_API size_t symeq_table_row_count(void);
SYMEQ_API const char* symeq_table_row_id(size_t index);
/* Table values: n, d, r, q, size, capability. */
SYMEQ_API symeq_status symeq_table_row_info(const char* id, int* n, int* d, int* r, int* q, size_t* size,
                                            int* capability);
SYMEQ_API symeq_status symeq_construct_table_row(const char* id, uint64_t seed, symeq_code** out);

/* ---- simulation ---- */

SYMEQ_API symeq_status symeq_parse_sweep(const char* text, double* values, size_t capacity, size_t* count);

typedef struct symeq_channel_params {
    const double* p;
    size_t p_count;
    double Q;
    const int* durations;    /* NULL: {b*n : b = 1..10} */
    size_t duration_count;
    int aligned_starts;      /* nonzero: every narrowband event starts at slot 0 */
    const int* nb_modes;     /* each 0 or 1; NULL means {1} */
    size_t nb_mode_count;
    uint64_t trials;
    uint64_t seed;
    unsigned threads;
} symeq_channel_params;

SYMEQ_API symeq_status symeq_simulate(const symeq_code* const* codes, size_t count,
                                      const symeq_channel_params* params, symeq_text** csv);

typedef struct symeq_waveform_params {
    const double* esn0_db;
    size_t esn0_count;
    int nb_detect;
    uint64_t trials;
    uint64_t seed;
    unsigned threads;
} symeq_waveform_params;

SYMEQ_API symeq_status symeq_waveform(const symeq_code* const* codes, size_t count,
                                      const symeq_waveform_params* params, symeq_text** csv);
SYMEQ_API symeq_status symeq_average_sigma2(double* out);

/* ---- channel and decoder ---- */

/* slots receives n masks (bit s = symbol s). plan may be NULL. */
SYMEQ_API symeq_status symeq_transmit(const symeq_code* code, size_t index, double p, double Q, uint64_t seed,
                                      uint64_t* slots, symeq_text** plan);
SYMEQ_API symeq_status symeq_apply_plan(const symeq_code* code, size_t index, const char* plan, uint64_t* slots);
/* nb_r > 0 runs narrowband detection with that symbol weight first. */
SYMEQ_API symeq_status symeq_decode(const symeq_code* code, const uint64_t* slots, int nb_r, size_t* chosen,
                                    int* distance, int* tie);

/* ---- verification ---- */

/* budget = {e_N, e_F, e_IMP, e_INS, e_DEL}; cap 0 = default. */
SYMEQ_API symeq_status symeq_verify_theorem1(const symeq_code* code, const int* budget, uint64_t cap,
                                             int* agrees, symeq_text** report);
SYMEQ_API symeq_status symeq_verify_prop1(const symeq_code* better, const symeq_code* worse, int* certified,
                                          symeq_text** report);
SYMEQ_API symeq_status symeq_verify_lemma2(const symeq_code* code, const int* durations, size_t count,
                                           int* equal, symeq_text** report);

#ifdef __cplusplus
}
#endif

#endif
