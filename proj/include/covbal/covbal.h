/*
 * covbal C API.
 *
 * Every object is an opaque handle created by a *_analyze_* / *_load_*
 * function and released with the matching *_free. Strings returned by
 * accessors are owned by the handle and stay valid until it is freed.
 * On failure a function returns a non-zero covbal_status, leaves *out NULL,
 * and covbal_last_error() describes the problem (per thread).
 */
#ifndef COVBAL_H
#define COVBAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COVBAL_API __declspec(dllexport)
#else
#define COVBAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum covbal_status {
    COVBAL_OK = 0,
    COVBAL_ERR_IO = 1,       /* file missing or unreadable */
    COVBAL_ERR_PARSE = 2,    /* syntax error; message carries line:column */
    COVBAL_ERR_INVALID = 3,  /* well-formed but semantically invalid input */
    COVBAL_ERR_ARGUMENT = 4, /* NULL where a value is required */
    COVBAL_ERR_INTERNAL = 5
} covbal_status;

typedef enum covbal_verdict {
    COVBAL_BALANCED = 0,
    COVBAL_POSITIVE_IMBALANCE = 1,
    COVBAL_NEGATIVE_IMBALANCE = 2
} covbal_verdict;

typedef struct covbal_block covbal_block;
typedef struct covbal_model covbal_model;
typedef struct covbal_hierarchy covbal_hierarchy;

COVBAL_API const char* covbal_version(void);
COVBAL_API const char* covbal_status_name(covbal_status status);
/* Message for the last failed call on this thread; "" if none. */
COVBAL_API const char* covbal_last_error(void);

/* Block analysis: rules + interface, optionally a model (NULL to use the
 * interface's manual pressure lines). */
COVBAL_API covbal_status covbal_block_analyze_files(const char* rules_path, const char* iface_path,
                                                    const char* model_path, covbal_block** out);
COVBAL_API covbal_status covbal_block_analyze_text(const char* rules_text, const char* iface_text,
                                                   const char* model_text, covbal_block** out);
COVBAL_API void covbal_block_free(covbal_block* block);

COVBAL_API int64_t covbal_block_rule_total(const covbal_block* block);
COVBAL_API int64_t covbal_block_puncture_total(const covbal_block* block);
COVBAL_API int64_t covbal_block_residual(const covbal_block* block);
COVBAL_API covbal_verdict covbal_block_verdict(const covbal_block* block);
COVBAL_API size_t covbal_block_rule_count(const covbal_block* block);
COVBAL_API const char* covbal_block_rule_label(const covbal_block* block, size_t index);
COVBAL_API int64_t covbal_block_rule_delta(const covbal_block* block, size_t index);
COVBAL_API size_t covbal_block_warning_count(const covbal_block* block);
COVBAL_API const char* covbal_block_warning(const covbal_block* block, size_t index);
COVBAL_API size_t covbal_block_uncovered_count(const covbal_block* block);
COVBAL_API const char* covbal_block_uncovered(const covbal_block* block, size_t index);
/* Rule table only. */
COVBAL_API const char* covbal_block_table(const covbal_block* block);
/* Table, punctures, residual and verdict. */
COVBAL_API const char* covbal_block_text(const covbal_block* block);
/* Structured JSON document. */
COVBAL_API const char* covbal_block_json(const covbal_block* block);

/* Puncture pressures of a model against an interface. */
COVBAL_API covbal_status covbal_model_analyze_files(const char* model_path, const char* iface_path,
                                                    covbal_model** out);
COVBAL_API covbal_status covbal_model_analyze_text(const char* model_text, const char* iface_text,
                                                   covbal_model** out);
COVBAL_API void covbal_model_free(covbal_model* model);

COVBAL_API int64_t covbal_model_total(const covbal_model* model);
COVBAL_API size_t covbal_model_puncture_count(const covbal_model* model);
COVBAL_API const char* covbal_model_puncture_name(const covbal_model* model, size_t index);
COVBAL_API int64_t covbal_model_puncture_pressure(const covbal_model* model, size_t index);
COVBAL_API size_t covbal_model_warning_count(const covbal_model* model);
COVBAL_API const char* covbal_model_warning(const covbal_model* model, size_t index);
COVBAL_API const char* covbal_model_text(const covbal_model* model);

/* Hierarchy aggregation. File-backed blocks are resolved relative to
 * base_dir (NULL: current directory) or to the tree file's directory. */
COVBAL_API covbal_status covbal_hierarchy_load_file(const char* tree_path, covbal_hierarchy** out);
COVBAL_API covbal_status covbal_hierarchy_load_text(const char* tree_text, const char* base_dir,
                                                    covbal_hierarchy** out);
COVBAL_API void covbal_hierarchy_free(covbal_hierarchy* tree);

COVBAL_API int64_t covbal_hierarchy_root(const covbal_hierarchy* tree);
COVBAL_API size_t covbal_hierarchy_node_count(const covbal_hierarchy* tree);
COVBAL_API const char* covbal_hierarchy_node_path(const covbal_hierarchy* tree, size_t index);
COVBAL_API int64_t covbal_hierarchy_node_value(const covbal_hierarchy* tree, size_t index);
COVBAL_API size_t covbal_hierarchy_mismatch_count(const covbal_hierarchy* tree);
COVBAL_API const char* covbal_hierarchy_mismatch(const covbal_hierarchy* tree, size_t index);
/* Sign used for reporting a failed cross-check: sign of the root value, or of
 * (computed - expected) at the first mismatch when the root is 0. 0 when all
 * expectations hold. */
COVBAL_API int covbal_hierarchy_mismatch_sign(const covbal_hierarchy* tree);
COVBAL_API const char* covbal_hierarchy_text(const covbal_hierarchy* tree);

#ifdef __cplusplus
}
#endif

#endif /* COVBAL_H */
