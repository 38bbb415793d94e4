/*
 * C API for the gradual information-flow language toolchain.
 *
 * All entry points take program source text and return an owned result
 * handle. Query it with the accessors and release it with gifc_result_free.
 *
 * Status codes: 0 success (a value), 1 blame or NSU error, 2 parse/type
 * error, 3 internal defect (stuck configuration, property violation, fuel
 * exhaustion).
 */

#ifndef GIFC_H
#define GIFC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gifc_result gifc_result;

int gifc_result_status(const gifc_result* r);
/* Primary output line(s): value/type rendering, blame, or report text. */
const char* gifc_result_output(const gifc_result* r);
/* Secondary text: trace when requested, JSON summary for fuzz, else "". */
const char* gifc_result_detail(const gifc_result* r);
void gifc_result_free(gifc_result* r);

/* Typecheck; output is the rendered type. strict_pc rejects omitted
 * pc labels on lambdas and arrow types. */
gifc_result* gifc_check(const char* source, int strict_pc);

/* Cast insertion; output is the cast-calculus term when emit_cc is set,
 * otherwise the rendered type. */
gifc_result* gifc_compile(const char* source, int emit_cc, int strict_pc);

/* Compile and evaluate. input is "true", "false" or NULL (binds the
 * user-input variable); fuel <= 0 selects the default budget; trace
 * captures one line per machine step into the detail text; preserve
 * re-verifies typing after every step. */
gifc_result* gifc_run(const char* source, const char* input, long fuel, int trace, int preserve);

/* Erasure to the fully dynamic language; output is the erased term. */
gifc_result* gifc_erase(const char* source);

/* Compile, erase, and evaluate under the dynamic monitor. */
gifc_result* gifc_run_dyn(const char* source, const char* input, long fuel);

/* Property harness: kind is "safety", "ni" or "gg". out_path (optional)
 * receives a JSON summary; mutate (optional) selects a deliberately broken
 * rule for sanity-checking the suites ("let-no-subst", "prot-no-stamp",
 * "proj-always-blame"). */
gifc_result* gifc_fuzz(const char* kind, unsigned long long seed, int count, int max_depth,
                       double star_bias, const char* out_path, const char* mutate);

const char* gifc_version(void);

#ifdef __cplusplus
}
#endif

#endif /* GIFC_H */
