/*
 * melnikov - first-order Melnikov analysis of a piecewise linear Hamiltonian
 * system with a homoclinic loop, under polynomial perturbations.
 *
 * C API over the C++ core: opaque handles, integer status codes, JSON for
 * structured results.  Strings returned through char** are heap-allocated;
 * release them with mel_string_free.  On any nonzero status the thread-local
 * message from mel_last_error() describes the failure.
 */
#ifndef MELNIKOV_H
#define MELNIKOV_H

#include <stdint.h>

#if defined(_WIN32)
#define MEL_API __declspec(dllexport)
#elif defined(__GNUC__)
#define MEL_API __attribute__((visibility("default")))
#else
#define MEL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define MEL_OK 0
#define MEL_ERR_INVALID_ARGUMENT 1 /* null pointer, bad enum value, bad range */
#define MEL_ERR_PARSE 2            /* malformed JSON or rational string */
#define MEL_ERR_DOMAIN 3           /* argument outside the mathematical domain */
#define MEL_ERR_NUMERIC 4          /* quadrature/integrator/scan failure */
#define MEL_ERR_INTERNAL 5

typedef struct mel_spec mel_spec;               /* perturbation coefficients */
typedef struct mel_closed_form mel_closed_form; /* exact (f, g) pair */

MEL_API const char* mel_version(void);

/* Thread-local description of the most recent failure in this thread. */
MEL_API const char* mel_last_error(void);

MEL_API void mel_string_free(char* s);

/* --- Perturbation specs ------------------------------------------------- */

/* schema: {"n": int, "plus": {"p": {"i,j": "rat"}, "q": {...}},
 *          "minus": {"p": {...}, "q": {...}}}; unknown keys rejected. */
MEL_API int32_t mel_spec_parse(const char* json_text, mel_spec** out);
MEL_API int32_t mel_spec_to_json(const mel_spec* spec, char** out_json);
MEL_API int32_t mel_spec_degree(const mel_spec* spec, int32_t* out_n);
MEL_API void mel_spec_free(mel_spec* spec);

/* Dense random spec with small rational coefficients (sweep driver). */
MEL_API int32_t mel_spec_random(int32_t n, uint64_t seed, mel_spec** out);

/* --- Closed form and evaluation ----------------------------------------- */

MEL_API int32_t mel_closed_form_build(const mel_spec* spec, mel_closed_form** out);
MEL_API int32_t mel_closed_form_to_json(const mel_closed_form* cf, char** out_json);
MEL_API void mel_closed_form_free(mel_closed_form* cf);

/* Mbar(h), 0 < h < 1, from the closed form. */
MEL_API int32_t mel_eval(const mel_closed_form* cf, double h, double* out_value);

/* Independent line-integral oracle at absolute tolerance abs_tol. */
MEL_API int32_t mel_eval_oracle(const mel_spec* spec, double h, double abs_tol, double* out_value);

/* --- Expansions ---------------------------------------------------------- */

/* JSON list of {power, log_power, coeff} records, exact coefficients. */
MEL_API int32_t mel_expand_homoclinic(const mel_closed_form* cf, int32_t order, char** out_json);
MEL_API int32_t mel_expand_hopf(const mel_closed_form* cf, int32_t order, char** out_json);

/* --- Zeros and bounds ----------------------------------------------------- */

MEL_API int32_t mel_count_zeros(const mel_closed_form* cf, double h_min, double h_max, int32_t grid,
                        double tol, char** out_json);
MEL_API int32_t mel_bound_certificate(const mel_closed_form* cf, char** out_json);
MEL_API int32_t mel_zmax(int32_t n, int32_t* out_lower, int32_t* out_upper);

/* --- Constructions and rank certificates --------------------------------- */

/* kind: "hopf" | "homoclinic"; t_rational e.g. "1/20" or "0.05". */
MEL_API int32_t mel_construct(const char* kind, int32_t n, const char* t_rational, char** out_json);

/* which: "tilde-a1" (needs mu_variant "paper-mu"|"taylor-mu"), "appendix-n7",
 * "hopf-jacobian", "homoclinic-jacobian". */
MEL_API int32_t mel_rank_certificate(const char* which, int32_t n, const char* mu_variant,
                             char** out_json);

/* --- Simulation ----------------------------------------------------------- */

/* config: {"epsilon": num, "h_min": num, "h_max": num, "grid": int,
 *          "step_tol": num?, "event_tol": num?, "fixed_step": num?} */
MEL_API int32_t mel_simulate_cycles(const mel_spec* spec, const char* config_json, char** out_json);

/* Single revolution of the return map from y0 in (-1,0); out = [y1, crossings]. */
MEL_API int32_t mel_return_map(const mel_spec* spec, const char* config_json, double y0, double* out_y1,
                       int32_t* out_crossings);

/* One revolution with a dense (t,x,y) trace, returned as CSV text. */
MEL_API int32_t mel_trace_orbit(const mel_spec* spec, const char* config_json, double y0, char** out_csv);

/* --- Reproduction suites --------------------------------------------------- */

/* which: "1.1" | "1.2" | "1.3" | "appendix".  *out_ok = 1 iff all rows pass. */
MEL_API int32_t mel_reproduce(const char* which, uint64_t seed, char** out_json, int32_t* out_ok);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MELNIKOV_H */
