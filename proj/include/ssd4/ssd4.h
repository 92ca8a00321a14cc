/* ssd4 -- exact arithmetic for dihedral covers of 2-adic and characteristic-2
 * local fields: Artin-Schreier class reduction over GF(2^n)((z)), the
 * classification of supersimple degree-4 towers, and construction plus
 * verification of their characteristic-0 lift certificates.
 *
 * C interface over the C++ core. All objects are opaque handles owned by the
 * caller and released with the matching _free function. Every fallible call
 * returns an ssd4_status; on failure the thread-local ssd4_last_error() holds
 * a message and ssd4_last_error_position() a byte offset for parse errors.
 * Returned strings are heap-allocated and released with ssd4_string_free.
 */
#ifndef SSD4_H
#define SSD4_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssd4_status {
    SSD4_OK = 0,
    SSD4_ERR_PARSE = 1,
    SSD4_ERR_UNSUPPORTED_FIELD = 2,
    SSD4_ERR_FIELD_MISMATCH = 3,
    SSD4_ERR_VARIABLE_MISMATCH = 4,
    SSD4_ERR_POSITIVE_EXPONENT_PRESENT = 5,
    SSD4_ERR_NO_SOLUTION_IN_FIELD = 6,
    SSD4_ERR_SEARCH_SPACE_TOO_LARGE = 7,
    SSD4_ERR_ZERO_CLASS = 8,
    SSD4_ERR_NOT_D4 = 9,
    SSD4_ERR_DESCENT_FAILED = 10,
    SSD4_ERR_ETA_IS_ONE = 11,
    SSD4_ERR_IDENTITY_FAILED = 12,
    SSD4_ERR_NOT_A_UNIT = 13,
    SSD4_ERR_EVEN_DEGREE_F = 14,
    SSD4_ERR_PRECISION_EXHAUSTED = 15,
    SSD4_ERR_INVALID_ARGUMENT = 16,
    SSD4_ERR_IO = 17,
    SSD4_ERR_INTERNAL = 18
} ssd4_status;

typedef struct ssd4_field ssd4_field;
typedef struct ssd4_poly ssd4_poly;   /* parsed Laurent polynomial over the field */
typedef struct ssd4_class ssd4_class; /* canonical Artin-Schreier class */
typedef struct ssd4_desc ssd4_desc;   /* supersimple description (eta, Q) */
typedef struct ssd4_cert ssd4_cert;   /* lift certificate */

const char* ssd4_version(void);
/* Stable name of a status code, e.g. "NoSolutionInField". */
const char* ssd4_status_name(ssd4_status s);
/* Message of the most recent failure on this thread ("" if none). */
const char* ssd4_last_error(void);
/* Byte offset of the most recent parse failure on this thread, -1 otherwise. */
long ssd4_last_error_position(void);

void ssd4_string_free(char* s);

/* ---- fields ---------------------------------------------------------- */

/* GF(2^n) for n in {1, 2, 3, 4, 8, 16, 32}, with the library's fixed modulus.
 * auto_extend permits operations that hit a trace obstruction to move to
 * GF(2^{2n}) instead of failing. */
ssd4_status ssd4_field_new(unsigned n, int auto_extend, ssd4_field** out);
void ssd4_field_free(ssd4_field* f);
unsigned ssd4_field_degree(const ssd4_field* f);
ssd4_status ssd4_field_modulus(const ssd4_field* f, char** out);

/* ---- polynomial expressions ------------------------------------------ */

/* Grammar: terms joined by '+'; a term is a '*'-product of factors a^k,
 * t^k, v^k, z^k (k any integer for t/v/z), integer literals (mod 2) and
 * parenthesized subexpressions. z may not be mixed with t or v. */
ssd4_status ssd4_poly_parse(const ssd4_field* f, const char* text, ssd4_poly** out);
void ssd4_poly_free(ssd4_poly* p);
ssd4_status ssd4_poly_to_string(const ssd4_poly* p, char** out);

/* ---- Artin-Schreier classes ------------------------------------------ */

/* Canonical reduction. Pure z or t input reduces in its own variable; input
 * involving v (possibly mixed with t via t^-1 = v^-2 - v^-1) reduces in v. */
ssd4_status ssd4_class_reduce(const ssd4_poly* p, ssd4_class** out);
void ssd4_class_free(ssd4_class* c);
ssd4_status ssd4_class_to_string(const ssd4_class* c, char** out);
ssd4_status ssd4_class_is_zero(const ssd4_class* c, int* out);
ssd4_status ssd4_class_pole_order(const ssd4_class* c, long* out);
/* Degree of different of the associated C2-extension (pole order + 1). */
ssd4_status ssd4_class_different_degree(const ssd4_class* c, long* out);
/* Genus of the one-point compactification: (pole order - 1) / 2. */
ssd4_status ssd4_class_genus(const ssd4_class* c, long* out);

/* Trichotomy for classes in v over the fixed tower. */
typedef enum ssd4_galois_kind {
    SSD4_CLASS_TRIVIAL = 0,   /* zero class */
    SSD4_CLASS_GALOIS = 1,    /* fixed by the tower involution */
    SSD4_CLASS_NON_GALOIS = 2 /* dihedral closure of order 8 */
} ssd4_galois_kind;
ssd4_status ssd4_class_galois_test(const ssd4_class* c, ssd4_galois_kind* out);
ssd4_status ssd4_class_is_supersimple(const ssd4_class* c, int* out);

/* ---- classification --------------------------------------------------- */

ssd4_status ssd4_classify(const ssd4_class* c, ssd4_desc** out);
void ssd4_desc_free(ssd4_desc* d);
ssd4_status ssd4_desc_eta(const ssd4_desc* d, char** out);
ssd4_status ssd4_desc_q(const ssd4_desc* d, char** out);
ssd4_status ssd4_desc_degree(const ssd4_desc* d, long* out);
ssd4_status ssd4_desc_different_degree(const ssd4_desc* d, long* out); /* max(4, 2d) */
/* 1 when the eta + 1 classification branch was the one that descended. */
ssd4_status ssd4_desc_used_correction(const ssd4_desc* d, int* out);
/* 1 when classification had to move to GF(2^{2n}). */
ssd4_status ssd4_desc_field_extended(const ssd4_desc* d, int* out);
ssd4_status ssd4_desc_field_degree(const ssd4_desc* d, unsigned* out);

/* ---- lift certificates ------------------------------------------------- */

ssd4_status ssd4_lift(const ssd4_desc* d, unsigned precision_bits, ssd4_cert** out);
void ssd4_cert_free(ssd4_cert* c);
ssd4_status ssd4_cert_to_json(const ssd4_cert* c, char** out);
ssd4_status ssd4_cert_from_json(const char* json_text, ssd4_cert** out);
/* Re-runs every certificate check; *all_ok is 1 iff they all pass.
 * report_json describes each check. */
ssd4_status ssd4_cert_verify(const ssd4_cert* c, int* all_ok, char** report_json);
ssd4_status ssd4_cert_flag(const ssd4_cert* c, const char* flag_name, int* out);
ssd4_status ssd4_cert_genus(const ssd4_cert* c, long* g2, long* g3);
/* Kummer-form branch analysis as a JSON document. */
ssd4_status ssd4_cert_kummer_json(const ssd4_cert* c, char** out);

/* ---- symbolic identity verification ------------------------------------ */

/* m = 0 verifies the small identity (deg Q' <= 1); m >= 1 the general one
 * with fully symbolic coefficients. The report includes the residual. */
ssd4_status ssd4_verify_identity(int m, char** report_json);
/* Number of deletable summands of F (target 'F') or G (target 'G'). */
ssd4_status ssd4_identity_term_count(int small_case, char target, size_t* out);
/* Re-runs the verification with one summand dropped; a sound engine reports
 * holds = false for every such mutation. */
ssd4_status ssd4_verify_identity_mutated(int m, char target, size_t index, char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SSD4_H */
