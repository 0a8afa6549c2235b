/* C interface to the qptau library.
 *
 * All entry points are thread-compatible: distinct sessions may be used
 * from distinct threads. Strings returned through an out-parameter are
 * heap-allocated and must be released with qptau_string_free.
 */
#ifndef QPTAU_H
#define QPTAU_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qptau_status {
    QPTAU_OK = 0,
    QPTAU_CHECK_FAILED = 1,   /* a verified identity did not hold */
    QPTAU_RESONANCE = 2,      /* non-generic parameters (vanishing denominator) */
    QPTAU_BAD_ARGUMENT = 3,
    QPTAU_MODE_ERROR = 4,     /* exact/float scalars mixed */
    QPTAU_POLE = 5,
    QPTAU_REGION = 6,         /* series evaluated outside its region */
    QPTAU_SINGULAR = 7,       /* singular matrix or map step */
    QPTAU_INTERNAL = 99
} qptau_status;

typedef struct qptau_session qptau_session;

/* Creates a session from a JSON configuration object (may be "{}" for the
 * defaults; see the README for the schema). */
qptau_status qptau_session_new(const char* config_json, qptau_session** out);
void qptau_session_free(qptau_session* s);

/* Message of the last error raised through this session. */
const char* qptau_session_last_error(const qptau_session* s);

/* Runs one verification suite: "lemmas", "qspecial", "braiding",
 * "bilinear", "qpvi" or "riemann". On QPTAU_OK or QPTAU_CHECK_FAILED the
 * JSON report is stored in *report_json. */
qptau_status qptau_run_suite(qptau_session* s, const char* suite, char** report_json);

/* Evaluates both tau-function families at t, qt and t/q. */
qptau_status qptau_eval_tau(qptau_session* s, char** values_json);

void qptau_string_free(char* p);

const char* qptau_version(void);

#ifdef __cplusplus
}
#endif

#endif /* QPTAU_H */
