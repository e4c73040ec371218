/* C interface for algebraic geometry over groups: load finite groups,
 * coefficient embeddings, and equation systems into a session, then run a
 * verb to get a plain-text report.
 *
 * Every function returns the exit-code convention shared with the CLI:
 *   0  success
 *   1  mathematical negative (non-member, inconsistent, disagreement, ...)
 *   2  usage, parse, or input-mismatch error
 *   3  budget exceeded
 * On a nonzero return, agog_session_error() describes the problem.
 */
#ifndef AGOG_H
#define AGOG_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct agog_session agog_session;

agog_session* agog_session_new(void);
void agog_session_free(agog_session* s);

/* role: "group" (the model H), "group2" (second model), "coeff" (G) */
int agog_session_load_group(agog_session* s, const char* role, const char* path);

/* role: "embed" (coeff into group), "embed2" (coeff into group2);
 * the referenced groups must already be loaded */
int agog_session_load_embedding(agog_session* s, const char* role, const char* path);

/* The system's coefficient group is resolved by name against the loaded
 * groups (coeff first, then group, then group2). */
int agog_session_load_system(agog_session* s, const char* path);

int agog_session_set_word(agog_session* s, const char* word);
int agog_session_set_point(agog_session* s, const int* coords, int count);

/* key: "seed", "budget", "cap", "max-len", "workers" */
int agog_session_set_option(agog_session* s, const char* key, long long value);

/* verb: reduce, eval, solve, radical, coordgroup, vclosure, consistency,
 * witness, verify-containment, compare, discrepancy.
 * On return codes 0 and 1, *report receives the report text; release it
 * with agog_buffer_free.  On other codes *report is set to NULL. */
int agog_session_run(agog_session* s, const char* verb, char** report);

/* message for the most recent failing call; empty after a success */
const char* agog_session_error(const agog_session* s);

void agog_buffer_free(char* buf);

#ifdef __cplusplus
}
#endif

#endif /* AGOG_H */
