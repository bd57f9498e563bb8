#ifndef SNACS_H
#define SNACS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SnacsClassifier {
  SNACS_CLASSIFIER_MOST_FREQUENT = 0,
  SNACS_CLASSIFIER_FEATURE_RICH = 1,
} SnacsClassifier;

typedef enum SnacsIdMode {
  SNACS_ID_MODE_PRECISION = 0,
  SNACS_ID_MODE_RECALL = 1,
} SnacsIdMode;

/*
 Result of a call. Zero means success.
 */
typedef enum SnacsStatus {
  SNACS_STATUS_OK = 0,
  SNACS_STATUS_NULL_POINTER = 1,
  SNACS_STATUS_INVALID_UTF8 = 2,
  SNACS_STATUS_INVALID_ARGUMENT = 3,
  SNACS_STATUS_PARSE = 4,
  SNACS_STATUS_IO = 5,
  SNACS_STATUS_MODEL = 6,
  SNACS_STATUS_RESOURCE = 7,
  SNACS_STATUS_TRAINING = 8,
  SNACS_STATUS_EVALUATION = 9,
  SNACS_STATUS_PANIC = 10,
} SnacsStatus;

/*
 Parsed annotated corpus.
 */
typedef struct SnacsCorpus SnacsCorpus;

/*
 Supersense hierarchy.
 */
typedef struct SnacsHierarchy SnacsHierarchy;

/*
 Trained disambiguation model.
 */
typedef struct SnacsModel SnacsModel;

/*
 Loaded WordNet and thesaurus data.
 */
typedef struct SnacsResources SnacsResources;

/*
 Corpus counts, mirroring the `stats` subcommand.
 */
typedef struct SnacsStats {
  size_t documents;
  size_t sentences;
  size_t tokens;
  size_t annotated_targets;
  size_t role_eq_function;
  size_t p_or_pp;
  size_t multiword_units;
  size_t infinitive_to;
  size_t genitive_clitic;
  size_t possessive_pronoun;
  size_t attested_labels;
  size_t unique_roles;
  size_t unique_functions;
  size_t unique_pairs;
  size_t unique_congruent_pairs;
} SnacsStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. Valid until the
 next call into the library on this thread; do not free.
 */
const char *snacs_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void snacs_string_free(char *s);

/*
 Library version as a static string; do not free.
 */
const char *snacs_version(void);

/*
 The built-in supersense hierarchy.
 */
struct SnacsHierarchy *snacs_hierarchy_bundled(void);

/*
 # Safety
 `h` must come from [`snacs_hierarchy_bundled`] or be null.
 */
void snacs_hierarchy_free(struct SnacsHierarchy *h);

/*
 Depth of `label`, 1 for roots.

 # Safety
 Pointers must be valid; `label` NUL-terminated.
 */
enum SnacsStatus snacs_hierarchy_depth(const struct SnacsHierarchy *h,
                                       const char *label,
                                       uint8_t *depth);

/*
 Ancestor of `label` at `depth` (the label itself if it is shallower).
 The result is written to `*coarse` and must be freed with [`snacs_string_free`].

 # Safety
 Pointers must be valid; `label` NUL-terminated.
 */
enum SnacsStatus snacs_hierarchy_coarsen(const struct SnacsHierarchy *h,
                                         const char *label,
                                         uint8_t depth,
                                         char **coarse);

/*
 Parses corpus text.

 # Safety
 `text` must be NUL-terminated; `corpus` must be writable.
 */
enum SnacsStatus snacs_corpus_parse(const char *input, struct SnacsCorpus **corpus);

/*
 Reads and parses a corpus file.

 # Safety
 `path` must be NUL-terminated; `corpus` must be writable.
 */
enum SnacsStatus snacs_corpus_read(const char *path, struct SnacsCorpus **corpus);

/*
 # Safety
 `c` must come from this library or be null.
 */
void snacs_corpus_free(struct SnacsCorpus *c);

/*
 Number of sentences, 0 for null.

 # Safety
 `c` must be valid or null.
 */
size_t snacs_corpus_sentence_count(const struct SnacsCorpus *c);

/*
 # Safety
 Pointers must be valid.
 */
enum SnacsStatus snacs_corpus_stats(const struct SnacsCorpus *c, struct SnacsStats *stats);

/*
 Checks the corpus against the hierarchy. Writes the number of violations
 to `*count` and, if `report` is not null, one violation per line to `*report`.

 # Safety
 Pointers must be valid; `report` may be null.
 */
enum SnacsStatus snacs_corpus_validate(const struct SnacsCorpus *c,
                                       const struct SnacsHierarchy *h,
                                       size_t *count,
                                       char **report);

/*
 Loads lexical resources. Either path may be null to skip that resource.

 # Safety
 Paths must be NUL-terminated or null; `resources` must be writable.
 */
enum SnacsStatus snacs_resources_load(const char *wordnet_dir,
                                      const char *roget_file,
                                      struct SnacsResources **resources);

/*
 # Safety
 `r` must come from this library or be null.
 */
void snacs_resources_free(struct SnacsResources *r);

/*
 Trains a model on `train`. `dev` (for tuning C) and `resources` may be null.

 # Safety
 Handles must be valid or null where allowed; `model` must be writable.
 */
enum SnacsStatus snacs_model_train(enum SnacsClassifier kind,
                                   const struct SnacsCorpus *train,
                                   const struct SnacsCorpus *dev,
                                   const struct SnacsHierarchy *h,
                                   const struct SnacsResources *resources,
                                   uint64_t seed,
                                   struct SnacsModel **model);

/*
 # Safety
 `path` must be NUL-terminated; `model` must be writable.
 */
enum SnacsStatus snacs_model_load(const char *path, struct SnacsModel **model);

/*
 # Safety
 `m` must be valid; `path` NUL-terminated.
 */
enum SnacsStatus snacs_model_save(const struct SnacsModel *m, const char *path);

/*
 # Safety
 `m` must come from this library or be null.
 */
void snacs_model_free(struct SnacsModel *m);

/*
 Labels the targets of `corpus` and writes the predictions table to
 `*predictions`. With `auto_id` false the gold targets are labeled;
 otherwise targets are identified first with the model's lexicons.

 # Safety
 Handles must be valid (`resources` may be null); `predictions` writable.
 */
enum SnacsStatus snacs_model_predict(const struct SnacsModel *m,
                                     const struct SnacsCorpus *corpus,
                                     const struct SnacsResources *resources,
                                     bool auto_id,
                                     enum SnacsIdMode mode,
                                     char **predictions);

/*
 Scores the model on a gold corpus at every depth and writes the report as
 JSON to `*report`.

 # Safety
 Handles must be valid (`resources` may be null); `report` writable.
 */
enum SnacsStatus snacs_model_evaluate(const struct SnacsModel *m,
                                      const struct SnacsCorpus *test,
                                      const struct SnacsHierarchy *h,
                                      const struct SnacsResources *resources,
                                      enum SnacsIdMode mode,
                                      char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SNACS_H */
