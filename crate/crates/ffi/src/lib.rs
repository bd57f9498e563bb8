//! C ABI over the `snacs` library.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `_free` function. Every fallible call returns a [`SnacsStatus`];
//! on failure the message is available from [`snacs_last_error`] on the same
//! thread. Strings returned through out-parameters are owned by the caller and
//! released with [`snacs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use snacs::corpus::{parse_corpus, read_corpus_file, validate_corpus, Sentence};
use snacs::disambig::{gold_targets, load_model, save_model, ClassifierKind, Model, TrainConfig};
use snacs::lexres::LexicalResourceBundle;
use snacs::pipeline::{all_depths, evaluate_model, predict_labels, train_model, write_predictions};
use snacs::targetid::{identify_corpus, IdMode, IdOptions};
use snacs::{Hierarchy, RoleOnly};

/// Result of a call. Zero means success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnacsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    Io = 5,
    Model = 6,
    Resource = 7,
    Training = 8,
    Evaluation = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnacsClassifier {
    MostFrequent = 0,
    FeatureRich = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnacsIdMode {
    Precision = 0,
    Recall = 1,
}

/// Supersense hierarchy.
pub struct SnacsHierarchy(Hierarchy);

/// Parsed annotated corpus.
pub struct SnacsCorpus(Vec<Sentence>);

/// Loaded WordNet and thesaurus data.
pub struct SnacsResources(LexicalResourceBundle);

/// Trained disambiguation model.
pub struct SnacsModel(Model);

/// Corpus counts, mirroring the `stats` subcommand.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SnacsStats {
    pub documents: usize,
    pub sentences: usize,
    pub tokens: usize,
    pub annotated_targets: usize,
    pub role_eq_function: usize,
    pub p_or_pp: usize,
    pub multiword_units: usize,
    pub infinitive_to: usize,
    pub genitive_clitic: usize,
    pub possessive_pronoun: usize,
    pub attested_labels: usize,
    pub unique_roles: usize,
    pub unique_functions: usize,
    pub unique_pairs: usize,
    pub unique_congruent_pairs: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SnacsStatus, String);

impl Failure {
    fn new(status: SnacsStatus, message: impl ToString) -> Failure {
        Failure(status, message.to_string())
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn run(f: impl FnOnce() -> Result<(), Failure>) -> SnacsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SnacsStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            SnacsStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(SnacsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure::new(SnacsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(SnacsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::new(SnacsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread; do not free.
#[no_mangle]
pub extern "C" fn snacs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn snacs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn snacs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The built-in supersense hierarchy.
#[no_mangle]
pub extern "C" fn snacs_hierarchy_bundled() -> *mut SnacsHierarchy {
    boxed(SnacsHierarchy(Hierarchy::bundled()))
}

/// # Safety
/// `h` must come from [`snacs_hierarchy_bundled`] or be null.
#[no_mangle]
pub unsafe extern "C" fn snacs_hierarchy_free(h: *mut SnacsHierarchy) {
    release(h)
}

/// Depth of `label`, 1 for roots.
///
/// # Safety
/// Pointers must be valid; `label` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn snacs_hierarchy_depth(h: *const SnacsHierarchy, label: *const c_char, depth: *mut u8) -> SnacsStatus {
    run(|| {
        let h = &borrow(h, "hierarchy")?.0;
        let d = h.depth(text(label, "label")?).map_err(|e| Failure::new(SnacsStatus::InvalidArgument, e))?;
        *out(depth, "depth")? = d;
        Ok(())
    })
}

/// Ancestor of `label` at `depth` (the label itself if it is shallower).
/// The result is written to `*coarse` and must be freed with [`snacs_string_free`].
///
/// # Safety
/// Pointers must be valid; `label` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn snacs_hierarchy_coarsen(
    h: *const SnacsHierarchy,
    label: *const c_char,
    depth: u8,
    coarse: *mut *mut c_char,
) -> SnacsStatus {
    run(|| {
        let h = &borrow(h, "hierarchy")?.0;
        let slot = out(coarse, "coarse")?;
        let c = h.coarsen(text(label, "label")?, depth).map_err(|e| Failure::new(SnacsStatus::InvalidArgument, e))?;
        *slot = to_c(c.to_string());
        Ok(())
    })
}

/// Parses corpus text.
///
/// # Safety
/// `text` must be NUL-terminated; `corpus` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snacs_corpus_parse(input: *const c_char, corpus: *mut *mut SnacsCorpus) -> SnacsStatus {
    run(|| {
        let slot = out(corpus, "corpus")?;
        let sentences = parse_corpus(text(input, "text")?).map_err(|e| Failure::new(SnacsStatus::Parse, e))?;
        *slot = boxed(SnacsCorpus(sentences));
        Ok(())
    })
}

/// Reads and parses a corpus file.
///
/// # Safety
/// `path` must be NUL-terminated; `corpus` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snacs_corpus_read(path: *const c_char, corpus: *mut *mut SnacsCorpus) -> SnacsStatus {
    run(|| {
        let slot = out(corpus, "corpus")?;
        let sentences = read_corpus_file(text(path, "path")?).map_err(|e| {
            let status = if matches!(e, snacs::corpus::ParseError::Io { .. }) { SnacsStatus::Io } else { SnacsStatus::Parse };
            Failure::new(status, e)
        })?;
        *slot = boxed(SnacsCorpus(sentences));
        Ok(())
    })
}

/// # Safety
/// `c` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn snacs_corpus_free(c: *mut SnacsCorpus) {
    release(c)
}

/// Number of sentences, 0 for null.
///
/// # Safety
/// `c` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn snacs_corpus_sentence_count(c: *const SnacsCorpus) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn snacs_corpus_stats(c: *const SnacsCorpus, stats: *mut SnacsStats) -> SnacsStatus {
    run(|| {
        let s = snacs::corpus::corpus_stats(&borrow(c, "corpus")?.0);
        *out(stats, "stats")? = SnacsStats {
            documents: s.documents,
            sentences: s.sentences,
            tokens: s.tokens,
            annotated_targets: s.annotated_targets,
            role_eq_function: s.role_eq_function,
            p_or_pp: s.p_or_pp,
            multiword_units: s.multiword_units,
            infinitive_to: s.infinitive_to,
            genitive_clitic: s.genitive_clitic,
            possessive_pronoun: s.possessive_pronoun,
            attested_labels: s.attested_labels,
            unique_roles: s.unique_roles,
            unique_functions: s.unique_functions,
            unique_pairs: s.unique_pairs,
            unique_congruent_pairs: s.unique_congruent_pairs,
        };
        Ok(())
    })
}

/// Checks the corpus against the hierarchy. Writes the number of violations
/// to `*count` and, if `report` is not null, one violation per line to `*report`.
///
/// # Safety
/// Pointers must be valid; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn snacs_corpus_validate(
    c: *const SnacsCorpus,
    h: *const SnacsHierarchy,
    count: *mut usize,
    report: *mut *mut c_char,
) -> SnacsStatus {
    run(|| {
        let v = validate_corpus(&borrow(c, "corpus")?.0, &borrow(h, "hierarchy")?.0, &RoleOnly::default());
        *out(count, "count")? = v.len();
        if let Some(r) = report.as_mut() {
            *r = to_c(v.iter().map(|x| format!("{x}\n")).collect());
        }
        Ok(())
    })
}

/// Loads lexical resources. Either path may be null to skip that resource.
///
/// # Safety
/// Paths must be NUL-terminated or null; `resources` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snacs_resources_load(
    wordnet_dir: *const c_char,
    roget_file: *const c_char,
    resources: *mut *mut SnacsResources,
) -> SnacsStatus {
    run(|| {
        let slot = out(resources, "resources")?;
        let wn = optional_text(wordnet_dir, "wordnet_dir")?.map(Path::new);
        let rg = optional_text(roget_file, "roget_file")?.map(Path::new);
        let b = LexicalResourceBundle::load(wn, rg).map_err(|e| Failure::new(SnacsStatus::Resource, e))?;
        *slot = boxed(SnacsResources(b));
        Ok(())
    })
}

/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn snacs_resources_free(r: *mut SnacsResources) {
    release(r)
}

fn bundle(r: *const SnacsResources, empty: &LexicalResourceBundle) -> &LexicalResourceBundle {
    // SAFETY: callers pass a valid handle or null.
    unsafe { r.as_ref().map_or(empty, |r| &r.0) }
}

fn check_resources(m: &Model, res: &LexicalResourceBundle) -> Result<(), Failure> {
    if matches!(m.classifier, snacs::disambig::Classifier::Linear(_)) && m.resources != res.flags() {
        return Err(Failure::new(
            SnacsStatus::Resource,
            format!("model was trained with resources {:?} but {:?} were supplied", m.resources, res.flags()),
        ));
    }
    Ok(())
}

/// Trains a model on `train`. `dev` (for tuning C) and `resources` may be null.
///
/// # Safety
/// Handles must be valid or null where allowed; `model` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snacs_model_train(
    kind: SnacsClassifier,
    train: *const SnacsCorpus,
    dev: *const SnacsCorpus,
    h: *const SnacsHierarchy,
    resources: *const SnacsResources,
    seed: u64,
    model: *mut *mut SnacsModel,
) -> SnacsStatus {
    run(|| {
        let slot = out(model, "model")?;
        let train = &borrow(train, "train")?.0;
        let h = &borrow(h, "hierarchy")?.0;
        let dev = dev.as_ref().map(|d| d.0.as_slice());
        let empty = LexicalResourceBundle::empty();
        let res = bundle(resources, &empty);
        let kind = match kind {
            SnacsClassifier::MostFrequent => ClassifierKind::MostFrequent,
            SnacsClassifier::FeatureRich => ClassifierKind::FeatureRich,
        };
        let config = TrainConfig { seed, ..TrainConfig::default() };
        let t = train_model(kind, train, dev, h, res, &config).map_err(|e| Failure::new(SnacsStatus::Training, e))?;
        *slot = boxed(SnacsModel(t.model));
        Ok(())
    })
}

/// # Safety
/// `path` must be NUL-terminated; `model` must be writable.
#[no_mangle]
pub unsafe extern "C" fn snacs_model_load(path: *const c_char, model: *mut *mut SnacsModel) -> SnacsStatus {
    run(|| {
        let slot = out(model, "model")?;
        let m = load_model(Path::new(text(path, "path")?)).map_err(|e| {
            let status = if matches!(e, snacs::disambig::ModelFileError::Io { .. }) { SnacsStatus::Io } else { SnacsStatus::Model };
            Failure::new(status, e)
        })?;
        *slot = boxed(SnacsModel(m));
        Ok(())
    })
}

/// # Safety
/// `m` must be valid; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn snacs_model_save(m: *const SnacsModel, path: *const c_char) -> SnacsStatus {
    run(|| {
        let m = &borrow(m, "model")?.0;
        save_model(m, Path::new(text(path, "path")?)).map_err(|e| Failure::new(SnacsStatus::Io, e))
    })
}

/// # Safety
/// `m` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn snacs_model_free(m: *mut SnacsModel) {
    release(m)
}

/// Labels the targets of `corpus` and writes the predictions table to
/// `*predictions`. With `auto_id` false the gold targets are labeled;
/// otherwise targets are identified first with the model's lexicons.
///
/// # Safety
/// Handles must be valid (`resources` may be null); `predictions` writable.
#[no_mangle]
pub unsafe extern "C" fn snacs_model_predict(
    m: *const SnacsModel,
    corpus: *const SnacsCorpus,
    resources: *const SnacsResources,
    auto_id: bool,
    mode: SnacsIdMode,
    predictions: *mut *mut c_char,
) -> SnacsStatus {
    run(|| {
        let m = &borrow(m, "model")?.0;
        let sentences = &borrow(corpus, "corpus")?.0;
        let slot = out(predictions, "predictions")?;
        let empty = LexicalResourceBundle::empty();
        let res = bundle(resources, &empty);
        check_resources(m, res)?;
        let targets = if auto_id {
            let lex = m
                .lexicons
                .as_ref()
                .ok_or_else(|| Failure::new(SnacsStatus::InvalidArgument, "model carries no target lexicons"))?;
            identify_corpus(sentences, lex, id_options(mode))
        } else {
            gold_targets(sentences)
        };
        let labels = predict_labels(m, sentences, &targets, res);
        *slot = to_c(write_predictions(sentences, &targets, &labels));
        Ok(())
    })
}

fn id_options(mode: SnacsIdMode) -> IdOptions {
    let mode = match mode {
        SnacsIdMode::Precision => IdMode::Precision,
        SnacsIdMode::Recall => IdMode::Recall,
    };
    IdOptions { mode, ..IdOptions::default() }
}

/// Scores the model on a gold corpus at every depth and writes the report as
/// JSON to `*report`.
///
/// # Safety
/// Handles must be valid (`resources` may be null); `report` writable.
#[no_mangle]
pub unsafe extern "C" fn snacs_model_evaluate(
    m: *const SnacsModel,
    test: *const SnacsCorpus,
    h: *const SnacsHierarchy,
    resources: *const SnacsResources,
    mode: SnacsIdMode,
    report: *mut *mut c_char,
) -> SnacsStatus {
    run(|| {
        let m = &borrow(m, "model")?.0;
        let test = &borrow(test, "test")?.0;
        let h = &borrow(h, "hierarchy")?.0;
        let slot = out(report, "report")?;
        let empty = LexicalResourceBundle::empty();
        let res = bundle(resources, &empty);
        check_resources(m, res)?;
        let r = evaluate_model(m, test, h, res, id_options(mode), &all_depths())
            .map_err(|e| Failure::new(SnacsStatus::Evaluation, e))?;
        let json = serde_json::to_string_pretty(&r).map_err(|e| Failure::new(SnacsStatus::Evaluation, e))?;
        *slot = to_c(json);
        Ok(())
    })
}
