//! Interannotator agreement over parallel annotations of the same targets.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{Annotation, Sentence};
use crate::hierarchy::{Construal, Dimension, Hierarchy, MAX_DEPTH};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AgreementError {
    #[error("need at least two annotators, got {0}")]
    TooFewAnnotators(usize),
    #[error("item {item} has {got} annotations for {expected} annotators")]
    Arity { item: usize, expected: usize, got: usize },
    #[error("item {item}: `{label}` is not a supersense")]
    UnknownLabel { item: usize, label: String },
    #[error("item {0} has a non-semantic annotation; filter the table first")]
    NonSemantic(usize),
    #[error("no items to compare")]
    Empty,
    #[error("annotator index {0} out of range")]
    Annotator(usize),
    #[error("depth {0} is outside 1..={MAX_DEPTH}")]
    Depth(u8),
}

/// One target and the label each annotator gave it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementItem {
    pub sent_id: String,
    pub token_indices: Vec<usize>,
    pub labels: Vec<Annotation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementTable {
    pub annotators: Vec<String>,
    pub items: Vec<AgreementItem>,
}

/// A target annotated by some annotators but not others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Misalignment {
    pub sent_id: String,
    pub token_indices: Vec<usize>,
    pub missing_from: Vec<String>,
}

impl AgreementTable {
    /// Checks arity and that every construal label is in `h`.
    pub fn new(annotators: Vec<String>, items: Vec<AgreementItem>, h: &Hierarchy) -> Result<Self, AgreementError> {
        if annotators.len() < 2 {
            return Err(AgreementError::TooFewAnnotators(annotators.len()));
        }
        for (i, it) in items.iter().enumerate() {
            if it.labels.len() != annotators.len() {
                return Err(AgreementError::Arity { item: i, expected: annotators.len(), got: it.labels.len() });
            }
            for l in &it.labels {
                if let Annotation::Construal(c) = l {
                    for label in [&c.role, &c.function] {
                        if !h.contains(label) {
                            return Err(AgreementError::UnknownLabel { item: i, label: label.clone() });
                        }
                    }
                }
            }
        }
        Ok(AgreementTable { annotators, items })
    }

    /// Joins one corpus per annotator on sentence id and token indices.
    /// Targets are annotated units (construal or special label); units not
    /// annotated by everyone are returned as misalignments.
    pub fn from_corpora(corpora: &[(String, Vec<Sentence>)], h: &Hierarchy) -> Result<(Self, Vec<Misalignment>), AgreementError> {
        let n = corpora.len();
        if n < 2 {
            return Err(AgreementError::TooFewAnnotators(n));
        }
        let mut order: Vec<(String, Vec<usize>)> = Vec::new();
        let mut cells: HashMap<(String, Vec<usize>), Vec<Option<Annotation>>> = HashMap::new();
        for (a, (_, sentences)) in corpora.iter().enumerate() {
            for s in sentences {
                for e in &s.expressions {
                    let Some(ann) = &e.annotation else { continue };
                    let key = (s.id.clone(), e.token_indices.clone());
                    let row = cells.entry(key.clone()).or_insert_with(|| {
                        order.push(key);
                        vec![None; n]
                    });
                    row[a] = Some(ann.clone());
                }
            }
        }
        let mut items = Vec::new();
        let mut missing = Vec::new();
        for key in order {
            let row = cells.remove(&key).expect("key recorded");
            if row.iter().all(Option::is_some) {
                items.push(AgreementItem { sent_id: key.0, token_indices: key.1, labels: row.into_iter().flatten().collect() });
            } else {
                let missing_from = row
                    .iter()
                    .zip(corpora)
                    .filter(|(l, _)| l.is_none())
                    .map(|(_, (name, _))| name.clone())
                    .collect();
                missing.push(Misalignment { sent_id: key.0, token_indices: key.1, missing_from });
            }
        }
        let names = corpora.iter().map(|(name, _)| name.clone()).collect();
        Ok((AgreementTable::new(names, items, h)?, missing))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Coarsened labels on `dim`, one row per item.
    fn labels<'a>(&self, h: &'a Hierarchy, dim: Dimension, depth: u8) -> Result<Vec<Vec<&'a str>>, AgreementError> {
        if !(1..=MAX_DEPTH).contains(&depth) {
            return Err(AgreementError::Depth(depth));
        }
        self.items
            .iter()
            .enumerate()
            .map(|(i, it)| {
                it.labels
                    .iter()
                    .map(|l| match l {
                        Annotation::Construal(c) => Ok(h.coarsen(c.slot(dim), depth).expect("validated label")),
                        Annotation::Special(_) => Err(AgreementError::NonSemantic(i)),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Keeps only items where every annotator chose a construal.
pub fn filter_semantic(table: &AgreementTable) -> AgreementTable {
    AgreementTable {
        annotators: table.annotators.clone(),
        items: table
            .items
            .iter()
            .filter(|it| it.labels.iter().all(|l| matches!(l, Annotation::Construal(_))))
            .cloned()
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseMatrix {
    pub annotators: Vec<String>,
    /// Percentages; symmetric with 100 on the diagonal.
    pub matrix: Vec<Vec<f64>>,
    /// Mean over unordered pairs.
    pub average: f64,
}

impl PairwiseMatrix {
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for a in &self.annotators {
            write!(out, "\t{a}").unwrap();
        }
        out.push('\n');
        for (a, row) in self.annotators.iter().zip(&self.matrix) {
            out.push_str(a);
            for v in row {
                write!(out, "\t{v:.1}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

/// Exact agreement per annotator pair on coarsened labels.
pub fn pairwise_agreement(table: &AgreementTable, h: &Hierarchy, dim: Dimension, depth: u8) -> Result<PairwiseMatrix, AgreementError> {
    let n = table.annotators.len();
    if n < 2 {
        return Err(AgreementError::TooFewAnnotators(n));
    }
    let rows = table.labels(h, dim, depth)?;
    if rows.is_empty() {
        return Err(AgreementError::Empty);
    }
    let mut matrix = vec![vec![100.0; n]; n];
    let mut sum = 0.0;
    for (a, b) in pairs(n) {
        let same = rows.iter().filter(|r| r[a] == r[b]).count();
        let pct = 100.0 * same as f64 / rows.len() as f64;
        matrix[a][b] = pct;
        matrix[b][a] = pct;
        sum += pct;
    }
    let average = sum / (n * (n - 1) / 2) as f64;
    Ok(PairwiseMatrix { annotators: table.annotators.clone(), matrix, average })
}

/// Cohen's kappa for annotators `a` and `b`, chance from each one's own
/// label distribution. Defined as 1 when chance agreement is 1.
pub fn cohen_kappa(table: &AgreementTable, h: &Hierarchy, a: usize, b: usize, dim: Dimension, depth: u8) -> Result<f64, AgreementError> {
    for x in [a, b] {
        if x >= table.annotators.len() {
            return Err(AgreementError::Annotator(x));
        }
    }
    let rows = table.labels(h, dim, depth)?;
    if rows.is_empty() {
        return Err(AgreementError::Empty);
    }
    let n = rows.len() as f64;
    let mut ma: BTreeMap<&str, usize> = BTreeMap::new();
    let mut mb: BTreeMap<&str, usize> = BTreeMap::new();
    let mut agree = 0;
    for r in &rows {
        *ma.entry(r[a]).or_default() += 1;
        *mb.entry(r[b]).or_default() += 1;
        agree += usize::from(r[a] == r[b]);
    }
    let po = agree as f64 / n;
    let pe: f64 = ma.iter().map(|(l, &c)| c as f64 / n * mb.get(l).copied().unwrap_or(0) as f64 / n).sum();
    if (1.0 - pe).abs() < 1e-12 {
        return Ok(1.0);
    }
    Ok((po - pe) / (1.0 - pe))
}

/// Mean kappa over unordered annotator pairs.
pub fn average_kappa(table: &AgreementTable, h: &Hierarchy, dim: Dimension, depth: u8) -> Result<f64, AgreementError> {
    let n = table.annotators.len();
    if n < 2 {
        return Err(AgreementError::TooFewAnnotators(n));
    }
    let mut sum = 0.0;
    for (a, b) in pairs(n) {
        sum += cohen_kappa(table, h, a, b, dim, depth)?;
    }
    Ok(sum / (n * (n - 1) / 2) as f64)
}

/// Per annotator, the percentage of items where they chose the unique
/// most frequent label. Items without a unique winner count against everyone.
pub fn plurality_agreement(table: &AgreementTable, h: &Hierarchy, dim: Dimension, depth: u8) -> Result<Vec<f64>, AgreementError> {
    let rows = table.labels(h, dim, depth)?;
    if rows.is_empty() {
        return Err(AgreementError::Empty);
    }
    let mut hits = vec![0usize; table.annotators.len()];
    for r in &rows {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for l in r {
            *counts.entry(l).or_default() += 1;
        }
        let top = counts.values().copied().max().unwrap_or(0);
        let mut winners = counts.iter().filter(|(_, &c)| c == top);
        if let (Some((&w, _)), None) = (winners.next(), winners.next()) {
            for (a, l) in r.iter().enumerate() {
                hits[a] += usize::from(*l == w);
            }
        }
    }
    Ok(hits.into_iter().map(|k| 100.0 * k as f64 / rows.len() as f64).collect())
}

/// Label pairs summed over all unordered annotator pairs. Cells are keyed by
/// the unordered label pair, so the matrix view is symmetric and the total
/// equals items times annotator pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairConfusions {
    pub labels: Vec<String>,
    cells: BTreeMap<(String, String), usize>,
}

impl PairConfusions {
    fn key(a: &str, b: &str) -> (String, String) {
        if a <= b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        }
    }

    pub fn get(&self, a: &str, b: &str) -> usize {
        self.cells.get(&Self::key(a, b)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.cells.values().sum()
    }

    /// Disagreeing label pairs, most frequent first.
    pub fn top_disagreements(&self, n: usize) -> Vec<(&str, &str, usize)> {
        let mut v: Vec<(&str, &str, usize)> =
            self.cells.iter().filter(|((a, b), _)| a != b).map(|((a, b), &c)| (a.as_str(), b.as_str(), c)).collect();
        v.sort_by(|x, y| y.2.cmp(&x.2).then(x.0.cmp(y.0)).then(x.1.cmp(y.1)));
        v.truncate(n);
        v
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for l in &self.labels {
            write!(out, "\t{l}").unwrap();
        }
        out.push('\n');
        for a in &self.labels {
            out.push_str(a);
            for b in &self.labels {
                write!(out, "\t{}", self.get(a, b)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

pub fn pair_confusions(table: &AgreementTable, h: &Hierarchy, dim: Dimension, depth: u8) -> Result<PairConfusions, AgreementError> {
    let rows = table.labels(h, dim, depth)?;
    let mut out = PairConfusions::default();
    let mut labels = BTreeSet::new();
    for r in &rows {
        for (a, b) in pairs(r.len()) {
            labels.insert(r[a]);
            labels.insert(r[b]);
            *out.cells.entry(PairConfusions::key(r[a], r[b])).or_default() += 1;
        }
    }
    out.labels = labels.into_iter().map(str::to_string).collect();
    Ok(out)
}

/// Averages by depth, kappas, plurality rates and frequent confusions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub annotators: Vec<String>,
    pub items: usize,
    pub excluded: usize,
    /// `(depth, role average, function average)`, deepest first.
    pub by_depth: Vec<(u8, f64, f64)>,
    pub role_kappa: f64,
    pub function_kappa: f64,
    pub role_plurality: Vec<f64>,
    pub function_plurality: Vec<f64>,
}

impl AgreementReport {
    /// Filters `table` and computes every summary statistic.
    pub fn compute(table: &AgreementTable, h: &Hierarchy) -> Result<AgreementReport, AgreementError> {
        let sem = filter_semantic(table);
        let mut by_depth = Vec::new();
        for d in (1..=MAX_DEPTH).rev() {
            let r = pairwise_agreement(&sem, h, Dimension::Role, d)?;
            let f = pairwise_agreement(&sem, h, Dimension::Function, d)?;
            by_depth.push((d, r.average, f.average));
        }
        Ok(AgreementReport {
            annotators: table.annotators.clone(),
            items: sem.len(),
            excluded: table.len() - sem.len(),
            by_depth,
            role_kappa: average_kappa(&sem, h, Dimension::Role, MAX_DEPTH)?,
            function_kappa: average_kappa(&sem, h, Dimension::Function, MAX_DEPTH)?,
            role_plurality: plurality_agreement(&sem, h, Dimension::Role, MAX_DEPTH)?,
            function_plurality: plurality_agreement(&sem, h, Dimension::Function, MAX_DEPTH)?,
        })
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "Items: {} ({} excluded with non-semantic labels)", self.items, self.excluded).unwrap();
        writeln!(out, "Pairwise agreement (average over pairs)").unwrap();
        writeln!(out, "  depth     role   func").unwrap();
        for (d, r, f) in &self.by_depth {
            writeln!(out, "  {:<7} {r:>6.1} {f:>6.1}", crate::eval::depth_name(*d)).unwrap();
        }
        writeln!(out, "Average kappa: role {:.3}  func {:.3}", self.role_kappa, self.function_kappa).unwrap();
        writeln!(out, "Plurality agreement").unwrap();
        writeln!(out, "  annotator   role   func").unwrap();
        for ((a, r), f) in self.annotators.iter().zip(&self.role_plurality).zip(&self.function_plurality) {
            writeln!(out, "  {a:<9} {r:>6.1} {f:>6.1}").unwrap();
        }
        out
    }
}

/// Convenience for building items from construals in tests and bindings.
pub fn construal_item(sent_id: &str, token_indices: Vec<usize>, labels: Vec<Construal>) -> AgreementItem {
    AgreementItem {
        sent_id: sent_id.to_string(),
        token_indices,
        labels: labels.into_iter().map(Annotation::Construal).collect(),
    }
}
