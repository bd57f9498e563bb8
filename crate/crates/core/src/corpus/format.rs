//! Reading and writing the 14-column corpus format.
//!
//! Columns 1-10 follow CoNLL-U. Column 11 holds a named-entity tag, column 12
//! the multiword grouping (`<group>:<position>`), column 13 the lexical
//! category on the first token of a unit and column 14 either
//! `p.<Role>|p.<Function>` or one of the special-label codes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{check_structure, Annotation, LexCat, LexicalExpression, Sentence, SpecialLabel, Token};
use crate::hierarchy::Construal;

const COLUMNS: usize = 14;
const LABEL_PREFIX: &str = "p.";

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("sentence {sent_id}: {message}")]
    Invariant { sent_id: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

struct Row {
    line: usize,
    token: Token,
    group: Option<(usize, usize)>,
    lexcat: Option<LexCat>,
    annotation: Option<Annotation>,
}

#[derive(Default)]
struct Block {
    first_line: usize,
    sent_id: Option<String>,
    doc_id: Option<String>,
    rows: Vec<Row>,
}

/// Parses corpus text into sentences. Comments other than `sent_id` and
/// `doc_id` are dropped.
pub fn parse_corpus(input: &str) -> Result<Vec<Sentence>, ParseError> {
    let mut sentences = Vec::new();
    let mut block: Option<Block> = None;

    for (i, raw) in input.split('\n').enumerate() {
        let line = i + 1;
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        if text.trim().is_empty() {
            if let Some(b) = block.take() {
                sentences.push(finish_block(b)?);
            }
            continue;
        }
        let b = block.get_or_insert_with(|| Block { first_line: line, ..Block::default() });
        if let Some(comment) = text.strip_prefix('#') {
            if !b.rows.is_empty() {
                return Err(syntax(line, 1, "comment line inside token rows"));
            }
            if let Some((key, value)) = comment.split_once('=') {
                match key.trim() {
                    "sent_id" => b.sent_id = Some(value.trim().to_string()),
                    "doc_id" => b.doc_id = Some(value.trim().to_string()),
                    _ => {}
                }
            }
            continue;
        }
        let expected = b.rows.len() + 1;
        b.rows.push(parse_row(line, text, expected)?);
    }
    if let Some(b) = block.take() {
        sentences.push(finish_block(b)?);
    }
    Ok(sentences)
}

fn parse_row(line: usize, text: &str, expected_index: usize) -> Result<Row, ParseError> {
    let cols: Vec<&str> = text.split('\t').collect();
    if cols.len() != COLUMNS {
        return Err(syntax(
            line,
            cols.len().min(COLUMNS) + 1,
            format!("expected {COLUMNS} tab-separated columns, found {}", cols.len()),
        ));
    }
    for (c, value) in cols.iter().enumerate() {
        if value.is_empty() {
            return Err(syntax(line, c + 1, "empty column (use `_` for no value)"));
        }
    }
    let index: usize = cols[0]
        .parse()
        .map_err(|_| syntax(line, 1, format!("token id `{}` is not a positive integer", cols[0])))?;
    if index != expected_index {
        return Err(syntax(line, 1, format!("expected token id {expected_index}, found {index}")));
    }
    let head: usize = cols[6]
        .parse()
        .map_err(|_| syntax(line, 7, format!("head `{}` is not an integer", cols[6])))?;

    let group = match cols[11] {
        "_" => None,
        g => {
            let bad = || syntax(line, 12, format!("multiword field `{g}` must look like `<group>:<position>`"));
            let (a, b) = g.split_once(':').ok_or_else(bad)?;
            let group: usize = a.parse().map_err(|_| bad())?;
            let pos: usize = b.parse().map_err(|_| bad())?;
            if group == 0 || pos == 0 {
                return Err(bad());
            }
            Some((group, pos))
        }
    };
    let lexcat = match cols[12] {
        "_" => None,
        lc => Some(lc.parse::<LexCat>().map_err(|m| syntax(line, 13, m))?),
    };
    let annotation = parse_supersense(cols[13]).map_err(|m| syntax(line, 14, m))?;

    let token = Token {
        index,
        form: cols[1].to_string(),
        lemma: cols[2].to_string(),
        upos: cols[3].to_string(),
        xpos: cols[4].to_string(),
        feats: cols[5].to_string(),
        head,
        deprel: cols[7].to_string(),
        deps: cols[8].to_string(),
        misc: cols[9].to_string(),
        ner: (cols[10] != "_").then(|| cols[10].to_string()),
    };
    Ok(Row { line, token, group, lexcat, annotation })
}

fn parse_supersense(field: &str) -> Result<Option<Annotation>, String> {
    if field == "_" {
        return Ok(None);
    }
    if let Some(special) = SpecialLabel::from_code(field) {
        return Ok(Some(Annotation::Special(special)));
    }
    let (role, function) = field
        .split_once('|')
        .ok_or_else(|| format!("supersense `{field}` needs both a role and a function, as `p.Role|p.Function`"))?;
    let strip = |slot: &str, what: &str| -> Result<String, String> {
        match slot.strip_prefix(LABEL_PREFIX) {
            Some(label) if !label.is_empty() && !label.contains('|') => Ok(label.to_string()),
            _ => Err(format!("{what} `{slot}` in `{field}` must be a `p.`-prefixed label")),
        }
    };
    Ok(Some(Annotation::Construal(Construal {
        role: strip(role, "role")?,
        function: strip(function, "function")?,
    })))
}

fn finish_block(block: Block) -> Result<Sentence, ParseError> {
    let sent_id = block
        .sent_id
        .ok_or_else(|| syntax(block.first_line, 1, "sentence is missing a `# sent_id = ...` comment"))?;
    let doc_id = block
        .doc_id
        .ok_or_else(|| syntax(block.first_line, 1, "sentence is missing a `# doc_id = ...` comment"))?;
    if block.rows.is_empty() {
        return Err(syntax(block.first_line, 1, "sentence has no token rows"));
    }

    let mut expressions = Vec::new();
    let mut groups: BTreeMap<usize, Vec<&Row>> = BTreeMap::new();
    for row in &block.rows {
        match row.group {
            Some((g, _)) => groups.entry(g).or_default().push(row),
            None => match (row.lexcat, &row.annotation) {
                (Some(lexcat), annotation) => expressions.push(LexicalExpression {
                    token_indices: vec![row.token.index],
                    lexcat,
                    annotation: annotation.clone(),
                }),
                (None, Some(_)) => {
                    return Err(syntax(row.line, 14, "supersense given on a token without a lexical category"))
                }
                (None, None) => {}
            },
        }
    }
    for (group, rows) in groups {
        if rows.len() < 2 {
            return Err(syntax(rows[0].line, 12, format!("multiword group {group} has a single token")));
        }
        for (expected, row) in rows.iter().enumerate() {
            let (_, pos) = row.group.expect("grouped row");
            if pos != expected + 1 {
                return Err(syntax(
                    row.line,
                    12,
                    format!("group {group}: expected position {}, found {pos}", expected + 1),
                ));
            }
            if expected > 0 && (row.lexcat.is_some() || row.annotation.is_some()) {
                return Err(syntax(
                    row.line,
                    13,
                    format!("group {group}: category and supersense belong on the first token only"),
                ));
            }
        }
        let first = rows[0];
        let lexcat = first
            .lexcat
            .ok_or_else(|| syntax(first.line, 13, format!("group {group} has no lexical category")))?;
        expressions.push(LexicalExpression {
            token_indices: rows.iter().map(|r| r.token.index).collect(),
            lexcat,
            annotation: first.annotation.clone(),
        });
    }
    expressions.sort_by_key(|e| e.token_indices[0]);

    let sentence = Sentence {
        id: sent_id,
        doc_id,
        tokens: block.rows.into_iter().map(|r| r.token).collect(),
        expressions,
    };
    if let Some(v) = check_structure(&sentence).into_iter().next() {
        return Err(ParseError::Invariant { sent_id: sentence.id.clone(), message: v.message });
    }
    Ok(sentence)
}

fn format_annotation(annotation: &Option<Annotation>) -> String {
    match annotation {
        None => "_".to_string(),
        Some(Annotation::Special(s)) => s.code().to_string(),
        Some(Annotation::Construal(c)) => format!("{LABEL_PREFIX}{}|{LABEL_PREFIX}{}", c.role, c.function),
    }
}

/// Writes sentences in canonical form: `sent_id` then `doc_id` comments, token
/// rows, a blank line after each sentence, multiword groups numbered in order
/// of their first token.
pub fn serialize_corpus(sentences: &[Sentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        let _ = writeln!(out, "# sent_id = {}", s.id);
        let _ = writeln!(out, "# doc_id = {}", s.doc_id);

        let mut order: Vec<&LexicalExpression> = s.expressions.iter().collect();
        order.sort_by_key(|e| e.token_indices.first().copied().unwrap_or(0));
        // token index -> (expression, position within it, group number if multiword)
        let mut slot: BTreeMap<usize, (&LexicalExpression, usize, Option<usize>)> = BTreeMap::new();
        let mut next_group = 1;
        for e in order {
            let group = if e.is_multiword() {
                next_group += 1;
                Some(next_group - 1)
            } else {
                None
            };
            for (pos, &t) in e.token_indices.iter().enumerate() {
                slot.insert(t, (e, pos + 1, group));
            }
        }

        for t in &s.tokens {
            let (mwe, lexcat, ss) = match slot.get(&t.index) {
                None => ("_".to_string(), "_".to_string(), "_".to_string()),
                Some((e, pos, group)) => {
                    let mwe = group.map_or("_".to_string(), |g| format!("{g}:{pos}"));
                    if *pos == 1 {
                        (mwe, e.lexcat.as_str().to_string(), format_annotation(&e.annotation))
                    } else {
                        (mwe, "_".to_string(), "_".to_string())
                    }
                }
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                t.index,
                t.form,
                t.lemma,
                t.upos,
                t.xpos,
                t.feats,
                t.head,
                t.deprel,
                t.deps,
                t.misc,
                t.ner.as_deref().unwrap_or("_"),
                mwe,
                lexcat,
                ss
            );
        }
        out.push('\n');
    }
    out
}

pub fn read_corpus_file(path: impl AsRef<Path>) -> Result<Vec<Sentence>, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| ParseError::Io { path: path.display().to_string(), source })?;
    parse_corpus(&text)
}

pub fn write_corpus_file(path: impl AsRef<Path>, sentences: &[Sentence]) -> std::io::Result<()> {
    std::fs::write(path, serialize_corpus(sentences))
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKS_AT: &str = "\
# sent_id = s1
# doc_id = d1
1\tVernon\tVernon\tPROPN\tNNP\t_\t2\tnsubj\t_\t_\tPERSON\t_\t_\t_
2\tworks\twork\tVERB\tVBZ\t_\t0\troot\t_\t_\t_\t_\t_\t_
3\tat\tat\tADP\tIN\t_\t4\tcase\t_\t_\t_\t_\tP\tp.OrgRole|p.Locus
4\tGrunnings\tGrunnings\tPROPN\tNNP\t_\t2\tobl\t_\t_\tORGANIZATION\t_\t_\t_
5\t.\t.\tPUNCT\t.\t_\t2\tpunct\t_\t_\t_\t_\t_\t_

";

    #[test]
    fn parses_construal() {
        let s = parse_corpus(WORKS_AT).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].expressions.len(), 1);
        let e = &s[0].expressions[0];
        assert_eq!(e.token_indices, vec![3]);
        assert_eq!(e.construal(), Some(&Construal::new("OrgRole", "Locus")));
        assert_eq!(s[0].tokens[0].ner.as_deref(), Some("PERSON"));
    }

    #[test]
    fn canonical_roundtrip_is_byte_identical() {
        let s = parse_corpus(WORKS_AT).unwrap();
        assert_eq!(serialize_corpus(&s), WORKS_AT);
    }

    #[test]
    fn empty_input() {
        assert!(parse_corpus("").unwrap().is_empty());
        assert!(parse_corpus("\n\n").unwrap().is_empty());
    }

    #[test]
    fn role_without_function_is_an_error() {
        let bad = WORKS_AT.replace("p.OrgRole|p.Locus", "p.OrgRole|");
        match parse_corpus(&bad).unwrap_err() {
            ParseError::Syntax { line, column, .. } => assert_eq!((line, column), (5, 14)),
            e => panic!("unexpected {e}"),
        }
        let bad = WORKS_AT.replace("p.OrgRole|p.Locus", "p.OrgRole");
        assert!(matches!(parse_corpus(&bad).unwrap_err(), ParseError::Syntax { column: 14, .. }));
    }

    #[test]
    fn missing_sent_id() {
        let bad = WORKS_AT.replace("# sent_id = s1\n", "");
        assert!(matches!(parse_corpus(&bad).unwrap_err(), ParseError::Syntax { line: 1, .. }));
    }

    #[test]
    fn wrong_column_count() {
        let bad = WORKS_AT.replace("\tPERSON\t_\t_\t_", "\tPERSON\t_\t_");
        assert!(matches!(parse_corpus(&bad).unwrap_err(), ParseError::Syntax { line: 3, .. }));
    }

    #[test]
    fn head_out_of_range_is_invariant_error() {
        let bad = WORKS_AT.replace("\t4\tcase\t", "\t9\tcase\t");
        assert!(matches!(parse_corpus(&bad).unwrap_err(), ParseError::Invariant { .. }));
    }

    #[test]
    fn congruent_construal_writes_both_columns() {
        let mut s = parse_corpus(WORKS_AT).unwrap();
        s[0].expressions[0].annotation = Some(Annotation::Construal(Construal::congruent("Locus")));
        assert!(serialize_corpus(&s).contains("\tP\tp.Locus|p.Locus\n"));
    }

    #[test]
    fn multiword_groups_and_special_labels() {
        let text = "\
# sent_id = s2
# doc_id = d1
1\tit\tit\tPRON\tPRP\t_\t3\tnsubj\t_\t_\t_\t_\t_\t_
2\tis\tbe\tAUX\tVBZ\t_\t3\tcop\t_\t_\t_\t_\t_\t_
3\tout\tout\tADP\tIN\t_\t0\troot\t_\t_\t_\t1:1\tPP\tp.Locus|p.Source
4\tof\tof\tADP\tIN\t_\t5\tcase\t_\t_\t_\t1:2\t_\t_
5\treach\treach\tNOUN\tNN\t_\t3\tobl\t_\t_\t_\t1:3\t_\t_
6\tto\tto\tPART\tTO\t_\t7\tmark\t_\t_\t_\t_\tOTHER\t`i
7\tgo\tgo\tVERB\tVB\t_\t3\tadvcl\t_\t_\t_\t_\t_\t_
8\tyour\tyou\tPRON\tPRP$\t_\t9\tnmod:poss\t_\t_\t_\t_\tPRON.POSS\t??
9\tway\tway\tNOUN\tNN\t_\t7\tobj\t_\t_\t_\t_\t_\t_

";
        let s = parse_corpus(text).unwrap();
        let e = &s[0].expressions;
        assert_eq!(e.len(), 3);
        assert_eq!(e[0].token_indices, vec![3, 4, 5]);
        assert_eq!(e[1].special(), Some(SpecialLabel::NonSnacsInf));
        assert_eq!(e[2].special(), Some(SpecialLabel::Unk));
        assert_eq!(serialize_corpus(&s), text);
    }

    #[test]
    fn supersense_on_non_first_group_token() {
        let text = "\
# sent_id = s3
# doc_id = d1
1\tout\tout\tADP\tIN\t_\t0\troot\t_\t_\t_\t1:1\tPP\tp.Locus|p.Locus
2\tof\tof\tADP\tIN\t_\t1\tfixed\t_\t_\t_\t1:2\t_\tp.Locus|p.Locus

";
        assert!(matches!(parse_corpus(text).unwrap_err(), ParseError::Syntax { line: 4, column: 13, .. }));
    }
}
