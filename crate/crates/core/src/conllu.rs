//! CoNLL-U reader and writer.
//!
//! Multiword-token ranges (`3-4`) and empty nodes (`5.1`) are skipped. Every
//! sentence must form a single tree: one root, in-range heads, no cycles.

use std::collections::{BTreeMap, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schema::CanonicalLabel;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    /// 1-based position within the sentence.
    pub index: usize,
    pub surface: String,
    /// Always lowercase.
    pub lemma: String,
    pub upos: String,
    /// Empty when the treebank leaves XPOS unset.
    pub xpos: String,
    pub feats: BTreeMap<String, String>,
    /// 0 for the root.
    pub head: usize,
    pub deprel_raw: String,
    pub deprel: CanonicalLabel,
    pub deps: String,
    pub misc: String,
}

impl Token {
    pub fn is_verbal(&self) -> bool {
        self.upos == "VERB" || self.upos == "AUX"
    }

    pub fn is_nominal(&self) -> bool {
        matches!(self.upos.as_str(), "NOUN" | "PROPN" | "PRON" | "NUM")
    }

    /// Past participle: XPOS `VBN`, or when XPOS is absent, `VerbForm=Part` with `Tense=Past`.
    pub fn is_past_participle(&self) -> bool {
        if !self.xpos.is_empty() {
            return self.xpos == "VBN";
        }
        self.feats.get("VerbForm").map(String::as_str) == Some("Part")
            && self.feats.get("Tense").map(String::as_str) == Some("Past")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub doc_id: String,
    pub sent_id: String,
    pub tokens: Vec<Token>,
    pub raw_text: String,
}

impl Sentence {
    /// Token by 1-based index.
    pub fn token(&self, index: usize) -> &Token {
        &self.tokens[index - 1]
    }

    pub fn root(&self) -> Option<&Token> {
        self.tokens.iter().find(|t| t.head == 0)
    }

    /// Children of `index` in token order.
    pub fn children(&self, index: usize) -> impl Iterator<Item = &Token> + '_ {
        self.tokens.iter().filter(move |t| t.head == index)
    }

    pub fn children_with(
        &self,
        index: usize,
        label: CanonicalLabel,
    ) -> impl Iterator<Item = &Token> + '_ {
        self.children(index).filter(move |t| t.deprel == label)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub documents: Vec<(String, Vec<Sentence>)>,
}

impl Corpus {
    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> + '_ {
        self.documents.iter().flat_map(|(_, s)| s.iter())
    }

    pub fn sentence_count(&self) -> usize {
        self.documents.iter().map(|(_, s)| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }
}

struct Block {
    start_line: usize,
    sent_id: Option<String>,
    text: String,
    tokens: Vec<Token>,
}

/// Reads a CoNLL-U stream. Sentences before any `# newdoc id = …` go to `default_doc_id`.
/// Relations are left as [`CanonicalLabel::Other`] until a schema is applied.
pub fn parse_conllu<R: BufRead>(stream: R, default_doc_id: &str) -> Result<Corpus> {
    let mut parser = Parser {
        corpus: Corpus::default(),
        seen_docs: HashSet::new(),
        current_doc: default_doc_id.to_string(),
        sentence_ordinal: 0,
    };
    let mut block: Option<Block> = None;

    for (n, line) in stream.lines().enumerate() {
        let line_no = n + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);

        if line.trim().is_empty() {
            if let Some(b) = block.take() {
                parser.finish(b)?;
            }
            continue;
        }
        let b = block.get_or_insert_with(|| Block {
            start_line: line_no,
            sent_id: None,
            text: String::new(),
            tokens: Vec::new(),
        });
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(rest) = comment.strip_prefix("newdoc") {
                if !b.tokens.is_empty() {
                    return Err(Error::parse(line_no, "`# newdoc` inside a sentence"));
                }
                let id = comment_value(rest, "id").unwrap_or_default();
                let id = if id.is_empty() {
                    format!("{default_doc_id}-{}", parser.corpus.documents.len() + 1)
                } else {
                    id
                };
                parser.start_doc(id, line_no)?;
            } else if let Some(id) = comment_value(comment, "sent_id") {
                b.sent_id = Some(id);
            } else if let Some(text) = comment_value(comment, "text") {
                b.text = text;
            }
            continue;
        }
        if let Some(token) = parse_token_line(line, line_no)? {
            if token.index != b.tokens.len() + 1 {
                return Err(Error::parse(
                    line_no,
                    format!("token id {} out of sequence (expected {})", token.index, b.tokens.len() + 1),
                ));
            }
            b.tokens.push(token);
        }
    }
    if let Some(b) = block.take() {
        parser.finish(b)?;
    }
    Ok(parser.corpus)
}

/// Parses an in-memory CoNLL-U string.
pub fn parse_conllu_str(text: &str, default_doc_id: &str) -> Result<Corpus> {
    parse_conllu(text.as_bytes(), default_doc_id)
}

struct Parser {
    corpus: Corpus,
    seen_docs: HashSet<String>,
    current_doc: String,
    sentence_ordinal: usize,
}

impl Parser {
    fn start_doc(&mut self, id: String, line_no: usize) -> Result<()> {
        if self.current_doc == id {
            return Ok(());
        }
        if self.seen_docs.contains(&id) {
            return Err(Error::parse(line_no, format!("duplicate document id `{id}`")));
        }
        self.current_doc = id;
        Ok(())
    }

    fn finish(&mut self, block: Block) -> Result<()> {
        if block.tokens.is_empty() {
            return Ok(());
        }
        self.sentence_ordinal += 1;
        check_tree(&block.tokens, block.start_line)?;
        let sentence = Sentence {
            doc_id: self.current_doc.clone(),
            sent_id: block
                .sent_id
                .unwrap_or_else(|| format!("s{}", self.sentence_ordinal)),
            tokens: block.tokens,
            raw_text: block.text,
        };
        match self.corpus.documents.last_mut() {
            Some((id, sentences)) if *id == self.current_doc => sentences.push(sentence),
            _ => {
                self.seen_docs.insert(self.current_doc.clone());
                self.corpus
                    .documents
                    .push((self.current_doc.clone(), vec![sentence]));
            }
        }
        Ok(())
    }
}

fn comment_value(comment: &str, key: &str) -> Option<String> {
    let rest = comment.trim().strip_prefix(key)?.trim_start();
    let value = rest.strip_prefix('=')?;
    Some(value.trim().to_string())
}

fn parse_token_line(line: &str, line_no: usize) -> Result<Option<Token>> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(Error::parse(
            line_no,
            format!("expected 10 tab-separated columns, found {}", cols.len()),
        ));
    }
    let id = cols[0];
    if id.contains('-') || id.contains('.') {
        return Ok(None);
    }
    let index: usize = id
        .parse()
        .map_err(|_| Error::parse(line_no, format!("non-integer token id `{id}`")))?;
    if index == 0 {
        return Err(Error::parse(line_no, "token ids start at 1"));
    }
    let head: usize = cols[6]
        .parse()
        .map_err(|_| Error::parse(line_no, format!("non-integer head `{}`", cols[6])))?;
    let surface = cols[1].to_string();
    let lemma = if cols[2] == "_" && cols[1] != "_" {
        cols[1].to_lowercase()
    } else {
        cols[2].to_lowercase()
    };
    Ok(Some(Token {
        index,
        surface,
        lemma,
        upos: blank(cols[3]),
        xpos: blank(cols[4]),
        feats: parse_feats(cols[5], line_no)?,
        head,
        deprel_raw: cols[7].to_string(),
        deprel: CanonicalLabel::Other,
        deps: cols[8].to_string(),
        misc: cols[9].to_string(),
    }))
}

fn blank(col: &str) -> String {
    if col == "_" {
        String::new()
    } else {
        col.to_string()
    }
}

fn parse_feats(col: &str, line_no: usize) -> Result<BTreeMap<String, String>> {
    let mut feats = BTreeMap::new();
    if col == "_" || col.is_empty() {
        return Ok(feats);
    }
    for pair in col.split('|') {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::parse(line_no, format!("malformed feature `{pair}`")))?;
        feats.insert(k.to_string(), v.to_string());
    }
    Ok(feats)
}

fn check_tree(tokens: &[Token], line_no: usize) -> Result<()> {
    let n = tokens.len();
    let mut roots = 0;
    for t in tokens {
        if t.head > n {
            return Err(Error::parse(
                line_no,
                format!("token {} has head {} outside sentence of {n} tokens", t.index, t.head),
            ));
        }
        if t.head == t.index {
            return Err(Error::parse(line_no, format!("token {} is its own head", t.index)));
        }
        if t.head == 0 {
            roots += 1;
        }
    }
    if roots != 1 {
        return Err(Error::parse(
            line_no,
            format!("sentence has {roots} root tokens (expected exactly one)"),
        ));
    }
    // every walk toward the root must terminate within n steps
    for t in tokens {
        let mut cur = t.head;
        let mut steps = 0;
        while cur != 0 {
            steps += 1;
            if steps > n {
                return Err(Error::parse(
                    line_no,
                    format!("cyclic head links through token {}", t.index),
                ));
            }
            cur = tokens[cur - 1].head;
        }
    }
    Ok(())
}

/// Writes `corpus` back out as CoNLL-U, including document, sentence and text comments.
pub fn write_conllu<W: Write>(corpus: &Corpus, mut out: W) -> std::io::Result<()> {
    for (doc_id, sentences) in &corpus.documents {
        writeln!(out, "# newdoc id = {doc_id}")?;
        for s in sentences {
            writeln!(out, "# sent_id = {}", s.sent_id)?;
            if !s.raw_text.is_empty() {
                writeln!(out, "# text = {}", s.raw_text)?;
            }
            for t in &s.tokens {
                let feats = if t.feats.is_empty() {
                    "_".to_string()
                } else {
                    t.feats
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join("|")
                };
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    t.index,
                    t.surface,
                    t.lemma,
                    or_underscore(&t.upos),
                    or_underscore(&t.xpos),
                    feats,
                    t.head,
                    t.deprel_raw,
                    t.deps,
                    t.misc
                )?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

fn or_underscore(s: &str) -> &str {
    if s.is_empty() {
        "_"
    } else {
        s
    }
}
