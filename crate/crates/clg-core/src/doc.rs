//! Span-preserving document model for the XML dialect of the manuals.
//!
//! The parser covers a minimal XML subset: elements, attributes, text, the
//! five predefined entity references, comments and processing instructions
//! (skipped). No namespaces, no DTD, no CDATA. Unknown element names are
//! preserved, never an error. Every node carries its byte span in the
//! input, and every token span maps back to the exact substring it was
//! read from; predefined entity references in text are treated as token
//! separators.
//!
//! Trees are immutable after parse; parsing distinct documents from
//! multiple threads is safe.

use std::collections::BTreeSet;

use thiserror::Error;

/// Byte range in the source plus the 1-based line/column of its start.
/// Columns count characters, not bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextNode {
    /// Exact source substring, entity references unresolved.
    pub raw: String,
    pub span: Span,
}

impl TextNode {
    /// Text with the five predefined entity references resolved.
    pub fn decoded(&self) -> String {
        decode_entities(&self.raw)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Element(Element),
    Text(TextNode),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    /// Attribute values are stored entity-decoded, in document order.
    pub attributes: Vec<(String, String)>,
    pub children: Vec<Node>,
    pub span: Span,
}

impl Element {
    pub fn attribute(&self, name: &str) -> Option<&str> {
        self.attributes
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    /// Structural equality ignoring spans; text compares entity-decoded.
    pub fn structure_eq(&self, other: &Element) -> bool {
        self.name == other.name
            && self.attributes == other.attributes
            && self.children.len() == other.children.len()
            && self
                .children
                .iter()
                .zip(&other.children)
                .all(|(a, b)| match (a, b) {
                    (Node::Element(a), Node::Element(b)) => a.structure_eq(b),
                    (Node::Text(a), Node::Text(b)) => a.decoded() == b.decoded(),
                    _ => false,
                })
    }

    fn write_xml(&self, out: &mut String) {
        out.push('<');
        out.push_str(&self.name);
        for (key, value) in &self.attributes {
            out.push(' ');
            out.push_str(key);
            out.push_str("=\"");
            escape_attr(value, out);
            out.push('"');
        }
        let effectively_empty = self.children.iter().all(|c| match c {
            Node::Text(t) => t.raw.is_empty(),
            Node::Element(_) => false,
        });
        if effectively_empty {
            out.push_str("/>");
            return;
        }
        out.push('>');
        for child in &self.children {
            match child {
                Node::Element(el) => el.write_xml(out),
                Node::Text(t) => out.push_str(&t.raw),
            }
        }
        out.push_str("</");
        out.push_str(&self.name);
        out.push('>');
    }
}

/// One element's direct text content, addressed by its element path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextBlock {
    /// Ancestor element names including the element itself, e.g.
    /// `["action", "step"]`.
    pub element_path: Vec<String>,
    /// Concatenated direct text content (raw source form).
    pub text: String,
    /// From the first to the last direct text child.
    pub span: Span,
    /// (absolute byte offset, entity-masked text) per direct text child.
    runs: Vec<(usize, String)>,
}

impl TextBlock {
    pub fn path_string(&self) -> String {
        self.element_path.join("/")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    Period,
    Exclamation,
    Question,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub terminal: Terminal,
    pub span: Span,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Sentence-boundary configuration: abbreviations whose trailing period
/// never ends a sentence.
#[derive(Debug, Clone)]
pub struct SentenceSplitter {
    abbreviations: BTreeSet<String>,
}

impl Default for SentenceSplitter {
    fn default() -> Self {
        SentenceSplitter::new(["z.B.", "bzw.", "ggf.", "max.", "min."])
    }
}

impl SentenceSplitter {
    pub fn new<I, S>(abbreviations: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        SentenceSplitter {
            abbreviations: abbreviations
                .into_iter()
                .map(|a| a.as_ref().to_lowercase())
                .collect(),
        }
    }

    fn is_abbreviation(&self, candidate: &str) -> bool {
        self.abbreviations.contains(&candidate.to_lowercase())
    }
}

/// A parsed document: the element tree plus the source it was read from.
#[derive(Debug)]
pub struct Document {
    source: String,
    root: Element,
    line_starts: Vec<usize>,
}

impl Document {
    /// Parses well-formed input into an element tree. A UTF-8 BOM is
    /// tolerated. Malformed markup is reported with line and column.
    pub fn parse(input: &str) -> Result<Document, ParseError> {
        let line_starts = line_starts(input);
        let root = Parser {
            src: input,
            pos: 0,
            line_starts: &line_starts,
        }
        .parse_document()?;
        Ok(Document {
            source: input.to_string(),
            root,
            line_starts,
        })
    }

    pub fn root(&self) -> &Element {
        &self.root
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Serializes the tree back to markup. Raw text is emitted as read, so
    /// `parse(to_xml())` reproduces the same structure.
    pub fn to_xml(&self) -> String {
        let mut out = String::new();
        self.root.write_xml(&mut out);
        out.push('\n');
        out
    }

    pub fn span_at(&self, start: usize, end: usize) -> Span {
        let (line, column) = position(&self.source, &self.line_starts, start);
        Span {
            start,
            end,
            line,
            column,
        }
    }

    /// One block per element that directly contains non-whitespace text,
    /// in document order.
    pub fn text_blocks(&self) -> Vec<TextBlock> {
        let mut blocks = Vec::new();
        let mut path = Vec::new();
        self.collect_blocks(&self.root, &mut path, &mut blocks);
        blocks
    }

    fn collect_blocks(
        &self,
        element: &Element,
        path: &mut Vec<String>,
        blocks: &mut Vec<TextBlock>,
    ) {
        path.push(element.name.clone());
        let texts: Vec<&TextNode> = element
            .children
            .iter()
            .filter_map(|c| match c {
                Node::Text(t) => Some(t),
                Node::Element(_) => None,
            })
            .collect();
        if texts.iter().any(|t| !t.raw.trim().is_empty()) {
            let text: String = texts.iter().map(|t| t.raw.as_str()).collect();
            let first = texts.first().unwrap().span;
            let last = texts.last().unwrap().span;
            blocks.push(TextBlock {
                element_path: path.clone(),
                text,
                span: self.span_at(first.start, last.end),
                runs: texts
                    .iter()
                    .map(|t| (t.span.start, mask_entities(&t.raw)))
                    .collect(),
            });
        }
        for child in &element.children {
            if let Node::Element(el) = child {
                self.collect_blocks(el, path, blocks);
            }
        }
        path.pop();
    }

    /// Splits a block into sentences with the default abbreviation list.
    pub fn sentences(&self, block: &TextBlock) -> Vec<Sentence> {
        self.sentences_with(block, &SentenceSplitter::default())
    }

    /// Sentences end at `.`/`!`/`?` followed by whitespace or the end of
    /// the block; abbreviations suppress the split. Trailing text without
    /// terminal punctuation becomes a sentence with [`Terminal::None`].
    pub fn sentences_with(&self, block: &TextBlock, splitter: &SentenceSplitter) -> Vec<Sentence> {
        let mut sentences = Vec::new();
        let mut tokens: Vec<Token> = Vec::new();
        let mut flush =
            |tokens: &mut Vec<Token>, terminal: Terminal, terminal_end: Option<usize>| {
                if tokens.is_empty() {
                    return;
                }
                let start = tokens.first().unwrap().span.start;
                let end = terminal_end.unwrap_or_else(|| tokens.last().unwrap().span.end);
                sentences.push(Sentence {
                    tokens: std::mem::take(tokens),
                    terminal,
                    span: self.span_at(start, end),
                });
            };

        for (base, masked) in &block.runs {
            let mut token_ranges = tokenize_ranges(masked).into_iter().peekable();
            for (offset, ch) in masked.char_indices() {
                while token_ranges
                    .peek()
                    .is_some_and(|&(start, _)| start <= offset)
                {
                    let (start, end) = token_ranges.next().unwrap();
                    tokens.push(Token {
                        surface: masked[start..end].to_string(),
                        span: self.span_at(base + start, base + end),
                    });
                }
                let terminal = match ch {
                    '.' => Terminal::Period,
                    '!' => Terminal::Exclamation,
                    '?' => Terminal::Question,
                    _ => continue,
                };
                let after = offset + ch.len_utf8();
                let boundary = masked[after..]
                    .chars()
                    .next()
                    .is_none_or(char::is_whitespace);
                if !boundary {
                    continue;
                }
                if terminal == Terminal::Period
                    && splitter.is_abbreviation(word_ending_at(masked, after))
                {
                    continue;
                }
                flush(&mut tokens, terminal, Some(base + after));
            }
            for (start, end) in token_ranges {
                tokens.push(Token {
                    surface: masked[start..end].to_string(),
                    span: self.span_at(base + start, base + end),
                });
            }
        }
        flush(&mut tokens, Terminal::None, None);
        sentences
    }
}

/// Splits text into tokens: maximal runs of alphanumeric characters
/// (umlauts and ß are letters), with hyphens kept inside tokens between
/// alphanumerics ("PU-Walze" stays one token). Punctuation is dropped,
/// case preserved. Spans are relative to `text`.
pub fn tokenize(text: &str) -> Vec<Token> {
    let line_starts = line_starts(text);
    tokenize_ranges(text)
        .into_iter()
        .map(|(start, end)| {
            let (line, column) = position(text, &line_starts, start);
            Token {
                surface: text[start..end].to_string(),
                span: Span {
                    start,
                    end,
                    line,
                    column,
                },
            }
        })
        .collect()
}

fn tokenize_ranges(text: &str) -> Vec<(usize, usize)> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut ranges = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].1.is_alphanumeric() {
            i += 1;
            continue;
        }
        let start = chars[i].0;
        let mut j = i + 1;
        while j < chars.len() {
            let c = chars[j].1;
            let hyphen_inside =
                c == '-' && j + 1 < chars.len() && chars[j + 1].1.is_alphanumeric();
            if c.is_alphanumeric() || hyphen_inside {
                j += 1;
            } else {
                break;
            }
        }
        let end = chars.get(j).map_or(text.len(), |&(b, _)| b);
        ranges.push((start, end));
        i = j;
    }
    ranges
}

/// The word (alphanumerics and periods) ending just before `end`, used for
/// abbreviation checks; includes the terminal period itself.
fn word_ending_at(text: &str, end: usize) -> &str {
    let head = &text[..end];
    let start = head
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_alphanumeric() || *c == '.')
        .last()
        .map_or(end, |(i, _)| i);
    &head[start..]
}

fn line_starts(text: &str) -> Vec<usize> {
    let mut starts = vec![0];
    for (i, b) in text.bytes().enumerate() {
        if b == b'\n' {
            starts.push(i + 1);
        }
    }
    starts
}

fn position(text: &str, line_starts: &[usize], byte: usize) -> (usize, usize) {
    let line = line_starts.partition_point(|&s| s <= byte);
    let start = line_starts[line - 1];
    let column = text[start..byte].chars().count() + 1;
    (line, column)
}

const ENTITIES: [(&str, char); 5] = [
    ("lt", '<'),
    ("gt", '>'),
    ("amp", '&'),
    ("apos", '\''),
    ("quot", '"'),
];

fn decode_entities(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut rest = raw;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        let tail = &rest[pos..];
        match entity_at(tail) {
            Some((ch, len)) => {
                out.push(ch);
                rest = &tail[len..];
            }
            None => {
                // Parser validated entities; tolerate stray '&' in
                // hand-built nodes.
                out.push('&');
                rest = &tail[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

/// Replaces each predefined entity reference with spaces of equal byte
/// length, so token offsets stay exact while entities act as separators.
fn mask_entities(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut rest = raw;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        let tail = &rest[pos..];
        match entity_at(tail) {
            Some((_, len)) => {
                out.extend(std::iter::repeat_n(' ', len));
                rest = &tail[len..];
            }
            None => {
                out.push(' ');
                rest = &tail[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

/// Recognizes one of the five predefined references at the start of `s`
/// (which begins with '&'); returns the decoded char and reference length.
fn entity_at(s: &str) -> Option<(char, usize)> {
    for (name, ch) in ENTITIES {
        let reference = format!("&{name};");
        if s.starts_with(&reference) {
            return Some((ch, reference.len()));
        }
    }
    None
}

fn escape_attr(value: &str, out: &mut String) {
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line_starts: &'a [usize],
}

impl<'a> Parser<'a> {
    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = position(self.src, self.line_starts, at);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, prefix: &str) -> bool {
        if self.rest().starts_with(prefix) {
            self.pos += prefix.len();
            true
        } else {
            false
        }
    }

    fn skip_whitespace(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn parse_document(mut self) -> Result<Element, ParseError> {
        self.eat("\u{feff}");
        self.skip_misc()?;
        if self.peek() != Some('<') {
            return Err(self.error(self.pos, "expected root element"));
        }
        let root = self.parse_element()?;
        let at = self.pos;
        self.skip_misc()?;
        match self.peek() {
            Option::None => Ok(root),
            Some('<') => Err(self.error(self.pos, "content after the root element")),
            Some(_) => Err(self.error(at, "text outside the root element")),
        }
    }

    /// Skips whitespace, comments, and processing instructions; rejects
    /// DOCTYPE (outside the supported subset).
    fn skip_misc(&mut self) -> Result<(), ParseError> {
        loop {
            self.skip_whitespace();
            if self.rest().starts_with("<!--") {
                self.skip_comment()?;
            } else if self.rest().starts_with("<?") {
                self.skip_pi()?;
            } else if self.rest().starts_with("<!DOCTYPE") {
                return Err(self.error(self.pos, "DOCTYPE is not supported"));
            } else if self.rest().starts_with("<") && !self.rest().starts_with("</") {
                let after = &self.rest()[1..];
                if after.starts_with('!') {
                    return Err(self.error(self.pos, "unsupported markup declaration"));
                }
                return Ok(());
            } else {
                return Ok(());
            }
        }
    }

    fn skip_comment(&mut self) -> Result<(), ParseError> {
        let at = self.pos;
        self.eat("<!--");
        match self.rest().find("-->") {
            Some(end) => {
                self.pos += end + 3;
                Ok(())
            }
            Option::None => Err(self.error(at, "unterminated comment")),
        }
    }

    fn skip_pi(&mut self) -> Result<(), ParseError> {
        let at = self.pos;
        self.eat("<?");
        match self.rest().find("?>") {
            Some(end) => {
                self.pos += end + 2;
                Ok(())
            }
            Option::None => Err(self.error(at, "unterminated processing instruction")),
        }
    }

    fn parse_name(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => {
                self.bump();
            }
            _ => return Err(self.error(start, "expected a name")),
        }
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':') {
                self.bump();
            } else {
                break;
            }
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn parse_element(&mut self) -> Result<Element, ParseError> {
        let start = self.pos;
        self.bump(); // consumes '<'
        let name = self.parse_name()?;
        let mut attributes: Vec<(String, String)> = Vec::new();

        loop {
            let had_space = self.peek().is_some_and(char::is_whitespace);
            self.skip_whitespace();
            match self.peek() {
                Some('>') | Some('/') => break,
                Some(_) if had_space => {
                    let attr_at = self.pos;
                    let key = self.parse_name()?;
                    self.skip_whitespace();
                    if !self.eat("=") {
                        return Err(self.error(self.pos, format!("expected '=' after attribute {key:?}")));
                    }
                    self.skip_whitespace();
                    let value = self.parse_attr_value()?;
                    if attributes.iter().any(|(k, _)| *k == key) {
                        return Err(self.error(attr_at, format!("duplicate attribute {key:?}")));
                    }
                    attributes.push((key, value));
                }
                Some(c) => {
                    return Err(self.error(self.pos, format!("unexpected {c:?} in tag")));
                }
                Option::None => {
                    return Err(self.error(start, format!("unexpected end of input in <{name}>")));
                }
            }
        }

        if self.eat("/>") {
            let span = self.make_span(start, self.pos);
            let empty_at = self.pos;
            return Ok(Element {
                name,
                attributes,
                children: vec![Node::Text(TextNode {
                    raw: String::new(),
                    span: self.make_span(empty_at, empty_at),
                })],
                span,
            });
        }
        if !self.eat(">") {
            return Err(self.error(self.pos, "expected '>'"));
        }

        let mut children: Vec<Node> = Vec::new();
        let content_start = self.pos;
        loop {
            let text_start = self.pos;
            while let Some(c) = self.peek() {
                match c {
                    '<' => break,
                    '&' => {
                        let at = self.pos;
                        match entity_at(self.rest()) {
                            Some((_, len)) => self.pos += len,
                            Option::None => {
                                return Err(self.error(at, "unknown entity reference"));
                            }
                        }
                    }
                    _ => {
                        self.bump();
                    }
                }
            }
            if self.pos > text_start {
                children.push(Node::Text(TextNode {
                    raw: self.src[text_start..self.pos].to_string(),
                    span: self.make_span(text_start, self.pos),
                }));
            }
            if self.peek().is_none() {
                return Err(self.error(start, format!("unexpected end of input in <{name}>")));
            }
            if self.rest().starts_with("<!--") {
                self.skip_comment()?;
            } else if self.rest().starts_with("<![") {
                return Err(self.error(self.pos, "CDATA sections are not supported"));
            } else if self.rest().starts_with("<!") {
                return Err(self.error(self.pos, "unsupported markup declaration"));
            } else if self.rest().starts_with("<?") {
                self.skip_pi()?;
            } else if self.rest().starts_with("</") {
                let close_at = self.pos;
                self.eat("</");
                let close_name = self.parse_name()?;
                self.skip_whitespace();
                if !self.eat(">") {
                    return Err(self.error(self.pos, "expected '>' in closing tag"));
                }
                if close_name != name {
                    return Err(self.error(
                        close_at,
                        format!("mismatched closing tag: expected </{name}>, found </{close_name}>"),
                    ));
                }
                break;
            } else {
                children.push(Node::Element(self.parse_element()?));
            }
        }

        if children.is_empty() {
            children.push(Node::Text(TextNode {
                raw: String::new(),
                span: self.make_span(content_start, content_start),
            }));
        }
        Ok(Element {
            name,
            attributes,
            children,
            span: self.make_span(start, self.pos),
        })
    }

    fn parse_attr_value(&mut self) -> Result<String, ParseError> {
        let quote = match self.peek() {
            Some(q @ ('"' | '\'')) => q,
            _ => return Err(self.error(self.pos, "expected quoted attribute value")),
        };
        let at = self.pos;
        self.bump();
        let mut value = String::new();
        loop {
            match self.peek() {
                Some(c) if c == quote => {
                    self.bump();
                    return Ok(value);
                }
                Some('<') => {
                    return Err(self.error(self.pos, "'<' in attribute value"));
                }
                Some('&') => match entity_at(self.rest()) {
                    Some((ch, len)) => {
                        value.push(ch);
                        self.pos += len;
                    }
                    Option::None => {
                        return Err(self.error(self.pos, "unknown entity reference"));
                    }
                },
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
                Option::None => {
                    return Err(self.error(at, "unterminated attribute value"));
                }
            }
        }
    }

    fn make_span(&self, start: usize, end: usize) -> Span {
        let (line, column) = position(self.src, self.line_starts, start);
        Span {
            start,
            end,
            line,
            column,
        }
    }
}
