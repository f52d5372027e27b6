//! Square documents on disk.
//!
//! The canonical form is a JSON object `{order, width, alphabet?, rows}`
//! whose cells are digit strings, so `"0110"` keeps its leading zero. Input
//! may also be a JSON array of documents, a stream of documents separated by
//! `---` lines, or hand-written CSV:
//!
//! ```text
//! # 3,2
//! 10,22,01
//! "02",11,20
//! 21,00,12
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use updown_core::{Alphabet, CodeWord, Square};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDocument {
    pub order: usize,
    pub width: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,
    pub rows: Vec<Vec<String>>,
}

/// Where in the input a problem was found. Lines and columns count from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Position {
    pub line: usize,
    pub column: Option<usize>,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(c) => write!(f, "line {}, column {c}", self.line),
            None => write!(f, "line {}", self.line),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("{at}: {message}")]
    Syntax { at: Position, message: String },

    /// The document parsed but does not describe a valid square.
    #[error("document {index}: {message}")]
    Invalid { index: usize, message: String },

    #[error("no square documents in input")]
    Empty,
}

impl SquareDocument {
    pub fn from_square(square: &Square) -> Self {
        SquareDocument {
            order: square.order(),
            width: square.width(),
            alphabet: square.alphabet().map(|a| a.to_string()),
            rows: square
                .rows()
                .map(|row| row.iter().map(CodeWord::to_string).collect())
                .collect(),
        }
    }

    /// Checks the declared shape against the cells and builds the square.
    pub fn to_square(&self) -> Result<Square, String> {
        let n = self.order;
        if n == 0 {
            return Err("order must be at least 1".into());
        }
        if self.rows.len() != n {
            return Err(format!(
                "order is {n} but there are {} rows",
                self.rows.len()
            ));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                return Err(format!("row {i} has {} cells, expected {n}", row.len()));
            }
            for (j, cell) in row.iter().enumerate() {
                if cell.chars().count() != self.width {
                    return Err(format!(
                        "cell ({i}, {j}) {cell:?} has {} characters, expected width {}",
                        cell.chars().count(),
                        self.width
                    ));
                }
                let word: CodeWord = cell.parse().map_err(|e| format!("cell ({i}, {j}): {e}"))?;
                cells.push(word);
            }
        }
        let square = Square::new(n, cells).map_err(|e| e.to_string())?;
        match &self.alphabet {
            None => Ok(square),
            Some(a) => {
                let alphabet = Alphabet::parse(a).map_err(|e| e.to_string())?;
                square.with_alphabet(alphabet).map_err(|e| e.to_string())
            }
        }
    }

    /// Pretty JSON with one line per row of cells.
    pub fn to_json(&self) -> String {
        self.to_json_indented("")
    }

    fn to_json_indented(&self, pad: &str) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("strings always serialize");
        let mut out = format!(
            "{pad}{{\n{pad}  \"order\": {},\n{pad}  \"width\": {},\n",
            self.order, self.width
        );
        if let Some(a) = &self.alphabet {
            out.push_str(&format!("{pad}  \"alphabet\": {},\n", quote(a)));
        }
        out.push_str(&format!("{pad}  \"rows\": ["));
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| quote(c)).collect();
            let sep = if i + 1 < self.rows.len() { "," } else { "" };
            out.push_str(&format!("\n{pad}    [{}]{sep}", cells.join(", ")));
        }
        if !self.rows.is_empty() {
            out.push_str(&format!("\n{pad}  "));
        }
        out.push_str(&format!("]\n{pad}}}"));
        out
    }
}

/// Parses every document in `text` and converts each to a square.
pub fn read_squares(text: &str) -> Result<Vec<Square>, DocumentError> {
    parse_documents(text)?
        .iter()
        .enumerate()
        .map(|(index, doc)| {
            doc.to_square()
                .map_err(|message| DocumentError::Invalid { index, message })
        })
        .collect()
}

/// Splits the input on `---` lines and parses each chunk as JSON or CSV.
pub fn parse_documents(text: &str) -> Result<Vec<SquareDocument>, DocumentError> {
    let mut docs = Vec::new();
    for (first_line, chunk) in chunks(text) {
        if chunk.trim().is_empty() {
            continue;
        }
        let trimmed = chunk.trim_start();
        if trimmed.starts_with('{') || trimmed.starts_with('[') {
            docs.extend(parse_json(&chunk, first_line)?);
        } else {
            docs.push(parse_csv(&chunk, first_line)?);
        }
    }
    if docs.is_empty() {
        return Err(DocumentError::Empty);
    }
    Ok(docs)
}

/// Chunks between `---` separator lines, with the 1-based line each starts on.
fn chunks(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 1;
    for (k, line) in text.lines().enumerate() {
        if line.trim_end() == "---" {
            out.push((start, std::mem::take(&mut current)));
            start = k + 2;
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    out.push((start, current));
    out
}

fn parse_json(chunk: &str, first_line: usize) -> Result<Vec<SquareDocument>, DocumentError> {
    let result = if chunk.trim_start().starts_with('[') {
        serde_json::from_str::<Vec<SquareDocument>>(chunk)
    } else {
        serde_json::from_str::<SquareDocument>(chunk).map(|doc| vec![doc])
    };
    result.map_err(|e| DocumentError::Syntax {
        at: Position {
            line: first_line + e.line().saturating_sub(1),
            column: Some(e.column()),
        },
        message: json_message(&e),
    })
}

// serde_json appends " at line L column C"; the position is reported separately.
fn json_message(e: &serde_json::Error) -> String {
    let full = e.to_string();
    match full.rfind(" at line ") {
        Some(k) => full[..k].to_string(),
        None => full,
    }
}

fn parse_csv(chunk: &str, first_line: usize) -> Result<SquareDocument, DocumentError> {
    let syntax = |line: usize, message: String| DocumentError::Syntax {
        at: Position {
            line: first_line + line,
            column: None,
        },
        message,
    };
    let mut lines = chunk
        .lines()
        .enumerate()
        .skip_while(|(_, l)| l.trim().is_empty());
    let (header_at, header) = lines
        .next()
        .ok_or_else(|| syntax(0, "empty CSV document".into()))?;
    let header = header
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| {
            syntax(
                header_at,
                "CSV input must start with a `# order,width` header".into(),
            )
        })?
        .trim();
    // `# order,width` may be followed by a line with the numbers.
    let (dims_at, dims, body_from) = if header.replace(' ', "") == "order,width" {
        let (at, line) = lines
            .next()
            .ok_or_else(|| syntax(header_at + 1, "missing order and width".into()))?;
        (at, line.trim().to_string(), at + 1)
    } else {
        (header_at, header.to_string(), header_at + 1)
    };
    let mut parts = dims.split(',').map(str::trim);
    let mut number = |what: &str| -> Result<usize, DocumentError> {
        parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| syntax(dims_at, format!("header needs an integer {what}")))
    };
    let order = number("order")?;
    let width = number("width")?;

    let body: String = chunk
        .lines()
        .skip(body_from)
        .map(|l| format!("{l}\n"))
        .collect();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize - 1);
            syntax(body_from + line, e.to_string())
        })?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let line = record.position().map_or(0, |p| p.line() as usize - 1);
        let mut row = Vec::with_capacity(record.len());
        for (k, cell) in record.iter().enumerate() {
            if let Some(bad) = cell.chars().find(|c| !c.is_ascii_digit()) {
                return Err(DocumentError::Syntax {
                    at: Position {
                        line: first_line + body_from + line,
                        column: Some(k + 1),
                    },
                    message: format!("cell {cell:?} contains {bad:?}"),
                });
            }
            row.push(cell.to_string());
        }
        rows.push(row);
    }
    Ok(SquareDocument {
        order,
        width,
        alphabet: None,
        rows,
    })
}

/// Writes documents in the `---`-separated text form.
pub fn write_stream<'a>(docs: impl IntoIterator<Item = &'a SquareDocument>) -> String {
    let mut out = String::new();
    for (k, doc) in docs.into_iter().enumerate() {
        if k > 0 {
            out.push_str("---\n");
        }
        out.push_str(&doc.to_json());
        out.push('\n');
    }
    out
}

/// Writes documents as one JSON array.
pub fn write_array(docs: &[SquareDocument]) -> String {
    let items: Vec<String> = docs.iter().map(|d| d.to_json_indented("  ")).collect();
    match items.is_empty() {
        true => "[]\n".into(),
        false => format!("[\n{}\n]\n", items.join(",\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const JSON: &str = r#"{
  "order": 2,
  "width": 4,
  "alphabet": "012",
  "rows": [
    ["0110", "1001"],
    ["1001", "0110"]
  ]
}"#;

    #[test]
    fn json_round_trip_keeps_leading_zeros() {
        let sq = &read_squares(JSON).unwrap()[0];
        assert_eq!(sq.get(0, 0).to_string(), "0110");
        let doc = SquareDocument::from_square(sq);
        assert_eq!(doc.rows[0][0], "0110");
        assert_eq!(doc.alphabet.as_deref(), Some("012"));
        assert_eq!(parse_documents(&doc.to_json()).unwrap()[0], doc);
        assert_eq!(doc.to_json(), JSON);
        let array = write_array(&[doc.clone(), doc.clone()]);
        assert_eq!(parse_documents(&array).unwrap(), vec![doc.clone(), doc]);
    }

    #[test]
    fn arrays_and_streams() {
        let array = format!("[{JSON}, {JSON}]");
        assert_eq!(read_squares(&array).unwrap().len(), 2);
        let stream = format!("{JSON}\n---\n{JSON}\n");
        assert_eq!(read_squares(&stream).unwrap().len(), 2);
        let doc = parse_documents(JSON).unwrap().remove(0);
        assert_eq!(
            write_stream([&doc, &doc]),
            format!("{}\n---\n{}\n", doc.to_json(), doc.to_json())
        );
    }

    #[test]
    fn csv_input() {
        let text = "# 3,2\n10,22,01\n\"02\",11,20\n21, 00 ,12\n";
        let sq = &read_squares(text).unwrap()[0];
        assert_eq!(sq.get(1, 0).to_string(), "02");
        assert_eq!(sq.get(2, 1).to_string(), "00");
        let long = "# order,width\n1,1\n7\n";
        assert_eq!(read_squares(long).unwrap()[0].get(0, 0).to_string(), "7");
    }

    #[test]
    fn diagnostics_carry_positions() {
        let truncated = &JSON[..40];
        match parse_documents(truncated) {
            Err(DocumentError::Syntax { at, .. }) => assert!(at.line >= 3),
            other => panic!("{other:?}"),
        }
        match parse_documents("# 2,1\n1,2\n3,x\n") {
            Err(DocumentError::Syntax { at, .. }) => {
                assert_eq!(
                    at,
                    Position {
                        line: 3,
                        column: Some(2)
                    }
                )
            }
            other => panic!("{other:?}"),
        }
        let second = format!("{JSON}\n---\n{{\"order\": }}\n");
        match parse_documents(&second) {
            Err(DocumentError::Syntax { at, .. }) => assert_eq!(at.line, 11),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_documents("\n \n"),
            Err(DocumentError::Empty)
        ));
        assert!(matches!(
            parse_documents("1,2\n"),
            Err(DocumentError::Syntax { .. })
        ));
    }

    #[test]
    fn shape_errors_name_the_cell() {
        let bad = JSON.replace("\"1001\", \"0110\"", "\"1001\", \"011\"");
        match read_squares(&bad) {
            Err(DocumentError::Invalid { message, .. }) => {
                assert!(message.contains("(1, 1)"), "{message}")
            }
            other => panic!("{other:?}"),
        }
        let outside = JSON.replace("\"012\"", "\"02\"");
        assert!(read_squares(&outside).is_err());
        let unknown = JSON.replace("\"width\"", "\"wide\"");
        assert!(parse_documents(&unknown).is_err());
    }
}
