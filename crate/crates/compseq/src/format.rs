//! Text formats: one sequence per line, matrices as rows, blank lines
//! between matrices, `#` to end of line is a comment.

use std::fmt::Write as _;
use std::path::Path;

use compseq_core::{Error, Seq, SeqMatrix};

use crate::CliError;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Non-empty lines, each parsed as a sequence.
pub fn parse_sequences(text: &str) -> Result<Vec<Seq>, Error> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !strip_comment(l).is_empty())
        .map(|(i, l)| strip_comment(l).parse::<Seq>().map_err(|e| Error::Parse(format!("line {}: {}", i + 1, e))))
        .collect()
}

/// Blocks of rows separated by blank lines. Comment-only lines do not
/// separate blocks.
pub fn parse_matrices(text: &str) -> Result<Vec<SeqMatrix>, Error> {
    let mut blocks: Vec<Vec<Seq>> = vec![Vec::new()];
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if !blocks.last().unwrap().is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        let body = strip_comment(line);
        if body.is_empty() {
            continue;
        }
        let row = body.parse::<Seq>().map_err(|e| Error::Parse(format!("line {}: {}", i + 1, e)))?;
        blocks.last_mut().unwrap().push(row);
    }
    blocks.into_iter().filter(|b| !b.is_empty()).map(|b| SeqMatrix::from_rows(&b)).collect()
}

pub fn parse_matrix(text: &str) -> Result<SeqMatrix, Error> {
    let mut ms = parse_matrices(text)?;
    match ms.len() {
        1 => Ok(ms.remove(0)),
        n => Err(Error::Parse(format!("expected one matrix, found {}", n))),
    }
}

pub fn write_matrices(ms: &[SeqMatrix]) -> String {
    let mut out = String::new();
    for (i, m) in ms.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write!(out, "{}", m).unwrap();
    }
    out
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))
}
