//! Diagram files: one diagram per line, blank lines and `#` comments
//! skipped.

use std::io::Read;
use std::path::{Path, PathBuf};

use wirediag::Diagram;

use crate::error::CliError;

/// A non-blank input line with its 1-based line number.
#[derive(Debug, Clone)]
pub struct Entry {
    pub line: usize,
    pub text: String,
}

impl Entry {
    pub fn parse(&self) -> Result<Diagram, wirediag::Error> {
        let d: Diagram = self.text.parse()?;
        d.validate()?;
        Ok(d)
    }

    /// Parsed and validated, with the line number attached to any error.
    pub fn diagram(&self) -> Result<Diagram, CliError> {
        self.parse().map_err(|source| CliError::Input {
            line: self.line,
            source,
        })
    }
}

pub fn entries(text: &str) -> Vec<Entry> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(line, l)| Entry {
            line,
            text: l.to_string(),
        })
        .collect()
}

/// Inline diagrams if any, else the file (`-` or none for standard input).
pub fn read(file: Option<&Path>, inline: &[String]) -> Result<Vec<Entry>, CliError> {
    if !inline.is_empty() {
        return Ok(inline
            .iter()
            .enumerate()
            .map(|(i, t)| Entry {
                line: i + 1,
                text: t.trim().to_string(),
            })
            .collect());
    }
    let text = match file {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        })?,
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdin>"),
                source,
            })?;
            s
        }
    };
    let out = entries(&text);
    if out.is_empty() {
        return Err(CliError::Usage("no diagrams in the input".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_comments_and_blank_lines() {
        let e = entries("# header\n\nl=3: (1,2)(2,3)(1,2)\n  l=2: (1,2)  \n");
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].line, 3);
        assert_eq!(e[1].text, "l=2: (1,2)");
        assert!(e[0].diagram().is_ok());
    }

    #[test]
    fn errors_carry_the_line() {
        let e = entries("l=3: (1,2)(1,2)");
        let msg = e[0].diagram().unwrap_err().to_string();
        assert!(msg.starts_with("line 1:"), "{msg}");
    }
}
