//! Every command builds one serializable report; the text form is a
//! rendering of the same values.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

pub trait Report: Serialize {
    fn text(&self) -> String;
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

pub fn render<T: Report>(command: &str, report: &T, format: Format) -> String {
    match format {
        Format::Text => report.text(),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&Envelope { command, body: report })
                .expect("reports serialize to JSON");
            s.push('\n');
            s
        }
    }
}
