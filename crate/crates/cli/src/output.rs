use std::process::ExitCode;

use ecnc_core::Error;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Markdown,
    Csv,
}

/// What a command produced, in every rendering it supports.
pub struct Output {
    pub human: String,
    pub payload: Value,
    pub markdown: Option<String>,
    pub csv: Option<String>,
    /// A check ran to completion but did not pass.
    pub failed: Option<String>,
    pub diagnostics: Vec<String>,
}

impl Output {
    pub fn new(human: impl Into<String>, payload: Value) -> Self {
        Output {
            human: human.into(),
            payload,
            markdown: None,
            csv: None,
            failed: None,
            diagnostics: Vec::new(),
        }
    }
}

fn error_payload(e: &Error) -> Value {
    let pos = match e {
        Error::Syntax { pos, .. } | Error::UnknownSymbol { pos, .. } => Some(*pos),
        _ => None,
    };
    json!({ "kind": e.kind(), "message": e.to_string(), "position": pos })
}

fn exit_for(e: &Error) -> u8 {
    if e.is_parse_error() {
        2
    } else {
        1
    }
}

/// Prints the result and maps it to the exit code: 0 ok, 1 domain error or
/// failed check, 2 parse error.
pub fn emit(command: &str, result: Result<Output, Error>, format: Format) -> ExitCode {
    match result {
        Ok(out) => {
            let ok = out.failed.is_none();
            if format == Format::Json {
                let v = json!({
                    "command": command,
                    "status": if ok { "ok" } else { "error" },
                    "payload": out.payload,
                    "diagnostics": out.diagnostics,
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                let text = match format {
                    Format::Markdown => out.markdown.as_ref().unwrap_or(&out.human),
                    Format::Csv => out.csv.as_ref().unwrap_or(&out.human),
                    _ => &out.human,
                };
                print!("{text}");
                if !text.ends_with('\n') {
                    println!();
                }
                for d in &out.diagnostics {
                    eprintln!("note: {d}");
                }
                if let Some(f) = &out.failed {
                    eprintln!("error[check-failed]: {f}");
                }
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            if format == Format::Json {
                let v = json!({
                    "command": command,
                    "status": "error",
                    "payload": error_payload(&e),
                    "diagnostics": [e.to_string()],
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                eprintln!("error[{}]: {e}", e.kind());
            }
            ExitCode::from(exit_for(&e))
        }
    }
}
