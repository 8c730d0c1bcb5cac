//! Fixture cases: `cases.txt` lists `name: arguments` lines, and
//! `expected/<name>.out` holds the rendered [`Outcome`] of each.

use std::path::{Path, PathBuf};

use crate::Outcome;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub fn read_cases(dir: &Path) -> std::io::Result<Vec<Case>> {
    let text = std::fs::read_to_string(dir.join("cases.txt"))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once(':').expect("case line has a name");
            Case {
                name: name.trim().to_string(),
                args: args.split_whitespace().map(String::from).collect(),
            }
        })
        .collect())
}

/// `args` with file arguments resolved against `dir`.
pub fn resolve_args(case: &Case, dir: &Path) -> Vec<String> {
    case.args
        .iter()
        .map(|a| {
            if a.ends_with(".json") {
                dir.join(a).display().to_string()
            } else {
                a.clone()
            }
        })
        .collect()
}

pub fn expected_path(dir: &Path, case: &Case) -> PathBuf {
    dir.join("expected").join(format!("{}.out", case.name))
}

/// Paths inside messages are shown relative to the fixture directory.
pub fn render(outcome: &Outcome, dir: &Path) -> String {
    let prefix = format!("{}/", dir.display());
    format!(
        "exit {}\n--- stdout\n{}--- stderr\n{}",
        outcome.code,
        outcome.stdout.replace(&prefix, ""),
        outcome.stderr.replace(&prefix, "")
    )
}
