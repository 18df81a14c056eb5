mod benchmark;
mod frontier;
mod validate;

pub use benchmark::{dataset_paths, run_benchmark, DatasetPaths};
pub use frontier::{run_frontier, FrontierRun};
pub use validate::run_validate;

use std::io::IsTerminal;

/// Terminal styling; off when `NO_COLOR` is set or stdout is not a terminal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub fn detect() -> Self {
        let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
        Self {
            color: !no_color && std::io::stdout().is_terminal(),
        }
    }

    pub fn bad(self, text: &str) -> String {
        self.paint(text, "31")
    }

    pub fn warn(self, text: &str) -> String {
        self.paint(text, "33")
    }

    pub fn good(self, text: &str) -> String {
        self.paint(text, "32")
    }

    fn paint(self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}
