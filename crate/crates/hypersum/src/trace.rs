//! Trace sink for intermediate results of the summation engines.

/// Collects trace lines; when `live` is set, lines are also printed as they
/// are produced.
#[derive(Debug, Default)]
pub struct Trace {
    enabled: bool,
    live: bool,
    lines: Vec<String>,
}

impl Trace {
    pub fn off() -> Self {
        Trace::default()
    }

    pub fn collecting() -> Self {
        Trace {
            enabled: true,
            live: false,
            lines: Vec::new(),
        }
    }

    pub fn live() -> Self {
        Trace {
            enabled: true,
            live: true,
            lines: Vec::new(),
        }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }

    pub fn line(&mut self, s: impl Into<String>) {
        if !self.enabled {
            return;
        }
        let s = s.into();
        if self.live {
            println!("{}", s);
        }
        self.lines.push(s);
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn into_lines(self) -> Vec<String> {
        self.lines
    }
}
