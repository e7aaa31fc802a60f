//! Report printing. Human mode aligns tables; machine mode emits one
//! `key: value` line per fact, in a fixed order.

use std::fmt::Display;

pub struct Report {
    machine: bool,
}

impl Report {
    pub fn new(machine: bool) -> Self {
        Self { machine }
    }

    pub fn field(&self, key: &str, value: impl Display) {
        println!("{key}: {value}");
    }

    pub fn section(&self, title: &str) {
        if !self.machine {
            println!("\n{title}");
        }
    }

    /// Rows keyed by their first column. Machine mode prints
    /// `<name>.<first>: <rest...>`.
    pub fn table(&self, name: &str, headers: &[&str], rows: &[Vec<String>]) {
        if self.machine {
            for row in rows {
                println!("{name}.{}: {}", row[0], row[1..].join(" "));
            }
            return;
        }
        let widths: Vec<usize> = (0..headers.len())
            .map(|c| {
                rows.iter()
                    .map(|r| r[c].len())
                    .chain([headers[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            println!("  {}", padded.join("  "));
        };
        line(headers.to_vec());
        for row in rows {
            line(row.iter().map(String::as_str).collect());
        }
    }

    pub fn verdict(&self, pass: bool) {
        self.field("result", if pass { "PASS" } else { "FAIL" });
    }

    /// Raw text such as an emitted complex, passed through unchanged.
    pub fn raw(&self, text: &str) {
        print!("{text}");
    }
}
