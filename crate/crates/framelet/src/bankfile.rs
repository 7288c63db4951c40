//! The line-oriented bank file format.
//!
//! ```text
//! # comment
//! FRAMELET-BANK 1
//! field real
//! filter a lo -1 len 3
//! 2.5e-1 0
//! 5e-1 0
//! 2.5e-1 0
//! filter b1 lo ...
//! ```

use std::fmt::Write as _;

use framelet_core::{Complex64, Field, FilterBank, LaurentPoly};
use thiserror::Error;

pub const HEADER: &str = "FRAMELET-BANK";
pub const VERSION: u32 = 1;
pub const NAMES: [&str; 5] = ["a", "b1", "b2", "bp", "bn"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BankError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("filter `{0}` appears twice")]
    DuplicateFilter(String),
    #[error("no low-pass filter `a`")]
    MissingLowpass,
    #[error("no high-pass filter")]
    MissingHighpass,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BankFile {
    pub version: u32,
    pub field: Field,
    pub filters: Vec<(String, LaurentPoly)>,
}

impl BankFile {
    /// Names the high-pass filters `b1, b2` for real banks and `bp, bn`
    /// for complex ones.
    pub fn from_bank(bank: &FilterBank) -> Self {
        let names = match bank.field {
            Field::Real => ["b1", "b2"],
            Field::Complex => ["bp", "bn"],
        };
        let mut filters = vec![("a".to_string(), bank.a.clone())];
        for (name, b) in names.iter().zip(&bank.highpass) {
            filters.push((name.to_string(), b.clone()));
        }
        BankFile {
            version: VERSION,
            field: bank.field,
            filters,
        }
    }

    pub fn lowpass_only(a: &LaurentPoly) -> Self {
        BankFile {
            version: VERSION,
            field: if a.is_real() { Field::Real } else { Field::Complex },
            filters: vec![("a".to_string(), a.clone())],
        }
    }

    pub fn lowpass(&self) -> &LaurentPoly {
        self.get("a").expect("parsed files carry `a`")
    }

    pub fn get(&self, name: &str) -> Option<&LaurentPoly> {
        self.filters.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn highpass(&self) -> Vec<LaurentPoly> {
        self.filters.iter().filter(|(n, _)| n != "a").map(|(_, p)| p.clone()).collect()
    }

    /// The bank in file order. A single high-pass filter is paired with
    /// the zero filter.
    pub fn to_bank(&self) -> Result<FilterBank, BankError> {
        let mut hp = self.highpass();
        match hp.len() {
            0 => return Err(BankError::MissingHighpass),
            1 => hp.push(LaurentPoly::zero()),
            _ => {}
        }
        let mut bank = FilterBank::new(self.lowpass().clone(), hp);
        bank.field = self.field;
        Ok(bank)
    }
}

struct Cursor<'t> {
    line: usize,
    text: &'t str,
}

impl Cursor<'_> {
    fn err(&self, col: usize, msg: impl Into<String>) -> BankError {
        BankError::Syntax {
            line: self.line,
            col,
            msg: msg.into(),
        }
    }

    /// Whitespace-separated tokens with 1-based columns.
    fn tokens(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s + 1, &self.text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }

    fn expect<'a>(&self, toks: &[(usize, &'a str)], i: usize, what: &str) -> Result<(usize, &'a str), BankError> {
        toks.get(i).copied().ok_or_else(|| {
            let col = self.text.trim_end().len() + 1;
            self.err(col, format!("expected {what}"))
        })
    }

    fn keyword(&self, toks: &[(usize, &str)], i: usize, kw: &str) -> Result<(), BankError> {
        let (col, t) = self.expect(toks, i, kw)?;
        if t != kw {
            return Err(self.err(col, format!("expected `{kw}`, found `{t}`")));
        }
        Ok(())
    }

    fn int<T: std::str::FromStr>(&self, toks: &[(usize, &str)], i: usize, what: &str) -> Result<T, BankError> {
        let (col, t) = self.expect(toks, i, what)?;
        t.parse().map_err(|_| self.err(col, format!("invalid {what} `{t}`")))
    }

    fn end(&self, toks: &[(usize, &str)], n: usize) -> Result<(), BankError> {
        match toks.get(n) {
            Some(&(col, t)) => Err(self.err(col, format!("unexpected `{t}`"))),
            None => Ok(()),
        }
    }
}

pub fn parse_bank(text: &str) -> Result<BankFile, BankError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| Cursor { line: i + 1, text: l })
        .filter(|c| {
            let t = c.text.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });
    let eof = |what: &str| BankError::Syntax {
        line: text.lines().count() + 1,
        col: 1,
        msg: format!("unexpected end of input, expected {what}"),
    };

    let cur = lines.next().ok_or_else(|| eof("header"))?;
    let toks = cur.tokens();
    cur.keyword(&toks, 0, HEADER)?;
    let version: u32 = cur.int(&toks, 1, "version")?;
    if version != VERSION {
        return Err(cur.err(toks[1].0, format!("unsupported version {version}")));
    }
    cur.end(&toks, 2)?;

    let cur = lines.next().ok_or_else(|| eof("`field`"))?;
    let toks = cur.tokens();
    cur.keyword(&toks, 0, "field")?;
    let (col, tag) = cur.expect(&toks, 1, "field tag")?;
    let field = match tag {
        "real" => Field::Real,
        "complex" => Field::Complex,
        _ => return Err(cur.err(col, format!("unknown field `{tag}`"))),
    };
    cur.end(&toks, 2)?;

    let mut filters: Vec<(String, LaurentPoly)> = Vec::new();
    while let Some(cur) = lines.next() {
        let toks = cur.tokens();
        cur.keyword(&toks, 0, "filter")?;
        let (col, name) = cur.expect(&toks, 1, "filter name")?;
        if !NAMES.contains(&name) {
            return Err(cur.err(col, format!("unknown filter `{name}`")));
        }
        if filters.iter().any(|(n, _)| n == name) {
            return Err(BankError::DuplicateFilter(name.to_string()));
        }
        cur.keyword(&toks, 2, "lo")?;
        let lo: i64 = cur.int(&toks, 3, "lo")?;
        cur.keyword(&toks, 4, "len")?;
        let len: usize = cur.int(&toks, 5, "len")?;
        cur.end(&toks, 6)?;
        let mut coeffs = Vec::with_capacity(len);
        for _ in 0..len {
            let c = lines.next().ok_or_else(|| eof("coefficient"))?;
            let t = c.tokens();
            let num = |i: usize| -> Result<f64, BankError> {
                let (col, s) = c.expect(&t, i, "number")?;
                match s.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    _ => Err(c.err(col, format!("invalid number `{s}`"))),
                }
            };
            let (re, im) = (num(0)?, num(1)?);
            c.end(&t, 2)?;
            if field == Field::Real && im != 0.0 {
                return Err(c.err(t[1].0, "imaginary part in a real bank"));
            }
            coeffs.push(Complex64::new(re, im));
        }
        filters.push((name.to_string(), LaurentPoly::new(lo, coeffs)));
    }
    if !filters.iter().any(|(n, _)| n == "a") {
        return Err(BankError::MissingLowpass);
    }
    Ok(BankFile {
        version,
        field,
        filters,
    })
}

pub fn serialize_bank(file: &BankFile) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{HEADER} {}", file.version);
    let _ = writeln!(s, "field {}", file.field.as_str());
    for (name, p) in &file.filters {
        let _ = writeln!(s, "filter {name} lo {} len {}", p.lo(), p.coeffs().len());
        for c in p.coeffs() {
            // adding 0.0 turns -0 into +0
            let _ = writeln!(s, "{:.16e} {:.16e}", c.re + 0.0, c.im + 0.0);
        }
    }
    s
}
