//! Text dump of a fragment: a `K M seed` header, then one hex row per `α`
//! holding the bits of `A^0_α` over `α × M` in cell order, packed four to a
//! digit with the first cell in the high bit. Row 0 is empty and written `-`.

use std::fmt::Write as _;

use au_core::star::StarFragment;

pub fn write_fragment(f: &StarFragment, seed: u64) -> String {
    let mut out = format!("{} {} {}\n", f.k(), f.m(), seed);
    for alpha in 0..f.k() {
        let row = f.row(alpha);
        if row.is_empty() {
            out.push('-');
        }
        for chunk in row.chunks(4) {
            let nibble = chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (3 - i)));
            let _ = write!(out, "{nibble:x}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, PartialEq, Eq)]
pub struct DumpError(pub String);

impl std::fmt::Display for DumpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "bad fragment dump: {}", self.0)
    }
}

impl std::error::Error for DumpError {}

pub fn read_fragment(text: &str) -> Result<(StarFragment, u64), DumpError> {
    let err = |m: &str| DumpError(m.into());
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or_else(|| err("empty"))?.split_whitespace().collect();
    let [k, m, seed] = header[..] else { return Err(err("header must be `K M seed`")) };
    let parse = |s: &str| s.parse::<u64>().map_err(|_| err("header field is not a number"));
    let (k, m, seed) = (parse(k)? as usize, parse(m)? as usize, parse(seed)?);
    let mut rows = Vec::with_capacity(k);
    for alpha in 0..k {
        let line = lines.next().ok_or_else(|| err("missing row"))?.trim();
        let want = alpha * m;
        let mut row = Vec::with_capacity(want);
        if line != "-" {
            for c in line.chars() {
                let d = c.to_digit(16).ok_or_else(|| err("non-hex digit"))?;
                row.extend((0..4).map(|i| d >> (3 - i) & 1 == 1));
            }
        }
        if row.len() < want || row.len() >= want + 4 || row[want..].iter().any(|&b| b) {
            return Err(DumpError(format!("row {alpha} has the wrong length")));
        }
        row.truncate(want);
        rows.push(row);
    }
    let f = StarFragment::new(k, m, rows).map_err(|e| DumpError(e.to_string()))?;
    Ok((f, seed))
}
