//! The `.arc` text format: `#` comment lines, a chord count `n`, then `n`
//! lines `a b`. Chord order is stacking order, first chord lowest.

use super::ArcPresentation;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<ArcPresentation> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let eof_line = text.lines().count() + 1;

    let (line, header) = data
        .next()
        .ok_or_else(|| parse_err(eof_line, "missing chord count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(line, format!("expected chord count, got {header:?}")))?;
    if n == 0 {
        return Err(parse_err(line, "chord count must be positive"));
    }

    let mut chords = Vec::with_capacity(n);
    for k in 0..n {
        let (line, body) = data
            .next()
            .ok_or_else(|| parse_err(eof_line, format!("expected {n} chords, got {k}")))?;
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(
                line,
                format!("expected two labels, got {body:?}"),
            ));
        }
        let mut pair = [0usize; 2];
        for (slot, f) in pair.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| parse_err(line, format!("invalid label {f:?}")))?;
            if *slot == 0 || *slot > n {
                return Err(parse_err(line, format!("label {slot} out of range 1..{n}")));
            }
        }
        chords.push((pair[0], pair[1]));
    }
    if let Some((line, extra)) = data.next() {
        return Err(parse_err(
            line,
            format!("unexpected data after {n} chords: {extra:?}"),
        ));
    }
    Ok(ArcPresentation { chords })
}

pub fn serialize(ap: &ArcPresentation) -> String {
    let mut out = format!("{}\n", ap.n());
    for (a, b) in &ap.chords {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}
