//! Compact listing of active sets.
//!
//! A run `{x_1,…,x_k,x_k+1}, {x_1,…,x_k,x_k+2}, …, {x_1,…,x_k,v}` is written
//! `[...{x_1,…,x_k,v}]`; for `k = 0` the run starts at `{1}`. Only runs of
//! at least three sets are bracketed.

use crate::active_set::ActiveSet;
use crate::error::{Error, Result};
use crate::subset::Subset;

/// Shortest run rendered in bracket form.
pub const MIN_RUN: usize = 3;

/// The members in canonical order, compressed.
pub fn compress_notation(set: &ActiveSet) -> String {
    compress_members(&set.sorted_members())
}

/// Compresses `members`, which must be in canonical order.
pub fn compress_members(members: &[Subset]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < members.len() {
        let run = run_length(members, i);
        if run >= MIN_RUN {
            parts.push(format!("[...{}]", members[i + run - 1]));
            i += run;
        } else {
            parts.push(members[i].to_string());
            i += 1;
        }
    }
    parts.join(",")
}

/// Length of the run that starts at `members[i]`, 0 if none does.
fn run_length(members: &[Subset], i: usize) -> usize {
    let first = members[i].indices();
    let Some((&last, prefix)) = first.split_last() else {
        return 0;
    };
    if last != prefix.last().map_or(1, |p| p + 1) {
        return 0;
    }
    let mut len = 1;
    while let Some(next) = members.get(i + len) {
        match next.indices().split_last() {
            Some((&l, p)) if p == prefix && l == last + len as u32 => len += 1,
            _ => break,
        }
    }
    len
}

/// Parses a listing produced by [`compress_notation`] or printed in the
/// same style: optional outer braces, `∅` or `{}` for the empty set, and
/// `[...{…}]` or `[..{…}]` for runs. Whitespace is ignored.
pub fn parse_notation(text: &str) -> Result<Vec<Subset>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut body = &chars[..];
    let mut offset = 0;
    if has_outer_braces(body) {
        body = &body[1..body.len() - 1];
        offset = 1;
    }
    let mut parser = Parser {
        chars: body,
        pos: 0,
        offset,
    };
    let mut out = Vec::new();
    if body.is_empty() {
        return Ok(out);
    }
    loop {
        parser.item(&mut out)?;
        match parser.peek() {
            None => break,
            Some(',') => parser.pos += 1,
            Some(c) => return Err(parser.error(format!("expected ',' but found {c:?}"))),
        }
    }
    Ok(out)
}

/// `{∅,…}`, `{{1},…}` or `{[...…],…}` as opposed to a lone set `{1,2}`.
fn has_outer_braces(chars: &[char]) -> bool {
    chars.len() >= 2
        && chars[0] == '{'
        && chars[chars.len() - 1] == '}'
        && matches!(chars[1], '∅' | '{' | '[')
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    offset: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: String) -> Error {
        Error::Notation {
            pos: self.pos + self.offset,
            msg,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn item(&mut self, out: &mut Vec<Subset>) -> Result<()> {
        match self.peek() {
            Some('∅') => {
                self.pos += 1;
                out.push(Subset::empty());
            }
            Some('{') => out.push(self.set()?),
            Some('[') => {
                self.pos += 1;
                let mut dots = 0;
                while self.peek() == Some('.') {
                    self.pos += 1;
                    dots += 1;
                }
                if !(2..=3).contains(&dots) {
                    return Err(self.error("expected '..' or '...'".into()));
                }
                let end = self.set()?;
                self.expect(']')?;
                let Some((&last, prefix)) = end.indices().split_last() else {
                    return Err(self.error("a run cannot end at the empty set".into()));
                };
                let start = prefix.last().map_or(1, |p| p + 1);
                for v in start..=last {
                    let mut idx = prefix.to_vec();
                    idx.push(v);
                    out.push(Subset::new(idx)?);
                }
            }
            Some(c) => return Err(self.error(format!("unexpected {c:?}"))),
            None => return Err(self.error("unexpected end of input".into())),
        }
        Ok(())
    }

    fn set(&mut self) -> Result<Subset> {
        self.expect('{')?;
        let mut idx = Vec::new();
        if self.peek() == Some('}') {
            self.pos += 1;
            return Ok(Subset::empty());
        }
        loop {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let v: u32 = digits
                .parse()
                .map_err(|_| self.error(format!("bad index {digits:?}")))?;
            idx.push(v);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some('}') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or '}'".into())),
            }
        }
        Subset::new(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> Subset {
        Subset::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn compress_examples() {
        let members = vec![
            Subset::empty(),
            set(&[1]),
            set(&[2]),
            set(&[3]),
            set(&[1, 2]),
            set(&[1, 3]),
            set(&[1, 4]),
            set(&[1, 5]),
        ];
        assert_eq!(compress_members(&members), "∅,[...{3}],[...{1,5}]");
        assert_eq!(compress_members(&[Subset::empty()]), "∅");
        let short = vec![Subset::empty(), set(&[1]), set(&[2]), set(&[1, 2])];
        assert_eq!(compress_members(&short), "∅,{1},{2},{1,2}");
    }

    #[test]
    fn runs_must_start_after_prefix() {
        let members = vec![
            set(&[2]),
            set(&[3]),
            set(&[4]),
            set(&[1, 3]),
            set(&[1, 4]),
            set(&[1, 5]),
        ];
        assert_eq!(compress_members(&members), "{2},{3},{4},{1,3},{1,4},{1,5}");
    }

    #[test]
    fn parse_variants() {
        let expect = vec![
            Subset::empty(),
            set(&[1]),
            set(&[2]),
            set(&[3]),
            set(&[2, 3]),
        ];
        assert_eq!(parse_notation("∅,[...{3}],{2,3}").unwrap(), expect);
        assert_eq!(parse_notation("{∅, [..{3}], {2,3}}").unwrap(), expect);
        assert_eq!(parse_notation("{}, [...{3}], {2, 3}").unwrap(), expect);
        assert_eq!(parse_notation("{1,2}").unwrap(), vec![set(&[1, 2])]);
        assert_eq!(parse_notation("").unwrap(), vec![]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_notation("∅,{2,1}"),
            Err(Error::InvalidSubset(_))
        ));
        assert!(matches!(
            parse_notation("∅;{1}"),
            Err(Error::Notation { .. })
        ));
        assert!(matches!(
            parse_notation("[.{3}]"),
            Err(Error::Notation { .. })
        ));
        assert!(matches!(parse_notation("{1,"), Err(Error::Notation { .. })));
    }

    #[test]
    fn round_trip_long_listing() {
        let text = "∅,[...{11}],[...{1,9}],{2,3},{2,4},{1,2,3},{1,2,4}";
        let members = parse_notation(text).unwrap();
        assert_eq!(members.len(), 24);
        assert_eq!(compress_members(&members), text);
    }
}
