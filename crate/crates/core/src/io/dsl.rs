//! The parameter DSL.
//!
//! ```text
//! param    := term ("+" term)* | "0"
//! term     := [mult "*"] symbol "⊠" "S" int        ("x" is an ASCII alias for "⊠")
//! symbol   := "L(" label ["," "k=" int] ["," "s=" rational] ")"
//! rational := int "/" int
//! ```
//!
//! Whitespace between tokens is ignored. `k` defaults to 1; the presence of
//! `s` makes the symbol complementary. The printer emits the canonical
//! form: blocks in canonical order, `1*` and `k=1` omitted, `s` reduced,
//! the ASCII `x` separator.

use std::error::Error;
use std::fmt;

use num_rational::Ratio;

use crate::params::{EtaSymbol, ParamError, Rational, UnitaryParameter};

/// Integers in the DSL (multiplicities, ranks, `S_d` levels) are capped so
/// that parsed parameters stay within sane combinatorial sizes.
const MAX_INT: u64 = 1_000_000;

/// A parse failure with its exact location. `line` and `column` are
/// 1-based; `column` counts characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub byte_offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Option<String>,
}

impl ParseDiagnostic {
    fn new(input: &str, byte_offset: usize, message: String, expected: Option<String>) -> Self {
        let prefix = &input[..byte_offset.min(input.len())];
        let line = prefix.chars().filter(|&c| c == '\n').count() + 1;
        let line_start = prefix.rfind('\n').map(|i| i + 1).unwrap_or(0);
        let column = prefix[line_start..].chars().count() + 1;
        ParseDiagnostic {
            byte_offset,
            line,
            column,
            message,
            expected,
        }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.column, self.message
        )?;
        if let Some(hint) = &self.expected {
            write!(f, " (expected {hint})")?;
        }
        Ok(())
    }
}

impl Error for ParseDiagnostic {}

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor { input, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn error(&self, message: impl Into<String>, expected: Option<&str>) -> ParseDiagnostic {
        ParseDiagnostic::new(
            self.input,
            self.pos,
            message.into(),
            expected.map(str::to_string),
        )
    }

    fn expect_char(&mut self, want: char, hint: &str) -> Result<(), ParseDiagnostic> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"), Some(hint))),
            None => Err(self.error("unexpected end of input", Some(hint))),
        }
    }

    /// Positive decimal integer, no leading zeros, bounded by `MAX_INT`.
    fn parse_int(&mut self, what: &str) -> Result<u32, ParseDiagnostic> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        let digits = &self.input[start..self.pos];
        if digits.is_empty() {
            return Err(self.error(
                format!("expected {what}"),
                Some("a positive decimal integer"),
            ));
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(ParseDiagnostic::new(
                self.input,
                start,
                format!("{what} must not have leading zeros"),
                None,
            ));
        }
        let value: u64 = digits.parse().map_err(|_| {
            ParseDiagnostic::new(self.input, start, format!("{what} is too large"), None)
        })?;
        if value == 0 {
            return Err(ParseDiagnostic::new(
                self.input,
                start,
                format!("{what} must be positive"),
                None,
            ));
        }
        if value > MAX_INT {
            return Err(ParseDiagnostic::new(
                self.input,
                start,
                format!("{what} exceeds the limit of {MAX_INT}"),
                None,
            ));
        }
        Ok(value as u32)
    }

    fn parse_label(&mut self) -> Result<String, ParseDiagnostic> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                self.bump();
            }
            _ => {
                return Err(self.error(
                    "expected a label",
                    Some("an identifier starting with a letter or '_'"),
                ))
            }
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        Ok(self.input[start..self.pos].to_string())
    }

    fn parse_rational(&mut self) -> Result<(Rational, usize), ParseDiagnostic> {
        self.skip_ws();
        let start = self.pos;
        let numer = self.parse_int("numerator")?;
        self.expect_char('/', "'/'")?;
        let denom = self.parse_int("denominator")?;
        Ok((Ratio::new(i64::from(numer), i64::from(denom)), start))
    }

    /// `L(` label `[,k=int][,s=rational]` `)`
    fn parse_symbol(&mut self) -> Result<EtaSymbol, ParseDiagnostic> {
        self.skip_ws();
        let sym_start = self.pos;
        self.expect_char('L', "a symbol 'L(...)'")?;
        self.expect_char('(', "'('")?;
        let label = self.parse_label()?;
        let mut base_dim: u32 = 1;
        let mut s: Option<(Rational, usize)> = None;
        let mut seen_k = false;
        loop {
            self.skip_ws();
            if self.peek() != Some(',') {
                break;
            }
            self.bump();
            self.skip_ws();
            let key_pos = self.pos;
            match self.peek() {
                Some('k') if !seen_k && s.is_none() => {
                    self.bump();
                    self.expect_char('=', "'='")?;
                    base_dim = self.parse_int("k")?;
                    seen_k = true;
                }
                Some('s') if s.is_none() => {
                    self.bump();
                    self.expect_char('=', "'='")?;
                    s = Some(self.parse_rational()?);
                }
                _ => {
                    return Err(ParseDiagnostic::new(
                        self.input,
                        key_pos,
                        "unexpected key in symbol".to_string(),
                        Some("'k=' before 's=', each at most once".to_string()),
                    ))
                }
            }
        }
        self.expect_char(')', "')'")?;
        match s {
            None => EtaSymbol::discrete(label, base_dim)
                .map_err(|e| ParseDiagnostic::new(self.input, sym_start, e.to_string(), None)),
            Some((sv, s_pos)) => {
                EtaSymbol::complementary(label, base_dim, sv).map_err(|e| match e {
                    ParamError::SOutOfRange(sv) => ParseDiagnostic::new(
                        self.input,
                        s_pos,
                        format!("s = {sv} is out of range"),
                        Some("a rational strictly between 0 and 1/2".to_string()),
                    ),
                    other => {
                        ParseDiagnostic::new(self.input, sym_start, other.to_string(), None)
                    }
                })
            }
        }
    }

    /// `[mult *] symbol (⊠|x) S int`
    fn parse_term(&mut self) -> Result<(EtaSymbol, u32, u32), ParseDiagnostic> {
        self.skip_ws();
        let mut mult = 1u32;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            mult = self.parse_int("multiplicity")?;
            self.expect_char('*', "'*' after a multiplicity")?;
        }
        let eta = self.parse_symbol()?;
        self.skip_ws();
        match self.peek() {
            Some('⊠') | Some('x') => {
                self.bump();
            }
            Some(c) => {
                return Err(self.error(
                    format!("unexpected character '{c}'"),
                    Some("'⊠' or its ASCII alias 'x'"),
                ))
            }
            None => return Err(self.error("unexpected end of input", Some("'⊠' or 'x'"))),
        }
        self.expect_char('S', "'S' introducing the S_d factor")?;
        let d = self.parse_int("d")?;
        Ok((eta, d, mult))
    }
}

/// Parses the DSL into a canonical parameter.
pub fn parse_parameter(text: &str) -> Result<UnitaryParameter, ParseDiagnostic> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.peek() == Some('0') {
        cur.bump();
        cur.skip_ws();
        if let Some(c) = cur.peek() {
            return Err(cur.error(
                format!("unexpected character '{c}' after the zero parameter"),
                Some("end of input; '0' stands alone"),
            ));
        }
        return Ok(UnitaryParameter::zero());
    }
    let mut terms = Vec::new();
    loop {
        terms.push(cur.parse_term()?);
        cur.skip_ws();
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some(c) => {
                return Err(cur.error(
                    format!("unexpected character '{c}'"),
                    Some("'+' or end of input"),
                ))
            }
            None => break,
        }
    }
    Ok(UnitaryParameter::from_terms(terms))
}

/// Parses a single symbol, e.g. `L(a,k=2)` or `L(b,s=1/3)`.
pub fn parse_symbol(text: &str) -> Result<EtaSymbol, ParseDiagnostic> {
    let mut cur = Cursor::new(text);
    let eta = cur.parse_symbol()?;
    cur.skip_ws();
    if let Some(c) = cur.peek() {
        return Err(cur.error(
            format!("unexpected character '{c}' after the symbol"),
            Some("end of input"),
        ));
    }
    Ok(eta)
}

/// Canonical rendering; `parse_parameter(print_parameter(p)) == p`.
pub fn print_parameter(p: &UnitaryParameter) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, b) in p.blocks().iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        if b.mult() != 1 {
            out.push_str(&format!("{}*", b.mult()));
        }
        out.push_str(&format!("{} x S{}", b.eta(), b.d()));
    }
    out
}

impl fmt::Display for UnitaryParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_parameter(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_reference_example() {
        let p = parse_parameter("L(a,k=2) x S3 + 2*L(b,s=1/3) x S2").unwrap();
        assert_eq!(p.blocks().len(), 2);
        assert_eq!(p.dimension(), 14); // 6 + 8
        assert_eq!(print_parameter(&p), "L(a,k=2) x S3 + 2*L(b,s=1/3) x S2");
    }

    #[test]
    fn parses_zero() {
        assert_eq!(parse_parameter("0").unwrap(), UnitaryParameter::zero());
        assert_eq!(parse_parameter("  0  ").unwrap(), UnitaryParameter::zero());
        assert_eq!(print_parameter(&UnitaryParameter::zero()), "0");
        // zero stands alone
        assert!(parse_parameter("0 + L(a) x S1").is_err());
    }

    #[test]
    fn boundary_s_is_a_range_diagnostic() {
        let err = parse_parameter("L(a,s=1/2) x S1").unwrap_err();
        assert!(err.message.contains("out of range"), "{err}");
        // points at the rational
        assert_eq!(err.line, 1);
        assert_eq!(err.column, 7);
    }

    #[test]
    fn s_is_reduced() {
        let p = parse_parameter("L(a,s=2/8) x S1").unwrap();
        assert_eq!(print_parameter(&p), "L(a,s=1/4) x S1");
    }

    #[test]
    fn unicode_box_and_whitespace_insensitivity() {
        let a = parse_parameter("L(a,k=2) ⊠ S3").unwrap();
        let b = parse_parameter("  L( a , k = 2 )xS3 ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonicalizes_duplicates_and_order() {
        let p = parse_parameter("L(b) x S1 + L(a) x S2 + L(a) x S2").unwrap();
        assert_eq!(print_parameter(&p), "2*L(a) x S2 + L(b) x S1");
    }

    #[test]
    fn explicit_defaults_are_accepted() {
        let p = parse_parameter("1*L(a,k=1) x S2").unwrap();
        assert_eq!(print_parameter(&p), "L(a) x S2");
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        for bad in [
            "",
            "L(a) y S2",
            "L(a) x T2",
            "L(a) x S",
            "L(a) x S0",
            "2 L(a) x S1",
            "L(a) x S2 +",
            "L(a,k=0) x S1",
            "L(a,s=0/5) x S1",
            "L(a,s=1/0) x S1",
            "L(a,s=1/3,k=2) x S1", // k must come before s
            "L(a,s=1/3,s=1/4) x S1",
            "L(1a) x S1",
            "L(a) x S02",
            "L(a)",
            "+ L(a) x S1",
        ] {
            assert!(parse_parameter(bad).is_err(), "accepted: {bad:?}");
        }
    }

    #[test]
    fn diagnostics_carry_position_and_hint() {
        let err = parse_parameter("L(a) y S2").unwrap_err();
        assert_eq!((err.line, err.column), (1, 6));
        assert_eq!(err.byte_offset, 5);
        assert!(err.expected.as_deref().unwrap_or("").contains('x'));
        let err = parse_parameter("L(a) x S2\n+ L(b) x").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn parse_symbol_standalone() {
        assert_eq!(
            parse_symbol("L(a,k=2)").unwrap(),
            EtaSymbol::discrete("a", 2).unwrap()
        );
        assert!(parse_symbol("L(a) x S1").is_err());
    }
}
