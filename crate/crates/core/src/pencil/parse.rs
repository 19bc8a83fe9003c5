//! Text and JSON pencil formats.
//!
//! Text format:
//!
//! ```text
//! # comment
//! lmi m=3 n=2 vars=x1,x2
//! entry 1 1 : 1 + x1
//! entry 1 2 : x2
//! entry 2 2 : 1 - x1
//! entry 3 3 : x1 - 1 - 10^(-20)
//! ```
//!
//! Indices are 1-based and omitted entries are zero. An entry below the
//! diagonal is read as its mirror and must agree with any upper entry.
//! Expressions are affine with exact rational literals (`3/2`, `0.25`,
//! `1e-20`, integer powers of constants).

use std::collections::HashMap;
use std::path::Path;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::{LinearPencil, PencilError};
use crate::arith::rational::parse_rational;
use crate::arith::MultiPoly;
use crate::{MultiPolyQ, Rational};

/// Reads a pencil file; `.json` files use the JSON layout.
pub fn parse_pencil_path(path: &Path) -> Result<LinearPencil, PencilError> {
    let text = std::fs::read_to_string(path).map_err(|e| PencilError::Io { path: path.display().to_string(), message: e.to_string() })?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_pencil_json(&text)
    } else {
        parse_pencil(&text)
    }
}

pub fn parse_pencil(text: &str) -> Result<LinearPencil, PencilError> {
    let mut header: Option<(usize, usize, Vec<String>)> = None;
    let mut entries: HashMap<(usize, usize), (MultiPolyQ, usize)> = HashMap::new();
    let mut mirrored: Vec<(usize, usize, MultiPolyQ, usize)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let offset = line.len() - trimmed.len();
        let err = |col: usize, message: String| PencilError::Syntax { line: line_no, column: col + 1, message };
        if let Some(rest) = trimmed.strip_prefix("lmi") {
            if header.is_some() {
                return Err(err(offset, "duplicate header".into()));
            }
            header = Some(parse_header(rest, offset + 3, line_no)?);
            continue;
        }
        let Some(rest) = trimmed.strip_prefix("entry") else {
            return Err(err(offset, "expected `lmi` header or `entry` line".into()));
        };
        let Some((m, n, vars)) = &header else {
            return Err(err(offset, "entry before the `lmi` header".into()));
        };
        let Some(colon) = rest.find(':') else {
            return Err(err(offset + 5, "missing `:` after entry indices".into()));
        };
        let idx_text = &rest[..colon];
        let idx: Vec<&str> = idx_text.split_whitespace().collect();
        if idx.len() != 2 {
            return Err(err(offset + 5, "expected two indices `i j`".into()));
        }
        let parse_idx = |s: &str| -> Result<usize, PencilError> {
            let col = offset + 5 + idx_text.find(s).unwrap_or(0);
            match s.parse::<usize>() {
                Ok(v) if (1..=*m).contains(&v) => Ok(v - 1),
                _ => Err(err(col, format!("index `{s}` is not in 1..={m}"))),
            }
        };
        let (i, j) = (parse_idx(idx[0])?, parse_idx(idx[1])?);
        let expr_start = offset + 5 + colon + 1;
        let form = parse_affine(&rest[colon + 1..], vars, *n).map_err(|(col, msg)| err(expr_start + col, msg))?;
        if i <= j {
            if entries.insert((i, j), (form, line_no)).is_some() {
                return Err(err(offset, format!("duplicate entry ({}, {})", i + 1, j + 1)));
            }
        } else {
            mirrored.push((j, i, form, line_no));
        }
    }
    let Some((m, n, vars)) = header else {
        return Err(PencilError::Syntax { line: 1, column: 1, message: "missing `lmi m=<int> n=<int>` header".into() });
    };
    for (i, j, form, line_no) in mirrored {
        match entries.get(&(i, j)) {
            Some((upper, _)) if *upper != form => return Err(PencilError::Asymmetry { i: i + 1, j: j + 1 }),
            Some(_) => {}
            None => {
                entries.insert((i, j), (form, line_no));
            }
        }
    }
    let mut list: Vec<(usize, usize, MultiPolyQ)> = entries.into_iter().map(|((i, j), (f, _))| (i, j, f)).collect();
    list.sort_by_key(|(i, j, _)| (*i, *j));
    LinearPencil::from_entries(m, n, &list, Some(vars))
}

fn parse_header(rest: &str, base: usize, line_no: usize) -> Result<(usize, usize, Vec<String>), PencilError> {
    let mut m = None;
    let mut n = None;
    let mut vars = None;
    let mut pos = 0;
    for tok in rest.split_whitespace() {
        let col = base + rest[pos..].find(tok).map_or(0, |p| p + pos);
        pos = col - base + tok.len();
        let err = |message: String| PencilError::Syntax { line: line_no, column: col + 1, message };
        let Some((key, value)) = tok.split_once('=') else {
            return Err(err(format!("expected key=value, found `{tok}`")));
        };
        match key {
            "m" | "n" => {
                let v: usize = value.parse().map_err(|_| err(format!("`{key}` must be a positive integer")))?;
                if v == 0 {
                    return Err(err(format!("`{key}` must be positive")));
                }
                if key == "m" {
                    m = Some(v);
                } else {
                    n = Some(v);
                }
            }
            "vars" => {
                let names: Vec<String> = value.split(',').map(|s| s.trim().to_string()).collect();
                if names.iter().any(|s| !is_identifier(s)) {
                    return Err(err("variable names must be identifiers".into()));
                }
                vars = Some(names);
            }
            _ => return Err(err(format!("unknown header key `{key}`"))),
        }
    }
    let err = |message: &str| PencilError::Syntax { line: line_no, column: base + 1, message: message.into() };
    let m = m.ok_or_else(|| err("header is missing `m=`"))?;
    let n = n.ok_or_else(|| err("header is missing `n=`"))?;
    let vars = vars.unwrap_or_else(|| MultiPoly::<Rational>::default_names(n));
    if vars.len() != n {
        return Err(err(&format!("`vars` lists {} names but n={n}", vars.len())));
    }
    let mut seen = std::collections::HashSet::new();
    if !vars.iter().all(|v| seen.insert(v)) {
        return Err(err("duplicate variable name"));
    }
    Ok((m, n, vars))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, (usize, String)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut k = i + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    i = k;
                }
            }
            let lit = &text[start..i];
            let v = parse_rational(lit).ok_or((start, format!("invalid number `{lit}`")))?;
            out.push((Tok::Num(v), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err((i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
    n: usize,
}

type PResult<T> = Result<T, (usize, String)>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn expr(&mut self) -> PResult<MultiPolyQ> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<MultiPolyQ> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            let col = self.col();
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                if !acc.is_constant() && !rhs.is_constant() {
                    return Err((col, "product of two variable terms is not affine".into()));
                }
                acc = &acc * &rhs;
            } else {
                if !rhs.is_constant() {
                    return Err((col, "division by a variable term".into()));
                }
                let d = rhs.constant_term();
                if d.is_zero() {
                    return Err((col, "division by zero".into()));
                }
                acc = acc.scale(&d.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<MultiPolyQ> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<MultiPolyQ> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            let col = self.col();
            self.pos += 1;
            let exp = self.unary()?;
            let e = exp.constant_term();
            if !exp.is_constant() || !e.is_integer() {
                return Err((col, "exponent must be an integer constant".into()));
            }
            let e = e.to_integer();
            if base.is_constant() {
                let b = base.constant_term();
                if b.is_zero() && e.is_negative() {
                    return Err((col, "division by zero".into()));
                }
                let k = e.abs().to_u32().ok_or((col, "exponent too large".to_string()))?;
                let mut v = num_traits::pow(b, k as usize);
                if e.is_negative() {
                    v = v.recip();
                }
                return Ok(MultiPoly::constant(self.n, v));
            }
            return if e.is_zero() {
                Ok(MultiPoly::one(self.n))
            } else if e.is_one() {
                Ok(base)
            } else {
                Err((col, "variable raised to a power is not affine".into()))
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<MultiPolyQ> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(v), _)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.n, v))
            }
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                let k = self.vars.iter().position(|v| *v == name).ok_or((col, format!("unknown variable `{name}`")))?;
                Ok(MultiPoly::var(self.n, k))
            }
            Some((Tok::Op('('), _)) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err((self.col(), "expected `)`".into())),
                }
            }
            Some((Tok::Op(c), _)) => Err((col, format!("unexpected `{c}`"))),
            None => Err((col, "unexpected end of expression".into())),
        }
    }
}

/// Parses an affine expression; errors carry a 0-based column in `text`.
fn parse_affine(text: &str, vars: &[String], n: usize) -> PResult<MultiPolyQ> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err((text.len(), "empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), vars, n };
    let form = p.expr()?;
    if p.pos != p.toks.len() {
        return Err((p.col(), "unexpected trailing input".into()));
    }
    Ok(form)
}

fn json_scalar(v: &Value, what: &str) -> Result<Rational, PencilError> {
    match v {
        Value::Number(num) => {
            parse_rational(&num.to_string()).ok_or_else(|| PencilError::Json(format!("{what}: invalid number {num}")))
        }
        Value::String(s) => parse_rational(s).ok_or_else(|| PencilError::Json(format!("{what}: invalid rational `{s}`"))),
        _ => Err(PencilError::Json(format!("{what}: expected a number or string"))),
    }
}

/// JSON layout: `{"m", "n", "vars"?, "entries": [{"i", "j", "expr"}]}` or
/// `{"matrices": [A0, A1, ...]}` with full symmetric matrices.
pub fn parse_pencil_json(text: &str) -> Result<LinearPencil, PencilError> {
    let v: Value = serde_json::from_str(text).map_err(|e| PencilError::Json(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| PencilError::Json("top level must be an object".into()))?;
    let vars = match obj.get("vars") {
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(|s| s.as_str().map(str::to_string).ok_or_else(|| PencilError::Json("vars must be strings".into())))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Some(_) => return Err(PencilError::Json("vars must be an array".into())),
        None => None,
    };
    if let Some(ms) = obj.get("matrices") {
        let ms = ms.as_array().ok_or_else(|| PencilError::Json("matrices must be an array".into()))?;
        let mut matrices = Vec::new();
        for (k, a) in ms.iter().enumerate() {
            let rows = a.as_array().ok_or_else(|| PencilError::Json(format!("A{k} must be an array of rows")))?;
            let mut out = Vec::new();
            for row in rows {
                let row = row.as_array().ok_or_else(|| PencilError::Json(format!("A{k} rows must be arrays")))?;
                out.push(row.iter().map(|c| json_scalar(c, &format!("A{k}"))).collect::<Result<Vec<_>, _>>()?);
            }
            if out.iter().any(|r| r.len() != out.len()) {
                return Err(PencilError::Dimension(format!("A{k} is not square")));
            }
            matrices.push(crate::arith::Matrix::from_rows(out));
        }
        return LinearPencil::new(matrices, vars);
    }
    let get_usize = |key: &str| -> Result<usize, PencilError> {
        obj.get(key).and_then(Value::as_u64).map(|v| v as usize).filter(|v| *v > 0).ok_or_else(|| PencilError::Json(format!("`{key}` must be a positive integer")))
    };
    let m = get_usize("m")?;
    let n = get_usize("n")?;
    let vars = vars.unwrap_or_else(|| MultiPoly::<Rational>::default_names(n));
    if vars.len() != n {
        return Err(PencilError::Json(format!("`vars` lists {} names but n={n}", vars.len())));
    }
    let mut text = format!("lmi m={m} n={n} vars={}\n", vars.join(","));
    let entries = obj.get("entries").and_then(Value::as_array).ok_or_else(|| PencilError::Json("missing `entries` array".into()))?;
    for e in entries {
        let i = e.get("i").and_then(Value::as_u64).ok_or_else(|| PencilError::Json("entry needs integer `i`".into()))?;
        let j = e.get("j").and_then(Value::as_u64).ok_or_else(|| PencilError::Json("entry needs integer `j`".into()))?;
        let expr = match e.get("expr") {
            Some(Value::String(s)) => s.clone(),
            Some(Value::Number(num)) => num.to_string(),
            _ => return Err(PencilError::Json("entry needs `expr`".into())),
        };
        if expr.contains(['\n', '#']) {
            return Err(PencilError::Json("entry expression must be a single line".into()));
        }
        text.push_str(&format!("entry {i} {j} : {expr}\n"));
    }
    parse_pencil(&text).map_err(|e| match e {
        PencilError::Syntax { line, message, .. } => PencilError::Json(format!("entry {}: {message}", line - 1)),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use num_bigint::BigInt;

    #[test]
    fn half_disk_file() {
        let p = parse_pencil("# half disk\nlmi m=3 n=2 vars=x1,x2\n\nentry 1 1 : 1+x1\nentry 1 2 : x2\nentry 2 2 : 1-x1\nentry 3 3 : x1\n").unwrap();
        assert_eq!((p.m(), p.n()), (3, 2));
        assert_eq!(p.matrices()[1][(0, 0)], rat(1, 1));
        assert_eq!(p.matrices()[2][(1, 0)], rat(1, 1));
    }

    #[test]
    fn literals_and_powers() {
        let p = parse_pencil("lmi m=1 n=1\nentry 1 1 : x1 - 1 - 10^(-20)\n").unwrap();
        let tiny = Rational::new(1.into(), num_traits::pow(BigInt::from(10), 20));
        assert_eq!(p.matrices()[0][(0, 0)], -rat(1, 1) - tiny.clone());
        let q = parse_pencil("lmi m=1 n=1\nentry 1 1 : x1 - 1 - 1e-20\n").unwrap();
        assert_eq!(p, q);
        let r = parse_pencil("lmi m=1 n=2 vars=a,b\nentry 1 1 : -(3/2 + 2*b) + 0.5*a/2\n").unwrap();
        assert_eq!(r.matrices()[0][(0, 0)], rat(-3, 2));
        assert_eq!(r.matrices()[1][(0, 0)], rat(1, 4));
        assert_eq!(r.matrices()[2][(0, 0)], rat(-2, 1));
    }

    #[test]
    fn scalar_pencil() {
        let p = parse_pencil("lmi m=1 n=1 vars=x1\nentry 1 1 : x1\n").unwrap();
        assert_eq!((p.m(), p.n()), (1, 1));
    }

    #[test]
    fn asymmetry_is_reported() {
        let e = parse_pencil("lmi m=2 n=1\nentry 1 2 : x1\nentry 2 1 : 2*x1\n").unwrap_err();
        assert_eq!(e, PencilError::Asymmetry { i: 1, j: 2 });
        let ok = parse_pencil("lmi m=2 n=1\nentry 2 1 : x1\n").unwrap();
        assert_eq!(ok.matrices()[1][(0, 1)], rat(1, 1));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_pencil("lmi m=2 n=1\nentry 1 1 : 1 + y\n").unwrap_err();
        assert_eq!(e, PencilError::Syntax { line: 2, column: 17, message: "unknown variable `y`".into() });
        let e = parse_pencil("lmi m=2 n=1\nentry 1 1 : x1*x1\n").unwrap_err();
        assert!(matches!(e, PencilError::Syntax { line: 2, column: 15, .. }), "{e:?}");
        let e = parse_pencil("lmi m=2 n=1\nentry 3 1 : 1\n").unwrap_err();
        assert!(matches!(e, PencilError::Syntax { line: 2, column: 7, .. }), "{e:?}");
        let e = parse_pencil("lmi m=2 n=1\nentry 1 1 : 1\nentry 1 1 : 2\n").unwrap_err();
        assert!(matches!(e, PencilError::Syntax { line: 3, .. }));
        assert!(parse_pencil("entry 1 1 : 1\n").is_err());
    }

    #[test]
    fn json_layouts() {
        let a = parse_pencil_json(r#"{"m":2,"n":2,"vars":["x1","x2"],"entries":[{"i":1,"j":1,"expr":"1+x1"},{"i":1,"j":2,"expr":"x2"},{"i":2,"j":2,"expr":"1-x1"}]}"#).unwrap();
        let b = parse_pencil_json(r#"{"matrices":[[[1,0],[0,1]],[[1,0],[0,-1]],[["0","1"],["1","0"]]]}"#).unwrap();
        assert_eq!(a, b);
        let c = parse_pencil_json(r#"{"matrices":[[[1,0],[0,1]],[[0,1],[2,0]]]}"#).unwrap_err();
        assert_eq!(c, PencilError::Asymmetry { i: 1, j: 2 });
    }
}
