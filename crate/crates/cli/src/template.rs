//! Named polynomial families and `{expr}` placeholders in the running prime.

pub const TEMPLATES: &[(&str, &str)] = &[
    ("milnor-example", "x^{p+2}+y^{p+1}+x^{p+1}*y"),
    ("two-pair", "(y^2+x^3)^2+x^5*y"),
];

pub fn lookup(name: &str) -> Result<&'static str, String> {
    TEMPLATES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| {
            let known: Vec<&str> = TEMPLATES.iter().map(|(n, _)| *n).collect();
            format!("unknown template {name:?} (known: {})", known.join(", "))
        })
}

/// Replaces every `{expr}` by the value of `expr`, an integer expression in
/// `p` with `+`, `-`, `*` and parentheses.
pub fn expand(text: &str, p: u64) -> Result<String, String> {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..]
            .find('}')
            .ok_or_else(|| format!("unclosed '{{' in {text:?}"))?;
        let expr = &rest[open + 1..open + close];
        let v = Eval::new(expr, p).run()?;
        if v < 0 {
            return Err(format!("placeholder {{{expr}}} is negative at p = {p}"));
        }
        out.push_str(&v.to_string());
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

struct Eval<'a> {
    src: &'a [u8],
    pos: usize,
    p: i128,
}

impl<'a> Eval<'a> {
    fn new(src: &'a str, p: u64) -> Self {
        Eval {
            src: src.as_bytes(),
            pos: 0,
            p: p as i128,
        }
    }

    fn err(&self, what: &str) -> String {
        format!(
            "placeholder {:?}: {what} at offset {}",
            String::from_utf8_lossy(self.src),
            self.pos
        )
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn run(mut self) -> Result<i128, String> {
        let v = self.sum()?;
        match self.peek() {
            None => Ok(v),
            Some(_) => Err(self.err("unexpected character")),
        }
    }

    fn sum(&mut self) -> Result<i128, String> {
        let mut v = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    v += self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    v -= self.product()?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn product(&mut self) -> Result<i128, String> {
        let mut v = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            v = v
                .checked_mul(self.atom()?)
                .ok_or_else(|| self.err("overflow"))?;
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<i128, String> {
        match self.peek() {
            Some(b'p') => {
                self.pos += 1;
                Ok(self.p)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("number too large"))
            }
            _ => Err(self.err("expected a number, p or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expands_placeholders() {
        let t = lookup("milnor-example").unwrap();
        assert_eq!(expand(t, 5).unwrap(), "x^7+y^6+x^6*y");
        assert_eq!(expand("x^{2*(p-1)}+y", 3).unwrap(), "x^4+y");
        assert_eq!(expand("x*y", 7).unwrap(), "x*y");
        assert!(expand("x^{p-9}", 3).is_err());
        assert!(expand("x^{p+}", 3).is_err());
        assert!(expand("x^{p", 3).is_err());
        assert!(lookup("nope").is_err());
    }
}
