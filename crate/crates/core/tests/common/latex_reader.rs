//! Reads the LaTeX subset the renderer emits back into an expression tree.
//!
//! Precedence, loosest first: cases / sum, `+ -`, `\cdot`, unary minus,
//! `^`, atoms. A minus directly in front of a number or `\tfrac` (and not
//! followed by `^`) is part of the literal.

use exgen::expr::{BinaryOp, Binding, Branch, CmpOp, Comparison, Expr, Rational, UnaryOp};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(char),
    Cmd(&'static str),
    Sym(char),
}

const COMMANDS: [&str; 20] = [
    "\\left(",
    "\\right)",
    "\\left|",
    "\\right|",
    "\\frac",
    "\\tfrac",
    "\\sqrt",
    "\\ln",
    "\\exp",
    "\\cdot",
    "\\sum",
    "\\le",
    "\\ge",
    "\\ne",
    "\\begin{cases}",
    "\\end{cases}",
    "\\text{if }",
    "\\text{otherwise}",
    "\\\\",
    "\\,",
];

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let b = src.as_bytes();
    let mut i = 0;
    'outer: while i < b.len() {
        let c = b[i] as char;
        if c == ' ' {
            i += 1;
            continue;
        }
        if c == '\\' {
            // Longest match so `\le` does not swallow `\left(`.
            let mut best: Option<&'static str> = None;
            for cmd in COMMANDS {
                if src[i..].starts_with(cmd) && best.map_or(true, |b| cmd.len() > b.len()) {
                    best = Some(cmd);
                }
            }
            if let Some(cmd) = best {
                out.push(Tok::Cmd(cmd));
                i += cmd.len();
                continue 'outer;
            }
            return Err(format!("unknown command at {}", &src[i..]));
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(src[start..i].parse().map_err(|e| format!("{e}"))?));
            continue;
        }
        if c.is_ascii_alphabetic() {
            out.push(Tok::Ident(c));
            i += 1;
            continue;
        }
        if "+-^_{}=<>&,".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
            continue;
        }
        return Err(format!("unexpected {c:?}"));
    }
    Ok(out)
}

struct Reader<'a> {
    toks: Vec<Tok>,
    pos: usize,
    fname: char,
    params: &'a [&'a str],
}

impl<'a> Reader<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    fn next(&mut self) -> Result<Tok, String> {
        let t = self.toks.get(self.pos).cloned().ok_or("unexpected end")?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        let got = self.next()?;
        if got == t {
            Ok(())
        } else {
            Err(format!("expected {t:?}, got {got:?} at {}", self.pos - 1))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn braced(&mut self) -> Result<Expr, String> {
        self.expect(Tok::Sym('{'))?;
        let e = self.top()?;
        self.expect(Tok::Sym('}'))?;
        Ok(e)
    }

    fn number(&mut self) -> Result<i64, String> {
        match self.next()? {
            Tok::Num(n) => Ok(n),
            t => Err(format!("expected a number, got {t:?}")),
        }
    }

    fn top(&mut self) -> Result<Expr, String> {
        match self.peek() {
            Some(Tok::Cmd("\\begin{cases}")) => self.cases(),
            Some(Tok::Cmd("\\sum")) => self.sum(),
            _ => self.additive(),
        }
    }

    fn cases(&mut self) -> Result<Expr, String> {
        self.expect(Tok::Cmd("\\begin{cases}"))?;
        let mut branches = Vec::new();
        loop {
            let value = self.top()?;
            self.expect(Tok::Sym('&'))?;
            match self.next()? {
                Tok::Cmd("\\text{otherwise}") => {
                    self.expect(Tok::Cmd("\\end{cases}"))?;
                    if branches.is_empty() {
                        return Err("cases without a guarded row".into());
                    }
                    return Ok(Expr::Piecewise { branches, otherwise: Box::new(value) });
                }
                Tok::Cmd("\\text{if }") => {
                    let lhs = self.additive()?;
                    let op = match self.next()? {
                        Tok::Sym('<') => CmpOp::Lt,
                        Tok::Sym('>') => CmpOp::Gt,
                        Tok::Sym('=') => CmpOp::Eq,
                        Tok::Cmd("\\le") => CmpOp::Le,
                        Tok::Cmd("\\ge") => CmpOp::Ge,
                        Tok::Cmd("\\ne") => CmpOp::Ne,
                        t => return Err(format!("expected a comparison, got {t:?}")),
                    };
                    let rhs = self.additive()?;
                    branches.push(Branch { guard: Comparison { op, lhs, rhs }, value });
                    self.expect(Tok::Cmd("\\\\"))?;
                }
                t => return Err(format!("expected a row condition, got {t:?}")),
            }
        }
    }

    fn sum(&mut self) -> Result<Expr, String> {
        self.expect(Tok::Cmd("\\sum"))?;
        self.expect(Tok::Sym('_'))?;
        self.expect(Tok::Sym('{'))?;
        let index = match self.next()? {
            Tok::Ident(c) => c.to_string(),
            t => return Err(format!("expected an index variable, got {t:?}")),
        };
        self.expect(Tok::Sym('='))?;
        let lo = self.top()?;
        self.expect(Tok::Sym('}'))?;
        self.expect(Tok::Sym('^'))?;
        let hi = self.braced()?;
        let body = self.power()?;
        Ok(Expr::Sum { index, lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) })
    }

    fn additive(&mut self) -> Result<Expr, String> {
        let mut e = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Sym('+')) => BinaryOp::Add,
                Some(Tok::Sym('-')) => BinaryOp::Sub,
                _ => return Ok(e),
            };
            self.pos += 1;
            let rhs = self.multiplicative()?;
            e = Expr::binary(op, e, rhs);
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, String> {
        let mut e = self.unary()?;
        while self.eat(&Tok::Cmd("\\cdot")) {
            let rhs = self.unary()?;
            e = Expr::mul(e, rhs);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, String> {
        if !self.eat(&Tok::Sym('-')) {
            return self.power();
        }
        let literal = match self.peek() {
            Some(Tok::Num(_)) => self.peek_at(1) != Some(&Tok::Sym('^')),
            Some(Tok::Cmd("\\tfrac")) => true,
            _ => false,
        };
        if literal {
            let Expr::Const { value } = self.primary()? else { unreachable!() };
            return Ok(Expr::rational(Rational::new(-value.numer(), value.denom())));
        }
        Ok(Expr::neg(self.unary()?))
    }

    fn power(&mut self) -> Result<Expr, String> {
        let base = self.primary()?;
        if self.eat(&Tok::Sym('^')) {
            let exp = self.braced()?;
            return Ok(Expr::pow(base, exp));
        }
        Ok(base)
    }

    fn paren_group(&mut self) -> Result<Expr, String> {
        self.expect(Tok::Cmd("\\left("))?;
        let e = self.top()?;
        self.expect(Tok::Cmd("\\right)"))?;
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, String> {
        match self.next()? {
            Tok::Num(n) => Ok(Expr::int(n)),
            Tok::Cmd("\\tfrac") => {
                self.expect(Tok::Sym('{'))?;
                let n = self.number()?;
                self.expect(Tok::Sym('}'))?;
                self.expect(Tok::Sym('{'))?;
                let d = self.number()?;
                self.expect(Tok::Sym('}'))?;
                Ok(Expr::rational(Rational::new(n, d)))
            }
            Tok::Ident(c) if c == self.fname && self.peek() == Some(&Tok::Cmd("\\left(")) => {
                self.pos += 1;
                let mut args = vec![self.top()?];
                while self.eat(&Tok::Sym(',')) {
                    args.push(self.top()?);
                }
                self.expect(Tok::Cmd("\\right)"))?;
                if args.len() != self.params.len() {
                    return Err("call arity differs from the parameter list".into());
                }
                let args = args
                    .into_iter()
                    .zip(self.params)
                    .map(|(value, name)| Binding { name: name.to_string(), value })
                    .collect();
                Ok(Expr::Recur { args })
            }
            Tok::Ident(c) => Ok(Expr::var(c.to_string())),
            Tok::Cmd("\\left(") => {
                self.pos -= 1;
                self.paren_group()
            }
            Tok::Cmd("\\left|") => {
                let e = self.top()?;
                self.expect(Tok::Cmd("\\right|"))?;
                Ok(Expr::unary(UnaryOp::Abs, e))
            }
            Tok::Cmd("\\sqrt") => Ok(Expr::unary(UnaryOp::Sqrt, self.braced()?)),
            Tok::Cmd("\\ln") => Ok(Expr::unary(UnaryOp::Ln, self.paren_group()?)),
            Tok::Cmd("\\exp") => Ok(Expr::unary(UnaryOp::Exp, self.paren_group()?)),
            Tok::Cmd("\\frac") => {
                let n = self.braced()?;
                let d = self.braced()?;
                Ok(Expr::div(n, d))
            }
            t => Err(format!("unexpected {t:?} at {}", self.pos - 1)),
        }
    }
}

/// Reads an expression; `fname(...)` calls become `Recur` nodes binding `params` in order.
pub fn read_latex(src: &str, fname: char, params: &[&str]) -> Result<Expr, String> {
    let mut r = Reader { toks: lex(src)?, pos: 0, fname, params };
    let e = r.top()?;
    if r.pos != r.toks.len() {
        return Err(format!("trailing input from token {}", r.pos));
    }
    Ok(e)
}
