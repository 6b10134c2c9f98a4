//! A small reader for the DOT subset: `digraph ID { stmt* }` with attribute
//! statements, node statements, and single-hop edges, each ending in `;`.

use std::collections::BTreeMap;

pub type Attrs = BTreeMap<String, String>;

#[derive(Debug, Default)]
pub struct Graph {
    pub name: String,
    pub nodes: Vec<(String, Attrs)>,
    pub edges: Vec<(String, String, Attrs)>,
    pub graph_attrs: Attrs,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Id(String),
    Sym(&'static str),
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        match chars.get(i + 1) {
                            Some('n') => s.push('\n'),
                            Some(&e) => s.push(e),
                            None => return Err("dangling escape".into()),
                        }
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Tok::Id(s));
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Id(chars[start..i].iter().collect()));
        } else if chars[i..].starts_with(&['-', '>']) {
            out.push(Tok::Sym("->"));
            i += 2;
        } else {
            let sym = match c {
                '{' => "{",
                '}' => "}",
                '[' => "[",
                ']' => "]",
                '=' => "=",
                ',' => ",",
                ';' => ";",
                _ => return Err(format!("unexpected {c:?}")),
            };
            out.push(Tok::Sym(sym));
            i += 1;
        }
    }
    Ok(out)
}

struct P {
    toks: Vec<Tok>,
    pos: usize,
}

impl P {
    fn next(&mut self) -> Result<Tok, String> {
        let t = self.toks.get(self.pos).cloned().ok_or("unexpected end")?;
        self.pos += 1;
        Ok(t)
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next()? {
            Tok::Id(s) => Ok(s),
            t => Err(format!("expected an identifier, got {t:?}")),
        }
    }

    fn sym(&mut self, s: &str) -> Result<(), String> {
        match self.next()? {
            Tok::Sym(x) if x == s => Ok(()),
            t => Err(format!("expected {s}, got {t:?}")),
        }
    }

    fn peek_sym(&self, s: &str) -> bool {
        matches!(self.toks.get(self.pos), Some(Tok::Sym(x)) if *x == s)
    }

    fn attr_list(&mut self) -> Result<Attrs, String> {
        let mut attrs = Attrs::new();
        if !self.peek_sym("[") {
            return Ok(attrs);
        }
        self.sym("[")?;
        while !self.peek_sym("]") {
            let k = self.id()?;
            self.sym("=")?;
            let v = self.id()?;
            if attrs.insert(k.clone(), v).is_some() {
                return Err(format!("attribute {k} repeated"));
            }
            if self.peek_sym(",") {
                self.pos += 1;
            }
        }
        self.sym("]")?;
        Ok(attrs)
    }
}

pub fn read_dot(src: &str) -> Result<Graph, String> {
    let mut p = P { toks: lex(src)?, pos: 0 };
    if p.id()? != "digraph" {
        return Err("not a digraph".into());
    }
    let mut g = Graph { name: p.id()?, ..Graph::default() };
    p.sym("{")?;
    while !p.peek_sym("}") {
        let first = p.id()?;
        if p.peek_sym("=") {
            p.sym("=")?;
            let v = p.id()?;
            g.graph_attrs.insert(first, v);
        } else if p.peek_sym("->") {
            p.sym("->")?;
            let to = p.id()?;
            let attrs = p.attr_list()?;
            g.edges.push((first, to, attrs));
        } else {
            let attrs = p.attr_list()?;
            g.nodes.push((first, attrs));
        }
        p.sym(";")?;
    }
    p.sym("}")?;
    if p.pos != p.toks.len() {
        return Err("trailing input after the graph".into());
    }
    Ok(g)
}
