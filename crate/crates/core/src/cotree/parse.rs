use std::collections::HashSet;

use super::{Cotree, CotreeError, Label};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn tokenize(text: &str) -> Vec<(Tok, usize, usize)> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut chars = line.char_indices().peekable();
        while let Some((ci, ch)) = chars.next() {
            let pos = (li + 1, line[..ci].chars().count() + 1);
            match ch {
                '(' => out.push((Tok::Open, pos.0, pos.1)),
                ')' => out.push((Tok::Close, pos.0, pos.1)),
                c if c.is_whitespace() => {}
                _ => {
                    let mut atom = String::from(ch);
                    while let Some(&(_, c)) = chars.peek() {
                        if c == '(' || c == ')' || c.is_whitespace() {
                            break;
                        }
                        atom.push(c);
                        chars.next();
                    }
                    out.push((Tok::Atom(atom), pos.0, pos.1));
                }
            }
        }
    }
    out
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    at: usize,
    strict: bool,
    leaves: HashSet<String>,
    end: (usize, usize),
}

impl Parser {
    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> CotreeError {
        CotreeError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn tree(&mut self, parent: Option<Label>) -> Result<Cotree, CotreeError> {
        let Some((tok, line, col)) = self.toks.get(self.at).cloned() else {
            return Err(self.err(self.end.0, self.end.1, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Close => Err(self.err(line, col, "unexpected `)`")),
            Tok::Atom(name) => {
                if self.strict && !self.leaves.insert(name.clone()) {
                    return Err(self.err(line, col, format!("duplicate leaf `{name}`")));
                }
                Ok(Cotree::Leaf(name))
            }
            Tok::Open => {
                let label = match self.toks.get(self.at) {
                    Some((Tok::Atom(a), l, c)) => {
                        let label = match a.as_str() {
                            "0" => Label::Union,
                            "1" => Label::Join,
                            _ => return Err(self.err(*l, *c, format!("internal label must be 0 or 1, found `{a}`"))),
                        };
                        self.at += 1;
                        label
                    }
                    Some((_, l, c)) => return Err(self.err(*l, *c, "expected a label after `(`")),
                    None => return Err(self.err(self.end.0, self.end.1, "unexpected end of input")),
                };
                if self.strict && parent == Some(label) {
                    return Err(self.err(line, col, format!("child label {label} equals parent label")));
                }
                let mut children = Vec::new();
                loop {
                    match self.toks.get(self.at) {
                        Some((Tok::Close, _, _)) => {
                            self.at += 1;
                            break;
                        }
                        Some(_) => children.push(self.tree(Some(label))?),
                        None => return Err(self.err(self.end.0, self.end.1, "unclosed `(`")),
                    }
                }
                if self.strict && children.len() < 2 {
                    return Err(self.err(
                        line,
                        col,
                        format!("internal node needs at least two children, has {}", children.len()),
                    ));
                }
                Ok(Cotree::Node(label, children))
            }
        }
    }
}

pub(super) fn parse(text: &str, strict: bool) -> Result<Cotree, CotreeError> {
    let lines: Vec<&str> = text.lines().collect();
    let end = (lines.len().max(1), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser {
        toks: tokenize(text),
        at: 0,
        strict,
        leaves: HashSet::new(),
        end,
    };
    let tree = p.tree(None)?;
    if let Some((_, line, col)) = p.toks.get(p.at) {
        return Err(p.err(*line, *col, "trailing input after the tree"));
    }
    Ok(tree)
}
