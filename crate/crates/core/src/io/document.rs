//! Line-oriented text formats for arenas, advisers, strategies and scripts.
//!
//! ```text
//! version 1
//! state s1 p safe init
//! state s2 a unsafe "optional label"
//! transition s1 u_p1 s2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::adviser::Adviser;
use crate::arena::{Arena, Owner, StateRecord};
use crate::error::{Error, Result};
use crate::meanpayoff::MemorylessStrategy;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug)]
struct Token {
    text: String,
    column: usize,
    quoted: bool,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(line_no: usize, line: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let column = i + 1;
        if chars[i] == '"' {
            let mut text = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(syntax(line_no, column, "unterminated quoted label")),
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => {
                        let Some(&c) = chars.get(i + 1) else {
                            return Err(syntax(line_no, i + 1, "dangling escape"));
                        };
                        text.push(c);
                        i += 2;
                    }
                    Some(&c) => {
                        text.push(c);
                        i += 1;
                    }
                }
            }
            tokens.push(Token {
                text,
                column,
                quoted: true,
            });
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            tokens.push(Token {
                text: chars[start..i].iter().collect(),
                column,
                quoted: false,
            });
        }
    }
    Ok(tokens)
}

/// Non-comment lines as (1-based line number, tokens).
fn records(text: &str) -> Result<Vec<(usize, Vec<Token>)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push((i + 1, tokenize(i + 1, line)?));
    }
    Ok(out)
}

fn word<'a>(line: usize, tokens: &'a [Token], at: usize, what: &str) -> Result<&'a str> {
    match tokens.get(at) {
        Some(t) if !t.quoted => Ok(&t.text),
        Some(t) => Err(syntax(
            line,
            t.column,
            format!("expected {what}, found a quoted string"),
        )),
        None => {
            let column = tokens
                .last()
                .map_or(1, |t| t.column + t.text.chars().count());
            Err(syntax(line, column, format!("missing {what}")))
        }
    }
}

pub fn parse_arena(text: &str) -> Result<Arena> {
    let recs = records(text)?;
    let Some((first_line, head)) = recs.first() else {
        return Err(syntax(1, 1, "empty document, expected `version 1`"));
    };
    if word(*first_line, head, 0, "`version`")? != "version" {
        return Err(syntax(*first_line, head[0].column, "expected `version 1`"));
    }
    let v = word(*first_line, head, 1, "version number")?;
    if v.parse::<u32>().ok() != Some(FORMAT_VERSION) {
        return Err(syntax(
            *first_line,
            head[1].column,
            format!("unsupported version `{v}`"),
        ));
    }
    if let Some(extra) = head.get(2) {
        return Err(syntax(*first_line, extra.column, "unexpected token"));
    }

    let mut builder = Arena::builder();
    let mut initial: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut transitions = Vec::new();
    for (line, tokens) in &recs[1..] {
        let line = *line;
        match word(line, tokens, 0, "record kind")? {
            "state" => {
                let id = word(line, tokens, 1, "state id")?;
                let owner = match word(line, tokens, 2, "owner")? {
                    "p" => Owner::Protagonist,
                    "a" => Owner::Adversary,
                    other => {
                        return Err(syntax(
                            line,
                            tokens[2].column,
                            format!("unknown owner `{other}`, expected `p` or `a`"),
                        ))
                    }
                };
                let safe = match word(line, tokens, 3, "safety flag")? {
                    "safe" => true,
                    "unsafe" => false,
                    other => {
                        return Err(syntax(
                            line,
                            tokens[3].column,
                            format!("unknown safety flag `{other}`, expected `safe` or `unsafe`"),
                        ))
                    }
                };
                let mut label = None;
                for t in &tokens[4..] {
                    if t.quoted && label.is_none() {
                        label = Some(t.text.clone());
                    } else if !t.quoted && t.text == "init" && label.is_none() {
                        initial.push(id.to_string());
                    } else {
                        return Err(syntax(
                            line,
                            t.column,
                            format!("unexpected token `{}`", t.text),
                        ));
                    }
                }
                if !seen.insert(id.to_string()) {
                    return Err(Error::Semantic(format!(
                        "state `{id}` is declared twice (line {line})"
                    )));
                }
                builder = builder.record(StateRecord {
                    id: id.to_string(),
                    owner,
                    safe,
                    label,
                });
            }
            "transition" => {
                let from = word(line, tokens, 1, "source state")?;
                let input = word(line, tokens, 2, "input label")?;
                let to = word(line, tokens, 3, "target state")?;
                if let Some(extra) = tokens.get(4) {
                    return Err(syntax(line, extra.column, "unexpected token"));
                }
                transitions.push((line, from.to_string(), input.to_string(), to.to_string()));
            }
            other => {
                return Err(syntax(
                    line,
                    tokens[0].column,
                    format!("unknown record `{other}`, expected `state` or `transition`"),
                ))
            }
        }
    }
    match initial.len() {
        0 => return Err(Error::Semantic("no state is marked `init`".into())),
        1 => builder = builder.initial(initial[0].clone()),
        _ => {
            return Err(Error::Semantic(format!(
                "several states are marked `init`: {}",
                initial.join(", ")
            )))
        }
    }
    for (line, from, input, to) in transitions {
        for id in [&from, &to] {
            if !seen.contains(id) {
                return Err(Error::Semantic(format!(
                    "unknown state `{id}` on line {line}"
                )));
            }
        }
        builder = builder.transition(from, input, to);
    }
    builder.build()
}

fn quote(label: &str) -> String {
    let mut s = String::from("\"");
    for c in label.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

/// States in arena order, then transitions grouped by source state.
pub fn serialize_arena(arena: &Arena) -> String {
    let mut out = format!("version {FORMAT_VERSION}\n");
    for (ix, st) in arena.states().iter().enumerate() {
        let _ = write!(
            out,
            "state {} {} {}",
            st.id,
            st.owner.tag(),
            if st.safe { "safe" } else { "unsafe" }
        );
        if ix == arena.initial() {
            out.push_str(" init");
        }
        if let Some(label) = &st.label {
            let _ = write!(out, " {}", quote(label));
        }
        out.push('\n');
    }
    for (s, e) in arena.transitions() {
        let _ = writeln!(
            out,
            "transition {} {} {}",
            arena.id(s),
            e.input,
            arena.id(e.target)
        );
    }
    out
}

/// `forbid <state> [inputs...]` per line. A bare `forbid <state>` records an
/// empty entry.
pub fn parse_adviser(text: &str) -> Result<Adviser> {
    let mut adviser = Adviser::new();
    for (line, tokens) in records(text)? {
        if word(line, &tokens, 0, "`forbid`")? != "forbid" {
            return Err(syntax(line, tokens[0].column, "expected `forbid`"));
        }
        let state = word(line, &tokens, 1, "state id")?;
        adviser.touch(state);
        for i in 2..tokens.len() {
            adviser.forbid(state, word(line, &tokens, i, "input label")?);
        }
    }
    Ok(adviser)
}

pub fn serialize_adviser(adviser: &Adviser) -> String {
    let mut out = String::new();
    for (state, inputs) in adviser.entries() {
        out.push_str("forbid ");
        out.push_str(state);
        for u in inputs {
            out.push(' ');
            out.push_str(u);
        }
        out.push('\n');
    }
    out
}

/// `choose <state> <input>` per line.
pub fn parse_strategy(text: &str) -> Result<MemorylessStrategy> {
    let mut strategy = MemorylessStrategy::default();
    for (line, tokens) in records(text)? {
        if word(line, &tokens, 0, "`choose`")? != "choose" {
            return Err(syntax(line, tokens[0].column, "expected `choose`"));
        }
        let state = word(line, &tokens, 1, "state id")?;
        let input = word(line, &tokens, 2, "input label")?;
        if let Some(extra) = tokens.get(3) {
            return Err(syntax(line, extra.column, "unexpected token"));
        }
        strategy.set(state, input);
    }
    Ok(strategy)
}

pub fn serialize_strategy(strategy: &MemorylessStrategy) -> String {
    strategy
        .iter()
        .map(|(s, u)| format!("choose {s} {u}\n"))
        .collect()
}

/// Whitespace-separated input labels.
pub fn parse_script(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (line, tokens) in records(text)? {
        for i in 0..tokens.len() {
            out.push(word(line, &tokens, i, "input label")?.to_string());
        }
    }
    Ok(out)
}
