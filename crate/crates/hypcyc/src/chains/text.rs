//! Line-oriented text format for chains. One term per line:
//! `p/q <TAB> twist <TAB> w₀ w₁ …` for twisted chains and
//! `p/q <TAB> head <TAB> w₁ w₂ …` for forms, where `head` is `1` for the
//! formal unit.

use std::str::FromStr;

use super::forms::{Form, FormChain, Head};
use super::twisted::{TwistedChain, TwistedSimplex};
use super::Chain;
use crate::error::{invalid, Result};
use crate::group::GroupModel;
use crate::Q;

pub fn twisted_to_text(model: &GroupModel, c: &TwistedChain) -> String {
    let mut out = String::new();
    for (s, q) in c.iter() {
        let vs: Vec<String> = s.verts.iter().map(|g| model.format(g)).collect();
        out.push_str(&format!(
            "{q}\t{}\t{}\n",
            model.format(&s.twist),
            vs.join(" ")
        ));
    }
    out
}

pub fn twisted_from_text(model: &GroupModel, text: &str) -> Result<TwistedChain> {
    let mut c = Chain::zero();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (q, twist, rest) = split_line(line)?;
        let verts = rest
            .split_whitespace()
            .map(|w| model.parse(w))
            .collect::<Result<Vec<_>>>()?;
        if verts.is_empty() {
            return invalid(format!("simplex without vertices: {line}"));
        }
        c.add_term(TwistedSimplex::new(verts, model.parse(twist)?), q);
    }
    Ok(c)
}

pub fn forms_to_text(model: &GroupModel, c: &FormChain) -> String {
    let mut out = String::new();
    for (f, q) in c.iter() {
        let head = match &f.head {
            Head::Unit => "1".to_string(),
            Head::G(g) => model.format(g),
        };
        let tail: Vec<String> = f.tail.iter().map(|g| model.format(g)).collect();
        out.push_str(&format!("{q}\t{head}\t{}\n", tail.join(" ")));
    }
    out
}

pub fn forms_from_text(model: &GroupModel, text: &str) -> Result<FormChain> {
    let mut c = Chain::zero();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (q, head, rest) = split_line(line)?;
        let head = if head == "1" {
            Head::Unit
        } else {
            Head::G(model.parse(head)?)
        };
        let tail = rest
            .split_whitespace()
            .map(|w| model.parse(w))
            .collect::<Result<Vec<_>>>()?;
        c.add_term(Form { head, tail }, q);
    }
    Ok(c)
}

fn split_line(line: &str) -> Result<(Q, &str, &str)> {
    let mut parts = line.splitn(3, '\t');
    let (Some(q), Some(mid), rest) = (parts.next(), parts.next(), parts.next()) else {
        return invalid(format!("malformed chain line: {line}"));
    };
    let q = Q::from_str(q.trim()).or_else(|_| invalid(format!("bad coefficient in: {line}")))?;
    Ok((q, mid.trim(), rest.unwrap_or("")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let m = GroupModel::free_group(2);
        let s = TwistedSimplex::new(
            vec![m.parse("aB").unwrap(), m.parse("e").unwrap()],
            m.parse("b").unwrap(),
        );
        let c = Chain::term(s, Q::new((-3).into(), 4.into()));
        assert_eq!(twisted_from_text(&m, &twisted_to_text(&m, &c)).unwrap(), c);
        let f = Form::unit(vec![m.parse("a").unwrap()]);
        let fc = Chain::term(f, Q::new(5.into(), 2.into()));
        assert_eq!(forms_from_text(&m, &forms_to_text(&m, &fc)).unwrap(), fc);
    }
}
