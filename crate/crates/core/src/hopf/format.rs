//! Plain-text structure constant files.
//!
//! ```text
//! hopf dim=2 field=rational
//! parity=00
//! M 0 1 -> 1 : 1
//! unit -> 0 : 1
//! D 1 -> 1 1 : 1
//! eps 1 : 1
//! S 1 -> 1 : 1
//! ```
//! Lines starting with `#` are comments. Omitted entries are zero. When no `S` line is
//! present the antipode is solved for from the antipode axiom.

use std::fmt::Write as _;

use super::{check_axioms, HopfError, HopfMonoid, StructureConstants};
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, Scalar};
use crate::tensor::GradedSpace;

fn perr(line: usize, msg: impl Into<String>) -> HopfError {
    HopfError::Parse { line, msg: msg.into() }
}

fn parse_field(s: &str, line: usize) -> Result<FieldKind, HopfError> {
    if s == "rational" {
        return Ok(FieldKind::Rational);
    }
    s.strip_prefix("zeta(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|n| n.parse::<u32>().ok())
        .filter(|&n| n >= 1)
        .map(FieldKind::Cyclotomic)
        .ok_or_else(|| perr(line, format!("unknown field {s:?}")))
}

fn indices(parts: &[&str], dim: usize, line: usize) -> Result<Vec<usize>, HopfError> {
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .ok()
                .filter(|&i| i < dim)
                .ok_or_else(|| perr(line, format!("bad basis index {p:?}")))
        })
        .collect()
}

/// Parses a structure constant file, builds the monoid and runs the full axiom suite.
pub fn load_structure_constants(text: &str) -> Result<HopfMonoid, HopfError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty document"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("hopf") {
        return Err(perr(hl, "expected header 'hopf dim=<n> field=<...>'"));
    }
    let (mut dim, mut field) = (None, None);
    for w in words {
        if let Some(v) = w.strip_prefix("dim=") {
            dim = Some(v.parse::<usize>().ok().filter(|&d| d >= 1).ok_or_else(|| perr(hl, "bad dim"))?);
        } else if let Some(v) = w.strip_prefix("field=") {
            field = Some(parse_field(v, hl)?);
        } else {
            return Err(perr(hl, format!("unexpected header item {w:?}")));
        }
    }
    let dim = dim.ok_or_else(|| perr(hl, "missing dim"))?;
    let field = field.ok_or_else(|| perr(hl, "missing field"))?;
    let mut parity = vec![false; dim];
    let mut consts = StructureConstants {
        mul: vec![Vec::new(); dim * dim],
        unit: Vec::new(),
        delta: vec![Vec::new(); dim],
        eps: vec![Scalar::zero(); dim],
        s: vec![Vec::new(); dim],
        s_inv: None,
    };
    let mut have_s = false;
    for (ln, l) in lines {
        if let Some(bits) = l.strip_prefix("parity=") {
            if bits.len() != dim || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(perr(ln, "parity must be a bitstring of length dim"));
            }
            parity = bits.chars().map(|c| c == '1').collect();
            continue;
        }
        let (lhs, value) = l.rsplit_once(':').ok_or_else(|| perr(ln, "expected ': <scalar>'"))?;
        let value: Scalar = value.trim().parse().map_err(|e| perr(ln, format!("{e}")))?;
        let value = field.coerce(&value).map_err(|e| perr(ln, format!("{e}")))?;
        let (head, tail) = match lhs.split_once("->") {
            Some((h, t)) => (h.split_whitespace().collect::<Vec<_>>(), t.split_whitespace().collect::<Vec<_>>()),
            None => (lhs.split_whitespace().collect(), vec![]),
        };
        match (head.first().copied(), head.len(), tail.len()) {
            (Some("M"), 3, 1) => {
                let i = indices(&head[1..], dim, ln)?;
                let k = indices(&tail, dim, ln)?;
                consts.mul[i[0] * dim + i[1]].push((k[0], value));
            }
            (Some("unit"), 1, 1) => {
                let k = indices(&tail, dim, ln)?;
                consts.unit.push((k[0], value));
            }
            (Some("D"), 2, 2) => {
                let i = indices(&head[1..], dim, ln)?;
                let k = indices(&tail, dim, ln)?;
                consts.delta[i[0]].push((k[0], k[1], value));
            }
            (Some("eps"), 2, 0) => {
                let i = indices(&head[1..], dim, ln)?;
                consts.eps[i[0]] += &value;
            }
            (Some("S"), 2, 1) => {
                let i = indices(&head[1..], dim, ln)?;
                let k = indices(&tail, dim, ln)?;
                consts.s[i[0]].push((k[0], value));
                have_s = true;
            }
            _ => return Err(perr(ln, format!("unrecognized entry {lhs:?}"))),
        }
    }
    let space = GradedSpace::new(parity).expect("dim >= 1");
    if !have_s {
        consts.s = solve_antipode(&space, &consts)?;
    }
    let h = HopfMonoid::new("file", space, field, consts)?;
    let report = check_axioms(&h);
    if let Some(f) = report.first_failure() {
        return Err(HopfError::Axiom { name: f.name.to_string(), witness: f.witness.clone().unwrap_or_default() });
    }
    Ok(h)
}

/// Solves M(S (x) id)Delta = 1 eps = M(id (x) S)Delta for the matrix of S.
fn solve_antipode(space: &GradedSpace, c: &StructureConstants) -> Result<Vec<Vec<(usize, Scalar)>>, HopfError> {
    let d = space.dim();
    // unknown v(j, a) = coefficient of e_j in S(e_a), column j * d + a
    let rows = 2 * d * d;
    let mut a = Matrix::zeros(rows, d * d);
    let mut b = vec![Scalar::zero(); rows];
    for i in 0..d {
        for (p, q, coef) in &c.delta[i] {
            for j in 0..d {
                for (k, m) in &c.mul[j * d + q] {
                    a.data[i * d + k][j * d + p] += &(coef * m);
                }
                for (k, m) in &c.mul[p * d + j] {
                    a.data[d * d + i * d + k][j * d + q] += &(coef * m);
                }
            }
        }
        for (k, u) in &c.unit {
            let v = &c.eps[i] * u;
            b[i * d + k] = v.clone();
            b[d * d + i * d + k] = v;
        }
    }
    let x = a.solve(&b).ok_or(HopfError::NoAntipode)?;
    Ok((0..d)
        .map(|col| (0..d).filter(|&j| !x[j * d + col].is_zero()).map(|j| (j, x[j * d + col].clone())).collect())
        .collect())
}

/// Parses a group multiplication table: a line `order=<n>` followed by n lines of n
/// indices, row g listing g h for h = 0..n. Blank lines and `#` comments are skipped.
pub fn parse_group_table(text: &str) -> Result<Vec<Vec<usize>>, HopfError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, head) = lines.next().ok_or_else(|| perr(1, "missing order line"))?;
    let n: usize = head
        .strip_prefix("order=")
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| perr(ln, format!("expected order=<n>, found {head:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for (ln, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != n {
            return Err(perr(ln, format!("expected {n} entries, found {}", parts.len())));
        }
        rows.push(indices(&parts, n, ln)?);
    }
    if rows.len() != n {
        return Err(perr(text.lines().count(), format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

/// Writes a monoid in the file format accepted by [`load_structure_constants`].
pub fn render_structure_constants(h: &HopfMonoid) -> String {
    let d = h.dim();
    let c = h.consts();
    let mut out = String::new();
    writeln!(out, "hopf dim={d} field={}", h.field()).unwrap();
    if !h.space().all_even() {
        let bits: String = h.space().parities().iter().map(|&p| if p { '1' } else { '0' }).collect();
        writeln!(out, "parity={bits}").unwrap();
    }
    for (ij, col) in c.mul.iter().enumerate() {
        for (k, v) in col {
            writeln!(out, "M {} {} -> {k} : {v}", ij / d, ij % d).unwrap();
        }
    }
    for (k, v) in &c.unit {
        writeln!(out, "unit -> {k} : {v}").unwrap();
    }
    for (i, row) in c.delta.iter().enumerate() {
        for (j, k, v) in row {
            writeln!(out, "D {i} -> {j} {k} : {v}").unwrap();
        }
    }
    for (i, v) in c.eps.iter().enumerate() {
        if !v.is_zero() {
            writeln!(out, "eps {i} : {v}").unwrap();
        }
    }
    for (i, col) in c.s.iter().enumerate() {
        for (j, v) in col {
            writeln!(out, "S {i} -> {j} : {v}").unwrap();
        }
    }
    out
}
