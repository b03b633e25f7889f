use std::collections::BTreeMap;

use serde::Deserialize;

use super::expr::{Env, Expr};
use crate::rootsystem::Weight;
use crate::satake::catalog::normalize_name;
use crate::{Error, Result};

const TABLES: &str = include_str!("../../data/tables.toml");

/// The parameters a table row can depend on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormParams {
    /// `so(p,q)` with `p <= q`.
    So { p: i64, q: i64 },
    /// `so*(2r)`.
    SoStar { r: i64 },
    Exceptional { name: String, rank: i64 },
}

impl FormParams {
    pub fn parse(form: &str) -> Result<Self> {
        let name = normalize_name(form)?;
        let unknown = || Error::UnknownForm(form.to_string());
        if let Some(n) = name.strip_prefix("so*(").and_then(|s| s.strip_suffix(')')) {
            let n: i64 = n.parse().map_err(|_| unknown())?;
            if n % 2 != 0 || n < 6 {
                return Err(unknown());
            }
            return Ok(FormParams::SoStar { r: n / 2 });
        }
        if let Some(inner) = name.strip_prefix("so(").and_then(|s| s.strip_suffix(')')) {
            let (p, q) = inner.split_once(',').ok_or_else(unknown)?;
            let p: i64 = p.parse().map_err(|_| unknown())?;
            let q: i64 = q.parse().map_err(|_| unknown())?;
            if p < 1 || p + q < 3 {
                return Err(unknown());
            }
            return Ok(FormParams::So { p, q });
        }
        let rank = match name.as_str() {
            "EI" | "EII" | "EIII" | "EIV" => 6,
            "EV" | "EVI" | "EVII" => 7,
            "EVIII" | "EIX" => 8,
            "FI" | "FII" => 4,
            "G" => 2,
            _ => return Err(unknown()),
        };
        Ok(FormParams::Exceptional { name, rank })
    }

    pub fn rank(&self) -> i64 {
        match self {
            FormParams::So { p, q } => (p + q) / 2,
            FormParams::SoStar { r } => *r,
            FormParams::Exceptional { rank, .. } => *rank,
        }
    }

    fn family(&self) -> &'static str {
        match self {
            FormParams::So { .. } => "so",
            FormParams::SoStar { .. } => "so*",
            FormParams::Exceptional { .. } => "exceptional",
        }
    }

    fn env(&self) -> Env {
        let mut env = Env::new();
        env.set("r", self.rank());
        if let FormParams::So { p, q } = self {
            env.set("p", *p).set("q", *q);
        }
        env
    }
}

/// A weight shape such as `k*w(i) + l*(w(2*p) + w(2*p+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    source: String,
    terms: Vec<(String, Vec<Expr>)>,
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_fundamental(s: &str) -> Option<&str> {
    s.trim().strip_prefix("w(")?.strip_suffix(')')
}

impl Shape {
    pub fn parse(source: &str) -> Result<Self> {
        let bad = || Error::TableData(format!("bad weight shape `{source}`"));
        if source.trim() == "0" {
            return Ok(Shape { source: source.to_string(), terms: Vec::new() });
        }
        let mut terms = Vec::new();
        for term in split_top_level(source) {
            let (var, rest) = term.split_once('*').ok_or_else(bad)?;
            let var = var.trim();
            if !["k", "l", "m"].contains(&var) {
                return Err(bad());
            }
            let rest = rest.trim();
            let sum = match rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                Some(inner) if parse_fundamental(rest).is_none() => split_top_level(inner),
                _ => vec![rest],
            };
            let idx = sum
                .into_iter()
                .map(|w| parse_fundamental(w).ok_or_else(bad).and_then(Expr::parse))
                .collect::<Result<Vec<_>>>()?;
            terms.push((var.to_string(), idx));
        }
        Ok(Shape { source: source.to_string(), terms })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = self.terms.iter().map(|(v, _)| v.clone()).collect();
        for (_, idx) in &self.terms {
            for e in idx {
                out.extend(e.variables());
            }
        }
        out
    }

    /// The vectors of the terms, or `None` if an index is outside `1..=rank`.
    fn vectors(&self, env: &Env, rank: usize) -> Result<Option<Vec<(String, Vec<i64>)>>> {
        let mut out = Vec::new();
        for (var, idx) in &self.terms {
            let mut v = vec![0; rank];
            for e in idx {
                let x = e.eval_num(env)?;
                if !x.is_integer() || x.to_integer() < 1 || x.to_integer() > rank as i64 {
                    return Ok(None);
                }
                v[x.to_integer() as usize - 1] += 1;
            }
            out.push((var.clone(), v));
        }
        Ok(Some(out))
    }
}

/// Searches for nonnegative coefficients writing `rest` as a combination of
/// the term vectors and satisfying `coeff`.
fn decompose(terms: &[(String, Vec<i64>)], rest: &mut [i64], env: &mut Env, coeff: &Expr) -> Result<bool> {
    let Some(((var, v), tail)) = terms.split_first() else {
        return Ok(rest.iter().all(|&x| x == 0) && coeff.eval_bool(env)?);
    };
    let bound = v.iter().zip(rest.iter()).filter(|(a, _)| **a > 0).map(|(a, r)| r / a).min().unwrap_or(0);
    for c in 0..=bound.max(0) {
        for (x, a) in rest.iter_mut().zip(v) {
            *x -= c * a;
        }
        env.set(var, c);
        let found = decompose(tail, rest, env, coeff)?;
        for (x, a) in rest.iter_mut().zip(v) {
            *x += c * a;
        }
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One printed line in its resolved form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowKind {
    Weights { shape: Shape, index: Expr, coeff: Expr },
    Reuse { block: String, substitute: Option<(String, String)> },
    Alias { form: String, relabel: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub table: String,
    pub block: String,
    /// Position of the printed line in the data file, counted from 1.
    pub line: usize,
    pub kind: RowKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableBlock {
    pub id: String,
    pub table: String,
    family: String,
    forms: Vec<String>,
    when: Expr,
    pub rows: Vec<TableRow>,
}

impl TableBlock {
    fn applies(&self, params: &FormParams) -> Result<bool> {
        if self.family != params.family() {
            return Ok(false);
        }
        if let FormParams::Exceptional { name, .. } = params {
            if !self.forms.contains(name) {
                return Ok(false);
            }
        }
        self.when.eval_bool(&params.env())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    block: Vec<RawBlock>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlock {
    id: String,
    table: String,
    family: String,
    #[serde(default)]
    forms: Vec<String>,
    when: Option<String>,
    weight: Option<String>,
    row: Vec<RawRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    weight: Option<String>,
    index: Option<String>,
    coeff: Option<String>,
    reuse: Option<String>,
    substitute: Option<(String, String)>,
    alias: Option<String>,
    relabel: Option<Vec<usize>>,
}

/// The parsed table data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    blocks: Vec<TableBlock>,
}

impl Table {
    pub fn builtin() -> Result<&'static Table> {
        static PARSED: std::sync::OnceLock<Result<Table>> = std::sync::OnceLock::new();
        PARSED.get_or_init(|| Table::parse(TABLES)).as_ref().map_err(Clone::clone)
    }

    pub fn parse(text: &str) -> Result<Table> {
        let raw: RawTable = toml::from_str(text).map_err(|e| Error::TableData(e.to_string()))?;
        let mut blocks = Vec::new();
        let mut line = 0;
        for b in raw.block {
            if !["so", "so*", "exceptional"].contains(&b.family.as_str()) {
                return Err(Error::TableData(format!("block {}: unknown family {}", b.id, b.family)));
            }
            let when = Expr::parse(b.when.as_deref().unwrap_or("true"))?;
            let mut rows = Vec::new();
            for r in b.row {
                line += 1;
                let kind = if let Some(block) = r.reuse {
                    RowKind::Reuse { block, substitute: r.substitute }
                } else if let Some(form) = r.alias {
                    let relabel = r.relabel.ok_or_else(|| Error::TableData(format!("block {}: alias without relabel", b.id)))?;
                    RowKind::Alias { form, relabel }
                } else {
                    let shape = r.weight.or_else(|| b.weight.clone()).ok_or_else(|| {
                        Error::TableData(format!("block {}: row without a weight shape", b.id))
                    })?;
                    RowKind::Weights {
                        shape: Shape::parse(&shape)?,
                        index: Expr::parse(r.index.as_deref().unwrap_or("true"))?,
                        coeff: Expr::parse(r.coeff.as_deref().unwrap_or("true"))?,
                    }
                };
                rows.push(TableRow { table: b.table.clone(), block: b.id.clone(), line, kind });
            }
            blocks.push(TableBlock { id: b.id, table: b.table, family: b.family, forms: b.forms, when, rows });
        }
        let table = Table { blocks };
        table.check()?;
        Ok(table)
    }

    /// Static checks: references resolve, variables are known.
    fn check(&self) -> Result<()> {
        for b in &self.blocks {
            for r in &b.rows {
                match &r.kind {
                    RowKind::Reuse { block, .. } => {
                        let target = self.block(block)?;
                        if target.rows.iter().any(|t| !matches!(t.kind, RowKind::Weights { .. })) {
                            return Err(Error::TableData(format!("block {}: reused block {block} is not direct", b.id)));
                        }
                    }
                    RowKind::Alias { form, relabel } => {
                        let params = FormParams::parse(form)?;
                        let mut sorted = relabel.clone();
                        sorted.sort_unstable();
                        if sorted != (1..=params.rank() as usize).collect::<Vec<_>>() {
                            return Err(Error::TableData(format!("block {}: relabel is not a permutation", b.id)));
                        }
                    }
                    RowKind::Weights { shape, index, coeff } => {
                        let known = ["p", "q", "r", "i", "k", "l", "m"];
                        let shape_vars = shape.variables();
                        for v in shape_vars.iter().chain(&index.variables()).chain(&coeff.variables()) {
                            if !known.contains(&v.as_str()) {
                                return Err(Error::TableData(format!("block {}: unknown variable {v}", b.id)));
                            }
                        }
                        for v in coeff.variables() {
                            if ["k", "l", "m"].contains(&v.as_str()) && !shape_vars.contains(&v) {
                                return Err(Error::TableData(format!("block {}: {v} is not in the shape", b.id)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn blocks(&self) -> &[TableBlock] {
        &self.blocks
    }

    pub fn block(&self, id: &str) -> Result<&TableBlock> {
        self.blocks.iter().find(|b| b.id == id).ok_or_else(|| Error::TableData(format!("no block {id}")))
    }

    /// Number of printed lines per sub-table.
    pub fn row_counts(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for b in &self.blocks {
            *out.entry(b.table.clone()).or_default() += b.rows.len();
        }
        out
    }

    /// Rows applying to a form, with reuse rows replaced by the rows they
    /// refer to (weight shapes substituted). Alias rows are kept.
    pub fn expand(&self, params: &FormParams) -> Result<Vec<TableRow>> {
        let mut out = Vec::new();
        for b in &self.blocks {
            if !b.applies(params)? {
                continue;
            }
            for r in &b.rows {
                match &r.kind {
                    RowKind::Reuse { block, substitute } => {
                        for t in &self.block(block)?.rows {
                            let RowKind::Weights { shape, index, coeff } = &t.kind else { unreachable!() };
                            let shape = match substitute {
                                Some((from, to)) => Shape::parse(&shape.source.replace(from.as_str(), to))?,
                                None => shape.clone(),
                            };
                            out.push(TableRow {
                                table: r.table.clone(),
                                block: b.id.clone(),
                                line: r.line,
                                kind: RowKind::Weights { shape, index: index.clone(), coeff: coeff.clone() },
                            });
                        }
                    }
                    _ => out.push(r.clone()),
                }
            }
        }
        Ok(out)
    }

    /// Whether `lambda` is listed for the form. Returns the printed line
    /// numbers of every matching row (empty if not listed).
    pub fn matches(&self, form: &str, lambda: &Weight) -> Result<Vec<usize>> {
        let params = FormParams::parse(form)?;
        self.matches_params(&params, lambda, true)
    }

    fn matches_params(&self, params: &FormParams, lambda: &Weight, follow_alias: bool) -> Result<Vec<usize>> {
        let rank = params.rank() as usize;
        if lambda.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, got: lambda.rank() });
        }
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let mut lines = Vec::new();
        for row in self.expand(params)? {
            let hit = match &row.kind {
                RowKind::Weights { shape, index, coeff } => row_matches(shape, index, coeff, params, lambda)?,
                RowKind::Alias { form, relabel } => {
                    if !follow_alias {
                        return Err(Error::TableData(format!("alias {form} points at another alias")));
                    }
                    let target = FormParams::parse(form)?;
                    let relabeled = Weight(relabel.iter().map(|&j| lambda.coords()[j - 1]).collect());
                    !self.matches_params(&target, &relabeled, false)?.is_empty()
                }
                RowKind::Reuse { .. } => unreachable!("expanded"),
            };
            if hit && !lines.contains(&row.line) {
                lines.push(row.line);
            }
        }
        Ok(lines)
    }

    /// The same predicate evaluated without expanding reuse rows: each reuse
    /// row evaluates the referenced block with the substitution applied at
    /// evaluation time.
    pub fn matches_unexpanded(&self, form: &str, lambda: &Weight) -> Result<bool> {
        let params = FormParams::parse(form)?;
        for b in &self.blocks {
            if !b.applies(&params)? {
                continue;
            }
            for r in &b.rows {
                let hit = match &r.kind {
                    RowKind::Weights { shape, index, coeff } => row_matches(shape, index, coeff, &params, lambda)?,
                    RowKind::Reuse { block, substitute } => {
                        let mut any = false;
                        for t in &self.block(block)?.rows {
                            let RowKind::Weights { shape, index, coeff } = &t.kind else { unreachable!() };
                            let shape = match substitute {
                                Some((from, to)) => Shape::parse(&shape.source.replace(from.as_str(), to))?,
                                None => shape.clone(),
                            };
                            any |= row_matches(&shape, index, coeff, &params, lambda)?;
                        }
                        any
                    }
                    RowKind::Alias { form, relabel } => {
                        let relabeled = Weight(relabel.iter().map(|&j| lambda.coords()[j - 1]).collect());
                        self.matches_unexpanded(form, &relabeled)?
                    }
                };
                if hit {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

fn row_matches(shape: &Shape, index: &Expr, coeff: &Expr, params: &FormParams, lambda: &Weight) -> Result<bool> {
    let rank = params.rank() as usize;
    let uses_i = shape.variables().iter().chain(&index.variables()).chain(&coeff.variables()).any(|v| v == "i");
    let mut env = params.env();
    let candidates: Vec<i64> = if uses_i { (1..=rank as i64).collect() } else { vec![0] };
    for i in candidates {
        if uses_i {
            env.set("i", i);
        }
        if !index.eval_bool(&env)? {
            continue;
        }
        let Some(terms) = shape.vectors(&env, rank)? else {
            continue;
        };
        let mut rest = lambda.coords().to_vec();
        if decompose(&terms, &mut rest, &mut env.clone(), coeff)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn member(form: &str, l: &[i64]) -> bool {
        !Table::builtin().unwrap().matches(form, &Weight(l.to_vec())).unwrap().is_empty()
    }

    #[test]
    fn printed_row_counts() {
        let counts = Table::builtin().unwrap().row_counts();
        assert_eq!(counts["1a"], 18);
        assert_eq!(counts["1b"], 25);
        assert_eq!(counts["1c"], 12);
    }

    #[test]
    fn shapes_parse() {
        let s = Shape::parse("k*w(i) + l*(w(2*p) + w(2*p+1))").unwrap();
        assert_eq!(s.terms.len(), 2);
        assert_eq!(s.terms[1].1.len(), 2);
        assert!(Shape::parse("0").unwrap().terms.is_empty());
        assert!(Shape::parse("x*w(1)").is_err());
        assert!(Shape::parse("k*v(1)").is_err());
    }

    #[test]
    fn worked_rows() {
        // so(2,9): B5, block p <= (p+q)/4, row "i = 1 or 2p-1" with w_{2p} = w_4.
        assert!(member("so(2,9)", &[5, 0, 0, 7, 0]));
        assert!(member("so(2,9)", &[0, 0, 3, 2, 0]));
        assert!(!member("so*(10)", &[0, 1, 0, 0, 0]));
        assert!(member("so*(10)", &[0, 0, 0, 3, 0]));
        assert!(member("FII", &[2, 5, 1, 0]));
        assert!(member("FII", &[2, 5, 0, 4]));
        assert!(!member("FII", &[0, 0, 1, 1]));
        assert!(member("G", &[2, 0]));
        assert!(!member("G", &[3, 0]));
        assert!(!member("G", &[1, 1]));
        assert!(member("EI", &[0; 6]));
        assert!(!member("EI", &[1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn zero_is_always_listed() {
        for sd in crate::satake::catalog::entries().unwrap() {
            assert!(member(sd.name(), &vec![0; sd.rank()]), "{}", sd.name());
        }
    }

    #[test]
    fn block_selection() {
        // so(2,7): p <= (p+q)/4, shape k w_i + l w_4, "2 = i = 2p-2" allows i = 2.
        assert!(member("so(2,7)", &[1, 0, 0, 0]));
        assert!(member("so(2,7)", &[0, 3, 0, 4]));
        assert!(member("so(2,7)", &[0, 0, 0, 3]));
        assert!(!member("so(2,7)", &[1, 1, 0, 0]));
        // so(2,5): p = (p+q+1)/4, shape k w_i + l w_3.
        assert!(member("so(2,5)", &[0, 5, 2]));
        assert!(!member("so(2,5)", &[0, 1, 3]));
        assert!(member("so(2,5)", &[0, 0, 7]));
        assert!(!member("so(2,5)", &[1, 1, 0]));
    }

    #[test]
    fn alias_relabels() {
        let t = Table::builtin().unwrap();
        for l in [[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [2, 0, 1, 0], [0, 0, 1, 3]] {
            let a = !t.matches("so*(8)", &Weight(l.to_vec())).unwrap().is_empty();
            let b = !t.matches("so(2,6)", &Weight(vec![l[3], l[1], l[2], l[0]])).unwrap().is_empty();
            assert_eq!(a, b, "{l:?}");
        }
    }

    #[test]
    fn substitution_uses_both_spin_nodes() {
        // so(1,5): p = (p+q-2)/4 = 1, D3; w_2 becomes w_2 + w_3.
        assert!(member("so(1,5)", &[0, 2, 2]));
        assert!(!member("so(1,5)", &[0, 3, 0]));
        assert!(member("so(1,5)", &[0, 2, 0]));
    }

    #[test]
    fn rejects_uncataloged_families() {
        let t = Table::builtin().unwrap();
        assert!(t.matches("A3", &Weight(vec![0, 0, 0])).is_err());
        assert!(t.matches("so(2,7)", &Weight(vec![0, 0, 0])).is_err());
        assert!(Table::parse("[[block]]\nid='x'\ntable='1a'\nfamily='su'\n[[block.row]]\nweight='0'\n").is_err());
        assert!(Table::parse("[[block]]\nid='x'\ntable='1a'\nfamily='so'\n[[block.row]]\nreuse='nope'\n").is_err());
        assert!(Table::parse("[[block]]\nid='x'\ntable='1a'\nfamily='so'\n[[block.row]]\nweight='k*w(i)'\ncoeff='l <= 1'\n").is_err());
    }
}
