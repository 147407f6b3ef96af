use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

/// A word in normal form: strictly increasing generators, exponents in `1..r`.
/// Generator indices are 0-based internally.
pub type NormalWord = Vec<(usize, u32)>;

/// One letter of an arbitrary word; the exponent may be any integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn gen(gen: usize, exp: i64) -> Self {
        Word(vec![Letter { gen, exp }])
    }

    pub fn push(&mut self, gen: usize, exp: i64) {
        self.0.push(Letter { gen, exp });
    }

    /// Parses `g2^3 g1 g4^-1`; `1` or an empty string is the empty word.
    /// Generators are 1-based in the text.
    pub fn parse(text: &str, n: usize) -> Result<Word> {
        let mut w = Word::new();
        let mut col = 1;
        for tok in text.split_whitespace() {
            col = text.find(tok).map_or(col, |c| c + 1);
            if tok == "1" {
                continue;
            }
            let (g, e) = parse_atom(tok, 1, col)?;
            if g == 0 || g > n {
                return Err(Error::IndexOutOfRange { index: g, n });
            }
            w.push(g - 1, e);
        }
        Ok(w)
    }
}

/// A polycyclic presentation of a finite solvable group.
///
/// Generators `g_1..g_n` have relative orders `r_i`; the power relation gives
/// `g_i^{r_i}` as a normal word in `g_{i+1}..g_n`, and the conjugation
/// relation for `i < j` gives `g_i^{-1} g_j g_i` as a normal word in
/// `g_{i+1}..g_n`. Omitted relations are trivial.
#[derive(Clone, PartialEq, Eq)]
pub struct PcPresentation {
    pub(crate) name: String,
    pub(crate) orders: Vec<u32>,
    pub(crate) powers: Vec<NormalWord>,
    /// Indexed by [`PcPresentation::pair_index`].
    pub(crate) conjugates: Vec<NormalWord>,
    pub(crate) trivial_conj: Vec<bool>,
    /// Inverse of each generator in the tails cover: normal form of `g_i^{-1}`
    /// and the tail correction to add after multiplying by it.
    pub(crate) inverse_gens: Vec<(NormalWord, Vec<i64>)>,
}

impl PcPresentation {
    /// Builds and validates a presentation, including the consistency check.
    pub fn new(
        name: impl Into<String>,
        orders: Vec<u32>,
        powers: Vec<NormalWord>,
        conjugates: Vec<NormalWord>,
    ) -> Result<Self> {
        let p = Self::from_parts(name, orders, powers, conjugates)?;
        let failing = p.is_consistent();
        if failing.is_empty() {
            Ok(p)
        } else {
            Err(Error::Inconsistent(failing))
        }
    }

    /// Builds a presentation after syntactic validation only; the result may
    /// be inconsistent. Zero generators present the trivial group. Use [`PcPresentation::is_consistent`] to check.
    pub fn from_parts(
        name: impl Into<String>,
        orders: Vec<u32>,
        powers: Vec<NormalWord>,
        conjugates: Vec<NormalWord>,
    ) -> Result<Self> {
        let n = orders.len();
        if let Some(&r) = orders.iter().find(|&&r| r < 2) {
            return Err(Error::Syntax {
                line: 0,
                column: 0,
                message: format!("relative order {r} is less than 2"),
            });
        }
        assert_eq!(powers.len(), n);
        assert_eq!(conjugates.len(), n * n.saturating_sub(1) / 2);
        for (i, w) in powers.iter().enumerate() {
            check_normal(w, &orders, i + 1, 0)?;
        }
        let mut trivial_conj = Vec::with_capacity(conjugates.len());
        for i in 0..n {
            for j in i + 1..n {
                let w = &conjugates[pair_index(n, i, j)];
                check_normal(w, &orders, i + 1, 0)?;
                trivial_conj.push(w.as_slice() == [(j, 1)]);
            }
        }
        let mut p = PcPresentation {
            name: name.into(),
            orders,
            powers,
            conjugates,
            trivial_conj,
            inverse_gens: Vec::new(),
        };
        p.inverse_gens = (0..n)
            .map(|g| {
                let mut e = vec![0; n];
                e[g] = 1;
                let mut tails = vec![0i64; p.tail_count()];
                let inv = p.invert_into(&mut e, Some(&mut tails));
                let word = normal_word(&inv);
                (word, tails.into_iter().map(|t| -t).collect())
            })
            .collect();
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Product of relative orders.
    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&r| r as u128).product()
    }

    pub fn power_word(&self, i: usize) -> &NormalWord {
        &self.powers[i]
    }

    /// Normal word for `g_i^{-1} g_j g_i`, `i < j` (0-based).
    pub fn conjugate_word(&self, i: usize, j: usize) -> &NormalWord {
        &self.conjugates[pair_index(self.n(), i, j)]
    }

    /// Position of the pair `(i, j)`, `i < j`, in lexicographic order.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        pair_index(self.n(), i, j)
    }

    /// One tail per power relation and one per conjugation relation.
    pub fn tail_count(&self) -> usize {
        let n = self.n();
        n + n * n.saturating_sub(1) / 2
    }

    /// Renders the presentation in the text format accepted by [`parse_presentation`].
    pub fn render(&self) -> String {
        let n = self.n();
        let mut out = String::new();
        let _ = writeln!(out, "name {}", self.name);
        let orders: Vec<String> = self.orders.iter().map(|r| r.to_string()).collect();
        let _ = writeln!(out, "orders {}", orders.join(" "));
        for i in 0..n {
            if !self.powers[i].is_empty() {
                let _ = writeln!(out, "pow {} = {}", i + 1, render_word(&self.powers[i]));
            }
        }
        for j in 0..n {
            for i in 0..j {
                let k = pair_index(n, i, j);
                if !self.trivial_conj[k] {
                    let _ = writeln!(
                        out,
                        "conj {} {} = {}",
                        j + 1,
                        i + 1,
                        render_word(&self.conjugates[k])
                    );
                }
            }
        }
        out
    }
}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub(crate) fn normal_word(exps: &[u32]) -> NormalWord {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| (i, e))
        .collect()
}

pub fn render_word(w: &NormalWord) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&(g, e)| format!("g{}^{}", g + 1, e))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `min_gen` is the smallest allowed 0-based generator index.
fn check_normal(w: &NormalWord, orders: &[u32], min_gen: usize, line: usize) -> Result<()> {
    let mut last: Option<usize> = None;
    for &(g, e) in w {
        if g >= orders.len() {
            return Err(Error::IndexOutOfRange {
                index: g + 1,
                n: orders.len(),
            });
        }
        if g < min_gen {
            return Err(Error::NonNormalWord {
                line,
                message: format!(
                    "g{} may not occur (only generators above g{min_gen})",
                    g + 1
                ),
            });
        }
        if last.is_some_and(|l| g <= l) {
            return Err(Error::NonNormalWord {
                line,
                message: "generator indices must be strictly increasing".into(),
            });
        }
        if e == 0 || e >= orders[g] {
            return Err(Error::NonNormalWord {
                line,
                message: format!("exponent {e} of g{} outside 1..{}", g + 1, orders[g]),
            });
        }
        last = Some(g);
    }
    Ok(())
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_atom(tok: &str, line: usize, col: usize) -> Result<(usize, i64)> {
    let body = tok
        .strip_prefix('g')
        .ok_or_else(|| syntax(line, col, format!("expected an atom `gk^e`, found `{tok}`")))?;
    let (idx, exp) = match body.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (body, None),
    };
    let g: usize = idx
        .parse()
        .map_err(|_| syntax(line, col, format!("bad generator index in `{tok}`")))?;
    let e: i64 = match exp {
        Some(e) => e
            .parse()
            .map_err(|_| syntax(line, col, format!("bad exponent in `{tok}`")))?,
        None => 1,
    };
    Ok((g, e))
}

/// Parses the text format:
///
/// ```text
/// name D4
/// orders 2 4
/// conj 2 1 = g2^3
/// ```
///
/// Blank lines and lines starting with `#` are ignored. The result is
/// checked for consistency.
pub fn parse_presentation(source: &str) -> Result<PcPresentation> {
    let mut lines = source
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, first) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
    let name = first
        .strip_prefix("name")
        .filter(|r| r.starts_with(char::is_whitespace))
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .ok_or_else(|| syntax(ln, 1, "expected `name <label>`"))?
        .to_string();

    let (ln, second) = lines
        .next()
        .ok_or_else(|| syntax(ln + 1, 1, "expected `orders r1 ... rn`"))?;
    let rest = second
        .strip_prefix("orders")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| syntax(ln, 1, "expected `orders r1 ... rn`"))?;
    let mut orders = Vec::new();
    for tok in rest.split_whitespace() {
        let col = second.find(tok).unwrap_or(0) + 1;
        let r: u32 = tok
            .parse()
            .map_err(|_| syntax(ln, col, format!("bad relative order `{tok}`")))?;
        if r < 2 {
            return Err(syntax(ln, col, "relative orders must be at least 2"));
        }
        orders.push(r);
    }
    if orders.is_empty() {
        return Err(syntax(ln, 1, "no generators"));
    }
    let n = orders.len();

    let mut powers: Vec<Option<NormalWord>> = vec![None; n];
    let mut conjugates: Vec<Option<NormalWord>> = vec![None; n * (n - 1) / 2];

    for (ln, line) in lines {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| syntax(ln, 1, "expected `pow i = <word>` or `conj j i = <word>`"))?;
        let rhs_col = lhs.len() + 2;
        let head: Vec<&str> = lhs.split_whitespace().collect();
        let index = |tok: &str| -> Result<usize> {
            let col = line.find(tok).unwrap_or(0) + 1;
            let k: usize = tok
                .parse()
                .map_err(|_| syntax(ln, col, format!("bad generator index `{tok}`")))?;
            if k == 0 || k > n {
                return Err(Error::IndexOutOfRange { index: k, n });
            }
            Ok(k - 1)
        };
        match head.as_slice() {
            ["pow", i] => {
                let i = index(i)?;
                let w = parse_normal_rhs(rhs, &orders, ln, rhs_col)?;
                check_normal(&w, &orders, i + 1, ln)?;
                if powers[i].replace(w).is_some() {
                    return Err(syntax(
                        ln,
                        1,
                        format!("duplicate power relation for g{}", i + 1),
                    ));
                }
            }
            ["conj", j, i] => {
                let (j, i) = (index(j)?, index(i)?);
                if i >= j {
                    return Err(syntax(ln, 1, "`conj j i` requires i < j"));
                }
                let w = parse_normal_rhs(rhs, &orders, ln, rhs_col)?;
                check_normal(&w, &orders, i + 1, ln)?;
                if conjugates[pair_index(n, i, j)].replace(w).is_some() {
                    return Err(syntax(
                        ln,
                        1,
                        format!(
                            "duplicate conjugation relation for g{} by g{}",
                            j + 1,
                            i + 1
                        ),
                    ));
                }
            }
            _ => {
                return Err(syntax(
                    ln,
                    1,
                    "expected `pow i = <word>` or `conj j i = <word>`",
                ))
            }
        }
    }

    let powers = powers.into_iter().map(Option::unwrap_or_default).collect();
    let mut conj = Vec::with_capacity(conjugates.len());
    for i in 0..n {
        for j in i + 1..n {
            conj.push(
                conjugates[pair_index(n, i, j)]
                    .take()
                    .unwrap_or_else(|| vec![(j, 1)]),
            );
        }
    }
    PcPresentation::new(name, orders, powers, conj)
}

fn parse_normal_rhs(rhs: &str, orders: &[u32], line: usize, col0: usize) -> Result<NormalWord> {
    let mut w = Vec::new();
    for tok in rhs.split_whitespace() {
        let col = col0 + rhs.find(tok).unwrap_or(0);
        if tok == "1" {
            continue;
        }
        let (g, e) = parse_atom(tok, line, col)?;
        if g == 0 || g > orders.len() {
            return Err(Error::IndexOutOfRange {
                index: g,
                n: orders.len(),
            });
        }
        if e < 0 || e >= orders[g - 1] as i64 {
            return Err(Error::NonNormalWord {
                line,
                message: format!("exponent {e} of g{g} outside 0..{}", orders[g - 1]),
            });
        }
        if e > 0 {
            w.push((g - 1, e as u32));
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    const D4: &str = "name D4\norders 2 4\nconj 2 1 = g2^3\n";

    #[test]
    fn parse_and_render_round_trip() {
        let p = parse_presentation(D4).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.order(), 8);
        assert_eq!(p.render(), D4);
    }

    #[test]
    fn cyclic_with_no_relations() {
        let p = parse_presentation("name C5\norders 5\n").unwrap();
        assert_eq!(p.order(), 5);
        assert!(p.power_word(0).is_empty());
        assert_eq!(p.tail_count(), 1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let p =
            parse_presentation("# dihedral\n\nname D4\norders 2 4\n\nconj 2 1 = g2^3\n").unwrap();
        assert_eq!(p.order(), 8);
    }

    #[test]
    fn syntax_errors_report_positions() {
        match parse_presentation("name X\norders 2 x\n") {
            Err(Error::Syntax {
                line: 2,
                column: 10,
                ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_presentation("orders 2\n") {
            Err(Error::Syntax { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_presentation("name X\norders 2 2\nconj 2 1 = h2\n") {
            Err(Error::Syntax { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_normal_words() {
        // decreasing indices
        let r = parse_presentation("name X\norders 2 2 2\npow 1 = g3^1 g2^1\n");
        assert!(matches!(r, Err(Error::NonNormalWord { line: 3, .. })));
        // exponent too large
        let r = parse_presentation("name X\norders 2 2\npow 1 = g2^2\n");
        assert!(matches!(r, Err(Error::NonNormalWord { .. })));
        // power word using its own generator
        let r = parse_presentation("name X\norders 2 2\npow 2 = g2^1\n");
        assert!(matches!(r, Err(Error::NonNormalWord { .. })));
    }

    #[test]
    fn rejects_bad_indices() {
        let r = parse_presentation("name X\norders 2 2\nconj 3 1 = 1\n");
        assert!(matches!(r, Err(Error::IndexOutOfRange { index: 3, n: 2 })));
        let r = parse_presentation("name X\norders 2 2\nconj 1 2 = 1\n");
        assert!(matches!(r, Err(Error::Syntax { .. })));
    }

    #[test]
    fn rejects_inconsistent_d4() {
        // g2^{g1} = g2^2 is not an automorphism of <g2>; g2 * g1^2 fails.
        let r = parse_presentation("name D4bad\norders 2 4\nconj 2 1 = g2^2\n");
        match r {
            Err(Error::Inconsistent(ov)) => {
                assert!(ov.contains(&crate::error::Overlap::PowerRight { j: 2, i: 1 }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn word_parsing() {
        let w = Word::parse("g2^3 g1 g2^-1", 2).unwrap();
        assert_eq!(
            w.0,
            vec![
                Letter { gen: 1, exp: 3 },
                Letter { gen: 0, exp: 1 },
                Letter { gen: 1, exp: -1 }
            ]
        );
        assert_eq!(Word::parse("1", 3).unwrap(), Word::new());
        assert!(Word::parse("g4", 3).is_err());
    }
}
