use std::fmt;

use super::presentation::{NormalWord, PcPresentation, Word};
use crate::error::Overlap;

/// An element of the group in normal form `g_1^{e_1} ... g_n^{e_n}`, `0 <= e_i < r_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub(crate) Vec<u32>);

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement(vec![0; n])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        GroupElement(exps)
    }

    /// The `i`-th pc generator (0-based).
    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        GroupElement(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn to_word(&self) -> Word {
        let mut w = Word::new();
        for (g, &e) in self.0.iter().enumerate() {
            if e != 0 {
                w.push(g, e as i64);
            }
        }
        w
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "g{}^{}", g + 1, e)?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// Collected left and right sides of one overlap test.
pub(crate) struct OverlapEval {
    pub overlap: Overlap,
    pub lhs: (Vec<u32>, Vec<i64>),
    pub rhs: (Vec<u32>, Vec<i64>),
}

impl PcPresentation {
    pub(crate) fn tail_of_power(&self, i: usize) -> usize {
        i
    }

    pub(crate) fn tail_of_conj(&self, i: usize, j: usize) -> usize {
        self.n() + self.pair_index(i, j)
    }

    /// Multiplies the normal form `exps` on the right by `g_k`, collecting
    /// from the left. Pending generators live on `stack`; when `tails` is
    /// given, each relation application adds one unit of its tail.
    fn drain(&self, exps: &mut [u32], mut tails: Option<&mut [i64]>, stack: &mut Vec<usize>) {
        let n = self.n();
        while let Some(k) = stack.pop() {
            let trailing = exps[k + 1..].iter().any(|&e| e != 0);
            if !trailing {
                self.bump(exps, tails.as_deref_mut(), k);
                continue;
            }
            let commutes =
                (k + 1..n).all(|l| exps[l] == 0 || self.trivial_conj[self.pair_index(k, l)]);
            if commutes && exps[k] + 1 < self.orders[k] {
                exps[k] += 1;
                if let Some(t) = tails.as_deref_mut() {
                    for l in k + 1..n {
                        if exps[l] != 0 {
                            t[self.tail_of_conj(k, l)] += exps[l] as i64;
                        }
                    }
                }
                continue;
            }
            // T g_k = g_k T^{g_k} with T = g_{k+1}^{e_{k+1}} ... g_n^{e_n}.
            let mut saved: Vec<(usize, u32)> = Vec::new();
            for l in k + 1..n {
                if exps[l] != 0 {
                    saved.push((l, std::mem::take(&mut exps[l])));
                }
            }
            self.bump(exps, tails.as_deref_mut(), k);
            for &(l, e) in saved.iter().rev() {
                let w = &self.conjugates[self.pair_index(k, l)];
                if let Some(t) = tails.as_deref_mut() {
                    t[self.tail_of_conj(k, l)] += e as i64;
                }
                for _ in 0..e {
                    for &(h, f) in w.iter().rev() {
                        for _ in 0..f {
                            stack.push(h);
                        }
                    }
                }
            }
        }
    }

    /// `exps` has no entries beyond `k`; increments `e_k`, applying the power
    /// relation on overflow.
    fn bump(&self, exps: &mut [u32], tails: Option<&mut [i64]>, k: usize) {
        exps[k] += 1;
        if exps[k] == self.orders[k] {
            exps[k] = 0;
            if let Some(t) = tails {
                t[self.tail_of_power(k)] += 1;
            }
            for &(h, f) in &self.powers[k] {
                exps[h] = f;
            }
        }
    }

    /// Multiplies `exps` on the right by the letters of `word`.
    pub(crate) fn collect_into(
        &self,
        exps: &mut [u32],
        mut tails: Option<&mut [i64]>,
        word: impl IntoIterator<Item = (usize, i64)>,
    ) {
        let mut stack = Vec::new();
        for (g, e) in word {
            if e >= 0 {
                for _ in 0..e {
                    stack.push(g);
                    self.drain(exps, tails.as_deref_mut(), &mut stack);
                }
            } else {
                let (w, corr) = &self.inverse_gens[g];
                for _ in 0..(-e) {
                    for &(h, f) in w.iter().rev() {
                        for _ in 0..f {
                            stack.push(h);
                        }
                    }
                    self.drain(exps, tails.as_deref_mut(), &mut stack);
                    if let Some(t) = tails.as_deref_mut() {
                        for (ti, ci) in t.iter_mut().zip(corr) {
                            *ti += ci;
                        }
                    }
                }
            }
        }
    }

    /// Multiplies `exps` on the right by a normal-form element.
    pub(crate) fn mul_into(&self, exps: &mut [u32], tails: Option<&mut [i64]>, rhs: &[u32]) {
        let letters = rhs
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(g, &e)| (g, e as i64));
        self.collect_into(exps, tails, letters);
    }

    /// Returns the normal form of `exps^{-1}`, leaving `exps` at the identity;
    /// `tails` accumulates the tails of collecting `exps * result`.
    pub(crate) fn invert_into(&self, exps: &mut [u32], mut tails: Option<&mut [i64]>) -> Vec<u32> {
        let n = self.n();
        let mut inv = vec![0u32; n];
        for k in 0..n {
            let e = exps[k];
            if e == 0 {
                continue;
            }
            let f = self.orders[k] - e;
            inv[k] = f;
            self.collect_into(exps, tails.as_deref_mut(), [(k, f as i64)]);
            debug_assert!(exps[..=k].iter().all(|&x| x == 0));
        }
        inv
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.n())
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement::generator(self.n(), i)
    }

    /// Normal form of an arbitrary word.
    pub fn collect(&self, w: &Word) -> GroupElement {
        let mut e = vec![0; self.n()];
        self.collect_into(&mut e, None, w.0.iter().map(|l| (l.gen, l.exp)));
        GroupElement(e)
    }

    pub fn normal_word_element(&self, w: &NormalWord) -> GroupElement {
        let mut e = vec![0; self.n()];
        for &(g, f) in w {
            e[g] = f;
        }
        GroupElement(e)
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut e = a.0.clone();
        self.mul_into(&mut e, None, &b.0);
        GroupElement(e)
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let mut e = a.0.clone();
        GroupElement(self.invert_into(&mut e, None))
    }

    /// `a^k` by square-and-multiply; negative `k` inverts first.
    pub fn power(&self, a: &GroupElement, k: i64) -> GroupElement {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// `[x, y] = x y x^{-1} y^{-1}`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut e = x.0.clone();
        self.mul_into(&mut e, None, &y.0);
        let xi = self.inverse(x);
        self.mul_into(&mut e, None, &xi.0);
        let yi = self.inverse(y);
        self.mul_into(&mut e, None, &yi.0);
        GroupElement(e)
    }

    /// `x y x^{-1}`.
    pub fn conjugate(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut e = x.0.clone();
        self.mul_into(&mut e, None, &y.0);
        let xi = self.inverse(x);
        self.mul_into(&mut e, None, &xi.0);
        GroupElement(e)
    }

    /// Collects both sides of every overlap test with tail bookkeeping.
    pub(crate) fn overlap_evaluations(&self) -> Vec<OverlapEval> {
        let n = self.n();
        let m = self.tail_count();
        let gen = |i: usize| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        };
        // normal form of g_a g_b with tails
        let pair = |a: usize, b: usize| {
            let mut e = gen(a);
            let mut t = vec![0i64; m];
            self.collect_into(&mut e, Some(&mut t), [(b, 1)]);
            (e, t)
        };
        // g_i^{r_i} = w_i t_i
        let power = |i: usize| {
            let mut e = vec![0u32; n];
            for &(h, f) in &self.powers[i] {
                e[h] = f;
            }
            let mut t = vec![0i64; m];
            t[self.tail_of_power(i)] = 1;
            (e, t)
        };
        let times = |(mut e, mut t): (Vec<u32>, Vec<i64>), rhs: &(Vec<u32>, Vec<i64>)| {
            self.mul_into(&mut e, Some(&mut t), &rhs.0);
            for (a, b) in t.iter_mut().zip(&rhs.1) {
                *a += b;
            }
            (e, t)
        };
        let zero = || vec![0i64; m];

        let mut out = Vec::new();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let lhs = times((gen(k), zero()), &pair(j, i));
                    let rhs = times(pair(k, j), &(gen(i), zero()));
                    out.push(OverlapEval {
                        overlap: Overlap::Triple {
                            k: k + 1,
                            j: j + 1,
                            i: i + 1,
                        },
                        lhs,
                        rhs,
                    });
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let lhs = times(power(j), &(gen(i), zero()));
                let mut top = vec![0u32; n];
                top[j] = self.orders[j] - 1;
                let rhs = times((top, zero()), &pair(j, i));
                out.push(OverlapEval {
                    overlap: Overlap::PowerLeft { j: j + 1, i: i + 1 },
                    lhs,
                    rhs,
                });

                let lhs = times((gen(j), zero()), &power(i));
                let mut rest = vec![0u32; n];
                rest[i] = self.orders[i] - 1;
                let rhs = times(pair(j, i), &(rest, zero()));
                out.push(OverlapEval {
                    overlap: Overlap::PowerRight { j: j + 1, i: i + 1 },
                    lhs,
                    rhs,
                });
            }
        }
        for i in 0..n {
            let lhs = times((gen(i), zero()), &power(i));
            let rhs = times(power(i), &(gen(i), zero()));
            out.push(OverlapEval {
                overlap: Overlap::PowerSelf { i: i + 1 },
                lhs,
                rhs,
            });
        }
        out
    }

    /// Runs the overlap tests; returns the failing overlaps (empty when consistent).
    pub fn is_consistent(&self) -> Vec<Overlap> {
        self.overlap_evaluations()
            .into_iter()
            .filter(|ev| ev.lhs.0 != ev.rhs.0)
            .map(|ev| ev.overlap)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::parse_presentation;

    fn d4() -> PcPresentation {
        parse_presentation("name D4\norders 2 4\nconj 2 1 = g2^3\n").unwrap()
    }

    fn el(v: &[u32]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    #[test]
    fn collect_d4_rotation_past_reflection() {
        let p = d4();
        let w = Word(vec![
            super::super::Letter { gen: 1, exp: 1 },
            super::super::Letter { gen: 0, exp: 1 },
        ]);
        assert_eq!(p.collect(&w), el(&[1, 3]));
        assert_eq!(p.collect(&Word::new()), p.identity());
    }

    #[test]
    fn d4_arithmetic() {
        let p = d4();
        let g2 = p.generator(1);
        assert_eq!(p.power(&g2, 4), p.identity());
        assert_eq!(p.inverse(&g2), el(&[0, 3]));
        let a = el(&[1, 2]);
        assert_eq!(p.multiply(&p.identity(), &a), a);
        assert_eq!(p.multiply(&p.inverse(&a), &a), p.identity());
        assert_eq!(p.power(&g2, -1), el(&[0, 3]));
        assert_eq!(p.commutator(&a, &a), p.identity());
        // [g1, g2] = g1 g2 g1 g2^3 = g2^3 g2^3 = g2^2
        assert_eq!(p.commutator(&p.generator(0), &g2), el(&[0, 2]));
        assert_eq!(p.conjugate(&p.generator(0), &g2), el(&[0, 3]));
    }

    #[test]
    fn negative_exponents() {
        let p = d4();
        let w = Word::parse("g1^-1 g2^-5", 2).unwrap();
        // g1^-1 = g1, g2^-5 = g2^3
        assert_eq!(p.collect(&w), el(&[1, 3]));
    }

    #[test]
    fn cyclic_is_consistent() {
        let p = parse_presentation("name C7\norders 7\n").unwrap();
        assert!(p.is_consistent().is_empty());
    }
}
