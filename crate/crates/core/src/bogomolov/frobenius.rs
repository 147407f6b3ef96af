use super::m0::{bogomolov_multiplier, Method};
use crate::error::{Error, Result};
use crate::intlattice::InvariantList;
use crate::pcgroup::{PcGroup, Subgroup};
use crate::wedgecover::ExtSquareData;

/// Outcome of the Frobenius-group checks for a kernel candidate `N`.
#[derive(Clone, Debug)]
pub struct FrobeniusReport {
    pub name: String,
    pub is_frobenius: bool,
    /// Why the group was rejected as Frobenius with kernel `N`, if it was.
    pub reason: Option<String>,
    pub complement_order: usize,
    pub commuting_pairs: usize,
    /// Commuting pairs neither inside `N` nor inside one conjugate of the
    /// complement.
    pub pair_failures: usize,
    pub kernel_abelian: bool,
    pub bogomolov: Option<InvariantList>,
    pub passed: bool,
}

/// A subgroup of order `|G:N|` meeting `N` trivially, on at most two generators.
fn find_complement(g: &PcGroup, n: &Subgroup) -> Option<Subgroup> {
    let target = g.order() / n.order();
    if target == 1 {
        return Some(g.trivial_subgroup());
    }
    let meets_trivially = |h: &Subgroup| h.members().iter().all(|&x| x == 0 || !n.contains(x));
    for a in 1..g.order() {
        if n.contains(a) || !target.is_multiple_of(g.element_order(a)) {
            continue;
        }
        let h = g.closure(&[a]);
        if h.order() == target && meets_trivially(&h) {
            return Some(h);
        }
        if h.order() >= target || !meets_trivially(&h) {
            continue;
        }
        for b in a + 1..g.order() {
            if h.contains(b) || n.contains(b) {
                continue;
            }
            let k = g.extend(&h, b);
            if k.order() == target && meets_trivially(&k) {
                return Some(k);
            }
        }
    }
    None
}

pub fn frobenius_checks(g: &PcGroup, n_set: &[usize], pair_bound: u128) -> Result<FrobeniusReport> {
    let n = g.subgroup_from_set(n_set)?;
    if !g.is_normal(&n) {
        return Err(Error::NotNormal);
    }
    let name = g.presentation().name().to_string();
    let mut report = FrobeniusReport {
        name,
        is_frobenius: false,
        reason: None,
        complement_order: 0,
        commuting_pairs: 0,
        pair_failures: 0,
        kernel_abelian: n
            .members()
            .iter()
            .all(|&x| n.members().iter().all(|&y| g.commute(x, y))),
        bogomolov: None,
        passed: false,
    };
    if n.order() == 1 || n.order() == g.order() {
        report.reason = Some("kernel must be a proper nontrivial subgroup".into());
        return Ok(report);
    }
    let Some(h) = find_complement(g, &n) else {
        report.reason = Some("no complement found".into());
        return Ok(report);
    };
    report.complement_order = h.order();
    // C_G(x) ≤ N for every nontrivial x in N
    let fixed_point_free = n
        .members()
        .into_iter()
        .filter(|&x| x != 0)
        .all(|x| (0..g.order()).all(|y| !g.commute(x, y) || n.contains(y)));
    if !fixed_point_free {
        report.reason =
            Some("some nontrivial kernel element has a centralizer outside the kernel".into());
        return Ok(report);
    }
    report.is_frobenius = true;

    // conjugates of the complement
    let mut conjugates: Vec<Vec<bool>> = Vec::new();
    for z in 0..g.order() {
        let mut mask = vec![false; g.order()];
        for x in h.members() {
            mask[g.conj(z, x)] = true;
        }
        if !conjugates.contains(&mask) {
            conjugates.push(mask);
        }
    }
    for x in 0..g.order() {
        for y in 0..g.order() {
            if !g.commute(x, y) {
                continue;
            }
            report.commuting_pairs += 1;
            let ok = (n.contains(x) && n.contains(y)) || conjugates.iter().any(|m| m[x] && m[y]);
            if !ok {
                report.pair_failures += 1;
            }
        }
    }
    let mut passed = report.pair_failures == 0;
    if report.kernel_abelian {
        let e = ExtSquareData::new(g)?;
        let b0 = bogomolov_multiplier(&e, Method::Classes, pair_bound)?.bogomolov;
        passed &= b0.is_trivial();
        report.bogomolov = Some(b0);
    }
    report.passed = passed;
    Ok(report)
}
