use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::m0::m0_lattice_classes;
use crate::error::{Error, Result};
use crate::intlattice::quotient_invariants;
use crate::pcgroup::PcGroup;
use crate::wedgecover::ExtSquareData;

/// Cap on `|V ∧ V|` for the class-2 enumeration.
const WEDGE_ENUMERATION_BOUND: u128 = 1 << 20;

/// Comparison of `|ker Φ| / |ker Ψ|` with the main `B̃_0` computation.
///
/// `ker Ψ` is read off the same wedge data as the main computation, so this
/// checks coherence rather than giving an independent answer.
#[derive(Clone, Debug)]
pub struct Class2Report {
    pub name: String,
    /// Elementary divisors of `G^ab` in its Smith basis.
    pub abelianization: Vec<u64>,
    pub wedge_order: u128,
    pub ker_phi: u128,
    pub ker_psi: u128,
    pub b0_order: BigInt,
    pub passed: bool,
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

pub fn class2_check(g: &PcGroup, e: &ExtSquareData) -> Result<Class2Report> {
    match g.nilpotency_class() {
        Some(c) if c <= 2 => {}
        _ => {
            return Err(Error::Hypothesis(
                "group is not nilpotent of class at most 2".into(),
            ))
        }
    }
    let p = g.presentation();
    let ab = p.abelianization_basis();
    let d: Vec<u64> = ab
        .invariants
        .divisors()
        .iter()
        .map(|x| x.to_u64().expect("small invariant"))
        .collect();
    let basis: Vec<usize> = ab.basis.iter().map(|b| g.index_of(b)).collect();
    let t = d.len();
    // V ∧ V = ⊕_{i<j} Z/gcd(d_i, d_j)
    let mut pairs = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            pairs.push((i, j, gcd(d[i], d[j])));
        }
    }
    let wedge_order: u128 = pairs.iter().map(|&(_, _, m)| m as u128).product();
    if wedge_order > WEDGE_ENUMERATION_BOUND {
        return Err(Error::BoundExceeded {
            what: "abelian exterior square",
            size: wedge_order,
            bound: WEDGE_ENUMERATION_BOUND,
        });
    }
    let m0 = m0_lattice_classes(e)?;
    let b0_order = quotient_invariants(e.saturated_lattice(), &m0)?.order();
    let phi: Vec<usize> = pairs
        .iter()
        .map(|&(i, j, _)| g.comm(basis[i], basis[j]))
        .collect();
    let cover = e.cover();
    let psi: Vec<_> = pairs
        .iter()
        .map(|&(i, j, _)| e.wedge_indices(basis[i], basis[j]))
        .collect();

    let mut ker_phi = 0u128;
    let mut ker_psi = 0u128;
    let mut coeffs = vec![0u64; pairs.len()];
    loop {
        let mut x = 0;
        let mut w = cover.identity();
        for (k, &c) in coeffs.iter().enumerate() {
            for _ in 0..c {
                x = g.mul(x, phi[k]);
                w = cover.multiply(&w, &psi[k]);
            }
        }
        if x == 0 {
            ker_phi += 1;
            if w.gpart.is_identity() && m0.contains(&w.tails) {
                ker_psi += 1;
            }
        }
        // next coefficient vector
        let mut k = 0;
        while k < coeffs.len() {
            coeffs[k] += 1;
            if coeffs[k] < pairs[k].2 {
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
        if k == coeffs.len() {
            break;
        }
    }
    let passed = ker_psi != 0
        && ker_phi.is_multiple_of(ker_psi)
        && BigInt::from(ker_phi / ker_psi) == b0_order;
    Ok(Class2Report {
        name: p.name().to_string(),
        abelianization: d,
        wedge_order,
        ker_phi,
        ker_psi,
        b0_order,
        passed,
    })
}

/// Rank over `F_p` of the given rows.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c] % p, p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_multiple_of(p) {
                let f = rows[r][c] % p;
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + (p - f) * rows[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn prime_of_power(n: usize) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p as u64)
}

/// `|ker Φ| · |(V ⊗ W)/X|` over `F_p`, which predicts `|M(G)|` for a
/// `p`-group of class at most 2 with elementary abelian `G^ab`. Uses only
/// group arithmetic, never the tails machinery.
pub fn blackburn_evens_multiplier_order(g: &PcGroup) -> Result<BigInt> {
    let p = prime_of_power(g.order())
        .ok_or_else(|| Error::Hypothesis("group is not a nontrivial p-group".into()))?;
    match g.nilpotency_class() {
        Some(c) if c <= 2 => {}
        _ => {
            return Err(Error::Hypothesis(
                "group is not nilpotent of class at most 2".into(),
            ))
        }
    }
    let ab = g.presentation().abelianization_basis();
    if ab
        .invariants
        .divisors()
        .iter()
        .any(|x| *x != BigInt::from(p))
    {
        return Err(Error::Hypothesis(
            "abelianization is not elementary abelian".into(),
        ));
    }
    let v: Vec<usize> = ab.basis.iter().map(|b| g.index_of(b)).collect();
    let dv = v.len();

    // F_p basis of W = γ_2(G) and a coordinate table for its elements
    let derived = g.derived_subgroup();
    let mut wbasis: Vec<usize> = Vec::new();
    let mut span = g.trivial_subgroup();
    for x in derived.members() {
        if !span.contains(x) {
            span = g.extend(&span, x);
            wbasis.push(x);
        }
    }
    let dw = wbasis.len();
    let mut coord: HashMap<usize, Vec<u64>> = HashMap::new();
    let total = (p as usize).pow(dw as u32);
    for code in 0..total {
        let mut c = vec![0u64; dw];
        let mut rest = code;
        let mut x = 0;
        for k in 0..dw {
            c[k] = (rest % p as usize) as u64;
            rest /= p as usize;
            for _ in 0..c[k] {
                x = g.mul(x, wbasis[k]);
            }
        }
        coord.insert(x, c);
    }
    if coord.len() != derived.order() {
        return Err(Error::Hypothesis(
            "derived subgroup is not elementary abelian".into(),
        ));
    }
    let w_of = |x: usize| -> Result<Vec<u64>> {
        coord
            .get(&x)
            .cloned()
            .ok_or_else(|| Error::CrossCheck("element outside the derived subgroup".into()))
    };
    let bracket: Vec<Vec<Vec<u64>>> = (0..dv)
        .map(|i| {
            (0..dv)
                .map(|j| w_of(g.comm(v[i], v[j])))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    // ker Φ: Φ(v_i ∧ v_j) = (v_i, v_j)
    let mut phi_rows = Vec::new();
    for i in 0..dv {
        for j in i + 1..dv {
            phi_rows.push(bracket[i][j].clone());
        }
    }
    let wedge_dim = dv * dv.saturating_sub(1) / 2;
    let ker_phi_dim = wedge_dim - if dw == 0 { 0 } else { rank_mod_p(phi_rows, p) };

    // X = X_1 + X_2 inside V ⊗ W, coordinates (i, k) -> i * dw + k
    let tensor = |vc: &[u64], wc: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; dv * dw];
        for i in 0..dv {
            for k in 0..dw {
                out[i * dw + k] = vc[i] * wc[k] % p;
            }
        }
        out
    };
    let unit = |i: usize| -> Vec<u64> {
        let mut e = vec![0u64; dv];
        e[i] = 1;
        e
    };
    let mut x_rows = Vec::new();
    for a in 0..dv {
        for b in 0..dv {
            for c in 0..dv {
                let t1 = tensor(&unit(a), &bracket[b][c]);
                let t2 = tensor(&unit(b), &bracket[c][a]);
                let t3 = tensor(&unit(c), &bracket[a][b]);
                x_rows.push((0..dv * dw).map(|k| (t1[k] + t2[k] + t3[k]) % p).collect());
            }
        }
    }
    // X_2 over every v in V, lifted as a product of basis elements
    let vtotal = (p as usize).pow(dv as u32);
    for code in 0..vtotal {
        let mut c = vec![0u64; dv];
        let mut rest = code;
        let mut x = 0;
        for k in 0..dv {
            c[k] = (rest % p as usize) as u64;
            rest /= p as usize;
            for _ in 0..c[k] {
                x = g.mul(x, v[k]);
            }
        }
        let fx = w_of(g.pow_index(x, p as usize))?;
        x_rows.push(tensor(&c, &fx));
    }
    let x_dim = if dv * dw == 0 {
        0
    } else {
        rank_mod_p(x_rows, p)
    };
    let exponent = ker_phi_dim + dv * dw - x_dim;
    Ok(BigInt::from(p).pow(exponent as u32))
}
