//! JSON shapes. Integers are rendered as decimal strings so consumers never
//! lose precision; timing never enters these bodies.

use num_bigint::BigInt;
use pcmult::bogomolov::{BogomolovReport, Class2Report, FiveTermReport, FrobeniusReport};
use pcmult::intlattice::{IntegerLattice, InvariantList};
use pcmult::verify::PropertyCount;
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input: InputId,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Serialize, Clone)]
pub struct InputId {
    pub kind: &'static str,
    pub name: String,
    pub sha256: String,
}

pub fn invariants(l: &InvariantList) -> Vec<String> {
    l.divisors().iter().map(|d| d.to_string()).collect()
}

pub fn int(x: impl ToString) -> String {
    x.to_string()
}

pub fn lattice(l: &IntegerLattice) -> Vec<Vec<String>> {
    l.basis_rows()
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect()
}

#[derive(Serialize)]
pub struct Info {
    pub name: String,
    pub generators: String,
    pub relative_orders: Vec<String>,
    pub order: String,
    pub consistent: bool,
    pub abelianization: Vec<String>,
    pub derived_order: String,
    pub nilpotency_class: Option<String>,
    pub conjugacy_classes: String,
}

#[derive(Serialize)]
pub struct Multiplier {
    pub name: String,
    pub order: String,
    pub tails: String,
    pub consistency_rank: String,
    pub multiplier: Vec<String>,
    pub derived_order: String,
    pub exterior_square_order: String,
}

#[derive(Serialize)]
pub struct Bogomolov {
    pub name: String,
    pub order: String,
    pub abelianization: Vec<String>,
    pub derived_order: String,
    pub multiplier: Vec<String>,
    pub m0_order: String,
    pub m0_index: String,
    pub m0_generators: String,
    pub bogomolov: Vec<String>,
    pub exterior_square_order: String,
    pub curly_wedge_order: String,
    pub method: String,
}

impl From<&BogomolovReport> for Bogomolov {
    fn from(r: &BogomolovReport) -> Self {
        Bogomolov {
            name: r.name.clone(),
            order: int(r.order),
            abelianization: invariants(&r.abelianization),
            derived_order: int(r.derived_order),
            multiplier: invariants(&r.multiplier),
            m0_order: int(&r.m0_order),
            m0_index: int(&r.m0_index),
            m0_generators: int(r.m0_generators),
            bogomolov: invariants(&r.bogomolov),
            exterior_square_order: int(&r.exterior_square_order),
            curly_wedge_order: int(&r.curly_wedge_order),
            method: r.method.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct GeneratorWedge {
    pub pair: [String; 2],
    pub commutator: String,
    pub tails: Vec<String>,
}

#[derive(Serialize)]
pub struct Wedge {
    #[serde(flatten)]
    pub bogomolov: Bogomolov,
    pub consistency_lattice: Vec<Vec<String>>,
    pub saturation: Vec<Vec<String>>,
    pub m0_lattice: Vec<Vec<String>>,
    pub generator_wedges: Vec<GeneratorWedge>,
}

#[derive(Serialize)]
pub struct CheckOut {
    pub name: String,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct FiveTerm {
    pub name: String,
    pub normal_generators: Vec<String>,
    pub normal_closure_used: bool,
    pub normal_order: String,
    pub b0_group: Vec<String>,
    pub b0_quotient: Vec<String>,
    pub commutator_part_order: String,
    pub third_term_order: String,
    pub abelianization_group: Vec<String>,
    pub abelianization_quotient: Vec<String>,
    pub image_rho: Option<String>,
    pub kernel_sigma: Option<String>,
    pub image_sigma: Option<String>,
    pub kernel_pi: String,
    pub checks: Vec<CheckOut>,
    pub partial: bool,
    pub passed: bool,
}

impl FiveTerm {
    pub fn new(r: &FiveTermReport, gens: Vec<String>, closure_used: bool) -> Self {
        FiveTerm {
            name: r.name.clone(),
            normal_generators: gens,
            normal_closure_used: closure_used,
            normal_order: int(r.normal_order),
            b0_group: invariants(&r.b0_group),
            b0_quotient: invariants(&r.b0_quotient),
            commutator_part_order: int(r.commutator_part_order),
            third_term_order: int(r.third_term_order),
            abelianization_group: invariants(&r.abelianization_group),
            abelianization_quotient: invariants(&r.abelianization_quotient),
            image_rho: r.image_rho.as_ref().map(int),
            kernel_sigma: r.kernel_sigma.map(int),
            image_sigma: r.image_sigma.map(int),
            kernel_pi: int(r.kernel_pi),
            checks: r
                .checks
                .iter()
                .map(|c| CheckOut {
                    name: c.name.to_string(),
                    passed: c.passed,
                })
                .collect(),
            partial: r.partial,
            passed: r.passed(),
        }
    }
}

#[derive(Serialize)]
pub struct Property {
    pub name: String,
    pub checked: String,
    pub failures: String,
}

pub fn properties(counts: &[PropertyCount]) -> Vec<Property> {
    counts
        .iter()
        .map(|c| Property {
            name: c.name.to_string(),
            checked: int(c.checked),
            failures: int(c.failures),
        })
        .collect()
}

#[derive(Serialize)]
pub struct Class2Out {
    pub ker_phi: String,
    pub ker_psi: String,
    pub bogomolov_order: String,
    pub passed: bool,
}

impl From<&Class2Report> for Class2Out {
    fn from(c: &Class2Report) -> Self {
        Class2Out {
            ker_phi: int(c.ker_phi),
            ker_psi: int(c.ker_psi),
            bogomolov_order: int(&c.b0_order),
            passed: c.passed,
        }
    }
}

#[derive(Serialize)]
pub struct FrobeniusOut {
    pub is_frobenius: bool,
    pub reason: Option<String>,
    pub commuting_pairs: String,
    pub pair_failures: String,
    pub kernel_abelian: bool,
    pub bogomolov: Option<Vec<String>>,
    pub passed: bool,
}

impl From<&FrobeniusReport> for FrobeniusOut {
    fn from(f: &FrobeniusReport) -> Self {
        FrobeniusOut {
            is_frobenius: f.is_frobenius,
            reason: f.reason.clone(),
            commuting_pairs: int(f.commuting_pairs),
            pair_failures: int(f.pair_failures),
            kernel_abelian: f.kernel_abelian,
            bogomolov: f.bogomolov.as_ref().map(invariants),
            passed: !f.is_frobenius || f.passed,
        }
    }
}

#[derive(Serialize)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<CheckOut>,
    pub group_laws: Vec<Property>,
    pub wedge_identities: Vec<Property>,
    pub class2: Option<Class2Out>,
    pub blackburn_evens: Option<String>,
    pub frobenius: Option<FrobeniusOut>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct Verify {
    pub suites: Vec<Suite>,
    pub passed: bool,
}
