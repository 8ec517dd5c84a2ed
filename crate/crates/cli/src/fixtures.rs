use lineal::exactalg::{Poly, RatFun};
use num_bigint::BigInt;
use serde::Deserialize;

const TABLES: &str = include_str!("../fixtures/tables.json");

#[derive(Debug, Deserialize)]
pub struct Tables {
    pub burnside: Vec<GfRow>,
    pub commuting: Vec<GfRow>,
    pub modules: Vec<ModuleRow>,
    pub branching: Vec<MatrixRow>,
}

#[derive(Debug, Deserialize)]
pub struct GfRow {
    pub m: usize,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct ModuleRow {
    pub q: u64,
    pub m: usize,
    pub reading: String,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct MatrixRow {
    pub m: usize,
    pub matrix: Vec<Vec<u64>>,
}

pub fn tables() -> Tables {
    serde_json::from_str(TABLES).expect("bundled fixture parses")
}

pub fn ratfun(num: &[String], den: &[String]) -> RatFun {
    let poly = |cs: &[String]| Poly::new(cs.iter().map(|c| c.parse::<BigInt>().expect("integer")).collect());
    RatFun::new(poly(num), poly(den)).expect("fixture denominator is valid")
}

impl GfRow {
    pub fn gf(&self) -> RatFun {
        ratfun(&self.num, &self.den)
    }
}

impl ModuleRow {
    pub fn gf(&self) -> RatFun {
        ratfun(&self.num, &self.den)
    }
}
