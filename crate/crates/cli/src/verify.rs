use lineal::combid::{config_orbit_oracle, point_config_gf, row_space_bijection_check, vector_config_gf, ConfigKind};
use lineal::commclass::{
    burnside_gf, commuting_branching, commuting_gf, commuting_orbit_oracle, symmetric_burnside_gf,
};
use lineal::exactalg::{ratfun_eq, RatFun};
use lineal::grouper::named::{by_name, symmetric};
use lineal::matalg::{module_gf, module_orbit_oracle, Scale};
use lineal::Error;
use num_bigint::BigInt;

use crate::fixtures;
use crate::output::Out;
use crate::{CliResult, Failure};

struct Tally<'a> {
    suite: &'static str,
    out: &'a mut Out,
    passed: usize,
    failures: Vec<String>,
}

impl<'a> Tally<'a> {
    fn new(suite: &'static str, out: &'a mut Out) -> Self {
        Tally { suite, out, passed: 0, failures: Vec::new() }
    }

    fn record(&mut self, name: &str, ok: bool, detail: String) {
        if ok {
            self.passed += 1;
            self.out.check(self.suite, name, "PASS", &detail);
        } else {
            self.out.check(self.suite, name, "FAIL", &detail);
            self.failures.push(format!("{name}: {detail}"));
        }
    }

    fn info(&mut self, name: &str, detail: String) {
        self.out.check(self.suite, name, "INFO", &detail);
    }

    fn gf(&mut self, name: &str, got: &RatFun, want: &RatFun) {
        let ok = ratfun_eq(got, want);
        let detail = if ok { got.to_string() } else { diff(got, want) };
        self.record(name, ok, detail);
    }

    fn finish(self, note: &str) -> CliResult {
        self.out.summary(self.suite, self.passed, self.failures.len(), note);
        if self.failures.is_empty() {
            Ok(())
        } else {
            Err(Failure::Mismatch(self.failures.join("\n")))
        }
    }
}

/// Expected vs computed, plus the first differing coefficient.
fn diff(got: &RatFun, want: &RatFun) -> String {
    let a = got.series_rational(12);
    let b = want.series_rational(12);
    let first = a.iter().zip(&b).position(|(x, y)| x != y);
    let at = match first {
        Some(n) => format!("; first difference at t^{n}: computed {} expected {}", a[n], b[n]),
        None => String::new(),
    };
    format!("computed {got}, expected {want}{at}")
}

pub fn tables(out: &mut Out) -> CliResult {
    let t = fixtures::tables();
    let mut tally = Tally::new("paper-tables", out);

    for row in &t.burnside {
        let want = row.gf();
        tally.gf(&format!("burnside S{} (partition sum)", row.m), &symmetric_burnside_gf(row.m), &want);
        tally.gf(&format!("burnside S{} (element sum)", row.m), &burnside_gf(&symmetric(row.m)?), &want);
    }
    for row in &t.commuting {
        tally.gf(&format!("commuting S{}", row.m), &commuting_gf(&symmetric(row.m)?)?, &row.gf());
    }
    for row in &t.branching {
        let bm = commuting_branching(&symmetric(row.m)?)?;
        let ok = bm.equivalent_to(&row.matrix);
        let detail = if ok {
            format!("{} classes", bm.len())
        } else {
            format!("computed {:?}, expected {:?}", bm.matrix(), row.matrix)
        };
        tally.record(&format!("branching matrix S{}", row.m), ok, detail);
    }

    let mut readings = Vec::new();
    for row in &t.modules {
        let name = format!("h(q={}, m={}) [{}]", row.q, row.m, row.reading);
        let got = module_gf(row.q, row.m, Scale::Stretch)?;
        let want = row.gf();
        if row.m < 3 {
            tally.gf(&name, &got, &want);
            continue;
        }
        if ratfun_eq(&got, &want) {
            readings.push(row.reading.clone());
            tally.record(&name, true, got.to_string());
        } else {
            let integral = want.series(8).is_ok();
            tally.info(
                &name,
                format!(
                    "does not match; {}",
                    if integral { diff(&got, &want) } else { format!("{want} has non-integer coefficients") }
                ),
            );
        }
    }
    let note = match readings.as_slice() {
        [] => {
            tally.failures.push("h(q=2, m=3): no tabulated reading matches".into());
            "h(q=2, m=3): no tabulated reading matches".to_string()
        }
        rs => format!("h(q=2, m=3) matches reading: {}", rs.join(", ")),
    };
    tally.finish(&note)
}

fn series_vs_oracle(
    tally: &mut Tally,
    name: &str,
    gf: &RatFun,
    n_max: usize,
    mut oracle: impl FnMut(usize) -> lineal::Result<u64>,
) -> Result<(), Error> {
    let s = gf.series(n_max)?;
    let mut counts = Vec::new();
    for n in 0..=n_max {
        counts.push(oracle(n)?);
    }
    let ok = s.iter().zip(&counts).all(|(a, &b)| *a == BigInt::from(b));
    let show = |xs: Vec<String>| xs.join(", ");
    let detail = if ok {
        format!("n <= {n_max}: {}", show(counts.iter().map(|c| c.to_string()).collect()))
    } else {
        format!(
            "series {} vs oracle {}",
            show(s.iter().map(|c| c.to_string()).collect()),
            show(counts.iter().map(|c| c.to_string()).collect())
        )
    };
    tally.record(name, ok, detail);
    Ok(())
}

pub fn oracles(out: &mut Out, budget: u64) -> CliResult {
    let mut tally = Tally::new("oracles", out);

    for (name, n_max) in [("S3", 4), ("S4", 3), ("S5", 2), ("C6", 4), ("D4", 4)] {
        let g = by_name(name)?;
        let gf = commuting_gf(&g)?;
        series_vs_oracle(&mut tally, &format!("commuting {name}"), &gf, n_max, |n| {
            commuting_orbit_oracle(&g, n, budget)
        })?;
    }

    for (q, m, n_max, scale) in [
        (2u64, 1usize, 3usize, Scale::Desk),
        (3, 1, 3, Scale::Desk),
        (2, 2, 3, Scale::Desk),
        (3, 2, 2, Scale::Desk),
        (2, 3, 2, Scale::Stretch),
    ] {
        let gf = module_gf(q, m, scale)?;
        series_vs_oracle(&mut tally, &format!("modules q={q} m={m}"), &gf, n_max, |n| {
            module_orbit_oracle(q, m, n, scale, budget)
        })?;
    }

    for m in 0..=3 {
        let gf = point_config_gf(m)?;
        series_vs_oracle(&mut tally, &format!("points m={m}"), &gf, 4, |n| {
            config_orbit_oracle(ConfigKind::Point, m, n, budget).map(|c| c.total)
        })?;
    }
    for (q, m, n_max) in [(2u64, 1usize, 4usize), (2, 2, 3), (3, 2, 2)] {
        let gf = vector_config_gf(q, m)?;
        series_vs_oracle(&mut tally, &format!("vectors q={q} m={m}"), &gf, n_max, |n| {
            config_orbit_oracle(ConfigKind::Vector { q }, m, n, budget).map(|c| c.total)
        })?;
    }

    for (q, m, n) in [(2u64, 1usize, 2usize), (2, 2, 2), (2, 2, 3), (3, 2, 2)] {
        let ok = row_space_bijection_check(q, m, n, budget)?;
        tally.record(&format!("row spaces q={q} m={m} n={n}"), ok, String::new());
    }

    tally.finish("")
}
