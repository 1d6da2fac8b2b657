use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::Path;

use serde_json::{json, Value};
use signed_poset::fibonacci::FibWord;
use signed_poset::identities::{
    fibonacci, fk, gk, involution, nfact, signfact, signsum, sjostrand, stanley, IdentityTable,
};
use signed_poset::series::{
    empirical_tau_ratio, kappa_series, product_formula, rank_series, tau_series,
    verify_series_identity, ProductFormula, SeriesIdentity, TruncatedSeries,
};
use signed_poset::young::{imbalance as partition_imbalance, sign_a, sign_a_prime, Partition};
use signed_poset::{fibonacci::fib_imbalance, verify_axioms, Axiom, PosetError};

use crate::spec::{ExtendBase, Family, PosetSpec};
use crate::{CliError, Format, IdentityName, Outcome, ShapeFamily};

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn strings(s: &TruncatedSeries) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn verify(
    spec: &PosetSpec,
    axioms: &[Axiom],
    max_check_rank: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    let (variant, p) = spec.build()?;
    let axioms = if axioms.is_empty() {
        vec![Axiom::Weak, Axiom::for_variant(variant)]
    } else {
        axioms.to_vec()
    };
    let top = match max_check_rank {
        Some(r) => r,
        None => spec
            .max_rank
            .checked_sub(1)
            .ok_or_else(|| CliError::Usage("nothing to check on a rank-0 poset".into()))?,
    };
    let reports = axioms
        .iter()
        .map(|&a| verify_axioms(&p, a, top))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed());
    match format {
        Format::Csv => {
            let mut text = String::from("axiom,certified_rank,rank,index,partner_rank,partner_index,expected,got\n");
            for r in &reports {
                for f in &r.failures {
                    let (pr, pi) = f
                        .partner
                        .map(|q| (q[0].to_string(), q[1].to_string()))
                        .unwrap_or_default();
                    text.push_str(&format!(
                        "{},{},{},{},{pr},{pi},{},{}\n",
                        r.axiom, r.certified_rank, f.element[0], f.element[1], f.expected, f.got
                    ));
                }
            }
            emit(&text)?;
        }
        _ => {
            let value = json!({
                "poset": spec.to_string(),
                "max_rank": spec.max_rank,
                "passed": passed,
                "reports": reports,
            });
            emit(&value.to_string())?;
        }
    }
    Ok(Outcome::from_bool(passed))
}

pub fn identity(
    name: IdentityName,
    spec: &PosetSpec,
    range: RangeInclusive<usize>,
    max_weight: usize,
    order: usize,
    format: Format,
) -> Result<Outcome, CliError> {
    let table: IdentityTable = match name {
        IdentityName::Signfact => signfact(&spec.build()?.1, range)?,
        IdentityName::Signsum => {
            let (variant, p) = spec.build()?;
            signsum(&p, variant, range)?
        }
        IdentityName::Stanley => stanley(range)?,
        IdentityName::Fibonacci => fibonacci(range)?,
        IdentityName::Sjostrand => sjostrand(range, max_weight)?,
        IdentityName::Fk => fk(range, order)?,
        IdentityName::Gk => gk(range, order)?,
        IdentityName::Nfact => nfact(range)?,
        IdentityName::Involution => involution(range)?,
    };
    match format {
        Format::Csv => emit(&table.to_csv())?,
        _ => emit(&table.to_json())?,
    }
    Ok(Outcome::from_bool(table.holds()))
}

pub fn chains(spec: &PosetSpec, rank: Option<usize>, format: Format) -> Result<Outcome, CliError> {
    let (_, p) = spec.build()?;
    let ranks = match rank {
        Some(r) if r > p.max_rank() => {
            return Err(PosetError::Truncation {
                requested: r,
                max_rank: p.max_rank(),
            }
            .into())
        }
        Some(r) => r..=r,
        None => 0..=p.max_rank(),
    };
    let e = p.signed_chain_sums();
    let f = p.unsigned_chain_counts();
    let mut rows = Vec::new();
    for r in ranks {
        for x in p.elements(r) {
            rows.push((r, x.index, p.label(x)?.to_string(), p.vertex_sign(x).to_i8(), &e[r][x.index], &f[r][x.index]));
        }
    }
    match format {
        Format::Csv => {
            let mut text = String::from("rank,index,label,v,e,f\n");
            for (r, i, label, v, e, f) in &rows {
                text.push_str(&format!("{r},{i},{},{v},{e},{f}\n", csv_field(label)));
            }
            emit(&text)?;
        }
        _ => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(r, i, label, v, e, f)| {
                    json!({"rank": r, "index": i, "label": label, "v": v, "e": e.to_string(), "f": f.to_string()})
                })
                .collect();
            emit(&json!({"poset": spec.to_string(), "elements": items}).to_string())?;
        }
    }
    Ok(Outcome::Pass)
}

pub fn imbalance(
    family: ShapeFamily,
    shape: Option<&str>,
    n: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    let usage = || CliError::Usage("give either --shape or --n".into());
    let mut rows: Vec<Vec<(&'static str, String)>> = Vec::new();
    match family {
        ShapeFamily::Partition => {
            let shapes = match (shape, n) {
                (Some(s), None) => vec![s.parse::<Partition>()?],
                (None, Some(n)) => Partition::all(n),
                _ => return Err(usage()),
            };
            for l in shapes {
                rows.push(vec![
                    ("n", l.weight().to_string()),
                    ("shape", l.to_string()),
                    ("I", partition_imbalance(&l)?.to_string()),
                    ("a", sign_a(&l).to_i8().to_string()),
                    ("a_prime", sign_a_prime(&l).to_i8().to_string()),
                ]);
            }
        }
        ShapeFamily::Fibonacci => {
            let words = match (shape, n) {
                (Some(s), None) => vec![s.parse::<FibWord>()?],
                (None, Some(n)) => FibWord::all(n),
                _ => return Err(usage()),
            };
            for x in words {
                rows.push(vec![
                    ("n", x.weight().to_string()),
                    ("shape", x.to_string()),
                    ("I", fib_imbalance(&x)?.to_string()),
                    ("v", x.vertex_sign().to_i8().to_string()),
                    ("tileable", x.is_domino_tileable().to_string()),
                ]);
            }
        }
    }
    let header: Vec<&str> = match family {
        ShapeFamily::Partition => vec!["n", "shape", "I", "a", "a_prime"],
        ShapeFamily::Fibonacci => vec!["n", "shape", "I", "v", "tileable"],
    };
    match format {
        Format::Csv => {
            let mut text = header.join(",");
            text.push('\n');
            for row in &rows {
                let fields: Vec<String> = row.iter().map(|(_, v)| csv_field(v)).collect();
                text.push_str(&fields.join(","));
                text.push('\n');
            }
            emit(&text)?;
        }
        _ => {
            let items: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let map = row
                        .iter()
                        .map(|(k, v)| {
                            let value = match *k {
                                "n" | "shape" | "I" => Value::String(v.clone()),
                                "tileable" => Value::Bool(v == "true"),
                                _ => Value::from(v.parse::<i64>().expect("sign")),
                            };
                            (k.to_string(), value)
                        })
                        .collect::<serde_json::Map<_, _>>();
                    Value::Object(map)
                })
                .collect();
            emit(&Value::Array(items).to_string())?;
        }
    }
    Ok(Outcome::Pass)
}

fn series_output(name: &str, s: &TruncatedSeries, format: Format) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut text = String::from("power,coeff\n");
            for (i, c) in s.coeffs().iter().enumerate() {
                text.push_str(&format!("{i},{c}\n"));
            }
            emit(&text)
        }
        _ => emit(&json!({"name": name, "order": s.order(), "coeffs": strings(s)}).to_string()),
    }
}

enum PosetSeries {
    Rank { weighted: bool },
    Kappa(usize),
    Tau(usize),
    TauRatio(usize),
    CheckKappa(usize),
    CheckTau(usize),
}

impl PosetSeries {
    fn parse(s: &str) -> Result<Self, CliError> {
        let (head, param) = match s.split_once(':') {
            Some((h, p)) => {
                let k = p
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad parameter {p:?} in {s:?}")))?;
                (h, Some(k))
            }
            None => (s, None),
        };
        let needs = |k: Option<usize>| k.ok_or_else(|| CliError::Usage(format!("{head} needs a parameter, e.g. {head}:1")));
        Ok(match head {
            "rank" => PosetSeries::Rank { weighted: false },
            "signed-rank" => PosetSeries::Rank { weighted: true },
            "kappa" => PosetSeries::Kappa(needs(param)?),
            "tau" => PosetSeries::Tau(needs(param)?),
            "tau-ratio" => PosetSeries::TauRatio(needs(param)?),
            "check-kappa" => PosetSeries::CheckKappa(needs(param)?),
            "check-tau" => PosetSeries::CheckTau(needs(param)?),
            _ => return Err(CliError::Usage(format!("unknown series {s:?}"))),
        })
    }

    fn degree(&self) -> usize {
        match *self {
            PosetSeries::Rank { .. } => 0,
            PosetSeries::Kappa(k)
            | PosetSeries::Tau(k)
            | PosetSeries::TauRatio(k)
            | PosetSeries::CheckKappa(k)
            | PosetSeries::CheckTau(k) => k,
        }
    }
}

pub fn series(
    which: &str,
    family: Family,
    max_rank: Option<usize>,
    extend_base: Option<ExtendBase>,
    order: usize,
    format: Format,
) -> Result<Outcome, CliError> {
    if let Ok(formula) = which.parse::<ProductFormula>() {
        series_output(which, &product_formula(formula, order), format)?;
        return Ok(Outcome::Pass);
    }
    let kind = PosetSeries::parse(which)?;
    // build just high enough unless the caller fixed the rank
    let needed = order + kind.degree();
    let max_rank = match (max_rank, family) {
        (Some(m), _) => Some(m),
        (None, Family::Extend) => None,
        (None, _) => Some(needed),
    };
    let spec = PosetSpec::new(family, max_rank, extend_base)?;
    let (variant, p) = spec.build()?;
    let s = match kind {
        PosetSeries::Rank { weighted } => rank_series(&p, weighted, order)?,
        PosetSeries::Kappa(k) => kappa_series(&p, k, order)?,
        PosetSeries::Tau(k) => tau_series(&p, k, order)?,
        PosetSeries::TauRatio(k) => empirical_tau_ratio(&p, k, order)?,
        PosetSeries::CheckKappa(k) | PosetSeries::CheckTau(k) => {
            let identity = match kind {
                PosetSeries::CheckKappa(_) => SeriesIdentity::Kappa { k },
                _ => SeriesIdentity::Tau { variant, k },
            };
            let report = verify_series_identity(&p, identity, order)?;
            match format {
                Format::Csv => {
                    let mut text = String::from("power,expected,computed\n");
                    for (i, (a, b)) in report.expected.coeffs().iter().zip(report.computed.coeffs()).enumerate() {
                        text.push_str(&format!("{i},{a},{b}\n"));
                    }
                    emit(&text)?;
                }
                _ => emit(
                    &json!({
                        "name": report.name,
                        "poset": spec.to_string(),
                        "order": report.order,
                        "expected": strings(&report.expected),
                        "computed": strings(&report.computed),
                        "first_mismatch": report.first_mismatch,
                        "passed": report.passed(),
                    })
                    .to_string(),
                )?,
            }
            return Ok(Outcome::from_bool(report.passed()));
        }
    };
    series_output(which, &s, format)?;
    Ok(Outcome::Pass)
}

pub fn export(spec: &PosetSpec, format: Format, output: Option<&Path>) -> Result<Outcome, CliError> {
    let (_, p) = spec.build()?;
    let text = match format {
        Format::Json => p.to_json(),
        Format::Dot => p.to_dot(),
        Format::Csv => {
            let mut text = String::from("lo_rank,lo_index,hi_rank,hi_index,sign\n");
            for c in p.covers() {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    c.lower.rank,
                    c.lower.index,
                    c.upper.rank,
                    c.upper.index,
                    c.sign.to_i8()
                ));
            }
            text
        }
    };
    match output {
        Some(path) => fs::write(path, text)?,
        None => emit(&text)?,
    }
    Ok(Outcome::Pass)
}
