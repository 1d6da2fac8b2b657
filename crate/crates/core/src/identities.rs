//! Per-`n` tables of expected against computed values for the enumerative
//! identities. Every suite computes its left-hand side from the poset or
//! from tableau enumeration and its expected side from the closed form.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{PosetError, Result};
use crate::fibonacci::{fib_imbalance, FibWord};
use crate::poset::{GradedSignedPoset, Variant};
use crate::series::{product_formula, skew_fk_sweep, skew_g2l_sweep, OuterWeight, ProductFormula};
use crate::young::{build_young, skew_square_sums, stanley_sums, Partition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRow {
    pub n: usize,
    /// Shape or word the row refers to; empty for whole-rank rows.
    pub label: String,
    pub expected: Vec<BigInt>,
    pub computed: Vec<BigInt>,
}

impl IdentityRow {
    pub fn holds(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityTable {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<IdentityRow>,
}

#[derive(Serialize)]
struct RowJson<'a> {
    n: usize,
    #[serde(skip_serializing_if = "str::is_empty")]
    label: &'a str,
    expected: Vec<String>,
    computed: Vec<String>,
    holds: bool,
}

#[derive(Serialize)]
struct TableJson<'a> {
    name: &'a str,
    columns: &'a [String],
    rows: Vec<RowJson<'a>>,
    holds: bool,
}

fn strings(values: &[BigInt]) -> Vec<String> {
    values.iter().map(BigInt::to_string).collect()
}

impl IdentityTable {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(IdentityRow::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRow> {
        self.rows.iter().filter(|r| !r.holds())
    }

    pub fn to_json(&self) -> String {
        let rows = self
            .rows
            .iter()
            .map(|r| RowJson {
                n: r.n,
                label: &r.label,
                expected: strings(&r.expected),
                computed: strings(&r.computed),
                holds: r.holds(),
            })
            .collect();
        serde_json::to_string(&TableJson {
            name: &self.name,
            columns: &self.columns,
            rows,
            holds: self.holds(),
        })
        .expect("table json")
    }

    /// One line per row: `n,label,<col>_expected...,<col>_computed...,holds`.
    /// Labels containing commas are quoted.
    pub fn to_csv(&self) -> String {
        let mut header = vec!["n".to_string(), "label".to_string()];
        header.extend(self.columns.iter().map(|c| format!("{c}_expected")));
        header.extend(self.columns.iter().map(|c| format!("{c}_computed")));
        header.push("holds".to_string());
        let mut out = header.join(",");
        out.push('\n');
        for r in &self.rows {
            let label = if r.label.contains(',') {
                format!("\"{}\"", r.label)
            } else {
                r.label.clone()
            };
            let mut fields = vec![r.n.to_string(), label];
            fields.extend(strings(&r.expected));
            fields.extend(strings(&r.computed));
            fields.push(r.holds().to_string());
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

/// `2^⌊n/2⌋`.
pub fn two_pow_half(n: usize) -> BigInt {
    BigInt::one() << (n / 2)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Number of involutions in `S_n`.
pub fn involution_count(n: usize) -> BigInt {
    let (mut prev, mut cur) = (BigInt::one(), BigInt::one());
    for k in 2..=n {
        let next = &cur + (k - 1) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn check_range(range: &RangeInclusive<usize>, min: usize, max: usize) -> Result<()> {
    if *range.start() < min {
        return Err(PosetError::Malformed(format!(
            "range starts at {} but the identity needs n >= {min}",
            range.start()
        )));
    }
    if *range.end() > max {
        return Err(PosetError::Truncation {
            requested: *range.end(),
            max_rank: max,
        });
    }
    Ok(())
}

fn table(name: &str, columns: &[&str], rows: Vec<IdentityRow>) -> IdentityTable {
    IdentityTable {
        name: name.to_string(),
        columns: columns.iter().map(|c| c.to_string()).collect(),
        rows,
    }
}

fn whole_rank(n: usize, expected: Vec<BigInt>, computed: Vec<BigInt>) -> IdentityRow {
    IdentityRow {
        n,
        label: String::new(),
        expected,
        computed,
    }
}

/// `Σ_{x ∈ P_n} v(x) e(x)² = 0` for `n ≥ 2`.
pub fn signfact(p: &GradedSignedPoset, range: RangeInclusive<usize>) -> Result<IdentityTable> {
    check_range(&range, 2, p.max_rank())?;
    let e = p.signed_chain_sums();
    let rows = range
        .map(|n| {
            let total: BigInt = e[n]
                .iter()
                .zip(p.vertex_signs(n))
                .map(|(c, s)| s.apply(&(c * c)))
                .sum();
            whole_rank(n, vec![BigInt::zero()], vec![total])
        })
        .collect();
    Ok(table("signfact", &["sum_v_e2"], rows))
}

/// `Σ_{x ∈ P_n} v(x) e(x)`: zero on α-posets, `2^⌊n/2⌋` on β-posets.
pub fn signsum(p: &GradedSignedPoset, variant: Variant, range: RangeInclusive<usize>) -> Result<IdentityTable> {
    check_range(&range, 2, p.max_rank())?;
    let e = p.signed_chain_sums();
    let rows = range
        .map(|n| {
            let total: BigInt = e[n].iter().zip(p.vertex_signs(n)).map(|(c, s)| s.apply(c)).sum();
            let expected = match variant {
                Variant::Alpha => BigInt::zero(),
                Variant::Beta => two_pow_half(n),
            };
            whole_rank(n, vec![expected], vec![total])
        })
        .collect();
    Ok(table("signsum", &["sum_v_e"], rows))
}

/// On the unsigned Young lattice: `Σ f(λ)² = n!`.
pub fn nfact(range: RangeInclusive<usize>) -> Result<IdentityTable> {
    let f = build_young(Variant::Alpha, *range.end()).unsigned_chain_counts();
    let rows = range
        .map(|n| whole_rank(n, vec![factorial(n)], vec![f[n].iter().map(|c| c * c).sum()]))
        .collect();
    Ok(table("nfact", &["sum_f2"], rows))
}

/// On the unsigned Young lattice: `Σ f(λ)` is the number of involutions.
pub fn involution(range: RangeInclusive<usize>) -> Result<IdentityTable> {
    let f = build_young(Variant::Alpha, *range.end()).unsigned_chain_counts();
    let rows = range
        .map(|n| whole_rank(n, vec![involution_count(n)], vec![f[n].iter().sum()]))
        .collect();
    Ok(table("involution", &["sum_f"], rows))
}

/// The three sign-imbalance sums over `λ ⊢ n` from tableau enumeration:
/// `Σ a′I² = 0`, `Σ a′I = 0`, `Σ a a′ I = 2^⌊n/2⌋`.
pub fn stanley(range: RangeInclusive<usize>) -> Result<IdentityTable> {
    check_range(&range, 2, crate::young::SYT_CAP)?;
    let rows = range
        .map(|n| {
            let computed = stanley_sums(n)?.to_vec();
            Ok(whole_rank(n, vec![BigInt::zero(), BigInt::zero(), two_pow_half(n)], computed))
        })
        .collect::<Result<_>>()?;
    Ok(table("stanley", &["sum_ap_I2", "sum_ap_I", "sum_a_ap_I"], rows))
}

/// Over Fibonacci words of weight `n`: `Σ v I² = 0` and `Σ v I = 2^⌊n/2⌋`.
pub fn fibonacci(range: RangeInclusive<usize>) -> Result<IdentityTable> {
    check_range(&range, 2, crate::fibonacci::FIB_TABLEAU_CAP)?;
    let rows = range
        .map(|n| {
            let (mut sq, mut lin) = (BigInt::zero(), BigInt::zero());
            for x in FibWord::all(n) {
                let i = fib_imbalance(&x)?;
                let v = x.vertex_sign();
                sq += v.apply(&(&i * &i));
                lin += v.apply(&i);
            }
            Ok(whole_rank(n, vec![BigInt::zero(), two_pow_half(n)], vec![sq, lin]))
        })
        .collect::<Result<_>>()?;
    Ok(table("fibonacci", &["sum_v_I2", "sum_v_I"], rows))
}

/// The skew square-sum identity for every `λ` with `|λ| ≤ max_weight`, one
/// row per `(n, λ)`.
pub fn sjostrand(range: RangeInclusive<usize>, max_weight: usize) -> Result<IdentityTable> {
    let mut rows = Vec::new();
    for n in range {
        for w in 0..=max_weight {
            for lambda in Partition::all(w) {
                let sums = skew_square_sums(&lambda, n)?;
                rows.push(IdentityRow {
                    n,
                    label: lambda.to_string(),
                    expected: vec![sums.rhs],
                    computed: vec![sums.lhs],
                });
            }
        }
    }
    Ok(table("sjostrand", &["sum"], rows))
}

fn coefficient_columns(order: usize) -> Vec<String> {
    (0..=order).map(|i| format!("t{i}")).collect()
}

/// Skew `F_k` sweeps against their product formulas, one row per `k`.
pub fn fk(range: RangeInclusive<usize>, order: usize) -> Result<IdentityTable> {
    let rows = range
        .map(|k| {
            let expected = product_formula(ProductFormula::FkSkew { k }, order);
            let computed = skew_fk_sweep(k, order)?;
            Ok(whole_rank(k, expected.coeffs().to_vec(), computed.coeffs().to_vec()))
        })
        .collect::<Result<_>>()?;
    Ok(IdentityTable {
        name: "fk".to_string(),
        columns: coefficient_columns(order),
        rows,
    })
}

/// Skew `G_{2l}` sweeps against their product formulas, one row per `l`.
pub fn gk(range: RangeInclusive<usize>, order: usize) -> Result<IdentityTable> {
    let rows = range
        .map(|l| {
            let expected = product_formula(ProductFormula::G2lSkew { l }, order);
            let computed = skew_g2l_sweep(l, order, OuterWeight::APrime)?;
            Ok(whole_rank(l, expected.coeffs().to_vec(), computed.coeffs().to_vec()))
        })
        .collect::<Result<_>>()?;
    Ok(IdentityTable {
        name: "gk".to_string(),
        columns: coefficient_columns(order),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        let inv: Vec<BigInt> = (0..=6).map(involution_count).collect();
        assert_eq!(inv, [1, 1, 2, 4, 10, 26, 76].map(BigInt::from).to_vec());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(two_pow_half(7), BigInt::from(8));
    }

    #[test]
    fn small_tables() {
        let t = stanley(2..=5).unwrap();
        assert!(t.holds());
        assert!(t.to_csv().starts_with("n,label,sum_ap_I2_expected,"));
        assert!(stanley(0..=3).is_err());
        let p = build_young(Variant::Beta, 5);
        assert!(signsum(&p, Variant::Beta, 2..=5).unwrap().holds());
        assert!(!signsum(&p, Variant::Alpha, 2..=5).unwrap().holds());
        assert!(signfact(&p, 2..=6).is_err());
    }
}
