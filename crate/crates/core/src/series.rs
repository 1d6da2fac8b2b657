//! Integer power series truncated at a fixed order, the rank generating
//! functions of a signed poset, and the `κ`/`τ` coefficient sweeps.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{PosetError, Result};
use crate::operators::{apply_word, inner, inner_v, OperatorWord, RankVector};
use crate::poset::{GradedSignedPoset, Variant};
use crate::young::{sign_a, sign_a_prime, skew_pairing, Partition};

/// `Σ_{i ≤ order} c_i t^i`; everything above `t^order` is discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::monomial(1, 0, order)
    }

    /// `c t^degree`, or zero when `degree > order`.
    pub fn monomial(c: i64, degree: usize, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if degree <= order {
            s.coeffs[degree] = BigInt::from(c);
        }
        s
    }

    /// Pads or truncates `coeffs` to the given order.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], order: usize) -> Self {
        TruncatedSeries::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(PosetError::Malformed(format!(
                "series with constant term {c0} is not a unit"
            )));
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len()];
        out[0] = c0.clone();
        for n in 1..out.len() {
            let s: BigInt = (1..=n).map(|k| &self.coeffs[k] * &out[n - k]).sum();
            // c0 = ±1 is its own inverse
            out[n] = -(c0 * s);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn div(&self, divisor: &TruncatedSeries) -> Result<Self> {
        Ok(self * &divisor.inverse()?)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(TruncatedSeries::one(self.order()), |acc, _| &acc * self)
    }

    /// Index of the first differing coefficient, compared up to the lower order.
    pub fn first_mismatch(&self, other: &TruncatedSeries) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(BigInt::to_string).collect(),
        })
        .expect("series json")
    }
}

#[derive(Serialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        write!(f, "[{}] + O(t^{})", parts.join(", "), self.order() + 1)
    }
}

fn zip_with(a: &TruncatedSeries, b: &TruncatedSeries, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> TruncatedSeries {
    let order = a.order().min(b.order());
    TruncatedSeries {
        coeffs: (0..=order).map(|i| op(&a.coeffs[i], &b.coeffs[i])).collect(),
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

/// `F(P, t) = Σ t^{ρ(x)}`, or `G(P, t) = Σ v(x) t^{ρ(x)}` when weighted.
pub fn rank_series(p: &GradedSignedPoset, weighted: bool, order: usize) -> Result<TruncatedSeries> {
    check_order(p, order, 0)?;
    let coeffs = (0..=order)
        .map(|n| {
            if weighted {
                p.vertex_signs(n).iter().map(|s| s.to_bigint()).sum()
            } else {
                BigInt::from(p.rank_size(n))
            }
        })
        .collect();
    Ok(TruncatedSeries { coeffs })
}

fn check_order(p: &GradedSignedPoset, order: usize, degree: usize) -> Result<()> {
    if order + degree > p.max_rank() {
        return Err(PosetError::Truncation {
            requested: order + degree,
            max_rank: p.max_rank(),
        });
    }
    Ok(())
}

/// `κ_{n,k} = Σ_{x ∈ P_n} ⟨D^k U^k x, x⟩`.
pub fn kappa(p: &GradedSignedPoset, n: usize, k: usize) -> Result<BigInt> {
    check_order(p, n, k)?;
    let word = OperatorWord::downs(k).concat(&OperatorWord::ups(k));
    let mut total = BigInt::zero();
    for x in p.elements(n) {
        let bx = RankVector::basis(x);
        total += inner(&apply_word(p, &word, &bx)?, &bx)?;
    }
    Ok(total)
}

/// `τ_{k,n} = ⟨D^k P_{n+k}, P_n⟩_v`.
pub fn tau(p: &GradedSignedPoset, n: usize, k: usize) -> Result<BigInt> {
    check_order(p, n, k)?;
    let image = apply_word(p, &OperatorWord::downs(k), &RankVector::rank_sum(p, n + k))?;
    inner_v(p, &image, &RankVector::rank_sum(p, n))
}

/// `F_k(P, t) = Σ_n κ_{n,k} t^n`.
pub fn kappa_series(p: &GradedSignedPoset, k: usize, order: usize) -> Result<TruncatedSeries> {
    let coeffs = (0..=order).map(|n| kappa(p, n, k)).collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries { coeffs })
}

/// `G_k(P, t) = Σ_n τ_{k,n} t^n`.
pub fn tau_series(p: &GradedSignedPoset, k: usize, order: usize) -> Result<TruncatedSeries> {
    let coeffs = (0..=order).map(|n| tau(p, n, k)).collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries { coeffs })
}

/// `G_k(P, t) / G(P, t)`, computed from the poset. For odd `k` in the beta
/// case there is no known closed form; this is the data.
pub fn empirical_tau_ratio(p: &GradedSignedPoset, k: usize, order: usize) -> Result<TruncatedSeries> {
    tau_series(p, k, order)?.div(&rank_series(p, true, order)?)
}

/// `Π_{i ≥ 1} 1/(1 - t^i)`.
fn partition_product(order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for i in 1..=order {
        let factor = &TruncatedSeries::one(order) - &TruncatedSeries::monomial(1, i, order);
        acc = acc.div(&factor).expect("unit");
    }
    acc
}

/// `Π_{i ≥ 0} 1/((1 - t^{4i+1})(1 + t^{4i+2})(1 + t^{4i+3})(1 - t^{4i+4}))`.
fn signed_young_product(order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let mut denom = one.clone();
    let mut i = 0;
    while 4 * i < order {
        for (offset, sign) in [(1, -1), (2, 1), (3, 1), (4, -1)] {
            let e = 4 * i + offset;
            denom = &denom * &(&one + &TruncatedSeries::monomial(sign, e, order));
        }
        i += 1;
    }
    one.div(&denom).expect("unit")
}

/// `(2 / (1 + t²))^l`.
fn two_over_one_plus_t2(l: usize, order: usize) -> TruncatedSeries {
    let base = TruncatedSeries::from_i64(&[2], order)
        .div(&TruncatedSeries::from_i64(&[1, 0, 1], order))
        .expect("unit");
    base.pow(l)
}

/// Named closed-form generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductFormula {
    /// `Π 1/(1 - t^i)`
    Partition,
    /// `(2/(1+t²))^l · Σ_λ a′(λ) t^{|λ|}` in product form
    GYoung { l: usize },
    /// skew `F_k`: the partition product for `k = 0`, divided by `1 + t` for
    /// `k = 1`, zero for `k ≥ 2`
    FkSkew { k: usize },
    /// skew `G_{2l}`, the same closed form as `GYoung`
    G2lSkew { l: usize },
    /// `1 / (1 - t + t²)`
    FibSigned,
}

impl FromStr for ProductFormula {
    type Err = PosetError;

    /// `partition`, `g_young[:l]`, `fk_skew:k`, `g2l_skew:l`, `fib_signed`
    /// (hyphens are accepted in place of underscores).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('-', "_");
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => {
                let v = p
                    .parse::<usize>()
                    .map_err(|_| PosetError::Parse(format!("bad parameter {p:?}")))?;
                (n.to_string(), Some(v))
            }
            None => (s.clone(), None),
        };
        match (name.as_str(), param) {
            ("partition", None) => Ok(ProductFormula::Partition),
            ("g_young", l) => Ok(ProductFormula::GYoung { l: l.unwrap_or(0) }),
            ("fk_skew", Some(k)) => Ok(ProductFormula::FkSkew { k }),
            ("g2l_skew", Some(l)) => Ok(ProductFormula::G2lSkew { l }),
            ("fib_signed", None) => Ok(ProductFormula::FibSigned),
            _ => Err(PosetError::Parse(format!("unknown product formula {s:?}"))),
        }
    }
}

pub fn product_formula(formula: ProductFormula, order: usize) -> TruncatedSeries {
    match formula {
        ProductFormula::Partition => partition_product(order),
        ProductFormula::GYoung { l } | ProductFormula::G2lSkew { l } => {
            &two_over_one_plus_t2(l, order) * &signed_young_product(order)
        }
        ProductFormula::FkSkew { k } => match k {
            0 => partition_product(order),
            1 => partition_product(order)
                .div(&TruncatedSeries::from_i64(&[1, 1], order))
                .expect("unit"),
            _ => TruncatedSeries::zero(order),
        },
        ProductFormula::FibSigned => TruncatedSeries::one(order)
            .div(&TruncatedSeries::from_i64(&[1, -1, 1], order))
            .expect("unit"),
    }
}

/// Identities relating the κ and τ sweeps of a signed differential poset to
/// its rank generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesIdentity {
    /// `F_0 = F`, `F_1 = F/(1+t)`, `F_k = 0` for `k ≥ 2`.
    Kappa { k: usize },
    /// `G_k = A^a_k(t) G` with `A^α_0 = 1`, `A^α_1 = 1/(1+t)`, `A^α_k = 0`
    /// for `k > 1`, and `A^β_{2l} = (2/(1+t²))^l`.
    Tau { variant: Variant, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub name: String,
    pub order: usize,
    pub expected: TruncatedSeries,
    pub computed: TruncatedSeries,
    pub first_mismatch: Option<usize>,
}

impl SeriesReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// `A^a_k(t)` where a closed form is known.
pub fn tau_ratio_closed_form(variant: Variant, k: usize, order: usize) -> Result<TruncatedSeries> {
    match (variant, k) {
        (Variant::Alpha, 0) => Ok(TruncatedSeries::one(order)),
        (Variant::Alpha, 1) => TruncatedSeries::one(order).div(&TruncatedSeries::from_i64(&[1, 1], order)),
        (Variant::Alpha, _) => Ok(TruncatedSeries::zero(order)),
        (Variant::Beta, k) if k % 2 == 0 => Ok(two_over_one_plus_t2(k / 2, order)),
        (Variant::Beta, k) => Err(PosetError::NoClosedForm(format!("A^beta_{k}"))),
    }
}

pub fn verify_series_identity(
    p: &GradedSignedPoset,
    identity: SeriesIdentity,
    order: usize,
) -> Result<SeriesReport> {
    let (name, expected, computed) = match identity {
        SeriesIdentity::Kappa { k } => {
            check_order(p, order, k)?;
            let f = rank_series(p, false, order)?;
            let expected = match k {
                0 => f,
                1 => f.div(&TruncatedSeries::from_i64(&[1, 1], order))?,
                _ => TruncatedSeries::zero(order),
            };
            (format!("F_{k}"), expected, kappa_series(p, k, order)?)
        }
        SeriesIdentity::Tau { variant, k } => {
            check_order(p, order, k)?;
            let ratio = tau_ratio_closed_form(variant, k, order)?;
            let expected = &ratio * &rank_series(p, true, order)?;
            (format!("G_{k}^{}", variant.name()), expected, tau_series(p, k, order)?)
        }
    };
    let first_mismatch = expected.first_mismatch(&computed);
    Ok(SeriesReport {
        name,
        order,
        expected,
        computed,
        first_mismatch,
    })
}

/// `Σ_{|μ/λ| = k} a′(μ/λ) I²_{μ/λ} t^{|λ|}`, summed over `|λ| ≤ order`.
pub fn skew_fk_sweep(k: usize, order: usize) -> Result<TruncatedSeries> {
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut total = BigInt::zero();
        for lambda in Partition::all(n) {
            for mu in lambda.covering_shapes(k) {
                let i = skew_pairing(&mu, &lambda, Variant::Alpha)?;
                total += (sign_a_prime(&mu) * sign_a_prime(&lambda)).apply(&(&i * &i));
            }
        }
        coeffs.push(total);
    }
    Ok(TruncatedSeries { coeffs })
}

/// Weighting of the skew `G_{2l}` sweep by the outer shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OuterWeight {
    /// `a′(λ)` on the outer shape: the sweep equals `Σ τ_{2l,n} t^n` on `Y_β`.
    APrime,
    /// No weight, as the sum is sometimes written. Does not match the closed
    /// form; kept to document the difference.
    Unweighted,
}

/// `Σ_{|λ/μ| = 2l} w(λ) a(λ/μ) I_{λ/μ} t^{|μ|}`, summed over `|μ| ≤ order`.
pub fn skew_g2l_sweep(l: usize, order: usize, weight: OuterWeight) -> Result<TruncatedSeries> {
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut total = BigInt::zero();
        for mu in Partition::all(n) {
            for lambda in mu.covering_shapes(2 * l) {
                let i = skew_pairing(&lambda, &mu, Variant::Alpha)?;
                let mut sign = sign_a(&lambda) * sign_a(&mu);
                if weight == OuterWeight::APrime {
                    sign = sign * sign_a_prime(&lambda);
                }
                total += sign.apply(&i);
            }
        }
        coeffs.push(total);
    }
    Ok(TruncatedSeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn arithmetic() {
        let a = TruncatedSeries::from_i64(&[1, 2, 3], 4);
        let b = TruncatedSeries::from_i64(&[1, -1], 4);
        assert_eq!(ints(&(&a * &b)), vec![1, 1, 1, -3, 0]);
        assert_eq!(ints(&b.inverse().unwrap()), vec![1, 1, 1, 1, 1]);
        assert_eq!(ints(&(&a + &b)), vec![2, 1, 3, 0, 0]);
        assert!(TruncatedSeries::from_i64(&[2, 1], 3).inverse().is_err());
        let neg = TruncatedSeries::from_i64(&[-1, 1], 3);
        assert_eq!(ints(&(&neg * &neg.inverse().unwrap())), vec![1, 0, 0, 0]);
        assert_eq!(a.to_json(), r#"{"order":4,"coeffs":["1","2","3","0","0"]}"#);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(ints(&product_formula(ProductFormula::Partition, 5)), vec![1, 1, 2, 3, 5, 7]);
        assert_eq!(ints(&product_formula(ProductFormula::GYoung { l: 0 }, 4)), vec![1, 1, 0, -1, 1]);
        assert_eq!(ints(&product_formula(ProductFormula::FibSigned, 6)), vec![1, 1, 0, -1, -1, 0, 1]);
        assert_eq!(ints(&product_formula(ProductFormula::FkSkew { k: 3 }, 3)), vec![0, 0, 0, 0]);
    }

    #[test]
    fn parse_formula_names() {
        assert_eq!("partition".parse::<ProductFormula>().unwrap(), ProductFormula::Partition);
        assert_eq!("fib-signed".parse::<ProductFormula>().unwrap(), ProductFormula::FibSigned);
        assert_eq!("g_young".parse::<ProductFormula>().unwrap(), ProductFormula::GYoung { l: 0 });
        assert_eq!("fk_skew:1".parse::<ProductFormula>().unwrap(), ProductFormula::FkSkew { k: 1 });
        assert!("nope".parse::<ProductFormula>().is_err());
        assert!("fk_skew".parse::<ProductFormula>().is_err());
    }

    #[test]
    fn odd_beta_has_no_closed_form() {
        assert!(matches!(
            tau_ratio_closed_form(Variant::Beta, 3, 4),
            Err(PosetError::NoClosedForm(_))
        ));
    }
}
