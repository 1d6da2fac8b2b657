//! Up and down operators acting on exact rank vectors, operator words,
//! normal ordering under `UD + DU = I`, and the axiom verifiers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{PosetError, Result};
use crate::poset::{ElementId, GradedSignedPoset, Variant};

/// An integer linear combination of the elements of a single rank.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankVector {
    rank: usize,
    coeffs: BTreeMap<usize, BigInt>,
}

impl RankVector {
    pub fn zero(rank: usize) -> Self {
        RankVector {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(id: ElementId) -> Self {
        let mut v = RankVector::zero(id.rank);
        v.coeffs.insert(id.index, BigInt::one());
        v
    }

    /// `P_n`, the sum of all elements of rank `n`.
    pub fn rank_sum(p: &GradedSignedPoset, rank: usize) -> Self {
        let mut v = RankVector::zero(rank);
        for i in 0..p.rank_size(rank) {
            v.coeffs.insert(i, BigInt::one());
        }
        v
    }

    pub fn from_coeffs(rank: usize, coeffs: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut v = RankVector::zero(rank);
        for (i, c) in coeffs {
            v.add_term(i, &c);
        }
        v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: usize) -> BigInt {
        self.coeffs.get(&index).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, index: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(index).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return RankVector::zero(self.rank);
        }
        RankVector {
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|(&i, x)| (i, x * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &RankVector) -> Result<RankVector> {
        if self.rank != other.rank {
            return Err(PosetError::RankMismatch(self.rank, other.rank));
        }
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c);
        }
        Ok(out)
    }
}

impl Add for &RankVector {
    type Output = RankVector;

    /// Panics on rank mismatch; use [`RankVector::checked_add`] otherwise.
    fn add(self, rhs: &RankVector) -> RankVector {
        self.checked_add(rhs).expect("rank mismatch in addition")
    }
}

impl Neg for &RankVector {
    type Output = RankVector;

    fn neg(self) -> RankVector {
        RankVector {
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, -c)).collect(),
        }
    }
}

impl Sub for &RankVector {
    type Output = RankVector;

    fn sub(self, rhs: &RankVector) -> RankVector {
        self + &(-rhs)
    }
}

/// Behaviour of `D` on rank 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DownMode {
    /// Report [`PosetError::RankUnderflow`].
    Strict,
    /// `D 0̂ = 0`.
    Annihilate,
}

fn check_vector(p: &GradedSignedPoset, f: &RankVector) -> Result<()> {
    if f.rank > p.max_rank() {
        return Err(PosetError::Truncation {
            requested: f.rank,
            max_rank: p.max_rank(),
        });
    }
    if let Some((&i, _)) = f.coeffs.iter().next_back() {
        if i >= p.rank_size(f.rank) {
            return Err(PosetError::UnknownElement(ElementId::new(f.rank, i)));
        }
    }
    Ok(())
}

/// `U x = Σ_{x ⋖ y} s(x ⋖ y) y`, extended linearly.
pub fn apply_up(p: &GradedSignedPoset, f: &RankVector) -> Result<RankVector> {
    check_vector(p, f)?;
    if f.rank >= p.max_rank() {
        return Err(PosetError::Truncation {
            requested: f.rank + 1,
            max_rank: p.max_rank(),
        });
    }
    let mut out = RankVector::zero(f.rank + 1);
    for (i, c) in f.terms() {
        for &(j, s) in p.upper_covers(ElementId::new(f.rank, i)) {
            out.add_term(j, &s.apply(c));
        }
    }
    Ok(out)
}

/// `D x = Σ_{y ⋖ x} s(y ⋖ x) v(x) v(y) y`, extended linearly.
pub fn apply_down(p: &GradedSignedPoset, f: &RankVector, mode: DownMode) -> Result<RankVector> {
    check_vector(p, f)?;
    if f.rank == 0 {
        return match mode {
            DownMode::Strict => Err(PosetError::RankUnderflow),
            DownMode::Annihilate => Ok(RankVector::zero(0)),
        };
    }
    let mut out = RankVector::zero(f.rank - 1);
    for (j, c) in f.terms() {
        let x = ElementId::new(f.rank, j);
        let vx = p.vertex_sign(x);
        for &(i, s) in p.lower_covers(x) {
            let y = ElementId::new(f.rank - 1, i);
            out.add_term(i, &(s * vx * p.vertex_sign(y)).apply(c));
        }
    }
    Ok(out)
}

/// `⟨f, g⟩ = Σ f_x g_x`.
pub fn inner(f: &RankVector, g: &RankVector) -> Result<BigInt> {
    if f.rank != g.rank {
        return Err(PosetError::RankMismatch(f.rank, g.rank));
    }
    Ok(f.terms()
        .filter_map(|(i, a)| g.coeffs.get(&i).map(|b| a * b))
        .sum())
}

/// `⟨f, g⟩_v = Σ f_x g_x v(x)`.
pub fn inner_v(p: &GradedSignedPoset, f: &RankVector, g: &RankVector) -> Result<BigInt> {
    if f.rank != g.rank {
        return Err(PosetError::RankMismatch(f.rank, g.rank));
    }
    Ok(f.terms()
        .filter_map(|(i, a)| {
            g.coeffs
                .get(&i)
                .map(|b| p.vertex_sign(ElementId::new(f.rank, i)).apply(&(a * b)))
        })
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    U,
    D,
}

/// A word in `{U, D}`. Letters are stored left to right as written; when the
/// word acts on a vector the rightmost letter applies first, so `DU` means
/// `D(U(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OperatorWord {
    letters: Vec<Letter>,
}

impl OperatorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        OperatorWord { letters }
    }

    pub fn empty() -> Self {
        OperatorWord::default()
    }

    /// `U^i D^j`.
    pub fn normal(i: usize, j: usize) -> Self {
        let mut letters = vec![Letter::U; i];
        letters.extend(std::iter::repeat(Letter::D).take(j));
        OperatorWord { letters }
    }

    pub fn ups(k: usize) -> Self {
        OperatorWord::normal(k, 0)
    }

    pub fn downs(k: usize) -> Self {
        OperatorWord::normal(0, k)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `#U - #D`.
    pub fn rho(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::U => 1,
                Letter::D => -1,
            })
            .sum()
    }

    pub fn reversed(&self) -> Self {
        OperatorWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// `self · other` (so `other` acts first).
    pub fn concat(&self, other: &OperatorWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        OperatorWord { letters }
    }

    /// Highest rank offset reached while acting right to left, relative to the
    /// starting rank.
    pub fn max_height(&self) -> i64 {
        let mut h = 0;
        let mut best = 0;
        for l in self.letters.iter().rev() {
            h += if *l == Letter::U { 1 } else { -1 };
            best = best.max(h);
        }
        best
    }

    /// Every word of length `len`, ordered as binary numbers with `U < D`.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = OperatorWord> {
        (0..1u64 << len).map(move |bits| OperatorWord {
            letters: (0..len)
                .map(|k| {
                    if bits >> (len - 1 - k) & 1 == 1 {
                        Letter::D
                    } else {
                        Letter::U
                    }
                })
                .collect(),
        })
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                Letter::U => "U",
                Letter::D => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for OperatorWord {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'U' => Ok(Letter::U),
                'D' => Ok(Letter::D),
                other => Err(PosetError::Parse(format!("bad operator letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(OperatorWord::new)
    }
}

/// Applies `w` to `f`, rightmost letter first. `D` at rank 0 annihilates.
pub fn apply_word(p: &GradedSignedPoset, w: &OperatorWord, f: &RankVector) -> Result<RankVector> {
    check_vector(p, f)?;
    let mut height = f.rank as i64;
    // None once the vector has been annihilated below rank 0.
    let mut current = Some(f.clone());
    for (k, letter) in w.letters.iter().enumerate().rev() {
        match letter {
            Letter::U => {
                height += 1;
                if height > p.max_rank() as i64 {
                    return Err(PosetError::WordOutOfRange {
                        prefix: OperatorWord::new(w.letters[k..].to_vec()).to_string(),
                        max_rank: p.max_rank(),
                    });
                }
                if let Some(v) = &current {
                    current = Some(apply_up(p, v)?);
                }
            }
            Letter::D => {
                height -= 1;
                current = match current {
                    Some(v) if height >= 0 => Some(apply_down(p, &v, DownMode::Strict)?),
                    _ => None,
                };
            }
        }
        if current.is_none() && height >= 0 {
            current = Some(RankVector::zero(height as usize));
        }
    }
    if height < 0 {
        return Err(PosetError::NegativeRank(height));
    }
    Ok(current.unwrap_or_else(|| RankVector::zero(height as usize)))
}

/// An integer combination of operator words, `Σ c_w w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorExpr {
    pub terms: Vec<(BigInt, OperatorWord)>,
}

impl OperatorExpr {
    pub fn word(w: OperatorWord) -> Self {
        OperatorExpr {
            terms: vec![(BigInt::one(), w)],
        }
    }

    pub fn plus(mut self, c: impl Into<BigInt>, w: OperatorWord) -> Self {
        self.terms.push((c.into(), w));
        self
    }

    /// Common rank of all terms, if consistent.
    pub fn rho(&self) -> Option<i64> {
        let mut it = self.terms.iter().map(|(_, w)| w.rho());
        let first = it.next()?;
        it.all(|r| r == first).then_some(first)
    }

    pub fn max_height(&self) -> i64 {
        self.terms.iter().map(|(_, w)| w.max_height()).max().unwrap_or(0)
    }

    pub fn apply(&self, p: &GradedSignedPoset, f: &RankVector) -> Result<Option<RankVector>> {
        let mut acc: Option<RankVector> = None;
        for (c, w) in &self.terms {
            let term = match apply_word(p, w, f) {
                Ok(v) => v.scale(c),
                Err(PosetError::NegativeRank(_)) => continue,
                Err(e) => return Err(e),
            };
            acc = Some(match acc {
                None => term,
                Some(a) => a.checked_add(&term)?,
            });
        }
        Ok(acc)
    }
}

/// One discrepancy found by a verifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub element: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partner: Option<[usize; 2]>,
    pub expected: String,
    pub got: String,
}

impl Failure {
    fn new(element: ElementId, partner: Option<ElementId>, expected: &BigInt, got: &BigInt) -> Self {
        Failure {
            element: [element.rank, element.index],
            partner: partner.map(|p| [p.rank, p.index]),
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }
}

/// Result of an axiom or operator-identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub certified_rank: usize,
    pub failures: Vec<Failure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report json")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    /// `UD + DU = I`
    Weak,
    /// `(U + D)P = P`
    Alpha,
    /// `(D - U)P = P`
    Beta,
    /// `⟨Ux, y⟩_v = ⟨x, Dy⟩_v`
    Adjoint,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Weak => "weak",
            Axiom::Alpha => "alpha",
            Axiom::Beta => "beta",
            Axiom::Adjoint => "adjoint",
        }
    }

    pub fn for_variant(variant: Variant) -> Axiom {
        match variant {
            Variant::Alpha => Axiom::Alpha,
            Variant::Beta => Axiom::Beta,
        }
    }
}

impl FromStr for Axiom {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Axiom::Weak),
            "alpha" => Ok(Axiom::Alpha),
            "beta" => Ok(Axiom::Beta),
            "adjoint" => Ok(Axiom::Adjoint),
            other => Err(PosetError::Parse(format!("unknown axiom {other:?}"))),
        }
    }
}

/// Checks one axiom on every element of rank `0..=max_check_rank`.
pub fn verify_axioms(
    p: &GradedSignedPoset,
    axiom: Axiom,
    max_check_rank: usize,
) -> Result<AxiomReport> {
    if max_check_rank + 1 > p.max_rank() {
        return Err(PosetError::Truncation {
            requested: max_check_rank + 1,
            max_rank: p.max_rank(),
        });
    }
    let mut failures = Vec::new();
    let one = BigInt::one();
    for rank in 0..=max_check_rank {
        for x in p.elements(rank) {
            let bx = RankVector::basis(x);
            match axiom {
                Axiom::Weak => {
                    let du = apply_down(p, &apply_up(p, &bx)?, DownMode::Strict)?;
                    let ud = match apply_down(p, &bx, DownMode::Annihilate)? {
                        d if rank == 0 => d,
                        d => apply_up(p, &d)?,
                    };
                    let total = &du + &ud;
                    for y in p.elements(rank) {
                        let expected = if y == x { one.clone() } else { BigInt::zero() };
                        let got = total.coeff(y.index);
                        if got != expected {
                            let partner = (y != x).then_some(y);
                            failures.push(Failure::new(x, partner, &expected, &got));
                        }
                    }
                }
                Axiom::Alpha | Axiom::Beta => {
                    // coefficient of x in U P_{r-1} and in D P_{r+1}
                    let from_below: BigInt = p
                        .lower_covers(x)
                        .iter()
                        .map(|&(_, s)| BigInt::from(s.to_i8()))
                        .sum();
                    let vx = p.vertex_sign(x);
                    let from_above: BigInt = p
                        .upper_covers(x)
                        .iter()
                        .map(|&(j, s)| {
                            BigInt::from((s * vx * p.vertex_sign(ElementId::new(rank + 1, j))).to_i8())
                        })
                        .sum();
                    let got = if axiom == Axiom::Alpha {
                        from_above + from_below
                    } else {
                        from_above - from_below
                    };
                    if got != one {
                        failures.push(Failure::new(x, None, &one, &got));
                    }
                }
                Axiom::Adjoint => {
                    let ux = apply_up(p, &bx)?;
                    for y in p.elements(rank + 1) {
                        let by = RankVector::basis(y);
                        let lhs = inner_v(p, &ux, &by)?;
                        let rhs = inner_v(p, &bx, &apply_down(p, &by, DownMode::Strict)?)?;
                        if lhs != rhs {
                            failures.push(Failure::new(x, Some(y), &lhs, &rhs));
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomReport {
        axiom: axiom.name().to_string(),
        certified_rank: max_check_rank,
        failures,
    })
}

/// Checks `lhs x = rhs x` for every basis element `x` whose rank leaves room
/// for every term of both sides. Ranks `0..=certified_rank` are covered.
pub fn verify_operator_identity(
    p: &GradedSignedPoset,
    name: &str,
    lhs: &OperatorExpr,
    rhs: &OperatorExpr,
) -> Result<AxiomReport> {
    let height = lhs.max_height().max(rhs.max_height());
    let top = p.max_rank() as i64 - height;
    if top < 0 {
        return Err(PosetError::Truncation {
            requested: height as usize,
            max_rank: p.max_rank(),
        });
    }
    let top = top as usize;
    let mut failures = Vec::new();
    for rank in 0..=top {
        for x in p.elements(rank) {
            let bx = RankVector::basis(x);
            let (l, r) = (lhs.apply(p, &bx)?, rhs.apply(p, &bx)?);
            let (l, r) = match (l, r) {
                (Some(l), Some(r)) => (l, r),
                (Some(l), None) => {
                    let z = RankVector::zero(l.rank());
                    (l, z)
                }
                (None, Some(r)) => (RankVector::zero(r.rank()), r),
                (None, None) => continue,
            };
            if l.rank() != r.rank() {
                return Err(PosetError::RankMismatch(l.rank(), r.rank()));
            }
            let diff = &l - &r;
            for (j, _) in diff.terms() {
                let y = ElementId::new(l.rank(), j);
                failures.push(Failure::new(x, Some(y), &r.coeff(j), &l.coeff(j)));
            }
        }
    }
    Ok(AxiomReport {
        axiom: name.to_string(),
        certified_rank: top,
        failures,
    })
}

/// `ε(i) = i mod 2`.
pub fn epsilon(i: usize) -> i64 {
    (i % 2) as i64
}

/// The commutation relations for words of degree `k`:
/// `DU^k = ε(k) U^{k-1} + (-1)^k U^k D` and
/// `D^k U = ε(k) D^{k-1} + (-1)^k U D^k`.
pub fn commutation_relations(k: usize) -> Vec<(String, OperatorExpr, OperatorExpr)> {
    assert!(k >= 1);
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let up_form = (
        format!("DU^{k}"),
        OperatorExpr::word(OperatorWord::normal(0, 1).concat(&OperatorWord::ups(k))),
        OperatorExpr::default()
            .plus(epsilon(k), OperatorWord::ups(k - 1))
            .plus(sign, OperatorWord::normal(k, 1)),
    );
    let down_form = (
        format!("D^{k}U"),
        OperatorExpr::word(OperatorWord::downs(k).concat(&OperatorWord::ups(1))),
        OperatorExpr::default()
            .plus(epsilon(k), OperatorWord::downs(k - 1))
            .plus(sign, OperatorWord::normal(1, k)),
    );
    vec![up_form, down_form]
}

/// `D^n U^n = U^n D^n` (n even) or `U^{n-1} D^{n-1} - U^n D^n` (n odd).
pub fn skew_relation(n: usize) -> (String, OperatorExpr, OperatorExpr) {
    let lhs = OperatorExpr::word(OperatorWord::downs(n).concat(&OperatorWord::ups(n)));
    let rhs = if n % 2 == 0 {
        OperatorExpr::word(OperatorWord::normal(n, n))
    } else {
        OperatorExpr::default()
            .plus(1, OperatorWord::normal(n - 1, n - 1))
            .plus(-1, OperatorWord::normal(n, n))
    };
    (format!("D^{n}U^{n}"), lhs, rhs)
}

/// Signed normal-order coefficients: `w = Σ c_ij U^i D^j` modulo `UD + DU = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalOrderTable {
    pub word: OperatorWord,
    pub coeffs: BTreeMap<(usize, usize), BigInt>,
}

impl NormalOrderTable {
    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// `c_{ρ(w), 0}`, or zero when `ρ(w) < 0`.
    pub fn leading(&self) -> BigInt {
        let rho = self.word.rho();
        if rho < 0 {
            BigInt::zero()
        } else {
            self.coeff(rho as usize, 0)
        }
    }

    pub fn to_expr(&self) -> OperatorExpr {
        OperatorExpr {
            terms: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| (c.clone(), OperatorWord::normal(i, j)))
                .collect(),
        }
    }
}

/// Builds `c_ij(w)` from `c_00(∅) = 1`, `c_ij(Uw) = c_{i-1,j}(w)` and
/// `c_ij(Dw) = ε(i+1) c_{i+1,j}(w) + (-1)^i c_{i,j-1}(w)`.
pub fn normal_order(w: &OperatorWord) -> NormalOrderTable {
    let mut table: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    table.insert((0, 0), BigInt::one());
    for letter in w.letters().iter().rev() {
        let mut next: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        let mut add = |key, c: BigInt| {
            let e = next.entry(key).or_insert_with(BigInt::zero);
            *e += c;
        };
        for (&(i, j), c) in &table {
            match letter {
                Letter::U => add((i + 1, j), c.clone()),
                // D U^i D^j = ε(i) U^{i-1} D^j + (-1)^i U^i D^{j+1}
                Letter::D => {
                    if i % 2 == 1 {
                        add((i - 1, j), c.clone());
                    }
                    add((i, j + 1), if i % 2 == 0 { c.clone() } else { -c });
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        table = next;
    }
    NormalOrderTable {
        word: w.clone(),
        coeffs: table,
    }
}

/// True iff `w = u D v` for some `v` of even rank.
pub fn word_vanishes(w: &OperatorWord) -> bool {
    let mut suffix_rank = 0i64;
    for l in w.letters().iter().rev() {
        match l {
            Letter::D if suffix_rank % 2 == 0 => return true,
            Letter::D => suffix_rank -= 1,
            Letter::U => suffix_rank += 1,
        }
    }
    false
}

/// Polynomial in one variable with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn monomial(c: i64, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = BigInt::from(c);
        IntPoly::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn plus(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        (0..e).fold(IntPoly::from_i64(&[1]), |acc, _| acc.mul(self))
    }

    /// `f(U) P` restricted to rank `rank`: `Σ_i a_i U^i P_{rank - i}`.
    pub fn apply_to_rank_sum(&self, p: &GradedSignedPoset, rank: usize) -> Result<RankVector> {
        let mut acc = RankVector::zero(rank);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i > rank {
                continue;
            }
            let start = RankVector::rank_sum(p, rank - i);
            let term = apply_word(p, &OperatorWord::ups(i), &start)?;
            acc = acc.checked_add(&term.scale(a))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{d}")?,
                (_, false) => write!(f, "{mag}z^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `g_k(z)` with `D^k P = g_k(U) P` in every alpha- or beta-signed
/// differential poset.
pub fn g_poly(variant: Variant, k: usize) -> IntPoly {
    match variant {
        Variant::Alpha => {
            if k == 0 {
                return IntPoly::from_i64(&[1]);
            }
            let base = 4 * ((k - 1) / 4);
            match (k - 1) % 4 {
                0 => IntPoly::monomial(1, base).plus(&IntPoly::monomial(-1, base + 1)),
                1 => IntPoly::monomial(-1, base + 2),
                2 => IntPoly::monomial(-1, base + 2).plus(&IntPoly::monomial(1, base + 3)),
                _ => IntPoly::monomial(1, base + 4),
            }
        }
        Variant::Beta => {
            let even = IntPoly::from_i64(&[2, 0, -1]).pow(k / 2);
            if k % 2 == 0 {
                even
            } else {
                // z^{2i} ↦ z^{2i} + z^{2i+1}
                let mut coeffs = vec![BigInt::zero(); even.coeffs.len() + 1];
                for (d, c) in even.coeffs.iter().enumerate() {
                    coeffs[d] += c;
                    coeffs[d + 1] += c;
                }
                IntPoly::new(coeffs)
            }
        }
    }
}

/// Checks `D^k P = g_k(U) P` coefficientwise on ranks `0..=max_rank - k`,
/// the window where `D^k P_{r+k}` is fully available.
pub fn verify_g_poly(p: &GradedSignedPoset, variant: Variant, k: usize) -> Result<AxiomReport> {
    if k > p.max_rank() {
        return Err(PosetError::Truncation {
            requested: k,
            max_rank: p.max_rank(),
        });
    }
    let g = g_poly(variant, k);
    let top = p.max_rank() - k;
    let mut failures = Vec::new();
    for rank in 0..=top {
        let lhs = apply_word(p, &OperatorWord::downs(k), &RankVector::rank_sum(p, rank + k))?;
        let rhs = g.apply_to_rank_sum(p, rank)?;
        for (j, _) in (&lhs - &rhs).terms() {
            let y = ElementId::new(rank, j);
            failures.push(Failure::new(y, None, &rhs.coeff(j), &lhs.coeff(j)));
        }
    }
    Ok(AxiomReport {
        axiom: format!("g_{k}^{}", variant.name()),
        certified_rank: top,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> OperatorWord {
        s.parse().unwrap()
    }

    #[test]
    fn normal_order_small_words() {
        let t = normal_order(&w("U"));
        assert_eq!(t.coeffs.len(), 1);
        assert_eq!(t.coeff(1, 0), BigInt::one());

        let t = normal_order(&w("DU"));
        assert_eq!(t.coeffs.len(), 2);
        assert_eq!(t.coeff(0, 0), BigInt::one());
        assert_eq!(t.coeff(1, 1), BigInt::from(-1));

        assert_eq!(normal_order(&OperatorWord::empty()).coeff(0, 0), BigInt::one());
    }

    #[test]
    fn vanishing_words() {
        for k in 0..8 {
            assert!(!word_vanishes(&OperatorWord::ups(k)));
        }
        assert!(word_vanishes(&w("UDUU")));
        assert!(normal_order(&w("UDUU")).coeff(2, 0).is_zero());
        assert!(word_vanishes(&w("D")));
        assert!(!word_vanishes(&w("DU")));
    }

    #[test]
    fn normal_order_support_matches_rank() {
        for len in 0..=8 {
            for word in OperatorWord::all_of_length(len) {
                let t = normal_order(&word);
                for &(i, j) in t.coeffs.keys() {
                    assert_eq!(i as i64 - j as i64, word.rho(), "{word}");
                }
                let lead = t.leading();
                assert!(lead.is_zero() || lead.is_one(), "{word}");
                assert_eq!(lead.is_zero(), word_vanishes(&word), "{word}");
            }
        }
    }

    #[test]
    fn g_polys() {
        assert_eq!(g_poly(Variant::Alpha, 0), IntPoly::from_i64(&[1]));
        assert_eq!(g_poly(Variant::Beta, 0), IntPoly::from_i64(&[1]));
        assert_eq!(g_poly(Variant::Beta, 2), IntPoly::from_i64(&[2, 0, -1]));
        assert_eq!(g_poly(Variant::Beta, 1), IntPoly::from_i64(&[1, 1]));
        assert_eq!(g_poly(Variant::Beta, 3), IntPoly::from_i64(&[2, 2, -1, -1]));
        assert_eq!(g_poly(Variant::Alpha, 1), IntPoly::from_i64(&[1, -1]));
        assert_eq!(g_poly(Variant::Alpha, 2), IntPoly::from_i64(&[0, 0, -1]));
        assert_eq!(g_poly(Variant::Alpha, 3), IntPoly::from_i64(&[0, 0, -1, 1]));
        assert_eq!(g_poly(Variant::Alpha, 4), IntPoly::from_i64(&[0, 0, 0, 0, 1]));
        assert_eq!(g_poly(Variant::Alpha, 5), IntPoly::from_i64(&[0, 0, 0, 0, 1, -1]));
        assert_eq!(g_poly(Variant::Beta, 2).to_string(), "2 - z^2");
    }

    #[test]
    fn word_helpers() {
        let word = w("UDUU");
        assert_eq!(word.rho(), 2);
        assert_eq!(word.reversed().to_string(), "UUDU");
        assert_eq!(word.max_height(), 2);
        assert_eq!(OperatorWord::all_of_length(3).count(), 8);
        assert!("UXD".parse::<OperatorWord>().is_err());
    }

    #[test]
    fn vector_arithmetic() {
        let a = RankVector::from_coeffs(2, [(0, BigInt::from(3)), (1, BigInt::from(-1))]);
        let b = RankVector::from_coeffs(2, [(1, BigInt::from(1))]);
        let s = &a + &b;
        assert_eq!(s.len(), 1);
        assert_eq!(inner(&a, &a).unwrap(), BigInt::from(10));
        assert!(inner(&a, &RankVector::zero(3)).is_err());
        assert!((&a - &a).is_zero());
    }
}
