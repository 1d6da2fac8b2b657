//! Rank-truncated signed posets.
//!
//! A [`GradedSignedPoset`] stores ranks `0..=max_rank` of an ℕ-graded poset
//! with a unique minimum, a sign on every cover edge and a sign on every
//! element. Elements are addressed by `(rank, index)`; labels are opaque
//! strings supplied by the builders and only used for display and
//! serialization.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{PosetError, Result};
use crate::sign::Sign;

/// Address of an element: its rank and its position within that rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementId {
    pub rank: usize,
    pub index: usize,
}

impl ElementId {
    pub const BOTTOM: ElementId = ElementId { rank: 0, index: 0 };

    pub fn new(rank: usize, index: usize) -> Self {
        ElementId { rank, index }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedCover {
    pub lower: ElementId,
    pub upper: ElementId,
    pub sign: Sign,
}

/// Which of the two signed-differential equations a construction targets:
/// `(U + D)P = P` (alpha) or `(D - U)P = P` (beta).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Alpha,
    Beta,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Alpha => "alpha",
            Variant::Beta => "beta",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(Variant::Alpha),
            "beta" => Ok(Variant::Beta),
            other => Err(PosetError::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// Lower/upper cover list entry: the index of the neighbour in the adjacent
/// rank together with the edge sign `s`.
pub type Neighbour = (usize, Sign);

/// The triple `(P, s, v)` restricted to ranks `0..=max_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSignedPoset {
    levels: Vec<Vec<String>>,
    vertex_signs: Vec<Vec<Sign>>,
    // up[r][i]: upper covers of (r, i), sorted by index. Empty at the top rank.
    up: Vec<Vec<Vec<Neighbour>>>,
    // down[r][j]: lower covers of (r, j), sorted by index. Empty at rank 0.
    down: Vec<Vec<Vec<Neighbour>>>,
}

impl GradedSignedPoset {
    /// Builds and validates a poset from its levels, vertex signs and covers.
    pub fn new(
        levels: Vec<Vec<String>>,
        vertex_signs: Vec<Vec<Sign>>,
        covers: impl IntoIterator<Item = SignedCover>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(PosetError::Malformed("no ranks".into()));
        }
        if levels[0].len() != 1 {
            return Err(PosetError::Malformed(format!(
                "rank 0 must hold exactly one element, found {}",
                levels[0].len()
            )));
        }
        if vertex_signs.len() != levels.len()
            || vertex_signs.iter().zip(&levels).any(|(v, l)| v.len() != l.len())
        {
            return Err(PosetError::Malformed(
                "vertex signs do not match the levels".into(),
            ));
        }
        if vertex_signs[0][0] != Sign::Plus {
            return Err(PosetError::Malformed("v(0̂) must be +1".into()));
        }

        let mut up: Vec<Vec<Vec<Neighbour>>> =
            levels.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        let mut down = up.clone();
        for cover in covers {
            let SignedCover { lower, upper, sign } = cover;
            if upper.rank != lower.rank + 1 {
                return Err(PosetError::Malformed(format!(
                    "cover {lower:?} -> {upper:?} does not raise rank by one"
                )));
            }
            for id in [lower, upper] {
                if id.rank >= levels.len() || id.index >= levels[id.rank].len() {
                    return Err(PosetError::UnknownElement(id));
                }
            }
            up[lower.rank][lower.index].push((upper.index, sign));
            down[upper.rank][upper.index].push((lower.index, sign));
        }
        for (rank, per_rank) in up.iter_mut().chain(down.iter_mut()).enumerate() {
            for list in per_rank.iter_mut() {
                list.sort_unstable();
                if list.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(PosetError::Malformed(format!(
                        "duplicate cover touching rank {}",
                        rank % levels.len()
                    )));
                }
            }
        }
        for (rank, per_rank) in down.iter().enumerate().skip(1) {
            if let Some(index) = per_rank.iter().position(Vec::is_empty) {
                return Err(PosetError::Malformed(format!(
                    "element ({rank}, {index}) has no lower cover"
                )));
            }
        }
        Ok(GradedSignedPoset {
            levels,
            vertex_signs,
            up,
            down,
        })
    }

    /// The one-element signed poset `Q` with `v(0̂) = +1`.
    pub fn point(label: impl Into<String>) -> Self {
        GradedSignedPoset {
            levels: vec![vec![label.into()]],
            vertex_signs: vec![vec![Sign::Plus]],
            up: vec![vec![Vec::new()]],
            down: vec![vec![Vec::new()]],
        }
    }

    pub fn max_rank(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn rank_size(&self, rank: usize) -> usize {
        self.levels.get(rank).map_or(0, Vec::len)
    }

    pub fn rank_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn levels(&self) -> &[Vec<String>] {
        &self.levels
    }

    pub fn labels(&self, rank: usize) -> &[String] {
        &self.levels[rank]
    }

    pub fn contains(&self, id: ElementId) -> bool {
        id.rank < self.levels.len() && id.index < self.levels[id.rank].len()
    }

    pub fn check(&self, id: ElementId) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(PosetError::UnknownElement(id))
        }
    }

    pub fn label(&self, id: ElementId) -> Result<&str> {
        self.check(id)?;
        Ok(&self.levels[id.rank][id.index])
    }

    /// Looks an element up by label within a rank.
    pub fn find(&self, rank: usize, label: &str) -> Option<ElementId> {
        self.levels
            .get(rank)?
            .iter()
            .position(|l| l == label)
            .map(|index| ElementId { rank, index })
    }

    /// Label → id map for one rank.
    pub fn index_of_rank(&self, rank: usize) -> HashMap<&str, usize> {
        self.levels[rank]
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }

    pub fn elements(&self, rank: usize) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.rank_size(rank)).map(move |index| ElementId { rank, index })
    }

    /// The function `v`. Panics on an id outside the poset.
    pub fn vertex_sign(&self, id: ElementId) -> Sign {
        self.vertex_signs[id.rank][id.index]
    }

    pub fn vertex_signs(&self, rank: usize) -> &[Sign] {
        &self.vertex_signs[rank]
    }

    pub fn upper_covers(&self, id: ElementId) -> &[Neighbour] {
        &self.up[id.rank][id.index]
    }

    pub fn lower_covers(&self, id: ElementId) -> &[Neighbour] {
        &self.down[id.rank][id.index]
    }

    pub fn cover_sign(&self, lower: ElementId, upper: ElementId) -> Option<Sign> {
        if !self.contains(lower) || upper.rank != lower.rank + 1 || !self.contains(upper) {
            return None;
        }
        self.up[lower.rank][lower.index]
            .iter()
            .find(|(j, _)| *j == upper.index)
            .map(|&(_, s)| s)
    }

    /// All covers, grouped by lower rank and ordered by (lower, upper).
    pub fn covers(&self) -> impl Iterator<Item = SignedCover> + '_ {
        self.up.iter().enumerate().flat_map(|(rank, per_rank)| {
            per_rank.iter().enumerate().flat_map(move |(index, list)| {
                list.iter().map(move |&(j, sign)| SignedCover {
                    lower: ElementId { rank, index },
                    upper: ElementId {
                        rank: rank + 1,
                        index: j,
                    },
                    sign,
                })
            })
        })
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().flatten().map(Vec::len).sum()
    }

    /// Returns a copy with one cover's sign replaced.
    pub fn with_cover_sign(&self, lower: ElementId, upper: ElementId, sign: Sign) -> Result<Self> {
        if self.cover_sign(lower, upper).is_none() {
            return Err(PosetError::Malformed(format!(
                "{lower:?} -> {upper:?} is not a cover"
            )));
        }
        let mut out = self.clone();
        for entry in out.up[lower.rank][lower.index].iter_mut() {
            if entry.0 == upper.index {
                entry.1 = sign;
            }
        }
        for entry in out.down[upper.rank][upper.index].iter_mut() {
            if entry.0 == lower.index {
                entry.1 = sign;
            }
        }
        Ok(out)
    }

    /// The conjugate `s'(x ⋖ y) = s(x ⋖ y) v(x) v(y)` of the edge signing by `v`.
    pub fn conjugate_signing(&self) -> BTreeMap<(ElementId, ElementId), Sign> {
        self.covers()
            .map(|c| {
                let s = c.sign * self.vertex_sign(c.lower) * self.vertex_sign(c.upper);
                ((c.lower, c.upper), s)
            })
            .collect()
    }

    /// Same poset and vertex signs with the edge signing replaced by its conjugate.
    pub fn conjugate(&self) -> Self {
        let signs = self.conjugate_signing();
        let mut out = self.clone();
        for (rank, per_rank) in out.up.iter_mut().enumerate() {
            for (index, list) in per_rank.iter_mut().enumerate() {
                for entry in list.iter_mut() {
                    entry.1 = signs[&(ElementId::new(rank, index), ElementId::new(rank + 1, entry.0))];
                }
            }
        }
        for (rank, per_rank) in out.down.iter_mut().enumerate() {
            for (index, list) in per_rank.iter_mut().enumerate() {
                for entry in list.iter_mut() {
                    entry.1 = signs[&(ElementId::new(rank - 1, entry.0), ElementId::new(rank, index))];
                }
            }
        }
        out
    }

    /// `e(x)` for every element, by the rank recursion
    /// `e(0̂) = 1`, `e(x) = Σ_{y ⋖ x} s(y ⋖ x) e(y)`.
    pub fn signed_chain_sums(&self) -> Vec<Vec<BigInt>> {
        self.chain_table(true)
    }

    /// Signed sum over maximal chains `0̂ → x` of the product of edge signs.
    pub fn signed_chain_sum(&self, id: ElementId) -> Result<BigInt> {
        self.check(id)?;
        Ok(self.chain_table_to(id.rank, true)[id.rank][id.index].clone())
    }

    /// `f(x)` for every element: the number of maximal chains `0̂ → x`.
    pub fn unsigned_chain_counts(&self) -> Vec<Vec<BigInt>> {
        self.chain_table(false)
    }

    pub fn unsigned_chain_count(&self, id: ElementId) -> Result<BigInt> {
        self.check(id)?;
        Ok(self.chain_table_to(id.rank, false)[id.rank][id.index].clone())
    }

    fn chain_table(&self, signed: bool) -> Vec<Vec<BigInt>> {
        self.chain_table_to(self.max_rank(), signed)
    }

    fn chain_table_to(&self, top: usize, signed: bool) -> Vec<Vec<BigInt>> {
        let mut table: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for rank in 1..=top {
            let prev = &table[rank - 1];
            let row = self.down[rank]
                .iter()
                .map(|lower| {
                    lower.iter().fold(BigInt::zero(), |acc, &(i, s)| {
                        if signed {
                            acc + s.apply(&prev[i])
                        } else {
                            acc + &prev[i]
                        }
                    })
                })
                .collect();
            table.push(row);
        }
        table
    }

    /// Explicitly enumerates the maximal chains `0̂ = x_0 ⋖ … ⋖ x_r = x`,
    /// failing once more than `limit` chains have been produced.
    pub fn maximal_chains(&self, id: ElementId, limit: usize) -> Result<Vec<Vec<ElementId>>> {
        self.check(id)?;
        let mut out = Vec::new();
        let mut stack = vec![id];
        self.collect_chains(&mut stack, &mut out, limit)?;
        Ok(out)
    }

    fn collect_chains(
        &self,
        stack: &mut Vec<ElementId>,
        out: &mut Vec<Vec<ElementId>>,
        limit: usize,
    ) -> Result<()> {
        let top = *stack.last().expect("non-empty chain");
        if top.rank == 0 {
            if out.len() == limit {
                return Err(PosetError::CapExceeded {
                    size: limit + 1,
                    cap: limit,
                });
            }
            out.push(stack.iter().rev().copied().collect());
            return Ok(());
        }
        for &(i, _) in self.lower_covers(top) {
            stack.push(ElementId::new(top.rank - 1, i));
            self.collect_chains(stack, out, limit)?;
            stack.pop();
        }
        Ok(())
    }

    /// Product of the edge signs along a chain.
    pub fn chain_sign(&self, chain: &[ElementId]) -> Option<Sign> {
        chain.windows(2).try_fold(Sign::Plus, |acc, w| {
            self.cover_sign(w[0], w[1]).map(|s| acc * s)
        })
    }

    /// Restriction to ranks `0..=rank`.
    pub fn truncate(&self, rank: usize) -> Result<Self> {
        if rank > self.max_rank() {
            return Err(PosetError::Truncation {
                requested: rank,
                max_rank: self.max_rank(),
            });
        }
        let keep = rank + 1;
        let mut up: Vec<_> = self.up[..keep].to_vec();
        for list in up[rank].iter_mut() {
            list.clear();
        }
        Ok(GradedSignedPoset {
            levels: self.levels[..keep].to_vec(),
            vertex_signs: self.vertex_signs[..keep].to_vec(),
            up,
            down: self.down[..keep].to_vec(),
        })
    }

    /// Signed reflection extension `P⁺`, labelling new elements `y*` and `x+`.
    pub fn reflection_extend(&self, variant: Variant) -> Result<Self> {
        self.reflection_extend_with(variant, |y| format!("{y}*"), |x| format!("{x}+"))
    }

    /// Signed reflection extension with caller-chosen labels for the copies.
    ///
    /// The new top rank holds one `y*` per element `y` of the current top
    /// rank (in order) followed by one `x⁺` per element `x` of the rank below.
    /// Covers are `y ⋖ y*` with sign `+1` and `y ⋖ x⁺` whenever `x ⋖ y`, with
    /// `s⁺(y ⋖ x⁺) = ∓ v⁺(x⁺) v⁺(y) s(x ⋖ y)` (minus for alpha, plus for beta),
    /// `v⁺(y*) = v(y)` and `v⁺(x⁺) = -v(x)`.
    pub fn reflection_extend_with(
        &self,
        variant: Variant,
        star_label: impl Fn(&str) -> String,
        plus_label: impl Fn(&str) -> String,
    ) -> Result<Self> {
        let n = self.max_rank();
        let top = &self.levels[n];
        let mut labels: Vec<String> = top.iter().map(|y| star_label(y)).collect();
        let mut signs: Vec<Sign> = self.vertex_signs[n].clone();
        let mut covers: Vec<SignedCover> = self.covers().collect();
        for (index, _) in top.iter().enumerate() {
            covers.push(SignedCover {
                lower: ElementId::new(n, index),
                upper: ElementId::new(n + 1, index),
                sign: Sign::Plus,
            });
        }
        if n >= 1 {
            let offset = top.len();
            for (xi, x) in self.levels[n - 1].iter().enumerate() {
                labels.push(plus_label(x));
                let v_plus = -self.vertex_signs[n - 1][xi];
                signs.push(v_plus);
                let x_plus = ElementId::new(n + 1, offset + xi);
                for &(yi, s) in &self.up[n - 1][xi] {
                    let y = ElementId::new(n, yi);
                    let base = v_plus * self.vertex_sign(y) * s;
                    let sign = match variant {
                        Variant::Alpha => -base,
                        Variant::Beta => base,
                    };
                    covers.push(SignedCover {
                        lower: y,
                        upper: x_plus,
                        sign,
                    });
                }
            }
        }
        let mut levels = self.levels.clone();
        levels.push(labels);
        let mut vertex_signs = self.vertex_signs.clone();
        vertex_signs.push(signs);
        GradedSignedPoset::new(levels, vertex_signs, covers)
    }

    /// Applies [`reflection_extend`](Self::reflection_extend) `times` times.
    pub fn reflection_extend_iter(&self, variant: Variant, times: usize) -> Result<Self> {
        (0..times).try_fold(self.clone(), |p, _| p.reflection_extend(variant))
    }

    pub fn to_json_value(&self) -> PosetJson {
        PosetJson {
            levels: self.levels.clone(),
            vertex_signs: self
                .vertex_signs
                .iter()
                .map(|r| r.iter().map(|s| s.to_i8()).collect())
                .collect(),
            covers: self
                .covers()
                .map(|c| CoverJson {
                    lo: [c.lower.rank, c.lower.index],
                    hi: [c.upper.rank, c.upper.index],
                    s: c.sign.to_i8(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("poset json")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PosetJson =
            serde_json::from_str(text).map_err(|e| PosetError::Json(e.to_string()))?;
        raw.try_into()
    }

    /// Graphviz rendering: one node per element (shaded when `v = -1`), one
    /// edge per cover labelled with its sign, one `rank=same` group per rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        for (rank, labels) in self.levels.iter().enumerate() {
            out.push_str("  { rank=same;");
            for (index, label) in labels.iter().enumerate() {
                let shown = if label.is_empty() { "∅" } else { label };
                let fill = if self.vertex_signs[rank][index] == Sign::Minus {
                    ", style=filled, fillcolor=lightgray"
                } else {
                    ""
                };
                let _ = write!(out, " \"{rank}_{index}\" [label=\"{shown}\"{fill}];");
            }
            out.push_str(" }\n");
        }
        for c in self.covers() {
            let _ = writeln!(
                out,
                "  \"{}_{}\" -- \"{}_{}\" [label=\"{}\"];",
                c.lower.rank,
                c.lower.index,
                c.upper.rank,
                c.upper.index,
                c.sign.symbol()
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Serialized form of a [`GradedSignedPoset`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub levels: Vec<Vec<String>>,
    pub vertex_signs: Vec<Vec<i8>>,
    pub covers: Vec<CoverJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub lo: [usize; 2],
    pub hi: [usize; 2],
    pub s: i8,
}

impl TryFrom<PosetJson> for GradedSignedPoset {
    type Error = PosetError;

    fn try_from(raw: PosetJson) -> Result<Self> {
        let sign = |s: i8| {
            Sign::from_i64(s.into()).ok_or_else(|| PosetError::Json(format!("bad sign {s}")))
        };
        let vertex_signs = raw
            .vertex_signs
            .iter()
            .map(|r| r.iter().map(|&s| sign(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let covers = raw
            .covers
            .iter()
            .map(|c| {
                Ok(SignedCover {
                    lower: ElementId::new(c.lo[0], c.lo[1]),
                    upper: ElementId::new(c.hi[0], c.hi[1]),
                    sign: sign(c.s)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GradedSignedPoset::new(raw.levels, vertex_signs, covers)
    }
}
