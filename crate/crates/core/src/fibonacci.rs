//! The Fibonacci differential poset `F` with its alpha and beta signings,
//! the Fibonacci distributive lattice `Fib`, Fibonacci tableaux and
//! domino-tileable words.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{PosetError, Result};
use crate::extensions::{Extensions, Placement};
use crate::poset::{ElementId, GradedSignedPoset, SignedCover, Variant};
use crate::sign::{permutation_sign, Sign};

/// Largest weight [`enumerate_fib_tableaux`] accepts by default.
pub const FIB_TABLEAU_CAP: usize = 16;

/// A word over `{1, 2}`, graded by the sum of its letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FibWord(Vec<u8>);

impl FibWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&l| l != 1 && l != 2) {
            return Err(PosetError::Parse(format!("letter {bad} is not 1 or 2")));
        }
        Ok(FibWord(letters))
    }

    pub fn empty() -> Self {
        FibWord(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&l| l as usize).sum()
    }

    /// Number of 2's.
    pub fn twos(&self) -> usize {
        self.0.iter().filter(|&&l| l == 2).count()
    }

    /// `v(x) = (-1)^{number of 2's}`.
    pub fn vertex_sign(&self) -> Sign {
        Sign::from_parity(self.twos())
    }

    pub fn prepend(&self, letter: u8) -> FibWord {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.0);
        FibWord(letters)
    }

    /// All words of weight `n`, lexicographic with `1 < 2`.
    pub fn all(n: usize) -> Vec<FibWord> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_words(n, &mut current, &mut out);
        out
    }

    /// Every non-initial maximal run of 1's has even length.
    pub fn is_domino_tileable(&self) -> bool {
        let mut run = 0;
        let mut initial = true;
        for &l in &self.0 {
            if l == 1 {
                run += 1;
            } else {
                if !initial && run % 2 == 1 {
                    return false;
                }
                initial = false;
                run = 0;
            }
        }
        initial || run % 2 == 0
    }

    /// Lower covers in `F` with their signs.
    ///
    /// A cover either changes a 2 at 1-based position `i` to a 1 when only 2's
    /// precede it (sign `(-1)^{i+1}` for alpha, `(-1)^i` for beta), or
    /// deletes the first 1, found at position `i` (sign `(-1)^{i+1}`).
    pub fn lower_covers(&self, variant: Variant) -> Vec<(FibWord, Sign)> {
        let mut out = Vec::new();
        let lead = self.0.iter().take_while(|&&l| l == 2).count();
        for k in 0..lead {
            let i = k + 1;
            let mut letters = self.0.clone();
            letters[k] = 1;
            let sign = match variant {
                Variant::Alpha => Sign::from_parity(i + 1),
                Variant::Beta => Sign::from_parity(i),
            };
            out.push((FibWord(letters), sign));
        }
        if lead < self.0.len() {
            let i = lead + 1;
            let mut letters = self.0.clone();
            letters.remove(lead);
            out.push((FibWord(letters), Sign::from_parity(i + 1)));
        }
        out
    }
}

fn fill_words(n: usize, current: &mut Vec<u8>, out: &mut Vec<FibWord>) {
    if n == 0 {
        out.push(FibWord(current.clone()));
        return;
    }
    for letter in [1u8, 2] {
        if letter as usize <= n {
            current.push(letter);
            fill_words(n - letter as usize, current, out);
            current.pop();
        }
    }
}

impl fmt::Display for FibWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for FibWord {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(PosetError::Parse(format!("bad Fibonacci letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(FibWord)
    }
}

fn words_poset(
    max_rank: usize,
    covers_of: impl Fn(&FibWord) -> Vec<(FibWord, Sign)>,
    vertex: impl Fn(&FibWord) -> Sign,
) -> GradedSignedPoset {
    let words: Vec<Vec<FibWord>> = (0..=max_rank).map(FibWord::all).collect();
    let index: Vec<HashMap<&FibWord, usize>> = words
        .iter()
        .map(|r| r.iter().enumerate().map(|(i, w)| (w, i)).collect())
        .collect();
    let mut covers = Vec::new();
    for (rank, level) in words.iter().enumerate().skip(1) {
        for (j, y) in level.iter().enumerate() {
            for (x, sign) in covers_of(y) {
                covers.push(SignedCover {
                    lower: ElementId::new(rank - 1, index[rank - 1][&x]),
                    upper: ElementId::new(rank, j),
                    sign,
                });
            }
        }
    }
    let levels = words
        .iter()
        .map(|r| r.iter().map(FibWord::to_string).collect())
        .collect();
    let vertex_signs = words.iter().map(|r| r.iter().map(&vertex).collect()).collect();
    GradedSignedPoset::new(levels, vertex_signs, covers).expect("word poset is well formed")
}

/// `F_α` or `F_β` on ranks `0..=max_rank`.
pub fn build_fib_poset(variant: Variant, max_rank: usize) -> GradedSignedPoset {
    words_poset(max_rank, |y| y.lower_covers(variant), FibWord::vertex_sign)
}

/// `F_α` or `F_β` grown from the one-point poset by `max_rank` reflection
/// extensions, labelling `y*` as `1y` and `x⁺` as `2x`.
pub fn fib_by_reflection(variant: Variant, max_rank: usize) -> Result<GradedSignedPoset> {
    (0..max_rank).try_fold(GradedSignedPoset::point(""), |p, _| {
        p.reflection_extend_with(variant, |y| format!("1{y}"), |x| format!("2{x}"))
    })
}

/// `e_α(x) = 1` and `e_β(x) = v(x)` for domino-tileable `x`, zero otherwise.
pub fn fib_chain_sum_closed(x: &FibWord, variant: Variant) -> BigInt {
    if !x.is_domino_tileable() {
        return BigInt::zero();
    }
    match variant {
        Variant::Alpha => BigInt::from(1),
        Variant::Beta => x.vertex_sign().to_bigint(),
    }
}

/// `x ≤ y` in `Fib`: `x` is no longer than `y` and `x_i ≤ y_i` letterwise.
pub fn fib_lattice_le(x: &FibWord, y: &FibWord) -> bool {
    x.len() <= y.len() && x.0.iter().zip(&y.0).all(|(a, b)| a <= b)
}

/// Upper covers of `x` in `Fib`: raise one 1 to a 2, or append a 1.
pub fn fib_lattice_upper_covers(x: &FibWord) -> Vec<FibWord> {
    let mut out: Vec<FibWord> = (0..x.len())
        .filter(|&k| x.0[k] == 1)
        .map(|k| {
            let mut letters = x.0.clone();
            letters[k] = 2;
            FibWord(letters)
        })
        .collect();
    let mut appended = x.0.clone();
    appended.push(1);
    out.push(FibWord(appended));
    out
}

/// Cover pairs `(x, y)` of `Fib` with `weight(y) ≤ max_rank`.
pub fn build_fib_lattice_covers(max_rank: usize) -> Vec<(FibWord, FibWord)> {
    (0..max_rank)
        .flat_map(FibWord::all)
        .flat_map(|x| {
            fib_lattice_upper_covers(&x)
                .into_iter()
                .map(move |y| (x.clone(), y))
        })
        .collect()
}

/// `Fib` as a poset with every sign `+1`, so chain counts can be taken.
pub fn build_fib_lattice(max_rank: usize) -> GradedSignedPoset {
    words_poset(
        max_rank,
        |y| {
            // lower covers: lower one 2 to a 1, or drop a trailing 1
            let mut out: Vec<(FibWord, Sign)> = (0..y.len())
                .filter(|&k| y.0[k] == 2)
                .map(|k| {
                    let mut letters = y.0.clone();
                    letters[k] = 1;
                    (FibWord(letters), Sign::Plus)
                })
                .collect();
            if y.0.last() == Some(&1) {
                out.push((FibWord(y.0[..y.len() - 1].to_vec()), Sign::Plus));
            }
            out
        },
        |_| Sign::Plus,
    )
}

/// A Fibonacci tableau: columns of height 1 or 2 whose heights spell the
/// shape word. `columns[c]` is `[top]` or `[top, bottom]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibTableau {
    pub shape: FibWord,
    pub columns: Vec<Vec<usize>>,
}

impl FibTableau {
    pub fn new(shape: FibWord, columns: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |m: &str| Err(PosetError::Malformed(format!("Fibonacci tableau: {m}")));
        if columns.len() != shape.len()
            || columns.iter().zip(shape.letters()).any(|(c, &h)| c.len() != h as usize)
        {
            return bad("column heights differ from the shape");
        }
        let n = shape.weight();
        let mut seen = vec![false; n + 1];
        for &e in columns.iter().flatten() {
            if e == 0 || e > n || seen[e] {
                return bad("entries are not a permutation of 1..n");
            }
            seen[e] = true;
        }
        if columns.windows(2).any(|w| w[0][0] >= w[1][0]) {
            return bad("top row not increasing");
        }
        if columns.iter().any(|c| c.len() == 2 && c[0] >= c[1]) {
            return bad("column not increasing");
        }
        Ok(FibTableau { shape, columns })
    }

    /// Columns read bottom to top, leftmost column first.
    pub fn reading_word(&self) -> Vec<usize> {
        self.columns
            .iter()
            .flat_map(|c| c.iter().rev().copied())
            .collect()
    }
}

/// Slot `2c` is the top cell of column `c`, slot `2c + 1` its bottom cell.
struct ColumnFilling {
    heights: Vec<u8>,
    tops: usize,
    bottoms: Vec<bool>,
    size: usize,
}

impl Placement for ColumnFilling {
    fn size(&self) -> usize {
        self.size
    }

    fn slots(&self) -> usize {
        2 * self.heights.len()
    }

    fn can_place(&self, slot: usize) -> bool {
        let c = slot / 2;
        if slot % 2 == 0 {
            c == self.tops
        } else {
            self.heights[c] == 2 && c < self.tops && !self.bottoms[c]
        }
    }

    fn place(&mut self, slot: usize) {
        if slot % 2 == 0 {
            self.tops += 1;
        } else {
            self.bottoms[slot / 2] = true;
        }
    }

    fn unplace(&mut self, slot: usize) {
        if slot % 2 == 0 {
            self.tops -= 1;
        } else {
            self.bottoms[slot / 2] = false;
        }
    }
}

pub fn enumerate_fib_tableaux(x: &FibWord) -> Result<impl Iterator<Item = FibTableau>> {
    enumerate_fib_tableaux_capped(x, FIB_TABLEAU_CAP)
}

pub fn enumerate_fib_tableaux_capped(
    x: &FibWord,
    cap: usize,
) -> Result<impl Iterator<Item = FibTableau>> {
    if x.weight() > cap {
        return Err(PosetError::CapExceeded {
            size: x.weight(),
            cap,
        });
    }
    let state = ColumnFilling {
        heights: x.0.clone(),
        tops: 0,
        bottoms: vec![false; x.len()],
        size: x.weight(),
    };
    let shape = x.clone();
    Ok(Extensions::new(state).map(move |word| {
        let mut columns: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
        for (k, &slot) in word.iter().enumerate() {
            columns[slot / 2].push(k + 1);
        }
        FibTableau {
            shape: shape.clone(),
            columns,
        }
    }))
}

pub fn fib_reading_sign(t: &FibTableau) -> Sign {
    permutation_sign(&t.reading_word())
}

/// `I_x = Σ_T s(T)` over the Fibonacci tableaux of shape `x`.
pub fn fib_imbalance(x: &FibWord) -> Result<BigInt> {
    let mut total = 0i64;
    for t in enumerate_fib_tableaux(x)? {
        total += i64::from(fib_reading_sign(&t).to_i8());
    }
    Ok(BigInt::from(total))
}
