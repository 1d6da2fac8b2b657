use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use signed_poset::fibonacci::build_fib_poset;
use signed_poset::young::build_young;
use signed_poset::{GradedSignedPoset, Variant};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    YoungAlpha,
    YoungBeta,
    FibAlpha,
    FibBeta,
    Extend,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::YoungAlpha => "young-alpha",
            Family::YoungBeta => "young-beta",
            Family::FibAlpha => "fib-alpha",
            Family::FibBeta => "fib-beta",
            Family::Extend => "extend",
        }
    }

    fn default_max_rank(self) -> usize {
        match self {
            Family::YoungAlpha | Family::YoungBeta => 10,
            _ => 12,
        }
    }

    fn build(self, max_rank: usize) -> Option<(Variant, GradedSignedPoset)> {
        Some(match self {
            Family::YoungAlpha => (Variant::Alpha, build_young(Variant::Alpha, max_rank)),
            Family::YoungBeta => (Variant::Beta, build_young(Variant::Beta, max_rank)),
            Family::FibAlpha => (Variant::Alpha, build_fib_poset(Variant::Alpha, max_rank)),
            Family::FibBeta => (Variant::Beta, build_fib_poset(Variant::Beta, max_rank)),
            Family::Extend => return None,
        })
    }
}

/// `family:truncation-rank:variant:iterations`, e.g. `young-beta:5:beta:3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendBase {
    pub family: Family,
    pub truncate: usize,
    pub variant: Variant,
    pub iterations: usize,
}

impl FromStr for ExtendBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let fields: Vec<&str> = s.split(':').collect();
        let [family, truncate, variant, iterations] = fields[..] else {
            return Err(format!("expected family:rank:variant:iterations, got {s:?}"));
        };
        let family = Family::from_str(family, false).map_err(|_| format!("unknown family {family:?}"))?;
        if family == Family::Extend {
            return Err("the base of an extension cannot itself be `extend`".into());
        }
        let number = |t: &str| t.parse::<usize>().map_err(|_| format!("bad number {t:?}"));
        Ok(ExtendBase {
            family,
            truncate: number(truncate)?,
            variant: variant.parse().map_err(|_| format!("unknown variant {variant:?}"))?,
            iterations: number(iterations)?,
        })
    }
}

/// Which poset a command runs on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetSpec {
    pub family: Family,
    pub max_rank: usize,
    pub extend_base: Option<ExtendBase>,
}

impl PosetSpec {
    pub fn new(family: Family, max_rank: Option<usize>, extend_base: Option<ExtendBase>) -> Result<Self, CliError> {
        match (family, &extend_base) {
            (Family::Extend, None) => {
                return Err(CliError::Usage("--poset extend requires --extend-base".into()))
            }
            (Family::Extend, Some(base)) => {
                let height = base.truncate + base.iterations;
                if max_rank.is_some_and(|m| m != height) {
                    return Err(CliError::Usage(format!(
                        "--max-rank must equal truncation rank + iterations ({height}) for extensions"
                    )));
                }
                return Ok(PosetSpec {
                    family,
                    max_rank: height,
                    extend_base,
                });
            }
            (_, Some(_)) => {
                return Err(CliError::Usage("--extend-base is only valid with --poset extend".into()))
            }
            (_, None) => {}
        }
        Ok(PosetSpec {
            family,
            max_rank: max_rank.unwrap_or_else(|| family.default_max_rank()),
            extend_base: None,
        })
    }

    pub fn build(&self) -> Result<(Variant, GradedSignedPoset), CliError> {
        if let Some(built) = self.family.build(self.max_rank) {
            return Ok(built);
        }
        let base = self.extend_base.as_ref().expect("checked in new");
        let (_, p) = base.family.build(base.truncate).expect("base is not an extension");
        let p = p.reflection_extend_iter(base.variant, base.iterations)?;
        Ok((base.variant, p))
    }
}

impl fmt::Display for PosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.extend_base {
            Some(b) => write!(
                f,
                "extend({}:{}:{}:{})",
                b.family.name(),
                b.truncate,
                b.variant.name(),
                b.iterations
            ),
            None => f.write_str(self.family.name()),
        }
    }
}
