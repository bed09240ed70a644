use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest variable index a monomial can carry (`g0` through `g15`).
pub const MAX_INDEX: u32 = 15;

const SLOT_BITS: u32 = 8;
const SLOT_MASK: u128 = 0xff;

/// A monomial `g0^e0 * g1^e1 * ... * g15^e15`.
///
/// Exponents are packed one byte per variable, so multiplying two monomials
/// is a single integer addition. Callers keep total degree well below 256
/// (series are truncated long before that), which rules out carries between
/// slots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn one() -> Self {
        Self::ONE
    }

    /// The single variable `g_index`.
    pub fn var(index: u32) -> Result<Self> {
        Self::from_exponents([(index, 1)])
    }

    pub fn from_exponents<I>(exponents: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut packed = Monomial::ONE;
        for (index, exp) in exponents {
            if index > MAX_INDEX {
                return Err(Error::Contract(format!(
                    "variable index {index} exceeds the supported maximum g{MAX_INDEX}"
                )));
            }
            let total = packed.exponent(index) + exp;
            if total > SLOT_MASK as u32 {
                return Err(Error::Contract(format!(
                    "exponent {total} of g{index} too large"
                )));
            }
            packed = packed.with_exponent(index, total);
        }
        Ok(packed)
    }

    fn with_exponent(self, index: u32, exp: u32) -> Self {
        let shift = index * SLOT_BITS;
        Monomial((self.0 & !(SLOT_MASK << shift)) | ((exp as u128) << shift))
    }

    pub fn exponent(&self, index: u32) -> u32 {
        if index > MAX_INDEX {
            return 0;
        }
        ((self.0 >> (index * SLOT_BITS)) & SLOT_MASK) as u32
    }

    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    pub fn degree(&self) -> u32 {
        self.0.to_le_bytes().iter().map(|&b| b as u32).sum()
    }

    /// Largest `j >= 1` with `g_j` present, or 0 when only `g0` (or nothing)
    /// occurs.
    pub fn valency(&self) -> u32 {
        let upper = self.0 >> SLOT_BITS;
        if upper == 0 {
            0
        } else {
            (127 - upper.leading_zeros()) / SLOT_BITS + 1
        }
    }

    /// Largest index present at all (including 0), `None` for the unit.
    pub fn max_index(&self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some((127 - self.0.leading_zeros()) / SLOT_BITS)
        }
    }

    /// `(index, exponent)` pairs with nonzero exponent, ascending by index.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..=MAX_INDEX).filter_map(move |i| {
            let e = self.exponent(i);
            (e > 0).then_some((i, e))
        })
    }

    /// Product of two monomials. Only valid while every exponent sum stays
    /// below 256, which truncated series guarantee.
    #[inline]
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    /// Every `g_i` renamed to `g_{i+1}`; `None` if that pushes a variable
    /// past [`MAX_INDEX`].
    pub fn shifted(self) -> Option<Monomial> {
        if self.exponent(MAX_INDEX) != 0 {
            None
        } else {
            Some(Monomial(self.0 << SLOT_BITS))
        }
    }

    /// Divide by `g_index` once; `None` if it does not occur.
    pub fn divided_by_var(self, index: u32) -> Option<Monomial> {
        let e = self.exponent(index);
        (e > 0).then(|| self.with_exponent(index, e - 1))
    }

    /// True when some `g_j` occurs while a lower `g_i` (`1 <= i < j`) is
    /// missing. `g0` is ignored.
    pub fn is_bad(&self) -> bool {
        let mut seen_gap = false;
        for i in 1..=MAX_INDEX {
            if self.exponent(i) == 0 {
                seen_gap = true;
            } else if seen_gap {
                return true;
            }
        }
        false
    }

    pub(crate) fn packed(&self) -> u128 {
        self.0
    }

    pub(crate) fn from_packed(packed: u128) -> Monomial {
        Monomial(packed)
    }
}

/// Graded order: total degree first, then lexicographic on the ascending
/// `(index, exponent)` pair sequence.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (i, e)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "g{i}")?;
            } else {
                write!(f, "g{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the canonical rendering (`"1"`, `"g1"`, `"g0^2*g3"`).
impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::ONE);
        }
        let bad = || Error::Contract(format!("malformed monomial {s:?}"));
        let mut pairs = Vec::new();
        for factor in s.split('*') {
            let rest = factor.trim().strip_prefix('g').ok_or_else(bad)?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e),
                None => (rest, "1"),
            };
            let idx: u32 = idx.parse().map_err(|_| bad())?;
            let exp: u32 = exp.parse().map_err(|_| bad())?;
            if exp == 0 {
                return Err(bad());
            }
            pairs.push((idx, exp));
        }
        Monomial::from_exponents(pairs)
    }
}
