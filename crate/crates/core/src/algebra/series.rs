use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{Map, Value};

use super::monomial::{Monomial, MAX_INDEX};
use super::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// The quotient in which a [`Series`] lives: monomials of total degree above
/// `degree`, or containing some `g_i` with `i > max_index`, are zero.
///
/// Both conditions cut out ideals that are stable under every operator in
/// this module (products, the index shift, division by a variable), so all
/// computations are exact homomorphic images of the untruncated ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub degree: u32,
    pub max_index: u32,
}

impl Truncation {
    pub fn new(degree: u32, max_index: u32) -> Result<Self> {
        if max_index > MAX_INDEX {
            return Err(Error::Contract(format!(
                "variable cap g{max_index} exceeds the supported g{MAX_INDEX}"
            )));
        }
        // exponents are packed into bytes; keep every product's exponent
        // sum far away from overflow
        if degree > 100 {
            return Err(Error::Contract(format!(
                "truncation degree {degree} too large"
            )));
        }
        Ok(Truncation { degree, max_index })
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        m.degree() <= self.degree && m.max_index().is_none_or(|i| i <= self.max_index)
    }
}

/// Sparse truncated power series in `g0, g1, ...` over the rationals.
///
/// Terms are kept sorted in graded order with no zero coefficients, so two
/// series are equal exactly when their truncations and term lists agree.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    trunc: Truncation,
    terms: Vec<(Monomial, Rational)>,
}

impl Series {
    pub fn zero(trunc: Truncation) -> Self {
        Series {
            trunc,
            terms: Vec::new(),
        }
    }

    pub fn one(trunc: Truncation) -> Self {
        Self::constant(trunc, Rational::one())
    }

    pub fn constant(trunc: Truncation, c: Rational) -> Self {
        Self::from_terms(trunc, [(Monomial::ONE, c)])
    }

    /// `c * g_index`, zero if the variable lies outside the truncation.
    pub fn var(trunc: Truncation, index: u32) -> Result<Self> {
        Ok(Self::from_terms(
            trunc,
            [(Monomial::var(index)?, Rational::one())],
        ))
    }

    /// Sums duplicate monomials, drops zeros and anything outside `trunc`.
    pub fn from_terms<I>(trunc: Truncation, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            if trunc.admits(&m) {
                *acc.entry(m).or_insert_with(Rational::zero) += c;
            }
        }
        Self::from_map(trunc, acc)
    }

    fn from_map(trunc: Truncation, map: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        Series { trunc, terms }
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn truncation_degree(&self) -> u32 {
        self.trunc.degree
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::ONE)
    }

    fn check_same(&self, other: &Series, op: &str) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::Contract(format!(
                "{op}: truncation mismatch ({:?} vs {:?})",
                self.trunc, other.trunc
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_same(other, "add")?;
        Ok(self.merge_with(other, |c| c.clone()))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_same(other, "sub")?;
        Ok(self.merge_with(other, |c| -c))
    }

    // both term lists are sorted, so this is a linear merge
    fn merge_with(&self, other: &Series, map_other: impl Fn(&Rational) -> Rational) -> Series {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (m, c) = &other.terms[j];
                    out.push((*m, map_other(c)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.terms[i].1 + map_other(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Series {
            trunc: self.trunc,
            terms: out,
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.mul_with(other, Execution::default())
    }

    /// Truncated product. Terms are graded, so for a left factor of degree
    /// `d` only a prefix of the right factor can contribute.
    pub fn mul_with(&self, other: &Series, exec: Execution) -> Result<Series> {
        self.check_same(other, "mul")?;
        let max_deg = self.trunc.degree;
        // prefix[d] = number of right-hand terms with degree <= d
        let mut prefix = vec![0usize; max_deg as usize + 1];
        for (m, _) in &other.terms {
            prefix[m.degree() as usize] += 1;
        }
        for d in 1..prefix.len() {
            prefix[d] += prefix[d - 1];
        }
        let rhs = &other.terms;
        let acc = exec.map_reduce(
            &self.terms,
            64,
            HashMap::<u128, Rational>::new,
            |mut acc, (ma, ca)| {
                let da = ma.degree();
                if da <= max_deg {
                    for (mb, cb) in &rhs[..prefix[(max_deg - da) as usize]] {
                        let prod = ca * cb;
                        acc.entry(ma.times(*mb).packed())
                            .and_modify(|c| *c += &prod)
                            .or_insert(prod);
                    }
                }
                acc
            },
            |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                for (k, v) in b {
                    a.entry(k).and_modify(|c| *c += &v).or_insert(v);
                }
                a
            },
        );
        let mut terms: Vec<(Monomial, Rational)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Monomial::from_packed(k), c))
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        Ok(Series {
            trunc: self.trunc,
            terms,
        })
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series::zero(self.trunc);
        }
        Series {
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Multiplies the coefficient of each monomial by `c^e`, where `e` is the
    /// exponent of `g_index` in it. This is the substitution
    /// `g_index -> c * g_index`.
    pub fn scale_var(&self, index: u32, c: &Rational) -> Series {
        let powers: Vec<Rational> = (0..=self.trunc.degree)
            .map(|e| rational::pow(c, e))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (*m, x * &powers[m.exponent(index) as usize]))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Series {
            trunc: self.trunc,
            terms,
        }
    }

    /// Truncated `exp(s) = sum_k s^k / k!`. Requires a zero constant term.
    pub fn exp0(&self) -> Result<Series> {
        self.exp0_with(Execution::default())
    }

    pub fn exp0_with(&self, exec: Execution) -> Result<Series> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let mut result = Series::one(self.trunc);
        let mut power = Series::one(self.trunc);
        for k in 1..=self.trunc.degree {
            power = power
                .mul_with(self, exec)?
                .scale(&rational::rational(1, k as i64));
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
        }
        Ok(result)
    }

    /// Renames every `g_i` to `g_{i+1}`. Monomials pushed past the variable
    /// cap vanish.
    pub fn shift(&self) -> Series {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let s = m.shifted()?;
                self.trunc.admits(&s).then(|| (s, c.clone()))
            })
            .collect();
        // adding 1 to every index preserves the graded order
        Series {
            trunc: self.trunc,
            terms,
        }
    }

    /// Exact division by `g_index`; every monomial must contain it.
    pub fn div_var(&self, index: u32) -> Result<Series> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let q = m.divided_by_var(index).ok_or_else(|| Error::NotDivisible {
                monomial: m.to_string(),
                index,
            })?;
            terms.push((q, c.clone()));
        }
        terms.sort_unstable_by_key(|t| t.0);
        Ok(Series {
            trunc: self.trunc,
            terms,
        })
    }

    /// Drops terms of degree above `degree` and lowers the truncation.
    pub fn truncate(&self, degree: u32) -> Result<Series> {
        if degree > self.trunc.degree {
            return Err(Error::Contract(format!(
                "cannot truncate a degree-{} series to degree {degree}",
                self.trunc.degree
            )));
        }
        let trunc = Truncation {
            degree,
            ..self.trunc
        };
        Ok(self.restrict(trunc))
    }

    /// Lowers the variable cap, dropping monomials that mention a higher index.
    pub fn truncate_index(&self, max_index: u32) -> Result<Series> {
        if max_index > self.trunc.max_index {
            return Err(Error::Contract(format!(
                "cannot raise the variable cap from g{} to g{max_index}",
                self.trunc.max_index
            )));
        }
        let trunc = Truncation {
            max_index,
            ..self.trunc
        };
        Ok(self.restrict(trunc))
    }

    fn restrict(&self, trunc: Truncation) -> Series {
        Series {
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| trunc.admits(m))
                .cloned()
                .collect(),
        }
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Series {
        Series {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .cloned()
                .collect(),
        }
    }

    /// The degree-`d` homogeneous part.
    pub fn homogeneous(&self, d: u32) -> Series {
        self.filter(|m| m.degree() == d)
    }

    /// JSON object from canonical monomial strings to `"num/den"` strings, in
    /// canonical order.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (m, c) in &self.terms {
            map.insert(
                m.to_string(),
                Value::String(rational::to_fraction_string(c)),
            );
        }
        Value::Object(map)
    }

    pub fn from_json(trunc: Truncation, value: &Value) -> Result<Series> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Contract("series JSON must be an object".into()))?;
        let mut terms = Vec::with_capacity(obj.len());
        for (k, v) in obj {
            let m: Monomial = k.parse()?;
            let c = v
                .as_str()
                .ok_or_else(|| Error::Contract(format!("coefficient of {k} is not a string")))?;
            terms.push((m, rational::parse_rational(c)?));
        }
        Ok(Series::from_terms(trunc, terms))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Series[deg<={}, g<={}]({self})",
            self.trunc.degree, self.trunc.max_index
        )
    }
}
