//! From forest-counting series to Poincaré series and polynomials.
//!
//! The pipeline is `remove_bad`, then the monomial-wise substitution
//! `g0^s * prod_i g_i^{r_i} -> t^{s + sum r_i} * prod_i G_h(r_i)` with
//! `G_h(r) = (q^{rh} - q) / (q - 1) = q + q^2 + ... + q^{rh-1}`, and finally
//! the type-dependent normalization of each `t^n` coefficient.
//!
//! The substitution is linear in monomials, not a ring map:
//! `G_h(r) G_h(s) != G_h(r + s)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::rational::{factorial, integer};
use crate::algebra::{Monomial, Rational, Series};
use crate::error::{Error, Result};
use crate::forest_series::{self, SeriesBundle, MAX_DEGREE};

/// Root system type of the arrangement. Type C has the same subspace
/// lattice as type B and parses to [`ModelType::B`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelType {
    A,
    B,
    D,
}

impl ModelType {
    pub const ALL: [ModelType; 3] = [ModelType::A, ModelType::B, ModelType::D];

    pub fn letter(self) -> char {
        match self {
            ModelType::A => 'A',
            ModelType::B => 'B',
            ModelType::D => 'D',
        }
    }
}

impl fmt::Display for ModelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for ModelType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(ModelType::A),
            "B" | "C" => Ok(ModelType::B),
            "D" => Ok(ModelType::D),
            other => Err(Error::Domain(format!("unknown root system type {other:?}"))),
        }
    }
}

/// Polynomial in `q` with rational coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(integer).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, power: usize) -> Rational {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `q`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::from_coeffs(
            (0..n)
                .map(|i| self.coefficient(i) + other.coefficient(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, exp: u32) -> QPoly {
        (0..exp).fold(QPoly::one(), |acc, _| acc.mul(self))
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }
}

/// `c * q^k` rendered as `"41q^2"`, `"q/6"`, `"2389q^3/1260"`.
pub(crate) fn render_term(c: &Rational, var: &str, power: usize) -> String {
    let var_part = match power {
        0 => String::new(),
        1 => var.to_string(),
        k => format!("{var}^{k}"),
    };
    let num = c.numer().abs();
    let den = c.denom();
    let mut s = String::new();
    if var_part.is_empty() || !num.is_one() {
        s.push_str(&num.to_string());
    }
    s.push_str(&var_part);
    if !den.is_one() {
        s.push('/');
        s.push_str(&den.to_string());
    }
    s
}

/// Joins signed terms with `" + "` / `" - "`.
pub(crate) fn join_signed(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (k, (negative, body)) in terms.into_iter().enumerate() {
        match (k, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

/// Highest power first: `q^3 + 41q^2 + 41q + 1`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.is_negative(), render_term(c, "q", k)));
        f.write_str(&join_signed(terms))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Series in `t` whose coefficients are polynomials in `q`, truncated above
/// `t^{t_truncation}`.
#[derive(Clone, PartialEq, Eq)]
pub struct QTPoly {
    t_truncation: u32,
    by_t: Vec<QPoly>,
}

impl QTPoly {
    pub fn zero(t_truncation: u32) -> Self {
        QTPoly {
            t_truncation,
            by_t: vec![QPoly::zero(); t_truncation as usize + 1],
        }
    }

    pub fn t_truncation(&self) -> u32 {
        self.t_truncation
    }

    /// The `q`-polynomial multiplying `t^power`.
    pub fn t_coefficient(&self, power: u32) -> QPoly {
        self.by_t.get(power as usize).cloned().unwrap_or_default()
    }

    fn add_to(&mut self, power: u32, p: &QPoly) {
        if let Some(slot) = self.by_t.get_mut(power as usize) {
            *slot = slot.add(p);
        }
    }

    /// Nonzero coefficients keyed by `(t exponent, q exponent)`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.by_t.iter().enumerate().flat_map(|(t, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(q, c)| ((t as u32, q as u32), c))
        })
    }

    /// Truncated to a lower `t` degree.
    pub fn truncate(&self, t_truncation: u32) -> QTPoly {
        let keep = t_truncation.min(self.t_truncation);
        QTPoly {
            t_truncation: keep,
            by_t: self.by_t[..=keep as usize].to_vec(),
        }
    }
}

/// Ascending `t` powers: `t + t^2/2 + (q/6 + 1/6)t^3`.
impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, p) in self.by_t.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let t_part = match k {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            let nonzero: Vec<_> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if nonzero.len() == 1 {
                // a single term absorbs t into the numerator: "q^2 t^4/24"
                let (qk, c) = nonzero[0];
                let var = match (qk, t_part.is_empty()) {
                    (0, _) => t_part.clone(),
                    (_, true) => render_term(&Rational::one(), "q", qk),
                    (_, false) => format!("{}{}", render_term(&Rational::one(), "q", qk), t_part),
                };
                let body = if var.is_empty() {
                    render_term(c, "", 0)
                } else {
                    render_term(c, &var, 1)
                };
                parts.push((c.is_negative(), body));
            } else {
                parts.push((false, format!("({p}){t_part}")));
            }
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&join_signed(parts))
    }
}

impl fmt::Debug for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QTPoly[t<={}]({self})", self.t_truncation)
    }
}

/// `c * q^k` as LaTeX: `\frac{41}{120} q^{2}`.
fn latex_term(c: &Rational, power: usize) -> String {
    let num = c.numer().abs();
    let den = c.denom();
    let var = match power {
        0 => String::new(),
        1 => "q".to_string(),
        k => format!("q^{{{k}}}"),
    };
    let coeff = if den.is_one() {
        if num.is_one() && !var.is_empty() {
            String::new()
        } else {
            num.to_string()
        }
    } else {
        format!("\\frac{{{num}}}{{{den}}}")
    };
    match (coeff.is_empty(), var.is_empty()) {
        (true, _) => var,
        (false, true) => coeff,
        (false, false) => format!("{coeff} {var}"),
    }
}

impl QPoly {
    /// Highest power first, e.g. `q^{3} + 41 q^{2} + 41 q + 1`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        join_signed(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c.is_negative(), latex_term(c, k))),
        )
    }
}

impl QTPoly {
    /// An `align*` block with one power of `t` per line.
    pub fn to_latex(&self, name: &str) -> String {
        let mut lines = Vec::new();
        for (k, p) in self.by_t.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let t_part = match k {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{{{k}}}"),
            };
            let nonzero = p.coeffs().iter().filter(|c| !c.is_zero()).count();
            let body = if nonzero > 1 {
                format!("\\left({}\\right) {t_part}", p.to_latex())
            } else if t_part.is_empty() {
                p.to_latex()
            } else if p.to_latex() == "1" {
                t_part
            } else {
                format!("{} {t_part}", p.to_latex())
            };
            lines.push(body);
        }
        let mut out = String::from("\\begin{align*}\n");
        if lines.is_empty() {
            out.push_str(&format!("{name} &= 0\n"));
        }
        for (i, body) in lines.iter().enumerate() {
            let sep = if i + 1 < lines.len() { " \\\\" } else { "" };
            if i == 0 {
                out.push_str(&format!("{name} &= {body}{sep}\n"));
            } else if let Some(rest) = body.strip_prefix('-') {
                out.push_str(&format!("&- {rest}{sep}\n"));
            } else {
                out.push_str(&format!("&+ {body}{sep}\n"));
            }
        }
        out.push_str("\\end{align*}\n");
        out
    }
}

/// Drops every monomial containing some `g_j` while missing a `g_i` with
/// `1 <= i < j`.
pub fn remove_bad(s: &Series) -> Series {
    s.filter(|m| !m.is_bad())
}

/// `G_h(r) = (q^{rh} - q) / (q - 1) = q + q^2 + ... + q^{rh-1}`; zero when
/// `rh = 1`.
pub fn level_factor(r: u32, h: u32) -> QPoly {
    let top = (r * h) as usize;
    let mut coeffs = vec![Rational::zero(); top.max(1)];
    for c in coeffs.iter_mut().take(top).skip(1) {
        *c = Rational::one();
    }
    QPoly::from_coeffs(coeffs)
}

fn check_h(h: u32) -> Result<()> {
    if h < 1 {
        return Err(Error::Contract(
            "the induced-arrangement parameter h must be >= 1".into(),
        ));
    }
    Ok(())
}

/// Monomial-wise substitution `g0 -> t`, `g_i^r -> G_h(r) t^r`. The input
/// is expected to have had [`remove_bad`] applied.
pub fn substitute(s: &Series, h: u32) -> Result<QTPoly> {
    check_h(h)?;
    let mut out = QTPoly::zero(s.truncation_degree());
    let mut cache: HashMap<Vec<u32>, QPoly> = HashMap::new();
    for (m, c) in s.terms() {
        let exps: Vec<u32> = m.iter().filter(|&(i, _)| i >= 1).map(|(_, e)| e).collect();
        let image = cache
            .entry(exps)
            .or_insert_with_key(|exps| {
                exps.iter()
                    .fold(QPoly::one(), |acc, &r| acc.mul(&level_factor(r, h)))
            })
            .scale(c);
        out.add_to(m.degree(), &image);
    }
    Ok(out)
}

/// The forest series whose substitution yields the Poincaré series of
/// `model`.
fn source_series(model: ModelType, degree: u32) -> Result<Series> {
    match model {
        ModelType::A => forest_series::compute_forest_series_a(degree),
        ModelType::B => Ok(SeriesBundle::compute(degree)?.series_b),
        ModelType::D => Ok(SeriesBundle::compute(degree)?.series_d),
    }
}

/// Poincaré series of `model` (induced by `C^h`) through `t^degree`.
pub fn phi(model: ModelType, h: u32, degree: u32) -> Result<QTPoly> {
    check_h(h)?;
    if degree < 1 {
        return Err(Error::Domain(
            "the Poincaré series needs degree >= 1".into(),
        ));
    }
    substitute(&remove_bad(&source_series(model, degree)?), h)
}

/// Poincaré series computed from an already available bundle.
pub fn phi_from_bundle(bundle: &SeriesBundle, model: ModelType, h: u32) -> Result<QTPoly> {
    let s = match model {
        ModelType::A => &bundle.forest_a,
        ModelType::B => &bundle.series_b,
        ModelType::D => &bundle.series_d,
    };
    substitute(&remove_bad(s), h)
}

/// Flag attached to values outside the range where the closed-form series
/// normalization is conventionally stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    /// Type D with n = 2: the root system degenerates to `A1 x A1`. The
    /// computed polynomial is `1 + q`, including the degree-0 class; the
    /// usual leading term `q t^2/4` of the type D series leaves it out.
    DegenerateD2,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::DegenerateD2 => f.write_str(
                "D_2 is degenerate (A_1 x A_1): computed 1 + q including H^0; \
                 the customary t^2 term q t^2/4 of the type D series omits the constant class",
            ),
        }
    }
}

/// A normalized Poincaré polynomial together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial {
    pub model: ModelType,
    pub rank: u32,
    pub h: u32,
    pub polynomial: QPoly,
    pub flag: Option<Flag>,
}

/// The power of `t` carrying the rank-`rank` polynomial, and the factor that
/// normalizes its coefficient.
pub fn normalization(model: ModelType, rank: u32) -> Result<(u32, BigInt)> {
    let too_big = |t: u32| {
        Err(Error::Domain(format!(
            "type {model} rank {rank} needs t^{t}, beyond the supported degree {MAX_DEGREE}"
        )))
    };
    match model {
        ModelType::A => {
            if rank < 1 {
                return Err(Error::Domain("type A needs rank >= 1".into()));
            }
            let t = rank + 1;
            if t > MAX_DEGREE {
                return too_big(t);
            }
            Ok((t, factorial(t)))
        }
        ModelType::B => {
            if rank < 1 {
                return Err(Error::Domain("type B needs n >= 1".into()));
            }
            if rank > MAX_DEGREE {
                return too_big(rank);
            }
            Ok((rank, factorial(rank) << rank as usize))
        }
        ModelType::D => {
            if rank < 2 {
                return Err(Error::Domain(
                    "type D needs n >= 2 (n = 2 is flagged)".into(),
                ));
            }
            if rank > MAX_DEGREE {
                return too_big(rank);
            }
            Ok((rank, factorial(rank) << (rank - 1) as usize))
        }
    }
}

fn normalize(model: ModelType, rank: u32, h: u32, series: &QTPoly) -> Result<PoincarePolynomial> {
    let (t, factor) = normalization(model, rank)?;
    let polynomial = series
        .t_coefficient(t)
        .scale(&Rational::from_integer(factor));
    if polynomial.integer_coefficients().is_none() {
        return Err(Error::Consistency(format!(
            "type {model} rank {rank}: normalized coefficient {polynomial} is not integral"
        )));
    }
    let flag = (model == ModelType::D && rank == 2).then_some(Flag::DegenerateD2);
    Ok(PoincarePolynomial {
        model,
        rank,
        h,
        polynomial,
        flag,
    })
}

/// Poincaré polynomial of the maximal model of `A_rank`, `B_rank` or
/// `D_rank`, induced by `C^h`.
pub fn poincare_polynomial(model: ModelType, rank: u32, h: u32) -> Result<PoincarePolynomial> {
    let (t, _) = normalization(model, rank)?;
    normalize(model, rank, h, &phi(model, h, t)?)
}

/// All polynomials for ranks in `ranks`, sharing one series computation.
pub fn poincare_polynomials(
    model: ModelType,
    ranks: impl IntoIterator<Item = u32>,
    h: u32,
) -> Result<Vec<PoincarePolynomial>> {
    let ranks: Vec<u32> = ranks.into_iter().collect();
    let mut top = 1;
    for &r in &ranks {
        top = top.max(normalization(model, r)?.0);
    }
    let series = phi(model, h, top)?;
    ranks
        .into_iter()
        .map(|r| normalize(model, r, h, &series))
        .collect()
}

/// Exponent of `t` of a monomial after substitution: its total degree.
pub fn t_degree(m: &Monomial) -> u32 {
    m.degree()
}

/// Convenience for reports: coefficients of a polynomial with integral
/// coefficients, as machine integers when they fit.
pub fn small_coefficients(p: &QPoly) -> Option<Vec<i64>> {
    p.integer_coefficients()?
        .iter()
        .map(|c| c.to_i64())
        .collect()
}
