//! Polynomials in `z` and `z̄` with exact rational coefficients.
//!
//! Every polynomial that shows up here has real coefficients, so complex
//! conjugation is just the exponent swap `z^i z̄^j -> z^j z̄^i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, format_rational, Rational};

/// Which complex coordinate a derivative acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    ZBar,
}

/// Sparse map `(i, j) -> c` standing for `Σ c z^i z̄^j`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c z^i z̄^j`
    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn zbar() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    /// `z z̄ = |z|^2`
    pub fn modulus_sq() -> Self {
        Self::monomial(1, 1, Rational::one())
    }

    /// `1 + κ z z̄`
    pub fn one_plus_kappa_modsq(kappa: &Rational) -> Self {
        let mut p = Self::one();
        p.add_term(1, 1, kappa.clone());
        p
    }

    /// Builds a polynomial from raw terms; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if var == Var::Z { i } else { j })
            .max()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, c * r)).collect(),
        }
    }

    /// Multiplies by the monomial `z^di z̄^dj`.
    pub fn shift(&self, di: u32, dj: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + di, j + dj), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in `z` or `z̄`.
    pub fn diff(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            match var {
                Var::Z if i > 0 => out.add_term(i - 1, j, c * Rational::from_integer(i.into())),
                Var::ZBar if j > 0 => out.add_term(i, j - 1, c * Rational::from_integer(j.into())),
                _ => {}
            }
        }
        out
    }

    /// Complex conjugation (coefficients are real): swaps the exponents.
    pub fn conj(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `(1 + κ z z̄)^k`.
    pub fn mul_h_pow(&self, kappa: &Rational, k: u32) -> Self {
        if k == 0 || kappa.is_zero() {
            return self.clone();
        }
        self * &Self::one_plus_kappa_modsq(kappa).pow(k)
    }

    /// Exact quotient by `1 + κ z z̄`, or `None` when it does not divide.
    ///
    /// Write `p = Σ_j p_j(z) z̄^j`. Since `h = 1 + (κ z) z̄` has unit constant
    /// term in `z̄`, dividing from the lowest `z̄` power up keeps every quotient
    /// coefficient a polynomial in `z`: `q_j = p_j - κ z q_{j-1}`. The division
    /// is exact iff the step past the top degree leaves nothing.
    pub fn div_h(&self, kappa: &Rational) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if kappa.is_zero() {
            return Some(self.clone());
        }
        let top = self.degree_in(Var::ZBar).unwrap_or(0) as usize;
        // column j: univariate polynomial in z stored as exponent -> coefficient
        let mut cols: Vec<BTreeMap<u32, Rational>> = vec![BTreeMap::new(); top + 1];
        for (&(i, j), c) in &self.terms {
            cols[j as usize].insert(i, c.clone());
        }
        let mut quotient: Vec<BTreeMap<u32, Rational>> = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let mut q = cols[j].clone();
            if j > 0 {
                for (&i, c) in &quotient[j - 1] {
                    let e = q.entry(i + 1).or_insert_with(Rational::zero);
                    *e -= kappa * c;
                    if e.is_zero() {
                        q.remove(&(i + 1));
                    }
                }
            }
            quotient.push(q);
        }
        if !quotient[top].is_empty() {
            return None;
        }
        let mut out = Self::zero();
        for (j, col) in quotient.into_iter().enumerate().take(top) {
            for (i, c) in col {
                out.add_term(i, j as u32, c);
            }
        }
        Some(out)
    }

    /// True when every term has `i - j == d` (angular momentum `d`).
    pub fn is_homogeneous_angular(&self, d: i64) -> bool {
        self.terms.keys().all(|&(i, j)| i as i64 - j as i64 == d)
    }

    /// Collapses a polynomial in `z z̄` alone to a univariate coefficient list in `u = z z̄`.
    pub fn as_radial(&self) -> Option<Vec<Rational>> {
        let mut out: Vec<Rational> = Vec::new();
        for (&(i, j), c) in &self.terms {
            if i != j {
                return None;
            }
            if out.len() <= i as usize {
                out.resize(i as usize + 1, Rational::zero());
            }
            out[i as usize] = c.clone();
        }
        Some(out)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        let (mut max_i, mut max_j) = (0, 0);
        for &(i, j) in self.terms.keys() {
            max_i = max_i.max(i);
            max_j = max_j.max(j);
        }
        let zp = powers(z, max_i);
        let zbp = powers(zb, max_j);
        self.terms
            .iter()
            .map(|(&(i, j), c)| zp[i as usize] * zbp[j as usize] * rational::to_f64(c))
            .sum()
    }

    /// Exact ratio `self / other` if the two are proportional by a nonzero rational.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (&k0, c0) = self.terms.iter().next()?;
        let r = c0 / other.terms.get(&k0)?;
        if *self == other.scale(&r) {
            Some(r)
        } else {
            None
        }
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rational::to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
}

fn powers(x: Complex64, n: u32) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(n as usize + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        v.push(acc);
        acc *= x;
    }
    v
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(n: u32) -> String {
    n.to_string()
        .bytes()
        .map(|b| SUPERSCRIPTS[(b - b'0') as usize])
        .collect()
}

fn factor(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}{}", superscript(e))),
    }
}

/// Human form, highest total degree first: `5 z z̄ − 1`, `z⁴`, `−3/2 z² z̄`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (idx, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "−")?;
                }
            } else {
                write!(f, " {} ", if neg { '−' } else { '+' })?;
            }
            let vars: Vec<String> = [factor("z", i), factor("z̄", j)].into_iter().flatten().collect();
            let mut parts = Vec::new();
            if !mag.is_one() || vars.is_empty() {
                parts.push(format_rational(&mag));
            }
            parts.extend(vars);
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: u32,
    j: u32,
    #[serde(with = "rational::serde_str")]
    c: Rational,
}

/// JSON array of `{"i", "j", "c": "p/q"}` sorted by `(i, j)`.
impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(i, j), c) in &self.terms {
            seq.serialize_element(&TermJson { i, j, c: c.clone() })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(d)?;
        Ok(BiPoly::from_terms(raw.into_iter().map(|t| ((t.i, t.j), t.c))))
    }
}
