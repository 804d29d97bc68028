//! Sparse integer polynomials in the fixed variables x, y, z, t.

use crate::matrix::{self, Int};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 't'];

/// Exponents of x, y, z, t.
pub type Exponents = [u32; 4];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CountPolynomial {
    terms: BTreeMap<Exponents, Int>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at byte {position}: {message}")]
pub struct PolyParseError {
    pub position: usize,
    pub message: String,
}

impl CountPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Int) -> Self {
        Self::monomial(c, [0; 4])
    }

    pub fn monomial(c: Int, exps: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// The variable with index 0..4 in the order x, y, z, t.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(1, e)
    }

    pub fn x() -> Self {
        Self::var(0)
    }

    pub fn y() -> Self {
        Self::var(1)
    }

    pub fn z() -> Self {
        Self::var(2)
    }

    pub fn t() -> Self {
        Self::var(3)
    }

    pub fn add_term(&mut self, exps: Exponents, c: Int) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0);
        *entry = matrix::add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&exps);
        }
    }

    pub fn coefficient(&self, exps: Exponents) -> Int {
        self.terms.get(&exps).copied().unwrap_or(0)
    }

    /// Coefficient of x^i y^j (z and t exponents zero).
    pub fn coeff_xy(&self, i: u32, j: u32) -> Int {
        self.coefficient([i, j, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Int)> {
        self.terms.iter()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(1), |acc, _| &acc * self)
    }

    /// Replaces each variable by the corresponding polynomial.
    pub fn substitute(&self, values: &[CountPolynomial; 4]) -> Self {
        let mut out = Self::zero();
        for (e, &c) in &self.terms {
            let mut term = Self::constant(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &values[i].pow(k);
                }
            }
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, values: [Int; 4]) -> Int {
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let term = e.iter().zip(values).fold(c, |t, (&k, v)| (0..k).fold(t, |t, _| matrix::mul(t, v)));
            matrix::add(acc, term)
        })
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Sum of coefficients.
    pub fn total(&self) -> Int {
        self.eval([1; 4])
    }

    /// Sum of absolute values of the coefficients.
    pub fn absolute_total(&self) -> Int {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

fn graded_lex(a: &Exponents, b: &Exponents) -> std::cmp::Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for CountPolynomial {
    /// Graded lexicographic order with x > y > z > t, e.g. `xz + 4y + 4z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| graded_lex(a, b));
        for (n, e) in keys.into_iter().enumerate() {
            let c = self.terms[e];
            let sign = if c < 0 { "-" } else { "+" };
            match (n, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mut body = String::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => body.push(VARIABLES[i]),
                    _ => body.push_str(&format!("{}^{}", VARIABLES[i], k)),
                }
            }
            let a = c.abs();
            if body.is_empty() {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{body}")?;
            } else {
                write!(f, "{a}{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CountPolynomial({self})")
    }
}

impl FromStr for CountPolynomial {
    type Err = PolyParseError;

    /// Accepts sums of terms such as `xz+4z+4y`, `x^2 - 3x + 1` or `2*x*y`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |position: usize, message: &str| PolyParseError { position, message: message.to_string() };
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err(0, "empty input"));
        }
        let mut out = CountPolynomial::zero();
        let mut i = 0;
        let number = |i: &mut usize| -> Option<Int> {
            let start = *i;
            while *i < chars.len() && chars[*i].1.is_ascii_digit() {
                *i += 1;
            }
            (start < *i).then(|| chars[start..*i].iter().map(|c| c.1).collect::<String>().parse().ok()).flatten()
        };
        while i < chars.len() {
            let pos = chars[i].0;
            let mut sign = 1;
            match chars[i].1 {
                '+' => i += 1,
                '-' => {
                    sign = -1;
                    i += 1
                }
                _ if i != 0 => return Err(err(pos, "expected '+' or '-'")),
                _ => {}
            }
            let coeff_start = i;
            let mut coeff = number(&mut i).unwrap_or(1);
            let has_coeff = i > coeff_start;
            let mut exps = [0u32; 4];
            let mut has_var = false;
            loop {
                if i < chars.len() && chars[i].1 == '*' && (has_coeff || has_var) {
                    i += 1;
                }
                let Some(&(p, c)) = chars.get(i) else { break };
                let Some(v) = VARIABLES.iter().position(|&x| x == c) else {
                    if c == '*' {
                        return Err(err(p, "dangling '*'"));
                    }
                    break;
                };
                i += 1;
                let mut k = 1;
                if chars.get(i).map(|c| c.1) == Some('^') {
                    i += 1;
                    let at = chars.get(i).map_or(s.len(), |c| c.0);
                    k = number(&mut i).ok_or_else(|| err(at, "expected exponent"))? as u32;
                }
                exps[v] += k;
                has_var = true;
            }
            if !has_coeff && !has_var {
                return Err(err(chars.get(i).map_or(s.len(), |c| c.0), "expected a term"));
            }
            coeff *= sign;
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}

impl Add for &CountPolynomial {
    type Output = CountPolynomial;
    fn add(self, other: &CountPolynomial) -> CountPolynomial {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &CountPolynomial {
    type Output = CountPolynomial;
    fn sub(self, other: &CountPolynomial) -> CountPolynomial {
        self + &(-other)
    }
}

impl Neg for &CountPolynomial {
    type Output = CountPolynomial;
    fn neg(self) -> CountPolynomial {
        CountPolynomial { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &CountPolynomial {
    type Output = CountPolynomial;
    fn mul(self, other: &CountPolynomial) -> CountPolynomial {
        let mut out = CountPolynomial::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(e, matrix::mul(ca, cb));
            }
        }
        out
    }
}

impl Add for CountPolynomial {
    type Output = CountPolynomial;
    fn add(self, other: CountPolynomial) -> CountPolynomial {
        &self + &other
    }
}

impl Mul for CountPolynomial {
    type Output = CountPolynomial;
    fn mul(self, other: CountPolynomial) -> CountPolynomial {
        &self * &other
    }
}

impl Sub for CountPolynomial {
    type Output = CountPolynomial;
    fn sub(self, other: CountPolynomial) -> CountPolynomial {
        &self - &other
    }
}
