//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty list. Serialized form is the coefficient
//! list as `"p/q"` strings, again lowest degree first.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rat::is_one)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| &Rat::from_int(i as i64) * c)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(coeffs)
    }

    pub fn pow(&self, exp: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; fails on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let d_deg = divisor.degree().ok_or(Error::DivisionByZero)?;
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return Ok((Poly::zero(), self.clone()));
        }
        let q_len = rem.len() - d_deg;
        let mut quo = vec![Rat::zero(); q_len];
        for k in (0..q_len).rev() {
            let lead = rem[k + d_deg].clone();
            if lead.is_zero() {
                continue;
            }
            let q = &lead / &d_lead;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&q * dc);
            }
            quo[k] = q;
        }
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    /// Exact division; `None` when the remainder is non-zero.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Normalizes the leading coefficient to 1; fails on zero.
    pub fn monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&lead.recip()?))
    }

    /// Monic greatest common divisor; fails only when both inputs are zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        let mut f = a.clone();
        let mut g = b.clone();
        if f.is_zero() && g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        while !g.is_zero() {
            // Renormalize each remainder to keep coefficients small.
            let (_, r) = f.div_rem(&g)?;
            f = g;
            g = if r.is_zero() { r } else { r.monic()? };
        }
        f.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(Poly::one());
        }
        let g = Poly::gcd(self, &self.derivative())?;
        let q = self.exact_div(&g)?.expect("gcd divides exactly");
        q.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => Poly::gcd(self, &self.derivative())
                .map(|g| g.degree() == Some(0))
                .unwrap_or(false),
        }
    }

    /// Clears denominators and integer content: returns `(P, s)` with `P`
    /// a primitive integer polynomial and `self = s * P` for a rational
    /// scalar `s > 0` (sign is kept in `P`'s leading coefficient).
    pub fn to_primitive_integer(&self) -> (Vec<BigInt>, Rat) {
        if self.is_zero() {
            return (Vec::new(), Rat::one());
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        let prim: Vec<BigInt> = ints.iter().map(|v| v / &content).collect();
        let scale = Rat::new(content, lcm).expect("lcm is non-zero");
        (prim, scale)
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> Rat {
        match self.leading() {
            None => Rat::one(),
            Some(lead) => {
                let mut max = Rat::zero();
                for c in &self.coeffs[..self.coeffs.len() - 1] {
                    let q = (c / lead).abs();
                    if q > max {
                        max = q;
                    }
                }
                &Rat::one() + &max
            }
        }
    }

    /// Parses `x^2-3x+1` style text: caret powers, integer or `p/q`
    /// coefficients, optional `*` between coefficient and `x`.
    pub fn parse(input: &str) -> Result<Poly> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if compact.is_empty() {
            return Err(Error::PolyParse(input.to_string()));
        }
        let bad = || Error::PolyParse(input.to_string());
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
                if ch == '-' {
                    cur.push('-');
                }
            } else {
                cur.push(ch);
            }
        }
        terms.push(cur);

        let mut acc = Poly::zero();
        for term in terms {
            if term.is_empty() || term == "-" {
                return Err(bad());
            }
            let (coeff_str, var_part) = match term.find('x') {
                Some(pos) => (&term[..pos], &term[pos + 1..]),
                None => (term.as_str(), ""),
            };
            let has_x = term.contains('x');
            let coeff = match coeff_str {
                "" => Rat::one(),
                "-" => -Rat::one(),
                s => s.parse::<Rat>().map_err(|_| bad())?,
            };
            let deg = if !has_x {
                0
            } else if var_part.is_empty() {
                1
            } else {
                let exp = var_part.strip_prefix('^').ok_or_else(bad)?;
                exp.parse::<usize>().map_err(|_| bad())?
            };
            acc = acc.add(&Poly::monomial(coeff, deg));
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if deg == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Poly::parse(s)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<Rat>::deserialize(deserializer)?;
        Ok(Poly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("x^2-3x+1").coeffs(), &[Rat::from_int(1), Rat::from_int(-3), Rat::from_int(1)]);
        assert_eq!(p("x^2-3x+1").to_string(), "x^2-3x+1");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(p("5/3x^2 - 1/2").to_string(), "5/3x^2-1/2");
        assert_eq!(p("x^2-3x+1"), p(&p("x^2-3x+1").to_string()));
        assert!(Poly::parse("x^-1").is_err());
        assert!(Poly::parse("").is_err());
        assert!(Poly::parse("2y").is_err());
    }

    #[test]
    fn gcd_common_factor() {
        let g = Poly::gcd(&p("x^2-1"), &p("x-1")).unwrap();
        assert_eq!(g, p("x-1"));
    }

    #[test]
    fn gcd_squarefree_discriminant() {
        // x^2-3x+1 has discriminant 5, so it is coprime to its derivative.
        let f = p("x^2-3x+1");
        let g = Poly::gcd(&f, &f.derivative()).unwrap();
        assert_eq!(g, Poly::one());
    }

    #[test]
    fn gcd_nested_factor() {
        let f = p("x^2-3x+1");
        let g = Poly::gcd(&f.pow(2), &f).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn gcd_of_two_zeros_is_an_error() {
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree_part_examples() {
        assert_eq!(p("x^2-2x+1").squarefree_part().unwrap(), p("x-1"));
        let f = p("x^2-3x+1");
        assert_eq!(f.pow(2).squarefree_part().unwrap(), f);
        assert_eq!(f.squarefree_part().unwrap(), f);
        assert_eq!(Poly::zero().squarefree_part(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn division() {
        let f = p("x^3-1");
        let (q, r) = f.div_rem(&p("x-1")).unwrap();
        assert_eq!(q, p("x^2+x+1"));
        assert!(r.is_zero());
        assert!(Poly::one().div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn primitive_integer_form() {
        let f = p("1/2x^2 - 3/4");
        let (ints, scale) = f.to_primitive_integer();
        assert_eq!(ints, vec![BigInt::from(-3), BigInt::from(0), BigInt::from(2)]);
        assert_eq!(scale, Rat::of(1, 4));
    }

    #[test]
    fn serde_round_trip() {
        let f = p("x^2-3/2x+1");
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"["1","-3/2","1"]"#);
        let back: Poly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
