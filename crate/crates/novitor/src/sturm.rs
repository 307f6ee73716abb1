//! Sturm sequences, real-root isolation, and exact sign decisions at a
//! pinned real embedding.
//!
//! Everything here is exact: isolating intervals have rational endpoints,
//! refinement is plain bisection, and a sign query on a field element either
//! detects the exact zero (residue divisible by the modulus factor at the
//! root) or terminates by interval arithmetic once the interval is tight
//! enough.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numfield::FieldElement;
use crate::poly::Poly;
use crate::rat::Rat;

/// An open interval `(lo, hi)` with rational endpoints. When produced by
/// [`isolate`] it contains exactly one real root of the referenced
/// polynomial, certified by a Sturm count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::EmptyInterval { lo, hi })
        }
    }

    pub fn of(lo: i64, hi: i64) -> Self {
        Interval::new(Rat::from_int(lo), Rat::from_int(hi)).expect("lo < hi")
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        &(&self.lo + &self.hi) * &Rat::of(1, 2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// Both endpoints strictly on one side of zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// The Sturm chain of `p`: remainders with flipped signs, each normalized
/// monic-up-to-sign to keep the coefficients small.
pub fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("non-zero divisor");
        if r.is_zero() {
            break;
        }
        let neg = r.neg();
        let lead = neg.leading().expect("non-zero").abs();
        chain.push(neg.scale(&lead.recip().expect("non-zero")));
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let s = p.eval(x).signum();
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of `p` in the open interval, requiring that
/// neither endpoint is a root.
pub fn count_roots(p: &Poly, iv: &Interval) -> Result<usize> {
    count_roots_in_chain(&sturm_chain(p), p, iv)
}

fn count_roots_in_chain(chain: &[Poly], p: &Poly, iv: &Interval) -> Result<usize> {
    if p.eval(&iv.lo).is_zero() {
        return Err(Error::EndpointIsRoot(iv.lo.clone()));
    }
    if p.eval(&iv.hi).is_zero() {
        return Err(Error::EndpointIsRoot(iv.hi.clone()));
    }
    Ok(sign_variations(chain, &iv.lo) - sign_variations(chain, &iv.hi))
}

/// A split point inside `(lo, hi)` that is not a root of `p`. Starts at the
/// midpoint and walks a deterministic sequence of dyadic offsets.
fn non_root_split(p: &Poly, iv: &Interval) -> Rat {
    let mid = iv.midpoint();
    if !p.eval(&mid).is_zero() {
        return mid;
    }
    let mut step = &iv.width() * &Rat::of(1, 4);
    loop {
        let cand = &mid + &step;
        if !p.eval(&cand).is_zero() {
            return cand;
        }
        step = &step * &Rat::of(1, 2);
    }
}

/// Disjoint isolating intervals covering exactly the real roots of a
/// square-free `p` inside the given range. Fails if an endpoint is a root.
pub fn isolate(p: &Poly, range: &Interval) -> Result<Vec<Interval>> {
    if p.degree().is_none() {
        return Err(Error::ZeroPolynomial);
    }
    let chain = sturm_chain(p);
    let mut out = Vec::new();
    let mut stack = vec![range.clone()];
    while let Some(iv) = stack.pop() {
        match count_roots_in_chain(&chain, p, &iv)? {
            0 => {}
            1 => out.push(iv),
            _ => {
                let mid = non_root_split(p, &iv);
                stack.push(Interval::new(iv.lo.clone(), mid.clone())?);
                stack.push(Interval::new(mid, iv.hi.clone())?);
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Isolates every real root of a square-free `p` using the Cauchy bound.
pub fn isolate_all(p: &Poly) -> Result<Vec<Interval>> {
    let bound = p.root_bound();
    isolate(p, &Interval::new(-&bound, bound)?)
}

/// Bisects an isolating interval of a square-free `p` until it is narrower
/// than `width`. If the root itself is rational the interval collapses
/// around it symmetrically.
pub fn refine(p: &Poly, iv: &Interval, width: &Rat) -> Result<Interval> {
    let slo = p.eval(&iv.lo).signum();
    let shi = p.eval(&iv.hi).signum();
    if slo == 0 {
        return Err(Error::EndpointIsRoot(iv.lo.clone()));
    }
    if shi == 0 {
        return Err(Error::EndpointIsRoot(iv.hi.clone()));
    }
    if slo == shi {
        // A simple root of a square-free polynomial changes sign.
        return Err(Error::NotIsolating);
    }
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    while &(&hi - &lo) >= width {
        let mid = &(&lo + &hi) * &Rat::of(1, 2);
        let smid = p.eval(&mid).signum();
        if smid == 0 {
            // The root is the rational midpoint itself; collapse around it.
            let shrink = &*width * &Rat::of(1, 4);
            return Interval::new(&mid - &shrink, &mid + &shrink);
        }
        if smid == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval::new(lo, hi)
}

/// Double-precision approximation of the root pinned by `iv`, refined until
/// the enclosure is narrower than 10^-12.
pub fn root_to_f64(p: &Poly, iv: &Interval) -> Result<f64> {
    let width = Rat::new(1.into(), num_bigint::BigInt::from(10u64.pow(12)))?;
    let tight = refine(p, iv, &width)?;
    Ok(tight.midpoint().to_f64())
}

/// Closed rational interval arithmetic, just enough for Horner evaluation.
#[derive(Clone)]
struct RatInterval {
    lo: Rat,
    hi: Rat,
}

impl RatInterval {
    fn point(x: &Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x.clone() }
    }

    fn add(&self, rhs: &RatInterval) -> Self {
        RatInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }

    fn mul(&self, rhs: &RatInterval) -> Self {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().expect("non-empty").clone();
        let hi = products.iter().max().expect("non-empty").clone();
        RatInterval { lo, hi }
    }

    fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

fn eval_on_interval(p: &Poly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(&Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&RatInterval::point(c));
    }
    acc
}

/// Sign of a field element evaluated at the real embedding pinned by `root`,
/// an isolating interval for a root of the element's modulus.
///
/// Rational elements ignore the pin. The decision is exact: a residue that
/// reduces to zero (or shares the pinned root through a modulus factor)
/// yields `Zero`; otherwise bisection terminates with a strict sign.
pub fn embed_sign(e: &FieldElement, root: &Interval) -> Result<Sign> {
    if let Some(r) = e.as_rational() {
        return Ok(match r.signum() {
            0 => Sign::Zero,
            s if s > 0 => Sign::Positive,
            _ => Sign::Negative,
        });
    }
    let field = e.field().expect("non-rational element");
    let modulus = field.modulus().clone();
    let residue = e.residue();

    if count_roots(&modulus, root)? != 1 {
        return Err(Error::NotIsolating);
    }

    // If the residue shares the pinned root with the modulus, the value is
    // exactly zero. For a certified irreducible modulus this cannot happen
    // for a non-zero residue.
    let g = Poly::gcd(&residue, &modulus)?;
    if g.degree() > Some(0) && count_roots(&g, root).unwrap_or(0) == 1 {
        return Ok(Sign::Zero);
    }

    let mut lo = root.lo().clone();
    let mut hi = root.hi().clone();
    let slo = modulus.eval(&lo).signum();
    loop {
        let iv = RatInterval { lo: lo.clone(), hi: hi.clone() };
        if let Some(sign) = eval_on_interval(&residue, &iv).sign() {
            return Ok(sign);
        }
        let mid = &(&lo + &hi) * &Rat::of(1, 2);
        let smid = modulus.eval(&mid).signum();
        if smid == 0 {
            // The pinned root is the rational midpoint itself.
            return Ok(match residue.eval(&mid).signum() {
                0 => Sign::Zero,
                s if s > 0 => Sign::Positive,
                _ => Sign::Negative,
            });
        }
        if smid == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
