//! Number fields `Q[x]/(m)` with dynamic-evaluation splitting.
//!
//! A modulus survives an explicit factorization attempt (rational-root test,
//! fast degree-2/3 criteria, Kronecker interpolation up to degree 6) before a
//! field is handed out. Arithmetic additionally guards itself: inverting an
//! element whose residue shares a factor with the modulus exposes the zero
//! divisor and reports the discovered factors instead of a wrong answer, so
//! even a field built with [`NumberField::new_unchecked`] can never produce
//! incorrect results silently.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;

/// Non-trivial monic factors discovered for a modulus that is not irreducible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitReport {
    pub factors: Vec<Poly>,
}

impl fmt::Display for SplitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.factors {
            write!(f, "({p})")?;
        }
        Ok(())
    }
}

/// The ground field `Q[x]/(modulus)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberField {
    modulus: Poly,
    certified: bool,
}

/// Outcome of [`field_make`]: either a certified field or the discovered split.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldMake {
    Field(Arc<NumberField>),
    Split(SplitReport),
}

fn validate_modulus(modulus: &Poly) -> Result<()> {
    match modulus.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantModulus),
        Some(_) if !modulus.is_monic() => Err(Error::NonMonicModulus),
        Some(_) if !modulus.is_squarefree() => Err(Error::NonSquarefreeModulus),
        Some(_) => Ok(()),
    }
}

/// Builds `Q[x]/(modulus)` when the modulus is irreducible; otherwise returns
/// the monic factors found by the certification pass.
pub fn field_make(modulus: Poly) -> Result<FieldMake> {
    validate_modulus(&modulus)?;
    let factors = factor_squarefree(&modulus)?;
    if factors.len() == 1 {
        Ok(FieldMake::Field(Arc::new(NumberField {
            modulus,
            certified: true,
        })))
    } else {
        Ok(FieldMake::Split(SplitReport { factors }))
    }
}

impl NumberField {
    /// Wraps a monic square-free modulus without certifying irreducibility.
    /// Arithmetic runs in dynamic-evaluation mode: a failed inversion raises
    /// [`Error::FieldSplit`] with the gcd-based factors.
    pub fn new_unchecked(modulus: Poly) -> Result<Arc<NumberField>> {
        validate_modulus(&modulus)?;
        Ok(Arc::new(NumberField {
            modulus,
            certified: false,
        }))
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("modulus is non-constant")
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// The residue class of `residue` in this field.
    pub fn element(self: &Arc<Self>, residue: Poly) -> FieldElement {
        let (_, rem) = residue.div_rem(&self.modulus).expect("modulus is non-zero");
        FieldElement::normalized(self.clone(), rem)
    }

    /// The class of `x`, i.e. the root the field adjoins.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.element(Poly::x())
    }
}

/// An element of `Q` or of a number field `Q(theta)`.
///
/// Plain rationals embed canonically into every number field, so they are
/// kept field-free; mixed arithmetic lifts them on the fly. Elements of two
/// different proper extensions never meet in well-formed inputs, and doing so
/// is a programming error (the public engines validate fields up front).
#[derive(Clone)]
pub struct FieldElement {
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Rational(Rat),
    Algebraic { field: Arc<NumberField>, residue: Poly },
}

impl FieldElement {
    fn normalized(field: Arc<NumberField>, residue: Poly) -> Self {
        if residue.degree().map_or(true, |d| d == 0) {
            FieldElement {
                repr: Repr::Rational(residue.coeff(0)),
            }
        } else {
            FieldElement {
                repr: Repr::Algebraic { field, residue },
            }
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        FieldElement {
            repr: Repr::Rational(r),
        }
    }

    pub fn zero() -> Self {
        FieldElement::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        FieldElement::from_rat(Rat::one())
    }

    /// The residue polynomial (a constant for embedded rationals).
    pub fn residue(&self) -> Poly {
        match &self.repr {
            Repr::Rational(r) => Poly::constant(r.clone()),
            Repr::Algebraic { residue, .. } => residue.clone(),
        }
    }

    /// The proper extension this element lives in, if any.
    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match &self.repr {
            Repr::Rational(_) => None,
            Repr::Algebraic { field, .. } => Some(field),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match &self.repr {
            Repr::Rational(r) => Some(r),
            Repr::Algebraic { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_zero(),
            Repr::Algebraic { .. } => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Rational(r) if r.is_one())
    }

    fn join(a: &FieldElement, b: &FieldElement) -> Option<Arc<NumberField>> {
        match (&a.repr, &b.repr) {
            (Repr::Rational(_), Repr::Rational(_)) => None,
            (Repr::Algebraic { field, .. }, Repr::Rational(_)) => Some(field.clone()),
            (Repr::Rational(_), Repr::Algebraic { field, .. }) => Some(field.clone()),
            (Repr::Algebraic { field: f, .. }, Repr::Algebraic { field: g, .. }) => {
                assert_eq!(
                    f.modulus(),
                    g.modulus(),
                    "arithmetic between distinct number fields"
                );
                Some(f.clone())
            }
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        match FieldElement::join(self, rhs) {
            None => FieldElement::from_rat(&self.residue().coeff(0) + &rhs.residue().coeff(0)),
            Some(field) => field.element(self.residue().add(&rhs.residue())),
        }
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        match FieldElement::join(self, rhs) {
            None => FieldElement::from_rat(&self.residue().coeff(0) - &rhs.residue().coeff(0)),
            Some(field) => field.element(self.residue().sub(&rhs.residue())),
        }
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        match FieldElement::join(self, rhs) {
            None => FieldElement::from_rat(&self.residue().coeff(0) * &rhs.residue().coeff(0)),
            Some(field) => field.element(self.residue().mul(&rhs.residue())),
        }
    }

    pub fn neg(&self) -> FieldElement {
        match &self.repr {
            Repr::Rational(r) => FieldElement::from_rat(-r),
            Repr::Algebraic { field, residue } => FieldElement {
                repr: Repr::Algebraic {
                    field: field.clone(),
                    residue: residue.neg(),
                },
            },
        }
    }

    /// Multiplicative inverse. In dynamic-evaluation mode a non-trivial gcd
    /// with the modulus surfaces as [`Error::FieldSplit`].
    pub fn inv(&self) -> Result<FieldElement> {
        match &self.repr {
            Repr::Rational(r) => Ok(FieldElement::from_rat(r.recip()?)),
            Repr::Algebraic { field, residue } => {
                let (g, s) = extended_gcd(residue, field.modulus())?;
                if g.degree() == Some(0) {
                    let scale = g.coeff(0).recip()?;
                    Ok(field.element(s.scale(&scale)))
                } else {
                    let g = g.monic()?;
                    let cofactor = field
                        .modulus()
                        .exact_div(&g)?
                        .expect("gcd divides the modulus")
                        .monic()?;
                    let mut factors = vec![g, cofactor];
                    sort_polys(&mut factors);
                    Err(Error::FieldSplit(SplitReport { factors }))
                }
            }
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (
                Repr::Algebraic { field: f, residue: a },
                Repr::Algebraic { field: g, residue: b },
            ) => f.modulus() == g.modulus() && a == b,
            _ => false,
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) => write!(f, "{r}"),
            Repr::Algebraic { field, residue } => {
                write!(f, "{residue} mod {}", field.modulus())
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) => write!(f, "{r}"),
            Repr::Algebraic { residue, .. } => write!(f, "{residue}"),
        }
    }
}

/// Returns `(g, s)` with `s*a + t*b = g` for some `t`, i.e. `s*a = g mod b`.
fn extended_gcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = Poly::one();
    let mut s1 = Poly::zero();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    Ok((r0, s0))
}

fn sort_polys(polys: &mut [Poly]) {
    polys.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
}

/// Monic irreducible factors of a square-free polynomial over `Q`.
///
/// Degrees up to 6 are supported; factors of degree up to 3 are searched by
/// Kronecker interpolation, which together with the rational-root pass
/// certifies irreducibility of an input that survives.
pub fn factor_squarefree(p: &Poly) -> Result<Vec<Poly>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg > 6 {
        return Err(Error::UnsupportedFactorDegree(deg));
    }

    let mut factors = Vec::new();
    let mut rest = p.monic()?;

    // Linear factors via the rational-root test.
    for root in rational_roots(&rest)? {
        let lin = Poly::new(vec![-&root, Rat::one()]);
        rest = rest.exact_div(&lin)?.expect("root divides");
        factors.push(lin);
    }

    factors.extend(factor_rootless(&rest)?);
    sort_polys(&mut factors);
    Ok(factors)
}

/// Factors a monic polynomial that has no rational roots.
fn factor_rootless(p: &Poly) -> Result<Vec<Poly>> {
    let deg = match p.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    // Degrees 2 and 3 are irreducible once rational roots are excluded.
    if deg <= 3 {
        return Ok(vec![p.clone()]);
    }
    match kronecker_find_factor(p)? {
        None => Ok(vec![p.clone()]),
        Some(f) => {
            let g = p.exact_div(&f)?.expect("factor divides").monic()?;
            let mut out = factor_rootless(&f)?;
            out.extend(factor_rootless(&g)?);
            Ok(out)
        }
    }
}

fn rational_roots(p: &Poly) -> Result<Vec<Rat>> {
    let (ints, _) = p.to_primitive_integer();
    if ints.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let mut poly = Poly::new(ints.iter().map(|c| Rat::from_bigint(c.clone())).collect());
    // Strip x factors first so the constant term is non-zero.
    while poly.coeff(0).is_zero() && poly.degree() > Some(0) {
        roots.push(Rat::zero());
        poly = poly.exact_div(&Poly::x())?.expect("x divides");
    }
    if poly.degree() == Some(0) {
        return Ok(roots);
    }
    let (ints, _) = poly.to_primitive_integer();
    let a0 = ints.first().cloned().unwrap_or_else(BigInt::zero);
    let an = ints.last().cloned().unwrap_or_else(BigInt::one);
    for num in divisors(&a0)? {
        for den in divisors(&an)? {
            for sign in [1i64, -1] {
                let cand = Rat::new(&num * BigInt::from(sign), den.clone())?;
                if poly.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand.clone());
                }
            }
        }
    }
    // A square-free polynomial has simple roots, so dividing each out once
    // is enough; we only report the set here.
    roots.sort();
    Ok(roots)
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of |n| by trial division; bails out on inputs too large
/// for the bundled factorizer.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Ok(vec![BigInt::one()]);
    }
    let mut remaining = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    while &d * &d <= remaining {
        if d > BigInt::from(TRIAL_LIMIT) {
            return Err(Error::FactorizationOverflow);
        }
        let mut mult = 0;
        while (&remaining % &d).is_zero() {
            remaining /= &d;
            mult += 1;
        }
        if mult > 0 {
            primes.push((d.clone(), mult));
        }
        d += 1;
    }
    if remaining > BigInt::one() {
        primes.push((remaining, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, mult) in primes {
        let mut next = Vec::with_capacity(divs.len() * (mult as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..mult {
                acc = &acc * &p;
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

const COMBINATION_LIMIT: usize = 4_000_000;

/// Kronecker search for a monic rational factor of degree `2..=deg/2`.
/// Returns `None` when the polynomial is irreducible.
fn kronecker_find_factor(p: &Poly) -> Result<Option<Poly>> {
    let deg = p.degree().expect("non-zero");
    let (ints, _) = p.to_primitive_integer();
    let lead = ints.last().expect("non-zero").clone();
    let sample_points: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

    for d in 2..=deg / 2 {
        let points = &sample_points[..=d];
        let values: Vec<BigInt> = points
            .iter()
            .map(|&a| {
                let mut acc = BigInt::zero();
                for c in ints.iter().rev() {
                    acc = acc * BigInt::from(a) + c;
                }
                acc
            })
            .collect();
        // No rational roots remain, so no sample value is zero.
        debug_assert!(values.iter().all(|v| !v.is_zero()));

        let divisor_lists: Vec<Vec<BigInt>> =
            values.iter().map(divisors).collect::<Result<_>>()?;
        let mut combos: usize = 1;
        for (i, list) in divisor_lists.iter().enumerate() {
            // The first value's sign is fixed: f and -f divide together.
            let signs = if i == 0 { 1 } else { 2 };
            combos = combos.saturating_mul(list.len() * signs);
        }
        if combos > COMBINATION_LIMIT {
            return Err(Error::FactorizationOverflow);
        }

        let mut choice = vec![0usize; d + 1];
        let sizes: Vec<usize> = divisor_lists
            .iter()
            .enumerate()
            .map(|(i, l)| l.len() * if i == 0 { 1 } else { 2 })
            .collect();
        'combo: loop {
            let sample: Vec<Rat> = choice
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let list = &divisor_lists[i];
                    let v = &list[c % list.len()];
                    let signed = if c >= list.len() { -v } else { v.clone() };
                    Rat::from_bigint(signed)
                })
                .collect();
            if let Some(cand) = lagrange(points, &sample) {
                if cand.degree() == Some(d) && integer_leading_divides(&cand, &lead) {
                    if let Some(()) = divides(p, &cand) {
                        return Ok(Some(cand.monic()?));
                    }
                }
            }
            // Advance the mixed-radix counter.
            for slot in 0..=d {
                choice[slot] += 1;
                if choice[slot] < sizes[slot] {
                    continue 'combo;
                }
                choice[slot] = 0;
            }
            break;
        }
    }
    Ok(None)
}

fn lagrange(points: &[i64], values: &[Rat]) -> Option<Poly> {
    let mut acc = Poly::zero();
    for (i, &xi) in points.iter().enumerate() {
        let mut num = Poly::one();
        let mut den = Rat::one();
        for (j, &xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            num = num.mul(&Poly::new(vec![Rat::from_int(-xj), Rat::one()]));
            den = &den * &Rat::from_int(xi - xj);
        }
        acc = acc.add(&num.scale(&(&values[i] / &den)));
    }
    Some(acc)
}

fn integer_leading_divides(cand: &Poly, lead: &BigInt) -> bool {
    // An integer factor candidate must have integer coefficients and a
    // leading coefficient dividing the leading coefficient of the input.
    if !cand.coeffs().iter().all(Rat::is_integer) {
        return false;
    }
    let cl = cand.leading().expect("non-zero").numer().clone();
    !cl.is_zero() && (lead % cl).is_zero()
}

fn divides(p: &Poly, cand: &Poly) -> Option<()> {
    match p.exact_div(cand) {
        Ok(Some(_)) => Some(()),
        _ => None,
    }
}
