//! Certified complex embeddings: Aberth iteration in `f64`, Newton refinement in dyadic
//! rationals, and disk certification by the bound `|z − α| ≤ n·|f(z)|/|f'(z)|`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::algebra::{rational, PolyQ, Rational};
use crate::error::{Error, Result};

use super::element::NfElem;
use super::field::FieldRef;

pub const BASE_PRECISION: u32 = 64;

/// A chosen embedding `σ: k → ℂ` by index into the canonically ordered roots of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingHandle {
    field: FieldRef,
    root_index: usize,
    precision_bits: u32,
}

/// Axis-aligned centre plus a radius bounding the distance to the true value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: Rational,
    pub im: Rational,
    pub radius: Rational,
}

#[derive(Clone)]
struct ComplexQ {
    re: Rational,
    im: Rational,
}

impl ComplexQ {
    fn from_f64(z: Complex64) -> Self {
        ComplexQ {
            re: Rational::from_float(z.re).unwrap_or_else(Rational::zero),
            im: Rational::from_float(z.im).unwrap_or_else(Rational::zero),
        }
    }

    fn real(q: Rational) -> Self {
        ComplexQ {
            re: q,
            im: Rational::zero(),
        }
    }

    fn add(&self, o: &ComplexQ) -> ComplexQ {
        ComplexQ {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &ComplexQ) -> ComplexQ {
        ComplexQ {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &ComplexQ) -> ComplexQ {
        ComplexQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn div(&self, o: &ComplexQ) -> Option<ComplexQ> {
        let n = o.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let conj = ComplexQ {
            re: o.re.clone(),
            im: -o.im.clone(),
        };
        let num = self.mul(&conj);
        Some(ComplexQ {
            re: num.re / &n,
            im: num.im / n,
        })
    }

    fn round(&self, bits: u32) -> ComplexQ {
        ComplexQ {
            re: rational::round_dyadic(&self.re, bits),
            im: rational::round_dyadic(&self.im, bits),
        }
    }
}

fn eval_q(f: &PolyQ, z: &ComplexQ) -> ComplexQ {
    let mut acc = ComplexQ::real(Rational::zero());
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z).add(&ComplexQ::real(c.clone()));
    }
    acc
}

/// Upper bound for √q with the same denominator as `q`.
fn sqrt_upper(q: &Rational) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let n = q.numer() * q.denom();
    let r = n.sqrt() + BigInt::one();
    Rational::new(r, q.denom().clone())
}

/// Lower bound for √q with the same denominator as `q`.
fn sqrt_lower(q: &Rational) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let n = q.numer() * q.denom();
    Rational::new(n.sqrt(), q.denom().clone())
}

fn aberth(f: &PolyQ) -> Vec<Complex64> {
    let n = f.degree().unwrap();
    let lead = rational::to_f64(f.lead().unwrap());
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| rational::to_f64(c) / lead)
        .collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let c0 = coeffs[0].abs();
    let radius = if c0 > 0.0 {
        c0.powf(1.0 / n as f64).max(1e-3)
    } else {
        1.0
    };
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(zs[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += Complex64::new(1.0, 0.0) / (zs[k] - zs[j]);
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                zs[k] -= step;
                max_step = max_step.max(step.norm() / zs[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    zs
}

/// Refines `z` by Newton steps at increasing dyadic precision up to `bits`.
fn newton_refine(f: &PolyQ, df: &PolyQ, z: ComplexQ, bits: u32) -> ComplexQ {
    let mut z = z;
    let mut prec = 48u32;
    loop {
        prec = (prec * 2).min(bits + 8);
        for _ in 0..2 {
            let fz = eval_q(f, &z);
            let dfz = eval_q(df, &z);
            if let Some(step) = fz.div(&dfz) {
                z = z.sub(&step).round(prec);
            }
        }
        if prec >= bits + 8 {
            return z;
        }
    }
}

/// Certified isolating boxes for every root of `f` (squarefree), each refined from an
/// ordered base approximation. Returns `None` when certification fails at this precision.
fn certify(f: &PolyQ, df: &PolyQ, centres: Vec<ComplexQ>, bits: u32) -> Option<Vec<ComplexBox>> {
    let n = Rational::from_integer(f.degree().unwrap().into());
    let mut boxes = Vec::with_capacity(centres.len());
    for z in centres {
        let z = newton_refine(f, df, z, bits);
        let fz = eval_q(f, &z).norm_sqr();
        let dfz = eval_q(df, &z).norm_sqr();
        if dfz.is_zero() {
            return None;
        }
        let radius = &n * sqrt_upper(&(fz / dfz));
        boxes.push(ComplexBox {
            re: z.re,
            im: z.im,
            radius,
        });
    }
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            let dre = &boxes[i].re - &boxes[j].re;
            let dim = &boxes[i].im - &boxes[j].im;
            let dist2 = &dre * &dre + &dim * &dim;
            let rsum = &boxes[i].radius + &boxes[j].radius;
            if dist2 <= &rsum * &rsum {
                return None;
            }
        }
    }
    Some(boxes)
}

/// Roots of `f` in canonical order: ascending real part, with real parts whose boxes overlap
/// treated as tied and ordered by imaginary part.
pub fn isolate_roots(f: &PolyQ, bits: u32, cap: u32) -> Result<Vec<ComplexBox>> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ZeroPolynomial);
    }
    if bits > cap {
        return Err(Error::Indeterminate);
    }
    let df = f.derivative();
    if f.degree() == Some(1) {
        let c = -(f.coeff(0) / f.coeff(1));
        return Ok(vec![ComplexBox {
            re: c,
            im: Rational::zero(),
            radius: Rational::zero(),
        }]);
    }
    let approx: Vec<ComplexQ> = aberth(f).into_iter().map(ComplexQ::from_f64).collect();
    let mut base_bits = BASE_PRECISION;
    let base = loop {
        if let Some(b) = certify(f, &df, approx.clone(), base_bits) {
            break b;
        }
        base_bits *= 2;
        if base_bits > cap {
            return Err(Error::Indeterminate);
        }
    };
    let order = canonical_order(&base);
    let ordered: Vec<ComplexQ> = order
        .iter()
        .map(|&i| ComplexQ {
            re: base[i].re.clone(),
            im: base[i].im.clone(),
        })
        .collect();
    if bits <= base_bits {
        return Ok(order.into_iter().map(|i| base[i].clone()).collect());
    }
    let mut prec = bits;
    loop {
        if let Some(b) = certify(f, &df, ordered.clone(), prec) {
            return Ok(b);
        }
        prec *= 2;
        if prec > cap {
            return Err(Error::Indeterminate);
        }
    }
}

fn canonical_order(boxes: &[ComplexBox]) -> Vec<usize> {
    let mut by_re: Vec<usize> = (0..boxes.len()).collect();
    by_re.sort_by(|&a, &b| {
        boxes[a]
            .re
            .cmp(&boxes[b].re)
            .then(boxes[a].im.cmp(&boxes[b].im))
    });
    let mut cluster = vec![0usize; boxes.len()];
    let mut current = 0;
    for w in 1..by_re.len() {
        let (a, b) = (&boxes[by_re[w - 1]], &boxes[by_re[w]]);
        if &b.re - &a.re > &a.radius + &b.radius {
            current += 1;
        }
        cluster[by_re[w]] = current;
    }
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by(|&a, &b| {
        cluster[a]
            .cmp(&cluster[b])
            .then(boxes[a].im.cmp(&boxes[b].im))
    });
    order
}

impl EmbeddingHandle {
    pub fn new(field: &FieldRef, root_index: usize, precision_bits: u32) -> Result<Self> {
        if root_index >= field.degree() {
            return Err(Error::InvalidInput(format!(
                "root index {root_index} out of range for degree {}",
                field.degree()
            )));
        }
        Ok(EmbeddingHandle {
            field: field.clone(),
            root_index,
            precision_bits,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn refine(&self) -> EmbeddingHandle {
        EmbeddingHandle {
            precision_bits: self.precision_bits * 2,
            ..self.clone()
        }
    }

    pub fn with_field(&self, field: &FieldRef, root_index: usize) -> EmbeddingHandle {
        EmbeddingHandle {
            field: field.clone(),
            root_index,
            precision_bits: self.precision_bits,
        }
    }

    /// Image of `x` under this embedding, with a rigorous radius.
    pub fn eval(&self, x: &NfElem, cap: u32) -> Result<ComplexBox> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let root = complex_embedding(self, cap)?;
        eval_at_box(x, &root, self.precision_bits)
    }
}

/// Box around the image of the generator under `h`.
pub fn complex_embedding(h: &EmbeddingHandle, cap: u32) -> Result<ComplexBox> {
    let roots = isolate_roots(h.field.min_poly(), h.precision_bits, cap)?;
    Ok(roots[h.root_index].clone())
}

fn eval_at_box(x: &NfElem, root: &ComplexBox, bits: u32) -> Result<ComplexBox> {
    let z = ComplexQ {
        re: root.re.clone(),
        im: root.im.clone(),
    };
    let centre = eval_q(&x.to_poly(), &z);
    if root.radius.is_zero() {
        return Ok(ComplexBox {
            re: centre.re,
            im: centre.im,
            radius: Rational::zero(),
        });
    }
    let zabs = sqrt_upper(&z.norm_sqr());
    let outer = &zabs + &root.radius;
    let mut err = Rational::zero();
    let mut zp = Rational::one();
    let mut op = Rational::one();
    for c in x.coeffs().iter().skip(1) {
        zp = &zp * &zabs;
        op = &op * &outer;
        err += c.abs() * (&op - &zp);
    }
    let rounded = centre.round(bits);
    let slack = Rational::new(BigInt::from(2), BigInt::one() << bits);
    Ok(ComplexBox {
        re: rounded.re,
        im: rounded.im,
        radius: err + slack,
    })
}

/// Decides `|σ(x)|` against 1, refining up to `cap` bits.
pub fn compare_modulus_to_one(x: &NfElem, h: &EmbeddingHandle, cap: u32) -> Result<Ordering> {
    let mut handle = h.clone();
    loop {
        let b = handle.eval(x, cap)?;
        let m2 = &b.re * &b.re + &b.im * &b.im;
        let one = Rational::one();
        let lower = sqrt_lower(&m2) - &b.radius;
        let upper = sqrt_upper(&m2) + &b.radius;
        if lower > one {
            return Ok(Ordering::Greater);
        }
        if upper < one {
            return Ok(Ordering::Less);
        }
        if b.radius.is_zero() && m2 == one {
            return Ok(Ordering::Equal);
        }
        handle = handle.refine();
        if handle.precision_bits > cap {
            return Err(Error::Indeterminate);
        }
    }
}

/// `ln|σ(x)|` as a floating estimate.
pub fn log_modulus(x: &NfElem, h: &EmbeddingHandle, cap: u32) -> Result<f64> {
    let b = h.eval(x, cap)?;
    let m2 = &b.re * &b.re + &b.im * &b.im;
    Ok(0.5 * rational::log_abs(&m2))
}

/// Result of matching `x` against powers of `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentMatch {
    pub exponent: i64,
    /// True when `x = −λ^m` (only reported in projective mode).
    pub negated: bool,
}

const MAX_RECOVERED_EXPONENT: f64 = 1.0e5;

/// `m` with `x = λ^m` (or `x = ±λ^m` when `projective`), decided exactly.
pub fn recover_exponent(
    x: &NfElem,
    lam: &NfElem,
    h: &EmbeddingHandle,
    projective: bool,
    cap: u32,
) -> Result<Option<ExponentMatch>> {
    if x.is_zero() || lam.is_zero() {
        return Err(Error::ZeroElement);
    }
    match compare_modulus_to_one(lam, h, cap) {
        Ok(Ordering::Equal) | Err(Error::Indeterminate) => {
            return Err(Error::UnsupportedEigenvalue)
        }
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    let lx = log_modulus(x, h, cap)?;
    let ll = log_modulus(lam, h, cap)?;
    let t = lx / ll;
    if !t.is_finite() || t.abs() > MAX_RECOVERED_EXPONENT {
        return Ok(None);
    }
    let mut candidates = vec![t.round() as i64, t.floor() as i64, t.ceil() as i64];
    candidates.dedup();
    let neg_x = -x;
    for m in candidates {
        let power = lam.pow(m)?;
        if &power == x {
            return Ok(Some(ExponentMatch {
                exponent: m,
                negated: false,
            }));
        }
        if projective && power == neg_x {
            return Ok(Some(ExponentMatch {
                exponent: m,
                negated: true,
            }));
        }
    }
    Ok(None)
}

/// First root index at which `|σ(x)| ≠ 1` is decidable, if any.
pub fn non_unit_embedding(x: &NfElem, precision_bits: u32, cap: u32) -> Option<EmbeddingHandle> {
    let field = x.field();
    (0..field.degree()).find_map(|i| {
        let h = EmbeddingHandle::new(field, i, precision_bits).ok()?;
        match compare_modulus_to_one(x, &h, cap) {
            Ok(Ordering::Greater) | Ok(Ordering::Less) => Some(h),
            _ => None,
        }
    })
}

/// The embedding of the target of `map` lying over `h`: the first root index of the target
/// field at which the image of the source generator matches `σ_h` of that generator.
pub fn extend_embedding(
    h: &EmbeddingHandle,
    map: &super::FieldMap,
    cap: u32,
) -> Result<EmbeddingHandle> {
    if map.is_identity() {
        return Ok(h.clone());
    }
    let target = &map.target;
    let expected = target.degree() / h.field.degree();
    let mut bits = h.precision_bits.max(BASE_PRECISION);
    loop {
        let base = h.with_field(&h.field, h.root_index);
        let base = EmbeddingHandle {
            precision_bits: bits,
            ..base
        };
        let b = eval_at_box(
            &super::FieldExt::gen(&h.field),
            &complex_embedding(&base, cap)?,
            bits,
        )?;
        let roots = isolate_roots(target.min_poly(), bits, cap)?;
        let mut matches = Vec::new();
        for (i, root) in roots.iter().enumerate() {
            let img = eval_at_box(&map.gen_image, root, bits)?;
            let dre = &img.re - &b.re;
            let dim = &img.im - &b.im;
            let rsum = &img.radius + &b.radius;
            if &dre * &dre + &dim * &dim <= &rsum * &rsum {
                matches.push(i);
            }
        }
        if matches.len() == expected {
            return EmbeddingHandle::new(target, matches[0], h.precision_bits);
        }
        bits *= 2;
        if bits > cap {
            return Err(Error::Indeterminate);
        }
    }
}
