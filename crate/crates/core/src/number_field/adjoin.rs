//! Adjoining a root of `X² + aX + b` and flattening the tower to a primitive element.

use num_traits::{One, Zero};

use crate::algebra::{linalg, resultant, PolyQ, Rational};
use crate::error::{Error, Result};

use super::element::NfElem;
use super::field::{FieldExt, FieldRef, NumberField};
use super::sqrt::sqrt_in_field;

const MAX_SHIFT: u32 = 64;

/// A field homomorphism `K → K'` recorded by the image of the generator of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMap {
    pub source: FieldRef,
    pub target: FieldRef,
    pub gen_image: NfElem,
}

impl FieldMap {
    pub fn identity(field: &FieldRef) -> Self {
        FieldMap {
            source: field.clone(),
            target: field.clone(),
            gen_image: field.gen(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.gen_image == self.target.gen()
    }

    pub fn apply(&self, x: &NfElem) -> NfElem {
        debug_assert!(x.field() == &self.source);
        if self.is_identity() {
            return x.clone();
        }
        self.gen_image.eval_poly(&x.to_poly())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FieldMap) -> FieldMap {
        FieldMap {
            source: self.source.clone(),
            target: next.target.clone(),
            gen_image: next.apply(&self.gen_image),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Adjunction {
    /// The quadratic already has a root in the base field.
    InField(NfElem),
    Extended {
        map: FieldMap,
        root: NfElem,
        shift: u32,
    },
}

impl Adjunction {
    pub fn is_reducible(&self) -> bool {
        matches!(self, Adjunction::InField(_))
    }
}

/// Adjoins a root of `X² + aX + b` to the field of `a` and `b`.
pub fn adjoin_quadratic_root(a: &NfElem, b: &NfElem) -> Result<Adjunction> {
    if !a.same_field(b) {
        return Err(Error::FieldMismatch);
    }
    let field = a.field().clone();
    let disc = &(a * a) - &b.scale(&Rational::from_integer(4.into()));
    let half = Rational::new(1.into(), 2.into());
    if let Some(s) = sqrt_in_field(&disc)? {
        return Ok(Adjunction::InField((&s - a).scale(&half)));
    }
    let n = field.degree();
    for shift in 0..MAX_SHIFT {
        let chi = shifted_char_poly(&field, a, b, shift)?;
        if chi.degree() != Some(2 * n) || !chi.is_squarefree() {
            continue;
        }
        let target = NumberField::new(format!("{}_", field.variable()), chi)?;
        let (gen_image, root) = express_in_primitive(&field, &target, a, b, shift);
        let map = FieldMap {
            source: field.clone(),
            target: target.clone(),
            gen_image,
        };
        let check_f = map.gen_image.eval_poly(field.min_poly());
        let check_q = &(&(&root * &root) + &(&map.apply(a) * &root)) + &map.apply(b);
        if !check_f.is_zero() || !check_q.is_zero() {
            return Err(Error::InvalidInput(
                "tower flattening failed verification".into(),
            ));
        }
        return Ok(Adjunction::Extended { map, root, shift });
    }
    Err(Error::Indeterminate)
}

/// Characteristic polynomial of `θ = Y + c·T` on `K[Y]/(Y² + aY + b)` over ℚ,
/// `χ(X) = res_T(f(T), (X − cT)² + a(T)(X − cT) + b(T))`, by interpolation.
fn shifted_char_poly(field: &FieldRef, a: &NfElem, b: &NfElem, shift: u32) -> Result<PolyQ> {
    let n = field.degree();
    let f = field.min_poly();
    let c = Rational::from_integer(shift.into());
    let ap = a.to_poly();
    let bp = b.to_poly();
    let points: Vec<Rational> = (0..=(2 * n) as i64)
        .map(|k| Rational::from_integer(k.into()))
        .collect();
    let mut values = Vec::with_capacity(points.len());
    for x in &points {
        let lin = PolyQ::new(vec![x.clone(), -c.clone()]);
        let g = &(&(&lin * &lin) + &(&ap * &lin)) + &bp;
        let v = if g.is_zero() {
            Rational::zero()
        } else {
            resultant(f, &g)?
        };
        values.push(v);
    }
    Ok(interpolate(&points, &values))
}

/// Newton divided-difference interpolation.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> PolyQ {
    let n = xs.len();
    let mut coef: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut poly = PolyQ::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = PolyQ::new(vec![-xs[i].clone(), Rational::one()]);
        poly = &(&poly * &lin) + &PolyQ::constant(coef[i].clone());
    }
    poly
}

/// Tower elements `u0 + u1·Y` with `Y² = −aY − b`.
fn tower_mul(
    x: &(NfElem, NfElem),
    y: &(NfElem, NfElem),
    a: &NfElem,
    b: &NfElem,
) -> (NfElem, NfElem) {
    let c0 = &x.0 * &y.0;
    let c1 = &(&x.0 * &y.1) + &(&x.1 * &y.0);
    let c2 = &x.1 * &y.1;
    (&c0 - &(&c2 * b), &c1 - &(&c2 * a))
}

fn tower_vec(x: &(NfElem, NfElem)) -> Vec<Rational> {
    x.0.coeffs().iter().chain(x.1.coeffs()).cloned().collect()
}

fn express_in_primitive(
    base: &FieldRef,
    target: &FieldRef,
    a: &NfElem,
    b: &NfElem,
    shift: u32,
) -> (NfElem, NfElem) {
    let n = base.degree();
    let theta = (
        base.gen().scale(&Rational::from_integer(shift.into())),
        base.one(),
    );
    let mut powers = Vec::with_capacity(2 * n);
    let mut cur = (base.one(), base.zero());
    for _ in 0..2 * n {
        powers.push(tower_vec(&cur));
        cur = tower_mul(&cur, &theta, a, b);
    }
    let gen_vec = tower_vec(&(base.gen(), base.zero()));
    let y_vec = tower_vec(&(base.zero(), base.one()));
    let u = linalg::solve_columns_q(&powers, &gen_vec).expect("θ is primitive");
    let v = linalg::solve_columns_q(&powers, &y_vec).expect("θ is primitive");
    (target.element(u), target.element(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::min_poly_of;

    #[test]
    fn golden_ratio_extension() {
        let q = NumberField::rationals();
        let res = adjoin_quadratic_root(&q.from_int(-3), &q.from_int(1)).unwrap();
        let Adjunction::Extended { map, root, shift } = res else {
            panic!("expected extension")
        };
        assert_eq!(shift, 0);
        assert_eq!(map.target.degree(), 2);
        let lhs = &(&(&root * &root) - &root.scale(&Rational::from_integer(3.into())))
            + &map.target.one();
        assert!(lhs.is_zero());
    }

    #[test]
    fn i_plus_sqrt_two() {
        let k = NumberField::new("t", PolyQ::from_i64(&[-2, 0, 1])).unwrap();
        let res = adjoin_quadratic_root(&k.zero(), &k.one()).unwrap();
        let Adjunction::Extended { map, root, shift } = res else {
            panic!("expected extension")
        };
        assert_eq!(shift, 1);
        assert_eq!(map.target.min_poly(), &PolyQ::from_i64(&[9, 0, -2, 0, 1]));
        let theta = &root + &map.gen_image;
        assert_eq!(min_poly_of(&theta), PolyQ::from_i64(&[9, 0, -2, 0, 1]));
    }

    #[test]
    fn reducible_quadratic_stays_in_field() {
        let q = NumberField::rationals();
        let res = adjoin_quadratic_root(&q.from_int(-4), &q.from_int(4)).unwrap();
        assert_eq!(res, Adjunction::InField(q.from_int(2)));
        assert!(res.is_reducible());
    }
}
