//! Algebraic invariants, each checked against an oracle written here rather than the library.

use dcsep::algebra::{factor_mod_p, is_irreducible, rat, resultant, PolyFp, PolyQ, Rational};
use dcsep::certificate::{
    parse, serialize, subgroup_closure, Claim, FMat, FiniteField, FiniteRing, ResidueRingSpec,
    SeparationCertificate,
};
use dcsep::doublecoset::Problem;
use dcsep::mobius::{classify, Mat2, MatrixClass, SubgroupSpec};
use dcsep::number_field::{FieldExt, FieldRef, NfElem, NumberField};
use dcsep::residue::{mult_order, reduce, residue_split, TrackedRing};
use dcsep::separation::{find_order_prime, separate_power, OrderMode, PowerOutcome};
use dcsep::SearchBudget;
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn poly_fp() -> impl Strategy<Value = PolyFp> {
    (
        prop::sample::select(SMALL_PRIMES.to_vec()),
        prop::collection::vec(0u64..1000, 1..7),
    )
        .prop_map(|(p, c)| PolyFp::new(p, c.into_iter().map(|x| x % p).collect()))
}

fn sylvester_resultant(f: &[i64], g: &[i64]) -> Rational {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        let mut r = vec![rat(0); size];
        for (j, c) in f.iter().rev().enumerate() {
            r[i + j] = rat(*c);
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![rat(0); size];
        for (j, c) in g.iter().rev().enumerate() {
            r[i + j] = rat(*c);
        }
        rows.push(r);
    }
    let mut det = rat(1);
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
            return rat(0);
        };
        if piv != col {
            rows.swap(piv, col);
            det = -det;
        }
        det *= rows[col][col].clone();
        let pivot = rows[col].clone();
        for row in rows.iter_mut().skip(col + 1) {
            let f = row[col].clone() / pivot[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot).skip(col) {
                *x -= y.clone() * f.clone();
            }
        }
    }
    det
}

fn brute_irreducible(f: &PolyFp) -> bool {
    let p = f.p();
    let n = f.degree().unwrap();
    for d in 1..=n / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut c: Vec<u64> = (0..d).map(|i| idx / p.pow(i as u32) % p).collect();
            c.push(1);
            if PolyFp::new(p, c).divides(f) {
                return false;
            }
        }
    }
    true
}

fn fields() -> Vec<FieldRef> {
    vec![
        NumberField::rationals(),
        NumberField::new("i", PolyQ::from_i64(&[1, 0, 1])).unwrap(),
        NumberField::new("T", PolyQ::from_i64(&[-2, 0, 0, 1])).unwrap(),
        NumberField::new("z", PolyQ::from_i64(&[1, 0, 0, 0, 1])).unwrap(),
    ]
}

fn element(field: &FieldRef, raw: &[(i64, i64)]) -> NfElem {
    let coeffs = raw
        .iter()
        .take(field.degree())
        .map(|&(n, d)| dcsep::algebra::ratio(n, d))
        .collect();
    field.element(coeffs)
}

fn elem_strategy() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..20, 1i64..5), 4)
}

/// `(a b; c d)` with `ad − bc = 1` built from a few elementary factors.
fn sl2_word(field: &FieldRef, word: &[(u8, i64)]) -> Mat2 {
    let mut m = Mat2::identity(field);
    for &(kind, t) in word {
        let step = match kind % 3 {
            0 => Mat2::upper(&field.from_int(t)),
            1 => Mat2::lower(&field.from_int(t)),
            _ => Mat2::diag(&field.from_int(if t == 0 { 2 } else { t })).unwrap(),
        };
        m = m.mul(&step);
    }
    m
}

fn word() -> impl Strategy<Value = Vec<(u8, i64)>> {
    prop::collection::vec((0u8..3, -3i64..4), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_with_remainder(a in poly_fp(), b in poly_fp()) {
        let b = PolyFp::new(a.p(), b.coeffs().to_vec());
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn factorization_multiplies_back_to_input(f in poly_fp()) {
        let f = f.monic();
        prop_assume!(f.degree().is_some_and(|d| d >= 1));
        let factors = factor_mod_p(&f).unwrap();
        let mut prod = PolyFp::one(f.p());
        for (g, e) in &factors {
            prop_assert!(g.is_monic());
            prop_assert!(brute_irreducible(g));
            prop_assert_eq!(is_irreducible(g), true);
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn irreducibility_agrees_with_trial_division(f in poly_fp()) {
        let f = f.monic();
        prop_assume!(f.degree().is_some_and(|d| d >= 1));
        prop_assert_eq!(is_irreducible(&f), brute_irreducible(&f));
    }

    #[test]
    fn resultant_matches_sylvester(
        f in prop::collection::vec(-6i64..7, 2..5),
        g in prop::collection::vec(-6i64..7, 2..5),
    ) {
        prop_assume!(*f.last().unwrap() != 0 && *g.last().unwrap() != 0);
        let r = resultant(&PolyQ::from_i64(&f), &PolyQ::from_i64(&g)).unwrap();
        prop_assert_eq!(r, sylvester_resultant(&f, &g));
    }

    #[test]
    fn number_field_inverse_and_distributivity(
        k in 0usize..4, x in elem_strategy(), y in elem_strategy(), z in elem_strategy(),
    ) {
        let field = &fields()[k];
        let (x, y, z) = (element(field, &x), element(field, &y), element(field, &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&(&x * &y) * &x.inv().unwrap(), y);
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(k in 0usize..4, x in elem_strategy(), y in elem_strategy(), pi in 0usize..6) {
        let field = &fields()[k];
        let (x, y) = (element(field, &x), element(field, &y));
        let p = [7u64, 13, 17, 29, 31, 41][pi];
        prop_assume!(field.is_unramified(p));
        for map in residue_split(field, p).unwrap() {
            let (rx, ry) = (reduce(&map, &x).unwrap(), reduce(&map, &y).unwrap());
            prop_assert_eq!(reduce(&map, &(&x + &y)).unwrap(), rx.add(&ry));
            prop_assert_eq!(reduce(&map, &(&x * &y)).unwrap(), rx.mul(&ry));
        }
    }

    #[test]
    fn multiplicative_order_by_enumeration(x in 1u64..1000, pi in 0usize..5) {
        let p = [11u64, 101, 251, 509, 997][pi];
        prop_assume!(x % p != 0);
        let q = NumberField::rationals();
        let map = residue_split(&q, p).unwrap().remove(0);
        let ord = mult_order(&reduce(&map, &q.from_int(x as i64)).unwrap()).unwrap();
        let mut cur = x % p;
        let mut n = 1u64;
        while cur != 1 {
            cur = cur * (x % p) % p;
            n += 1;
        }
        prop_assert_eq!(ord, BigUint::from(n));
    }

    #[test]
    fn order_prime_has_the_requested_order(delta in 2i64..12, m in 2u64..9) {
        let q = NumberField::rationals();
        let d = q.from_int(delta);
        let ring = TrackedRing::new(&q).with_generators([d.clone()]);
        let zsigmondy_exception = (delta == 2 && m == 6) || (m == 2 && (delta + 1).count_ones() == 1);
        let r = match find_order_prime(&d, m, &ring, OrderMode::Exact, &SearchBudget::default()) {
            Ok(r) => r,
            Err(dcsep::Error::BudgetExhausted) => {
                prop_assert!(zsigmondy_exception);
                return Ok(());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(!zsigmondy_exception);
        let p = r.map.p();
        let x = delta.rem_euclid(p as i64) as u64;
        let mut cur = 1u64;
        for j in 1..=m {
            cur = cur * x % p;
            prop_assert_eq!(cur == 1, j == m, "p = {}", p);
        }
    }

    #[test]
    fn power_separation_holds_on_every_exponent(l in 2i64..30, w in 2i64..30) {
        let q = NumberField::rationals();
        let (lambda, omega) = (q.from_int(l), q.from_int(w));
        let ring = TrackedRing::new(&q).with_generators([lambda.clone(), omega.clone()]);
        match separate_power(&lambda, &omega, &ring, &SearchBudget::default()).unwrap() {
            PowerOutcome::NotSeparable { exponent } => {
                prop_assert_eq!(omega.pow(exponent).unwrap(), lambda);
            }
            PowerOutcome::Separated(s) => {
                let reduced: Vec<(u64, u64, u64)> = s.maps.iter()
                    .map(|m| (m.p(), l.rem_euclid(m.p() as i64) as u64, w.rem_euclid(m.p() as i64) as u64))
                    .collect();
                let period: u64 = reduced.iter().map(|(p, _, _)| p - 1).product();
                let mut pw: Vec<u64> = vec![1; reduced.len()];
                for _ in 0..period {
                    prop_assert!(pw.iter().zip(&reduced).any(|(a, (_, lr, _))| a != lr));
                    for (a, (p, _, wr)) in pw.iter_mut().zip(&reduced) {
                        *a = *a * wr % p;
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_group_laws(k in 0usize..2, u in word(), v in word()) {
        let field = &fields()[k];
        let (a, b) = (sl2_word(field, &u), sl2_word(field, &v));
        let ab = a.mul(&b);
        prop_assert!(ab.det().is_one());
        prop_assert!(a.mul(&a.inv()).is_identity());
        prop_assert_eq!(a.conj(&b).trace(), a.trace());
        let t = a.trace();
        let four = field.from_int(4);
        let parabolic = &t * &t == four && !a.is_pm_identity();
        prop_assert_eq!(classify(&a) == MatrixClass::Parabolic, parabolic);
    }

    #[test]
    fn problem_json_round_trip(v in word(), w in word(), proj in any::<bool>()) {
        let q = NumberField::rationals();
        let h = SubgroupSpec::LoxodromicCyclic { generator: Mat2::diag(&q.from_int(2)).unwrap(), power: 1 };
        let k = SubgroupSpec::LoxodromicCyclic { generator: Mat2::diag(&q.from_int(3)).unwrap(), power: 2 };
        let p = Problem::new(&q, proj, 0, h, k, sl2_word(&q, &v), sl2_word(&q, &w), vec![]).unwrap();
        let back = Problem::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), p.to_json());
        prop_assert_eq!(back.digest(), p.digest());
    }

    #[test]
    fn closure_order_divides_group_order(
        gens in prop::collection::vec((0u64..7, 0u64..7, 0u64..7), 1..3),
        proj in any::<bool>(),
    ) {
        let p = 7u64;
        let ring = FiniteRing::new(vec![FiniteField::new(p, PolyFp::x(p))], proj);
        let mats: Vec<FMat> = gens.iter().filter_map(|&(a, b, c)| {
            let inv = (1..p).find(|x| a * x % p == 1)?;
            let d = (1 + b * c) % p * inv % p;
            Some(FMat(vec![[PolyFp::constant(p, a), PolyFp::constant(p, b), PolyFp::constant(p, c), PolyFp::constant(p, d)]]))
        }).collect();
        prop_assume!(!mats.is_empty());
        let n = subgroup_closure(&ring, &mats, 1_000_000).unwrap().len() as u64;
        let order: u64 = ring.group_order().try_into().unwrap();
        prop_assert!(order.is_multiple_of(n), "{} does not divide {}", n, order);
    }

    #[test]
    fn certificate_bytes_round_trip(
        claim in 0usize..3,
        rings in prop::collection::vec((0usize..4, prop::collection::vec(0u64..7, 1..4)), 1..4),
        m0 in prop::option::of(-1000i64..1000),
        notes in "[a-z ]{0,20}",
    ) {
        let claim = [Claim::NotInDoubleCoset, Claim::NotInSubgroup, Claim::NotConjugateInto][claim];
        let rings = rings.into_iter().map(|(pi, mut c)| {
            let p = [2u64, 3, 5, 7][pi];
            c.iter_mut().for_each(|x| *x %= p);
            c.push(1);
            ResidueRingSpec { p, factor: PolyFp::new(p, c) }
        }).collect();
        let mut cert = SeparationCertificate::new(claim, "ab".repeat(32), rings);
        cert.auxiliary.m0 = m0.map(Into::into);
        cert.notes = notes;
        let bytes = serialize(&cert);
        let back = parse(&bytes).unwrap();
        prop_assert_eq!(serialize(&back), bytes);
        prop_assert_eq!(back, cert);
    }
}
