use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use boso_core::builtin::{jordan_actions, jordan_seq, laurent_seq, qline_seq_corrupted, root_of_order};
use boso_core::cohomology::ExtTable;
use boso_core::defseq::{check_deformation_sequence, Status};
use boso_core::hopf::builders::{jordan_plane, qls, quantum_affine_space, quantum_line};
use boso_core::hopf::data::taft_hopf;
use boso_core::hopf::{ActionSpec, HopfAction, HopfPresentation, Tensor};
use boso_core::ncalg::{NcPoly, PresentedAlgebra};
use boso_core::sparse::SVec;
use boso_core::twisted::TwistingMap;
use boso_core::{Field, Scalar};

fn poly(a: &PresentedAlgebra, rng: &mut ChaCha8Rng, terms: usize, max_len: usize) -> NcPoly {
    let f = a.field();
    let mut p = NcPoly::zero(f);
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<u32> = (0..len).map(|_| rng.gen_range(0..a.num_generators() as u32)).collect();
        p.add_term(w, f.from_int(rng.gen_range(-3..=3)));
    }
    p
}

fn cyclotomic_element(f: &Field, coeffs: &[i64]) -> Scalar {
    let mut acc = f.zero();
    for (i, &c) in coeffs.iter().enumerate() {
        acc = &acc + &(&f.from_int(c) * &f.zeta_pow(i as i64).unwrap());
    }
    acc
}

/// Algebras with nontrivial rewriting: a quantum plane, the Jordan plane and a QLS.
fn algebras() -> Vec<PresentedAlgebra> {
    let f = Field::cyclotomic(3).unwrap();
    let z = f.zeta().unwrap();
    let plane = quantum_affine_space(&[vec![f.one(), z.clone()], vec![z.inv().unwrap(), f.one()]], 12).unwrap();
    let jordan = jordan_plane(&Field::prime(3).unwrap(), false, 12).unwrap();
    let g = Field::cyclotomic(6).unwrap();
    let m1 = g.from_int(-1);
    let b = qls(&[vec![m1.clone(), m1.clone()], vec![m1, root_of_order(&g, 3).unwrap()]], 12).unwrap();
    vec![plane, jordan, b]
}

proptest! {
    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 101]), a in 0i64..1000, b in 0i64..1000, c in 0i64..1000) {
        let f = Field::prime(p).unwrap();
        let (a, b, c) = (f.from_int(a), f.from_int(b), f.from_int(c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!(f.from_int(p as i64).is_zero());
    }

    #[test]
    fn cyclotomic_inverse(n in prop::sample::select(vec![3u32, 4, 5, 6, 8]), coeffs in prop::collection::vec(-4i64..=4, 1..6)) {
        let f = Field::cyclotomic(n).unwrap();
        let a = cyclotomic_element(&f, &coeffs);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a.clone());
        }
        prop_assert!(f.zeta().unwrap().pow(n as u64).is_one());
    }

    #[test]
    fn normal_forms_are_confluent(which in 0usize..3, seed in any::<u64>()) {
        let a = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (poly(a, &mut rng, 3, 3), poly(a, &mut rng, 3, 3), poly(a, &mut rng, 3, 3));
        let nx = a.normal_form(&x).unwrap();
        prop_assert_eq!(&a.normal_form(&nx).unwrap(), &nx);
        for (w, _) in nx.terms() {
            prop_assert!(a.is_normal_word(w));
        }
        prop_assert_eq!(a.normal_form(&(&x * &y)).unwrap(), a.mul(&nx, &a.normal_form(&y).unwrap()).unwrap());
        let left = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
        let right = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn group_likes_act_multiplicatively(seed in any::<u64>()) {
        let ms = jordan_seq(3, 12).unwrap();
        let cs = laurent_seq(ms.q.field(), 3, 12).unwrap();
        let act = jordan_actions(&ms, &cs).unwrap().on_q;
        let (a, k) = (act.algebra(), act.hopf());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (poly(a, &mut rng, 3, 3), poly(a, &mut rng, 3, 3));
        let g = poly(k.algebra(), &mut rng, 1, 3);
        let Some((w, _)) = g.terms().next() else { return Ok(()) };
        let g = NcPoly::word(a.field(), w.clone());
        let lhs = act.act(&g, &a.mul(&x, &y).unwrap()).unwrap();
        let rhs = a.mul(&act.act(&g, &x).unwrap(), &act.act(&g, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_a_module(seed in any::<u64>()) {
        let f = Field::cyclotomic(3).unwrap();
        let k = HopfPresentation::from_data(&taft_hopf(&f, 3, &f.zeta().unwrap()).unwrap()).unwrap();
        let r = quantum_line(&f, 3, &f.zeta().unwrap(), 8).unwrap();
        let spec = ActionSpec::parse(&k, &r, &[("g", &[("X", "zeta*X")]), ("x", &[("X", "0")])]).unwrap();
        let act = HopfAction::new(&k, &r, &spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = poly(&r, &mut rng, 3, 2);
        let h1 = poly(k.algebra(), &mut rng, 2, 2);
        let h2 = poly(k.algebra(), &mut rng, 2, 2);
        let lhs = act.act(&k.algebra().mul(&h1, &h2).unwrap(), &v).unwrap();
        let rhs = act.act(&h1, &act.act(&h2, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn witnesses_are_nonzero(n in 2u32..6, m in 1u32..6) {
        prop_assume!(m < n);
        let f = Field::rationals();
        let rep = check_deformation_sequence(&qline_seq_corrupted(&f, n, m, 12).unwrap(), 12).unwrap();
        prop_assert!(!rep.passed());
        for e in rep.failures() {
            let Status::Failed(w) = &e.status else { unreachable!() };
            prop_assert!(!w.detail.is_empty());
            if let Some((_, el)) = &w.element {
                prop_assert!(!el.is_zero());
                prop_assert_ne!(w.rendered.as_deref(), Some("0"));
            }
        }
    }
}

fn random_tensor(t: &TwistingMap, rng: &mut ChaCha8Rng, qw: &[Vec<u32>], hw: &[Vec<u32>]) -> Tensor {
    let f = t.q().field();
    let mut out = Tensor::new();
    for _ in 0..rng.gen_range(1..=2) {
        let q = qw[rng.gen_range(0..qw.len())].clone();
        let h = hw[rng.gen_range(0..hw.len())].clone();
        let c = f.from_int(rng.gen_range(1..=3));
        let e = out.entry((q, h)).or_insert_with(|| f.zero());
        *e = &*e + &c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn small_words(a: &PresentedAlgebra, d: u32) -> Vec<Vec<u32>> {
    a.normal_words_upto(d).unwrap().into_iter().flatten().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn twisted_product_is_associative(jordan in any::<bool>(), seed in any::<u64>()) {
        thread_local! {
            static MAPS: (TwistingMap, TwistingMap) = {
                let f = Field::cyclotomic(3).unwrap();
                let q = f.zeta().unwrap();
                let k = HopfPresentation::cyclic(&f, 3, "g", "G", 12).unwrap();
                let r = quantum_line(&f, 3, &q, 12).unwrap();
                let spec = ActionSpec::parse(&k, &r, &[("g", &[("X", "zeta*X")]), ("G", &[("X", "zeta^2*X")])]).unwrap();
                let taft = TwistingMap::smash(&HopfAction::new(&k, &r, &spec).unwrap(), 12).unwrap();
                let ms = jordan_seq(3, 12).unwrap();
                let cs = laurent_seq(ms.q.field(), 3, 12).unwrap();
                let jordan = TwistingMap::smash(&jordan_actions(&ms, &cs).unwrap().on_q, 12).unwrap();
                (taft, jordan)
            };
        }
        MAPS.with(|(taft, jm)| {
            let t = if jordan { jm } else { taft };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let qw = small_words(t.q(), 2);
            let hw = small_words(t.h(), 2);
            let x = random_tensor(t, &mut rng, &qw, &hw);
            let y = random_tensor(t, &mut rng, &qw, &hw);
            let z = random_tensor(t, &mut rng, &qw, &hw);
            let xy = t.multiply(&x, &y).unwrap().expect("within degree");
            let yz = t.multiply(&y, &z).unwrap().expect("within degree");
            let left = t.multiply(&xy, &z).unwrap().expect("within degree");
            let right = t.multiply(&x, &yz).unwrap().expect("within degree");
            prop_assert_eq!(left, right);
            Ok(())
        })?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Changing a chain lift by a boundary does not change the Yoneda product.
    #[test]
    fn products_do_not_depend_on_the_lift(which in 0usize..4, seed in any::<u64>()) {
        let (f, a) = match which {
            0 | 1 => {
                let n = which as u32 + 2;
                let f = Field::cyclotomic(n).unwrap();
                let h = HopfPresentation::from_data(&taft_hopf(&f, n as usize, &root_of_order(&f, n).unwrap()).unwrap()).unwrap();
                (f, h.algebra().clone())
            }
            _ => {
                let f = Field::cyclotomic(6).unwrap();
                let m1 = f.from_int(-1);
                let last = if which == 2 { m1.clone() } else { root_of_order(&f, 3).unwrap() };
                let a = qls(&[vec![m1.clone(), m1.clone()], vec![m1, last]], 12).unwrap();
                (f, a)
            }
        };
        let t = ExtTable::from_presented(&a, 4).unwrap();
        let res = t.resolution();
        let dim = res.algebra().dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in 0..=2 {
            for q in 1..=4 - p {
                for x in t.classes(p) {
                    for y in t.classes(q) {
                        let plain = t.yoneda_product(x, y).unwrap();
                        let lift = t
                            .lift_with(y.degree, y.internal, &y.cocycle, p, |i, _, target| {
                                let mut v = SVec::new();
                                if i + 1 > res.length() {
                                    return v;
                                }
                                for (l, &gd) in res.generator_degrees(i + 1).iter().enumerate() {
                                    for k in 0..dim {
                                        if gd + res.algebra().degree(k) == target {
                                            let c = rng.gen_range(-2i64..=2);
                                            if c != 0 {
                                                v.push((l * dim + k, f.from_int(c)));
                                            }
                                        }
                                    }
                                }
                                v
                            })
                            .unwrap();
                        let h = t.compose_at(p, &x.cocycle, &lift).unwrap();
                        prop_assert_eq!(t.class_coords(p + q, &h).unwrap(), plain);
                    }
                }
            }
        }
    }
}
