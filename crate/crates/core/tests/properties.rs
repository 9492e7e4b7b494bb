use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sweedler::cat::{star_closure, verify_category};
use sweedler::lawcheck::enumerate::carrier;
use sweedler::lawcheck::random;
use sweedler::module::verify_comodule;
use sweedler::sweedler::{comeasure_q, measure_p, measuring_bounds, measuring_maximal};
use sweedler::vmat::{hcompose, hom_transpose_check, tensor_matrices};
use sweedler::workspace::{emit, to_json, Item, Workspace};
use sweedler::{Limits, Quantale};

fn quantale(pick: u8) -> Arc<Quantale> {
    Arc::new(match pick % 5 {
        0 => Quantale::bool(),
        1 => Quantale::godel(3).unwrap(),
        2 => Quantale::lukasiewicz(3).unwrap(),
        3 => Quantale::godel(4).unwrap(),
        _ => Quantale::lukasiewicz(5).unwrap(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(pick: u8, seed: u64, dims in prop::array::uniform4(0usize..4)) {
        let q = quantale(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c, d] = dims;
        let r = random::matrix(&mut rng, &q, &carrier("A", a), &carrier("B", b));
        let s = random::matrix(&mut rng, &q, &carrier("B", b), &carrier("C", c));
        let t = random::matrix(&mut rng, &q, &carrier("C", c), &carrier("D", d));
        let left = hcompose(&hcompose(&t, &s).unwrap(), &r).unwrap();
        let right = hcompose(&t, &hcompose(&s, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tensor_preserves_composition(pick: u8, seed: u64, dims in prop::array::uniform6(0usize..3)) {
        let q = quantale(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, w, x2, y2, w2] = dims;
        let m = random::matrix(&mut rng, &q, &carrier("X", x), &carrier("Y", y));
        let mp = random::matrix(&mut rng, &q, &carrier("W", w), &carrier("X", x));
        let n = random::matrix(&mut rng, &q, &carrier("X", x2), &carrier("Y", y2));
        let np = random::matrix(&mut rng, &q, &carrier("W", w2), &carrier("X", x2));
        let lhs = hcompose(&tensor_matrices(&m, &n).unwrap(), &tensor_matrices(&mp, &np).unwrap()).unwrap();
        let rhs = tensor_matrices(&hcompose(&m, &mp).unwrap(), &hcompose(&n, &np).unwrap()).unwrap();
        prop_assert_eq!(lhs.entries(), rhs.entries());
    }

    #[test]
    fn star_is_least_category_above(pick: u8, seed: u64, n in 0usize..5) {
        let q = quantale(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = carrier("X", n);
        let g = random::matrix(&mut rng, &q, &x, &x);
        let (s, _) = star_closure(&g).unwrap();
        prop_assert!(verify_category(s.hom()).unwrap().is_pass());
        prop_assert!(g.leq(s.hom()).unwrap());
        let (again, rounds) = star_closure(s.hom()).unwrap();
        prop_assert_eq!(again.hom(), s.hom());
        prop_assert_eq!(rounds, 0);
    }

    #[test]
    fn measuring_weights_are_maximal_and_lawful(pick: u8, seed: u64, a in 0usize..3, b in 0usize..3) {
        let q = quantale(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ca = random::category(&mut rng, &q, &carrier("X", a));
        let cb = random::category(&mut rng, &q, &carrier("Y", b));
        let bounds = measuring_bounds(&ca, &cb, &Limits::default()).unwrap();
        let p = measure_p(&ca, &cb, &Limits::default()).unwrap();
        prop_assert!(p.max_steps() <= q.len());
        for (k, &w) in p.output.weights().iter().enumerate() {
            prop_assert!(q.leq(w, q.meet(q.unit(), bounds[k])));
            prop_assert!(q.leq(w, q.tensor(w, w)));
            prop_assert!(measuring_maximal(&q, bounds[k], w));
        }
    }

    #[test]
    fn comeasuring_gives_a_comodule(pick: u8, seed: u64, sizes in prop::array::uniform4(0usize..3)) {
        let q = quantale(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, u, y, t] = sizes;
        let a = random::category(&mut rng, &q, &carrier("X", x));
        let b = random::category(&mut rng, &q, &carrier("Y", y));
        let m = random::module(&mut rng, &a, &carrier("U", u));
        let n = random::module(&mut rng, &b, &carrier("T", t));
        let out = comeasure_q(&m, &n, &Limits::default()).unwrap().output;
        prop_assert!(verify_comodule(out.over(), out.mat()).unwrap().is_pass());
        let p = measure_p(&a, &b, &Limits::default()).unwrap().output;
        prop_assert_eq!(out.over().weights(), p.weights());
    }

    #[test]
    fn hom_transpose_agrees(pick: u8, seed: u64, dims in prop::array::uniform6(1usize..3)) {
        let q = quantale(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, x, y, z, w] = dims;
        let (sa, sb, sx, sy) = (carrier("A", a), carrier("B", b), carrier("X", x), carrier("Y", y));
        let (sz, sw) = (carrier("Z", z), carrier("W", w));
        let r = random::matrix(&mut rng, &q, &sa, &sb);
        let s = random::matrix(&mut rng, &q, &sx, &sy);
        let t = random::matrix(&mut rng, &q, &sz, &sw);
        let phi = random::function(&mut rng, &sa.product(&sx), &sz).unwrap();
        let psi = random::function(&mut rng, &sb.product(&sy), &sw).unwrap();
        prop_assert!(hom_transpose_check(&r, &s, &t, &phi, &psi, &Limits::default()).is_ok());
    }

    #[test]
    fn workspace_round_trip(pick: u8, seed: u64, n in 0usize..4, u in 0usize..3) {
        let q = quantale(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = carrier("X", n);
        let a = random::category(&mut rng, &q, &x);
        let c = random::cocategory(&mut rng, &q, &x);
        let items = [
            ("G", Item::Matrix(random::matrix(&mut rng, &q, &carrier("U", u), &x))),
            ("M", Item::Module(random::module(&mut rng, &a, &carrier("U", u)))),
            ("K", Item::Comodule(random::comodule(&mut rng, &c, &carrier("V", u)))),
            ("A", Item::Category(a)),
            ("C", Item::Cocategory(c)),
        ];
        for (name, item) in &items {
            let text = emit(&q, name, item);
            let ws = Workspace::parse(&text).unwrap();
            prop_assert_eq!(to_json(name, item), to_json(name, ws.get(name).unwrap()));
        }
    }

    #[test]
    fn parser_rejects_garbage_without_panicking(text in "[a-z0-9 {};=:#\"\n>-]{0,80}") {
        let _ = Workspace::parse(&format!("quantale bool\n{text}"));
        let _ = Workspace::parse(&text);
    }
}
