use arithline::galois_field::{embed, make_field, norm_to, trace_to, ExtField, FieldElement};
use arithline::geometry::{coords_from_plucker, plucker_of, restrict_quadric, Chart, QuadraticForm};
use arithline::gw::{trace_form, GWForm};
use arithline::polysolve::{groebner, MPoly, MonomialOrder};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u64, usize); 8] = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 3), (17, 1), (17, 2)];

fn field_strategy() -> impl Strategy<Value = ExtField> {
    (0..FIELDS.len()).prop_map(|i| make_field(FIELDS[i].0, FIELDS[i].1).unwrap())
}

fn elem(k: &ExtField, seed: u64) -> FieldElement {
    k.random(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn nonzero(k: &ExtField, seed: u64) -> FieldElement {
    k.random_nonzero(&mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(k in field_strategy(), s in any::<[u64; 3]>()) {
        let (a, b, c) = (elem(&k, s[0]), elem(&k, s[1]), elem(&k, s[2]));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.pow(k.order().unwrap() as u64), a);
    }

    #[test]
    fn squares_are_multiplicative(k in field_strategy(), s in any::<[u64; 2]>()) {
        let (a, b) = (nonzero(&k, s[0]), nonzero(&k, s[1]));
        let sa = a.is_square().unwrap();
        let sb = b.is_square().unwrap();
        prop_assert_eq!((&a * &b).is_square().unwrap(), sa == sb);
        prop_assert!(a.square().is_square().unwrap());
        let euler = a.pow(((k.order().unwrap() - 1) / 2) as u64);
        prop_assert_eq!(euler.is_one(), sa);
    }

    #[test]
    fn embedding_is_a_ring_map(s in any::<[u64; 2]>(), idx in 0usize..3) {
        let (p, m, n) = [(3, 1, 3), (3, 2, 6), (5, 1, 2)][idx];
        let (small, big) = (make_field(p, m).unwrap(), make_field(p, n).unwrap());
        let (a, b) = (elem(&small, s[0]), elem(&small, s[1]));
        let e = |x: &FieldElement| embed(x, &big).unwrap();
        prop_assert_eq!(e(&(&a * &b)), &e(&a) * &e(&b));
        prop_assert_eq!(e(&(&a + &b)), &e(&a) + &e(&b));
        let deg = (n / m) as u64;
        prop_assert_eq!(trace_to(&e(&a), &small).unwrap(), &small.from_int(deg as i64) * &a);
        prop_assert_eq!(norm_to(&e(&a), &small).unwrap(), a.pow(deg));
    }

    #[test]
    fn trace_form_invariants(s in any::<[u64; 3]>(), idx in 0usize..3) {
        let (p, m, n) = [(3, 1, 2), (3, 1, 3), (17, 1, 2)][idx];
        let (small, big) = (make_field(p, m).unwrap(), make_field(p, n).unwrap());
        let a = nonzero(&big, s[0]);
        let c = nonzero(&big, s[1]);
        let b = nonzero(&small, s[2]);
        let ta = trace_form(&a, &small).unwrap();
        prop_assert_eq!(ta.rank(), n / m);
        // scaling by a square of the big field is an isometry
        prop_assert_eq!(trace_form(&(&a * &c.square()), &small).unwrap(), ta.clone());
        // disc(Tr<a>) = N(a) times the discriminant of the extension
        let norm_sq = norm_to(&a, &small).unwrap().is_square().unwrap();
        prop_assert_eq!(ta.disc_is_square(), norm_sq == ((n / m) % 2 == 1));
        // a base-field scalar factors out
        let lhs = trace_form(&(&a * &embed(&b, &big).unwrap()), &small).unwrap();
        let flip = !b.is_square().unwrap() && (n / m) % 2 == 1;
        prop_assert_eq!(lhs.disc_is_square(), ta.disc_is_square() != flip);
    }

    #[test]
    fn transport_round_trip(rank in 0usize..20, sq in any::<bool>()) {
        let (small, big) = (make_field(3, 1).unwrap(), make_field(3, 3).unwrap());
        let f = GWForm::from_invariants(&small, rank, sq);
        let up = f.transport(&big).unwrap();
        prop_assert_eq!(up.transport(&small).unwrap(), f);
    }

    #[test]
    fn groebner_contains_generators(s in any::<u64>(), nvars in 1usize..4, ngens in 1usize..4) {
        let k = make_field(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let gens: Vec<MPoly> = (0..ngens)
            .map(|_| {
                let mut f = MPoly::zero(&k, nvars);
                for _ in 0..4 {
                    let e: Vec<u16> = (0..nvars).map(|_| rand::Rng::gen_range(&mut rng, 0..3)).collect();
                    f = f.add(&MPoly::from_terms(&k, nvars, [(e, k.random(&mut rng))]));
                }
                f
            })
            .collect();
        for order in [MonomialOrder::Lex, MonomialOrder::Grevlex] {
            let gb = groebner(&gens, order);
            for g in &gens {
                prop_assert!(gb.normal_form(g).is_zero());
                let h = g.mul(&MPoly::var(&k, nvars, 0)).add(&g.scale(&k.from_int(3)));
                prop_assert!(gb.normal_form(&h).is_zero());
            }
            let again = groebner(gb.polys(), order);
            prop_assert_eq!(again.polys(), gb.polys());
        }
    }

    #[test]
    fn plucker_round_trip(chart_idx in 0usize..10, s in any::<u64>(), k in field_strategy()) {
        let chart = Chart::from_index(chart_idx);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let coords: Vec<FieldElement> = (0..6).map(|_| k.random(&mut rng)).collect();
        let p = plucker_of(chart, &coords);
        prop_assert!(p.satisfies_relations());
        prop_assert!(p.coords()[chart.index()].is_one());
        prop_assert_eq!(coords_from_plucker(chart, &p).unwrap(), coords.clone());
        for other in p_charts(&p) {
            let back = coords_from_plucker(other, &p).unwrap();
            prop_assert_eq!(plucker_of(other, &back).normalized(), p.normalized());
        }
    }

    #[test]
    fn restriction_matches_evaluation(chart_idx in 0usize..10, s in any::<u64>()) {
        let k = make_field(17, 1).unwrap();
        let chart = Chart::from_index(chart_idx);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let q = QuadraticForm::new(&k, (0..15).map(|_| k.random(&mut rng)).collect()).unwrap();
        let coords: Vec<FieldElement> = (0..6).map(|_| k.random(&mut rng)).collect();
        let (u, v) = (k.random(&mut rng), k.random(&mut rng));
        let [r1, r2] = chart.rows(&coords);
        let x: Vec<FieldElement> = r1.iter().zip(&r2).map(|(a, b)| &(&u * a) + &(&v * b)).collect();
        let [c0, c1, c2] = restrict_quadric(&q, chart);
        let want = &(&(&c0.eval(&coords).unwrap() * &u.square()) + &(&(&c1.eval(&coords).unwrap() * &u) * &v))
            + &(&c2.eval(&coords).unwrap() * &v.square());
        prop_assert_eq!(q.eval(&x).unwrap(), want);
    }
}

fn p_charts(p: &arithline::geometry::PluckerVec) -> Vec<Chart> {
    Chart::all().into_iter().filter(|c| !p.coords()[c.index()].is_zero()).collect()
}
