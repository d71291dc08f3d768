mod common;

use common::*;
use gman_core::structures::{LieStructure, PoissonStructure};
use gman_core::{rat, Form, GradedVectorField, Rational};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn bracket_graded_antisymmetry_and_jacobi(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = rng.gen_range(1..=3);
        let pairs = rng.gen_range(1..=2);
        let w = darboux(&mut rng, k, pairs);
        let ctx = w.base().clone();
        let mut fs = Vec::new();
        for _ in 0..3 {
            let (a, d) = random_homogeneous(&mut rng, &ctx, 3, 3);
            fs.push((build(&ctx, &a), d));
        }
        let (f, df) = &fs[0];
        let (g, dg) = &fs[1];
        let (h, _) = &fs[2];
        let s = sign((df + k) * (dg + k));
        prop_assert_eq!(w.poisson_bracket(f, g).unwrap(), w.poisson_bracket(g, f).unwrap().scale(&-s.clone()));
        let lhs = w.poisson_bracket(f, &w.poisson_bracket(g, h).unwrap()).unwrap();
        let rhs = &w.poisson_bracket(&w.poisson_bracket(f, g).unwrap(), h).unwrap()
            + &w.poisson_bracket(g, &w.poisson_bracket(f, h).unwrap()).unwrap().scale(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn liouville_potential_is_a_primitive(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = rng.gen_range(1..=3);
        let pairs = rng.gen_range(1..=3);
        let w = darboux(&mut rng, k, pairs);
        let e = GradedVectorField::euler(w.base());
        let lhs = w.form().scale(&rat(k));
        let rhs = w.form().contract(&e).unwrap().de_rham();
        prop_assert_eq!(lhs.poly(), rhs.poly());
        let alpha = w.liouville_potential().unwrap().de_rham();
        prop_assert_eq!(alpha.poly(), w.form().poly());
    }

    #[test]
    fn hamiltonian_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let k = rng.gen_range(1..=3);
        let pairs = rng.gen_range(1..=2);
        let w = darboux(&mut rng, k, pairs);
        let ctx = w.base().clone();
        let (a, d) = random_homogeneous(&mut rng, &ctx, 3, 3);
        let f = build(&ctx, &a);
        let x = w.hamiltonian_vector_field(&f).unwrap();
        let dc = w.context();
        let df = Form::from_function(dc, &f).unwrap().de_rham();
        let ix = w.form().contract(&x).unwrap();
        prop_assert_eq!(ix.poly(), df.poly());
        if d != 0 && !f.is_zero() {
            let h = w.hamiltonian_of_field(&x).map_err(|e| TestCaseError::fail(format!("{e} {f}")))?;
            let dh = Form::from_function(dc, &h).unwrap().de_rham();
            prop_assert_eq!(ix.poly(), dh.poly());
            prop_assert_eq!(h, f.filter_terms(|m| m.iter().any(|&e| e > 0)));
        }
    }

    #[test]
    fn lie_tables_agree_with_jacobi(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(2..=4);
        let table = random_lie_table(&mut rng, n);
        let ctx = named_chart("e", n, 1);
        let lie = LieStructure::new(&ctx, table_to_rational(&table)).unwrap();
        prop_assert_eq!(lie.verify().holds, lie_jacobi_oracle(&table));
    }

    #[test]
    fn poisson_master_equation_agrees_with_jacobi(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(2..=4);
        let ctx = named_chart("x", n, 0);
        let pi = random_bivector(&mut rng, &ctx, 2, 0.5);
        let oracle = poisson_jacobi_oracle(&pi);
        let p = PoissonStructure::new(&ctx, pi).unwrap();
        prop_assert_eq!(p.verify().unwrap().holds, oracle);
    }

    #[test]
    fn hamiltonian_fields_of_master_solutions_are_cohomological(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ctx = named_chart("x", 2, 0);
        let pi = random_bivector(&mut rng, &ctx, 2, 1.0);
        let p = PoissonStructure::new(&ctx, pi).unwrap();
        let model = p.cotangent_model().unwrap();
        let q = model.omega.hamiltonian_vector_field(&model.theta).unwrap();
        let c = q.is_cohomological();
        prop_assert!(c.holds);
    }
}
