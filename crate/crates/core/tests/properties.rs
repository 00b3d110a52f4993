use monadforge::frame::{a_of_gamma, embed_h_in_g, g_action};
use monadforge::io::{parse_document, render_document, Document};
use monadforge::linalg::{random, rank, rank_kernel, rref, solve_affine, standard_symplectic, symplectic_framing, PrimeField, Rat, Rationals, SkewMatrix, DEFAULT_PRIME};
use monadforge::net::{decompose_pr2, presentation, QuadricNet};
use monadforge::plane::{fiber_solve, psi_project, sigma_h_action};
use monadforge::slice::{a_of_octuple, closed_identities, gamma_of_octuple, h_action, net_of_octuple};
use monadforge::workbench::{gen_closed_octuple, trial_rng, Ansatz};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let m = random::int_matrix(&mut rng(seed), rows, cols, 3);
        let rk = rank_kernel(&m).unwrap();
        prop_assert_eq!(rk.rank + rk.kernel.len(), cols);
        for v in &rk.kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == Rat::from_integer(0.into())));
        }
        let r = rref(&m);
        prop_assert_eq!(rref(&r.reduced).reduced, r.reduced.clone());
        prop_assert_eq!(r.pivots.len(), rank(&m));
    }

    #[test]
    fn modular_rank_never_exceeds_rational(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let m = random::int_matrix(&mut rng(seed), rows, cols, 50);
        let p = PrimeField::new(1_000_003).unwrap();
        prop_assert!(rank(&m.reduce_mod(&p).unwrap()) <= rank(&m));
        let big = PrimeField::new(DEFAULT_PRIME).unwrap();
        prop_assert_eq!(rank(&m.reduce_mod(&big).unwrap()), rank(&m));
    }

    #[test]
    fn consistent_systems_contain_their_source(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let mut r = rng(seed);
        let m = random::int_matrix(&mut r, rows, cols, 4);
        let x = random::int_vector(&mut r, cols, 4);
        let space = solve_affine(&m, &m.mul_vec(&x)).unwrap().space().cloned();
        prop_assert!(space.is_some_and(|s| s.contains(&x)));
    }

    #[test]
    fn framing_normalises_skew_forms(seed in any::<u64>(), half in 1usize..4) {
        let mut r = rng(seed);
        let q = standard_symplectic::<Rat>(&Rationals, 2 * half).unwrap();
        let g = random::int_matrix(&mut r, 2 * half, 2 * half, 3);
        prop_assume!(rank(&g) == 2 * half);
        let s = SkewMatrix::new(g.transpose().mul(&q).mul(&g)).unwrap();
        let psi = symplectic_framing(&s).unwrap();
        prop_assert_eq!(psi.transpose().mul(s.as_matrix()).mul(&psi), q);
    }

    #[test]
    fn three_routes_to_a_agree(seed in any::<u64>(), n in 2usize..4) {
        let o = gen_closed_octuple(&mut trial_rng(seed, 0), n, Ansatz::Dense).0.unwrap();
        let a = a_of_octuple(&o);
        prop_assert_eq!(a_of_gamma(&gamma_of_octuple(&o)), a.clone());
        prop_assert_eq!(net_of_octuple(&o).unwrap().flatten(), a.clone());
        let (net, rest) = decompose_pr2(&a, n, 4).unwrap();
        prop_assert!(rest.is_zero());
        prop_assert_eq!(QuadricNet::from_flat(a.as_matrix(), n, 4).unwrap(), net);
    }

    #[test]
    fn group_actions_transport(seed in any::<u64>(), n in 2usize..4) {
        let o = gen_closed_octuple(&mut trial_rng(seed, 1), n, Ansatz::Diagonal).0.unwrap();
        let mut r = rng(seed);
        let g = random::orthogonal(&mut r, n, 3);
        let m = random::sl2(&mut r, 3);
        let moved = h_action(&g, &m, &o).unwrap();
        prop_assert_eq!(closed_identities(&moved), [true; 3]);
        let e = embed_h_in_g(&g, &m).unwrap();
        prop_assert_eq!(g_action(&e, &gamma_of_octuple(&o)).unwrap(), gamma_of_octuple(&moved));
        let sigma = psi_project(&o).unwrap();
        let moved_sigma = psi_project(&moved).unwrap();
        prop_assert_eq!(sigma_h_action(&g, &m, &sigma).unwrap(), moved_sigma.clone());
        let dim = |s| fiber_solve(s).unwrap().space().map(|sp| sp.dim());
        prop_assert_eq!(dim(&sigma), dim(&moved_sigma));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), n in 2usize..4) {
        let o = gen_closed_octuple(&mut trial_rng(seed, 2), n, Ansatz::Dense).0.unwrap();
        let net = net_of_octuple(&o).unwrap();
        let docs = [
            Document::Net(net.clone()),
            Document::Gamma(gamma_of_octuple(&o)),
            Document::Sigma(psi_project(&o).unwrap()),
            Document::Octuple(o),
        ];
        for doc in docs {
            let text = render_document(&doc);
            prop_assert_eq!(parse_document(&text).unwrap(), doc);
        }
        prop_assert_eq!(presentation(&net).unwrap().w_dim(), 2 * n + 2);
    }
}
