//! Randomized invariants of the calculus.
//!
//! Each property derives its inputs from a proptest-chosen seed through the
//! deterministic generators in `generate`, so every failure replays exactly.
//! All laws here are universal: they hold for arbitrary cellwise functions
//! on arbitrary finite complexes, with no curated-model structure involved.

use proptest::prelude::*;
use rand::Rng as _;

use constructible::calculus::{
    boundary_stalk, cech_sum, dual, euler_integral, euler_integral_c, extend_by_zero, pullback,
    pushforward, pushforward_c, restrict,
};
use constructible::generate::{
    random_complex, random_function, random_map, random_nonempty_cell_set, random_open_cover,
    random_stratification, rng_from_seed,
};
use constructible::subdivision::Subdivision;
use constructible::{CellSet, Function};

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    /// Applying duality twice returns every function unchanged.
    #[test]
    fn double_dual_is_the_identity(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let complex = random_complex(&mut rng, 7, 3);
        let cells = random_nonempty_cell_set(&mut rng, &complex);
        let phi = random_function(&mut rng, &cells, 6);
        prop_assert_eq!(dual(&dual(&phi)), phi);
    }

    /// Duality, pullback, and both pushforwards are linear over the integers.
    #[test]
    fn the_operations_are_linear(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let source = CellSet::all(random_complex(&mut rng, 6, 2));
        let target = CellSet::all(random_complex(&mut rng, 6, 2));
        let phi = random_function(&mut rng, &source, 4);
        let psi = random_function(&mut rng, &source, 4);
        let a = rng.gen_range(-3i64..=3);
        let b = rng.gen_range(-3i64..=3);
        let combo = phi.scale(a).add(&psi.scale(b)).expect("same space");

        prop_assert_eq!(
            dual(&combo),
            dual(&phi).scale(a).add(&dual(&psi).scale(b)).expect("same space")
        );
        if let Some(f) = random_map(&mut rng, &source, &target, 20) {
            let push = |x: &Function| pushforward_c(&f, x).expect("compact pushforward");
            prop_assert_eq!(push(&combo), push(&phi).scale(a).add(&push(&psi).scale(b)).expect("same space"));
            let push_plain = |x: &Function| pushforward(&f, x).expect("plain pushforward");
            prop_assert_eq!(
                push_plain(&combo),
                push_plain(&phi).scale(a).add(&push_plain(&psi).scale(b)).expect("same space")
            );

            let alpha = random_function(&mut rng, &target, 4);
            let beta = random_function(&mut rng, &target, 4);
            let tcombo = alpha.scale(a).add(&beta.scale(b)).expect("same space");
            let pull = |x: &Function| pullback(&f, x).expect("pullback");
            prop_assert_eq!(pull(&tcombo), pull(&alpha).scale(a).add(&pull(&beta).scale(b)).expect("same space"));
        }
    }

    /// Compact pushforward and pullback compose the way the maps do.
    #[test]
    fn pushforward_and_pullback_are_functorial(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let a = CellSet::all(random_complex(&mut rng, 5, 2));
        let b = CellSet::all(random_complex(&mut rng, 5, 2));
        let c = CellSet::all(random_complex(&mut rng, 5, 2));
        let (Some(f), ) = (random_map(&mut rng, &a, &b, 20), ) else { return Ok(()); };
        let (Some(g), ) = (random_map(&mut rng, &b, &c, 20), ) else { return Ok(()); };
        let gf = f.then(&g).expect("composable");

        let phi = random_function(&mut rng, &a, 5);
        prop_assert_eq!(
            pushforward_c(&gf, &phi).expect("composite"),
            pushforward_c(&g, &pushforward_c(&f, &phi).expect("first leg")).expect("second leg")
        );

        let psi = random_function(&mut rng, &c, 5);
        prop_assert_eq!(
            pullback(&gf, &psi).expect("composite"),
            pullback(&f, &pullback(&g, &psi).expect("outer leg")).expect("inner leg")
        );
    }

    /// A map defined on a whole finite complex is proper, and the plain and
    /// compact pushforwards agree along any proper map — real or not.
    #[test]
    fn proper_maps_collapse_the_two_pushforwards(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let source = CellSet::all(random_complex(&mut rng, 6, 2));
        let target = CellSet::all(random_complex(&mut rng, 6, 2));
        let Some(f) = random_map(&mut rng, &source, &target, 20) else { return Ok(()); };
        prop_assert!(f.is_proper(), "a full complex is closed in itself");
        let phi = random_function(&mut rng, &source, 5);
        prop_assert_eq!(
            pushforward(&f, &phi).expect("plain"),
            pushforward_c(&f, &phi).expect("compact")
        );
    }

    /// Projection formula: pushing φ · f*ψ forward is pushing φ and then
    /// multiplying by ψ.
    #[test]
    fn pushforward_satisfies_the_projection_formula(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let source = CellSet::all(random_complex(&mut rng, 6, 2));
        let target = CellSet::all(random_complex(&mut rng, 6, 2));
        let Some(f) = random_map(&mut rng, &source, &target, 20) else { return Ok(()); };
        let phi = random_function(&mut rng, &source, 4);
        let psi = random_function(&mut rng, &target, 4);
        let lhs = pushforward_c(
            &f,
            &phi.tensor(&pullback(&f, &psi).expect("pullback")).expect("same space"),
        )
        .expect("pushforward");
        let rhs = pushforward_c(&f, &phi)
            .expect("pushforward")
            .tensor(&psi)
            .expect("same space");
        prop_assert_eq!(lhs, rhs);
    }

    /// Cutting along any subset of the target commutes with the compact
    /// pushforward, using the exact preimage as the other side of the square.
    #[test]
    fn base_change_holds_on_random_squares(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let source = CellSet::all(random_complex(&mut rng, 6, 2));
        let target = CellSet::all(random_complex(&mut rng, 6, 2));
        let Some(f) = random_map(&mut rng, &source, &target, 20) else { return Ok(()); };
        let base = random_nonempty_cell_set(&mut rng, &target.complex().clone());
        let parts = constructible::models::square_components(&f, &base).expect("square sides");
        let phi = random_function(&mut rng, &source, 5);
        let pushed_then_cut = pullback(
            &parts.base_inclusion,
            &pushforward_c(&parts.map, &phi).expect("pushforward"),
        )
        .expect("cut");
        let cut_then_pushed = pushforward_c(
            &parts.restricted,
            &pullback(&parts.fiber_inclusion, &phi).expect("cut"),
        )
        .expect("pushforward");
        prop_assert_eq!(pushed_then_cut, cut_then_pushed);
    }

    /// The compactly supported count is additive over any partition into
    /// level sets, and the pieces reassemble the function.
    #[test]
    fn the_count_is_additive_over_stratifications(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let space = CellSet::all(random_complex(&mut rng, 7, 3));
        let phi = random_function(&mut rng, &space, 5);
        let strata = random_stratification(&mut rng, &space, 5);
        let mut total = 0i64;
        let mut glued = Function::zero(space.clone());
        for stratum in &strata {
            let piece = restrict(&phi, stratum).expect("restrict");
            total += euler_integral_c(&piece);
            glued = glued
                .add(&extend_by_zero(&piece, &space).expect("extend"))
                .expect("same space");
        }
        prop_assert_eq!(total, euler_integral_c(&phi));
        prop_assert_eq!(glued, phi);
    }

    /// Open-closed decomposition: restricting to an open subset and to its
    /// closed complement splits any function in two.
    #[test]
    fn open_closed_decomposition_splits_functions(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let space = CellSet::all(random_complex(&mut rng, 7, 3));
        let phi = random_function(&mut rng, &space, 5);
        let open = random_nonempty_cell_set(&mut rng, &space.complex().clone()).star();
        let closed = space.difference(&open).expect("complement");
        let mut glued = extend_by_zero(&restrict(&phi, &open).expect("open part"), &space)
            .expect("extend");
        if !closed.is_empty() {
            glued = glued
                .add(&extend_by_zero(&restrict(&phi, &closed).expect("closed part"), &space)
                    .expect("extend"))
                .expect("same space");
        }
        prop_assert_eq!(glued, phi);
    }

    /// Both counts are invariant under pushing: the compact count survives
    /// any compact pushforward, the plain count survives the plain one.
    #[test]
    fn the_counts_survive_pushforwards(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let source = CellSet::all(random_complex(&mut rng, 6, 2));
        let target = CellSet::all(random_complex(&mut rng, 6, 2));
        let Some(f) = random_map(&mut rng, &source, &target, 20) else { return Ok(()); };
        let phi = random_function(&mut rng, &source, 5);
        prop_assert_eq!(
            euler_integral_c(&pushforward_c(&f, &phi).expect("compact pushforward")),
            euler_integral_c(&phi)
        );
        prop_assert_eq!(
            euler_integral(&pushforward(&f, &phi).expect("plain pushforward")),
            euler_integral(&phi)
        );
    }

    /// Indicator functions count exactly like their cell sets.
    #[test]
    fn indicators_count_like_their_cell_sets(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let complex = random_complex(&mut rng, 7, 3);
        let space = CellSet::all(complex.clone());
        let subset = random_nonempty_cell_set(&mut rng, &complex);
        let indicator = Function::indicator(space, &subset).expect("subset of everything");
        prop_assert_eq!(euler_integral_c(&indicator), subset.chi_c());
    }

    /// Barycentric refinement changes the cells but neither count.
    #[test]
    fn refinement_preserves_both_counts(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let complex = random_complex(&mut rng, 6, 2);
        let cells = random_nonempty_cell_set(&mut rng, &complex);
        let phi = random_function(&mut rng, &cells, 5);
        let sd = Subdivision::new(complex);
        let refined = sd.carry(&cells).expect("refine the carrier");
        let values: Vec<i64> = refined
            .members()
            .iter()
            .map(|&id| phi.value(sd.carrier_of(id)))
            .collect();
        let carried = Function::new(refined, values).expect("carried function");
        prop_assert_eq!(euler_integral_c(&carried), euler_integral_c(&phi));
        prop_assert_eq!(euler_integral(&carried), euler_integral(&phi));
    }
}

proptest! {
    // Covers take 2^pieces inclusion-exclusion terms; keep the case count low.
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    /// Summing boundary values over the pattern of a random open cover
    /// reproduces the directly computed boundary values.
    #[test]
    fn chart_sums_match_direct_boundary_values(seed: u64) {
        let mut rng = rng_from_seed(seed);
        let complex = random_complex(&mut rng, 6, 2);
        let space = CellSet::all(complex.clone());
        let boundary = random_nonempty_cell_set(&mut rng, &complex).closure();
        let open = space.difference(&boundary).expect("complement of a closed set");
        if open.is_empty() {
            return Ok(());
        }
        let pieces = random_open_cover(&mut rng, &space, &boundary);
        if pieces.is_empty() || pieces.len() > 12 {
            return Ok(());
        }
        let phi = random_function(&mut rng, &open, 5);
        let glued = cech_sum(&phi, &space, &boundary, &pieces).expect("inclusion-exclusion");
        let direct = boundary_stalk(&phi, &space, &boundary).expect("direct boundary values");
        prop_assert_eq!(glued, direct);
    }
}
