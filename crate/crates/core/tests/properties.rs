use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use eqprop_core::braids::{BraidWord, LabelledBraid, RibbonBraid};
use eqprop_core::composites::{span_equiv, CompositeMorphism, SplitStrategy};
use eqprop_core::crossed::{rewrite_past_mono, Element, Family};
use eqprop_core::groups::{skeletal_relabel, tuple_act, FiniteGroup, GroupTuple, Perm};
use eqprop_core::ncsets::NCSetMap;
use eqprop_core::ordmaps::OrderedMap;
use eqprop_core::semantics::{exterior_model, group_algebra_model, trivial_action, ModMatrix};

fn s3() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::symmetric3())
}

fn c2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2))
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Perm::from_images(images).unwrap())
}

fn tuple(group: Arc<FiniteGroup>, n: usize) -> impl Strategy<Value = GroupTuple> {
    let order = group.order();
    prop::collection::vec(0..order, n).prop_map(move |xs| GroupTuple::new(&group, xs).unwrap())
}

fn braid_word(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let g = n as i32 - 1;
        prop::collection::vec((1..=g).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]), 0..=max_len)
            .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
    })
}

fn monotone(n: usize, m: usize) -> impl Strategy<Value = OrderedMap> {
    let all = OrderedMap::enumerate(n, m);
    prop::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tuple_action_matches_position_oracle(sigma in perm(4), x in tuple(s3(), 4)) {
        let acted = tuple_act(&sigma, &x).unwrap();
        for j in 0..4 {
            prop_assert_eq!(acted.entries()[sigma.apply(j)], x.entries()[j]);
        }
    }

    #[test]
    fn tuple_action_is_a_left_action(sigma in perm(4), tau in perm(4), x in tuple(s3(), 4)) {
        let lhs = tuple_act(&sigma.compose(&tau), &x).unwrap();
        let rhs = tuple_act(&sigma, &tuple_act(&tau, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_of_perms_is_function_composition(sigma in perm(5), tau in perm(5)) {
        let st = sigma.compose(&tau);
        for j in 0..5 {
            prop_assert_eq!(st.apply(j), sigma.apply(tau.apply(j)));
        }
        prop_assert!(sigma.compose(&sigma.inverse()).is_identity());
    }

    #[test]
    fn relabelling_is_contravariant(f in monotone(3, 4), g in monotone(2, 3), x in tuple(s3(), 4)) {
        let fg = f.compose(&g).unwrap();
        let lhs = skeletal_relabel(fg.values(), &x).unwrap();
        let rhs = skeletal_relabel(g.values(), &skeletal_relabel(f.values(), &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monotone_interchange(
        f in monotone(2, 2), f2 in monotone(1, 2), g in monotone(2, 3), g2 in monotone(2, 1),
    ) {
        let lhs = g.tensor(&g2).compose(&f.tensor(&f2)).unwrap();
        let rhs = g.compose(&f).unwrap().tensor(&g2.compose(&f2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn decomposition_recomposes(f in (0usize..=5, 1usize..=5).prop_flat_map(|(n, m)| monotone(n, m))) {
        prop_assert_eq!(f.decompose().recompose().unwrap(), f);
    }

    #[test]
    fn normal_form_ignores_relations(w in braid_word(5, 12), at in 0usize..13, pick in 0usize..4, i in 1i32..4) {
        let n = w.strands() as i32;
        let i = 1 + (i - 1) % (n - 1);
        let at = at.min(w.len());
        let insert: Vec<i32> = match pick {
            0 => vec![i, -i],
            1 => vec![-i, i],
            2 if i + 1 < n => vec![i, i + 1, i, -(i + 1), -i, -(i + 1)],
            3 if i + 2 < n => vec![i, i + 2, -i, -(i + 2)],
            _ => Vec::new(),
        };
        let mut letters = w.letters().to_vec();
        letters.splice(at..at, insert);
        let v = BraidWord::new(w.strands(), letters).unwrap();
        prop_assert_eq!(v.normal_form(), w.normal_form());
        let once = w.normalized();
        prop_assert_eq!(once.normalized(), once.clone());
        prop_assert!(once.equivalent(&w));
    }

    #[test]
    fn permutation_is_a_homomorphism(w in braid_word(5, 10), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let letters: Vec<i32> = (0..8)
            .map(|_| {
                let g = rand::Rng::gen_range(&mut rng, 1..w.strands() as i32);
                if rand::Rng::gen_bool(&mut rng, 0.5) { g } else { -g }
            })
            .collect();
        let v = BraidWord::new(w.strands(), letters).unwrap();
        prop_assert_eq!(
            w.compose(&v).unwrap().underlying_permutation(),
            w.underlying_permutation().compose(&v.underlying_permutation())
        );
    }

    #[test]
    fn cabling_is_functorial(a in braid_word(4, 6), seed in any::<u64>()) {
        let n = a.strands();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let letters: Vec<i32> = (0..6)
            .map(|_| {
                let g = rand::Rng::gen_range(&mut rng, 1..n as i32);
                if rand::Rng::gen_bool(&mut rng, 0.5) { g } else { -g }
            })
            .collect();
        let b = BraidWord::new(n, letters).unwrap();
        let mult: Vec<usize> = (0..n).map(|_| rand::Rng::gen_range(&mut rng, 0..=2)).collect();
        let moved = b.underlying_permutation().act(&mult);
        let lhs = a.compose(&b).unwrap().cable(&mult).unwrap();
        let rhs = a.cable(&moved).unwrap().compose(&b.cable(&mult).unwrap()).unwrap();
        prop_assert!(lhs.equivalent(&rhs));
    }

    #[test]
    fn zero_twist_ribbons_compose_like_braids(a in braid_word(4, 8)) {
        let n = a.strands();
        let b = a.inverse();
        let ra = RibbonBraid::new(a.clone(), vec![0; n]).unwrap();
        let rb = RibbonBraid::new(b.clone(), vec![0; n]).unwrap();
        let composed = ra.compose(&rb).unwrap();
        prop_assert!(composed.twists().iter().all(|&t| t == 0));
        prop_assert!(composed.braid().equivalent(&a.compose(&b).unwrap()));
    }

    #[test]
    fn braid_rewrites_project_to_symmetric(seed in any::<u64>(), n in 1usize..=3, m in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = s3();
        let phis = OrderedMap::enumerate(n, m);
        let phi = &phis[rand::Rng::gen_range(&mut rng, 0..phis.len())];
        let j = Element::random(Family::Braid, &g, m, 6, &mut rng);
        let braided = rewrite_past_mono(&j, phi).unwrap();
        let flat = rewrite_past_mono(&Element::Perm(j.to_symmetric()), phi).unwrap();
        prop_assert_eq!(&braided.new_mono, &flat.new_mono);
        prop_assert_eq!(Element::Perm(braided.new_elt.to_symmetric()), flat.new_elt);
    }

    #[test]
    fn split_strategy_does_not_matter(seed in any::<u64>(), fam in prop::sample::select(vec![Family::Symmetric, Family::Braid])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = c2();
        let dims: Vec<usize> = (0..3).map(|_| rand::Rng::gen_range(&mut rng, 0..=3)).collect();
        let f = CompositeMorphism::random(fam, &g, dims[0], dims[1], 3, &mut rng);
        let h = CompositeMorphism::random(fam, &g, dims[1], dims[2], 3, &mut rng);
        let left = h.compose_with(&f, SplitStrategy::LeftNested).unwrap();
        let right = h.compose_with(&f, SplitStrategy::RightNested).unwrap();
        let seeded = h.compose_with(&f, SplitStrategy::Seeded(seed)).unwrap();
        prop_assert!(span_equiv(&left.to_span(), &right.to_span()).unwrap());
        prop_assert!(span_equiv(&left.to_span(), &seeded.to_span()).unwrap());
    }

    #[test]
    fn op_is_an_involutive_antihomomorphism(
        seed in any::<u64>(), fam in prop::sample::select(vec![Family::Symmetric, Family::Hyperoctahedral]),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = s3();
        let dims: Vec<usize> = (0..3).map(|_| rand::Rng::gen_range(&mut rng, 0..=2)).collect();
        let f = CompositeMorphism::random(fam, &g, dims[0], dims[1], 2, &mut rng);
        let h = CompositeMorphism::random(fam, &g, dims[1], dims[2], 2, &mut rng);
        prop_assert_eq!(f.op().op(), f.clone());
        prop_assert_eq!(h.compose(&f).unwrap().op(), f.op().compose(&h.op()).unwrap());
    }

    #[test]
    fn block_symmetry_is_natural(seed in any::<u64>(), a in 0usize..=2, b in 0usize..=2, a2 in 0usize..=2, b2 in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = s3();
        let (Some(f), Some(h)) = (NCSetMap::random(&g, a, a2, &mut rng), NCSetMap::random(&g, b, b2, &mut rng)) else {
            return Ok(());
        };
        let lhs = NCSetMap::symmetry(&g, a2, b2).compose(&f.tensor(&h)).unwrap();
        let rhs = h.tensor(&f).compose(&NCSetMap::symmetry(&g, a, b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_symmetry_hexagon(a in 0usize..=3, b in 0usize..=3, c in 0usize..=3) {
        let g = c2();
        let lhs = NCSetMap::symmetry(&g, a, b + c);
        let rhs = NCSetMap::identity(&g, b)
            .tensor(&NCSetMap::symmetry(&g, a, c))
            .compose(&NCSetMap::symmetry(&g, a, b).tensor(&NCSetMap::identity(&g, c)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn equivalent_spans_evaluate_equally(seed in any::<u64>(), n in 0usize..=2, m in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = FiniteGroup::cyclic(2);
        let g = c2();
        let model = group_algebra_model(5, &h, Arc::clone(&g), &trivial_action(&h, &g)).unwrap();
        let c = CompositeMorphism::random(Family::Symmetric, &g, n, m, 3, &mut rng);
        // precomposing both legs with a labelled bijection keeps the class
        let p = c.middle();
        let k = Element::random(Family::Symmetric, &g, p, 4, &mut rng);
        let span = c.to_span();
        let moved = eqprop_core::composites::SpanMorphism::new(
            eqprop_core::composites::DJGMorphism::new(span.in_leg.elt.compose(&k).unwrap(), span.in_leg.mono.clone()).unwrap(),
            eqprop_core::composites::DJGMorphism::new(span.out_leg.elt.compose(&k).unwrap(), span.out_leg.mono.clone()).unwrap(),
        ).unwrap();
        prop_assert!(span_equiv(&span, &moved).unwrap());
        let lhs = model.eval_djg(&span.out_leg).unwrap().mul(&model.eval_djg_op(&span.in_leg).unwrap()).unwrap();
        let rhs = model.eval_djg(&moved.out_leg).unwrap().mul(&model.eval_djg_op(&moved.in_leg).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn signed_symmetry_squares_away(w in braid_word(3, 8)) {
        let model = exterior_model(5).unwrap();
        let g = Arc::clone(model.group());
        let n = w.strands();
        let squared: Vec<i32> = w.letters().iter().flat_map(|&l| [l, l]).collect();
        let b = LabelledBraid::new(GroupTuple::identity(&g, n), BraidWord::new(n, squared).unwrap(), None).unwrap();
        prop_assert!(model.eval_element(&Element::Braid(b)).unwrap().is_identity());
        let plain = LabelledBraid::new(GroupTuple::identity(&g, n), w.clone(), None).unwrap();
        let flat = model.permutation(&w.underlying_permutation());
        prop_assert_eq!(model.eval_element(&Element::Braid(plain)).unwrap(), flat);
    }
}

#[test]
fn signed_hexagon() {
    let model = exterior_model(5).unwrap();
    let id1 = ModMatrix::identity(5, 4);
    let c = model.symmetry();
    // moving one factor past two equals two single crossings
    let past_two = model.permutation(&Perm::from_images(vec![2, 0, 1]).unwrap());
    let steps = id1.kron(&c).mul(&c.kron(&id1)).unwrap();
    assert_eq!(past_two, steps);
    let past_one = model.permutation(&Perm::from_images(vec![1, 2, 0]).unwrap());
    let steps = c.kron(&id1).mul(&id1.kron(&c)).unwrap();
    assert_eq!(past_one, steps);
}

#[test]
fn labelled_permutations_form_a_group() {
    for g in [c2(), Arc::new(FiniteGroup::cyclic(3)), s3()] {
        for n in 0..=2 {
            let all = eqprop_core::groups::LabelledPermutation::enumerate(&g, n, false);
            let fact: usize = (1..=n).product();
            assert_eq!(all.len(), g.order().pow(n as u32) * fact);
            for a in &all {
                assert!(a.compose(&a.inverse()).unwrap().is_identity());
                for b in &all {
                    let ab = a.compose(b).unwrap();
                    for c in all.iter().take(12) {
                        assert_eq!(ab.compose(c).unwrap(), a.compose(&b.compose(c).unwrap()).unwrap());
                    }
                }
            }
        }
    }
}
