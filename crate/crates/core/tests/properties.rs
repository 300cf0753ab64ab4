use dp_vc1::harness::generate::random_tree;
use dp_vc1::harness::sample_dataset;
use dp_vc1::learn::{partition, LearnParams, Learner, Representative};
use dp_vc1::mech::noiseless::{ArgMax, FixedMedian};
use dp_vc1::oracle::{littlestone_dimension, vc_dimension, Distribution};
use dp_vc1::{ConceptClass, Node, PointId, RandomSource};
use proptest::prelude::*;

fn class_strategy(max_n: usize) -> impl Strategy<Value = ConceptClass> {
    (1..=max_n, 1usize..=4, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(n, mc, rate, seed)| random_tree(n, mc, rate, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimensions_survive_f_representation(class in class_strategy(10), pick in any::<prop::sample::Index>()) {
        let f = pick.get(class.concepts()).clone();
        let cf = class.f_represent(&f).unwrap();
        prop_assert_eq!(vc_dimension(&cf).unwrap(), vc_dimension(&class).unwrap());
        prop_assert_eq!(littlestone_dimension(&cf).unwrap(), littlestone_dimension(&class).unwrap());
    }

    #[test]
    fn deterministic_closure_is_inside_target(
        class in class_strategy(40),
        pick in any::<prop::sample::Index>(),
        target in any::<prop::sample::Index>(),
        n in 0usize..30,
        seed in any::<u64>(),
    ) {
        let learner = Learner::new(&class, Representative::Index(pick.index(class.len()))).unwrap();
        let c = target.get(class.concepts());
        let d = Distribution::uniform(class.domain_size()).unwrap();
        let data = sample_dataset(&class, c, &d, n, &mut RandomSource::new(seed)).unwrap();
        let relabelled = data.relabel(learner.representative());
        let deepest = learner.tree().deepest_deterministic(&relabelled.examples).unwrap();
        let target_f = c.xor(learner.representative());
        prop_assert!(learner.tree().closure_set(deepest).is_subset(target_f.ones()));
    }

    #[test]
    fn at_most_one_candidate_is_reached(
        class in class_strategy(60),
        target in any::<prop::sample::Index>(),
        t in 1usize..8,
        extra in 0usize..40,
        z in 0u64..12,
        seed in any::<u64>(),
    ) {
        let learner = Learner::new(&class, Representative::First).unwrap();
        let c = target.get(class.concepts());
        let d = Distribution::uniform(class.domain_size()).unwrap();
        let mut rng = RandomSource::new(seed);
        let data = sample_dataset(&class, c, &d, t + extra, &mut rng).unwrap();
        let params = LearnParams::new(0.2, 0.2, 1.0, 1e-5).unwrap();
        let z = z.min(learner.tree().max_depth() as u64 + 1);
        let trace = learner.improper_with(&data, t, &params, &FixedMedian(z), &ArgMax, &mut rng).unwrap();
        prop_assert!(trace.q.iter().filter(|&&q| q > 0).count() <= 1);
        prop_assert_eq!(trace.y.len(), t);
        // the reached candidate, if any, lies on every deep enough subset's path
        for (&node, &y) in trace.deepest.iter().zip(&trace.y) {
            if z > 0 && y as u64 >= z {
                let anc = learner.tree().ancestor_at_depth(node, z as usize);
                prop_assert!(anc.point().is_some_and(|p| trace.p.contains(&p)));
            }
        }
    }

    #[test]
    fn partition_is_balanced(len in 1usize..200, t in 1usize..20, seed in any::<u64>()) {
        prop_assume!(t <= len);
        let data = dp_vc1::Dataset::from_pairs(&(0..len).map(|i| (i, i % 3 == 0)).collect::<Vec<_>>());
        let parts = partition(&data, t, &mut RandomSource::new(seed)).unwrap();
        prop_assert_eq!(parts.len(), t);
        let (lo, hi) = (len / t, len.div_ceil(t));
        prop_assert!(parts.iter().all(|p| (lo..=hi).contains(&p.len())));
        let mut seen: Vec<usize> = parts.iter().flat_map(|p| p.examples.iter().map(|e| e.point.index())).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..len).collect::<Vec<_>>());
    }

    #[test]
    fn node_json_roundtrip(raw in prop::option::of(any::<u32>())) {
        let node = raw.map_or(Node::Root, |p| Node::Point(PointId(p)));
        let json = serde_json::to_string(&node).unwrap();
        prop_assert_eq!(serde_json::from_str::<Node>(&json).unwrap(), node);
    }
}
