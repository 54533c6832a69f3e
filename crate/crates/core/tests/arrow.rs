use micromacro::numeric::q;
use micromacro::properties::loschmidt_counts;
use micromacro::random::{random_reversible, rng_from_seed, ReversionMode};
use micromacro::system::{System, SystemFile};
use rand::Rng;

#[test]
fn reversion_counts_agree_on_seeded_systems() {
    for seed in 0..500 {
        let mut rng = rng_from_seed(seed);
        let s = random_reversible(rng.random_range(1..12), ReversionMode::Plain, &mut rng);
        if !s.is_entropy_preserving() {
            continue;
        }
        for (back, fwd) in [(0, 0), (1, 2), (2, 1), (2, 3)] {
            for e in [q(0, 1), q(1, 4), q(1, 2)] {
                let c = loschmidt_counts(&s, back, fwd, &e).unwrap();
                assert!(c.arrow_counts_equal(), "seed {seed}");
                assert!(c.decrease_counts_equal(), "seed {seed}");
            }
            let strict = loschmidt_counts(&s, back, fwd, &q(0, 1)).unwrap();
            assert!(strict.neq_counts_equal(), "seed {seed}");
        }
    }
}

#[test]
fn nonequilibrium_counts_can_differ_for_positive_eps() {
    let file = SystemFile {
        n: 7,
        blocks: vec![vec![1], vec![0, 3], vec![2, 6], vec![4, 5]],
        alpha: vec![2, 3, 0, 1, 6, 5, 4],
        reversion: Some(vec![2, 1, 0, 3, 4, 5, 6]),
    };
    let s = System::from_file(file).unwrap();
    let c = loschmidt_counts(&s, 1, 2, &q(1, 2)).unwrap();
    assert_eq!((c.arrow_neq_exit, c.reversed_neq), (0, 1));
    assert!(loschmidt_counts(&s, 1, 2, &q(0, 1))
        .unwrap()
        .neq_counts_equal());
}
