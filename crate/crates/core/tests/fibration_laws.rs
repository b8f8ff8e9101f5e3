use famfib_core::container::PfinFunctor;
use famfib_core::finset::{split_pair, STAR};
use famfib_core::stdlib;
use famfib_core::testkit::{container_indices, random_map, random_predicate, random_set};
use famfib_core::{FinIndexedSet, FinitaryFunctor, IndexedMap, Predicate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Counts fibre-preserving witness maps `p → q` by trying every function
/// between the flattened witness sets, index by index.
pub fn brute_force_hom_count(p: &Predicate, q: &Predicate) -> u128 {
    let base = p.base();
    let mut total: u128 = 1;
    for i in 0..base.num_indices() {
        let dom: Vec<usize> = (0..base.len_at(i))
            .flat_map(|x| std::iter::repeat_n(x, p.witnesses(i, x).len()))
            .collect();
        let cod: Vec<usize> = (0..base.len_at(i))
            .flat_map(|x| std::iter::repeat_n(x, q.witnesses(i, x).len()))
            .collect();
        let mut count = 0u128;
        let mut choice = vec![0usize; dom.len()];
        if cod.is_empty() && !dom.is_empty() {
            return 0;
        }
        'all: loop {
            if choice.iter().zip(&dom).all(|(&c, &x)| cod[c] == x) {
                count += 1;
            }
            for slot in choice.iter_mut() {
                *slot += 1;
                if *slot < cod.len() {
                    continue 'all;
                }
                *slot = 0;
            }
            break;
        }
        total *= count;
    }
    total
}

#[test]
fn reindexing_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    while checked < 100 {
        let x = random_set(&mut rng, &["i", "j"], 3, "x");
        let y = random_set(&mut rng, &["i", "j"], 3, "y");
        let z = random_set(&mut rng, &["i", "j"], 3, "z");
        let (Some(f), Some(g)) = (random_map(&mut rng, &x, &y), random_map(&mut rng, &y, &z))
        else {
            continue;
        };
        let p = random_predicate(&mut rng, &z, 2);
        assert_eq!(p.reindex(&IndexedMap::identity(&z)).unwrap(), p);
        let gf = f.then(&g).unwrap();
        assert_eq!(
            p.reindex(&gf).unwrap(),
            p.reindex(&g).unwrap().reindex(&f).unwrap()
        );
        assert_eq!(
            Predicate::truth(&y).reindex(&f).unwrap(),
            Predicate::truth(&x)
        );
        checked += 1;
    }
}

#[test]
fn opreindexing_preserves_witness_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    while checked < 50 {
        let x = random_set(&mut rng, &["i", "j"], 4, "x");
        let y = random_set(&mut rng, &["i", "j"], 3, "y");
        let Some(f) = random_map(&mut rng, &x, &y) else {
            continue;
        };
        let p = random_predicate(&mut rng, &x, 3);
        let s = p.opreindex(&f).unwrap();
        assert_eq!(s.total_witnesses(), p.total_witnesses());
        // Every tagged witness sits above the image of its tag.
        for (i, yy) in y.positions() {
            for w in s.witnesses(i, yy) {
                let (xl, orig) = split_pair(w).unwrap();
                let xi = x.elem_pos(i, &xl).unwrap();
                assert_eq!(f.apply_pos(i, xi), yy);
                assert!(p.witnesses(i, xi).contains(&orig));
            }
        }
        checked += 1;
    }
}

#[test]
fn sigma_is_left_adjoint_to_reindexing() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 100 {
        let x = random_set(&mut rng, &["i", "j"], 3, "x");
        let y = random_set(&mut rng, &["i", "j"], 3, "y");
        let Some(f) = random_map(&mut rng, &x, &y) else {
            continue;
        };
        let p = random_predicate(&mut rng, &x, 2);
        let q = random_predicate(&mut rng, &y, 2);
        let left = brute_force_hom_count(&p.opreindex(&f).unwrap(), &q);
        let right = brute_force_hom_count(&p, &q.reindex(&f).unwrap());
        assert_eq!(left, right);
        assert_eq!(
            left,
            p.opreindex(&f)
                .unwrap()
                .vertical_morphism_count(&q)
                .unwrap()
        );
        checked += 1;
    }
}

#[test]
fn comprehension_of_truth_is_the_base() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let x = random_set(&mut rng, &["i", "j", "k"], 4, "x");
        let (total, pi) = Predicate::truth(&x).comprehension();
        for i in 0..x.num_indices() {
            assert_eq!(total.len_at(i), x.len_at(i));
        }
        assert!(pi.is_injective() && pi.is_surjective());
        assert!(total
            .fibre(0)
            .iter()
            .all(|l| split_pair(l).unwrap().1 == STAR));
    }
}

fn random_for(
    rng: &mut ChaCha8Rng,
    f: &dyn FinitaryFunctor,
    max: usize,
    prefix: &str,
) -> FinIndexedSet {
    match stdlib::containers()
        .into_iter()
        .find(|e| e.name == f.name())
    {
        Some(e) => random_set(
            rng,
            &container_indices(e.container.as_ref().unwrap()),
            max,
            prefix,
        ),
        None => random_set(rng, &["*"], max, prefix),
    }
}

#[test]
fn every_stdlib_functor_obeys_the_functor_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for entry in stdlib::functors() {
        let f = entry.functor.as_ref();
        let max = if entry.name == "lts:a,b" { 2 } else { 3 };
        let mut checked = 0;
        while checked < 100 {
            let x = random_for(&mut rng, f, max, "x");
            let y = random_for(&mut rng, f, max, "y");
            let z = random_for(&mut rng, f, max, "z");
            let (Some(g), Some(h)) = (random_map(&mut rng, &x, &y), random_map(&mut rng, &y, &z))
            else {
                continue;
            };
            let fx = f.apply_obj(&x).unwrap();
            assert_eq!(
                f.apply_map(&IndexedMap::identity(&x)).unwrap(),
                IndexedMap::identity(&fx),
                "{}",
                entry.name
            );
            let lhs = f.apply_map(&g.then(&h).unwrap()).unwrap();
            let rhs = f
                .apply_map(&g)
                .unwrap()
                .then(&f.apply_map(&h).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "{}", entry.name);
            for (i, u) in fx.positions() {
                assert!(f.contains(&x, fx.index_label(i), fx.elem_label(i, u)));
            }
            checked += 1;
        }
    }
}

#[test]
fn extension_cardinality_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for entry in stdlib::containers() {
        let c = entry.container.unwrap();
        for _ in 0..40 {
            let x = random_set(&mut rng, &container_indices(&c), 4, "x");
            let ext = c.extension(&x).unwrap();
            for i in 0..c.num_indices() {
                let formula: usize = (0..c.shapes(i).len())
                    .map(|s| {
                        c.positions(i, s)
                            .iter()
                            .map(|p| x.len_at(p.target))
                            .product::<usize>()
                    })
                    .sum();
                assert_eq!(ext.len_at(i), formula);
            }
            // The functor action keeps the shape.
            let y = random_set(&mut rng, &container_indices(&c), 3, "y");
            if let Some(g) = random_map(&mut rng, &x, &y) {
                let fg = c.extension_map(&g).unwrap();
                for (i, u) in ext.positions() {
                    let before = c.decode(&x, i, ext.elem_label(i, u)).unwrap();
                    let after = c.decode(&y, i, fg.apply(i, u)).unwrap();
                    assert_eq!(before.shape, after.shape);
                }
            }
        }
    }
}

#[test]
fn powerset_has_two_to_the_n_elements() {
    for n in 0..=6 {
        let x = FinIndexedSet::single("*", (0..n).map(|k| format!("e{k}"))).unwrap();
        assert_eq!(PfinFunctor.apply_obj(&x).unwrap().total_len(), 1 << n);
    }
}
