mod common;

use common::star_contains_vertex;
use plconvex::complex::{emit_surface, extract_star, parse_surface, validate, Format, PlSurface, Rank};
use plconvex::generator::{generate, polytopes, random_affine_map, Family, GenSpec, Generated};
use plconvex::scalar::{int, rat};
use plconvex::verifier::{check_convexity, Mode, Verdict};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, points: usize, dent: bool) -> (PlSurface, Option<u32>) {
    let base = GenSpec::random_hull(3, points, seed);
    let spec = if dent { GenSpec::dented(base, rat(1 + (seed % 8) as i64, 10)) } else { base };
    match generate(&spec).unwrap() {
        Generated::Surface { surface, dented_vertex } => (surface, dented_vertex),
        Generated::Fan(_) => unreachable!(),
    }
}

fn permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaling_keeps_the_verdict(seed in 0u64..1000, dent in any::<bool>(), num in 1i64..100, den in 1i64..100) {
        let (s, _) = instance(seed, 30, dent);
        let k = rat(num, den);
        let a: Vec<Vec<_>> = (0..3).map(|i| (0..3).map(|j| if i == j { k.clone() } else { int(0) }).collect()).collect();
        let scaled = s.mapped_affine(&a, &[int(0), int(0), int(0)]);
        prop_assert_eq!(check_convexity(&s, Mode::exact(0)).verdict, check_convexity(&scaled, Mode::exact(0)).verdict);
    }

    #[test]
    fn affine_maps_keep_the_verdict(seed in 0u64..1000, dent in any::<bool>()) {
        let (s, _) = instance(seed, 30, dent);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = random_affine_map(3, &mut rng);
        let mapped = s.mapped_affine(&a, &b);
        let before = check_convexity(&s, Mode::exact(0));
        let after = check_convexity(&mapped, Mode::exact(0));
        prop_assert_eq!(before.verdict, after.verdict);
        prop_assert_eq!(before.counts, after.counts);
    }

    #[test]
    fn reindexing_keeps_the_verdict(seed in 0u64..1000, dent in any::<bool>()) {
        let (s, dented) = instance(seed, 30, dent);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let p = &s.poset;
        let vp = permutation(p.num_vertices(), &mut rng);
        let rp = permutation(p.count(Rank::Ridge), &mut rng);
        let fp = permutation(p.count(Rank::Facet), &mut rng);
        let r = s.reindexed(&vp, &vp, &rp, &fp);
        prop_assert!(validate(&r).is_valid());
        let report = check_convexity(&r, Mode::exact(0));
        prop_assert_eq!(check_convexity(&s, Mode::exact(0)).verdict, report.verdict);
        if let (Some(v), Some(w)) = (dented, report.witness) {
            prop_assert!(star_contains_vertex(&r, w.face.index, vp[v as usize]));
        }
    }

    #[test]
    fn plposet_round_trip_is_identity(seed in 0u64..1000, dent in any::<bool>()) {
        let (s, _) = instance(seed, 25, dent);
        let text = emit_surface(&s, Format::PlPoset).unwrap();
        prop_assert_eq!(parse_surface(&text, Format::PlPoset).unwrap(), s);
    }

    #[test]
    fn off_round_trip_is_byte_stable(seed in 0u64..1000, dent in any::<bool>()) {
        let (s, _) = instance(seed, 25, dent);
        let text = emit_surface(&s, Format::Off).unwrap();
        let back = parse_surface(&text, Format::Off).unwrap();
        prop_assert_eq!(emit_surface(&back, Format::Off).unwrap(), text);
        prop_assert_eq!(check_convexity(&back, Mode::exact(0)).verdict, check_convexity(&s, Mode::exact(0)).verdict);
    }
}

fn canonical() -> Vec<PlSurface> {
    vec![
        polytopes::cube(),
        polytopes::simplex(3),
        polytopes::cross_polytope(3),
        polytopes::dodecahedron(),
        polytopes::hypercube(4),
        polytopes::simplex(4),
        polytopes::cross_polytope(4),
    ]
}

#[test]
fn stars_are_flanked_by_their_facets() {
    let mut all = canonical();
    for seed in 0..10 {
        all.push(instance(seed, 40, seed % 2 == 0).0);
    }
    for s in &all {
        let p = &s.poset;
        for f in 0..p.count(Rank::Sub) {
            let star = extract_star(p, f).unwrap();
            let k = star.len();
            for i in 0..k {
                let (ridge, after) = star.cycle[i];
                let before = star.cycle[(i + k - 1) % k].1;
                let mut got = [before, after];
                got.sort_unstable();
                let mut want = p.containing(Rank::Ridge, ridge as usize).to_vec();
                want.sort_unstable();
                assert_eq!(got.to_vec(), want);
            }
        }
    }
}

#[test]
fn generated_surfaces_validate() {
    for s in canonical() {
        assert!(validate(&s).is_valid());
    }
    for seed in 0..20 {
        assert!(validate(&instance(seed, 20 + seed as usize * 5, false).0).is_valid());
        assert!(validate(&instance(seed, 20 + seed as usize * 5, true).0).is_valid());
    }
}

#[test]
fn curated_invalid_fixtures_are_rejected() {
    let cube = polytopes::cube();
    let coords = cube.coords().unwrap().to_vec();
    let quads: Vec<Vec<u32>> = (0..6).map(|f| cube.polygon(f)).collect();
    let open = PlSurface::from_polygons(coords.clone(), &quads[1..]).unwrap();
    assert!(!validate(&open).is_valid());
    // Two tetrahedra sharing a vertex: the link of the shared vertex is two cycles.
    let mut c2 = vec![vec![int(0), int(0), int(0)], vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]];
    c2.extend([vec![int(-1), int(0), int(0)], vec![int(0), int(-1), int(0)], vec![int(0), int(0), int(-1)]]);
    let tris: Vec<Vec<u32>> = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3], vec![0, 4, 5], vec![0, 4, 6], vec![0, 5, 6], vec![4, 5, 6]];
    let pinched = PlSurface::from_polygons(c2, &tris).unwrap();
    assert!(!validate(&pinched).is_valid());
    assert_eq!(check_convexity(&pinched, Mode::exact(0)).verdict, Verdict::Invalid);
    // Non-planar quad.
    let mut bent = coords;
    bent[7] = vec![int(1), int(1), rat(3, 2)];
    let bent = PlSurface::from_polygons(bent, &quads).unwrap();
    assert!(!validate(&bent).is_valid());
}

#[test]
fn same_seed_same_bytes() {
    for seed in 0..5 {
        let a = emit_surface(&instance(seed, 60, true).0, Format::Off).unwrap();
        let b = emit_surface(&instance(seed, 60, true).0, Format::Off).unwrap();
        assert_eq!(a, b);
    }
    let spec = GenSpec::new(4, Family::RandomHull, 5, 3);
    let a = emit_surface(generate(&spec).unwrap().surface().unwrap(), Format::PlPoset).unwrap();
    let b = emit_surface(generate(&spec).unwrap().surface().unwrap(), Format::PlPoset).unwrap();
    assert_eq!(a, b);
}
