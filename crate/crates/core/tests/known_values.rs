use arithline::galois_field::{make_field, norm_to};
use arithline::geometry::OneForm;
use arithline::pipeline::{enriched_count, enriched_count_with, random_surface, weighted_count, PipelineError, SurfaceSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn degrees(spec: &SurfaceSpec) -> Vec<usize> {
    let r = enriched_count(spec, 0).unwrap();
    let mut d: Vec<usize> = r.lines.iter().map(|l| l.line.degree).collect();
    d.sort();
    d
}

#[test]
fn diagonal_pencil_over_f17() {
    let spec = SurfaceSpec::diagonal_pencil(17, 1).unwrap();
    let r = enriched_count(&spec, 0).unwrap();
    assert_eq!(degrees(&spec), vec![2; 8]);
    assert!(r.lines.iter().all(|l| l.local_class.is_square));
    // Tr<1> from a quadratic extension has nonsquare discriminant
    assert!(r.lines.iter().all(|l| l.local_form.rank() == 2 && !l.local_form.disc_is_square()));
    assert!(r.is_8h);
    assert_eq!(weighted_count(&r), 16);
}

#[test]
fn diagonal_pencil_over_f5_splits_completely() {
    let spec = SurfaceSpec::diagonal_pencil(5, 1).unwrap();
    let r = enriched_count(&spec, 0).unwrap();
    assert_eq!(r.qhat_used, Some(3));
    assert_eq!(degrees(&spec), vec![1; 16]);
    assert!(r.lines.iter().all(|l| l.local_class.is_square));
    assert!(r.is_8h);
    assert_eq!(r.base_total().field(), spec.field());
}

#[test]
fn diagonal_pencil_over_f7_and_f13() {
    for p in [7, 13] {
        let spec = SurfaceSpec::diagonal_pencil(p, 1).unwrap();
        let r = enriched_count(&spec, 0).unwrap();
        assert_eq!(r.qhat_used, Some(3));
        assert_eq!(degrees(&spec), vec![2; 8]);
        assert!(r.is_8h, "p = {p}");
    }
}

#[test]
fn diagonal_pencil_over_f9_is_singular() {
    // the weights 0..4 are not distinct mod 3
    let spec = SurfaceSpec::diagonal_pencil(3, 2).unwrap();
    assert_eq!(enriched_count(&spec, 0).unwrap_err(), PipelineError::NotSmooth);
}

/// Replacing `s` by `s'` multiplies each line's class by `(s'/s)(L)` (the
/// twist has odd total weight), so the total discriminant changes by the
/// product of the norms of these ratios. Whether the total is `8H` therefore
/// depends on the one-form.
#[test]
fn one_form_change_rescales_discriminant() {
    let k = make_field(17, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut flips = 0;
    for seed in 0..3 {
        let spec = random_surface(&k, seed).unwrap().spec;
        let base = enriched_count(&spec, seed).unwrap();
        for _ in 0..6 {
            let s = OneForm((0..10).map(|_| k.random(&mut rng)).collect());
            let Ok(r) = enriched_count_with(&spec, seed, Some(&s)) else {
                continue;
            };
            let mut ratio_square = true;
            for (a, b) in base.lines.iter().zip(&r.lines) {
                assert_eq!(a.line.canon_key, b.line.canon_key);
                let p = &a.line.plucker;
                let q = &(&s.eval(p).unwrap() / &base.one_form.eval(p).unwrap());
                if !norm_to(q, &k).unwrap().is_square().unwrap() {
                    ratio_square = !ratio_square;
                }
            }
            let changed = base.total.disc_is_square() != r.total.disc_is_square();
            assert_eq!(changed, !ratio_square);
            if changed {
                flips += 1;
            }
        }
    }
    assert!(flips > 0, "some one-form changes the discriminant");
}
