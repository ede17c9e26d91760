use blockdesign::vortex::{iterate_pipeline, PipelineOptions};
use blockdesign::{Complex, ParamSet};

#[test]
fn pipeline_solves_small_triple_systems() {
    for n in [7usize, 9, 13, 15] {
        for seed in 0..3u64 {
            let g = Complex::complete(n, 5);
            let p = ParamSet::new(3, 2).with_seed(seed);
            let t = std::time::Instant::now();
            let rep = iterate_pipeline(&g, 3, 2, &p, &PipelineOptions::default()).unwrap();
            eprintln!("n={n} seed={seed} ok={} attempts={} sizes={:?} {:?} {:?}", rep.success, rep.attempts, rep.vortex_sizes, t.elapsed(), rep.failure);
            assert!(rep.success);
            assert_eq!(rep.blocks.len(), n * (n - 1) / 6);
        }
    }
}

#[test]
fn pipeline_is_deterministic() {
    let g = Complex::complete(13, 5);
    let p = ParamSet::new(3, 2).with_seed(11);
    let a = iterate_pipeline(&g, 3, 2, &p, &PipelineOptions::default()).unwrap();
    let b = iterate_pipeline(&g, 3, 2, &p, &PipelineOptions::default()).unwrap();
    assert_eq!(a, b);
}
