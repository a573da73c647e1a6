//! Single-thread vs. full rayon pool on the parallel stages.
//!
//! Build with `--no-default-features` to time the sequential fallback; both
//! pool sizes then run the same sequential code.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::ThreadPool;

use uvlabel::ingest::{pair_stream, CaptureMode};
use uvlabel::registration::{estimate_homography_ransac, Correspondence, RansacConfig};
use uvlabel::segmentation::{annotate_pairs, AnnotateConfig};
use uvlabel::synth::{generate_stream, Background, BlobSpec, CameraMotion, SceneSpec, Shape};
use uvlabel::Homography;

fn scene() -> SceneSpec {
    SceneSpec {
        image_size: [160, 120],
        background: Background::RandomTexture {
            cell: 4.0,
            low: 0,
            high: 255,
        },
        blobs: vec![BlobSpec {
            label: 1,
            emission: [255, 40, 0],
            shape: Shape::Ellipse {
                cx: 80.0,
                cy: 60.0,
                rx: 25.0,
                ry: 18.0,
                angle: 0.4,
            },
            velocity: [0.0, 0.0],
            albedo: None,
        }],
        camera_motion: CameraMotion {
            max_translation: 6.0,
            max_rotation: 0.01,
        },
        uv_emission_gain: 0.6,
        ambient_level: 120,
        regular_light: 0,
        noise_sigma: 2.0,
        camera_rate: 30.0,
        seed: 1,
    }
}

fn pools() -> Vec<(&'static str, ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("1-thread", one), ("all-threads", all)]
}

fn correspondences() -> Vec<Correspondence> {
    let h = Homography::rigid_about(80.0, 60.0, 0.05, 4.0, -3.0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..200)
        .map(|i| {
            let src = (rng.random_range(0.0..160.0), rng.random_range(0.0..120.0));
            let dst = if i % 2 == 0 {
                h.apply(src.0, src.1).unwrap()
            } else {
                (rng.random_range(0.0..160.0), rng.random_range(0.0..120.0))
            };
            Correspondence::new(src, dst)
        })
        .collect()
}

fn bench(c: &mut Criterion) {
    let spec = scene();
    let stream = generate_stream(&spec, 16).unwrap();
    let pairs = pair_stream(&stream.frames).unwrap();
    let palette = spec.suggested_palette().unwrap();
    let mut cfg = AnnotateConfig::new(CaptureMode::Ambient);
    cfg.moving_camera = true;
    let corr = correspondences();

    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("annotate_8_pairs_aligned", name), |b| {
            b.iter(|| pool.install(|| annotate_pairs(&pairs, &palette, &cfg)))
        });
        group.bench_function(BenchmarkId::new("ransac_200_points", name), |b| {
            b.iter(|| {
                pool.install(|| {
                    estimate_homography_ransac(&corr, &RansacConfig::default()).unwrap()
                })
            })
        });
        group.bench_function(BenchmarkId::new("synth_16_frames", name), |b| {
            b.iter(|| pool.install(|| generate_stream(&spec, 16).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
