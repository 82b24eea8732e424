//! Brushes on small instances against the dense-matrix pipelines in `qbrush-oracle`.

use qbrush_core::backend::{Backend, ExactBackend};
use qbrush_core::brushes::{
    aquarela_colors, cloning_constraint, heisen_colors, map_singular_values, smudge_colors, solve_s1, svd_encode,
    trotter_step_circuit, uaqc_circuit, AquarelaParams, HeisenMode, HeisenParams, SingularTriple, SmudgeControl,
    SmudgeParams,
};
use qbrush_core::color::{BlochAngles, HslColor};
use qbrush_core::sim::{Circuit, Gate, PauliVector};
use qbrush_oracle as oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn random_hsl(rng: &mut ChaCha8Rng) -> HslColor<f64> {
    HslColor::new(rng.random(), rng.random(), rng.random_range(0.02..0.98))
}

fn assert_hl_close(got: (f64, f64), want: (f64, f64), what: &str) {
    assert!(
        oracle::hue_distance(got.0, want.0) < TOL && (got.1 - want.1).abs() < TOL,
        "{what}: got {got:?}, want {want:?}"
    );
}

#[test]
fn aquarela_matches_dense_pipeline() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let n = rng.random_range(1..=3);
        let segs: Vec<HslColor<f64>> = (0..n).map(|_| random_hsl(&mut rng)).collect();
        let params = AquarelaParams {
            brush_color: random_hsl(&mut rng),
            gamma: rng.random(),
            n_segments: n,
        };
        let got = aquarela_colors(&segs, &params, &ExactBackend, 0).unwrap();
        let hl: Vec<(f64, f64)> = segs.iter().map(|c| (c.h, c.l)).collect();
        let want = oracle::aquarela(&hl, (params.brush_color.h, params.brush_color.l), params.gamma);
        for (g, w) in got.into_iter().zip(want) {
            assert_hl_close(g, w, "aquarela");
        }
    }
}

#[test]
fn aquarela_two_segment_example() {
    let segs = [HslColor::new(0.0, 1.0, 0.5), HslColor::new(0.5, 1.0, 0.5)];
    let params = AquarelaParams {
        brush_color: HslColor::new(0.66, 1.0, 0.5),
        gamma: 1.0,
        n_segments: 2,
    };
    let got = aquarela_colors(&segs, &params, &ExactBackend, 0).unwrap();
    let want = oracle::aquarela(&[(0.0, 0.5), (0.5, 0.5)], (0.66, 0.5), 1.0);
    for (g, w) in got.into_iter().zip(want) {
        assert_hl_close(g, w, "aquarela N=2");
    }
}

#[test]
fn aquarela_pole_brush_raises_segment_z() {
    let c = qbrush_core::brushes::aquarela_circuit(
        &[BlochAngles::new(0.0, std::f64::consts::FRAC_PI_2)],
        &BlochAngles::new(0.0, 0.0),
        1.0,
    )
    .unwrap();
    let e = ExactBackend.tomography(&c, &[0], 0).unwrap()[0];
    assert!(e.ez > 1e-6, "{e:?}");
}

#[test]
fn smudge_matches_dense_pipeline() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let n = rng.random_range(1..=3);
        let strokes: Vec<HslColor<f64>> = (0..n).map(|_| random_hsl(&mut rng)).collect();
        let control = if rng.random_bool(0.5) { SmudgeControl::Pump } else { SmudgeControl::Damp };
        let params = SmudgeParams {
            control,
            gamma: rng.random_range(0.0..std::f64::consts::PI),
        };
        let got = smudge_colors(&strokes, &params, &ExactBackend, 0).unwrap();
        let hl: Vec<(f64, f64)> = strokes.iter().map(|c| (c.h, c.l)).collect();
        let want = oracle::smudge(&hl, params.gamma, control == SmudgeControl::Pump);
        for (g, w) in got.into_iter().zip(want) {
            assert_hl_close(g, w, "smudge");
        }
    }
}

#[test]
fn smudge_three_stroke_example() {
    let strokes = [0.1, 0.4, 0.7].map(|h| HslColor::new(h, 1.0, 0.5));
    let params = SmudgeParams {
        control: SmudgeControl::Damp,
        gamma: std::f64::consts::FRAC_PI_2,
    };
    let got = smudge_colors(&strokes, &params, &ExactBackend, 0).unwrap();
    let want = oracle::smudge(&[(0.1, 0.5), (0.4, 0.5), (0.7, 0.5)], params.gamma, false);
    for (g, w) in got.into_iter().zip(want) {
        assert_hl_close(g, w, "smudge N=3");
    }
}

#[test]
fn heisenbrush_matches_dense_evolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases = vec![(HslColor::new(0.6, 0.8, 0.4), 1.0, 3, 5)];
    for _ in 0..49 {
        cases.push((random_hsl(&mut rng), rng.random(), rng.random_range(1..=4), rng.random_range(1..=10)));
    }
    for (user, gamma, n, steps) in cases {
        let p = HeisenParams::new(HeisenMode::Continuous, user, gamma, n, steps);
        let got = heisen_colors(&p, &ExactBackend, 0).unwrap();
        let want = oracle::heisen([user.h, user.s, user.l], gamma, n, steps, 0.1);
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            // The mod-1 wrap can jump by one at the seam; compare circularly.
            for (a, b) in [g.h, g.s, g.l].into_iter().zip(w) {
                assert!(oracle::hue_distance(a, *b) < TOL, "heisen n={n}: {g:?} vs {w:?}");
            }
        }
    }
}

#[test]
fn heisenbrush_initial_magnetization_is_cos_theta() {
    let p = HeisenParams::new(HeisenMode::Continuous, HslColor::new(0.3f64, 0.5, 0.0), 1.0, 4, 1);
    let prep_only = heisen_colors(&HeisenParams { dt: 1e-300, ..p }, &ExactBackend, 0).unwrap();
    // m ≈ cos(0) = 1, so every channel wraps back to its own value.
    let c = prep_only[0];
    assert!((c.h - 0.3).abs() < 1e-12 && (c.s - 0.5).abs() < 1e-12 && c.l.abs() < 1e-12);
}

fn trotter_error(n: usize, dt: f64) -> f64 {
    let t = 1.0;
    let steps = (t / dt).round() as usize;
    let hl = (0.6, 0.4);
    let (phi, theta) = oracle::encode(hl.0, hl.1);
    let mut prep = Circuit::new(n).unwrap();
    for q in 0..n {
        prep.push(Gate::ry(q, theta)).unwrap();
        prep.push(Gate::rz(q, phi)).unwrap();
    }
    let step = trotter_step_circuit(n, dt).unwrap();
    let series = ExactBackend
        .tomography_series(&prep, &step, steps, &(0..n).collect::<Vec<_>>(), 0)
        .unwrap();
    let m = series.last().unwrap().iter().map(|e| e.ez).sum::<f64>() / n as f64;
    (m - oracle::exact_magnetization(n, hl, t)).abs()
}

#[test]
fn trotter_error_is_first_order() {
    for n in [2, 3] {
        let errs: Vec<f64> = [0.1, 0.05, 0.025].iter().map(|&dt| trotter_error(n, dt)).collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((1.6..=2.4).contains(&ratio), "n={n}: errors {errs:?}");
        }
    }
}

#[test]
fn trotter_step_matches_dense_product() {
    for n in 1..=4 {
        let mut s = qbrush_core::sim::StateVector::<f64>::new(n).unwrap();
        let mut o = oracle::zero_state(n);
        for q in 0..n {
            s.apply(&Gate::ry(q, 0.3 + q as f64)).unwrap();
            oracle::apply(&mut o, &oracle::rot1(oracle::Pauli::Y, q, n, 0.3 + q as f64));
        }
        s.run(&trotter_step_circuit(n, 0.1).unwrap(), None).unwrap();
        oracle::apply(&mut o, &oracle::trotter_step(n, 0.1));
        for (a, b) in s.amplitudes().iter().zip(&o) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

fn random_angles(rng: &mut ChaCha8Rng) -> BlochAngles<f64> {
    BlochAngles::new(rng.random_range(0.0..std::f64::consts::TAU), rng.random_range(0.0..std::f64::consts::PI))
}

#[test]
fn uaqc_matches_direct_amplitude_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let psi = random_angles(&mut rng);
        let s0 = rng.random_range(0.05..=1.0);
        let s1 = solve_s1(s0);
        let c = uaqc_circuit(&psi, s0, s1).unwrap();
        let e = ExactBackend.tomography(&c, &[0, 2], 0).unwrap();
        let (wc, wp) = oracle::uaqc_bloch(psi.phi, psi.theta, s0, s1);
        for (got, want) in [(e[0], wc), (e[1], wp)] {
            for k in 0..3 {
                assert!((got.as_array()[k] - want[k]).abs() < TOL, "{got:?} vs {want:?}");
            }
        }
        // Shrinking factors are s0 and s1.
        assert!((e[0].norm() - s0).abs() < 1e-9 && (e[1].norm() - s1).abs() < 1e-9);
    }
}

#[test]
fn uaqc_tradeoff_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let states: Vec<BlochAngles<f64>> = (0..20).map(|_| random_angles(&mut rng)).collect();
    for psi in &states {
        let ket = oracle::qubit_ket(psi.phi, psi.theta);
        let fidelities: Vec<(f64, f64)> = (4..=10)
            .map(|k| {
                let s0 = k as f64 / 10.0;
                let st = oracle::uaqc_state(psi.phi, psi.theta, s0, solve_s1(s0));
                let c = uaqc_circuit(psi, s0, solve_s1(s0)).unwrap();
                let e = ExactBackend.tomography(&c, &[0, 2], 0).unwrap();
                let fid = |b: PauliVector<f64>| (1.0 + b.as_array().iter().zip(psi.bloch_vector().as_array()).map(|(x, y)| x * y).sum::<f64>()) / 2.0;
                assert!((fid(e[0]) - oracle::fidelity(&oracle::reduced_density(&st, 0), &ket)).abs() < TOL);
                (fid(e[0]), fid(e[1]))
            })
            .collect();
        for w in fidelities.windows(2) {
            assert!(w[1].0 >= w[0].0 - 1e-12, "copy fidelity fell: {fidelities:?}");
            assert!(w[1].1 <= w[0].1 + 1e-12, "paste fidelity rose: {fidelities:?}");
        }
    }
}

#[test]
fn collage_encoding_and_map_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let px = rng.random_range(3..40);
        let region: Vec<[f64; 3]> = (0..px).map(|_| [rng.random(), rng.random(), rng.random()]).collect();
        let (angles, triple) = svd_encode(&region).unwrap();
        let (phi, theta) = oracle::collage_angles(triple.s_values);
        assert!((angles.phi - phi).abs() < 1e-12 && (angles.theta - theta).abs() < 1e-12);
        let s0 = rng.random_range(0.1..=1.0);
        let c = uaqc_circuit(&angles, s0, solve_s1(s0)).unwrap();
        let e = ExactBackend.tomography(&c, &[0, 2], 0).unwrap();
        let (wc, wp) = oracle::uaqc_bloch(phi, theta, s0, solve_s1(s0));
        for (got, want) in [(e[0], wc), (e[1], wp)] {
            let g = map_singular_values(&triple, &got);
            let w = oracle::collage_map(triple.s_values, want);
            for k in 0..3 {
                assert!((g[k] - w[k]).abs() < TOL * w[k].abs().max(1.0), "{g:?} vs {w:?}");
            }
        }
    }
}

#[test]
fn collage_angles_closed_form() {
    let e = std::f64::consts::E;
    let t = SingularTriple {
        s_values: [e, e, e],
        u: vec![],
        v: [[0.0; 3]; 3],
    };
    // Build the angles through svd_encode on a diagonal-ish region with the same values.
    let region = [[e, 0.0, 0.0], [0.0, e, 0.0], [0.0, 0.0, e]];
    let (angles, triple) = svd_encode(&region).unwrap();
    assert!(triple.s_values.iter().all(|s| (s - e).abs() < 1e-12));
    assert!((angles.phi - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert!((angles.theta - 2f64.sqrt().atan2(1.0)).abs() < 1e-12);
    assert!((angles.theta - 0.9553).abs() < 1e-4);
    assert_eq!(t.mean(), e);
}

#[test]
fn constraint_residual_on_the_grid() {
    for k in 1..=10 {
        let s0 = k as f64 / 10.0;
        assert!(cloning_constraint(s0, solve_s1(s0)).abs() <= 1e-12);
    }
}
