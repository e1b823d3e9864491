use trapset::qc::builtin;
use trapset::sim::{
    channel_llrs, emit_fer_csv, emit_plot_script, frame_rng, noise_sigma, simulate, Decoder, DecoderConfig,
    DecoderVariant, StopRule, FER_HEADER,
};

#[test]
fn decoders_agree_at_high_snr() {
    let t = builtin("C1").unwrap().tanner();
    let n = t.num_vars();
    let sigma = noise_sigma(6.0, 0.4);
    let sp = DecoderConfig { variant: DecoderVariant::SumProduct, ..Default::default() };
    let ms = DecoderConfig { variant: DecoderVariant::MinSum, ..Default::default() };
    let (mut a, mut b) = (Decoder::new(&t, sp).unwrap(), Decoder::new(&t, ms).unwrap());
    let frames = 400;
    let mut same = 0;
    for f in 0..frames {
        let llr = channel_llrs(&mut frame_rng(11, 0, f), n, sigma, 30.0);
        if a.decode(&llr).hard == b.decode(&llr).hard {
            same += 1;
        }
    }
    assert!(same * 100 >= frames * 99, "{same}/{frames}");
}

#[test]
fn noiseless_channel_decodes_in_one_pass() {
    let t = builtin("C2").unwrap().tanner();
    let mut d = Decoder::new(&t, DecoderConfig::default()).unwrap();
    let out = d.decode(&vec![5.0; t.num_vars()]);
    assert!(out.syndrome_ok);
    assert!(out.hard.iter().all(|&x| x == 0));
}

#[test]
fn runs_are_reproducible() {
    let e = builtin("C1").unwrap();
    let stop = StopRule { max_frames: 600, max_frame_errors: 20 };
    let a = simulate(&e, "C1", DecoderConfig::default(), &[1.5, 2.5], stop, 42).unwrap();
    let b = simulate(&e, "C1", DecoderConfig::default(), &[1.5, 2.5], stop, 42).unwrap();
    assert_eq!(a.points, b.points);
}

#[test]
fn csv_and_plot_files() {
    let e = builtin("C1").unwrap();
    let stop = StopRule { max_frames: 300, max_frame_errors: 10 };
    let r = simulate(&e, "C1", DecoderConfig::default(), &[1.0, 2.0], stop, 5).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fer.csv");
    let py = dir.path().join("fer.py");
    emit_fer_csv(&r, &csv).unwrap();
    emit_plot_script(&r, &py).unwrap();
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(FER_HEADER));
    assert_eq!(lines.count(), 2);
    let script = std::fs::read_to_string(&py).unwrap();
    assert!(script.contains("semilogy") && script.contains("fer.png"));
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["points"].as_array().unwrap().len(), 2);
}
