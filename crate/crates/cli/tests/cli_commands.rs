use std::path::Path;
use std::process::{Command, Output};

use stegaug::dataio::{encode_container, read_container, read_ppm, write_container, write_ppm};
use stegaug::{quantize, BitDepth, Image, LabelVector, Sample, Shape};

const BIN: &str = env!("CARGO_BIN_EXE_stegaug");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("STEGAUG_THREADS").output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn gradient(shape: Shape, mul: usize) -> Image {
    Image::new(shape, (0..shape.len()).map(|i| (i * mul % 256) as u8).collect()).unwrap()
}

fn write_batch(path: &Path, n: usize) -> Vec<Sample> {
    let samples: Vec<Sample> = (0..n)
        .map(|i| Sample::new(gradient(Shape::new(4, 4, 3), 3 + i), LabelVector::one_hot(i % 10, 10).unwrap()))
        .collect();
    write_container(&samples, path).unwrap();
    samples
}

#[test]
fn embed_then_extract_recovers_quantized_secret() {
    let dir = tempfile::tempdir().unwrap();
    let (cover, secret) = (gradient(Shape::CIFAR, 7), gradient(Shape::CIFAR, 13));
    let [c, s, o, x] = ["c.ppm", "s.ppm", "o.ppm", "x.ppm"].map(|n| dir.path().join(n));
    write_ppm(&cover, &c).unwrap();
    write_ppm(&secret, &s).unwrap();
    assert!(run(&["embed", p(&c), p(&s), "--k", "3", "--out", p(&o)]).status.success());
    assert!(run(&["extract", p(&o), "--k", "3", "--out", p(&x)]).status.success());
    let recovered = read_ppm(&x).unwrap();
    let k5 = BitDepth::new(5).unwrap();
    assert!(recovered.as_bytes().iter().zip(secret.as_bytes()).all(|(&r, &s)| r == quantize(s, k5)));
    let stego = read_ppm(&o).unwrap();
    let k3 = BitDepth::new(3).unwrap();
    assert!(stego.as_bytes().iter().zip(cover.as_bytes()).all(|(&o, &c)| quantize(o, k3) == quantize(c, k3)));
}

#[test]
fn embed_validation_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let [a, b, o] = ["a.ppm", "b.ppm", "o.ppm"].map(|n| dir.path().join(n));
    write_ppm(&gradient(Shape::CIFAR, 1), &a).unwrap();
    write_ppm(&gradient(Shape::new(16, 16, 3), 1), &b).unwrap();
    let out = run(&["embed", p(&a), p(&b), "--k", "3", "--out", p(&o)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("shape mismatch"));
    assert_eq!(run(&["embed", p(&a), p(&a), "--k", "8", "--out", p(&o)]).status.code(), Some(2));
    let missing = dir.path().join("missing.ppm");
    assert_eq!(run(&["embed", p(&missing), p(&a), "--k", "3", "--out", p(&o)]).status.code(), Some(1));
    assert_eq!(run(&["extract", p(&a), "--out", p(&o)]).status.code(), Some(2));
}

#[test]
fn augment_with_zero_probability_reserializes_input() {
    let dir = tempfile::tempdir().unwrap();
    let (input, out) = (dir.path().join("in.saug"), dir.path().join("out.saug"));
    let samples = write_batch(&input, 12);
    assert!(run(&["augment", p(&input), "--out", p(&out), "--p", "0"]).status.success());
    assert_eq!(std::fs::read(&out).unwrap(), encode_container(&samples).unwrap());
}

#[test]
fn augment_records_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let [input, out, rec] = ["in.saug", "out.saug", "rec.csv"].map(|n| dir.path().join(n));
    let samples = write_batch(&input, 20);
    let res = run(&["augment", p(&input), "--out", p(&out), "--p", "1", "--k-choices", "2,5", "--records", p(&rec)]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = std::fs::read_to_string(&rec).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("output_index,kind,secret_index,k"));
    let augmented = read_container(&out).unwrap();
    for (i, line) in lines.enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[0], i.to_string());
        assert_eq!(f[1], "steg");
        let j: usize = f[2].parse().unwrap();
        assert_ne!(j, i);
        assert!(f[3] == "2" || f[3] == "5");
        let k = BitDepth::new(f[3].parse().unwrap()).unwrap();
        let want = stegaug::embed_image(&samples[i].image, &samples[j].image, k).unwrap();
        assert_eq!(augmented[i].image, want);
    }

    let single = dir.path().join("one.saug");
    write_batch(&single, 1);
    assert_eq!(run(&["augment", p(&single), "--out", p(&out)]).status.code(), Some(2));
    assert_eq!(run(&["augment", p(&input), "--out", p(&out), "--k", "3", "--k-choices", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["augment", p(&input), "--out", p(&out), "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["augment", p(&input), "--out", p(&out), "--threads", "0"]).status.code(), Some(2));
}

#[test]
fn augment_thread_env_default() {
    let dir = tempfile::tempdir().unwrap();
    let [input, a, b] = ["in.saug", "a.saug", "b.saug"].map(|n| dir.path().join(n));
    write_batch(&input, 64);
    let with_env = Command::new(BIN)
        .args(["augment", p(&input), "--out", p(&a), "--seed", "3"])
        .env("STEGAUG_THREADS", "3")
        .output()
        .unwrap();
    assert!(with_env.status.success());
    assert!(run(&["augment", p(&input), "--out", p(&b), "--seed", "3", "--threads", "1"]).status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn augment_color_mode() {
    let dir = tempfile::tempdir().unwrap();
    let (input, out) = (dir.path().join("in.saug"), dir.path().join("out.saug"));
    let samples = write_batch(&input, 3);
    let res = run(&["augment", p(&input), "--out", p(&out), "--mode", "color", "--transform", "brightness", "--param", "-10"]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let got = read_container(&out).unwrap();
    for (g, s) in got.iter().zip(&samples) {
        assert_eq!(g.label, s.label);
        assert!(g.image.as_bytes().iter().zip(s.image.as_bytes()).all(|(&g, &s)| g == s.saturating_sub(10)));
    }
    let bad = run(&["augment", p(&input), "--out", p(&out), "--mode", "color", "--transform", "contrast", "--param", "0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(run(&["augment", p(&input), "--out", p(&out), "--mode", "color"]).status.code(), Some(2));
}

#[test]
fn analyze_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/analysis");
    assert!(run(&["analyze", "--k", "3", "--out", p(&out)]).status.success());
    let levels = std::fs::read_to_string(out.join("levels_k3.csv")).unwrap();
    let rows: Vec<&str> = levels.lines().skip(1).collect();
    assert_eq!(rows.len(), 32);
    assert!(rows.iter().all(|r| r.split(',').nth(1) == Some("8")));
    for f in ["linfit.csv", "color_err_brightness.csv", "color_err_contrast.csv", "color_err_saturation.csv", "bitplanes.csv", "delta_k3.csv"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let best: Vec<String> = std::fs::read_to_string(out.join("color_err_brightness.csv"))
        .unwrap()
        .lines()
        .filter(|l| l.ends_with(",1"))
        .map(str::to_owned)
        .collect();
    assert_eq!(best, vec!["3,-3.5,2,1"]);
    assert_eq!(run(&["analyze", "--k", "0", "--out", p(&out)]).status.code(), Some(2));
}

#[test]
fn analyze_population_and_all_depths() {
    let dir = tempfile::tempdir().unwrap();
    let (input, out) = (dir.path().join("pop.saug"), dir.path().join("a"));
    write_batch(&input, 5);
    assert!(run(&["analyze", "--population", p(&input), "--out", p(&out)]).status.success());
    for k in 1..=7 {
        assert!(out.join(format!("levels_k{k}.csv")).exists());
    }
    let planes = std::fs::read_to_string(out.join("bitplanes.csv")).unwrap();
    assert_eq!(planes.lines().count(), 9);
    assert!(planes.lines().nth(1).unwrap().contains(",240,"), "{planes}");
}

#[test]
fn bench_reports_throughput() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.saug");
    write_batch(&input, 16);
    let out = run(&["bench", p(&input), "--repetitions", "2", "--threads", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("threads,p,samples,repetitions,seconds,samples_per_sec,bytes_per_sec\n"));
    assert!(text.lines().any(|l| l.starts_with("1,")));
    assert!(text.lines().any(|l| l.starts_with("2,")));
    assert_eq!(run(&["bench", p(&input), "--repetitions", "0"]).status.code(), Some(2));
}

#[test]
fn ingest_cifar() {
    let dir = tempfile::tempdir().unwrap();
    let (bin, out) = (dir.path().join("b.bin"), dir.path().join("b.saug"));
    let mut bytes = Vec::new();
    for i in 0..3u8 {
        bytes.push(i);
        bytes.extend(std::iter::repeat_n(i, 3072));
    }
    std::fs::write(&bin, &bytes).unwrap();
    assert!(run(&["ingest", p(&bin), "--out", p(&out)]).status.success());
    let s = read_container(&out).unwrap();
    assert_eq!(s.len(), 3);
    assert_eq!(s[2].label, LabelVector::one_hot(2, 10).unwrap());
    std::fs::write(&bin, &bytes[..3072]).unwrap();
    let bad = run(&["ingest", p(&bin), "--out", p(&out)]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("truncated record at offset 0"));
}
