use std::path::Path;
use std::time::Instant;

use stegaug::analysis::{
    bit_plane_stats, bitplanes_table, color_approx_error, color_err_table, default_rgb_population, delta_histogram,
    delta_table, fit_linear_approx, full_domain_delta_histogram, full_domain_histogram, levels_table, linfit_table,
    population_histogram, rgb_pixels, ColorKind,
};
use stegaug::colorops::ColorTransform;
use stegaug::dataio::{
    decode_cifar10, decode_container, read_cifar10, read_container, read_ppm, write_container, write_csv, write_ppm,
    Cell, Table, CONTAINER_MAGIC,
};
use stegaug::pipeline::{augment_batch, AugmentationRecord, RecordKind};
use stegaug::{embed_image, extract_image, Batch, Error, Image, Result, Sample, StegParams};

use crate::{AugmentArgs, Command, InputFormat, Mode, Transform};

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Ingest { input, out } => {
            let samples = read_cifar10(&input)?;
            write_container(&samples, &out)?;
            println!("wrote {} samples to {}", samples.len(), out.display());
            Ok(())
        }
        Command::Embed { cover, secret, k, out } => {
            let stego = embed_image(&read_ppm(cover)?, &read_ppm(secret)?, k)?;
            write_ppm(&stego, out)
        }
        Command::Extract { stego, k, out } => write_ppm(&extract_image(&read_ppm(stego)?, k), out),
        Command::Augment(args) => augment(args),
        Command::Analyze { depths, population, out, threads } => {
            with_pool(threads, || analyze(&depths.resolve(), population.as_deref(), &out))
        }
        Command::Bench { input, p, seed, depths, repetitions, threads } => {
            let params = StegParams::new(p, depths.resolve(), seed)?;
            bench(&input, &params, repetitions, threads)
        }
    }
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match threads {
        None => f(),
        Some(0) => Err(Error::InvalidParameter("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?
            .install(f),
    }
}

fn load_samples(path: &Path, format: InputFormat) -> Result<Vec<Sample>> {
    match format {
        InputFormat::Saug => read_container(path),
        InputFormat::Cifar => read_cifar10(path),
        InputFormat::Auto => {
            let bytes = std::fs::read(path)?;
            if bytes.starts_with(CONTAINER_MAGIC) {
                decode_container(&bytes)
            } else {
                decode_cifar10(&bytes)
            }
        }
    }
}

fn augment(args: AugmentArgs) -> Result<()> {
    let batch = Batch::new(load_samples(&args.input, args.input_format)?)?;
    match args.mode {
        Mode::Steg => {
            let params = StegParams::new(args.p, args.depths.resolve(), args.seed)?;
            let (out, records) = with_pool(args.threads, || augment_batch(&batch, &params))?;
            write_container(out.samples(), &args.out)?;
            if let Some(path) = &args.records {
                write_csv(&records_table(&records), path)?;
            }
            let steg = records.iter().filter(|r| r.kind != RecordKind::Passthrough).count();
            println!("augmented {} of {} samples", steg, out.len());
        }
        Mode::Color => {
            if args.records.is_some() {
                return Err(Error::InvalidParameter("--records applies to steg mode only".into()));
            }
            let param = args.param.expect("required by clap");
            let transform = match args.transform.expect("required by clap") {
                Transform::Brightness => ColorTransform::Brightness(param),
                Transform::Contrast => ColorTransform::Contrast(param),
                Transform::Saturation => ColorTransform::Saturation(param),
                Transform::Linear => ColorTransform::Linear { alpha: param, beta: args.beta },
            }
            .validate()?;
            let samples = with_pool(args.threads, || {
                use rayon::prelude::*;
                batch
                    .samples()
                    .par_iter()
                    .map(|s| Ok(Sample::new(transform.apply(&s.image)?, s.label.clone())))
                    .collect::<Result<Vec<_>>>()
            })?;
            write_container(&samples, &args.out)?;
            println!("applied {transform:?} to {} samples", samples.len());
        }
    }
    Ok(())
}

fn records_table(records: &[AugmentationRecord]) -> Table {
    let mut t = Table::new(["output_index", "kind", "secret_index", "k"]);
    for r in records {
        let row = match r.kind {
            RecordKind::Passthrough => vec![r.output_index.into(), "passthrough".into(), "".into(), "".into()],
            RecordKind::Steg { secret_index, k } => {
                vec![r.output_index.into(), "steg".into(), secret_index.into(), k.get().into()]
            }
        };
        t.push(row);
    }
    t
}

fn analyze(depths: &[stegaug::BitDepth], population: Option<&Path>, out: &Path) -> Result<()> {
    std::fs::create_dir_all(out)?;
    let pop: Option<Vec<Image>> = population
        .map(|p| read_container(p).map(|s| s.into_iter().map(|s| s.image).collect()))
        .transpose()?;
    let images = pop.as_deref();
    if images.is_some_and(|i| i.iter().all(|img| img.as_bytes().is_empty())) {
        return Err(Error::EmptyPopulation);
    }

    let results: Vec<_> = {
        use rayon::prelude::*;
        depths
            .par_iter()
            .map(|&k| {
                let (levels, deltas) = match images {
                    Some(imgs) => (population_histogram(imgs, k), delta_histogram(imgs, k)),
                    None => (full_domain_histogram(k), full_domain_delta_histogram(k)),
                };
                (k, levels, deltas, fit_linear_approx(k))
            })
            .collect()
    };
    for (k, levels, deltas, _) in &results {
        write_csv(&levels_table(levels), out.join(format!("levels_k{k}.csv")))?;
        write_csv(&delta_table(deltas), out.join(format!("delta_k{k}.csv")))?;
    }
    let fits: Vec<_> = results.iter().map(|r| r.3).collect();
    write_csv(&linfit_table(&fits), out.join("linfit.csv"))?;

    let rgb = match images {
        Some(imgs) => rgb_pixels(imgs),
        None => default_rgb_population(),
    };
    let rgb = if rgb.is_empty() { default_rgb_population() } else { rgb };
    for kind in ColorKind::ALL {
        let grid = kind.default_grid();
        let tables = depths
            .iter()
            .map(|&k| color_approx_error(k, kind, &grid, &rgb))
            .collect::<Result<Vec<_>>>()?;
        write_csv(&color_err_table(&tables), out.join(format!("color_err_{}.csv", kind.name())))?;
    }

    let domain = Image::new(stegaug::Shape::new(1, 256, 1), (0..=255).collect())?;
    let stats = match images {
        Some(imgs) => bit_plane_stats(imgs)?,
        None => bit_plane_stats([&domain])?,
    };
    write_csv(&bitplanes_table(&stats), out.join("bitplanes.csv"))?;
    println!("wrote analysis tables for k in {:?} to {}", depths.iter().map(|k| k.get()).collect::<Vec<_>>(), out.display());
    Ok(())
}

fn bench(input: &Path, params: &StegParams, repetitions: u32, threads: Option<usize>) -> Result<()> {
    let batch = Batch::new(read_container(input)?)?;
    let sample_bytes = batch.shape().map_or(0, |s| s.len()) + batch.label_dim();
    let multi = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut report = Table::new(["threads", "p", "samples", "repetitions", "seconds", "samples_per_sec", "bytes_per_sec"]);
    let mut counts = vec![1];
    if multi > 1 {
        counts.push(multi);
    }
    for n in counts {
        let secs = with_pool(Some(n), || {
            let start = Instant::now();
            for _ in 0..repetitions {
                std::hint::black_box(augment_batch(&batch, params)?);
            }
            Ok(start.elapsed().as_secs_f64())
        })?;
        let processed = (batch.len() as f64) * repetitions as f64;
        report.push(vec![
            n.into(),
            Cell::Float(params.p()),
            batch.len().into(),
            (repetitions as usize).into(),
            secs.into(),
            (processed / secs).into(),
            (processed * sample_bytes as f64 / secs).into(),
        ]);
    }
    print!("{}", String::from_utf8_lossy(&report.to_csv()?));
    Ok(())
}
