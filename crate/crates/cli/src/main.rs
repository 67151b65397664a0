use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use torus_morph::collapse::{classify_link, direct_collapse, DogFacing, LinkClass};
use torus_morph::equilibrium::{solve_equilibrium, Weights};
use torus_morph::generate::{
    jitter, lattice, random_triangulation, random_weights, rng_from_seed, seed_from_env, square_grid, zipper,
    RandomTriangulationOptions,
};
use torus_morph::graph::io::{read_drawing, read_weights, write_drawing, write_weights, DrawingFile};
use torus_morph::graph::{check_embedding, classify_drawing};
use torus_morph::isotopy::{is_isotopic, IsotopyVerdict};
use torus_morph::morph::io::{graph_fingerprint, read_morph, write_morph};
use torus_morph::morph::{morph_embeddings, sample_validity, verify_morph, MorphOptions};
use torus_morph::render::{render_drawing, render_morph, RenderSpec};
use torus_morph::{Drawing, VertexId};

/// Morphs between isotopic straight-line graph drawings on the flat torus.
#[derive(Parser)]
#[command(name = "torus-morph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a drawing is an embedding and describe it.
    Validate { file: PathBuf },
    /// Test whether two drawings of the same graph are isotopic (exit 1 if not).
    Isotopy { a: PathBuf, b: PathBuf },
    /// Write the equilibrium drawing for the given spring weights.
    Tutte {
        file: PathBuf,
        /// Weight file; defaults to the drawing's weight column, else uniform.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Vertex pinned in place.
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compute a morph between two isotopic drawings.
    Morph {
        a: PathBuf,
        b: PathBuf,
        /// Spring weights for the intermediate equilibrium (triangulations only).
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a morph file against its endpoints (exit 1 on failure).
    Verify {
        a: PathBuf,
        b: PathBuf,
        morph: PathBuf,
        /// Also sample this many times per step and check every sample.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Draw a drawing, or every sampled frame of a morph, as SVG.
    Render {
        file: PathBuf,
        /// Morph of the drawing's graph; frames go to the output directory.
        #[arg(long)]
        morph: Option<PathBuf>,
        #[command(flatten)]
        spec: SpecArgs,
        /// SVG file, or a directory when rendering a morph.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generate instances.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Inspect the link of one vertex and collapse it if possible.
    Collapse {
        file: PathBuf,
        #[arg(long)]
        vertex: usize,
        /// Where to write the collapsed drawing.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Copies of the unit square per side.
    #[arg(long, default_value_t = 3)]
    replication: usize,
    /// Image width and height in pixels.
    #[arg(long, default_value_t = 600.0)]
    size: f64,
    /// Frames per morph step, counting both endpoints.
    #[arg(long, default_value_t = 5)]
    samples: usize,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Triangulated lattice quotient with a*b vertices.
    Lattice {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Four-regular quadrangulated lattice quotient.
    Grid {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Zipper with n loops.
    Zipper {
        #[arg(long)]
        n: usize,
        /// Whole turns added to the wrap-around annulus.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Random flipped lattice triangulation in equilibrium position.
    Random {
        #[arg(long)]
        n: usize,
        /// Allow loops.
        #[arg(long)]
        loops: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Perturb the vertices of a drawing without changing its isotopy class.
    Jitter {
        file: PathBuf,
        #[arg(long, default_value_t = 0.02)]
        magnitude: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Random spring weights for a drawing's edges.
    Weights {
        file: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        lo: f64,
        #[arg(long, default_value_t = 10.0)]
        hi: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn load(path: &Path) -> Result<DrawingFile> {
    read_drawing(path).with_context(|| format!("reading {}", path.display()))
}

fn load_weights(drawing: &Drawing, file: Option<&Path>, fallback: Option<Vec<f64>>) -> Result<Option<Weights>> {
    let values = match file {
        Some(p) => Some(read_weights(p).with_context(|| format!("reading {}", p.display()))?),
        None => fallback,
    };
    let Some(values) = values else { return Ok(None) };
    if values.len() != drawing.graph().num_edges() {
        bail!("{} weights for {} edges", values.len(), drawing.graph().num_edges());
    }
    Ok(Some(Weights::new(values)?))
}

fn seed(flag: Option<u64>) -> u64 {
    flag.unwrap_or_else(|| seed_from_env(0))
}

fn describe(drawing: &Drawing) -> String {
    let c = classify_drawing(drawing);
    let loops = if c.loop_vertices.is_empty() {
        "loopless".to_string()
    } else {
        format!("{} loop vertices", c.loop_vertices.len())
    };
    if c.is_zipper {
        format!("valid zipper, {} vertices", drawing.num_vertices())
    } else if c.is_triangulation {
        format!("valid triangulation, {loops}")
    } else {
        format!("valid embedding, {} faces, {loops}", c.num_faces)
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { file } => {
            let d = load(&file)?.drawing;
            let report = check_embedding(&d);
            if report.is_valid() {
                println!("{}", describe(&d));
                Ok(true)
            } else {
                println!("invalid embedding");
                for v in &report.violations {
                    println!("  {v}");
                }
                Ok(false)
            }
        }
        Command::Isotopy { a, b } => {
            let (da, db) = (load(&a)?.drawing, load(&b)?.drawing);
            match is_isotopic(&da, &db)? {
                IsotopyVerdict::Isotopic => {
                    println!("isotopic");
                    Ok(true)
                }
                IsotopyVerdict::NotIsotopic { witness } => {
                    let g = da.graph();
                    println!(
                        "not isotopic: witness dart {} ({} -> {})",
                        witness.0,
                        g.tail(witness).0,
                        g.head(witness).0
                    );
                    Ok(false)
                }
            }
        }
        Command::Tutte { file, weights, root, output } => {
            let f = load(&file)?;
            if root >= f.drawing.num_vertices() {
                bail!("root {root} is not a vertex");
            }
            let w = load_weights(&f.drawing, weights.as_deref(), f.weights.clone())?
                .unwrap_or_else(|| Weights::uniform(f.drawing.graph().num_edges()));
            let sol = solve_equilibrium(&f.drawing, &w, VertexId(root))?;
            let out = f.drawing.with_positions(sol.positions)?;
            write_drawing(&output, &out, Some(w.values()))?;
            println!("residual {:e}", sol.residual);
            Ok(true)
        }
        Command::Morph { a, b, weights, output } => {
            let (fa, fb) = (load(&a)?, load(&b)?);
            let opts = MorphOptions { weights: load_weights(&fa.drawing, weights.as_deref(), None)? };
            let m = morph_embeddings(&fa.drawing, &fb.drawing, &opts)?;
            write_morph(&output, fa.drawing.graph(), &m)?;
            println!("{} steps, {} keyframes", m.num_steps(), m.num_keyframes());
            Ok(true)
        }
        Command::Verify { a, b, morph, samples } => {
            let (da, db) = (load(&a)?.drawing, load(&b)?.drawing);
            let mf = read_morph(&morph).with_context(|| format!("reading {}", morph.display()))?;
            if mf.fingerprint != graph_fingerprint(da.graph()) {
                println!("morph was computed for a different graph");
                return Ok(false);
            }
            let report = verify_morph(&da, &db, &mf.morph);
            if !report.is_valid() {
                println!("invalid morph");
                for f in &report.failures {
                    println!("  {f}");
                }
                return Ok(false);
            }
            if let Some(s) = samples {
                if let Err((step, t)) = sample_validity(&da, &db, &mf.morph, s, 1) {
                    println!("invalid drawing in step {step} at t = {t}");
                    return Ok(false);
                }
            }
            println!("valid morph: {} steps", mf.morph.num_steps());
            Ok(true)
        }
        Command::Render { file, morph, spec, output } => {
            let d = load(&file)?.drawing;
            let spec = RenderSpec {
                replication: spec.replication,
                size: spec.size,
                samples_per_step: spec.samples,
                ..RenderSpec::default()
            };
            match morph {
                None => std::fs::write(&output, render_drawing(&d, &spec)?)?,
                Some(m) => {
                    let mf = read_morph(&m).with_context(|| format!("reading {}", m.display()))?;
                    if mf.fingerprint != graph_fingerprint(d.graph()) {
                        bail!("morph was computed for a different graph");
                    }
                    let frames = render_morph(&d, &mf.morph, &spec)?;
                    std::fs::create_dir_all(&output)?;
                    for (i, svg) in frames.iter().enumerate() {
                        std::fs::write(output.join(format!("frame_{i:04}.svg")), svg)?;
                    }
                    println!("{} frames", frames.len());
                }
            }
            Ok(true)
        }
        Command::Generate { kind } => {
            generate(kind)?;
            Ok(true)
        }
        Command::Collapse { file, vertex, output } => {
            let d = load(&file)?.drawing;
            if vertex >= d.num_vertices() {
                bail!("{vertex} is not a vertex");
            }
            let class = classify_link(&d, VertexId(vertex))?;
            let shape = match class {
                LinkClass::Good(x) => format!("good, sees dart {}", x.0),
                LinkClass::Cat => "bad (cat)".into(),
                LinkClass::Dog(DogFacing::Left) => "bad (dog facing left)".into(),
                LinkClass::Dog(DogFacing::Right) => "bad (dog facing right)".into(),
                LinkClass::Bad => "bad".into(),
            };
            println!("degree {}, link {shape}", d.graph().degree(VertexId(vertex)));
            let LinkClass::Good(dart) = class else { return Ok(false) };
            let c = direct_collapse(&d, dart)?;
            println!("collapsed along dart {} into vertex {}", dart.0, d.graph().head(dart).0);
            if let Some(out) = output {
                write_drawing(out, &c.drawing, None)?;
            }
            Ok(true)
        }
    }
}

fn generate(kind: GenerateKind) -> Result<()> {
    match kind {
        GenerateKind::Lattice { a, b, c, output } => write_drawing(output, &lattice(a, b, c)?, None)?,
        GenerateKind::Grid { a, b, c, output } => write_drawing(output, &square_grid(a, b, c)?, None)?,
        GenerateKind::Zipper { n, twist, output } => write_drawing(output, &zipper(n, twist)?, None)?,
        GenerateKind::Random { n, loops, seed: s, output } => {
            let mut rng = rng_from_seed(seed(s));
            let opts = RandomTriangulationOptions { loopless: !loops, ..Default::default() };
            write_drawing(output, &random_triangulation(n, &mut rng, opts)?, None)?
        }
        GenerateKind::Jitter { file, magnitude, seed: s, output } => {
            let f = load(&file)?;
            let mut rng = rng_from_seed(seed(s));
            write_drawing(output, &jitter(&f.drawing, magnitude, &mut rng)?, f.weights.as_deref())?
        }
        GenerateKind::Weights { file, lo, hi, seed: s, output } => {
            if !(lo > 0.0 && lo <= hi) {
                bail!("weights need 0 < lo <= hi");
            }
            let d = load(&file)?.drawing;
            let mut rng = rng_from_seed(seed(s));
            write_weights(output, random_weights(d.graph().num_edges(), &mut rng, lo, hi).values())?
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
