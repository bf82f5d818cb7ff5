mod crosscheck;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use simpair_core::oracle::{
    brute_embedding, brute_isomorphism, brute_reduction, DEFAULT_CAP, DEFAULT_ISO_CAP,
};
use simpair_core::shapes::{
    crs_of, cs_of, fs_of, gfs_of, lcs_all, lfs_all, min_size, sc_member, shape_leq,
};
use simpair_core::{
    build_shape_pair, decide_embedding, decide_isomorphism, decide_reduction, orbit_pair,
    random_pair, verify_witness, Decision, Error, FinPair, LocalFineShape, Permutation, Profile,
    ShapeSeq, Witness, WitnessMode,
};

#[derive(Parser)]
#[command(
    name = "simpair",
    version,
    about = "Decide reduction, embedding and isomorphism of nested finite equivalence relation pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the shape invariants of a pair.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide a relation between two pairs. Exit 0 if it holds, 1 if not.
    Decide {
        relation: Relation,
        a: PathBuf,
        b: PathBuf,
        /// Write the verified witness here when the relation holds.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
        /// Also run the brute-force oracle; exit 3 on disagreement.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long)]
        json: bool,
    },
    /// Check a witness file against two pairs. Exit 0 if valid, 1 if not.
    Verify {
        a: PathBuf,
        b: PathBuf,
        witness: PathBuf,
    },
    /// Generate a pair and write it as JSON.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(short, long, global = true, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Compare the deciders with the brute-force oracles on many instances.
    Crosscheck {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances at sizes above `n-max`.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Directory for reproducer files when a disagreement is found.
        #[arg(long, value_name = "DIR", default_value = "crosscheck-failures")]
        out: PathBuf,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long)]
        json: bool,
    },
    /// Work with shape literals such as `<2,1|0;0>`.
    Shape {
        #[command(subcommand)]
        op: ShapeOp,
    },
}

#[derive(clap::Args)]
struct CapArg {
    /// Bound on candidate maps searched by the oracle.
    #[arg(long, env = "SIMPAIR_CAP")]
    cap: Option<u128>,
}

impl CapArg {
    fn caps(&self) -> Caps {
        match self.cap {
            Some(c) => Caps {
                maps: c,
                bijections: c,
            },
            None => Caps {
                maps: DEFAULT_CAP,
                bijections: DEFAULT_ISO_CAP,
            },
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Caps {
    pub maps: u128,
    pub bijections: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Relation {
    Red,
    Emb,
    Iso,
}

impl Relation {
    pub(crate) const ALL: [Relation; 3] = [Relation::Red, Relation::Emb, Relation::Iso];

    pub(crate) fn mode(self) -> WitnessMode {
        match self {
            Relation::Red => WitnessMode::Reduction,
            Relation::Emb => WitnessMode::Embedding,
            Relation::Iso => WitnessMode::Isomorphism,
        }
    }

    pub(crate) fn decide(self, a: &FinPair, b: &FinPair) -> Decision {
        match self {
            Relation::Red => decide_reduction(a, b),
            Relation::Emb => decide_embedding(a, b),
            Relation::Iso => decide_isomorphism(a, b),
        }
    }

    pub(crate) fn oracle(
        self,
        a: &FinPair,
        b: &FinPair,
        caps: Caps,
    ) -> simpair_core::Result<Option<Witness>> {
        match self {
            Relation::Red => brute_reduction(a, b, caps.maps),
            Relation::Emb => brute_embedding(a, b, caps.maps),
            Relation::Iso => brute_isomorphism(a, b, caps.bijections),
        }
    }
}

#[derive(Subcommand)]
enum GenKind {
    /// The pair with one F-class per local fine shape literal.
    Shape {
        #[arg(required_unless_present = "file")]
        shapes: Vec<String>,
        /// Read the literals from a JSON list instead.
        #[arg(long, value_name = "FILE", conflicts_with = "shapes")]
        file: Option<PathBuf>,
    },
    /// E = orbits of the listed generators, F = orbits of those plus `--full`.
    Orbit {
        n: usize,
        /// Generators in cycle notation, e.g. "(0 2)(1 3)".
        sub: Vec<String>,
        #[arg(long, num_args = 1..)]
        full: Vec<String>,
    },
    /// A seeded random pair.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "uniform-refinement")]
        profile: Profile,
    },
}

#[derive(Subcommand)]
enum ShapeOp {
    /// Print the canonical form of a literal.
    Parse { literal: String },
    /// Exit 0 if `a ≤ b` pointwise, 1 otherwise.
    Leq { a: String, b: String },
    /// Exit 0 if the literal is a valid local coarse shape, 1 otherwise.
    Sc { literal: String },
    /// Least class size realizing a local coarse shape.
    Minsize { literal: String },
}

/// A failed command and the exit code it maps to.
#[derive(Debug)]
pub(crate) enum Failure {
    Input(String),
    Disagreement(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Disagreement(_) => 3,
            Failure::Cap(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "error: {m}"),
            Failure::Disagreement(m) => write!(f, "disagreement: {m}"),
            Failure::Cap(m) => write!(f, "cap exceeded: {m}"),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Invariants { file, json } => invariants(&read_pair(&file)?, json),
        Command::Decide {
            relation,
            a,
            b,
            witness,
            oracle,
            cap,
            json,
        } => decide(
            relation,
            &read_pair(&a)?,
            &read_pair(&b)?,
            witness.as_deref(),
            oracle.then(|| cap.caps()),
            json,
        ),
        Command::Verify { a, b, witness } => {
            let w = Witness::parse_json(&read(&witness)?)?;
            let v = verify_witness(&read_pair(&a)?, &read_pair(&b)?, &w)?;
            for violation in &v.violations {
                println!("{violation}");
            }
            println!("valid={}", v.ok());
            Ok(v.ok())
        }
        Command::Gen { kind, output } => {
            let pair = generate(kind)?;
            let text = pair.to_json();
            match output {
                Some(path) => write(&path, &text)?,
                None => println!("{text}"),
            }
            Ok(true)
        }
        Command::Crosscheck {
            n_max,
            seed,
            count,
            out,
            cap,
            json,
        } => {
            let report = crosscheck::run(n_max, seed, count, cap.caps())?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            if report.disagreements.is_empty() {
                Ok(true)
            } else {
                let files = crosscheck::write_reproducers(&out, &report.disagreements)
                    .map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
                Err(Failure::Disagreement(format!(
                    "{} disagreement(s); reproducers in {} ({files} files)",
                    report.disagreements.len(),
                    out.display()
                )))
            }
        }
        Command::Shape { op } => shape(op),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, format!("{text}\n"))
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_pair(path: &Path) -> Result<FinPair, Failure> {
    FinPair::parse_json(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn invariants(p: &FinPair, as_json: bool) -> Outcome {
    let lfs = lfs_all(p);
    let lcs = lcs_all(p);
    let gfs = gfs_of(p);
    if as_json {
        let classes: Vec<Value> = lfs
            .iter()
            .zip(&lcs)
            .map(|(f, c)| json!({ "lfs": f.to_string(), "lcs": c.to_string() }))
            .collect();
        let gfs: Vec<Value> = gfs
            .entries()
            .iter()
            .map(|(shape, count)| json!({ "shape": shape.to_string(), "count": count.to_string() }))
            .collect();
        let report = json!({
            "n": p.n(),
            "fs_E": fs_of(p.e()).to_string(),
            "cs_E": cs_of(p.e()).to_string(),
            "fs_F": fs_of(p.f()).to_string(),
            "cs_F": cs_of(p.f()).to_string(),
            "classes": classes,
            "crs": crs_of(p).to_string(),
            "gfs": gfs,
        });
        println!("{report}");
    } else {
        println!("n={}", p.n());
        println!("fs(E)={}", fs_of(p.e()));
        println!("cs(E)={}", cs_of(p.e()));
        println!("fs(F)={}", fs_of(p.f()));
        println!("cs(F)={}", cs_of(p.f()));
        for (c, (f, l)) in lfs.iter().zip(&lcs).enumerate() {
            println!("class[{c}] lfs={f} lcs={l}");
        }
        println!("crs={}", crs_of(p));
        println!("gfs={gfs}");
    }
    Ok(true)
}

fn decide(
    relation: Relation,
    a: &FinPair,
    b: &FinPair,
    witness_path: Option<&Path>,
    oracle: Option<Caps>,
    as_json: bool,
) -> Outcome {
    let decision = relation.decide(a, b);
    if let Some(w) = &decision.witness {
        if !verify_witness(a, b, w)?.ok() {
            return Err(Failure::Disagreement(format!(
                "decider emitted an invalid witness {:?}",
                w.map
            )));
        }
    }
    let oracle_result = match oracle {
        Some(caps) => {
            let found = relation.oracle(a, b, caps)?;
            if found.is_some() != decision.holds {
                return Err(Failure::Disagreement(format!(
                    "decider says {}, oracle says {}",
                    decision.holds,
                    found.is_some()
                )));
            }
            Some(found)
        }
        None => None,
    };
    if let (Some(path), Some(w)) = (witness_path, &decision.witness) {
        write(path, &w.to_json())?;
    }
    let mode = relation.mode();
    if as_json {
        let mut report = json!({
            "relation": mode.to_string(),
            "holds": decision.holds,
            "witness": decision.witness.as_ref().map(|w| w.map.clone()),
        });
        if let Some(found) = &oracle_result {
            report["oracle"] = json!({ "holds": found.is_some(), "witness": found.as_ref().map(|w| w.map.clone()) });
        }
        println!("{report}");
    } else {
        println!("relation={mode}");
        println!("holds={}", decision.holds);
        if let Some(w) = &decision.witness {
            println!("witness={:?}", w.map);
        }
        if let Some(found) = &oracle_result {
            println!("oracle=agree");
            if let Some(w) = found {
                println!("oracle_witness={:?}", w.map);
            }
        }
    }
    Ok(decision.holds)
}

fn generate(kind: GenKind) -> Result<FinPair, Failure> {
    match kind {
        GenKind::Shape { shapes, file } => {
            let g: Vec<LocalFineShape> = match file {
                Some(path) => serde_json::from_str(&read(&path)?)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                None => shapes
                    .iter()
                    .map(|s| LocalFineShape::new(ShapeSeq::parse_literal(s)?))
                    .collect::<simpair_core::Result<_>>()?,
            };
            Ok(build_shape_pair(&g)?)
        }
        GenKind::Orbit { n, sub, full } => {
            let parse = |texts: &[String]| {
                texts
                    .iter()
                    .map(|t| Permutation::parse_cycles(t, n))
                    .collect::<simpair_core::Result<Vec<_>>>()
            };
            let sub = parse(&sub)?;
            let mut all = sub.clone();
            all.extend(parse(&full)?);
            Ok(orbit_pair(n, &sub, &all)?)
        }
        GenKind::Random { seed, n, profile } => Ok(random_pair(seed, n, profile)),
    }
}

fn shape(op: ShapeOp) -> Outcome {
    match op {
        ShapeOp::Parse { literal } => {
            println!("{}", ShapeSeq::parse_literal(&literal)?);
            Ok(true)
        }
        ShapeOp::Leq { a, b } => {
            let holds = shape_leq(&ShapeSeq::parse_literal(&a)?, &ShapeSeq::parse_literal(&b)?);
            println!("leq={holds}");
            Ok(holds)
        }
        ShapeOp::Sc { literal } => {
            let member = sc_member(&ShapeSeq::parse_literal(&literal)?);
            println!("sc={member}");
            Ok(member)
        }
        ShapeOp::Minsize { literal } => {
            println!("minsize={}", min_size(&ShapeSeq::parse_literal(&literal)?)?);
            Ok(true)
        }
    }
}
