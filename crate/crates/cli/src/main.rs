use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_traits::One;

use toric_stability::corpus::{corpus, find, ExampleInput};
use toric_stability::exactlin::Rational;
use toric_stability::fan::{normal_fan_from_vertices, Fan};
use toric_stability::formats::{parse_divisor_for, parse_fan, parse_polytope, parse_rational, parse_slice, write_region_csv};
use toric_stability::kleinschmidt::{classify, criterion_maximum, gamma, CriterionCase, Rank2Variety};
use toric_stability::stability::{check_tangent, region_scan, GridBox, RegionStatus, StabilityStatus, StabilityVerdict};
use toric_stability::surfaces::{classify_surface, SurfaceFan};

#[derive(Parser)]
#[command(name = "toricstab", version, about = "Slope stability of tangent bundles on smooth projective toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide (semi)stability for a fan with a divisor, or for a polytope.
    Check(CheckArgs),
    /// Closed-form verdicts for Picard rank two.
    Rank2(Rank2Args),
    /// Classify a smooth complete toric surface.
    Surface {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Scan a two-parameter family of divisors and write a CSV.
    Region(RegionArgs),
    /// Built-in examples.
    Examples {
        #[command(subcommand)]
        action: Option<ExampleAction>,
    },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, requires = "divisor", conflicts_with = "polytope")]
    fan: Option<PathBuf>,
    #[arg(long, requires = "fan")]
    divisor: Option<PathBuf>,
    #[arg(long)]
    polytope: Option<PathBuf>,
    /// Ask only whether the bundle is semistable (exit 0 if so, 2 if not).
    #[arg(long)]
    semistable: bool,
}

#[derive(Args)]
struct Rank2Args {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    /// Twists a1,...,ar in nondecreasing order.
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<u64>,
    #[arg(long, requires = "mu", conflicts_with = "gamma")]
    lambda: Option<String>,
    #[arg(long, requires = "lambda")]
    mu: Option<String>,
    #[arg(long)]
    gamma: bool,
    #[arg(long, requires = "gamma", default_value = "1/1000000000")]
    tol: String,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long)]
    fan: PathBuf,
    #[arg(long)]
    slice: PathBuf,
    /// x0,x1,y0,y1 (rationals); the scan covers (x0,x1] × (y0,y1].
    #[arg(long = "box", value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    bounds: Vec<String>,
    /// N,M
    #[arg(long, value_delimiter = ',')]
    grid: Vec<u32>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum ExampleAction {
    List,
    Run { name: String },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn rational(label: &str, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| anyhow::anyhow!("--{label}: {e}"))
}

fn status_code(s: StabilityStatus) -> u8 {
    match s {
        StabilityStatus::Stable => 0,
        StabilityStatus::Unstable => 2,
        StabilityStatus::SemistableNotStable => 3,
    }
}

fn print_verdict(fan: &Fan, v: &StabilityVerdict) {
    println!("status: {}", v.status);
    println!("margin: {}", v.margin);
    println!("rhs: {}", v.rhs);
    println!("boundary volume: {}", v.volumes.total);
    if v.witnesses.is_empty() {
        println!("witnesses: none");
        return;
    }
    println!("witnesses:");
    for w in &v.witnesses {
        let rays: Vec<String> = w.rays.iter().map(|&i| fan.ray_rational(i).to_string()).collect();
        println!(
            "  dim {} rays {} [{}] lhs {} rhs {} margin {}",
            w.subspace.dim(),
            toric_stability::stability::ray_label(&w.rays),
            rays.join(" "),
            w.lhs,
            w.rhs,
            w.margin()
        );
    }
}

fn check(args: CheckArgs) -> Result<u8> {
    let (fan, d) = match (&args.fan, &args.divisor, &args.polytope) {
        (Some(f), Some(d), None) => {
            let fan = parse_fan(&read(f)?).with_context(|| format!("in {}", f.display()))?;
            let d = parse_divisor_for(&read(d)?, &fan).with_context(|| format!("in {}", d.display()))?;
            (fan, d)
        }
        (None, None, Some(p)) => {
            let pts = parse_polytope(&read(p)?).with_context(|| format!("in {}", p.display()))?;
            normal_fan_from_vertices(&pts).with_context(|| format!("normal fan of {}", p.display()))?
        }
        _ => bail!("give either --fan and --divisor, or --polytope"),
    };
    let v = check_tangent(&fan, &d)?;
    print_verdict(&fan, &v);
    Ok(if args.semistable {
        if v.status.is_semistable() {
            println!("semistable: yes");
            0
        } else {
            println!("semistable: no");
            2
        }
    } else {
        status_code(v.status)
    })
}

fn case_label(c: &CriterionCase) -> String {
    match c {
        CriterionCase::FirstRay => "span(v0)".into(),
        CriterionCase::Base => "base".into(),
        CriterionCase::FiberRay => "span(w0)".into(),
        CriterionCase::Subset(i) => format!("subset {{{}}} x fiber", i.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
    }
}

fn rank2(args: Rank2Args) -> Result<u8> {
    if args.a.len() != args.r {
        bail!("--a lists {} twists but --r is {}", args.a.len(), args.r);
    }
    let var = Rank2Variety::new(args.r, args.s, args.a.clone())?;
    if args.gamma {
        let tol = rational("tol", &args.tol)?;
        let g = gamma(args.r, args.s, &tol)?;
        if g.exact {
            println!("gamma = {} (exact)", g.lo);
        } else {
            println!("gamma in [{}, {}]", g.lo, g.hi);
        }
        return Ok(0);
    }
    let (Some(l), Some(m)) = (&args.lambda, &args.mu) else {
        bail!("give --lambda and --mu, or --gamma");
    };
    let (l, m) = (rational("lambda", l)?, rational("mu", m)?);
    let verdict = classify(&var, &l, &m)?;
    let report = criterion_maximum(&var, &verdict.nu);
    println!("status: {}", verdict.status);
    println!("nu: {}", verdict.nu);
    println!("fano: {}", var.is_fano());
    println!("threshold: {}", report.threshold);
    println!("max term: {} ({})", report.max_term, case_label(&report.argmax));
    Ok(status_code(verdict.status))
}

fn surface(path: &Path) -> Result<u8> {
    let fan = parse_fan(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let sf = SurfaceFan::from_fan(&fan)?;
    let c = classify_surface(&sf)?;
    println!("rays: {sf}");
    println!("b: {:?}", sf.b_sequence());
    println!("class: {}", c.kind);
    println!("stability: {}", c.stab_profile);
    let t: Vec<String> = c.terminals.iter().map(|t| t.to_string()).collect();
    println!("minimal models: {}", t.join(", "));
    match &c.lemma32 {
        Some(m) => println!(
            "normal form: a = {}, c = {}, e = {}; (0,1) <- ray {}, (1,0) <- ray {}, basis {:?}",
            m.a, m.c, m.e, m.v1, m.v2, m.basis
        ),
        None => println!("normal form: none"),
    }
    Ok(0)
}

fn region(args: RegionArgs) -> Result<u8> {
    if args.bounds.len() != 4 {
        bail!("--box needs x0,x1,y0,y1");
    }
    if args.grid.len() != 2 {
        bail!("--grid needs N,M");
    }
    let b: Vec<Rational> = args.bounds.iter().map(|t| rational("box", t)).collect::<Result<_>>()?;
    if b[1] <= b[0] || b[3] <= b[2] {
        bail!("--box must satisfy x0 < x1 and y0 < y1");
    }
    let fan = parse_fan(&read(&args.fan)?).with_context(|| format!("in {}", args.fan.display()))?;
    let slice = parse_slice(&read(&args.slice)?).with_context(|| format!("in {}", args.slice.display()))?;
    let bx = GridBox {
        x0: b[0].clone(),
        x1: b[1].clone(),
        y0: b[2].clone(),
        y1: b[3].clone(),
    };
    let rows = region_scan(&fan, &slice, &bx, (args.grid[0], args.grid[1]))?;
    let file = fs::File::create(&args.out).with_context(|| format!("cannot create {}", args.out.display()))?;
    write_region_csv(&rows, BufWriter::new(file))?;
    let count = |s: RegionStatus| rows.iter().filter(|r| r.status == s).count();
    println!(
        "{} points: {} stable, {} semistable, {} unstable, {} outside; wrote {}",
        rows.len(),
        count(RegionStatus::Verdict(StabilityStatus::Stable)),
        count(RegionStatus::Verdict(StabilityStatus::SemistableNotStable)),
        count(RegionStatus::Verdict(StabilityStatus::Unstable)),
        count(RegionStatus::Outside),
        args.out.display()
    );
    Ok(0)
}

fn examples(action: Option<ExampleAction>) -> Result<u8> {
    match action.unwrap_or(ExampleAction::List) {
        ExampleAction::List => {
            for r in corpus() {
                println!("{:<24} {:<20} {}", r.name, r.expected.to_string(), r.note);
            }
            Ok(0)
        }
        ExampleAction::Run { name } => {
            let Some(r) = find(&name) else {
                bail!("no example named {name:?}; see `toricstab examples list`");
            };
            let (fan, d) = r.resolve()?;
            let anticanonical = d.coeffs.iter().all(Rational::is_one);
            println!("example: {}", r.name);
            println!("note: {}", r.note);
            match &r.input {
                ExampleInput::Vertices(v) => println!("input: {} vertices", v.len()),
                ExampleInput::FanDivisor { .. } => println!("input: fan and divisor"),
            }
            println!("dimension: {}, rays: {}", fan.dim(), fan.n_rays());
            println!("divisor: {d}{}", if anticanonical { " (anticanonical)" } else { "" });
            let v = check_tangent(&fan, &d)?;
            print_verdict(&fan, &v);
            println!("expected: {}", r.expected);
            Ok(status_code(v.status))
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check(a) => check(a),
        Command::Rank2(a) => rank2(a),
        Command::Surface { fan } => surface(&fan),
        Command::Region(a) => region(a),
        Command::Examples { action } => examples(action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
