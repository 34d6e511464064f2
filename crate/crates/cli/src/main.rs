//! `homcls`: groups of homotopy classes of maps from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use homcls::abelian::GroupStructure;
use homcls::homotopy::{compute_group, homotopy_classes, Tower};
use homcls::intlinalg::{smith_normal_form, IntMatrix};
use homcls::io;
use homcls::simplicial::{cohomology_group, CoeffGroup, FinSimplicialSet, SimplicialMap};
use homcls::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "homcls", version, about = "Homotopy classes of maps into Postnikov stages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The group [X, Y] for X of dimension at most 2d−2.
    Group {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long)]
        json: bool,
    },
    /// The group [X, P_i] for any X.
    StageGroup {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long)]
        stage: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decides whether two maps into the model of Y are homotopic.
    Homotopic {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long = "map", num_args = 1, required = true)]
        maps: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decides whether a map is nullhomotopic, optionally writing a certificate.
    Nullhomotopic {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long = "map")]
        map: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Cohomology H^n(X; π).
    Cohomology {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        json: bool,
    },
    /// Smith normal form of an integer matrix given as JSON `{"rows": [[…]]}`.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, Failure>;

fn parse_target(token: &str) -> Result<homcls::postnikov::PostnikovData, Failure> {
    io::parse_target(token).map_err(|e| match e {
        Error::Parse(m) | Error::Unsupported(m) => Failure::Usage(m),
        other => Failure::Lib(other),
    })
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    io::parse_document(&text)
}

fn read_space(path: &Path) -> Result<FinSimplicialSet, Error> {
    io::space_from_json(&read_json(path)?)
}

fn group_output(g: &GroupStructure, as_json: bool, extra: Value) -> String {
    if as_json {
        let mut v = io::group_to_json(g);
        if let (Some(o), Value::Object(e)) = (v.as_object_mut(), extra) {
            o.extend(e);
        }
        v.to_string()
    } else {
        g.to_string()
    }
}

fn model_map(tower: &Tower, x: &FinSimplicialSet, path: &Path) -> Result<SimplicialMap, Error> {
    let phi = tower
        .sys
        .data
        .phi
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("target {} has no finite model for maps", tower.sys.data.name)))?;
    io::map_from_json(x, &phi.model, &read_json(path)?)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Group { space, target, json } => {
            let data = parse_target(&target)?;
            let x = read_space(&space)?;
            let t = homotopy_classes(&x, &data)?;
            Ok(group_output(&t.top().structure(), json, json!({"stage": t.stage()})))
        }
        Command::StageGroup { space, target, stage, json } => {
            let data = parse_target(&target)?;
            let x = read_space(&space)?;
            let t = compute_group(&x, &data, stage)?;
            Ok(group_output(&t.top().structure(), json, json!({"stage": t.stage()})))
        }
        Command::Homotopic { space, target, maps, json } => {
            if maps.len() != 2 {
                return Err(Failure::Usage("homotopic needs exactly two --map arguments".into()));
            }
            let data = parse_target(&target)?;
            let x = read_space(&space)?;
            let t = homotopy_classes(&x, &data)?;
            let f = model_map(&t, &x, &maps[0])?;
            let g = model_map(&t, &x, &maps[1])?;
            let (cf, cg) = (t.class_of(&f)?, t.class_of(&g)?);
            let same = cf == cg;
            if json {
                Ok(json!({
                    "schema_version": io::SCHEMA_VERSION,
                    "homotopic": same,
                    "group": io::group_to_json(&t.top().structure()),
                    "classes": [io::coords_to_json(&cf), io::coords_to_json(&cg)],
                })
                .to_string())
            } else {
                Ok(if same { "homotopic" } else { "not homotopic" }.into())
            }
        }
        Command::Nullhomotopic { space, target, map, certificate, json } => {
            let data = parse_target(&target)?;
            let x = read_space(&space)?;
            let t = homotopy_classes(&x, &data)?;
            let f = model_map(&t, &x, &map)?;
            let cert = t.nullhomotopic(&f)?;
            if let (Some(path), Some(b)) = (&certificate, &cert) {
                let doc = io::certificate_to_json(&t.cone_maps().space().clone(), &target, b);
                fs::write(path, serde_json::to_string_pretty(&doc).expect("serializable"))
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            if json {
                Ok(json!({
                    "schema_version": io::SCHEMA_VERSION,
                    "nullhomotopic": cert.is_some(),
                    "class": io::coords_to_json(&t.class_of(&f)?),
                })
                .to_string())
            } else {
                Ok(if cert.is_some() { "nullhomotopic" } else { "not nullhomotopic" }.into())
            }
        }
        Command::Cohomology { space, coeff, dim, json } => {
            let coeff: CoeffGroup = coeff.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let x = read_space(&space)?;
            let h = cohomology_group(&x, dim, &coeff)?;
            Ok(group_output(&h.structure(), json, json!({})))
        }
        Command::Snf { matrix, json } => {
            let v = read_json(&matrix)?;
            let rows = v
                .get("rows")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("matrix file needs a \"rows\" array".into()))?;
            let rows = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::Parse("each row must be an array".into()))?
                        .iter()
                        .map(io::int_from_json)
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cols = rows.first().map_or(0, Vec::len);
            let m = IntMatrix::from_rows(cols, &rows)?;
            let snf = smith_normal_form(&m);
            let diag = snf.diagonal();
            if json {
                let mat = |a: &IntMatrix| -> Value {
                    Value::Array(a.to_rows().iter().map(|r| io::coords_to_json(r)).collect())
                };
                Ok(json!({
                    "schema_version": io::SCHEMA_VERSION,
                    "diagonal": io::coords_to_json(&diag),
                    "rank": snf.rank(),
                    "s": mat(&snf.s),
                    "t": mat(&snf.t),
                })
                .to_string())
            } else {
                Ok(diag.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error[usage]: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(if e.is_input_error() { 3 } else { 2 })
        }
    }
}
