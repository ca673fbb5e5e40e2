//! Command line interface. Every subcommand prints a JSON document to
//! stdout (or `--out`); the `verify` suites additionally drive the
//! exit code: 0 iff every check passed.

use crate::exactlin::PrimeField;
use crate::formats::{parse_group_arg, parse_module_arg, read_json, MapSpec, ModuleSpec};
use crate::groups::{subgroup, Group};
use crate::reps::{induce, jordan_type, restrict};
use crate::stable::{GhostVerdict, StableCat};
use crate::verify::{
    classify_gh, verify_all, verify_counterexamples, verify_decomposition, verify_no_ghosts,
    verify_tate_fullness, SearchConfig,
};
use crate::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "stmod",
    version,
    about = "Stable module category computations over finite p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Syzygy Omega^d of a module (negative d for cosyzygies)
    Omega {
        /// Group: a JSON file, C<n>, or CpxCp:<p>
        #[arg(long)]
        group: Option<String>,
        /// Module: a JSON file, k, regular, or cyclic:<len>
        #[arg(long, default_value = "k")]
        module: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tate cohomology dimensions of a module over a degree window
    Tate {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "k")]
        module: String,
        /// Degrees -bound..=bound
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hom, projective-hom and stable-hom dimensions for a pair
    StableHom {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ghost check for a map given as a JSON file
    GhostCheck {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        /// Also run the dual-sided check
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Induce a module from the subgroup generated by the given elements
    Induce {
        #[arg(long)]
        group: String,
        /// Generator indices of the subgroup, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<usize>,
        /// Module over the subgroup (file or shorthand)
        #[arg(long, default_value = "k")]
        module: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restrict a module to the subgroup generated by the given elements
    Restrict {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<usize>,
        #[arg(long, default_value = "regular")]
        module: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Jordan type of a module over a cyclic p-group
    Jordan {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        module: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report whether the no-ghosts property holds for the group
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verification suites producing JSON reports
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Random search for stably non-trivial maps invisible to Tate cohomology
    NoGhosts(VerifyOpts),
    /// Re-run the explicit counterexample constructions
    Counterexamples(VerifyOpts),
    /// Decomposition of random modules into suspensions of k
    Decomposition(VerifyOpts),
    /// Windowed comparison of stable maps with graded Tate-module maps
    Fullness(VerifyOpts),
    /// Everything applicable to the group
    All(VerifyOpts),
}

#[derive(Args)]
struct VerifyOpts {
    #[arg(long, default_value = "C2")]
    group: String,
    /// RNG seed (reports are deterministic for a fixed seed)
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    dim_bound: Option<usize>,
    /// Ghost degree bound
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long)]
    iso_attempts: Option<usize>,
    /// Run searches even where the property is expected to fail
    #[arg(long)]
    override_unsafe: bool,
    /// Add wall-clock ms to each check (breaks byte-identical reruns)
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl VerifyOpts {
    fn to_config(&self, group: &Group) -> Result<SearchConfig, Error> {
        let p = group
            .p_group_characteristic()
            .ok_or_else(|| Error::InvalidGroup("group is not a p-group".into()))?;
        let mut cfg = SearchConfig::new(self.seed, p);
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(d) = self.dim_bound {
            cfg.dim_bound = d;
        }
        if let Some(b) = self.bound {
            cfg.ghost_degree_bound = b;
        }
        if let Some(a) = self.iso_attempts {
            cfg.iso_attempts = a;
        }
        cfg.timing = self.timing;
        Ok(cfg)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Error::Io(format!("writing {}", path.display()), e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_value(out: &Option<PathBuf>, value: &Value) -> Result<(), Error> {
    emit(out, &serde_json::to_string_pretty(value).expect("json"))
}

fn cat_for(group: &Arc<Group>) -> Result<StableCat, Error> {
    let p = group
        .p_group_characteristic()
        .ok_or_else(|| Error::InvalidGroup("group is not a p-group".into()))?;
    StableCat::new(group.clone(), PrimeField::new(p)?)
}

fn load_module(arg: &str, group: &Option<String>) -> Result<crate::reps::Module, Error> {
    let group = group.as_deref().map(parse_group_arg).transpose()?;
    parse_module_arg(arg, group.as_ref(), None)
}

fn verdict_value(verdict: &GhostVerdict) -> Value {
    let witness = match verdict {
        GhostVerdict::NonGhost { witness, .. } => {
            Some(serde_json::to_value(MapSpec::from_map(witness)).expect("map spec"))
        }
        _ => None,
    };
    json!({
        "verdict": verdict.describe(),
        "ghostlike": verdict.is_ghostlike(),
        "certified": verdict.is_certified(),
        "witness": witness,
    })
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Omega {
            group,
            module,
            degree,
            out,
        } => {
            let m = load_module(&module, &group)?;
            let cat = cat_for(m.group())?;
            let mut cur = m;
            for _ in 0..degree.abs() {
                cur = if degree > 0 {
                    cat.omega(&cur)?
                } else {
                    cat.omega_inverse(&cur)?
                };
            }
            emit_value(
                &out,
                &json!({
                    "degree": degree,
                    "dim": cur.dim(),
                    "module": serde_json::to_value(ModuleSpec::from_module(&cur)).expect("spec"),
                }),
            )?;
            Ok(0)
        }
        Command::Tate {
            group,
            module,
            bound,
            out,
        } => {
            let m = load_module(&module, &group)?;
            let cat = cat_for(m.group())?;
            let mut dims = Vec::new();
            for degree in -(bound as i64)..=bound as i64 {
                dims.push(json!({"degree": degree, "dim": cat.tate_dim(&m, degree)?}));
            }
            emit_value(
                &out,
                &json!({"group": m.group().name(), "module_dim": m.dim(), "dims": dims}),
            )?;
            Ok(0)
        }
        Command::StableHom {
            group,
            source,
            target,
            out,
        } => {
            let s = load_module(&source, &group)?;
            let t = load_module(&target, &group)?;
            let cat = cat_for(s.group())?;
            let sh = cat.stable_hom(&s, &t)?;
            emit_value(
                &out,
                &json!({
                    "hom_dim": sh.hom_dim(),
                    "projective_hom_dim": sh.phom_dim(),
                    "stable_dim": sh.stable_dim(),
                }),
            )?;
            Ok(0)
        }
        Command::GhostCheck {
            map,
            bound,
            dual,
            out,
        } => {
            let spec: MapSpec = read_json(&map)?;
            let f = spec.to_map()?;
            let cat = cat_for(f.source().group())?;
            let verdict = cat.is_ghost(&f, bound, None)?;
            let mut doc = json!({
                "bound": bound,
                "stably_trivial": cat.is_stably_trivial(&f)?,
                "ghost": verdict_value(&verdict),
            });
            if dual {
                let dv = cat.is_dual_ghost(&f, bound, None)?;
                doc["dual_ghost"] = verdict_value(&dv);
            }
            emit_value(&out, &doc)?;
            Ok(0)
        }
        Command::Induce {
            group,
            subgroup: gens,
            module,
            out,
        } => {
            let g = parse_group_arg(&group)?;
            let sub = subgroup(&g, &gens)?;
            let h = sub.as_group()?;
            let m = parse_module_arg(&module, Some(&h), g.p_group_characteristic())?;
            let ind = induce(&sub, &m)?;
            emit_value(
                &out,
                &json!({
                    "subgroup_order": sub.order(),
                    "index": sub.index_in_parent(),
                    "dim": ind.dim(),
                    "module": serde_json::to_value(ModuleSpec::from_module(&ind)).expect("spec"),
                }),
            )?;
            Ok(0)
        }
        Command::Restrict {
            group,
            subgroup: gens,
            module,
            out,
        } => {
            let g = parse_group_arg(&group)?;
            let sub = subgroup(&g, &gens)?;
            let m = parse_module_arg(&module, Some(&g), None)?;
            let res = restrict(&m, &sub)?;
            emit_value(
                &out,
                &json!({
                    "subgroup_order": sub.order(),
                    "dim": res.dim(),
                    "module": serde_json::to_value(ModuleSpec::from_module(&res)).expect("spec"),
                }),
            )?;
            Ok(0)
        }
        Command::Jordan { group, module, out } => {
            let m = load_module(&module, &group)?;
            let jt = jordan_type(&m)?;
            emit_value(
                &out,
                &json!({"group": m.group().name(), "dim": m.dim(), "jordan_type": jt}),
            )?;
            Ok(0)
        }
        Command::Classify { group, out } => {
            let g = parse_group_arg(&group)?;
            let p = g
                .p_group_characteristic()
                .ok_or_else(|| Error::InvalidGroup("group is not a p-group".into()))?;
            let holds = classify_gh(&g, p)?;
            emit_value(
                &out,
                &json!({
                    "group": g.name(),
                    "order": g.order(),
                    "p": p,
                    "no_ghosts_holds": holds,
                }),
            )?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let (opts, report) = match &suite {
                Suite::NoGhosts(o) => {
                    let g = parse_group_arg(&o.group)?;
                    (o, verify_no_ghosts(&g, &o.to_config(&g)?, o.override_unsafe)?)
                }
                Suite::Counterexamples(o) => {
                    let g = parse_group_arg(&o.group)?;
                    (o, verify_counterexamples(&o.to_config(&g)?)?)
                }
                Suite::Decomposition(o) => {
                    let g = parse_group_arg(&o.group)?;
                    (o, verify_decomposition(&g, &o.to_config(&g)?)?)
                }
                Suite::Fullness(o) => {
                    let g = parse_group_arg(&o.group)?;
                    (o, verify_tate_fullness(&g, &o.to_config(&g)?)?)
                }
                Suite::All(o) => {
                    let g = parse_group_arg(&o.group)?;
                    (o, verify_all(&g, &o.to_config(&g)?, o.override_unsafe)?)
                }
            };
            emit(&opts.out, &report.to_json())?;
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

/// Parses and runs; returns the process exit code.
pub fn main_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through this path too
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;

    fn run_args(args: &[&str]) -> i32 {
        main_from(std::iter::once("stmod").chain(args.iter().copied()))
    }

    #[test]
    fn classify_runs_for_shorthand_groups() {
        assert_eq!(run_args(&["classify", "--group", "C2"]), 0);
        assert_eq!(run_args(&["classify", "--group", "C4"]), 0);
        assert_eq!(run_args(&["classify", "--group", "CpxCp:2"]), 0);
    }

    #[test]
    fn classify_output_content() {
        let dir = std::env::temp_dir().join("stmod-cli-classify");
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("c3.json");
        assert_eq!(
            run_args(&["classify", "--group", "C3", "--out", out.to_str().unwrap()]),
            0
        );
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["no_ghosts_holds"], json!(true));
        assert_eq!(v["p"], json!(3));
    }

    #[test]
    fn omega_and_tate_and_jordan() {
        let dir = std::env::temp_dir().join("stmod-cli-basic");
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("omega.json");
        assert_eq!(
            run_args(&[
                "omega", "--group", "CpxCp:2", "--module", "k", "--degree", "2", "--out",
                out.to_str().unwrap()
            ]),
            0
        );
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["dim"], json!(5));

        let out = dir.join("tate.json");
        assert_eq!(
            run_args(&[
                "tate", "--group", "C4", "--module", "k", "--bound", "2", "--out",
                out.to_str().unwrap()
            ]),
            0
        );
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        let dims = v["dims"].as_array().unwrap();
        assert_eq!(dims.len(), 5);
        assert!(dims.iter().all(|d| d["dim"] == json!(1)));

        let out = dir.join("jordan.json");
        assert_eq!(
            run_args(&[
                "jordan", "--group", "C4", "--module", "cyclic:3", "--out",
                out.to_str().unwrap()
            ]),
            0
        );
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["jordan_type"], json!([3]));
    }

    #[test]
    fn ghost_check_on_a_file() {
        use crate::exactlin::Matrix;
        use crate::reps::{cyclic_module, ModuleMap};
        let dir = std::env::temp_dir().join("stmod-cli-ghost");
        std::fs::create_dir_all(&dir).unwrap();
        let g = cyclic(4).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        let m = cyclic_module(&g, f2, 2).unwrap();
        // multiplication by sigma - 1 on the length-two module
        let mat = m
            .action(1)
            .sub(&Matrix::identity(f2, 2))
            .unwrap();
        let map = ModuleMap::new(m.clone(), m, mat).unwrap();
        let path = dir.join("map.json");
        std::fs::write(
            &path,
            serde_json::to_string(&MapSpec::from_map(&map)).unwrap(),
        )
        .unwrap();
        let out = dir.join("verdict.json");
        assert_eq!(
            run_args(&[
                "ghost-check", "--map", path.to_str().unwrap(), "--dual", "--out",
                out.to_str().unwrap()
            ]),
            0
        );
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["ghost"]["ghostlike"], json!(true));
        assert_eq!(v["dual_ghost"]["ghostlike"], json!(true));
        assert_eq!(v["stably_trivial"], json!(false));
    }

    #[test]
    fn induce_and_restrict_dims() {
        let dir = std::env::temp_dir().join("stmod-cli-ind");
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("ind.json");
        assert_eq!(
            run_args(&[
                "induce", "--group", "C8", "--subgroup", "2", "--module", "k", "--out",
                out.to_str().unwrap()
            ]),
            0
        );
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["subgroup_order"], json!(4));
        assert_eq!(v["dim"], json!(2));

        let out = dir.join("res.json");
        assert_eq!(
            run_args(&[
                "restrict", "--group", "C8", "--subgroup", "2", "--module", "regular",
                "--out", out.to_str().unwrap()
            ]),
            0
        );
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["dim"], json!(8));
    }

    #[test]
    fn verify_exit_codes() {
        // C2 passes
        assert_eq!(
            run_args(&[
                "verify", "no-ghosts", "--group", "C2", "--seed", "7", "--trials", "10",
                "--dim-bound", "4"
            ]),
            0
        );
        // C4 refuses without the override, fails with it
        assert_eq!(
            run_args(&["verify", "no-ghosts", "--group", "C4", "--seed", "7"]),
            2
        );
        assert_eq!(
            run_args(&[
                "verify", "no-ghosts", "--group", "C4", "--seed", "7", "--trials", "5",
                "--dim-bound", "4", "--override-unsafe"
            ]),
            1
        );
        // decomposition fails for C4
        assert_eq!(
            run_args(&[
                "verify", "decomposition", "--group", "C4", "--seed", "7", "--trials", "5",
                "--dim-bound", "4"
            ]),
            1
        );
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert_eq!(run_args(&["classify", "--group", "C0"]), 2);
        assert_eq!(run_args(&["classify", "--group", "/no/such/file.json"]), 2);
        assert_eq!(run_args(&["verify", "no-ghosts", "--group", "C2"]), 2); // missing --seed
        assert_eq!(run_args(&["jordan", "--group", "CpxCp:2", "--module", "k"]), 2);
    }
}
