//! Verification harness: seeded randomized searches and structural
//! checks behind the `verify` subcommands, emitting deterministic JSON
//! reports.
//!
//! The headline claim being exercised: over the group algebra of a
//! finite p-group, "every map inducing zero on all Tate cohomology
//! groups is stably trivial" holds exactly for C2 (p = 2) and C3
//! (p = 3). The harness confirms the positive cases by exhaustive
//! linear algebra over random modules, and the negative cases through
//! the explicit counterexample constructions.

use crate::exactlin::{Matrix, PrimeField};
use crate::formats::{MapSpec, ModuleSpec};
use crate::groups::Group;
use crate::paperghosts::{
    cyclic_length2_control, cyclic_length2_ghost, induced_c8_ghost, rank2_ghost,
    CounterexampleBundle,
};
use crate::reps::{cyclic_module, jordan_module, jordan_type, Module};
use crate::stable::{suspension_sum, StableCat, StableHomSpace, TateClass};
use crate::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

pub const REPORT_VERSION: &str = "1";

/// Degree window for the graded-fullness check.
const FULLNESS_WINDOW: i64 = 3;
/// Test objects are sums of at most this many suspensions of k.
const FULLNESS_MAX_SUMMANDS: usize = 3;

#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim_bound: usize,
    pub ghost_degree_bound: u32,
    pub iso_attempts: usize,
    /// When set, each check record carries a wall-clock `ms` field.
    /// Off by default so that reruns are byte-identical.
    #[serde(skip)]
    pub timing: bool,
}

impl SearchConfig {
    pub fn new(seed: u64, p: u64) -> Self {
        SearchConfig {
            seed,
            trials: 200,
            dim_bound: if p == 3 { 9 } else { 8 },
            ghost_degree_bound: 4,
            iso_attempts: 20,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: Value,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub config: Value,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    fn new(config: Value) -> Self {
        Report {
            version: REPORT_VERSION.to_string(),
            config,
            checks: Vec::new(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn add(
        &mut self,
        name: &str,
        inputs: Value,
        pass: bool,
        witness: Option<Value>,
        detail: impl Into<String>,
        ms: Option<u128>,
    ) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            inputs,
            outcome: if pass { "pass" } else { "fail" }.to_string(),
            witness,
            detail: Some(detail.into()),
            ms,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == "pass")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

fn config_value(command: &str, group: &Group, cfg: &SearchConfig) -> Value {
    json!({
        "command": command,
        "group": group.name(),
        "order": group.order(),
        "seed": cfg.seed,
        "trials": cfg.trials,
        "dim_bound": cfg.dim_bound,
        "ghost_degree_bound": cfg.ghost_degree_bound,
        "iso_attempts": cfg.iso_attempts,
    })
}

fn elapsed(cfg: &SearchConfig, t0: Instant) -> Option<u128> {
    cfg.timing.then(|| t0.elapsed().as_millis())
}

/// True iff every Tate-cohomology-detecting obstruction vanishes for
/// this group: the classification says exactly C2 at p = 2 and C3 at
/// p = 3.
pub fn classify_gh(group: &Group, p: u64) -> Result<bool, Error> {
    if !group.is_p_group(p) {
        return Err(Error::InvalidGroup(format!(
            "{} (order {}) is not a {p}-group",
            group.name(),
            group.order()
        )));
    }
    Ok((group.order() == 2 && p == 2) || (group.order() == 3 && p == 3))
}

fn random_invertible(field: PrimeField, dim: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let p = field.p();
    loop {
        let entries: Vec<u64> = (0..dim * dim).map(|_| rng.gen_range(0..p)).collect();
        let m = Matrix::from_vec(field, dim, dim, entries).expect("square matrix");
        if m.inverse().expect("square").is_some() {
            return m;
        }
    }
}

fn partitions(total_bound: usize, part_bound: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total_bound, part_bound, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// A random module of dimension <= dim_bound: for cyclic groups a
/// uniformly chosen Jordan type conjugated by a random invertible
/// matrix; otherwise a random submodule of a small free module.
pub fn random_module(
    cat: &StableCat,
    dim_bound: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Module, Error> {
    let group = cat.group();
    let field = cat.field();
    if group.is_cyclic() {
        let parts = partitions(dim_bound, group.order());
        let blocks = &parts[rng.gen_range(0..parts.len())];
        let base = jordan_module(group, field, blocks)?;
        let q = random_invertible(field, base.dim(), rng);
        let q_inv = q.inverse()?.expect("invertible");
        let action: Result<Vec<Matrix>, Error> = (0..group.order())
            .map(|g| q.mul(base.action(g))?.mul(&q_inv))
            .collect();
        return Module::new(group.clone(), field, action?);
    }
    let free = crate::reps::regular_module(group, field);
    for _ in 0..50 {
        let count = rng.gen_range(1..=2);
        let vectors: Vec<Vec<u64>> = (0..count)
            .map(|_| (0..free.dim()).map(|_| rng.gen_range(0..field.p())).collect())
            .collect();
        let sub = crate::reps::submodule_from_spanning(&free, &vectors)?;
        let d = sub.module.dim();
        if d >= 1 && d <= dim_bound {
            return Ok(sub.module);
        }
    }
    Ok(cat.trivial())
}

/// For cyclic C_n: the projective-free core decomposes into
/// suspensions of k iff all its Jordan blocks are 1 or n - 1.
/// Returns a witness value when the module fails.
fn non_suspension_witness(cat: &StableCat, m: &Module) -> Result<Option<Value>, Error> {
    let n = cat.group().order();
    let (core, _) = cat.projective_free_core(m)?;
    let jt = jordan_type(&core)?;
    if jt.iter().all(|&b| b == 1 || b == n - 1) {
        return Ok(None);
    }
    Ok(Some(json!({
        "jordan_type": jt,
        "module": serde_json::to_value(ModuleSpec::from_module(m)).expect("module spec"),
    })))
}

fn map_witness(map: &crate::reps::ModuleMap) -> Value {
    serde_json::to_value(MapSpec::from_map(map)).expect("map spec")
}

/// Random search for stably non-trivial maps inducing zero on all
/// Tate classes up to the degree bound. Errors for groups where the
/// search is expected to find violations, unless overridden.
pub fn verify_no_ghosts(
    group: &Arc<Group>,
    cfg: &SearchConfig,
    override_unsafe: bool,
) -> Result<Report, Error> {
    let p = group
        .p_group_characteristic()
        .ok_or_else(|| Error::InvalidGroup("group is not a p-group".into()))?;
    let gh = classify_gh(group, p)?;
    if !gh && !override_unsafe {
        return Err(Error::InvalidArgument(format!(
            "the no-ghosts property is expected to fail for {}; pass --override-unsafe to search anyway",
            group.name()
        )));
    }
    let cat = StableCat::new(group.clone(), PrimeField::new(p)?)?;
    let mut report = Report::new(config_value("no-ghosts", group, cfg));

    let t0 = Instant::now();
    report.add(
        "classification",
        json!({"group": group.name(), "p": p}),
        true,
        None,
        if gh {
            "no-ghosts expected to hold for this group"
        } else {
            "no-ghosts expected to fail; searching under --override-unsafe"
        },
        elapsed(cfg, t0),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut structural_bad = 0usize;
    let mut structural_witness: Option<Value> = None;
    let mut violations = 0usize;
    let mut ghost_witness: Option<Value> = None;
    let t0 = Instant::now();
    for _ in 0..cfg.trials {
        let m = random_module(&cat, cfg.dim_bound, &mut rng)?;
        let n = random_module(&cat, cfg.dim_bound, &mut rng)?;
        if group.is_cyclic() {
            if let Some(w) = non_suspension_witness(&cat, &m)? {
                structural_bad += 1;
                structural_witness.get_or_insert(w);
            }
        }
        for g in cat.ghost_subspace(&m, &n, cfg.ghost_degree_bound)? {
            if !cat.is_stably_trivial(&g)? {
                violations += 1;
                if ghost_witness.is_none() {
                    ghost_witness = Some(map_witness(&g));
                }
            }
        }
    }
    let ms = elapsed(cfg, t0);
    if group.is_cyclic() {
        report.add(
            "stable-decomposition",
            json!({"trials": cfg.trials, "dim_bound": cfg.dim_bound}),
            structural_bad == 0,
            structural_witness,
            format!(
                "{structural_bad} of {} random modules fail to decompose into suspensions of k plus projectives",
                cfg.trials
            ),
            ms,
        );
    }
    report.add(
        "ghost-search",
        json!({
            "trials": cfg.trials,
            "dim_bound": cfg.dim_bound,
            "degree_bound": cfg.ghost_degree_bound,
        }),
        violations == 0,
        ghost_witness,
        format!("{violations} stably non-trivial map(s) invisible to Tate cohomology"),
        ms,
    );
    Ok(report)
}

/// Checks whether every module over cyclic C_n is stably a sum of
/// suspensions of k. Holds for n in {2, 3}; fails from n = 4 on, with
/// the two-dimensional cyclic module as the first witness.
pub fn verify_decomposition(group: &Arc<Group>, cfg: &SearchConfig) -> Result<Report, Error> {
    if !group.is_cyclic() {
        return Err(Error::InvalidArgument(
            "the decomposition check is implemented for cyclic groups".into(),
        ));
    }
    let p = group
        .p_group_characteristic()
        .ok_or_else(|| Error::InvalidGroup("group is not a p-group".into()))?;
    let cat = StableCat::new(group.clone(), PrimeField::new(p)?)?;
    let mut report = Report::new(config_value("decomposition", group, cfg));

    // deterministic probe: the uniserial module of length two
    let t0 = Instant::now();
    let probe = cyclic_module(group, cat.field(), 2.min(group.order()))?;
    let witness = non_suspension_witness(&cat, &probe)?;
    let pass = witness.is_none();
    report.add(
        "length-two-module",
        json!({"dim": probe.dim()}),
        pass,
        witness,
        if pass {
            "the length-two cyclic module decomposes into suspensions of k"
        } else {
            "the length-two cyclic module is not a sum of suspensions of k"
        },
        elapsed(cfg, t0),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut bad = 0usize;
    let mut first: Option<Value> = None;
    let t0 = Instant::now();
    for _ in 0..cfg.trials {
        let m = random_module(&cat, cfg.dim_bound, &mut rng)?;
        if let Some(w) = non_suspension_witness(&cat, &m)? {
            bad += 1;
            first.get_or_insert(w);
        }
    }
    report.add(
        "random-modules",
        json!({"trials": cfg.trials, "dim_bound": cfg.dim_bound}),
        bad == 0,
        first,
        format!(
            "{bad} of {} random modules fail to decompose into suspensions of k plus projectives",
            cfg.trials
        ),
        elapsed(cfg, t0),
    );
    Ok(report)
}

/// Re-runs all explicit counterexample constructions plus the C2/C3
/// controls, including dual-sided cross-checks.
pub fn verify_counterexamples(cfg: &SearchConfig) -> Result<Report, Error> {
    let mut report = Report::new(json!({
        "command": "counterexamples",
        "seed": cfg.seed,
        "ghost_degree_bound": cfg.ghost_degree_bound,
    }));
    let items: Vec<(&str, CounterexampleBundle, bool)> = vec![
        ("length-two-over-C4", cyclic_length2_ghost(4)?, true),
        ("length-two-over-C5", cyclic_length2_ghost(5)?, true),
        ("rank-two-over-C2xC2", rank2_ghost(2, None)?, true),
        ("rank-two-over-C3xC3", rank2_ghost(3, None)?, true),
        ("induced-from-C4-to-C8", induced_c8_ghost()?, true),
        ("control-over-C2", cyclic_length2_control(2)?, false),
        ("control-over-C3", cyclic_length2_control(3)?, false),
    ];
    for (name, bundle, expect_nontrivial) in items {
        let t0 = Instant::now();
        let p = bundle
            .group
            .p_group_characteristic()
            .ok_or_else(|| Error::InvalidGroup("bundle group is not a p-group".into()))?;
        let cat = StableCat::new(bundle.group.clone(), PrimeField::new(p)?)?;
        let dual = cat.is_dual_ghost(&bundle.map, cfg.ghost_degree_bound, None)?;
        let pass = bundle.verdict.is_ghostlike()
            && bundle.stably_nontrivial == expect_nontrivial
            && dual.is_ghostlike();
        let mut detail = format!(
            "{}; {}; dual side: {}",
            bundle.verdict.describe(),
            if bundle.stably_nontrivial {
                "stably non-trivial"
            } else {
                "stably trivial"
            },
            dual.describe()
        );
        if !bundle.notes.is_empty() {
            detail.push_str(&format!(" ({})", bundle.notes.join("; ")));
        }
        let witness = expect_nontrivial.then(|| map_witness(&bundle.map));
        report.add(
            name,
            json!({
                "group": bundle.group.name(),
                "module_dim": bundle.module().dim(),
                "degree_bound": cfg.ghost_degree_bound,
            }),
            pass,
            witness,
            detail,
            elapsed(cfg, t0),
        );
    }
    Ok(report)
}

/// Per-module graded data inside the degree window: stable hom spaces
/// from each syzygy of k, and the matrices of multiplication by each
/// Tate-algebra generator class.
struct WindowData {
    /// Indexed by i + FULLNESS_WINDOW.
    sh: Vec<StableHomSpace>,
    /// (generator index, source degree i) -> matrix of the action
    /// H^i -> H^{i+d}.
    act: BTreeMap<(usize, i64), Matrix>,
}

fn window_degrees() -> impl Iterator<Item = i64> {
    -FULLNESS_WINDOW..=FULLNESS_WINDOW
}

fn window_data(cat: &StableCat, gens: &[TateClass], m: &Module) -> Result<WindowData, Error> {
    let mut sh = Vec::new();
    for i in window_degrees() {
        sh.push(cat.stable_hom(&cat.omega_k(i)?, m)?);
    }
    let field = cat.field();
    let mut act = BTreeMap::new();
    for (gi, alpha) in gens.iter().enumerate() {
        let d = alpha.degree;
        for i in window_degrees() {
            let j = i + d;
            if j.abs() > FULLNESS_WINDOW {
                continue;
            }
            let src = &sh[(i + FULLNESS_WINDOW) as usize];
            let dst = &sh[(j + FULLNESS_WINDOW) as usize];
            let mut cols = Vec::new();
            for rep in src.stable_reps() {
                let beta = TateClass {
                    degree: i,
                    rep: rep.clone(),
                };
                let prod = cat.graded_compose(alpha, &beta)?;
                cols.push(dst.stable_coords(&prod.rep)?);
            }
            act.insert((gi, i), Matrix::from_cols(field, &cols, dst.stable_dim())?);
        }
    }
    Ok(WindowData { sh, act })
}

impl WindowData {
    fn dim(&self, i: i64) -> usize {
        self.sh[(i + FULLNESS_WINDOW) as usize].stable_dim()
    }
}

/// For a pair (M, X): compares the space of stable maps M -> X with
/// the space of windowed graded maps commuting with the generator
/// actions. Returns (bijective, detail).
fn fullness_pair(
    cat: &StableCat,
    gens: &[TateClass],
    dm: &WindowData,
    dx: &WindowData,
    m: &Module,
    x: &Module,
) -> Result<(bool, String), Error> {
    let field = cat.field();
    // unknown vector: theta_i (dim H^i(X) x dim H^i(M)) row-major,
    // stacked over the window
    let mut offsets = BTreeMap::new();
    let mut total = 0usize;
    for i in window_degrees() {
        offsets.insert(i, total);
        total += dx.dim(i) * dm.dim(i);
    }

    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (gi, alpha) in gens.iter().enumerate() {
        let d = alpha.degree;
        for i in window_degrees() {
            let j = i + d;
            if j.abs() > FULLNESS_WINDOW {
                continue;
            }
            let am = &dm.act[&(gi, i)]; // dm.dim(j) x dm.dim(i)
            let ax = &dx.act[&(gi, i)]; // dx.dim(j) x dx.dim(i)
            for r in 0..dx.dim(j) {
                for s in 0..dm.dim(i) {
                    let mut row = vec![0u64; total];
                    for t in 0..dm.dim(j) {
                        let idx = offsets[&j] + r * dm.dim(j) + t;
                        row[idx] = field.add(row[idx], am.get(t, s));
                    }
                    for t in 0..dx.dim(i) {
                        let idx = offsets[&i] + t * dm.dim(i) + s;
                        row[idx] = field.sub(row[idx], ax.get(r, t));
                    }
                    if row.iter().any(|&v| v != 0) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let graded_dim = if total == 0 {
        0
    } else if rows.is_empty() {
        total
    } else {
        total - Matrix::from_rows(field, &rows)?.rref().rank
    };

    let sh_mx = cat.stable_hom(m, x)?;
    let hom_dim = sh_mx.stable_dim();
    let mut cols = Vec::new();
    for f in sh_mx.stable_reps() {
        let mut col = vec![0u64; total];
        for i in window_degrees() {
            let src = &dm.sh[(i + FULLNESS_WINDOW) as usize];
            let dst = &dx.sh[(i + FULLNESS_WINDOW) as usize];
            for (l, rep) in src.stable_reps().iter().enumerate() {
                let coords = dst.stable_coords(&f.compose(rep)?)?;
                for (r, &c) in coords.iter().enumerate() {
                    col[offsets[&i] + r * dm.dim(i) + l] = c;
                }
            }
        }
        cols.push(col);
    }
    let image_rank = if total == 0 || cols.is_empty() {
        0
    } else {
        let t_mat = Matrix::from_cols(field, &cols, total)?;
        // sanity: the image must satisfy the graded constraints
        if !rows.is_empty() {
            let c_mat = Matrix::from_rows(field, &rows)?;
            let prod = c_mat.mul(&t_mat)?;
            if prod.to_rows().iter().flatten().any(|&v| v != 0) {
                return Ok((
                    false,
                    "a stable map fails its own graded-commutation constraints".into(),
                ));
            }
        }
        t_mat.rref().rank
    };
    let bijective = hom_dim == graded_dim && image_rank == hom_dim;
    let detail = format!(
        "stable hom dim {hom_dim}, graded-commuting dim {graded_dim}, comparison rank {image_rank}"
    );
    Ok((bijective, detail))
}

fn suspension_label(degrees: &[i64]) -> String {
    degrees
        .iter()
        .map(|d| format!("O{d}k"))
        .collect::<Vec<_>>()
        .join("+")
}

/// Windowed check that stable maps between sums of suspensions of k
/// correspond exactly to graded module maps on Tate cohomology over
/// the generator actions in degrees 1, -1, 2, -2.
pub fn verify_tate_fullness(group: &Arc<Group>, cfg: &SearchConfig) -> Result<Report, Error> {
    let p = group
        .p_group_characteristic()
        .ok_or_else(|| Error::InvalidGroup("group is not a p-group".into()))?;
    let cat = StableCat::new(group.clone(), PrimeField::new(p)?)?;
    let mut report = Report::new(config_value("fullness", group, cfg));

    let t0 = Instant::now();
    let k = cat.trivial();
    let mut gens = Vec::new();
    for d in [1i64, -1, 2, -2] {
        gens.extend(cat.tate_cohomology(&k, d)?);
    }
    report.add(
        "tate-generators",
        json!({"degrees": [1, -1, 2, -2]}),
        !gens.is_empty(),
        None,
        format!("{} generator classes on the Tate side", gens.len()),
        elapsed(cfg, t0),
    );

    // sums of at most FULLNESS_MAX_SUMMANDS suspensions from {k, Omega k}
    let mut shapes: Vec<Vec<i64>> = Vec::new();
    for size in 1..=FULLNESS_MAX_SUMMANDS {
        for ones in 0..=size {
            let mut shape = vec![0i64; size - ones];
            shape.extend(std::iter::repeat(1).take(ones));
            shapes.push(shape);
        }
    }
    let mut objects = Vec::new();
    for shape in &shapes {
        let module = suspension_sum(group, cat.field(), shape)?;
        let data = window_data(&cat, &gens, &module)?;
        objects.push((suspension_label(shape), module, data));
    }

    for (label_m, m, dm) in &objects {
        let t0 = Instant::now();
        let mut ok = 0usize;
        let mut failures = Vec::new();
        for (label_x, x, dx) in &objects {
            let (bijective, detail) = fullness_pair(&cat, &gens, dm, dx, m, x)?;
            if bijective {
                ok += 1;
            } else {
                failures.push(format!("-> {label_x}: {detail}"));
            }
        }
        report.add(
            &format!("fullness[{label_m}]"),
            json!({"source_dim": m.dim(), "window": FULLNESS_WINDOW, "targets": objects.len()}),
            failures.is_empty(),
            None,
            if failures.is_empty() {
                format!("bijective onto graded maps for all {ok} targets")
            } else {
                failures.join("; ")
            },
            elapsed(cfg, t0),
        );
    }
    Ok(report)
}

/// Runs every applicable check for the group and merges the reports.
pub fn verify_all(
    group: &Arc<Group>,
    cfg: &SearchConfig,
    override_unsafe: bool,
) -> Result<Report, Error> {
    let p = group
        .p_group_characteristic()
        .ok_or_else(|| Error::InvalidGroup("group is not a p-group".into()))?;
    let gh = classify_gh(group, p)?;
    let mut report = Report::new(config_value("all", group, cfg));
    report.extend(verify_counterexamples(cfg)?);
    if gh || override_unsafe {
        report.extend(verify_no_ghosts(group, cfg, override_unsafe)?);
    } else {
        report.add(
            "no-ghosts",
            json!({"group": group.name()}),
            true,
            None,
            "skipped: expected to fail for this group; pass --override-unsafe to search anyway",
            None,
        );
    }
    if group.is_cyclic() {
        report.extend(verify_decomposition(group, cfg)?);
    }
    report.extend(verify_tate_fullness(group, cfg)?);
    Ok(report)
}
