use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use toric_qubits::analyze::{analyze, analyze_batch, AnalysisReport, MeasureValue};
use toric_qubits::io;
use toric_qubits::measures::{check_tau4_identities, concurrence, m_tangle, tau4_epsilon_oracle, three_tangle};
use toric_qubits::moment::{in_polytope, moment_product, moment_projective, BoxPolytope, MomentImage};
use toric_qubits::state::{named_state_str, segre_embed, MultiQubitState};
use toric_qubits::toric::{
    delzant_check, lattice_points, normal_fan_box, relation_residual, segre_relations, CubeVariant,
    DelzantFailureReason, LatticePolytope,
};
use toric_qubits::{extract_factors, Error, Execution};

use crate::args::{Command, Convention, Format, GlobalOpts, PolytopeSections, PolytopeSource, Variant};
use crate::fmt;

/// Failure classes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1.
    Usage(String),
    /// Exit 2: unreadable or invalid input.
    Input(String),
    /// Exit 3: valid input outside an operation's domain.
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Domain(m) => m,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn domain(e: Error) -> CliError {
    CliError::Domain(e.to_string())
}

/// Names the state-file field a validation error refers to.
fn state_error(source: &str, e: Error) -> CliError {
    let field = match &e {
        Error::LengthMismatch { .. } | Error::ZeroState | Error::NonFiniteAmplitude { .. } => Some("amplitudes"),
        Error::TooFewQubits { .. } => Some("qubits"),
        _ => None,
    };
    match field {
        Some(f) => CliError::Input(format!("{source}: field `{f}`: {e}")),
        None => CliError::Input(format!("{source}: {e}")),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_state_file(path: &Path) -> CliResult<MultiQubitState> {
    io::parse_state(&read(path)?).map_err(|e| state_error(&path.display().to_string(), e))
}

fn resolve_state(input: &Option<PathBuf>, global: &GlobalOpts) -> CliResult<MultiQubitState> {
    match (input, &global.state) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either a state file or --state, not both".into())),
        (None, None) => Err(CliError::Usage("a state file or --state <name> is required".into())),
        (None, Some(name)) => named_state_str(name).map_err(|e| CliError::Input(format!("--state: {e}"))),
        (Some(path), None) => load_state_file(path),
    }
}

pub struct Output {
    pub text: String,
}

impl Output {
    fn json(v: &Value) -> Self {
        Output {
            text: serde_json::to_string_pretty(v).expect("json value serializes") + "\n",
        }
    }
}

pub fn run(command: &Command, global: &GlobalOpts) -> CliResult<Output> {
    if !(global.tol > 0.0 && global.tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", global.tol)));
    }
    match command {
        Command::Analyze { input, jobs } => cmd_analyze(input, *jobs, global),
        Command::Segre { input, m, list } => cmd_segre(input, *m, *list, global),
        Command::Moment {
            input,
            projective,
            convention,
        } => cmd_moment(input, projective, *convention, global),
        Command::Tangle { input } => cmd_tangle(input, global),
        Command::Invariants { input } => cmd_invariants(input, global),
        Command::Polytope { source } => cmd_polytope(source, global),
        Command::Embed { factors } => cmd_embed(factors),
    }
}

fn report_text(r: &AnalysisReport, out: &mut String) {
    let _ = writeln!(out, "qubits={}", r.num_qubits);
    let _ = writeln!(out, "separable={}", r.separable);
    let _ = writeln!(out, "max_residual={}", fmt::real(r.max_residual));
    let _ = writeln!(out, "tolerance={}", fmt::real(r.tolerance));
    match &r.factors {
        Some(fs) => {
            let parts: Vec<String> = fs
                .iter()
                .map(|f| format!("[{}, {}]", fmt::complex(f.a0()), fmt::complex(f.a1())))
                .collect();
            let _ = writeln!(out, "factors={}", parts.join(" "));
        }
        None => {
            let _ = writeln!(out, "factors=none");
        }
    }
    match &r.moment_image {
        Some(im) => {
            let _ = writeln!(out, "moment_image={}", fmt::vector(im.coords()));
        }
        None => {
            let _ = writeln!(out, "moment_image=none");
        }
    }
    for (name, v) in &r.measures {
        let value = match v {
            MeasureValue::Real(x) => fmt::real(*x),
            MeasureValue::Complex(z) => fmt::complex(*z),
        };
        let _ = writeln!(out, "{name}={value}");
    }
    if r.borderline() {
        let _ = writeln!(out, "note: residual is within 10x of the tolerance (borderline)");
    }
}

fn json_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn cmd_analyze(input: &Option<PathBuf>, jobs: Option<usize>, global: &GlobalOpts) -> CliResult<Output> {
    if let (Some(dir), None) = (input, &global.state) {
        if dir.is_dir() {
            return analyze_dir(dir, jobs, global);
        }
    }
    let s = resolve_state(input, global)?;
    let r = analyze(&s, global.tol).map_err(domain)?;
    Ok(match global.format {
        Format::Json => Output::json(&io::report_to_value(&r)),
        Format::Text => {
            let mut text = String::new();
            report_text(&r, &mut text);
            Output { text }
        }
    })
}

fn analyze_dir(dir: &Path, jobs: Option<usize>, global: &GlobalOpts) -> CliResult<Output> {
    let files = json_files(dir)?;
    let states = files.iter().map(|p| load_state_file(p)).collect::<CliResult<Vec<_>>>()?;
    let jobs = jobs.unwrap_or(1).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    let exec = if jobs > 1 { Execution::Parallel } else { Execution::Sequential };
    let reports = pool.install(|| analyze_batch(&states, global.tol, exec));
    let reports = reports
        .into_iter()
        .zip(&files)
        .map(|(r, p)| r.map_err(|e| CliError::Domain(format!("{}: {e}", p.display()))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(match global.format {
        Format::Json => {
            let items: Vec<Value> = reports
                .iter()
                .zip(&files)
                .map(|(r, p)| json!({ "file": p.display().to_string(), "report": io::report_to_value(r) }))
                .collect();
            Output::json(&Value::Array(items))
        }
        Format::Text => {
            let mut text = String::new();
            for (r, p) in reports.iter().zip(&files) {
                let _ = writeln!(text, "# {}", p.display());
                report_text(r, &mut text);
            }
            Output { text }
        }
    })
}

fn cmd_segre(input: &Option<PathBuf>, m: Option<usize>, list: bool, global: &GlobalOpts) -> CliResult<Output> {
    let state = if input.is_some() || global.state.is_some() {
        Some(resolve_state(input, global)?)
    } else {
        None
    };
    let m = match (&state, m) {
        (Some(s), Some(m)) if s.num_qubits() != m => {
            return Err(CliError::Usage(format!("-m {m} does not match the {}-qubit state", s.num_qubits())))
        }
        (Some(s), _) => s.num_qubits(),
        (None, Some(m)) => m,
        (None, None) => return Err(CliError::Usage("segre needs -m <qubits> or a state".into())),
    };
    if m < 2 {
        return Err(CliError::Usage(format!("segre relations need m >= 2, got {m}")));
    }
    let relations = segre_relations(m);
    let Some(s) = state else {
        if !list {
            return Err(CliError::Usage("segre without a state needs --list".into()));
        }
        return Ok(match global.format {
            Format::Json => Output::json(&json!({
                "qubits": m,
                "relations": relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            })),
            Format::Text => Output {
                text: relations.iter().map(|r| format!("{r}\n")).collect(),
            },
        });
    };
    let residuals: Vec<f64> = relations
        .iter()
        .map(|r| relation_residual(&s, r).expect("relation width matches state"))
        .collect();
    let max = residuals.iter().copied().fold(0.0, f64::max);
    Ok(match global.format {
        Format::Json => Output::json(&json!({
            "qubits": m,
            "relations": relations
                .iter()
                .zip(&residuals)
                .map(|(r, v)| json!({ "relation": r.to_string(), "residual": v }))
                .collect::<Vec<_>>(),
            "max_residual": max,
        })),
        Format::Text => {
            let mut text = String::new();
            for (r, v) in relations.iter().zip(&residuals) {
                let _ = writeln!(text, "{r}  residual={}", fmt::real(*v));
            }
            let _ = writeln!(text, "max_residual={}", fmt::real(max));
            Output { text }
        }
    })
}

fn moment_output(im: &MomentImage, convention: Convention, global: &GlobalOpts) -> CliResult<Output> {
    let bx = BoxPolytope::fubini_study(im.dim());
    let inside = in_polytope(im, &bx, 1e-12).map_err(domain)?;
    let (coords, lo, hi, name) = match convention {
        Convention::Fs => (im.coords().to_vec(), -0.5, 0.0, "fubini_study"),
        Convention::Height => (im.to_height_convention(), -1.0, 1.0, "height"),
    };
    Ok(match global.format {
        Format::Json => Output::json(&json!({
            "moment_image": coords,
            "convention": name,
            "polytope": vec![[lo, hi]; im.dim()],
            "inside": inside,
        })),
        Format::Text => Output {
            text: format!(
                "moment_image={}\npolytope=[{}, {}]^{}\ninside={inside}\n",
                fmt::vector(&coords),
                fmt::real(lo),
                fmt::real(hi),
                im.dim()
            ),
        },
    })
}

fn cmd_moment(
    input: &Option<PathBuf>,
    projective: &Option<PathBuf>,
    convention: Convention,
    global: &GlobalOpts,
) -> CliResult<Output> {
    if let Some(path) = projective {
        if input.is_some() || global.state.is_some() {
            return Err(CliError::Usage("--projective cannot be combined with a state".into()));
        }
        let p = io::parse_projective_point(&read(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        return moment_output(&moment_projective(&p), convention, global);
    }
    let s = resolve_state(input, global)?;
    let factors = if s.num_qubits() == 1 {
        let a = s.amplitudes();
        Some(vec![toric_qubits::QubitFactor::new(a[0], a[1]).map_err(domain)?])
    } else {
        let residual = toric_qubits::toric::max_segre_residual(&s);
        if residual <= global.tol {
            extract_factors(&s, global.tol)
        } else {
            None
        }
    };
    let Some(factors) = factors else {
        return Err(CliError::Domain(
            "state is not a product; moment map undefined (it is defined on the factor space (P^1)^m)".into(),
        ));
    };
    moment_output(&moment_product(&factors).map_err(domain)?, convention, global)
}

fn cmd_tangle(input: &Option<PathBuf>, global: &GlobalOpts) -> CliResult<Output> {
    let s = resolve_state(input, global)?;
    let m = s.num_qubits();
    let mut values: Vec<(&str, f64)> = Vec::new();
    match m {
        2 => values.push(("concurrence", concurrence(&s).map_err(domain)?)),
        3 => values.push(("three_tangle", three_tangle(&s).map_err(domain)?)),
        _ if m % 2 == 0 => {
            values.push(("m_tangle", m_tangle(&s).map_err(domain)?));
            if m == 4 {
                values.push(("tau4_epsilon", tau4_epsilon_oracle(&s).map_err(domain)?));
            }
        }
        _ => return Err(CliError::Domain(format!("no tangle is defined for {m} qubits"))),
    }
    Ok(match global.format {
        Format::Json => Output::json(&Value::Object(
            values.iter().map(|(k, v)| (k.to_string(), json!(v))).collect(),
        )),
        Format::Text => Output {
            text: values.iter().map(|(k, v)| format!("{k}={}\n", fmt::real(*v))).collect(),
        },
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".into(), fmt::real)
}

fn cmd_invariants(input: &Option<PathBuf>, global: &GlobalOpts) -> CliResult<Output> {
    let s = resolve_state(input, global)?;
    let r = check_tau4_identities(&s).map_err(domain)?;
    let holds = r.tau4_equals_abs_h_sq(1e-10);
    Ok(match global.format {
        Format::Json => {
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["tau4_equals_abs_h_sq"] = json!(holds);
            Output::json(&v)
        }
        Format::Text => {
            let mut text = String::new();
            let _ = writeln!(text, "H={}", fmt::complex(r.h));
            let _ = writeln!(text, "I1={}", fmt::complex(r.i1));
            let _ = writeln!(text, "tau4_spinflip={}", fmt::real(r.tau4_spinflip));
            let _ = writeln!(text, "tau4_epsilon={}", fmt::real(r.tau4_epsilon));
            let _ = writeln!(text, "abs_H_sq={}", fmt::real(r.abs_h_sq));
            let _ = writeln!(text, "four_abs_H_sq={}", fmt::real(r.four_abs_h_sq));
            let _ = writeln!(text, "four_abs_I1_sq={}", fmt::real(r.four_abs_i1_sq));
            let _ = writeln!(text, "ratio tau4_epsilon/tau4_spinflip={}", opt(r.epsilon_over_spinflip));
            let _ = writeln!(text, "ratio tau4/|H|^2={}", opt(r.tau4_over_abs_h_sq));
            let _ = writeln!(text, "ratio 4|I1|^2/|H|^2={}", opt(r.four_abs_i1_sq_over_abs_h_sq));
            if !holds && r.tau4_over_abs_h_sq.is_some() {
                let _ = writeln!(
                    text,
                    "note: tau4 = |H|^2 does not hold; tau4 = 4|H|^2 under the spin-flip definition"
                );
            }
            Output { text }
        }
    })
}

fn cmd_polytope(source: &PolytopeSource, global: &GlobalOpts) -> CliResult<Output> {
    let (p, sections) = match source {
        PolytopeSource::Cube { m, variant, sections } => {
            if *m == 0 {
                return Err(CliError::Usage("cube needs -m >= 1".into()));
            }
            let v = match variant {
                Variant::Centered => CubeVariant::Centered,
                Variant::Unit => CubeVariant::Unit,
            };
            (LatticePolytope::cube(*m, v).map_err(domain)?, sections)
        }
        PolytopeSource::File { path, sections } => {
            let p = io::parse_polytope(&read(path)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            (p, sections)
        }
    };
    polytope_report(&p, sections, global)
}

fn polytope_report(p: &LatticePolytope, sections: &PolytopeSections, global: &GlobalOpts) -> CliResult<Output> {
    let all = sections.none_selected();
    let mut j = json!({ "dim": p.dim(), "vertices": p.vertices() });
    let mut text = String::new();
    let _ = writeln!(text, "dim={}", p.dim());
    let _ = writeln!(text, "vertices={}", p.vertices().len());
    for v in p.vertices() {
        let _ = writeln!(text, "  {v:?}");
    }
    if sections.delzant || all {
        let verdict = delzant_check(p).map_err(domain)?;
        let _ = writeln!(text, "delzant={}", verdict.delzant);
        for f in &verdict.failures {
            let reason = match &f.reason {
                DelzantFailureReason::EdgeCount { found, expected } => {
                    format!("{found} edges meet, expected {expected}")
                }
                DelzantFailureReason::NotUnimodular { directions, determinant } => {
                    format!("primitive edge directions {directions:?} have determinant {determinant}")
                }
            };
            let _ = writeln!(text, "  failure at {:?}: {reason}", f.vertex);
        }
        j["delzant"] = serde_json::to_value(&verdict).expect("verdict serializes");
    }
    let is_box = p.is_box();
    if sections.lattice_points || (all && is_box) {
        let pts = lattice_points(p).map_err(domain)?;
        let _ = writeln!(text, "lattice_points={}", pts.len());
        j["lattice_points"] = json!({ "count": pts.len(), "points": pts.points() });
    }
    if sections.fan || (all && is_box) {
        let fan = normal_fan_box(p).map_err(domain)?;
        let unimodular = fan.maximal_cones().all(|c| c.is_unimodular());
        let _ = writeln!(text, "fan_cones={}", fan.len());
        let _ = writeln!(text, "maximal_cones={}", fan.maximal_cones().count());
        let _ = writeln!(text, "maximal_cones_unimodular={unimodular}");
        j["fan"] = json!({
            "cones": fan.len(),
            "maximal_cones": fan.maximal_cones().count(),
            "maximal_cones_unimodular": unimodular,
        });
    }
    Ok(match global.format {
        Format::Json => Output::json(&j),
        Format::Text => Output { text },
    })
}

fn cmd_embed(path: &Path) -> CliResult<Output> {
    let factors = io::parse_factors(&read(path)?).map_err(|e| match e {
        Error::ZeroState | Error::NonFiniteAmplitude { .. } => {
            CliError::Input(format!("{}: field `factors`: {e}", path.display()))
        }
        _ => CliError::Input(format!("{}: {e}", path.display())),
    })?;
    let s = segre_embed(&factors).map_err(|e| CliError::Input(format!("{}: field `factors`: {e}", path.display())))?;
    Ok(Output {
        text: io::state_to_json(&s) + "\n",
    })
}
